"""Connected components of sublevel sets {|Theta| < eps}.

The disc is covered by an adaptive polar quadtree: a cell at depth n spans
an angular window of 2 pi 2^{-n} and a radial window of 2^{-n}, and splits
into four children.  Cells touching the unit circle keep the Whitney shape
(size comparable to distance from the boundary) while interior cells refine
wherever the eps contour passes, which is what the pixel-oracle comparison
needs for sublevel sets deep inside the disc.

Certification per cell uses the Schwarz-Pick lemma: with c the cell center
and rho_cell an upper bound on the pseudohyperbolic radius of the cell,

    |Theta| <= (|Theta(c)| + rho_cell) / (1 + |Theta(c)| rho_cell)
    |Theta| >= (|Theta(c)| - rho_cell) / (1 - |Theta(c)| rho_cell)   (if > 0)

hold on the whole cell, so a cell is marked sub-eps (upper bound below eps),
out (lower bound at or above eps), or split.  At the depth cap a cell is
marked by the certified upper bound of the center value alone, the
refinement depth being the accuracy knob.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from typing import Optional

from .errors import DomainError
from .geometry import TWO_PI
from .inner import InnerFunction


@dataclass(frozen=True)
class PolarCell:
    depth: int
    k_theta: int
    j_radius: int

    @property
    def theta_lo(self) -> float:
        return TWO_PI * self.k_theta * 2.0 ** -self.depth

    @property
    def theta_hi(self) -> float:
        return TWO_PI * (self.k_theta + 1) * 2.0 ** -self.depth

    @property
    def r_lo(self) -> float:
        return self.j_radius * 2.0 ** -self.depth

    @property
    def r_hi(self) -> float:
        return (self.j_radius + 1) * 2.0 ** -self.depth

    def center(self) -> complex:
        r = (self.j_radius + 0.5) * 2.0 ** -self.depth
        t = TWO_PI * (self.k_theta + 0.5) * 2.0 ** -self.depth
        return r * cmath.exp(1j * t)

    def children(self):
        d, k, j = self.depth + 1, 2 * self.k_theta, 2 * self.j_radius
        return (PolarCell(d, k, j), PolarCell(d, k + 1, j),
                PolarCell(d, k, j + 1), PolarCell(d, k + 1, j + 1))

    def cell_index(self) -> int:
        return (self.k_theta << self.depth) | self.j_radius


@dataclass
class LevelSetAnalysis:
    epsilon: float
    depth: int
    component_count: int
    previous_depth_count: Optional[int]
    cells: list[tuple[PolarCell, int]]          # marked leaves with labels
    params: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def stabilized(self) -> bool:
        return (self.previous_depth_count is not None
                and self.previous_depth_count == self.component_count)

    def to_csv(self) -> str:
        lines = ["depth,index,label"]
        for cell, label in sorted(self.cells,
                                  key=lambda cl: (cl[0].depth, cl[0].cell_index())):
            lines.append("%d,%d,%d" % (cell.depth, cell.cell_index(), label))
        return "\n".join(lines) + "\n"

    def to_pgm(self, size: int = 512) -> bytes:
        """Polar raster PGM (P5): rows scan radius outward, columns angle."""
        depth_maps: dict[int, dict[tuple[int, int], int]] = {}
        for cell, label in self.cells:
            depth_maps.setdefault(cell.depth, {})[(cell.k_theta, cell.j_radius)] = label
        depths = sorted(depth_maps)
        rows = []
        for i in range(size):
            r = (i + 0.5) / size
            row = bytearray(size)
            for j in range(size):
                turn = (j + 0.5) / size
                for d in depths:
                    lab = depth_maps[d].get((int(turn * (1 << d)), int(r * (1 << d))))
                    if lab is not None:
                        row[j] = 40 + (lab * 37) % 215
                        break
            rows.append(bytes(row))
        header = ("P5\n%d %d\n255\n" % (size, size)).encode()
        return header + b"".join(rows)


def _cell_rho_bound(cell: PolarCell, center: complex) -> float:
    """Upper bound for rho(center, z) over the cell.

    The farthest point of a polar rectangle from its polar center is a
    corner; |1 - conj(c) z| >= 1 - |c| r_max bounds the denominator.
    """
    c_abs = abs(center)
    worst = 0.0
    for r in (cell.r_lo, cell.r_hi):
        for t in (cell.theta_lo, cell.theta_hi):
            worst = max(worst, abs(center - r * cmath.exp(1j * t)))
    den = 1.0 - c_abs * cell.r_hi
    if den <= 0.0:
        return 1.0
    return min(1.0, worst / den)


def _classify_cell(theta: InnerFunction, cell: PolarCell, epsilon: float,
                   eval_tol: float) -> tuple[str, float]:
    """('in' | 'out' | 'split', certified upper bound at the center)."""
    center = cell.center()
    val = theta.modulus_bounds(center, eval_tol)
    rho = _cell_rho_bound(cell, center)
    if rho < 1.0:
        ub = (val.hi + rho) / (1.0 + val.hi * rho)
        if ub < epsilon:
            return ("in", val.hi)
        if val.lo > rho:
            lb = (val.lo - rho) / (1.0 - val.lo * rho)
            if lb >= epsilon:
                return ("out", val.hi)
    return ("split", val.hi)


def level_set_components(theta: InnerFunction, epsilon: float, depth: int,
                         min_depth: int = 3, eval_tol: float = 1e-9,
                         compare_previous: bool = True) -> LevelSetAnalysis:
    """Flood fill of the certified sublevel cells of the polar quadtree.

    Cells certified entirely sub-eps are marked; cells certified entirely
    out are dropped; undecided cells split until ``depth``, where the
    center's certified upper bound decides.  Marked leaves are
    edge-connected (shared boundary of positive length, angular wrap
    included) and labeled by a union-find pass.  The component count is an
    estimate; ``previous_depth_count`` reports the same analysis one depth
    coarser so stabilization is visible.
    """
    if not (0.0 < epsilon < 1.0):
        raise DomainError("epsilon must lie in (0, 1)")
    if depth < 3:
        raise DomainError("depth must be >= 3")
    if min_depth < 2 or min_depth > depth:
        raise DomainError("min_depth must lie in [2, depth]")

    previous = None
    if compare_previous and depth > min_depth:
        previous = level_set_components(theta, epsilon, depth - 1, min_depth,
                                        eval_tol, compare_previous=False)

    marked: list[PolarCell] = []
    stack = [PolarCell(2, k, j) for k in range(4) for j in range(4)]
    while stack:
        cell = stack.pop()
        if cell.depth < min_depth:
            stack.extend(cell.children())
            continue
        status, center_hi = _classify_cell(theta, cell, epsilon, eval_tol)
        if status == "in":
            marked.append(cell)
        elif status == "split":
            if cell.depth < depth:
                stack.extend(cell.children())
            elif center_hi < epsilon:
                marked.append(cell)

    labels = _flood_fill(marked, depth)
    count = len(set(labels)) if labels else 0
    return LevelSetAnalysis(
        epsilon=epsilon, depth=depth, component_count=count,
        previous_depth_count=previous.component_count if previous else None,
        cells=list(zip(marked, labels)),
        params={"min_depth": min_depth, "eval_tol": eval_tol,
                "marked_cells": len(marked)})


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


def _flood_fill(cells: list[PolarCell], depth: int) -> list[int]:
    """Labels for edge-connected marked cells (positive-length overlap)."""
    if not cells:
        return []
    uf = _UnionFind(len(cells))
    resolution = depth + 1
    full = 1 << resolution

    # radial edges: shared angular tick, overlapping radial intervals
    by_angle: dict[int, list[tuple[int, int, int, bool]]] = {}
    # circular edges: shared radial tick, overlapping angular intervals
    by_radius: dict[int, list[tuple[int, int, int, bool]]] = {}
    for idx, cell in enumerate(cells):
        shift = resolution - cell.depth
        t0, t1 = cell.k_theta << shift, (cell.k_theta + 1) << shift
        r0, r1 = cell.j_radius << shift, (cell.j_radius + 1) << shift
        by_angle.setdefault(t0 % full, []).append((r0, r1, idx, False))   # left side
        by_angle.setdefault(t1 % full, []).append((r0, r1, idx, True))    # right side
        by_radius.setdefault(r0, []).append((t0, t1, idx, False))         # bottom
        by_radius.setdefault(r1, []).append((t0, t1, idx, True))          # top

    def join(entries: list[tuple[int, int, int, bool]]) -> None:
        highs = sorted(e for e in entries if e[3])
        lows = sorted(e for e in entries if not e[3])
        li = 0
        for h0, h1, hidx, _ in highs:
            while li < len(lows) and lows[li][1] <= h0:
                li += 1
            j = li
            while j < len(lows) and lows[j][0] < h1:
                if min(h1, lows[j][1]) - max(h0, lows[j][0]) > 0:
                    uf.union(hidx, lows[j][2])
                j += 1

    for entries in by_angle.values():
        join(entries)
    for entries in by_radius.values():
        join(entries)

    roots = [uf.find(i) for i in range(len(cells))]
    relabel: dict[int, int] = {}
    out = []
    for r in roots:
        if r not in relabel:
            relabel[r] = len(relabel)
        out.append(relabel[r])
    return out
