"""Positive singular measures on the circle and their disc integrals.

Three variants are provided:

- ``AtomicMeasure``: finite or lazily truncated sums of point masses.
  Truncations carry an explicit tail-mass bound, and integral outputs carry
  the tail contribution as a certified error interval.
- ``CantorMeasure``: symmetric Cantor measure built from a strictly
  decreasing sequence ``delta_n`` (delta_0 = 2 pi).  Generation n consists of
  2^n intervals of length 2^{-n} delta_n, each carrying mass exactly 2^{-n};
  the removed segment is centered.  All endpoint arithmetic is exact
  (rational multiples of the circle) so deep generations do not cancel.
- ``CdfMeasure``: a monotone CDF supplied as piecewise-linear samples.
  Singularity of the supplied CDF is asserted by the caller, not verified.

Poisson integrals use adaptive cell subdivision: a cell is split while its
kernel oscillation times its mass exceeds the remaining error budget, with
kernel extrema on an arc computed from the closest and farthest points of
the arc (the kernel is monotone in chord distance).
"""

from __future__ import annotations

import cmath
import math
import threading
from fractions import Fraction
from typing import Callable, Iterator, Optional, Sequence

import numpy as np

from .errors import DomainError, PrecisionExhausted
from .geometry import (TWO_PI, ArcSupport, BoundaryArc, BoundarySupport,
                       PointSupport, angle_mod, angular_gap)

_TWO_PI_FRAC = Fraction(TWO_PI)  # the double nearest 2*pi, as an exact rational


def poisson_kernel(z: complex, theta: float) -> float:
    """(1 - |z|^2) / |z - e^{i theta}|^2."""
    return (1.0 - abs(z) ** 2) / abs(z - cmath.exp(1j * theta)) ** 2


def _kernel_from_gap(r: float, gap: float) -> float:
    # |z - e^{i t}|^2 = (1-r)^2 + 4 r sin^2(gap/2) for gap = |arg z - t|
    d2 = (1.0 - r) ** 2 + 4.0 * r * math.sin(0.5 * min(gap, math.pi)) ** 2
    return (1.0 - r * r) / d2


def _kernel_range_on_arc(z: complex, lo: float, hi: float) -> tuple[float, float]:
    """Exact (min, max) of the Poisson kernel over the boundary arc [lo, hi].

    The kernel is monotone in the angular gap from arg z, whose extremes
    over the arc are max(0, d - half) and min(pi, d + half) with d the gap
    to the arc center (the latter covers arcs containing the antipode).
    """
    r = abs(z)
    phase = cmath.phase(z) if r > 0.0 else 0.0
    half = 0.5 * (hi - lo)
    d = angular_gap(phase, 0.5 * (lo + hi))
    gap_min = max(0.0, d - half)
    gap_max = min(math.pi, d + half)
    return (_kernel_from_gap(r, gap_max), _kernel_from_gap(r, gap_min))


def _herglotz_kernel(z: complex, theta: float) -> complex:
    xi = cmath.exp(1j * theta)
    return (z + xi) / (z - xi)


def _herglotz_osc_bound(z: complex, lo: float, hi: float) -> float:
    """Oscillation bound for the Herglotz kernel over [lo, hi].

    |d/dt (z+e^{it})/(z-e^{it})| = 2|z| / |z - e^{it}|^2 <= 2|z| / d_min^2.
    """
    r = abs(z)
    if r == 0.0:
        return 0.0
    phase = cmath.phase(z)
    arc = BoundaryArc.from_endpoints(lo, hi)
    gap_min = arc.angular_distance_to_angle(phase)
    d2 = (1.0 - r) ** 2 + 4.0 * r * math.sin(0.5 * min(gap_min, math.pi)) ** 2
    return (hi - lo) * 2.0 * r / d2


def _check_interior(z: complex) -> complex:
    z = complex(z)
    if abs(z) >= 1.0:
        raise DomainError("integral requires |z| < 1, got |z| = %r" % (abs(z),))
    return z


def _arc_windows(arc: BoundaryArc) -> list[tuple[float, float]]:
    """Split an arc into linear windows inside [0, 2*pi]."""
    if arc.half_width >= math.pi:
        return [(0.0, TWO_PI)]
    lo = angle_mod(arc.lo)
    hi = lo + arc.length
    if hi <= TWO_PI:
        return [(lo, hi)]
    return [(lo, TWO_PI), (0.0, hi - TWO_PI)]


class SingularMeasure:
    """Common query surface of the three measure variants."""

    def total_mass(self) -> float:
        raise NotImplementedError

    def support(self) -> BoundarySupport:
        raise NotImplementedError

    def mass_of_arc(self, arc: BoundaryArc, closed_ends: bool = True,
                    tol: float = 1e-12) -> float:
        lo, hi = self.mass_of_arc_bounds(arc, closed_ends, tol)
        return 0.5 * (lo + hi)

    def mass_of_arc_bounds(self, arc: BoundaryArc, closed_ends: bool = True,
                           tol: float = 1e-12) -> tuple[float, float]:
        raise NotImplementedError

    def poisson_integral(self, z: complex, tol: float = 1e-9) -> float:
        lo, hi = self.poisson_bounds(z, tol)
        return 0.5 * (lo + hi)

    def poisson_bounds(self, z: complex, tol: float = 1e-9) -> tuple[float, float]:
        raise NotImplementedError

    def herglotz_integral(self, z: complex, tol: float = 1e-9) -> complex:
        raise NotImplementedError

    def density_liminf(self, xi: float, h_grid: Sequence[float] | None = None) -> float:
        """Grid minimum of mass{|psi - xi| < h} / h, chord distance as stated.

        A numeric surrogate for the liminf; small values mean "inconclusive",
        they never prove the liminf is zero.
        """
        if h_grid is None:
            h_grid = [2.0 ** -k for k in range(3, 21)]
        vals = []
        for h in h_grid:
            if h <= 0.0:
                raise DomainError("h grid must be positive")
            half_angle = math.pi if h >= 2.0 else 2.0 * math.asin(0.5 * h)
            arc = BoundaryArc(xi, min(half_angle, math.pi))
            vals.append(self.mass_of_arc(arc, closed_ends=False) / h)
        return min(vals)


# ---------------------------------------------------------------------------
# Atomic measures
# ---------------------------------------------------------------------------

class AtomicMeasure(SingularMeasure):
    """Sum of point masses, possibly an explicit truncation of an infinite sum.

    ``generator`` yields (theta, mass, tail_after) triples; ``tail_after`` is
    an upper bound for the total mass still to come and must decrease
    consistently.  ``tail_hull`` optionally locates all unmaterialized atoms
    inside known arcs, and ``accumulation`` declares limit angles, so the
    closed support can be queried without materializing everything.
    """

    def __init__(self, atoms: Sequence[tuple[float, float]],
                 generator: Optional[Iterator[tuple[float, float, float]]] = None,
                 tail_mass: float = 0.0,
                 tail_hull: Sequence[BoundaryArc] = (),
                 accumulation: Sequence[float] = ()):
        self._atoms: list[tuple[float, float]] = []
        seen = set()
        for theta, mass in atoms:
            if mass <= 0.0:
                raise DomainError("atom masses must be positive")
            key = angle_mod(float(theta))
            if key in seen:
                raise DomainError("atom angles must be distinct")
            seen.add(key)
            self._atoms.append((key, float(mass)))
        if tail_mass < 0.0:
            raise DomainError("tail mass bound must be nonnegative")
        self._gen = generator
        self._tail = float(tail_mass)
        self._hull = tuple(tail_hull)
        self._accumulation = tuple(float(a) for a in accumulation)
        self._lock = threading.Lock()

    # -- materialization --

    @property
    def tail_mass(self) -> float:
        return self._tail

    @property
    def atoms(self) -> list[tuple[float, float]]:
        return list(self._atoms)

    def materialize_until_tail(self, bound: float) -> None:
        """Consume the generator until the declared tail is <= bound."""
        with self._lock:
            while self._tail > bound and self._gen is not None:
                try:
                    theta, mass, tail_after = next(self._gen)
                except StopIteration:
                    self._gen = None
                    break
                if mass <= 0.0:
                    raise DomainError("atom masses must be positive")
                if mass + tail_after > self._tail + 1e-12 * (1.0 + self._tail):
                    raise DomainError("atom generator exceeds its declared tail budget")
                self._atoms.append((angle_mod(float(theta)), float(mass)))
                self._tail = float(tail_after)

    # -- queries --

    def total_mass(self) -> float:
        return math.fsum(m for _, m in self._atoms) + self._tail

    def support(self) -> BoundarySupport:
        return PointSupport.of([t for t, _ in self._atoms],
                               accumulation=self._accumulation, hull=self._hull)

    def mass_of_arc_bounds(self, arc: BoundaryArc, closed_ends: bool = True,
                           tol: float = 1e-12) -> tuple[float, float]:
        total = 0.0
        for theta, mass in self._atoms:
            gap = angular_gap(theta, arc.center_angle)
            inside = gap <= arc.half_width if closed_ends else gap < arc.half_width
            if inside or arc.half_width >= math.pi:
                total += mass
        return (total, total + self._tail)

    def poisson_bounds(self, z: complex, tol: float = 1e-9) -> tuple[float, float]:
        z = _check_interior(z)
        max_kernel = (1.0 + abs(z)) / (1.0 - abs(z))
        if self._gen is not None:
            self.materialize_until_tail(0.5 * tol / max_kernel)
        total = math.fsum(m * poisson_kernel(z, t) for t, m in self._atoms)
        slack = self._tail * max_kernel
        if slack > tol:
            raise PrecisionExhausted(
                "atomic tail bound %g cannot meet tol %g at |z|=%g"
                % (self._tail, tol, abs(z)), bracket=(total, total + slack))
        return (total, total + slack)

    def herglotz_integral(self, z: complex, tol: float = 1e-9) -> complex:
        z = _check_interior(z)
        max_kernel = (1.0 + abs(z)) / (1.0 - abs(z))
        if self._gen is not None:
            self.materialize_until_tail(0.5 * tol / max_kernel)
        if self._tail * max_kernel > tol:
            raise PrecisionExhausted(
                "atomic tail bound %g cannot meet tol %g" % (self._tail, tol))
        re = math.fsum(m * (_herglotz_kernel(z, t).real) for t, m in self._atoms)
        im = math.fsum(m * (_herglotz_kernel(z, t).imag) for t, m in self._atoms)
        return complex(re, im)


# ---------------------------------------------------------------------------
# Symmetric Cantor measures
# ---------------------------------------------------------------------------

MIDDLE_THIRDS_RATIO = Fraction(2, 3)


class CantorMeasure(SingularMeasure):
    """Symmetric Cantor measure with generation lengths 2^{-n} delta_n.

    ``ratios[n]`` is delta_{n+1} / delta_n as an exact rational in (0, 1);
    a constant ratio 2/3 gives the middle-thirds set.  When a finite
    explicit list is supplied, deeper generations continue with the last
    ratio.  Interval endpoints are stored as exact fractions of a full turn.
    """

    MAX_GENERATION = 48

    def __init__(self, ratios: Sequence[Fraction] | Fraction = MIDDLE_THIRDS_RATIO,
                 max_generation: int = MAX_GENERATION):
        if isinstance(ratios, Fraction):
            ratios = [ratios]
        self._ratios = [Fraction(r) for r in ratios]
        if not self._ratios:
            raise DomainError("need at least one generation ratio")
        for r in self._ratios:
            if not (0 < r < 1):
                raise DomainError("generation ratios must lie in (0, 1), got %s" % (r,))
        self.max_generation = int(max_generation)
        # generation cache: list of (a, b) Fractions in turn units
        self._gens: list[list[tuple[Fraction, Fraction]]] = [[(Fraction(0), Fraction(1))]]
        self._lock = threading.Lock()
        self._ratio_floats = np.array(
            [float(self._ratio(k)) for k in range(self.max_generation + 1)])

    @classmethod
    def middle_thirds(cls) -> "CantorMeasure":
        return cls(MIDDLE_THIRDS_RATIO)

    @classmethod
    def from_removed_fraction(cls, removed: Fraction) -> "CantorMeasure":
        """Cantor set removing the centered fraction ``removed`` each step."""
        removed = Fraction(removed)
        if not (0 < removed < 1):
            raise DomainError("removed fraction must lie in (0, 1)")
        return cls(1 - removed)

    @classmethod
    def from_delta_radians(cls, deltas: Sequence[float]) -> "CantorMeasure":
        """Explicit delta_n list in radians; delta_0 = 2 pi is implied."""
        vals = [TWO_PI] + [float(d) for d in deltas]
        ratios = []
        for a, b in zip(vals, vals[1:]):
            ratios.append(Fraction(b) / Fraction(a))
        return cls(ratios)

    def _ratio(self, n: int) -> Fraction:
        """delta_{n+1} / delta_n."""
        if n < len(self._ratios):
            return self._ratios[n]
        return self._ratios[-1]

    def delta(self, n: int) -> float:
        """delta_n in radians."""
        q = Fraction(1)
        for k in range(n):
            q *= self._ratio(k)
        return float(_TWO_PI_FRAC * q)

    def generation(self, n: int) -> list[tuple[Fraction, Fraction]]:
        """The 2^n intervals of E_n, exact endpoints in turn units."""
        if n > self.max_generation:
            raise PrecisionExhausted("generation depth cap %d exceeded" % self.max_generation)
        with self._lock:
            while len(self._gens) <= n:
                m = len(self._gens)          # building generation m from m-1
                q = self._ratio(m - 1)
                out = []
                for a, b in self._gens[-1]:
                    child_len = (b - a) * q / 2
                    out.append((a, a + child_len))
                    out.append((b - child_len, b))
                self._gens.append(out)
        return self._gens[n]

    def total_mass(self) -> float:
        return 1.0

    def support(self) -> BoundarySupport:
        return CantorSupport(self)

    # -- CDF --

    def _to_turns(self, t: float) -> Fraction:
        return Fraction(t) / _TWO_PI_FRAC

    def cdf_bounds(self, t: float, tol: float = 1e-12) -> tuple[float, float]:
        """Bracket for phi(t) = sigma([0, t]), t in radians in [0, 2*pi].

        Exact once t falls in a removed gap; while t stays inside a
        generation interval the bracket width is the interval mass 2^{-n}.
        """
        tt = self._to_turns(t)
        if tt <= 0:
            return (0.0, 0.0)
        if tt >= 1:
            return (1.0, 1.0)
        below = 0.0
        a, b = Fraction(0), Fraction(1)
        for n in range(1, self.max_generation + 1):
            q = self._ratio(n - 1)
            child_len = (b - a) * q / 2
            c1 = (a, a + child_len)
            c2 = (b - child_len, b)
            mass = 2.0 ** -n
            if tt <= c1[1]:
                a, b = c1
            elif tt < c2[0]:
                return (below + mass, below + mass)   # in the removed gap
            else:
                below += mass
                a, b = c2
            if mass <= tol:
                return (below, below + mass)
        return (below, below + 2.0 ** -self.max_generation)

    def mass_of_arc_bounds(self, arc: BoundaryArc, closed_ends: bool = True,
                           tol: float = 1e-12) -> tuple[float, float]:
        lo_total, hi_total = 0.0, 0.0
        for wlo, whi in _arc_windows(arc):
            alo, ahi = self.cdf_bounds(wlo, tol * 0.25)
            blo, bhi = self.cdf_bounds(whi, tol * 0.25)
            lo_total += max(0.0, blo - ahi)
            hi_total += max(0.0, bhi - alo)
        if hi_total - lo_total > 4.0 * tol + 1e-15:
            raise PrecisionExhausted(
                "Cantor arc mass bracket stuck at width %g for tol %g"
                % (hi_total - lo_total, tol), bracket=(lo_total, hi_total))
        return (lo_total, hi_total)

    # -- Poisson / Herglotz over generation cells --

    def _adaptive_cells(self, z: complex, tol: float,
                        osc_fn: Callable[[complex, float, float], float],
                        max_cells: int = 400000):
        """Split generation intervals while osc * mass >= tol / active-cells.

        When the rule stabilizes every cell error is below tol divided by
        the cell count, so the summed bracket width is below tol.  Cells are
        (lo_rad, hi_rad, mass) with masses exactly 2^{-n}; children are
        derived from parent endpoints directly (float endpoints, exact
        masses), so deep refinement near the kernel peak stays local and
        never materializes a whole generation.
        """
        cells = []
        for a, b in self.generation(2):
            cells.append((2, float(a) * TWO_PI, float(b) * TWO_PI))
        while True:
            budget = tol / len(cells)
            nxt = []
            split_any = False
            for n, lo, hi in cells:
                err = osc_fn(z, lo, hi) * 2.0 ** -n
                if err < budget or n >= self.max_generation:
                    nxt.append((n, lo, hi))
                    continue
                split_any = True
                q = float(self._ratio(n))
                clen = (hi - lo) * q * 0.5
                nxt.append((n + 1, lo, lo + clen))
                nxt.append((n + 1, hi - clen, hi))
            cells = nxt
            if not split_any:
                break
            if len(cells) > max_cells:
                raise PrecisionExhausted(
                    "Cantor quadrature needs more than %d cells for tol %g"
                    % (max_cells, tol))
        total_err = math.fsum(osc_fn(z, lo, hi) * 2.0 ** -n for n, lo, hi in cells)
        if total_err > tol:
            raise PrecisionExhausted(
                "Cantor quadrature hit the generation cap with error %g > tol %g"
                % (total_err, tol))
        return [(lo, hi, 2.0 ** -n) for n, lo, hi in cells]

    def poisson_bounds(self, z: complex, tol: float = 1e-9) -> tuple[float, float]:
        z = _check_interior(z)
        r = abs(z)
        phase = cmath.phase(z) if r > 0.0 else 0.0

        def ranges(lo, hi):
            center = 0.5 * (lo + hi)
            half = 0.5 * (hi - lo)
            d = np.abs(np.mod(phase - center + math.pi, TWO_PI) - math.pi)
            gmin = np.maximum(0.0, d - half)
            gmax = np.minimum(math.pi, d + half)
            one_minus_r2 = 1.0 - r * r
            kmax = one_minus_r2 / ((1.0 - r) ** 2 + 4.0 * r * np.sin(0.5 * gmin) ** 2)
            kmin = one_minus_r2 / ((1.0 - r) ** 2 + 4.0 * r * np.sin(0.5 * gmax) ** 2)
            return kmin, kmax

        base = self.generation(2)
        n = np.full(len(base), 2, dtype=np.int64)
        lo = np.array([float(a) * TWO_PI for a, _ in base])
        hi = np.array([float(b) * TWO_PI for _, b in base])
        max_cells = 400000
        while True:
            kmin, kmax = ranges(lo, hi)
            err = (kmax - kmin) * np.exp2(-n.astype(np.float64))
            split = (err >= tol / n.size) & (n < self.max_generation)
            if not np.any(split):
                break
            keep_n, keep_lo, keep_hi = n[~split], lo[~split], hi[~split]
            sn, slo, shi = n[split], lo[split], hi[split]
            q = self._ratio_floats[sn]
            clen = (shi - slo) * q * 0.5
            n = np.concatenate([keep_n, sn + 1, sn + 1])
            lo = np.concatenate([keep_lo, slo, shi - clen])
            hi = np.concatenate([keep_hi, slo + clen, shi])
            if n.size > max_cells:
                raise PrecisionExhausted(
                    "Cantor quadrature needs more than %d cells for tol %g"
                    % (max_cells, tol))
        masses = np.exp2(-n.astype(np.float64))
        total_err = float(np.sum((kmax - kmin) * masses))
        if total_err > tol:
            raise PrecisionExhausted(
                "Cantor quadrature hit the generation cap with error %g > tol %g"
                % (total_err, tol))
        return (float(np.sum(kmin * masses)), float(np.sum(kmax * masses)))

    def herglotz_integral(self, z: complex, tol: float = 1e-9) -> complex:
        z = _check_interior(z)
        cells = self._adaptive_cells(z, tol, _herglotz_osc_bound)
        val = 0j
        for lo, hi, m in cells:
            val += m * _herglotz_kernel(z, 0.5 * (lo + hi))
        return val


class CantorSupport(BoundarySupport):
    """Distance oracle for the Cantor set E = intersection of the E_n.

    Every generation-interval endpoint belongs to E, so when a query arc is
    disjoint from E_n the distance to E_n is exact (it is attained at an
    endpoint of the nearest interval).
    """

    def __init__(self, measure: CantorMeasure):
        self.measure = measure

    def is_empty(self) -> bool:
        return False

    def angular_distance_to_arc(self, arc: BoundaryArc) -> tuple[float, float]:
        lo_best, hi_best = math.inf, math.inf
        for wlo, whi in _arc_windows(arc):
            dlo, dhi = self._window_distance(wlo / TWO_PI, whi / TWO_PI)
            lo_best = min(lo_best, dlo)
            hi_best = min(hi_best, dhi)
            if hi_best == 0.0:
                return (0.0, 0.0)
        return (lo_best * TWO_PI, hi_best * TWO_PI)

    def _window_distance(self, u: float, v: float) -> tuple[float, float]:
        """Distance bracket from [u, v] (turns) to E, circular metric in turns.

        The descent tracks candidate intervals in double precision; the
        released bracket therefore carries ~1e-15 turn uncertainty, which
        the callers' thresholds dominate by many orders of magnitude.
        """

        def gap(iv_lo, iv_hi):
            # circular distance between [u,v] and [iv_lo, iv_hi] in turns
            if iv_hi >= u and iv_lo <= v:
                return 0.0
            d = iv_lo - v if iv_lo > v else u - iv_hi
            return min(d, max(0.0, 1.0 - (v - u) - (iv_hi - iv_lo) - d))

        m = self.measure
        candidates = [(0.0, 1.0)]
        best_endpoint = math.inf   # distance to a known point of E
        lower = 0.0
        for n in range(1, m.max_generation + 1):
            q = float(m._ratio_floats[n - 1])
            nxt = []
            lower = math.inf
            for a, b in candidates:
                clen = (b - a) * q * 0.5
                for ca, cb in ((a, a + clen), (b - clen, b)):
                    if ca >= u and cb <= v:
                        return (0.0, 0.0)      # whole interval (so E points) inside
                    for e in (ca, cb):
                        best_endpoint = min(best_endpoint, gap(e, e))
                    d = gap(ca, cb)
                    if d <= best_endpoint:
                        nxt.append((ca, cb))
                        lower = min(lower, d)
            candidates = nxt
            if not candidates:
                return (best_endpoint, best_endpoint)
            if best_endpoint - lower <= 1e-15:
                return (lower, best_endpoint)
        return (lower, best_endpoint)

    def chord_distance_to_point(self, p: complex, tol: float = 1e-12) -> tuple[float, float]:
        m = self.measure
        r = abs(p)
        phase_turns = angle_mod(cmath.phase(p)) / TWO_PI if r > 0.0 else 0.0

        def chord_to_interval(lo_t: float, hi_t: float) -> float:
            # Euclidean distance from p to the arc spanning [lo_t, hi_t] turns
            d = abs((phase_turns - 0.5 * (lo_t + hi_t) + 0.5) % 1.0 - 0.5)
            gap_turns = max(0.0, d - 0.5 * (hi_t - lo_t))
            gap = gap_turns * TWO_PI
            return math.sqrt(max(0.0, r * r + 1.0 - 2.0 * r * math.cos(min(gap, math.pi))))

        candidates = [(0.0, 1.0)]
        best_endpoint = math.inf
        lower = 0.0
        for n in range(1, m.max_generation + 1):
            q = float(m._ratio_floats[n - 1])
            nxt = []
            lower = math.inf
            for a, b in candidates:
                clen = (b - a) * q * 0.5
                for ca, cb in ((a, a + clen), (b - clen, b)):
                    d = chord_to_interval(ca, cb)
                    for e in (ca, cb):
                        best_endpoint = min(best_endpoint, chord_to_interval(e, e))
                    if d <= best_endpoint:
                        nxt.append((ca, cb))
                        lower = min(lower, d)
            candidates = nxt
            if not candidates:
                return (best_endpoint, best_endpoint)
            if best_endpoint - lower <= tol:
                return (lower, best_endpoint)
        return (lower, best_endpoint)

    def cover_arcs(self, scale: float) -> list[BoundaryArc]:
        m = self.measure
        n = 2
        while n < m.max_generation and float(m.generation(n)[0][1] - m.generation(n)[0][0]) * TWO_PI > scale \
                and 2 ** (n + 1) <= 65536:
            n += 1
        return [BoundaryArc.from_endpoints(float(a) * TWO_PI, float(b) * TWO_PI)
                for a, b in m.generation(n)]


# ---------------------------------------------------------------------------
# Generic CDF measures
# ---------------------------------------------------------------------------

class CdfMeasure(SingularMeasure):
    """Measure given by a piecewise-linear-in-samples CDF on [0, 2*pi]."""

    def __init__(self, samples: Sequence[tuple[float, float]]):
        pts = [(float(t), float(v)) for t, v in samples]
        if len(pts) < 2:
            raise DomainError("need at least two CDF samples")
        for (t0, v0), (t1, v1) in zip(pts, pts[1:]):
            if t1 <= t0:
                raise DomainError("CDF sample abscissae must be strictly increasing")
            if v1 < v0:
                raise DomainError("CDF samples must be non-decreasing")
        if pts[0][0] < 0.0 or pts[-1][0] > TWO_PI + 1e-12:
            raise DomainError("CDF samples must lie in [0, 2*pi]")
        self._pts = pts

    def cdf(self, t: float) -> float:
        pts = self._pts
        if t <= pts[0][0]:
            return pts[0][1]
        if t >= pts[-1][0]:
            return pts[-1][1]
        lo, hi = 0, len(pts) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if pts[mid][0] <= t:
                lo = mid
            else:
                hi = mid
        (t0, v0), (t1, v1) = pts[lo], pts[hi]
        return v0 + (v1 - v0) * (t - t0) / (t1 - t0)

    def total_mass(self) -> float:
        return self._pts[-1][1] - self._pts[0][1]

    def support(self) -> BoundarySupport:
        arcs = []
        for (t0, v0), (t1, v1) in zip(self._pts, self._pts[1:]):
            if v1 > v0:
                arcs.append(BoundaryArc.from_endpoints(t0, t1))
        return ArcSupport(tuple(arcs))

    def mass_of_arc_bounds(self, arc: BoundaryArc, closed_ends: bool = True,
                           tol: float = 1e-12) -> tuple[float, float]:
        total = 0.0
        for lo, hi in _arc_windows(arc):
            total += self.cdf(hi) - self.cdf(lo)
        return (total, total)

    def poisson_bounds(self, z: complex, tol: float = 1e-9) -> tuple[float, float]:
        """Exact integral against the piecewise-linear CDF.

        On each sample interval the density is constant, and the Poisson
        kernel has the elementary antiderivative

            int P_r(t) dt = 2 atan( (1+r)/(1-r) tan(t/2) )

        continued across branch cuts, so the value is closed-form up to
        rounding; the returned bracket carries only a float slack.
        """
        z = _check_interior(z)
        r = abs(z)
        phase = cmath.phase(z) if r > 0.0 else 0.0
        c = (1.0 + r) / (1.0 - r)

        def anti(t: float) -> float:
            k = math.floor((t + math.pi) / TWO_PI)
            tt = t - TWO_PI * k
            return TWO_PI * k + 2.0 * math.atan(c * math.tan(0.5 * tt)) \
                if abs(tt) < math.pi else TWO_PI * k + math.copysign(math.pi, tt)

        total = 0.0
        for (t0, v0), (t1, v1) in zip(self._pts, self._pts[1:]):
            if v1 == v0:
                continue
            slope = (v1 - v0) / (t1 - t0)
            total += slope * (anti(t1 - phase) - anti(t0 - phase))
        slack = max(1e-13, 1e-13 * abs(total)) + 64.0 * abs(total) * 2.2e-16 / (1.0 - r)
        return (total - slack, total + slack)

    def herglotz_integral(self, z: complex, tol: float = 1e-9) -> complex:
        """Exact integral: int_a^b (z+xi)/(z-xi) dtheta
        = (b - a) + 2i [log(e^{i theta} - z)]_a^b
        along the continuous branch of the logarithm (check at z = 0:
        the bracket is i (b - a), giving -(b - a) as it must)."""
        z = _check_interior(z)
        total = 0j
        for (t0, v0), (t1, v1) in zip(self._pts, self._pts[1:]):
            if v1 == v0:
                continue
            slope = (v1 - v0) / (t1 - t0)
            # walk the arc in quarter-turn steps to keep the branch continuous
            steps = max(1, int((t1 - t0) / (0.5 * math.pi)) + 1)
            acc = 0j
            prev_log = cmath.log(cmath.exp(1j * t0) - z)
            for s in range(1, steps + 1):
                t = t0 + (t1 - t0) * s / steps
                cur = cmath.log(cmath.exp(1j * t) - z)
                dim = cur.imag - prev_log.imag
                if dim > math.pi:
                    dim -= TWO_PI
                elif dim < -math.pi:
                    dim += TWO_PI
                acc += complex(cur.real - prev_log.real, dim)
                prev_log = cur
            total += slope * ((t1 - t0) + 2j * acc)
        return total
