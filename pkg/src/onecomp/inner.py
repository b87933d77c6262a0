"""Blaschke products, singular inner functions, and their diagnostics.

Modulus computations route through log space: log|Theta(z)| is reported as a
certified interval combining the materialized Blaschke factors, a rigorous
bound for the truncated tail, and Poisson-integral brackets for the singular
part.  The tail bound uses

    -sum_tail log rho <= sum_tail (1 - rho^2) / rho^2,
    1 - rho(z, w)^2 = (1-|z|^2)(1-|w|^2) / |1 - conj(w) z|^2
                    <= 4 (1-|w|) (1+|z|) / (1-|z|),

so a declared tail Blaschke sum T gives -sum_tail log rho <= u/(1-u) with
u = 4 T (1+|z|)/(1-|z|); the zero generator is consumed until this is below
half the requested tolerance.
"""

from __future__ import annotations

import cmath
import io
import math
import threading
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional, Sequence

import numpy as np

from .errors import (BlaschkeConditionError, DomainError, HorizonExceeded,
                     TailBoundInsufficient)
from .geometry import (BoundarySupport, CarlesonSquare, PointSupport,
                       angle_mod, carleson_square, pseudo_distance)
from .measures import SingularMeasure


class Interval(NamedTuple):
    """Closed interval [lo, hi] certifying a real quantity."""

    lo: float
    hi: float

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi


MINUS_INF_INTERVAL = Interval(-math.inf, -math.inf)


class ZeroSequence:
    """Zero list with an optional generator and a certified tail budget.

    The generator yields ``(zero, tail_after)`` pairs where ``tail_after``
    bounds the Blaschke sum of everything still to come.  Materializing a
    zero must fit the declared budget: (1 - |z|) + tail_after may not exceed
    the previous tail bound, which makes silently divergent sequences
    impossible to construct.
    """

    def __init__(self, zeros: Sequence[complex] = (),
                 generator: Optional[Iterator[tuple[complex, float]]] = None,
                 tail_blaschke_sum: float = 0.0,
                 ordered_by_modulus: bool = False,
                 accumulation_angles: Sequence[float] = ()):
        self._zeros: list[complex] = []
        for z in zeros:
            z = complex(z)
            if abs(z) >= 1.0:
                raise DomainError("zeros must lie in the open disc")
            self._zeros.append(z)
        if tail_blaschke_sum < 0.0:
            raise BlaschkeConditionError("tail Blaschke sum must be nonnegative")
        if generator is None and tail_blaschke_sum > 0.0 and not zeros:
            pass  # a pure tail bound with no listed zeros is allowed
        self._gen = generator
        self._tail = float(tail_blaschke_sum)
        self.ordered_by_modulus = bool(ordered_by_modulus)
        self.accumulation_angles = tuple(float(a) for a in accumulation_angles)
        self._lock = threading.Lock()
        self._arr: Optional[np.ndarray] = None

    # -- materialization --

    def _consume_one(self) -> bool:
        if self._gen is None:
            return False
        try:
            z, tail_after = next(self._gen)
        except StopIteration:
            self._gen = None
            return False
        z = complex(z)
        if abs(z) >= 1.0:
            raise DomainError("generated zero leaves the open disc")
        if tail_after < 0.0:
            raise BlaschkeConditionError("tail bound went negative")
        if (1.0 - abs(z)) + tail_after > self._tail + 1e-12 * (1.0 + self._tail):
            raise BlaschkeConditionError(
                "zero generator exceeds its declared Blaschke budget: "
                "(1-|z|) + tail_after = %g > %g"
                % ((1.0 - abs(z)) + tail_after, self._tail))
        if self.ordered_by_modulus and self._zeros and abs(z) < abs(self._zeros[-1]) - 1e-15:
            raise DomainError("generator declared ordered_by_modulus emitted a closer zero")
        self._zeros.append(z)
        self._tail = float(tail_after)
        self._arr = None
        return True

    def materialize_count(self, count: int) -> None:
        with self._lock:
            while len(self._zeros) < count and self._consume_one():
                pass

    def materialize_until_tail(self, bound: float) -> None:
        with self._lock:
            while self._tail > bound and self._consume_one():
                pass

    def materialize_until_depth(self, depth: float) -> None:
        """Consume until every unlisted zero satisfies 1 - |z| <= depth.

        Requires modulus ordering, since only then does the last listed zero
        bound everything still to come.
        """
        if self._gen is not None and not self.ordered_by_modulus:
            raise DomainError("depth materialization needs ordered_by_modulus")
        with self._lock:
            while self._gen is not None:
                if self._zeros and 1.0 - abs(self._zeros[-1]) <= depth:
                    break
                if not self._consume_one():
                    break

    # -- views --

    @property
    def zeros(self) -> list[complex]:
        return list(self._zeros)

    @property
    def tail_blaschke_sum(self) -> float:
        return self._tail

    @property
    def exhausted(self) -> bool:
        return self._gen is None

    def __len__(self) -> int:
        return len(self._zeros)

    def as_array(self) -> np.ndarray:
        if self._arr is None or len(self._arr) != len(self._zeros):
            self._arr = np.array(self._zeros, dtype=np.complex128)
        return self._arr

    def blaschke_sum(self) -> float:
        """Certified upper bound for sum (1 - |z_n|) over the whole sequence."""
        return float(np.sum(1.0 - np.abs(self.as_array()))) + self._tail if self._zeros \
            else self._tail

    def materialization_horizon(self) -> float:
        """Upper bound on 1 - |z| over unlisted zeros (0 when complete)."""
        if self._gen is None and self._tail == 0.0:
            return 0.0
        if self._gen is None:
            return self._tail  # tail sum also bounds each term
        if not self.ordered_by_modulus:
            return math.inf
        if not self._zeros:
            return min(1.0, self._tail) if self._tail else 1.0
        return min(1.0 - abs(self._zeros[-1]), self._tail if self._tail else math.inf)


def blaschke_factor(w: complex, z: complex) -> complex:
    """Single factor |w|/w * (w - z)/(1 - conj(w) z); -z when w = 0."""
    if w == 0:
        return -z
    return (abs(w) / w) * (w - z) / (1.0 - w.conjugate() * z)


def _tail_neg_log_bound(tail: float, z_abs: float) -> float:
    if tail == 0.0:
        return 0.0
    u = 4.0 * tail * (1.0 + z_abs) / (1.0 - z_abs)
    if u >= 0.5:
        return math.inf
    return u / (1.0 - u)


class BlaschkeProduct:
    """Blaschke product over a ZeroSequence."""

    def __init__(self, zeros: ZeroSequence | Sequence[complex]):
        if not isinstance(zeros, ZeroSequence):
            zeros = ZeroSequence(zeros)
        self.zeros = zeros

    def _ensure_tail(self, z_abs: float, budget: float) -> float:
        zs = self.zeros
        while True:
            bound = _tail_neg_log_bound(zs.tail_blaschke_sum, z_abs)
            if bound <= budget:
                return bound
            if zs.exhausted:
                raise TailBoundInsufficient(
                    "certified tail %g exceeds budget %g at |z| = %g"
                    % (bound, budget, z_abs))
            zs.materialize_count(len(zs) + 16)

    def log_modulus(self, z: complex, tol: float = 1e-9) -> Interval:
        z = complex(z)
        if abs(z) >= 1.0:
            raise DomainError("log_modulus requires |z| < 1")
        tail_bound = self._ensure_tail(abs(z), 0.5 * tol)
        arr = self.zeros.as_array()
        if arr.size == 0:
            return Interval(-tail_bound, 0.0)
        num = np.abs(arr - z)
        den = np.abs(1.0 - np.conj(arr) * z)
        if np.any(num == 0.0):
            return MINUS_INF_INTERVAL
        s = float(np.sum(np.log(num) - np.log(den)))
        return Interval(s - tail_bound, s)

    def modulus_bounds(self, z: complex, tol: float = 1e-9) -> Interval:
        """Certified bracket for |B(z)| at value scale.

        Cheaper than exp(log_modulus) when the materialized product is
        already below tol: the unmaterialized tail only shrinks the modulus,
        so (0, exp(sum)) is certified without consuming the generator.
        """
        z = complex(z)
        if abs(z) >= 1.0:
            raise DomainError("modulus bounds require |z| < 1")
        arr = self.zeros.as_array()
        if arr.size:
            num = np.abs(arr - z)
            if np.any(num == 0.0):
                return Interval(0.0, 0.0)
            s = float(np.sum(np.log(num) - np.log(np.abs(1.0 - np.conj(arr) * z))))
        else:
            s = 0.0
        upper = math.exp(s)
        if upper <= 0.5 * tol:
            return Interval(0.0, upper)
        # value-scale budget: a log-width d gives value width <= upper * d
        log_budget = max(1e-15, 0.5 * tol / upper)
        tail_bound = self._ensure_tail(abs(z), log_budget)
        arr = self.zeros.as_array()
        if arr.size:
            num = np.abs(arr - z)
            if np.any(num == 0.0):
                return Interval(0.0, 0.0)
            s = float(np.sum(np.log(num) - np.log(np.abs(1.0 - np.conj(arr) * z))))
        upper = math.exp(s)
        return Interval(math.exp(s - tail_bound), upper)

    def evaluate(self, z: complex, tol: float = 1e-9) -> complex:
        """Value of the materialized (tol-truncated) product.

        Interior points always work; closed-disc points (|z| = 1) are
        admitted for fully materialized finite products, where the formula
        extends analytically.
        """
        z = complex(z)
        if abs(z) >= 1.0:
            if not (self.zeros.exhausted and self.zeros.tail_blaschke_sum == 0.0
                    and abs(z) <= 1.0 + 1e-12):
                raise DomainError("boundary evaluation needs a finite product")
        else:
            self._ensure_tail(abs(z), 0.5 * tol)
        val = 1.0 + 0.0j
        for w in self.zeros.zeros:
            val *= blaschke_factor(w, z)
        return val


class SingularInner:
    """exp of the Herglotz transform of a positive singular measure."""

    def __init__(self, sigma: SingularMeasure):
        self.sigma = sigma

    def log_modulus(self, z: complex, tol: float = 1e-9) -> Interval:
        plo, phi = self.sigma.poisson_bounds(z, tol)
        return Interval(-phi, -plo)

    def modulus_bounds(self, z: complex, tol: float = 1e-9) -> Interval:
        """Certified bracket for |S(z)| = exp(-P[sigma](z)) at value scale.

        A coarse Poisson pass decides how much log-scale accuracy the value
        actually needs: when P is large, |S| is already pinned near 0.
        """
        plo, phi = self.sigma.poisson_bounds(z, tol=0.25)
        lo, hi = math.exp(-phi), math.exp(-plo)
        if hi - lo <= tol:
            return Interval(lo, hi)
        log_tol = max(1e-14, 0.5 * tol * math.exp(min(plo, 60.0)))
        plo, phi = self.sigma.poisson_bounds(z, tol=min(0.25, log_tol))
        return Interval(math.exp(-phi), math.exp(-plo))

    def evaluate(self, z: complex, tol: float = 1e-9) -> complex:
        return cmath.exp(self.sigma.herglotz_integral(z, tol))


@dataclass
class MuMeasure:
    """Zero masses (1-|z_n|) delta_{z_n} plus the boundary singular part.

    Queries finer than the recorded materialization horizon raise instead of
    silently undercounting.
    """

    zero_atoms: list[tuple[complex, float]]
    boundary: Optional[SingularMeasure]
    horizon: float = 0.0

    def of_square(self, square: CarlesonSquare, tol: float = 1e-12) -> float:
        lo, hi = self.of_square_bounds(square, tol)
        return 0.5 * (lo + hi)

    def of_square_bounds(self, square: CarlesonSquare,
                         tol: float = 1e-12) -> tuple[float, float]:
        if not square.whole_disc and square.side < self.horizon:
            raise HorizonExceeded(
                "square side %g below materialization horizon %g"
                % (square.side, self.horizon))
        total = math.fsum(wt for z, wt in self.zero_atoms if square.member(z))
        if self.boundary is None:
            return (total, total)
        blo, bhi = self.boundary.mass_of_arc_bounds(square.boundary_arc(),
                                                    closed_ends=True, tol=tol)
        return (total + blo, total + bhi)

    def is_positive_on(self, square: CarlesonSquare, tol: float = 1e-12) -> bool:
        """Certified mu(Q) > 0 (unknown tail mass never counts)."""
        lo, _ = self.of_square_bounds(square, tol)
        return lo > 0.0

    def total(self) -> float:
        t = math.fsum(wt for _, wt in self.zero_atoms)
        if self.boundary is not None:
            t += self.boundary.total_mass()
        return t


class InnerFunction:
    """lambda * B * S with an attached mu measure and singular-set oracle."""

    def __init__(self, unimodular: complex = 1.0 + 0.0j,
                 blaschke: Optional[BlaschkeProduct] = None,
                 singular: Optional[SingularInner] = None):
        unimodular = complex(unimodular)
        if abs(abs(unimodular) - 1.0) > 1e-12:
            raise DomainError("leading constant must be unimodular")
        self.unimodular = unimodular
        self.blaschke = blaschke
        self.singular = singular

    @property
    def is_constant(self) -> bool:
        no_zeros = self.blaschke is None or (len(self.blaschke.zeros) == 0
                                             and self.blaschke.zeros.exhausted
                                             and self.blaschke.zeros.tail_blaschke_sum == 0.0)
        return no_zeros and self.singular is None

    def log_modulus(self, z: complex, tol: float = 1e-9) -> Interval:
        """Certified interval for log|Theta(z)|; (-inf, -inf) at a zero."""
        lo = hi = 0.0
        if self.blaschke is not None:
            part = self.blaschke.log_modulus(z, 0.5 * tol)
            if part is MINUS_INF_INTERVAL or part.lo == -math.inf:
                return MINUS_INF_INTERVAL
            lo += part.lo
            hi += part.hi
        if self.singular is not None:
            part = self.singular.log_modulus(z, 0.5 * tol)
            lo += part.lo
            hi += part.hi
        return Interval(lo, hi)

    def modulus_bounds(self, z: complex, tol: float = 1e-9) -> Interval:
        """Certified bracket for |Theta(z)|, accurate at value scale.

        Part brackets are subsets of [0, 1], so their product has width at
        most the sum of the part widths.
        """
        lo = hi = 1.0
        if self.blaschke is not None:
            part = self.blaschke.modulus_bounds(z, 0.5 * tol)
            lo *= part.lo
            hi *= part.hi
        if self.singular is not None:
            part = self.singular.modulus_bounds(z, 0.5 * tol)
            lo *= part.lo
            hi *= part.hi
        return Interval(lo, hi)

    def evaluate(self, z: complex, tol: float = 1e-9) -> complex:
        val = self.unimodular
        if self.blaschke is not None:
            val *= self.blaschke.evaluate(z, 0.5 * tol)
        if self.singular is not None:
            val *= self.singular.evaluate(z, 0.5 * tol)
        return val

    def mu(self, min_side: float = 0.0) -> MuMeasure:
        """The measure mu(Theta), materialized so that every zero with
        1 - |z| >= min_side is listed."""
        atoms: list[tuple[complex, float]] = []
        horizon = 0.0
        if self.blaschke is not None:
            zs = self.blaschke.zeros
            if min_side > 0.0:
                zs.materialize_until_depth(min_side)
            atoms = [(z, 1.0 - abs(z)) for z in zs.zeros]
            horizon = zs.materialization_horizon()
        boundary = self.singular.sigma if self.singular is not None else None
        return MuMeasure(atoms, boundary, horizon)

    def singular_set(self) -> BoundarySupport:
        """Declared singular set: zero accumulation plus supp sigma."""
        parts: list[BoundarySupport] = []
        if self.blaschke is not None:
            acc = self.blaschke.zeros.accumulation_angles
            if acc:
                parts.append(PointSupport.of([], accumulation=acc))
        if self.singular is not None:
            parts.append(self.singular.sigma.support())
        if not parts:
            return PointSupport.of([])
        if len(parts) == 1:
            return parts[0]
        return UnionSupport(tuple(parts))

    def product_with(self, other: "InnerFunction") -> "InnerFunction":
        """Pointwise product; zero sequences concatenate, measures must not
        collide (at most one singular part)."""
        if self.singular is not None and other.singular is not None:
            raise DomainError("product of two singular parts is not supported")
        zs: list[complex] = []
        tail = 0.0
        gen = None
        ordered = True
        acc: list[float] = []
        for f in (self, other):
            if f.blaschke is not None:
                zsq = f.blaschke.zeros
                zs.extend(zsq.zeros)
                tail += zsq.tail_blaschke_sum
                if not zsq.exhausted:
                    if gen is not None:
                        raise DomainError("cannot merge two live zero generators")
                    gen = zsq._gen
                ordered = ordered and zsq.ordered_by_modulus
                acc.extend(zsq.accumulation_angles)
        blaschke = None
        if zs or gen is not None or tail > 0.0:
            blaschke = BlaschkeProduct(ZeroSequence(
                zs, generator=gen, tail_blaschke_sum=tail,
                ordered_by_modulus=False, accumulation_angles=acc))
        singular = self.singular if self.singular is not None else other.singular
        return InnerFunction(self.unimodular * other.unimodular, blaschke, singular)


class UnionSupport(BoundarySupport):
    """Union of closed boundary sets; distance brackets take minima."""

    def __init__(self, parts: tuple[BoundarySupport, ...]):
        self.parts = parts

    def is_empty(self) -> bool:
        return all(p.is_empty() for p in self.parts)

    def covers_circle(self) -> bool:
        return any(p.covers_circle() for p in self.parts)

    def described_length(self) -> float:
        return sum(p.described_length() for p in self.parts)

    def angular_distance_to_arc(self, arc):
        lo = hi = math.inf
        for p in self.parts:
            a, b = p.angular_distance_to_arc(arc)
            lo = min(lo, a)
            hi = min(hi, b)
        return (lo, hi)

    def chord_distance_to_point(self, p, tol: float = 1e-12):
        lo = hi = math.inf
        for part in self.parts:
            a, b = part.chord_distance_to_point(p, tol)
            lo = min(lo, a)
            hi = min(hi, b)
        return (lo, hi)

    def cover_arcs(self, scale):
        out = []
        for p in self.parts:
            out.extend(p.cover_arcs(scale))
        return out


# ---------------------------------------------------------------------------
# Zero-sequence diagnostics
# ---------------------------------------------------------------------------

def separation_constants(zeros: ZeroSequence, horizon: int) -> tuple[float, float]:
    """(min pairwise rho, Carleson dyadic box constant) over a finite prefix.

    Both numbers are evidence computed on the materialized prefix, not
    proofs for infinite families.  The box constant is the maximum over
    dyadic boxes Q_{n,k} (depths 2 up to the scale of the shallowest zero)
    of sum_{z_j in Q} (1 - |z_j|) / l(Q) with l(Q) the angular side.
    """
    zeros.materialize_count(horizon)
    pts = np.array(zeros.zeros[:horizon], dtype=np.complex128)
    if pts.size < 2:
        raise DomainError("separation needs at least two zeros")
    delta = math.inf
    chunk = 512
    for i in range(0, pts.size, chunk):
        block = pts[i:i + chunk]
        d = np.abs(block[:, None] - pts[None, :]) / \
            np.abs(1.0 - np.conj(block)[:, None] * pts[None, :])
        local = i + np.arange(block.size)
        d[np.arange(block.size), local] = np.inf
        delta = min(delta, float(d.min()))

    weights = 1.0 - np.abs(pts)
    min_gap = float(weights.min())
    if min_gap <= 0.0:
        raise DomainError("zeros must be interior")
    max_depth = max(2, math.ceil(math.log2(math.pi / min_gap)))
    angles = np.mod(np.angle(pts), 2.0 * math.pi)
    box_constant = 0.0
    for n in range(2, max_depth + 1):
        inner = 1.0 - math.pi * 2.0 ** -n
        sel = np.abs(pts) >= inner
        if not np.any(sel):
            continue
        ks = np.floor(angles[sel] / (2.0 * math.pi * 2.0 ** -n)).astype(np.int64)
        ks = np.clip(ks, 0, (1 << n) - 1)
        sums: dict[int, float] = {}
        for k, wt in zip(ks, weights[sel]):
            sums[int(k)] = sums.get(int(k), 0.0) + float(wt)
        side = 2.0 * math.pi * 2.0 ** -n
        box_constant = max(box_constant, max(sums.values()) / side)
    return (delta, box_constant)


def stolz_tail_ratio(zeros: ZeroSequence, horizon: int) -> float:
    """min_n of sum_{|z_j| > |z_n|} (1 - |z_j|) / (1 - |z_n|), n <= horizon.

    Zeros must be ordered by non-decreasing moduli; the declared tail sum
    counts toward every numerator.
    """
    zeros.materialize_count(horizon)
    pts = zeros.zeros
    if not pts:
        raise DomainError("empty zero sequence")
    mods = [abs(z) for z in pts]
    if any(b < a - 1e-15 for a, b in zip(mods, mods[1:])):
        raise DomainError("zeros must be ordered by non-decreasing moduli")
    weights = [1.0 - m for m in mods]
    suffix = [0.0] * (len(pts) + 1)
    for i in range(len(pts) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + weights[i]
    best = math.inf
    for n in range(min(horizon, len(pts))):
        above = suffix[n + 1]
        # ties in modulus do not count toward the strict-inequality numerator
        j = n + 1
        while j < len(pts) and mods[j] == mods[n]:
            above -= weights[j]
            j += 1
        ratio = (above + zeros.tail_blaschke_sum) / weights[n]
        best = min(best, ratio)
    return best


def ahern_clark_integral(zeros: ZeroSequence | Sequence[complex],
                         quadrature_n: int = 4096) -> float:
    """Trapezoidal value of the log^+ radial-derivative diagnostic.

    integral over [0, 2*pi] of log^+( sum_n (1-|z_n|^2) / |e^{it} - z_n|^2 );
    computed on the materialized zero list only, as a diagnostic quantity.
    """
    pts = np.array(zeros.zeros if isinstance(zeros, ZeroSequence) else list(zeros),
                   dtype=np.complex128)
    if pts.size == 0:
        return 0.0
    if quadrature_n < 8:
        raise DomainError("need at least 8 quadrature nodes")
    theta = np.linspace(0.0, 2.0 * math.pi, quadrature_n, endpoint=False)
    bdry = np.exp(1j * theta)
    s = np.zeros(quadrature_n)
    for w in pts:
        s += (1.0 - abs(w) ** 2) / np.abs(bdry - w) ** 2
    integrand = np.log(np.maximum(s, 1.0))
    return float(integrand.sum() * (2.0 * math.pi / quadrature_n))


# ---------------------------------------------------------------------------
# Zeros CSV interchange
# ---------------------------------------------------------------------------

def dump_zeros_csv(zeros: Sequence[complex]) -> str:
    lines = ["re,im"]
    for z in zeros:
        lines.append("%.17g,%.17g" % (z.real, z.imag))
    return "\n".join(lines) + "\n"


def load_zeros_csv(text: str) -> list[complex]:
    reader = io.StringIO(text)
    header = reader.readline().strip()
    if header.replace(" ", "") != "re,im":
        raise DomainError("zeros CSV must start with header 're,im'")
    out = []
    for lineno, line in enumerate(reader, start=2):
        line = line.strip()
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise DomainError("zeros CSV line %d: expected two fields" % lineno)
        try:
            out.append(complex(float(parts[0]), float(parts[1])))
        except ValueError as exc:
            raise DomainError("zeros CSV line %d: %s" % (lineno, exc)) from exc
    return out
