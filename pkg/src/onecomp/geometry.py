"""Hyperbolic and Carleson geometry of the unit disc.

Conventions used throughout the package:

- interior points are complex numbers z with |z| < 1; closed-disc points
  (|z| = 1) are admitted only where explicitly stated,
- angles are radians; comparisons reduce differences to (-pi, pi],
- "angular distance" is arc length on the circle, "chord distance" is the
  Euclidean distance in the plane; chord = 2 sin(angular / 2).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import DomainError

TWO_PI = 2.0 * math.pi


def wrap_angle(a: float) -> float:
    """Reduce an angle to (-pi, pi]."""
    a = math.fmod(a, TWO_PI)
    if a > math.pi:
        a -= TWO_PI
    elif a <= -math.pi:
        a += TWO_PI
    return a


def angle_mod(a: float) -> float:
    """Reduce an angle to [0, 2*pi)."""
    a = math.fmod(a, TWO_PI)
    return a + TWO_PI if a < 0.0 else a


def angular_gap(a: float, b: float) -> float:
    """Circular distance between two angles, in [0, pi]."""
    return abs(wrap_angle(a - b))


def chord(angular: float) -> float:
    """Chord length subtended by an angular gap in [0, pi]."""
    return 2.0 * math.sin(0.5 * min(angular, math.pi))


def pseudo_distance(z: complex, w: complex) -> float:
    """Pseudohyperbolic distance rho(z, w) = |z - w| / |1 - conj(z) w|.

    Both points must lie in the open disc; the value is in [0, 1).
    """
    z = complex(z)
    w = complex(w)
    if abs(z) >= 1.0 or abs(w) >= 1.0:
        raise DomainError("pseudo_distance requires interior points, got |z|=%r |w|=%r"
                          % (abs(z), abs(w)))
    return abs(z - w) / abs(1.0 - z.conjugate() * w)


def pseudo_distance_depths(s: float, t: float) -> float:
    """rho between the radial points 1-s and 1-t, computed cancellation-free.

    Valid for depths s, t in (0, 1]; exact even when s, t are far below
    double-precision resolution of 1-s itself.
    """
    if not (0.0 < s <= 1.0 and 0.0 < t <= 1.0):
        raise DomainError("depths must lie in (0, 1]")
    return abs(s - t) / (s + t - s * t)


def mobius_shift(a: complex, u: complex) -> complex:
    """Disc automorphism phi_a(u) = (a - u) / (1 - conj(a) u)."""
    return (a - u) / (1.0 - a.conjugate() * u)


@dataclass(frozen=True)
class BoundaryArc:
    """Closed arc of the unit circle given by center angle and half width."""

    center_angle: float
    half_width: float

    def __post_init__(self):
        if not (0.0 < self.half_width <= math.pi):
            raise DomainError("arc half_width must lie in (0, pi], got %r" % (self.half_width,))

    @classmethod
    def from_endpoints(cls, lo: float, hi: float) -> "BoundaryArc":
        """Arc running counterclockwise from angle lo to angle hi (hi > lo)."""
        if not (lo < hi <= lo + TWO_PI):
            raise DomainError("need lo < hi <= lo + 2*pi")
        return cls(0.5 * (lo + hi), 0.5 * (hi - lo))

    @property
    def length(self) -> float:
        return 2.0 * self.half_width

    @property
    def lo(self) -> float:
        return self.center_angle - self.half_width

    @property
    def hi(self) -> float:
        return self.center_angle + self.half_width

    def contains_angle(self, theta: float) -> bool:
        if self.half_width >= math.pi:
            return True
        return angular_gap(theta, self.center_angle) <= self.half_width

    def angular_distance_to_angle(self, theta: float) -> float:
        """Arc-length distance from a boundary angle to this (closed) arc."""
        return max(0.0, angular_gap(theta, self.center_angle) - self.half_width)

    def angular_distance_to_arc(self, other: "BoundaryArc") -> float:
        return max(0.0, angular_gap(self.center_angle, other.center_angle)
                   - self.half_width - other.half_width)

    def chord_distance_to_point(self, p: complex) -> float:
        """Euclidean distance from a plane point to this arc of the circle.

        |p - e^{i t}|^2 = |p|^2 + 1 - 2|p| cos(t - arg p) is minimized at the
        arc angle nearest to arg p, so the minimum is attained either at the
        radial projection or at an endpoint.
        """
        r = abs(p)
        gap = self.angular_distance_to_angle(cmath.phase(p)) if r > 0.0 else 0.0
        return math.sqrt(max(0.0, r * r + 1.0 - 2.0 * r * math.cos(gap)))


@dataclass(frozen=True)
class CarlesonSquare:
    """Boundary-anchored square Q = {w : |arg w - c| <= side/2, |w| >= 1 - side}.

    Membership admits closed-disc points.  ``whole_disc`` marks the
    conventional Q(0), which is the entire closed disc (recorded side 1,
    full angular width).  Dilation scales the side, floors the base modulus
    at 0, and caps the angular half-window at pi.
    """

    center_angle: float
    side: float
    whole_disc: bool = False

    def __post_init__(self):
        if self.side <= 0.0:
            raise DomainError("square side must be positive")

    @property
    def base_modulus(self) -> float:
        if self.whole_disc:
            return 0.0
        return max(0.0, 1.0 - self.side)

    @property
    def half_window(self) -> float:
        return math.pi if self.whole_disc else min(0.5 * self.side, math.pi)

    def member(self, w: complex) -> bool:
        w = complex(w)
        aw = abs(w)
        if aw > 1.0 + 1e-14:
            return False
        if self.whole_disc:
            return True
        if aw < self.base_modulus:
            return False
        return angular_gap(cmath.phase(w) if aw > 0.0 else 0.0,
                           self.center_angle) <= self.half_window

    def dilate(self, lam: float) -> "CarlesonSquare":
        if lam < 1.0:
            raise DomainError("dilation factor must be >= 1")
        return CarlesonSquare(self.center_angle, lam * self.side, self.whole_disc)

    def boundary_arc(self) -> BoundaryArc:
        return BoundaryArc(self.center_angle, self.half_window)


def carleson_square(z: complex) -> CarlesonSquare:
    """Carleson square Q(z) of an interior point; Q(0) is the closed disc."""
    z = complex(z)
    az = abs(z)
    if az >= 1.0:
        raise DomainError("carleson_square requires |z| < 1")
    if az == 0.0:
        return CarlesonSquare(0.0, 1.0, whole_disc=True)
    return CarlesonSquare(cmath.phase(z), 1.0 - az)


@dataclass(frozen=True)
class WhitneyBox:
    """Dyadic Carleson square Q_{n,k} of the standard disc decomposition.

    Q_{n,k} = {r e^{i t} : 1 - pi 2^{-n} <= r < 1,
               2 pi k 2^{-n} <= t < 2 pi (k+1) 2^{-n}},  n >= 2, 0 <= k < 2^n.
    The top half cuts the same box at r <= 1 - pi 2^{-n-1}.  Angular
    intervals are half-open, matching the Q_{n,k} definition, so the boxes
    at a fixed depth tile their annulus disjointly.
    """

    depth: int
    index: int
    top_half: bool = False

    def __post_init__(self):
        if self.depth < 2:
            raise DomainError("box depth must be >= 2")
        if not (0 <= self.index < (1 << self.depth)):
            raise DomainError("box index out of range")

    @property
    def scale(self) -> float:
        return 2.0 ** (-self.depth)

    @property
    def inner_radius(self) -> float:
        return 1.0 - math.pi * self.scale

    @property
    def cut_radius(self) -> float:
        return 1.0 - 0.5 * math.pi * self.scale

    @property
    def theta_lo(self) -> float:
        return TWO_PI * self.index * self.scale

    @property
    def theta_hi(self) -> float:
        return TWO_PI * (self.index + 1) * self.scale

    @property
    def side(self) -> float:
        """Angular side length, used as l(Q) in Carleson box sums."""
        return TWO_PI * self.scale

    def contains(self, z: complex) -> bool:
        az = abs(z)
        if az < self.inner_radius or az >= 1.0:
            return False
        if self.top_half and az > self.cut_radius:
            return False
        t = angle_mod(cmath.phase(z))
        return self.theta_lo <= t < self.theta_hi

    def top_center(self) -> complex:
        r = 1.0 - 0.75 * math.pi * self.scale
        return r * cmath.exp(1j * TWO_PI * (self.index + 0.5) * self.scale)

    def corner_point(self) -> complex:
        """Point of the top half on the box's low angular edge."""
        r = 1.0 - 0.75 * math.pi * self.scale
        return r * cmath.exp(1j * self.theta_lo)

    def children(self) -> tuple["WhitneyBox", "WhitneyBox"]:
        return (WhitneyBox(self.depth + 1, 2 * self.index, self.top_half),
                WhitneyBox(self.depth + 1, 2 * self.index + 1, self.top_half))


@dataclass(frozen=True)
class StolzAngle:
    """Non-tangential approach region |z - e^{i t}| < alpha (1 - |z|)."""

    vertex_angle: float
    aperture: float

    def __post_init__(self):
        if self.aperture <= 1.0:
            raise DomainError("Stolz aperture must exceed 1")

    def contains(self, z: complex) -> bool:
        return abs(z - cmath.exp(1j * self.vertex_angle)) < self.aperture * (1.0 - abs(z))


# ---------------------------------------------------------------------------
# Closed boundary sets (supports of singular data)
# ---------------------------------------------------------------------------

class BoundarySupport:
    """Oracle for a closed subset E of the circle.

    Distance queries return certified brackets (lo, hi) with
    lo <= dist <= hi; point and arc supports are exact (lo == hi), set
    oracles backed by lazy descriptions may be conservative.
    """

    def is_empty(self) -> bool:
        raise NotImplementedError

    def covers_circle(self) -> bool:
        return False

    def described_length(self) -> float:
        """Lebesgue measure of the description (0 for genuinely null sets)."""
        return 0.0

    def angular_distance_to_arc(self, arc: BoundaryArc) -> tuple[float, float]:
        raise NotImplementedError

    def chord_distance_to_point(self, p: complex, tol: float = 1e-12) -> tuple[float, float]:
        raise NotImplementedError

    def cover_arcs(self, scale: float) -> list[BoundaryArc]:
        """Arcs covering E at roughly the given angular resolution."""
        raise NotImplementedError


@dataclass(frozen=True)
class PointSupport(BoundarySupport):
    """Finite set of boundary angles, optionally with declared accumulation
    angles and hull arcs that are known to contain all undeclared points."""

    angles: tuple[float, ...]
    accumulation: tuple[float, ...] = ()
    hull: tuple[BoundaryArc, ...] = ()

    @classmethod
    def of(cls, angles: Sequence[float], accumulation: Sequence[float] = (),
           hull: Sequence[BoundaryArc] = ()) -> "PointSupport":
        return cls(tuple(float(a) for a in angles),
                   tuple(float(a) for a in accumulation), tuple(hull))

    def _known(self) -> tuple[float, ...]:
        return self.angles + self.accumulation

    def is_empty(self) -> bool:
        return not self.angles and not self.accumulation and not self.hull

    def angular_distance_to_arc(self, arc: BoundaryArc) -> tuple[float, float]:
        if self.is_empty():
            return (math.inf, math.inf)
        hi = min((arc.angular_distance_to_angle(a) for a in self._known()),
                 default=math.inf)
        lo = hi
        for h in self.hull:
            lo = min(lo, arc.angular_distance_to_arc(h))
        return (lo, hi)

    def chord_distance_to_point(self, p: complex, tol: float = 1e-12) -> tuple[float, float]:
        if self.is_empty():
            return (math.inf, math.inf)
        hi = min((abs(p - cmath.exp(1j * a)) for a in self._known()), default=math.inf)
        lo = hi
        for h in self.hull:
            lo = min(lo, h.chord_distance_to_point(p))
        return (lo, hi)

    def cover_arcs(self, scale: float) -> list[BoundaryArc]:
        half = min(math.pi, max(scale, 1e-15))
        arcs = [BoundaryArc(a, half) for a in self._known()]
        arcs.extend(BoundaryArc(h.center_angle, min(math.pi, h.half_width + half))
                    for h in self.hull)
        return arcs


@dataclass(frozen=True)
class ArcSupport(BoundarySupport):
    """Finite union of closed arcs (positive measure unless degenerate)."""

    arcs: tuple[BoundaryArc, ...]

    def is_empty(self) -> bool:
        return not self.arcs

    def covers_circle(self) -> bool:
        return sum(a.length for a in self.arcs) >= TWO_PI

    def described_length(self) -> float:
        return sum(a.length for a in self.arcs)

    def angular_distance_to_arc(self, arc: BoundaryArc) -> tuple[float, float]:
        if not self.arcs:
            return (math.inf, math.inf)
        d = min(arc.angular_distance_to_arc(a) for a in self.arcs)
        return (d, d)

    def chord_distance_to_point(self, p: complex, tol: float = 1e-12) -> tuple[float, float]:
        if not self.arcs:
            return (math.inf, math.inf)
        d = min(a.chord_distance_to_point(p) for a in self.arcs)
        return (d, d)

    def cover_arcs(self, scale: float) -> list[BoundaryArc]:
        return list(self.arcs)


@dataclass(frozen=True)
class SawtoothRegion:
    """Region 1 - |z| >= 2 dist(z/|z|, support), chord distance in the plane."""

    support: BoundarySupport

    def contains(self, z: complex) -> bool:
        z = complex(z)
        az = abs(z)
        if az == 0.0:
            raise DomainError("sawtooth membership is undefined at z = 0")
        if az >= 1.0:
            raise DomainError("sawtooth membership requires |z| < 1")
        depth = 1.0 - az
        proj = z / az
        lo, hi = self.support.chord_distance_to_point(proj, tol=1e-13 * max(depth, 1e-30))
        if depth >= 2.0 * hi:
            return True
        if depth < 2.0 * lo:
            return False
        # unresolved bracket at the oracle's cap: decide by the midpoint
        return depth >= lo + hi


def whitney_arcs(support: BoundarySupport,
                 min_length: float = TWO_PI * 2.0 ** -16) -> Iterator[BoundaryArc]:
    """Dyadic Whitney decomposition of the complement of a closed null set.

    Recursively bisects the circle starting from the four quarter arcs and
    emits a (closed, dyadic) arc as soon as dist(arc, E) >= |arc|; children
    of failing arcs are visited in boundary order, so emission is ordered.
    Every emitted arc I satisfies |I| <= dist(I, E) <= 4 |I| in the angular
    metric: the keep test gives the left inequality, and a failing parent
    (dist < 2|I|) gives dist(I, E) < 3|I|; the top-level quarter arcs
    satisfy the right inequality because no circular distance exceeds pi.

    Arcs shorter than ``min_length`` that still fail are abandoned, which
    bounds the work near E for infinite families.
    """
    if support.covers_circle():
        raise DomainError("E covers the whole circle; nothing to decompose")
    if support.described_length() > 0.0:
        raise DomainError("E has positive measure under its own description")

    empty = support.is_empty()

    def visit(lo: float, hi: float) -> Iterator[BoundaryArc]:
        arc = BoundaryArc.from_endpoints(lo, hi)
        if empty:
            yield arc
            return
        dist_lo, _ = support.angular_distance_to_arc(arc)
        if dist_lo >= arc.length:
            yield arc
            return
        if 0.5 * arc.length < min_length:
            return
        mid = 0.5 * (lo + hi)
        yield from visit(lo, mid)
        yield from visit(mid, hi)

    for q in range(4):
        yield from visit(q * 0.5 * math.pi, (q + 1) * 0.5 * math.pi)
