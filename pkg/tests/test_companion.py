import math
import cmath

import pytest

from onecomp import families
from onecomp.classify import ONE_COMPONENT
from onecomp.companion import (build_gamma, choose_radii, construct_companion,
                               place_zeros)
from onecomp.errors import HypothesisViolated
from onecomp.geometry import TWO_PI, PointSupport, pseudo_distance, whitney_arcs
from onecomp.inner import InnerFunction, SingularInner
from onecomp.measures import CdfMeasure


def circle_gamma():
    """Degenerate decomposition for an empty singular set: one closed chain."""
    const = InnerFunction()
    arcs = list(whitney_arcs(PointSupport.of([])))
    chain = choose_radii(const, arcs)
    return chain, build_gamma(chain)


class TestChooseRadii:
    def test_constant_function_uses_smallest_grid_radius(self):
        chain, _ = circle_gamma()
        assert chain.radii == [0.5, 0.5, 0.5, 0.5]

    def test_epsilon_schedule_defaults_to_arc_length(self):
        chain, _ = circle_gamma()
        assert chain.epsilons == [0.5] * 4

    def test_atom_radii_shrink_toward_singularity(self):
        theta = families.single_atom()
        support = theta.singular_set()
        arcs = list(whitney_arcs(support, min_length=TWO_PI * 2.0 ** -8))
        chain = choose_radii(theta, arcs)
        # arcs closer to the atom need radii closer to the boundary
        by_dist = sorted(zip(arcs, chain.radii),
                         key=lambda ar: abs(ar[0].center_angle - math.pi))
        far_radius = by_dist[0][1]
        near_radius = by_dist[-1][1]
        assert near_radius > far_radius
        # a-posteriori depth bound: 1 - r_n stays within a constant of
        # d(I_n, sing) * eps_n (the Poisson kernel away from the atom is
        # bounded by 2(1-r)/chord^2, so depth ~ eps * d^2 <= eps * d * pi)
        for arc, r, eps in zip(arcs, chain.radii, chain.epsilons):
            d = support.angular_distance_to_arc(arc)[0]
            assert 1.0 - r <= 4.0 * d * eps

    def test_finite_blaschke_radii_above_zeros(self):
        theta = families.finite_blaschke([0.5, -0.3j])
        arcs = list(whitney_arcs(PointSupport.of([]),))
        chain = choose_radii(theta, arcs)
        assert min(chain.radii) > 0.5


class TestGamma:
    def test_empty_singular_set_gives_closed_circle(self):
        _, gamma = circle_gamma()
        assert len(gamma.components) == 1
        assert gamma.components[0].closed
        assert gamma.components[0].covered_angle() == pytest.approx(TWO_PI)

    def test_single_point_singular_set_single_open_chain(self):
        theta = families.single_atom()
        arcs = list(whitney_arcs(theta.singular_set(),
                                 min_length=TWO_PI * 2.0 ** -9))
        gamma = build_gamma(choose_radii(theta, arcs))
        assert len(gamma.components) == 1
        assert not gamma.components[0].closed

    def test_two_point_singular_set_two_chains(self):
        theta = families.two_atoms()
        arcs = list(whitney_arcs(theta.singular_set(),
                                 min_length=TWO_PI * 2.0 ** -9))
        gamma = build_gamma(choose_radii(theta, arcs))
        assert len(gamma.components) == 2

    def test_polyline_csv(self):
        _, gamma = circle_gamma()
        text = gamma.to_polyline_csv()
        assert text.startswith("component,re,im\n")


class TestPlaceZeros:
    def test_circle_equal_spacing(self):
        _, gamma = circle_gamma()
        placement = place_zeros(gamma, step=0.1, horizon=500)
        # solve rho(0.5 e^{i phi}, 0.5) = 1/10 for the angular gap
        # rho = 2 r sin(phi/2) / |1 - r^2 e^{i phi}|
        r = 0.5
        lo, hi = 0.0, 1.0
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            rho = pseudo_distance(r * cmath.exp(1j * mid), r)
            if rho < 0.1:
                lo = mid
            else:
                hi = mid
        gap = 0.5 * (lo + hi)
        expected = int(TWO_PI / gap)
        assert abs(len(placement.zeros) - expected) <= 1
        assert max(abs(x - 0.1) for x in placement.consecutive_rhos) < 1e-6

    def test_consecutive_steps_within_tolerance(self):
        theta = families.single_atom()
        arcs = list(whitney_arcs(theta.singular_set(),
                                 min_length=TWO_PI * 2.0 ** -10))
        gamma = build_gamma(choose_radii(theta, arcs))
        placement = place_zeros(gamma, horizon=250)
        assert len(placement.zeros) == 250
        assert max(abs(x - 0.1) for x in placement.consecutive_rhos) < 1e-6

    def test_chain_neighbor_structure(self):
        theta = families.single_atom()
        arcs = list(whitney_arcs(theta.singular_set(),
                                 min_length=TWO_PI * 2.0 ** -10))
        gamma = build_gamma(choose_radii(theta, arcs))
        placement = place_zeros(gamma, horizon=120)
        zs = placement.zeros
        # no pair of materialized zeros comes closer than one step
        worst = min(pseudo_distance(zs[i], zs[j])
                    for i in range(len(zs)) for j in range(i + 1, len(zs)))
        assert worst >= 0.1 - 1e-6
        # interior zeros have exactly two neighbors at the step distance
        for i in range(1, len(zs) - 1):
            near = sorted(pseudo_distance(zs[i], zs[j])
                          for j in range(len(zs)) if j != i)[:2]
            assert all(abs(d - 0.1) < 1e-6 for d in near)


class TestConstructCompanion:
    def test_atom_end_to_end_small(self):
        result = construct_companion(families.single_atom(), horizon=400,
                                     depth=10)
        assert result.max_step_error < 1e-6
        assert result.separation_delta >= 0.05
        assert math.isfinite(result.box_constant) and result.box_constant > 0
        assert result.report_b.verdict == ONE_COMPONENT
        assert result.report_btheta.verdict == ONE_COMPONENT
        assert result.spot_check.passed
        assert result.verified

    def test_radial_zeros_theta(self):
        # sing Theta = {1}: zeros of Theta on the positive real axis stay
        # below the curve; the cutoff is matched to the generator's depth cap
        theta = families.radial_geometric()
        result = construct_companion(theta, horizon=300, depth=9,
                                     cutoff=TWO_PI * 2.0 ** -9)
        assert result.report_btheta.verdict == ONE_COMPONENT
        chain = result.chain
        for w in theta.blaschke.zeros.zeros:
            ang = cmath.phase(w) % TWO_PI
            for arc, r in zip(chain.arcs, chain.radii):
                if arc.contains_angle(ang):
                    assert abs(w) < r
                    break

    def test_positive_measure_description_rejected(self):
        fat = InnerFunction(singular=SingularInner(
            CdfMeasure([(0.0, 0.0), (1.0, 1.0), (TWO_PI, 1.0)])))
        with pytest.raises(HypothesisViolated):
            construct_companion(fat, horizon=50, depth=6)

    def test_tail_estimate_finite(self):
        result = construct_companion(families.single_atom(), horizon=200,
                                     depth=8)
        assert 0.0 <= result.tail_blaschke_estimate < 8.0 * TWO_PI

    def test_pinned_regression_constants(self):
        # deterministic construction: separation and box constants of the
        # produced chain are pinned from the first build
        result = construct_companion(families.single_atom(), horizon=400,
                                     depth=10)
        assert result.separation_delta == pytest.approx(0.1, abs=1e-6)
        assert result.box_constant == pytest.approx(6.4808, abs=0.05)

    def test_below_curve_smallness(self):
        # sampled points strictly below the marched part of the curve keep
        # |B| under a recorded constant well inside (0, 1); arcs beyond the
        # truncation frontier carry no zeros yet and are excluded
        result = construct_companion(families.single_atom(), horizon=400,
                                     depth=10)
        from onecomp.inner import InnerFunction, BlaschkeProduct
        b = InnerFunction(blaschke=BlaschkeProduct(result.zeros))
        zs = result.zeros.zeros
        worst = 0.0
        for arc, r in zip(result.chain.arcs, result.chain.radii):
            on_arc = [z for z in zs
                      if abs(abs(z) - r) < 1e-9 and arc.contains_angle(cmath.phase(z))]
            if len(on_arc) < 2:
                continue
            for frac in (0.25, 0.5, 0.75):
                ang = arc.lo + arc.length * frac
                for depth_factor in (1.5, 3.0):
                    radius = 1.0 - depth_factor * (1.0 - r)
                    if radius <= 0.05:
                        continue
                    worst = max(worst, b.modulus_bounds(
                        radius * cmath.exp(1j * ang), 1e-6).hi)
        assert 0.0 < worst < 0.75
