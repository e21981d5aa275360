"""Circle-intersection areas behind the sparse front update.

Reference values were frozen from 2e7-sample Monte-Carlo integrations
(seeds noted inline) plus high-precision evaluation of the closed forms;
the fast in-test Monte-Carlo spot checks rerun the same comparison on
fresh configurations with 2e6 samples.

The per-disk share sparse_mu_A is a wedge accounting: the plain protruding
lens plus (theta_f - 2*pi/n) * zeta^2 / 2, where theta_f is the angle the
chord subtends at the front center.  Shares therefore sum to the measurable
union area; an individual share equals a plain region area exactly when n
disks tile the rim (adjacent boundary crossings on the front circle), which
is where the Monte-Carlo comparisons for it live.  Pairwise overlaps are
plain areas everywhere, so those are checked off that manifold too.
"""

import math

import numpy as np
import pytest

from conftest import mc_pair_overlap_area, mc_protrusion_area, tiling_zeta
from sirwave import (
    lens_angle,
    sparse_mu_A,
    sparse_mu_overlap,
    sparse_union_area,
    tiling_count,
)

# Shared configuration: front radius 0.08, disk centers at 0.06, disk
# radius 0.04.
Z, R, P = 0.08, 0.06, 0.04

# Frozen 2e7-sample Monte-Carlo areas (conftest samplers, seeds 101/202/303).
MC_PLAIN = 0.00119923776            # plain protruding lens, seed 101
MC_OVERLAP_N8 = 7.996416e-05        # adjacent-pair overlap at n=8, seed 202
MC_TILE_PLAIN = 0.00057766432       # plain lens at the n=8 tiling radius
MC_TILE_UNION = 0.004617764         # 8-disk union at the tiling radius


def test_lens_angle_and_tiling_count_frozen():
    assert lens_angle(Z, R, P) == pytest.approx(1.0107210205683144, rel=1e-14)
    assert tiling_count(Z, R, P) == pytest.approx(6.216537678860818, rel=1e-14)


def test_lens_angle_requires_intersection():
    with pytest.raises(ValueError, match="circles do not intersect"):
        lens_angle(0.2, 0.05, 0.04)


def test_mu_A_frozen_values():
    assert sparse_mu_A(Z, R, P, 6) == pytest.approx(0.0010817435585398455, rel=1e-12)
    assert sparse_mu_A(Z, R, P, 8) == pytest.approx(0.001919501599497123, rel=1e-12)


def test_mu_A_wedge_identity_against_frozen_mc():
    theta_f = lens_angle(Z, R, P)
    for n in (6, 8):
        expected = MC_PLAIN + (theta_f - 2 * math.pi / n) * Z * Z / 2
        assert sparse_mu_A(Z, R, P, n) == pytest.approx(expected, abs=2e-6)


def test_mu_A_degenerate_regions():
    # Disk fully inside the front: nothing protrudes.
    assert sparse_mu_A(0.12, R, P, 6) == 0.0
    # Front circle clear of the disk: the whole disk is protrusion.
    assert sparse_mu_A(0.01, R, P, 6) == pytest.approx(math.pi * P * P, rel=1e-14)
    # Tiny front engulfed by the disk: the n shares sum to the full annulus.
    total = 4 * sparse_mu_A(0.01, 0.005, P, 4)
    assert total == pytest.approx(math.pi * (P * P - 0.01 * 0.01), rel=1e-12)
    # Wedge debit can exhaust the lens: share clamps at zero.
    assert sparse_mu_A(Z, R, P, 2) == 0.0


def test_mu_A_rejects_fractional_disk_count():
    with pytest.raises(ValueError, match="need n >= 1 disks"):
        sparse_mu_A(Z, R, P, 0.5)


def test_overlap_frozen_values():
    assert sparse_mu_overlap(Z, R, P, 6) == 0.0
    got = sparse_mu_overlap(Z, R, P, 8)
    assert got == pytest.approx(8.03173872391625e-05, rel=1e-12)
    assert got == pytest.approx(MC_OVERLAP_N8, abs=2e-6)


def test_overlap_rejects_single_disk():
    with pytest.raises(ValueError, match="need n >= 2 disks"):
        sparse_mu_overlap(Z, R, P, 1.5)


def test_tiling_radius_degeneracy_frozen():
    zt = tiling_zeta(R, P, 8)
    assert zt == pytest.approx(0.08818627872683454, rel=1e-14)
    assert lens_angle(zt, R, P) == pytest.approx(2 * math.pi / 8, abs=1e-14)
    # Adjacent disks only touch here, so the overlap is zero up to the
    # round-off of the tangency itself.
    assert sparse_mu_overlap(zt, R, P, 8) == pytest.approx(0.0, abs=1e-15)
    mu_a = sparse_mu_A(zt, R, P, 8)
    assert mu_a == pytest.approx(0.000577475215588263, rel=1e-12)
    assert mu_a == pytest.approx(MC_TILE_PLAIN, abs=2e-6)
    union = sparse_union_area(zt, R, P, 8)
    assert union == pytest.approx(8 * mu_a, rel=1e-14)
    assert union == pytest.approx(0.004619801724706102, rel=1e-12)
    assert union == pytest.approx(MC_TILE_UNION, abs=1e-5)


def test_tiling_degeneracy_across_counts():
    for n in range(5, 11):
        zt = tiling_zeta(R, P, n)
        assert lens_angle(zt, R, P) == pytest.approx(2 * math.pi / n, abs=1e-12)
        assert sparse_mu_overlap(zt, R, P, n) == pytest.approx(0.0, abs=1e-15)
        assert sparse_union_area(zt, R, P, n) == pytest.approx(
            n * sparse_mu_A(zt, R, P, n), rel=1e-12
        )


def test_union_frozen_value_and_properties():
    r_com = math.sqrt((0.08 ** 2 + 0.04 ** 2) / 2)
    assert sparse_union_area(Z, r_com, P, 8) == pytest.approx(
        0.017049573053868686, rel=1e-12
    )
    # Fully swallowed disks contribute nothing regardless of count.
    assert sparse_union_area(0.12, R, P, 50) == 0.0
    # Never negative, whatever the crowding.
    for n in (2, 3, 7, 20, 200):
        assert sparse_union_area(Z, R, P, n) >= 0.0


def test_mu_A_fresh_monte_carlo_on_tiling_radius():
    r, p, n = 0.05, 0.03, 6
    zt = tiling_zeta(r, p, n)
    rng = np.random.default_rng(501)
    mc = mc_protrusion_area(zt, r, p, 2_000_000, rng)
    assert sparse_mu_A(zt, r, p, n) == pytest.approx(mc, abs=1e-5)


def test_overlap_fresh_monte_carlo_off_manifold():
    r, p = 0.05, 0.03
    zeta = 0.056
    n = math.ceil(tiling_count(zeta, r, p) * 1.3)
    rng = np.random.default_rng(502)
    mc = mc_pair_overlap_area(zeta, r, p, n, 2_000_000, rng)
    formula = sparse_mu_overlap(zeta, r, p, n)
    assert formula > 0
    assert formula == pytest.approx(mc, abs=1e-5)
