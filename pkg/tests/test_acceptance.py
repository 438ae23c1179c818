"""Acceptance suite: one test per criterion, one pass/fail line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the criterion lines.
All tolerances are pinned here: exact rational equality wherever the
operations are exact, 1e-9 for floating metric quantities.
"""

import functools
import math
import random

import numpy as np
import pytest

from crystile.rational import Q, sqrt_float
from crystile.linalg import (
    gram_norm2,
    identity_mat,
    mat_mul,
    mat_sub,
    vsub,
)
from crystile.isometry import (
    compose,
    identity_iso,
    inverse,
    iso_distance,
    linear_about,
    operator_norm,
    ortho_sqrt,
    standard_frame,
    translation_iso,
)
from crystile.groups import (
    WALLPAPER_NAMES,
    generic_point,
    lattice_points_in_ball,
    preset,
)
from crystile.polytope import volume
from crystile.voronoi import cell_with_certificate, voronoi_cell, voronoi_tiling
from crystile.tiling import (
    automorphism_group,
    combine_witnesses,
    distance_upper_bound,
    ld_check,
    mld_check,
    transform_tiling,
    translation_mld_check,
    validate_tiling,
    verify_witness,
)
from crystile.construction import construct_tiling
from crystile.groups import subgroup_index

from conftest import (
    random_rational_isometry,
    random_rational_orthogonal,
    random_rational_point,
)

TOL = 1e-9

D4_SIGNED_PERMS = {
    ((1, 0), (0, 1)), ((1, 0), (0, -1)), ((-1, 0), (0, 1)), ((-1, 0), (0, -1)),
    ((0, 1), (1, 0)), ((0, -1), (1, 0)), ((0, 1), (-1, 0)), ((0, -1), (-1, 0)),
}


def criterion(num, desc):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"\ncriterion {num}: FAIL - {desc}")
                raise
            print(f"\ncriterion {num}: PASS - {desc}")
        return wrapper
    return deco


def as_int_mats(mats):
    return {tuple(tuple(int(x) for x in row) for row in m) for m in mats}


@criterion(1, "square-tiling automorphism group is exactly Z^2 x| D4")
def test_criterion_1_square_automorphisms(square_tiling):
    aut = automorphism_group(square_tiling)
    assert as_int_mats(aut.point_parts()) == D4_SIGNED_PERMS
    assert all(all(x == 0 for x in v) for _, v in aut.reps)
    assert aut.frame == square_tiling.frame


@criterion(2, "rhomb tiling: point parts {1, -1}; index 4 in the square group")
def test_criterion_2_rhomb(square_tiling, rhomb_tiling):
    aut_sq = automorphism_group(square_tiling)
    aut_rh = automorphism_group(rhomb_tiling)
    assert as_int_mats(aut_rh.point_parts()) == {
        ((1, 0), (0, 1)),
        ((-1, 0), (0, -1)),
    }
    assert subgroup_index(aut_rh, aut_sq) == 4


@criterion(3, "MLD trichotomy: square/rhomb, square/half-scale, square/shifted")
def test_criterion_3_mld_trichotomy(square_tiling, rhomb_tiling, half_scale_tiling, frame2):
    assert mld_check(square_tiling, rhomb_tiling) is None
    assert translation_mld_check(square_tiling, rhomb_tiling) is True

    assert mld_check(square_tiling, half_scale_tiling) is None
    assert translation_mld_check(square_tiling, half_scale_tiling) is False

    v = (Q(1, 10), 0)
    shifted = transform_tiling(square_tiling, translation_iso(frame2, v))
    gamma = mld_check(square_tiling, shifted)
    assert gamma is not None
    assert gamma.is_translation()


@criterion(4, "prescribed-group construction: all 17 wallpaper groups x 3 seeds, Aut == Gamma")
def test_criterion_4_construction_all_groups():
    for name in WALLPAPER_NAMES:
        group = preset(name)
        for seed in range(3):
            tiling = construct_tiling(group, seed)
            aut = automorphism_group(tiling)
            assert aut.frame == group.frame, (name, seed)
            assert aut.reps == group.reps, (name, seed)
    # the featured case: p1 yields Aut == Z^2 only, not the D4 of the plain grid
    aut_p1 = automorphism_group(construct_tiling(preset("p1"), 0))
    assert aut_p1.order() == 1


def _identity_suite_sample(rng, frame, origin):
    n = frame.dim
    one = identity_iso(frame)
    ident = identity_mat(n)
    alpha_m = random_rational_orthogonal(rng, n)
    beta_m = random_rational_orthogonal(rng, n)
    endo = tuple(
        tuple(Q(rng.randint(-4, 4), rng.randint(1, 4)) for _ in range(n))
        for _ in range(n)
    )
    alpha = linear_about(frame, alpha_m, center=origin)
    sigma_v = random_rational_point(rng, n)
    tau_v = random_rational_point(rng, n)
    sigma = translation_iso(frame, sigma_v)
    tau = translation_iso(frame, tau_v)
    chi = random_rational_isometry(rng, frame)
    phi = random_rational_isometry(rng, frame)
    psi = random_rational_isometry(rng, frame)
    d = lambda a, b: iso_distance(origin, a, b)
    size = lambda a: iso_distance(origin, a, one)
    opn = lambda m: operator_norm(frame, m)

    # (1) orthogonal maps have operator norm 1
    assert abs(opn(alpha_m) - 1.0) <= TOL
    # (2) submultiplicative; equality under an orthogonal left factor
    assert opn(mat_mul(alpha_m, endo)) <= opn(alpha_m) * opn(endo) + TOL
    assert abs(opn(mat_mul(alpha_m, endo)) - opn(endo)) <= TOL
    # (3) conjugation by an orthogonal map preserves distance to 1
    conj = mat_mul(alpha_m, mat_mul(beta_m, mat_inv_cached(alpha_m)))
    assert abs(opn(mat_sub(conj, ident)) - opn(mat_sub(beta_m, ident))) <= TOL
    # (4) product deviation bound
    assert opn(mat_sub(mat_mul(alpha_m, beta_m), ident)) <= (
        opn(mat_sub(alpha_m, ident)) + opn(mat_sub(beta_m, ident)) + TOL
    )
    # (5) both product orders of a translation and an orthogonal map
    assert abs(size(compose(alpha, sigma)) - size(compose(sigma, alpha))) <= TOL
    # (6) inverse invariance
    assert abs(size(inverse(chi)) - size(chi)) <= TOL
    # (7) subadditivity of the size
    assert size(compose(chi, phi)) <= size(chi) + size(phi) + TOL
    # (8) translations: the metric is the Euclidean distance
    assert abs(d(sigma, tau) - frame.norm(vsub(sigma_v, tau_v))) <= TOL
    # (9) conjugation moves the origin along
    lhs = iso_distance(
        chi(origin),
        compose(chi, compose(phi, inverse(chi))),
        compose(chi, compose(psi, inverse(chi))),
    )
    assert abs(lhs - d(phi, psi)) <= TOL
    # (10) origin shift comparison
    moved = iso_distance(sigma(origin), phi, psi)
    assert moved <= (1 + frame.norm(sigma_v)) * d(phi, psi) + TOL
    # (11) conjugation size bound
    assert size(compose(chi, compose(phi, inverse(chi)))) <= size(phi) * (1 + size(chi)) + TOL
    # (12) right multiplication: exact identity
    assert abs(d(compose(phi, chi), phi) - size(chi)) <= TOL
    # (13) left multiplication bound
    assert d(compose(chi, phi), phi) <= size(chi) * (1 + size(phi)) + TOL
    # (14) reverse bound
    assert size(chi) <= d(compose(chi, phi), phi) * (1 + size(phi)) + TOL


_INV_CACHE = {}


def mat_inv_cached(m):
    if m not in _INV_CACHE:
        from crystile.linalg import mat_inv

        _INV_CACHE[m] = mat_inv(m)
    return _INV_CACHE[m]


@criterion(5, "all 14 metric identities and the d_O axioms on >= 1000 samples (n=2,3)")
def test_criterion_5_metric_identities():
    rng = random.Random(2024)
    frames = {2: standard_frame(2), 3: standard_frame(3)}
    for i in range(1000):
        n = 2 if i % 2 == 0 else 3
        frame = frames[n]
        origin = (0,) * n if i % 4 < 2 else random_rational_point(rng, n, span=3)
        _identity_suite_sample(rng, frame, origin)
    # metric axioms on 1000 fresh triples
    for i in range(1000):
        n = 2 if i % 2 == 0 else 3
        frame = frames[n]
        o = (0,) * n
        a = random_rational_isometry(rng, frame)
        b = random_rational_isometry(rng, frame)
        c = random_rational_isometry(rng, frame)
        dab = iso_distance(o, a, b)
        assert dab >= 0
        assert abs(dab - iso_distance(o, b, a)) <= TOL
        assert iso_distance(o, a, c) <= dab + iso_distance(o, b, c) + TOL
        assert iso_distance(o, a, a) == 0.0
        if a != b:
            assert dab > 0


@criterion(6, "orthogonal square roots: 100 random rotations, 2D norm formula")
def test_criterion_6_square_roots():
    rng = np.random.default_rng(7)
    for i in range(100):
        if i % 2 == 0:
            theta = float(rng.uniform(-math.pi / 3, math.pi / 3))
            alpha = np.array(
                [[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]]
            )
        else:
            theta = float(rng.uniform(-math.pi / 3, math.pi / 3))
            basis, _ = np.linalg.qr(rng.normal(size=(3, 3)))
            block = np.eye(3)
            block[:2, :2] = [
                [math.cos(theta), -math.sin(theta)],
                [math.sin(theta), math.cos(theta)],
            ]
            alpha = basis @ block @ basis.T
        n = alpha.shape[0]
        dev = np.linalg.svd(alpha - np.eye(n), compute_uv=False)[0]
        assert dev <= 1.0 + TOL
        beta = ortho_sqrt(alpha)
        assert np.max(np.abs(beta @ beta - alpha)) <= TOL
        dev_b = np.linalg.svd(beta - np.eye(n), compute_uv=False)[0]
        assert dev_b <= dev + TOL
    frame2 = standard_frame(2)
    for _ in range(100):
        theta = float(rng.uniform(-math.pi, math.pi))
        m = np.array(
            [[math.cos(theta) - 1, -math.sin(theta)], [math.sin(theta), math.cos(theta) - 1]]
        )
        got = operator_norm(frame2, m)
        assert abs(got - math.sqrt(2 - 2 * math.cos(theta))) <= TOL


@criterion(7, "Voronoi validity for every wallpaper preset at a generic point")
def test_criterion_7_voronoi_validity():
    for name in WALLPAPER_NAMES:
        group = preset(name)
        x = generic_point(group, 0)
        tiling = voronoi_tiling(group, x)
        assert sum(volume(t) for t in tiling.cell_tiles) == 1, name
        assert validate_tiling(tiling) == [], name
        cell, used = cell_with_certificate(group, x)
        doubled = voronoi_cell(group, x, sq_radius=4 * used)
        assert doubled == cell, name


@criterion(8, "distance witnesses for shifts 1/10, 1/100, 1/1000; r0 composition")
def test_criterion_8_metric_witnesses(square_tiling, frame2):
    origin = (0, 0)
    for denom in (10, 100, 1000):
        tau = (Q(1, denom), 0)
        norm_tau = sqrt_float(gram_norm2(frame2.gram, tau))
        shifted = transform_tiling(square_tiling, translation_iso(frame2, tau))
        bound = distance_upper_bound(origin, square_tiling, shifted)
        assert bound.upper <= math.log1p(norm_tau) + TOL, denom
        assert verify_witness(bound)
        phi, psi, radius, _ = bound.witness
        assert iso_distance(origin, phi, identity_iso(frame2)) < 1 / (2 * float(radius)) + TOL
    u, v = (Q(1, 10), 0), (0, Q(1, 100))
    tu = transform_tiling(square_tiling, translation_iso(frame2, u))
    tuv = transform_tiling(tu, translation_iso(frame2, v))
    w1 = distance_upper_bound(origin, square_tiling, tu)
    w2 = distance_upper_bound(origin, tu, tuv)
    combined = combine_witnesses(w1, w2)
    r1, r2 = w1.witness[2], w2.witness[2]
    assert combined.witness[2] == r1 * r2 / (r1 + r2)
    assert verify_witness(combined)
    assert combined.upper <= w1.upper + w2.upper + TOL


@criterion(9, "LD radius: lattice translates of B_R(0) cover a fundamental-domain grid")
def test_criterion_9_ld_radius_covering(square_tiling, rhomb_tiling, half_scale_tiling, frame2):
    ident = identity_iso(frame2)
    cases = [
        (rhomb_tiling, square_tiling),
        (square_tiling, half_scale_tiling),
        (square_tiling, square_tiling),
    ]
    for t1, t2 in cases:
        res = ld_check(t1, t2, ident)
        assert res.holds
        cover_sq = res.covering_sq
        m = 6
        from crystile.tiling import automorphism_group_with_embedding

        lattice_frame = automorphism_group_with_embedding(t1)[0].frame
        for i in range(m):
            for j in range(m):
                g = (Q(i, m), Q(j, m))
                near = lattice_points_in_ball(lattice_frame, g, cover_sq)
                assert near, (g, cover_sq)
