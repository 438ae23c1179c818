import random

import pytest

from crystile.rational import Q
from crystile.linalg import identity_mat, mat_mul
from crystile.isometry import (
    Frame,
    Isometry,
    hexagonal_frame,
    rational_givens,
    standard_frame,
)
from crystile.polytope import ConvexPolytope
from crystile.tiling import periodic_tiling


@pytest.fixture(scope="session")
def frame2():
    return standard_frame(2)


@pytest.fixture(scope="session")
def frame3():
    return standard_frame(3)


@pytest.fixture(scope="session")
def hexframe():
    return hexagonal_frame()


@pytest.fixture(scope="session")
def square_tiling(frame2):
    sq = ConvexPolytope(frame2, [(0, 0), (1, 0), (0, 1), (1, 1)])
    return periodic_tiling(frame2, [sq])


@pytest.fixture(scope="session")
def rhomb_tiling(frame2):
    rh = ConvexPolytope(frame2, [(0, 0), (1, 0), (2, 1), (1, 1)])
    return periodic_tiling(frame2, [rh])


@pytest.fixture(scope="session")
def half_scale_tiling(frame2):
    h = Q(1, 2)
    tiles = [
        ConvexPolytope(frame2, [(a, b), (a + h, b), (a, b + h), (a + h, b + h)])
        for a in (0, h)
        for b in (0, h)
    ]
    return periodic_tiling(frame2, tiles)


def random_rational_orthogonal(rng: random.Random, n: int):
    """Exact rational orthogonal matrix (standard frame) from Givens factors."""
    m = identity_mat(n)
    for _ in range(rng.randint(1, 3)):
        if n == 2:
            i, j = 0, 1
        else:
            i, j = rng.sample(range(n), 2)
        t = Q(rng.randint(-12, 12), rng.randint(1, 12))
        m = mat_mul(m, rational_givens(n, i, j, t))
    if rng.random() < 0.5:
        refl = [[Q(1) if a == b else Q(0) for b in range(n)] for a in range(n)]
        refl[0][0] = Q(-1)
        m = mat_mul(m, tuple(tuple(r) for r in refl))
    return m


def random_rational_isometry(rng: random.Random, frame: Frame, span: int = 6) -> Isometry:
    lin = random_rational_orthogonal(rng, frame.dim)
    trans = tuple(
        Q(rng.randint(-span, span), rng.randint(1, span)) for _ in range(frame.dim)
    )
    return Isometry(frame, lin, trans)


def random_rational_point(rng: random.Random, n: int, span: int = 6):
    return tuple(Q(rng.randint(-span, span), rng.randint(1, span)) for _ in range(n))
