"""Isometries of Euclidean n-space relative to a rational Gram frame.

A Frame fixes a basis of the translation space through its Gram matrix G
(rational, symmetric, positive definite).  Points and translation vectors
are tuples of rationals in that basis; an isometry acts as x |-> L x + t
with L rational and Gram-orthogonal (L^T G L = G), which is exactly the
condition that the Cartesian image of L is orthogonal.  This keeps every
piece of group arithmetic exact: hexagonal point groups have irrational
Cartesian matrices but integer matrices in a lattice-adapted basis.

Only the metric values themselves (Euclidean norms, operator norms, and
orthogonal square roots) live in floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .rational import Q, ZERO, ONE, rat, sqrt_float
from .linalg import (
    Mat,
    Vec,
    gram_norm2,
    identity_mat,
    mat,
    mat_det,
    mat_inv,
    mat_mul,
    mat_sub,
    mat_vec,
    transpose,
    vadd,
    vec,
    vsub,
    zero_vec,
)

OP_NORM_TOL = 1e-9


class FrameError(ValueError):
    pass


class IsometryError(ValueError):
    pass


@dataclass(frozen=True)
class Frame:
    """Rational Gram matrix defining the inner product; basis spans the lattice."""

    dim: int
    gram: Mat

    def __post_init__(self):
        if self.dim < 1:
            raise FrameError("dimension must be >= 1")
        g = mat(self.gram)
        object.__setattr__(self, "gram", g)
        if len(g) != self.dim or any(len(row) != self.dim for row in g):
            raise FrameError("Gram matrix shape mismatch")
        if g != transpose(g):
            raise FrameError("Gram matrix not symmetric")
        # positive definiteness via leading principal minors, exactly
        for k in range(1, self.dim + 1):
            minor = mat_det(tuple(row[:k] for row in g[:k]))
            if minor <= 0:
                raise FrameError(f"leading principal minor {k} is not positive")

    def inner(self, u: Vec, v: Vec):
        return sum((a * b for a, b in zip(mat_vec(self.gram, v), u)), ZERO)

    def norm2(self, v: Vec):
        return gram_norm2(self.gram, v)

    def norm(self, v: Vec) -> float:
        return sqrt_float(self.norm2(v))


def standard_frame(dim: int) -> Frame:
    return Frame(dim, identity_mat(dim))


def hexagonal_frame() -> Frame:
    return Frame(2, mat([[1, Q(-1, 2)], [Q(-1, 2), 1]]))


@lru_cache(maxsize=None)
def embedding(frame: Frame) -> np.ndarray:
    """Floating Cartesian factor C with C^T C ~= G (upper Cholesky)."""
    g = np.array([[float(x) for x in row] for row in frame.gram], dtype=float)
    lower = np.linalg.cholesky(g)
    return lower.T


@lru_cache(maxsize=None)
def embedding_inv(frame: Frame) -> np.ndarray:
    return np.linalg.inv(embedding(frame))


def to_cartesian(frame: Frame, v: Vec) -> np.ndarray:
    return embedding(frame) @ np.array([float(x) for x in v])


@dataclass(frozen=True)
class Isometry:
    """x |-> linear x + translation, mapping `frame` coordinates to `target`.

    Most isometries are endomorphisms of one frame (target == frame); maps
    with distinct frames arise from conjugacy searches between groups whose
    lattices carry different Gram matrices.  The Gram-orthogonality
    invariant is linear^T G_target linear == G_source, checked exactly.
    """

    frame: Frame
    linear: Mat
    translation: Vec
    target: Frame = None

    def __post_init__(self):
        object.__setattr__(self, "linear", mat(self.linear))
        object.__setattr__(self, "translation", vec(self.translation))
        if self.target is None:
            object.__setattr__(self, "target", self.frame)
        n = self.frame.dim
        if self.target.dim != n:
            raise IsometryError("frame dimension mismatch")
        if len(self.linear) != n or len(self.translation) != n:
            raise IsometryError("shape mismatch")
        pulled = mat_mul(transpose(self.linear), mat_mul(self.target.gram, self.linear))
        if pulled != self.frame.gram:
            raise IsometryError("linear part is not Gram-orthogonal")
        if self.frame == self.target:
            d = mat_det(self.linear)
            if d != 1 and d != -1:
                raise IsometryError("determinant must be +-1")

    def __call__(self, x: Vec) -> Vec:
        return vadd(mat_vec(self.linear, vec(x)), self.translation)

    def is_identity(self) -> bool:
        return (
            self.frame == self.target
            and self.linear == identity_mat(self.frame.dim)
            and all(t == 0 for t in self.translation)
        )

    def is_translation(self) -> bool:
        return self.frame == self.target and self.linear == identity_mat(self.frame.dim)


def identity_iso(frame: Frame) -> Isometry:
    return Isometry(frame, identity_mat(frame.dim), zero_vec(frame.dim))


def translation_iso(frame: Frame, v) -> Isometry:
    return Isometry(frame, identity_mat(frame.dim), vec(v))


def linear_about(frame: Frame, m: Mat, center=None) -> Isometry:
    """The isometry with linear part m fixing `center` (default: the origin)."""
    m = mat(m)
    if center is None:
        return Isometry(frame, m, zero_vec(frame.dim))
    c = vec(center)
    return Isometry(frame, m, vsub(c, mat_vec(m, c)))


def compose(a: Isometry, b: Isometry) -> Isometry:
    """a after b.  Frames must chain: b maps into a's source frame."""
    if b.target != a.frame:
        raise IsometryError("frame mismatch in composition")
    return Isometry(
        b.frame,
        mat_mul(a.linear, b.linear),
        vadd(mat_vec(a.linear, b.translation), a.translation),
        target=a.target,
    )


def inverse(a: Isometry) -> Isometry:
    linv = mat_inv(a.linear)
    return Isometry(a.target, linv, vneg_vec(mat_vec(linv, a.translation)), target=a.frame)


def vneg_vec(v: Vec) -> Vec:
    return tuple(-x for x in v)


@dataclass(frozen=True)
class IsoDecomposition:
    """Unique product decomposition about an origin O: a = trans . ortho."""

    origin: Vec
    trans_part: Vec
    ortho_part: Mat

    def recompose(self, frame: Frame) -> Isometry:
        about = linear_about(frame, self.ortho_part, self.origin)
        return compose(translation_iso(frame, self.trans_part), about)


def decompose(a: Isometry, origin) -> IsoDecomposition:
    """Split a into (translation by a(O) - O) . (orthogonal map fixing O)."""
    if a.frame != a.target:
        raise IsometryError("decomposition requires an endomorphism of one frame")
    o = vec(origin)
    if len(o) != a.frame.dim:
        raise IsometryError("origin dimension mismatch")
    return IsoDecomposition(origin=o, trans_part=vsub(a(o), o), ortho_part=a.linear)


# --- floating-point norms --------------------------------------------------

def _sym_eigen_max(b: np.ndarray) -> float:
    """Largest eigenvalue of a symmetric PSD matrix.

    n <= 2 uses the cancellation-free characteristic-polynomial root
    ((b11-b22)^2 + 4 b12^2 stays exact where tr^2 - 4 det would cancel);
    larger sizes use the LAPACK symmetric eigensolver, since closed-form
    cubic roots lose half the machine precision on the repeated singular
    values that isometry differences always have.
    """
    n = b.shape[0]
    if n == 1:
        return max(b[0, 0], 0.0)
    if n == 2:
        half_tr = (b[0, 0] + b[1, 1]) / 2.0
        disc = math.hypot((b[0, 0] - b[1, 1]) / 2.0, b[0, 1])
        return max(half_tr + disc, 0.0)
    return max(float(np.linalg.eigvalsh(b)[-1]), 0.0)


def operator_norm(frame: Frame, m) -> float:
    """Operator norm of the linear map m (frame coordinates) on E^n.

    Computed as the largest singular value of the Cartesian conjugate
    C m C^{-1}; accuracy ~1e-12, documented tolerance 1e-9.
    """
    if isinstance(m, np.ndarray):
        a = embedding(frame) @ m @ embedding_inv(frame)
    else:
        mf = np.array([[float(x) for x in row] for row in m], dtype=float)
        a = embedding(frame) @ mf @ embedding_inv(frame)
    return math.sqrt(_sym_eigen_max(a.T @ a))


def iso_distance(origin, a: Isometry, b: Isometry) -> float:
    """The metric d_O: Euclidean distance of translation parts about O plus
    the operator-norm distance of the orthogonal parts."""
    if a.frame != b.frame or a.target != b.target or a.frame != a.target:
        raise IsometryError("metric requires endomorphisms of one frame")
    da = decompose(a, origin)
    db = decompose(b, origin)
    trans = a.frame.norm(vsub(da.trans_part, db.trans_part))
    if da.ortho_part == db.ortho_part:
        return trans
    return trans + operator_norm(a.frame, mat_sub(da.ortho_part, db.ortho_part))


def iso_size(origin, a: Isometry) -> float:
    """d_O(a, identity)."""
    return iso_distance(origin, a, identity_iso(a.frame))


# --- orthogonal square roots ----------------------------------------------

def ortho_sqrt(alpha: np.ndarray, tol: float = OP_NORM_TOL) -> np.ndarray:
    """Square root of a Cartesian orthogonal matrix via halved rotation angles.

    The matrix is block-diagonalized into planar rotation blocks R(theta),
    theta in (-pi, pi), and fixed directions; halving every angle gives
    beta with beta^2 = alpha and ||beta - 1||_op <= ||alpha - 1||_op.
    A (-1) eigenvalue block (||alpha - 1||_op = 2) admits no such choice
    of angles and is rejected.
    """
    alpha = np.asarray(alpha, dtype=float)
    n = alpha.shape[0]
    if not np.allclose(alpha.T @ alpha, np.eye(n), atol=1e-9):
        raise ValueError("input is not orthogonal")
    dev = np.linalg.svd(alpha - np.eye(n), compute_uv=False)[0]
    if dev >= 2.0 - tol:
        raise ValueError(f"||alpha - 1||_op = {dev:.6f} admits a (-1) block; "
                         "no halved-angle square root exists")
    vals, vecs = np.linalg.eig(alpha)
    # halved angles: principal square root of each unit eigenvalue
    angles = np.angle(vals)
    roots = np.exp(0.5j * angles)
    beta = vecs @ np.diag(roots) @ np.linalg.inv(vecs)
    beta = np.real_if_close(beta, tol=1e6)
    beta = np.real(beta)
    if not np.allclose(beta @ beta, alpha, atol=1e-9):
        raise ArithmeticError("square-root reconstruction failed")
    return beta


# --- rational orthogonal generators (used by tests and group search) -------

def rational_rotation_2d(t) -> Mat:
    """Rational point on SO(2) from the tangent-half-angle parameter t."""
    t = rat(t)
    d = 1 + t * t
    c = (1 - t * t) / d
    s = 2 * t / d
    return mat([[c, -s], [s, c]])


def rational_givens(n: int, i: int, j: int, t) -> Mat:
    r = [[ONE if a == b else ZERO for b in range(n)] for a in range(n)]
    t = rat(t)
    d = 1 + t * t
    c = (1 - t * t) / d
    s = 2 * t / d
    r[i][i] = c
    r[j][j] = c
    r[i][j] = -s
    r[j][i] = s
    return tuple(tuple(row) for row in r)
