"""Crystallographic subgroups of Isom(E^n) in lattice-adapted coordinates.

Convention: the group's translation lattice IS the integer span of the
frame basis, so the lattice never appears explicitly.  A group is stored
as its frame plus one Seitz pair (M, v) per point-group element, with M
an integer Gram-orthogonal matrix and v reduced to [0,1)^n.  The full
group is then {x |-> M x + v + k : (M, v) in reps, k in Z^n}.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache

from .rational import Q, ZERO, ONE, rat, frac_part, isqrt_ceil
from .linalg import (
    Mat,
    Vec,
    enumerate_box,
    gram_dot,
    gram_norm2,
    identity_mat,
    is_integral_mat,
    is_integral_vec,
    mat,
    mat_det,
    mat_inv,
    mat_mul,
    mat_sub,
    mat_vec,
    solve_mod_lattice,
    transpose,
    vadd,
    vec,
    vsub,
    zero_vec,
)
from .isometry import Frame, Isometry, hexagonal_frame, standard_frame


class GroupValidationError(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("group validation failed: " + "; ".join(self.violations))


def _canon_seitz(m: Mat, v: Vec):
    return (mat(m), tuple(frac_part(x) for x in vec(v)))


def _seitz_mul(a, b):
    (m1, v1), (m2, v2) = a, b
    return _canon_seitz(mat_mul(m1, m2), vadd(mat_vec(m1, v2), v1))


@dataclass(frozen=True)
class CrystalGroup:
    frame: Frame
    reps: tuple  # sorted tuple of (M, v) Seitz pairs, containing (1, 0)
    name: str = field(default=None, compare=False)

    @property
    def dim(self) -> int:
        return self.frame.dim

    def point_parts(self):
        return tuple(m for m, _ in self.reps)

    def order(self) -> int:
        """Point-group order."""
        return len(self.reps)

    def element(self, m: Mat, v: Vec) -> Isometry:
        return Isometry(self.frame, m, v)

    def rep_for(self, m: Mat):
        for mm, vv in self.reps:
            if mm == m:
                return vv
        return None

    def contains(self, iso: Isometry) -> bool:
        """Exact membership of an isometry of the group's frame."""
        if iso.frame != self.frame or iso.target != self.frame:
            return False
        v = self.rep_for(iso.linear)
        if v is None:
            return False
        return is_integral_vec(vsub(iso.translation, v))


def validate_group(frame: Frame, seitz_pairs, name: str = None) -> CrystalGroup:
    """Canonicalize and check a group description; raises GroupValidationError.

    Checks: integer Gram-orthogonal point parts, pairwise distinct point
    parts, closure modulo the lattice, and presence of the identity.  The
    full-rank lattice condition holds by the basis convention and the
    frame's positive-definiteness check.
    """
    n = frame.dim
    violations = []
    canon = []
    for idx, (m, v) in enumerate(seitz_pairs):
        m = mat(m)
        v = vec(v)
        if len(m) != n or any(len(r) != n for r in m) or len(v) != n:
            violations.append(f"rep {idx}: shape mismatch")
            continue
        if not is_integral_mat(m):
            violations.append(f"rep {idx}: non-integer point part")
            continue
        if mat_mul(transpose(m), mat_mul(frame.gram, m)) != frame.gram:
            violations.append(f"rep {idx}: point part is not Gram-orthogonal (M^T G M != G)")
            continue
        d = mat_det(m)
        if d != 1 and d != -1:
            violations.append(f"rep {idx}: determinant {d} not in {{+1,-1}}")
            continue
        canon.append(_canon_seitz(m, v))
    if violations:
        raise GroupValidationError(violations)

    ident = (identity_mat(n), zero_vec(n))
    if ident not in canon:
        if any(m == ident[0] for m, _ in canon):
            violations.append("pure translation outside the lattice (identity rep has nonzero part)")
        else:
            canon.append(ident)
    seen = {}
    for m, v in canon:
        if m in seen and seen[m] != v:
            violations.append("duplicate point parts with different translations")
        seen[m] = v
    if len(seen) != len(canon):
        canon = [(m, v) for m, v in dict.fromkeys(canon)]
    if violations:
        raise GroupValidationError(violations)

    by_m = dict(canon)
    for m1, v1 in canon:
        for m2, v2 in canon:
            m12, w = _seitz_mul((m1, v1), (m2, v2))
            if m12 not in by_m:
                violations.append("closure failure: missing point part for a product")
            elif by_m[m12] != w:
                violations.append("closure failure: product translation differs mod lattice")
    if violations:
        raise GroupValidationError(sorted(set(violations)))

    reps = tuple(sorted(canon))
    return CrystalGroup(frame=frame, reps=reps, name=name)


def span_seitz(frame: Frame, generators, name: str = None, max_order: int = 1024) -> CrystalGroup:
    """Close a generator list under multiplication mod the lattice."""
    elems = {_canon_seitz(identity_mat(frame.dim), zero_vec(frame.dim))}
    frontier = [_canon_seitz(m, v) for m, v in generators]
    elems.update(frontier)
    while frontier:
        new = []
        for a in list(elems):
            for b in frontier:
                for prod in (_seitz_mul(a, b), _seitz_mul(b, a)):
                    if prod not in elems:
                        elems.add(prod)
                        new.append(prod)
        if len(elems) > max_order:
            raise GroupValidationError(["generator closure exceeded bound (non-crystallographic input?)"])
        frontier = new
    return validate_group(frame, sorted(elems), name=name)


# --- preset catalog ---------------------------------------------------------

def _wallpaper_generators():
    half = Q(1, 2)
    R4 = ((0, -1), (1, 0))
    MIRX = ((1, 0), (0, -1))     # reflect across the x-axis
    NEG = ((-1, 0), (0, -1))
    J = ((0, 1), (1, 0))         # diagonal mirror
    NJ = ((0, -1), (-1, 0))
    M6 = ((1, -1), (1, 0))
    M3 = ((0, -1), (1, -1))
    z = (0, 0)
    gx = (half, 0)
    gd = (half, half)
    sq, hx = "square", "hex"
    return {
        "p1":   (sq, []),
        "p2":   (sq, [(NEG, z)]),
        "pm":   (sq, [(MIRX, z)]),
        "pg":   (sq, [(MIRX, gx)]),
        "cm":   (sq, [(J, z)]),
        "pmm":  (sq, [(MIRX, z), (NEG, z)]),
        "pmg":  (sq, [(NEG, z), (MIRX, gx)]),
        "pgg":  (sq, [(NEG, z), (MIRX, gd)]),
        "cmm":  (sq, [(J, z), (NEG, z)]),
        "p4":   (sq, [(R4, z)]),
        "p4m":  (sq, [(R4, z), (MIRX, z)]),
        "p4g":  (sq, [(R4, z), (MIRX, gd)]),
        "p3":   (hx, [(M3, z)]),
        "p3m1": (hx, [(M3, z), (NJ, z)]),
        "p31m": (hx, [(M3, z), (J, z)]),
        "p6":   (hx, [(M6, z)]),
        "p6m":  (hx, [(M6, z), (J, z)]),
    }


WALLPAPER_NAMES = tuple(_wallpaper_generators().keys())

# A few 3D demonstration groups (capitalized, Hermann-Mauguin style).
def _demo3d_generators():
    z3 = (0, 0, 0)
    rot2z = ((-1, 0, 0), (0, -1, 0), (0, 0, 1))
    rot2y = ((-1, 0, 0), (0, 1, 0), (0, 0, -1))
    cyc = ((0, 0, 1), (1, 0, 0), (0, 1, 0))
    swap = ((0, 1, 0), (1, 0, 0), (0, 0, 1))
    mirz = ((1, 0, 0), (0, 1, 0), (0, 0, -1))
    return {
        "P1":    [],
        "P222":  [(rot2z, z3), (rot2y, z3)],
        "Pm-3m": [(cyc, z3), (swap, z3), (mirz, z3)],
    }


DEMO3D_NAMES = tuple(_demo3d_generators().keys())
PRESET_NAMES = WALLPAPER_NAMES + DEMO3D_NAMES


def _preset_from_generators(name: str) -> CrystalGroup:
    wall = _wallpaper_generators()
    if name in wall:
        kind, gens = wall[name]
        frame = hexagonal_frame() if kind == "hex" else standard_frame(2)
        return span_seitz(frame, gens, name=name)
    return span_seitz(standard_frame(3), _demo3d_generators()[name], name=name)


@lru_cache(maxsize=None)
def preset(name: str) -> CrystalGroup:
    """One of the 17 wallpaper groups, or a 3D demonstration group.

    Square-lattice presets use the identity Gram matrix; hexagonal ones
    use [[1,-1/2],[-1/2,1]].  The catalog ships as JSON data files (see
    scripts/regen_preset_data.py); each file passes validate_group on
    load, with the generator closure as fallback.
    """
    if name not in PRESET_NAMES:
        raise KeyError(f"unknown preset {name!r}; known: {', '.join(PRESET_NAMES)}")
    try:
        from importlib import resources

        text = (
            resources.files("crystile")
            .joinpath("data", "presets", f"{name}.json")
            .read_text(encoding="utf-8")
        )
    except (FileNotFoundError, ModuleNotFoundError, OSError):
        return _preset_from_generators(name)
    import json

    from .serialize import group_from_json

    return group_from_json(json.loads(text))


# --- orbits and stabilizers -------------------------------------------------

@dataclass(frozen=True)
class OrbitPointSet:
    frame: Frame
    sites: tuple
    group: CrystalGroup = field(compare=False)
    base_point: Vec = field(compare=False)
    center: Vec = field(compare=False)
    sq_radius: object = field(compare=False)


def _inv_gram_diag(frame: Frame):
    inv = mat_inv(frame.gram)
    return tuple(inv[i][i] for i in range(frame.dim))


def lattice_points_in_ball(frame: Frame, center: Vec, r2) -> list:
    """All k in Z^n with ||k - center||_G^2 <= r2, by exact box enumeration.

    The box bound |w_i| <= sqrt(r2 * (G^-1)_ii) on the ellipsoid is exact,
    so the enumeration provably covers the ball.
    """
    r2 = rat(r2)
    if r2 < 0:
        return []
    diag = _inv_gram_diag(frame)
    bounds = []
    for ci, gii in zip(center, diag):
        w = isqrt_ceil(r2 * gii)
        bounds.append((math.floor(ci) - w, math.ceil(ci) + w))
    out = []
    for k in enumerate_box(bounds):
        kv = tuple(Q(x) for x in k)
        if gram_norm2(frame.gram, vsub(kv, center)) <= r2:
            out.append(kv)
    return out


def orbit_in_ball(group: CrystalGroup, x, center, r2) -> OrbitPointSet:
    """Exactly the orbit points gamma(x) with squared distance <= r2 to center."""
    x = vec(x)
    center = vec(center)
    r2 = rat(r2)
    if r2 <= 0:
        raise ValueError("squared radius must be positive")
    sites = set()
    for m, v in group.reps:
        base = vadd(mat_vec(m, x), v)
        # k must satisfy ||base + k - center||^2 <= r2
        for k in lattice_points_in_ball(group.frame, vsub(center, base), r2):
            sites.add(vadd(base, k))
    return OrbitPointSet(
        frame=group.frame,
        sites=tuple(sorted(sites)),
        group=group,
        base_point=x,
        center=center,
        sq_radius=r2,
    )


def stabilizer(group: CrystalGroup, x) -> list:
    """All group elements fixing x exactly, as full Seitz pairs (M, v + k)."""
    x = vec(x)
    out = []
    for m, v in group.reps:
        k = vsub(x, vadd(mat_vec(m, x), v))
        if is_integral_vec(k):
            out.append((m, vadd(v, k)))
    return out


_DENOMS = (7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67)


def generic_point(group: CrystalGroup, seed: int) -> Vec:
    """Deterministic rational point with trivial stabilizer.

    Fixed-point sets of the finitely many nontrivial cosets are affine
    subspaces of positive codimension, so resampling with growing
    denominators terminates.  Coordinates use distinct denominators to
    avoid accidental mirror alignments.
    """
    rng = random.Random(seed)
    for attempt in range(64):
        x = []
        for i in range(group.dim):
            q = _DENOMS[(attempt + i) % len(_DENOMS)] * (1 + attempt // len(_DENOMS))
            x.append(Q(rng.randrange(1, q), q))
        x = tuple(x)
        if len(stabilizer(group, x)) == 1:
            return x
    raise RuntimeError("could not find a generic point (malformed group?)")


# --- symmorphic test ---------------------------------------------------------

def is_symmorphic(group: CrystalGroup):
    """A point P about which all reps lose their translation parts, or None.

    Solves the simultaneous congruences (M - 1) P = -v (mod Z^n) over all
    Seitz pairs.
    """
    n = group.dim
    rows = []
    rhs = []
    for m, v in group.reps:
        a = mat_sub(m, identity_mat(n))
        for i in range(n):
            rows.append(a[i])
            rhs.append(-v[i])
    sol = solve_mod_lattice(tuple(rows), tuple(rhs))
    if sol is None:
        return None
    return tuple(frac_part(x) for x in sol)


# --- conjugacy ---------------------------------------------------------------

def lattice_vectors_with_norm(frame: Frame, value) -> list:
    """Integer vectors with exact Gram norm^2 == value, sorted."""
    value = rat(value)
    diag = _inv_gram_diag(frame)
    bounds = [(-isqrt_ceil(value * gii), isqrt_ceil(value * gii)) for gii in diag]
    out = []
    for k in enumerate_box(bounds):
        kv = tuple(Q(x) for x in k)
        if gram_norm2(frame.gram, kv) == value:
            out.append(kv)
    return sorted(out)


def lattice_isometries(source: Frame, target: Frame) -> list:
    """Integer matrices U with U^T G_target U = G_source and |det U| = 1.

    These are exactly the isometric lattice identifications; columns are
    found among target-lattice vectors with the prescribed Gram products.
    The identity-like candidates are ordered first for determinism.
    """
    n = source.dim
    if target.dim != n:
        return []
    if mat_det(source.gram) != mat_det(target.gram):
        return []
    col_candidates = []
    for i in range(n):
        cands = lattice_vectors_with_norm(target, source.gram[i][i])
        ei = tuple(ONE if j == i else ZERO for j in range(n))
        cands.sort(key=lambda u: (u != ei, u))
        col_candidates.append(cands)
    results = []

    def extend(cols):
        i = len(cols)
        if i == n:
            u = transpose(tuple(cols))
            d = mat_det(u)
            if d == 1 or d == -1:
                results.append(u)
            return
        for cand in col_candidates[i]:
            ok = True
            for j, prev in enumerate(cols):
                if gram_dot(target.gram, cand, prev) != source.gram[i][j]:
                    ok = False
                    break
            if ok:
                extend(cols + [cand])

    extend([])
    return results


def conjugacy_search(g1: CrystalGroup, g2: CrystalGroup):
    """An isometry gamma with gamma g1 gamma^-1 == g2 as sets, or None.

    gamma maps g1-frame coordinates to g2-frame coordinates; its linear
    part is an isometric lattice identification, and its translation part
    solves U v_M + (1 - U M U^-1) c = w (mod Z^n) for every rep.
    """
    if g1.dim != g2.dim:
        raise ValueError("dimension mismatch")
    if g1.order() != g2.order():
        return None
    sig = lambda g: sorted((mat_det(m), sum(m[i][i] for i in range(g.dim))) for m in g.point_parts())
    if sig(g1) != sig(g2):
        return None
    n = g1.dim
    for u in lattice_isometries(g1.frame, g2.frame):
        uinv = mat_inv(u)
        rows = []
        rhs = []
        ok = True
        for m, v in g1.reps:
            mprime = mat_mul(u, mat_mul(m, uinv))
            if not is_integral_mat(mprime):
                ok = False
                break
            w = g2.rep_for(mprime)
            if w is None:
                ok = False
                break
            a = mat_sub(identity_mat(n), mprime)
            for i in range(n):
                rows.append(a[i])
                rhs.append(w[i] - vdot_row(u[i], v))
        if not ok:
            continue
        c = solve_mod_lattice(tuple(rows), tuple(rhs))
        if c is not None:
            c = tuple(frac_part(x) for x in c)
            return Isometry(g1.frame, u, c, target=g2.frame)
    return None


def vdot_row(row, v):
    return sum((a * b for a, b in zip(row, v)), ZERO)


def is_conjugate_subgroup(g1: CrystalGroup, g2: CrystalGroup, gamma: Isometry) -> bool:
    """Whether gamma g1 gamma^-1 is contained in g2.

    Checked on lattice generators plus all reps, which suffices by closure.
    """
    if g1.dim != g2.dim:
        raise ValueError("dimension mismatch")
    if gamma.frame != g1.frame or gamma.target != g2.frame:
        raise ValueError("gamma does not map between the group frames")
    u = gamma.linear
    if not is_integral_mat(u):
        return False  # some conjugated lattice translation is not in g2
    uinv = mat_inv(u)
    c = gamma.translation
    n = g1.dim
    for m, v in g1.reps:
        mprime = mat_mul(u, mat_mul(m, uinv))
        if not is_integral_mat(mprime):
            return False
        w = g2.rep_for(mprime)
        if w is None:
            return False
        t = vadd(mat_vec(u, v), mat_vec(mat_sub(identity_mat(n), mprime), c))
        if not is_integral_vec(vsub(t, w)):
            return False
    return True


def subgroup_index(sub: CrystalGroup, sup: CrystalGroup, gamma: Isometry = None) -> int:
    """Index of gamma sub gamma^-1 in sup (gamma defaults to the identity map).

    Equals (lattice index) * |point group of sup| / |point group of sub|.
    """
    if gamma is None:
        if sub.frame != sup.frame:
            raise ValueError("same-frame index needs an explicit gamma")
        from .isometry import identity_iso
        gamma = identity_iso(sub.frame)
    if not is_conjugate_subgroup(sub, sup, gamma):
        raise ValueError("not a subgroup under the given conjugation")
    lat_index = abs(int(mat_det(gamma.linear)))
    po = Q(lat_index) * Q(sup.order(), sub.order())
    if po.denominator != 1:
        raise ArithmeticError("non-integer index; groups are not nested")
    return int(po)
