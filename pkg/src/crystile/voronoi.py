"""Delone diagnostics and exact Voronoi cells of crystallographic orbits.

A cell is cut from the finitely many orbit sites within a localization
radius; the radius is grown until the cell's circumradius certifies that
no farther site can cut it (any site beyond twice the circumradius has
its bisector outside the cell).  The certificate records the radius that
sufficed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rational import rat
from .linalg import Vec, gram_norm2, is_integral_vec, mat_vec, vadd, vec, vsub
from .isometry import Frame, Isometry
from .groups import CrystalGroup, orbit_in_ball, stabilizer
from .polytope import ConvexPolytope, HalfSpace, halfspace_intersection


class DegenerateSiteError(ValueError):
    """Base point has a nontrivial stabilizer: orbit sites collide."""


class UnboundedCellError(ValueError):
    pass


@dataclass(frozen=True)
class DeloneCertificate:
    min_sq_distance: object       # uniform discreteness witness r^2-ish (exact)
    covering_sq_radius: object    # relative denseness witness R^2 (exact)
    localization_sq_radius: object  # site-gathering radius^2 that stabilized the cell

    def __post_init__(self):
        if self.min_sq_distance <= 0:
            raise ValueError("uniform discreteness requires positive separation")


def bisector_halfspace(frame: Frame, x0: Vec, x: Vec) -> HalfSpace:
    """Half-plane of points at least as close to x0 as to x (contains x0)."""
    a = vsub(x0, x)
    mid = tuple((p + q) / 2 for p, q in zip(x0, x))
    from .linalg import gram_dot

    return HalfSpace(a, gram_dot(frame.gram, a, mid))


def _orbit_contains(group: CrystalGroup, x: Vec, y: Vec) -> bool:
    for m, v in group.reps:
        if is_integral_vec(vsub(y, vadd(mat_vec(m, x), v))):
            return True
    return False


def voronoi_cell(group: CrystalGroup, x, x0=None, sq_radius=None):
    """Exact Voronoi cell of the orbit site x0 in the full orbit of x.

    Returns the cell polytope; pass sq_radius to force a specific
    localization radius (used by the localization-stability checks).
    """
    x = vec(x)
    x0 = x if x0 is None else vec(x0)
    if len(stabilizer(group, x)) != 1:
        raise DegenerateSiteError("base point has nontrivial stabilizer")
    if not _orbit_contains(group, x, x0):
        raise ValueError("x0 is not a site of the orbit")
    cell, used = _cell_with_localization(group, x, x0, sq_radius)
    return cell


def cell_with_certificate(group: CrystalGroup, x, x0=None):
    x = vec(x)
    x0 = x if x0 is None else vec(x0)
    if len(stabilizer(group, x)) != 1:
        raise DegenerateSiteError("base point has nontrivial stabilizer")
    if not _orbit_contains(group, x, x0):
        raise ValueError("x0 is not a site of the orbit")
    return _cell_with_localization(group, x, x0, None)


def _cell_from_sites(frame: Frame, x0: Vec, sites):
    """Incremental exact cell: bisectors that cannot cut the running cell
    are skipped (the final cell is contained in every intermediate one)."""
    from .linalg import gram_dot

    n = frame.dim
    g = frame.gram
    ordered = sorted(sites, key=lambda s: gram_norm2(g, vsub(s, x0)))
    hs = []
    cell = None
    for s in ordered:
        h = bisector_halfspace(frame, x0, s)
        if cell is not None and all(
            gram_dot(g, h.normal, v) >= h.offset for v in cell.vertices
        ):
            continue
        hs.append(h)
        res = halfspace_intersection(frame, hs)
        cell = res if isinstance(res, ConvexPolytope) and res.dim == n else None
    return cell


def _cell_with_localization(group: CrystalGroup, x: Vec, x0: Vec, sq_radius):
    frame = group.frame
    n = frame.dim
    d2 = rat(sq_radius) if sq_radius is not None else 4 * max(frame.gram[i][i] for i in range(n))
    for _ in range(24):
        sites = [s for s in orbit_in_ball(group, x, x0, d2).sites if s != x0]
        if sites:
            cell = _cell_from_sites(frame, x0, sites)
            if cell is not None:
                rho2 = max(gram_norm2(frame.gram, vsub(v, x0)) for v in cell.vertices)
                if 4 * rho2 <= d2:
                    return cell, d2
        if sq_radius is not None:
            raise UnboundedCellError(
                "cell not certified at the forced localization radius"
            )
        d2 *= 4
    raise UnboundedCellError("Voronoi cell did not stabilize (non-Delone input?)")


def voronoi_cell_of_sites(frame: Frame, sites, x0) -> ConvexPolytope:
    """Voronoi cell of x0 within a finite explicit site list."""
    x0 = vec(x0)
    pts = [vec(s) for s in sites]
    if x0 not in pts:
        raise ValueError("x0 is not a site")
    others = [s for s in pts if s != x0]
    if not others:
        raise UnboundedCellError("single site has an unbounded cell")
    hs = [bisector_halfspace(frame, x0, s) for s in others]
    cell = halfspace_intersection(frame, hs)
    if not isinstance(cell, ConvexPolytope) or cell.dim != frame.dim:
        raise UnboundedCellError("finite site set gives an unbounded cell")
    return cell


def delone_params(group: CrystalGroup, x) -> DeloneCertificate:
    """Exact Delone certificate of the periodic orbit of x.

    min_sq_distance is scanned within a guard shell around one site (the
    first candidate bounds the scan radius, making the minimum exact);
    covering_sq_radius is the circumradius^2 of the Voronoi cell, which
    by orbit transitivity covers every cell.
    """
    x = vec(x)
    stab = stabilizer(group, x)
    if len(stab) != 1:
        raise DegenerateSiteError("duplicate sites: base point has nontrivial stabilizer")
    frame = group.frame
    probe = max(frame.gram[i][i] for i in range(frame.dim))
    while True:
        sites = [s for s in orbit_in_ball(group, x, x, probe).sites if s != x]
        if sites:
            break
        probe *= 4
    min_sq = min(gram_norm2(frame.gram, vsub(s, x)) for s in sites)
    cell, used = _cell_with_localization(group, x, x, None)
    cover_sq = max(gram_norm2(frame.gram, vsub(v, x)) for v in cell.vertices)
    return DeloneCertificate(
        min_sq_distance=min_sq,
        covering_sq_radius=cover_sq,
        localization_sq_radius=used,
    )


def voronoi_tiling(group: CrystalGroup, x):
    """Periodic Voronoi-cell tiling of the orbit of x (trivial stabilizer).

    Tiles per unit cell are the coset-representative images of the base
    cell; equivariance gives V_{gamma(x)} = gamma(V_x).
    """
    from .tiling import Provenance, periodic_tiling

    x = vec(x)
    if len(stabilizer(group, x)) != 1:
        raise DegenerateSiteError("voronoi_tiling needs a base point with trivial stabilizer")
    cell, used = _cell_with_localization(group, x, x, None)
    tiles = []
    for m, v in group.reps:
        iso = Isometry(group.frame, m, v)
        tiles.append(cell.transform(iso))
    prov = Provenance(kind="voronoi", group=group, base_point=x, base_cell=cell)
    return periodic_tiling(group.frame, tiles, provenance=prov, validate=True)
