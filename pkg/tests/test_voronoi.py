import pytest

from crystile.rational import Q
from crystile.isometry import Frame, Isometry
from crystile.groups import generic_point, preset, span_seitz, WALLPAPER_NAMES, orbit_in_ball
from crystile.polytope import volume
from crystile.voronoi import (
    DegenerateSiteError,
    cell_with_certificate,
    delone_params,
    voronoi_cell,
    voronoi_cell_of_sites,
    voronoi_tiling,
)
from crystile.tiling import prototiles


def test_delone_z2():
    cert = delone_params(preset("p1"), (0, 0))
    assert cert.min_sq_distance == 1
    assert cert.covering_sq_radius == Q(1, 2)


def test_delone_scaled_lattice():
    frame = Frame(2, ((4, 0), (0, 4)))
    g = span_seitz(frame, [])
    cert = delone_params(g, (0, 0))
    assert cert.min_sq_distance == 4
    assert cert.covering_sq_radius == 2


def test_delone_p4m_generic_positive():
    g = preset("p4m")
    x = generic_point(g, 3)
    cert = delone_params(g, x)
    assert cert.min_sq_distance > 0
    assert cert.covering_sq_radius > 0


def test_delone_rejects_degenerate():
    with pytest.raises(DegenerateSiteError):
        delone_params(preset("p4m"), (0, 0))


def test_voronoi_cell_z2():
    cell = voronoi_cell(preset("p1"), (0, 0))
    h = Q(1, 2)
    assert set(cell.vertices) == {(-h, -h), (-h, h), (h, -h), (h, h)}


def test_voronoi_cell_simplex_sites(frame2):
    sites = [(0, 0), (1, 0), (0, 1), (-1, -1)]
    cell = voronoi_cell_of_sites(frame2, sites, (0, 0))
    assert set(cell.vertices) == {
        (Q(1, 2), Q(1, 2)),
        (Q(1, 2), Q(-3, 2)),
        (Q(-3, 2), Q(1, 2)),
    }


def test_voronoi_cell_rectangular_sites(frame2):
    # 2Z x Z around the origin: rectangle [-1,1] x [-1/2,1/2]
    sites = [(0, 0), (2, 0), (-2, 0), (0, 1), (0, -1), (2, 1), (-2, 1), (2, -1), (-2, -1)]
    cell = voronoi_cell_of_sites(frame2, sites, (0, 0))
    assert set(cell.vertices) == {
        (Q(-1), Q(-1, 2)),
        (Q(-1), Q(1, 2)),
        (Q(1), Q(-1, 2)),
        (Q(1), Q(1, 2)),
    }


def test_localization_doubling_stable():
    g = preset("p4m")
    x = generic_point(g, 5)
    cell, used = cell_with_certificate(g, x)
    again = voronoi_cell(g, x, sq_radius=4 * used)
    assert again == cell


def test_voronoi_equivariance():
    g = preset("p4m")
    x = generic_point(g, 2)
    base = voronoi_cell(g, x)
    for m, v in g.reps:
        iso = Isometry(g.frame, m, v)
        assert voronoi_cell(g, x, x0=iso(x)) == base.transform(iso)


def test_voronoi_tiling_p1():
    t = voronoi_tiling(preset("p1"), (0, 0))
    assert len(t.cell_tiles) == 1
    assert volume(t.cell_tiles[0]) == 1


def test_voronoi_tiling_p4m_generic():
    g = preset("p4m")
    t = voronoi_tiling(g, generic_point(g, 1))
    assert len(t.cell_tiles) == 8
    assert len(prototiles(t)) == 1
    assert sum(volume(p) for p in t.cell_tiles) == 1


def test_voronoi_tiling_p2_two_cells():
    g = preset("p2")
    t = voronoi_tiling(g, generic_point(g, 1))
    assert len(t.cell_tiles) == 2


def test_voronoi_tiling_rejects_degenerate():
    with pytest.raises(DegenerateSiteError):
        voronoi_tiling(preset("p4m"), (0, 0))


def test_simplicity_bound_all_presets():
    # prototile count never exceeds the point-group order
    for name in ("p1", "p2", "pm", "p4", "p4m", "p3", "p6"):
        g = preset(name)
        t = voronoi_tiling(g, generic_point(g, 0))
        assert len(prototiles(t)) <= g.order()


def test_group_inside_voronoi_automorphisms():
    # the defining group always embeds in the tiling's automorphism group
    from crystile.isometry import compose, identity_iso, inverse
    from crystile.groups import is_conjugate_subgroup
    from crystile.tiling import automorphism_group_with_embedding

    for name in WALLPAPER_NAMES:
        g = preset(name)
        vt = voronoi_tiling(g, generic_point(g, 1))
        aut, emb = automorphism_group_with_embedding(vt)
        bridge = compose(inverse(emb), identity_iso(g.frame))
        assert is_conjugate_subgroup(g, aut, bridge), name


def test_hexagonal_voronoi_cell_is_hexagon(hexframe):
    g = span_seitz(hexframe, [])
    cell = voronoi_cell(g, (0, 0))
    assert len(cell.vertices) == 6


def test_delone_bounds_cover_grid():
    # every sampled point sits within the covering radius of the orbit,
    # and distinct sites have positive separation, for every preset
    for name in WALLPAPER_NAMES:
        g = preset(name)
        x = generic_point(g, 4)
        cert = delone_params(g, x)
        assert cert.min_sq_distance > 0, name
        for i in range(3):
            for j in range(3):
                y = (Q(i, 3), Q(j, 3))
                near = orbit_in_ball(g, x, y, cert.covering_sq_radius)
                assert near.sites, f"{name}: no orbit point within covering radius of {y}"


def test_voronoi_cell_rejects_foreign_point():
    with pytest.raises(ValueError):
        voronoi_cell(preset("p1"), (0, 0), x0=(Q(1, 3), 0))


def test_single_site_unbounded(frame2):
    from crystile.voronoi import UnboundedCellError

    with pytest.raises(UnboundedCellError):
        voronoi_cell_of_sites(frame2, [(0, 0)], (0, 0))
