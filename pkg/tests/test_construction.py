import pytest

from crystile.rational import Q
from crystile.linalg import gram_norm2, vsub
from crystile.isometry import Isometry
from crystile.groups import preset, generic_point
from crystile.polytope import ConvexPolytope, volume
from crystile.voronoi import voronoi_tiling
from crystile.tiling import automorphism_group, prototiles, tilings_equal, transform_tiling
from crystile.construction import (
    certificate_for,
    cone_subdivide,
    construct_tiling,
    generic_apex,
)


@pytest.fixture
def centered_square(frame2):
    h = Q(1, 2)
    return ConvexPolytope(frame2, [(-h, -h), (h, -h), (-h, h), (h, h)])


def test_certificate_example(centered_square):
    cert = certificate_for(centered_square, (Q(-1, 10), Q(-1, 4)))
    assert len(set(cert.vertex_sq_distances)) == 4
    assert not set(cert.vertex_sq_distances) & set(cert.edge_sq_lengths)
    assert cert.edge_sq_lengths == (1, 1, 1, 1)


def test_certificate_rejects_pythagorean_apex(centered_square):
    # (-1/10, -3/10) sits at distance exactly 1 (a 3-4-5 triple) from the
    # corner (1/2, 1/2), colliding with the edge length: not generic
    vd = gram_norm2(centered_square.frame.gram, vsub((Q(-1, 10), Q(-3, 10)), (Q(1, 2), Q(1, 2))))
    assert vd == 1
    with pytest.raises(ValueError):
        certificate_for(centered_square, (Q(-1, 10), Q(-3, 10)))


def test_certificate_rejects_center(centered_square):
    with pytest.raises(ValueError):
        certificate_for(centered_square, (0, 0))


def test_certificate_rejects_diagonal_point(centered_square):
    with pytest.raises(ValueError):
        certificate_for(centered_square, (Q(1, 5), Q(1, 5)))


def test_certificate_rejects_exterior(centered_square):
    with pytest.raises(ValueError):
        certificate_for(centered_square, (2, 0))


def test_generic_apex_terminates(centered_square):
    cert = generic_apex(centered_square, 0)
    assert centered_square.strictly_contains(cert.apex)
    cert2 = generic_apex(centered_square, 0)
    assert cert2.apex == cert.apex  # deterministic in the seed


def test_cone_subdivide_square_counts(frame2):
    g = preset("p1")
    vt = voronoi_tiling(g, (0, 0))
    cert = generic_apex(vt.provenance.base_cell, 0)
    sub = cone_subdivide(vt, cert)
    assert len(sub.cell_tiles) == 4
    assert len(prototiles(sub)) == 4
    assert sum(volume(t) for t in sub.cell_tiles) == 1


def test_cone_subdivide_hex_cell_counts(frame2):
    # generically the p2 cells are hexagonal: 6 cones per cell
    g = preset("p2")
    x = generic_point(g, 0)
    vt = voronoi_tiling(g, x)
    facets = len(vt.provenance.base_cell.facets())
    assert facets == 6
    cert = generic_apex(vt.provenance.base_cell, 0)
    sub = cone_subdivide(vt, cert)
    assert len(sub.cell_tiles) == 2 * facets


def test_cone_subdivide_refuses_bad_certificate(frame2):
    g = preset("p1")
    vt = voronoi_tiling(g, (0, 0))
    other = ConvexPolytope(frame2, [(0, 0), (1, 0), (0, 1), (1, 1)])
    cert = generic_apex(other, 0)
    with pytest.raises(ValueError):
        cone_subdivide(vt, cert)


def test_cone_edge_signatures_distinct(frame2):
    # within one subdivided cell the cones' edge-length lists differ pairwise
    g = preset("p1")
    vt = voronoi_tiling(g, (0, 0))
    cert = generic_apex(vt.provenance.base_cell, 0)
    sub = cone_subdivide(vt, cert)
    gm = frame2.gram
    sigs = []
    for t in sub.cell_tiles:
        from crystile.polytope import faces

        sig = sorted(
            gram_norm2(gm, vsub(e.vertices[1], e.vertices[0])) for e in faces(t, 1)
        )
        sigs.append(tuple(sig))
    assert len(set(sigs)) == len(sigs)


def test_construct_p1_kills_d4():
    g = preset("p1")
    t = construct_tiling(g, 0)
    aut = automorphism_group(t)
    assert aut.order() == 1
    assert aut.frame == g.frame
    assert aut.reps == g.reps


def test_construct_p4m_and_p6():
    for name in ("p4m", "p6"):
        g = preset(name)
        t = construct_tiling(g, 0)
        aut = automorphism_group(t)
        assert aut.reps == g.reps and aut.frame == g.frame


def test_construct_p6_has_no_reflections():
    g = preset("p6")
    t = construct_tiling(g, 0)
    aut = automorphism_group(t)
    from crystile.linalg import mat_det

    assert all(mat_det(m) == 1 for m in aut.point_parts())


def test_construct_custom_lattices():
    # non-preset Gram matrices: oblique p2-type and rectangular pg-type
    from crystile.isometry import Frame
    from crystile.groups import span_seitz

    oblique = Frame(2, ((2, Q(1, 2)), (Q(1, 2), 3)))
    g_ob = span_seitz(oblique, [(((-1, 0), (0, -1)), (0, 0))])
    t = construct_tiling(g_ob, 0)
    aut = automorphism_group(t)
    assert aut.reps == g_ob.reps and aut.frame == g_ob.frame

    rect = Frame(2, ((1, 0), (0, 3)))
    g_pg = span_seitz(rect, [(((1, 0), (0, -1)), (Q(1, 2), 0))])
    t = construct_tiling(g_pg, 1)
    aut = automorphism_group(t)
    assert aut.reps == g_pg.reps and aut.frame == g_pg.frame


def test_group_inside_aut_before_verification():
    # equivariance of the pipeline: Gamma fixes the subdivided tiling
    g = preset("p4")
    x = generic_point(g, 1)
    vt = voronoi_tiling(g, x)
    cert = generic_apex(vt.provenance.base_cell, 1)
    sub = cone_subdivide(vt, cert)
    for m, v in g.reps:
        phi = Isometry(g.frame, m, v)
        assert tilings_equal(transform_tiling(sub, phi), sub)


def test_subdivision_preserves_volume():
    g = preset("p3")
    x = generic_point(g, 2)
    vt = voronoi_tiling(g, x)
    cert = generic_apex(vt.provenance.base_cell, 2)
    sub = cone_subdivide(vt, cert)
    assert sum(volume(t) for t in sub.cell_tiles) == 1
