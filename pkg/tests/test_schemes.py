import math

from f1schemes.monoids import (MonoidHom, dk, inf_cyclic, nat, trivial_monoid)
from f1schemes.schemes import (GlPoints, affine_scheme, disjoint_union,
                               fibre_product, form_preserving_count, gl_n,
                               hom_to_affine, monomial_matrix_group, p1,
                               points_over, points_over_bruteforce)

import pytest


def test_p1_shape():
    x = p1()
    assert len(x.points) == 3
    assert x.f1_points() == 1
    gamma, _ = x.global_sections()
    assert gamma.is_finite and gamma.size == 1


@pytest.mark.parametrize("k", [2, 3, 5, 7])
def test_p1_points_both_routes(k):
    x = p1()
    assert points_over(x, dk(k)) == k + 1
    assert points_over_bruteforce(x, dk(k)) == k + 1


def test_affine_line_points():
    a1 = affine_scheme(nat(name="C_inf_plus"), name="A1")
    for k in (2, 3, 5):
        assert points_over(a1, dk(k)) == k


def test_hom_to_affine():
    assert len(hom_to_affine(p1(), inf_cyclic())) == 1
    d = disjoint_union([trivial_monoid(), trivial_monoid()])
    assert d.f1_points() == 2
    assert len(hom_to_affine(d, trivial_monoid())) == 1
    assert affine_scheme(dk(5)).f1_points() == 1


def test_gl_point_counts():
    g1 = gl_n(1)
    for k in (2, 3, 5):
        assert points_over(g1, dk(k)) == k - 1
    g2 = gl_n(2)
    assert g2.f1_points() == 2
    for k in (2, 3, 4):
        assert points_over(g2, dk(k)) == 2 * (k - 1) ** 2
    for n in (1, 2, 3):
        assert points_over(gl_n(n), trivial_monoid()) == math.factorial(n)


def test_gl2_group_law():
    gp = GlPoints(2, dk(3))
    assert len(gp.elements) == 8
    e = gp.identity()
    for x in gp.elements:
        assert gp.mul(x, e) == x and gp.mul(e, x) == x
        assert gp.mul(x, gp.inverse(x)) == e
        for y in gp.elements:
            assert gp.mul(x, y) in gp.elements
    x, y, z = gp.elements[1], gp.elements[3], gp.elements[5]
    assert gp.mul(gp.mul(x, y), z) == gp.mul(x, gp.mul(y, z))


def test_monomial_matrix_groups():
    assert len(monomial_matrix_group(3, trivial_monoid())) == 6
    assert len(monomial_matrix_group(2, dk(3))) == 8
    assert len(monomial_matrix_group(1, dk(5))) == 4


def test_form_preserving_counts():
    f1 = trivial_monoid()
    assert form_preserving_count(2, f1, "q") == 2
    assert form_preserving_count(2, f1, "S") == 2
    assert form_preserving_count(3, f1, "q") == 2
    assert form_preserving_count(2, f1, "q", signed=True) == 2
    assert form_preserving_count(3, f1, "q", signed=True) == 4


def test_fibre_products():
    f1s = affine_scheme(trivial_monoid())
    d2 = dk(2)
    h = MonoidHom(trivial_monoid(), d2, [], full_map={0: d2.identity})
    z, _ = fibre_product(affine_scheme(d2), affine_scheme(d2), f1s, h, h)
    assert z.charts[0].monoid.size == 4
    hn = MonoidHom(trivial_monoid(), nat(), [], full_map={0: (0,)})
    zn, _ = fibre_product(affine_scheme(nat()), affine_scheme(nat()), f1s,
                          hn, hn)
    assert zn.charts[0].monoid.dim == 2
