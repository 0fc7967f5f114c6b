from f1schemes.abelian import FgAbelian, unit_group_presentation
from f1schemes.monoidring import (FiniteRing, MonoidRing, monoid_hom_count,
                                  ring_hom_count, zext_compat_fibre)
from f1schemes.monoids import MonoidHom, cyclic, dk, inf_cyclic, trivial_monoid

import pytest


def test_zero_stays_a_basis_element():
    d2 = dk(2)
    r = MonoidRing(d2)
    z = r.basis_elem(d2.index_of_label("0"))
    assert z * z == z
    e = r.one()
    prod = (e + 2 * z) * (e - z)
    assert prod.support == {d2.identity: 1, d2.index_of_label("0"): -1}


def test_idempotent_count_in_z6():
    d2 = dk(2)
    z6 = FiniteRing(6)
    assert ring_hom_count(d2, z6) == 4
    assert monoid_hom_count(d2, z6) == 4


@pytest.mark.parametrize("a", [trivial_monoid(), cyclic(2), cyclic(3),
                               cyclic(4), dk(2), dk(3)],
                         ids=lambda m: m.name)
@pytest.mark.parametrize("n", range(2, 9))
def test_adjunction_counts(a, n):
    r = FiniteRing(n)
    assert ring_hom_count(a, r) == monoid_hom_count(a, r)


@pytest.mark.parametrize("m", [1, 2, 4])
def test_cyclic_into_z5(m):
    want = sum(1 for x in range(1, 5) if pow(x, m, 5) == 1)
    r5 = FiniteRing(5)
    cm = cyclic(m)
    assert ring_hom_count(cm, r5) == want == monoid_hom_count(cm, r5)


def test_fibre_compatibility():
    f1 = trivial_monoid()
    d2 = dk(2)
    h = MonoidHom(f1, d2, [], full_map={0: d2.identity})
    assert zext_compat_fibre(f1, d2, d2, h, h)
    c2 = cyclic(2)
    idh = MonoidHom(c2, c2, [1], full_map={0: 0, 1: 1})
    assert zext_compat_fibre(c2, c2, c2, idh, idh, rings=[FiniteRing(5)])


def test_abelian_invariants():
    assert FgAbelian(2, [[2, 0]]).invariants() == (1, [2])
    grp, gens, to_vec = unit_group_presentation(dk(5))
    assert grp.order() == 4 and grp.torsion == [4]
    grp2, _, _ = unit_group_presentation(inf_cyclic())
    assert grp2.invariants() == (1, [])


def test_product_ring():
    r23 = FiniteRing((2, 3))
    assert len(r23.elements()) == 6
    assert ring_hom_count(trivial_monoid(), r23) == 1
