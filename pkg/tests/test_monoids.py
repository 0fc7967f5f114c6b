from f1schemes.monoids import (MonoidHom, adjoin_zero, congruence_closure,
                               cyclic, dk, hom_enumerate, ideal_generated,
                               identity_hom, inf_cyclic, lattice_monoid,
                               localize, nat, presented_monoid, product_monoid,
                               pushout, trivial_monoid, zmod_mult)

import pytest


def test_dk_structure():
    d5 = dk(5)
    g = d5.index_of_label("g")
    z = d5.index_of_label("0")
    assert d5.mul(g, d5.pow(g, 3)) == d5.identity
    assert d5.mul(g, z) == z
    assert len(d5.units()) == 4


def test_zmod_mult_units():
    z6 = zmod_mult(6)
    assert sorted(z6.units()) == [1, 5]


def test_hom_counts_into_d5():
    d5 = dk(5)
    assert len(hom_enumerate(inf_cyclic(), d5)) == 4
    assert len(hom_enumerate(nat(), d5)) == 5


def test_localize_nat_at_generator_is_z():
    loc, num = localize(nat(), [(1,)])
    assert loc.contains((-3,)) and loc.contains((5,))
    assert loc.is_unit((1,))


def test_localize_finite():
    d5 = dk(5)
    z = d5.index_of_label("0")
    g = d5.index_of_label("g")
    # inverting the absorbing zero collapses everything
    assert localize(d5, [z])[0].size == 1
    # inverting a unit changes nothing
    assert localize(d5, [g])[0].size == 5


def test_congruence_closure():
    c3 = cyclic(3)
    assert len(congruence_closure(c3, [(1, 0)]).classes) == 1
    d3 = dk(3)
    g3 = d3.index_of_label("g")
    assert len(congruence_closure(d3, [(g3, d3.identity)]).classes) == 2


def test_pushout_finite():
    f1 = trivial_monoid()
    d2 = dk(2)
    h = MonoidHom(f1, d2, [], full_map={0: d2.identity})
    p, ia, ib = pushout(f1, d2, d2, h, h)
    assert p.size == 4


def test_presented_monoids():
    m = presented_monoid(["x"], [((3,), (1,))])
    assert m.size == 3
    assert m.pow(m.gens[0], 3) == m.gens[0]
    c4p = presented_monoid(["g"], [((4,), (0,))])
    assert c4p.size == 4
    assert len(c4p.units()) == 4
    assert len(hom_enumerate(c4p, cyclic(2))) == 2


def test_pushout_lattice():
    f1 = trivial_monoid()
    n1 = nat()
    n2, _, _ = pushout(f1, n1, n1, MonoidHom(f1, n1, []), MonoidHom(f1, n1, []))
    assert n2.dim == 2
    assert n2.contains((2, 3)) and not n2.contains((-1, 0))
    cinf = inf_cyclic()
    ph = MonoidHom(cinf, cinf, list(cinf.gens))
    pz, _, _ = pushout(cinf, cinf, cinf, ph, ph)
    assert pz.dim == 1 and pz.contains((-5,))


def test_ideals():
    d5 = dk(5)
    z = d5.index_of_label("0")
    g = d5.index_of_label("g")
    i = ideal_generated(d5, [z])
    assert i.contains(z) and not i.contains(g)
    i2 = ideal_generated(nat(), [(2,)])
    assert i2.contains((5,)) and not i2.contains((1,))


def test_lattice_units_and_membership():
    lm = lattice_monoid([(1, 1), (-1, -1), (1, 0)])
    assert lm.is_unit((1, 1)) and lm.is_unit((-1, -1))
    assert lm.contains((3, 2)) and not lm.contains((0, 1))


def test_mixed_lattice_structure_hom_count():
    mix = lattice_monoid([(1, 0), (0, 1), (0, -1)])
    assert mix.structure() is not None
    assert len(hom_enumerate(mix, dk(5))) == 20


def test_product_and_adjoin_zero():
    p = product_monoid(cyclic(2), cyclic(3))
    assert p.size == 6
    z = adjoin_zero(cyclic(3))
    assert z.size == 4
    assert len(z.units()) == 3


def test_identity_hom():
    d3 = dk(3)
    h = identity_hom(d3)
    assert all(h(x) == x for x in d3.elements())


def test_presented_infinite_rejected():
    from f1schemes.errors import UnsupportedInstanceError
    with pytest.raises(UnsupportedInstanceError):
        presented_monoid(["x", "y"], [((1, 0), (1, 0))])
