from f1schemes.monoids import (MonoidHom, cyclic, dk, hom_enumerate,
                               ideal_generated, inf_cyclic, lattice_monoid,
                               nat, trivial_monoid)
from f1schemes.spectrum import (StructureSheaf, count_local_morphisms,
                                intersect_lattice_monoids, spec, spec_morphism)

import pytest


@pytest.mark.parametrize("monoid,npoints", [
    (trivial_monoid(), 1),
    (dk(2), 2), (dk(3), 2), (dk(5), 2),
    (nat(), 2), (nat(2), 4),
    (inf_cyclic(), 1),
])
def test_spectrum_sizes(monoid, npoints):
    assert len(spec(monoid)) == npoints


def test_generic_and_closed():
    d5 = dk(5)
    s = spec(d5)
    assert s.generic != s.closed
    assert s.points[s.closed].contains(d5.index_of_label("0"))


def test_v_and_d():
    d5 = dk(5)
    s = spec(d5)
    z = d5.index_of_label("0")
    assert s.v_closed(ideal_generated(d5, [z])) == frozenset({s.closed})
    assert s.v_closed(ideal_generated(d5, [])) == s.all_points()
    s1 = spec(nat())
    assert s1.d_open((1,)) == frozenset({s1.generic})


def test_stalks():
    d5 = dk(5)
    sh = StructureSheaf(spec(d5))
    stc, _ = sh.stalk(sh.base.closed)
    assert stc.size == 5
    s1 = spec(nat())
    sg, _ = StructureSheaf(s1).stalk(s1.generic)
    assert sg.contains((-3,))
    s2 = spec(nat(2))
    px = next(i for i, p in enumerate(s2.points)
              if p.gen_key == frozenset({(1, 0)}))
    stx, _ = StructureSheaf(s2).stalk(px)
    assert stx.contains((0, -2)) and stx.contains((1, 0))
    assert not stx.contains((-1, 0))


def test_sections():
    d5 = dk(5)
    s = spec(d5)
    sh = StructureSheaf(s)
    m, _ = sh.sections(s.all_points())
    assert m.size == 5
    me, _ = sh.sections(frozenset())
    assert me.size == 1
    s1 = spec(nat())
    sh1 = StructureSheaf(s1)
    m1, _ = sh1.sections(s1.all_points())
    assert m1.contains((3,)) and not m1.contains((-1,))
    mz, _ = sh1.sections(s1.d_open((1,)))
    assert mz.contains((-4,))


def test_punctured_plane_sections():
    s2 = spec(nat(2))
    sh2 = StructureSheaf(s2)
    u = s2.d_open((1, 0)) | s2.d_open((0, 1))
    m, _ = sh2.sections(u)
    assert m.contains((1, 0)) and m.contains((0, 1))
    assert not m.contains((-1, 0)) and not m.contains((0, -1))


def test_intersect_lattice_monoids():
    a = lattice_monoid([(1,)])
    b = lattice_monoid([(-1,)])
    i0 = intersect_lattice_monoids(1, [a, b])
    assert i0.contains((0,))
    assert not i0.contains((1,)) and not i0.contains((-1,))


def test_duality_counts():
    zoo_a = [trivial_monoid(), cyclic(2), dk(2), dk(3)]
    zoo_b = [trivial_monoid(), cyclic(2), dk(3)]
    for a in zoo_a:
        for b in zoo_b:
            homs = hom_enumerate(a, b)
            sa, sb = spec(a), spec(b)
            for h in homs:
                sm = spec_morphism(h)
                assert sm.is_continuous()
                assert sm.is_local()
            assert len(homs) == count_local_morphisms(sb, sa)
