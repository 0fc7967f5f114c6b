from f1schemes.abelian import FgAbelian
from f1schemes.errors import RankDefectError
from f1schemes.modules import (LineBundleCocycle, aset_homs, aset_isomorphic,
                               base_change, direct_sum, free_aset, is_coherent,
                               localize_module, picard, pullback, pushforward,
                               regular_aset, restrict_scalars, tensor, tilde,
                               trace_is_iso, zext_module,
                               zext_tensor_invariants)
from f1schemes.monoids import (MonoidHom, cyclic, dk, hom_enumerate, nat,
                               trivial_monoid)
from f1schemes.schemes import affine_scheme, disjoint_union, gl_n, p1

import pytest


def test_tensor_identities():
    d3 = dk(3)
    reg = regular_aset(d3)
    assert reg.size == 3
    assert direct_sum(reg, reg).size == 6
    assert aset_isomorphic(tensor(reg, reg), reg)
    f2 = free_aset(d3, 2)
    assert aset_isomorphic(tensor(f2, f2), free_aset(d3, 4))


def test_zext_module_ranks():
    d3 = dk(3)
    reg = regular_aset(d3)
    m2 = direct_sum(reg, reg)
    assert zext_module(m2).rank == 6
    t = tensor(reg, reg)
    assert zext_tensor_invariants(reg, reg) == (t.size, [])
    f2 = free_aset(d3, 2)
    t22 = tensor(f2, f2)
    assert zext_tensor_invariants(f2, f2) == (t22.size, [])


def test_localize_module():
    d3 = dk(3)
    lm, _ = localize_module(regular_aset(d3), [d3.index_of_label("g")])
    assert lm.size == 3


def test_tilde_sections_and_stalks():
    d3 = dk(3)
    reg = regular_aset(d3)
    for m in (reg, direct_sum(reg, reg), free_aset(d3, 1)):
        sh = tilde(m)
        mod, _ = sh.sections(sh.base.all_points())
        assert mod.size == m.size
    sh = tilde(reg)
    assert sh.stalks[sh.base.closed].size == reg.size


def test_coherence_detection():
    d3 = dk(3)
    m2 = direct_sum(regular_aset(d3), regular_aset(d3))
    good = tilde(m2)
    ok, wit = is_coherent(good)
    assert ok, wit
    bad = tilde(m2)
    key = next(iter(bad.gen_maps))
    gm = dict(bad.gen_maps[key])
    const = sorted(gm.values())[0]
    bad.gen_maps[key] = {k: const for k in gm}
    okb, witb = is_coherent(bad)
    assert not okb and witb is not None


def test_base_change_adjunction_counts():
    c2, c4 = cyclic(2), cyclic(4)
    phi = [h for h in hom_enumerate(c2, c4) if h(1) == 2][0]
    for msize in (1, 2):
        m = free_aset(c4, msize)
        for nsize in (1, 2):
            n = free_aset(c2, nsize)
            lhs = len(aset_homs(base_change(phi, n), m))
            rhs = len(aset_homs(n, restrict_scalars(phi, m)))
            assert lhs == rhs


def test_pushforward_and_pullback():
    d3 = dk(3)
    m2 = direct_sum(regular_aset(d3), regular_aset(d3))
    f1 = trivial_monoid()
    psi = MonoidHom(f1, d3, [], full_map={0: d3.identity})
    pf = pushforward(psi, tilde(m2))
    assert pf.stalks[0].size == m2.size
    idh = MonoidHom(d3, d3, list(d3.gens),
                    full_map={x: x for x in d3.elements()})
    pb = pullback(idh, regular_aset(d3))
    mod, _ = pb.sections(pb.base.all_points())
    assert aset_isomorphic(mod, regular_aset(d3))


def test_picard():
    assert picard(affine_scheme(dk(5))).is_trivial()
    assert picard(affine_scheme(cyclic(4))).is_trivial()
    assert picard(affine_scheme(nat())).is_trivial()
    assert picard(disjoint_union([trivial_monoid(), dk(3)])).is_trivial()
    assert picard(gl_n(2)).is_trivial()
    assert picard(p1()).invariants() == (1, [])


def test_trace():
    x = p1()
    assert trace_is_iso(LineBundleCocycle(x, {(0, 1): (1,)}, rank=1))
    assert trace_is_iso(LineBundleCocycle(affine_scheme(dk(3)), {}, rank=1))
    with pytest.raises(RankDefectError):
        trace_is_iso(LineBundleCocycle(x, {(0, 1): (0,)}, rank=2))
