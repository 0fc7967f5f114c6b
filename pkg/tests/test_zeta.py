from f1schemes.monoids import nat, trivial_monoid
from f1schemes.schemes import affine_scheme, gl_n, p1
from f1schemes.zeta import (CountTable, convergence_order, format_weil,
                            format_zeta, hasse_weil_crosscheck, interpolate,
                            limit_check, weil_series, zeta_report)

import pytest

KS = list(range(2, 11))


@pytest.mark.parametrize("scheme,coeffs,zstr", [
    (affine_scheme(trivial_monoid()), [1], "s"),
    (affine_scheme(nat()), [0, 1], "(s-1)"),
    (p1(), [1, 1], "s*(s-1)"),
    (gl_n(1), [-1, 1], "s^-1*(s-1)"),
], ids=["SpecF1", "A1", "P1", "GL1"])
def test_zeta_factorizations(scheme, coeffs, zstr):
    r = zeta_report(scheme, ks=KS)
    assert r.polynomial
    assert r.coeffs == coeffs
    assert r.zeta_string() == zstr


def test_gl1_erratum_flag():
    r = zeta_report(gl_n(1), ks=KS)
    assert any("erratum" in m for m in r.remarks)


def test_gl2_zeta():
    r = zeta_report(gl_n(2), ks=list(range(2, 9)))
    assert r.coeffs == [2, -4, 2]
    assert r.zeta_string() == "s^2*(s-1)^-4*(s-2)^2"


def test_p1_weil_closed_form():
    r = zeta_report(p1(), ks=KS)
    assert format_weil(r.weil_factors, 2) == "(1-T)^-1*(1-2T)^-1"


@pytest.mark.parametrize("coeffs", [[1], [0, 1], [1, 1], [-1, 1], [2, -4, 2]])
def test_weil_series_matches_exponential(coeffs):
    _, _, match = weil_series(coeffs, 2, 10)
    assert match


@pytest.mark.parametrize("coeffs", [[1], [0, 1], [1, 1], [-1, 1], [2, -4, 2]])
def test_limit_check(coeffs):
    dev, _ = limit_check(coeffs, [1.5, 2.5, 3.5], eps=1e-8)
    assert dev < 1e-5


def test_convergence_order():
    assert convergence_order([1, 1], 2.5) > 0.8


@pytest.mark.parametrize("x,p,n", [
    (affine_scheme(nat()), 2, 2),
    (affine_scheme(nat()), 3, 1),
    (gl_n(1), 5, 1),
    (p1(), 2, 3),
])
def test_hasse_weil_crosscheck(x, p, n):
    assert hasse_weil_crosscheck(x, p, n)


def test_non_polynomial_verdict():
    tab = CountTable("synthetic", [(k, 2 ** (k - 2)) for k in range(2, 8)])
    poly, coeffs, ff = interpolate(tab)
    assert not poly and ff == 7
    rep = zeta_report(table=tab)
    assert not rep.polynomial and rep.first_failure == 7
    assert any("not polynomial" in m for m in rep.remarks)
    assert '"first_failure": 7' in rep.to_json()
