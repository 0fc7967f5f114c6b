import json

from f1schemes.cli import main
from f1schemes.dsl import parse, print_document, resolve
from f1schemes.errors import DslError
from f1schemes.monoids import dk
from f1schemes.schemes import points_over

import pytest

SAMPLE = """
# sample document
monoid M = dk(5)
monoid B = presented <x | x^2 = x>
monoid L = lattice [[1,0],[0,1]]
monoid C3 = cyclic(3)
monoid Z = adjoin_zero(C3)
monoid P = product(B,C3)
monoid T = table { labels [e,a]; rows [[0,1],[1,1]] }
scheme X = p1
scheme A = spec(M)
scheme D = disjoint(M,B)
monoid U = nat(1)
monoid V = nat(1)
scheme Y = glue { chart U; chart V;
                  overlap (0,1) on [1] ~ [1] via linear [[-1]]; }
morphism f : C3 -> Z = { g -> g }
"""


def test_round_trip():
    doc = parse(SAMPLE)
    assert parse(print_document(doc)) == doc


def test_resolution():
    r = resolve(SAMPLE)
    assert r.monoid("M").size == 5
    assert r.monoid("B").size == 2
    assert r.monoid("T").size == 2
    assert r.monoid("P").size == 6
    y = r.scheme("Y")
    assert len(y.points) == 3
    assert points_over(y, dk(4)) == 5
    assert r.morphism("f").is_valid()


def test_finite_elementwise_glue():
    src = """
monoid A1 = dk(3)
monoid A2 = dk(3)
scheme W = glue { chart A1; chart A2;
                  overlap (0,1) on g ~ g via { g -> g; 0 -> 0 }; }
"""
    w = resolve(src).scheme("W")
    assert len(w.points) == 2


def test_errors_carry_spans():
    with pytest.raises(DslError) as exc:
        parse("monoid M = bogus(3)")
    assert exc.value.line == 1 and exc.value.col > 0
    with pytest.raises(DslError):
        resolve("monoid M = dk(3)\nmonoid N = adjoin_zero(Q)")
    with pytest.raises(DslError):
        parse("monoid M = dk(3")


@pytest.fixture
def doc_file(tmp_path):
    path = tmp_path / "doc.f1m"
    path.write_text(SAMPLE)
    return str(path)


def test_cli_spec_dot(doc_file, capsys):
    assert main(["-f", doc_file, "--out", "dot", "spec", "M"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("digraph")
    assert out.count("->") == 1


def test_cli_zeta_json_and_plot(doc_file, capsys, tmp_path):
    fig = tmp_path / "p1.png"
    assert main(["-f", doc_file, "zeta", "X", "--k", "2..8",
                 "--plot", str(fig)]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["poly_coeffs"] == [1, 1]
    assert data["polynomial"] is True
    assert fig.exists() and fig.stat().st_size > 0


def test_cli_zeta_text(doc_file, capsys):
    assert main(["-f", doc_file, "--out", "text", "zeta", "X",
                 "--k", "2..6"]) == 0
    out = capsys.readouterr().out
    assert "2\t3" in out and "zeta(s) = s*(s-1)" in out


def test_cli_points_deterministic(doc_file, capsys):
    assert main(["-f", doc_file, "--out", "text", "points", "X",
                 "--k", "2..5"]) == 0
    first = capsys.readouterr().out
    assert main(["-f", doc_file, "--out", "text", "points", "X",
                 "--k", "2..5"]) == 0
    assert capsys.readouterr().out == first
    assert first.splitlines() == ["2\t3", "3\t4", "4\t5", "5\t6"]


def test_cli_other_verbs(doc_file, capsys):
    assert main(["-f", doc_file, "pic", "X"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["rank"] == 1 and data["torsion"] == []
    assert main(["-f", doc_file, "--out", "text", "adjunction", "M",
                 "--ring", "6"]) == 0
    out = capsys.readouterr().out
    assert "equal\tTrue" in out
    assert main(["-f", doc_file, "--out", "text", "glnorder", "2",
                 "--k", "2..4"]) == 0
    out = capsys.readouterr().out
    assert "3\t8" in out
    assert main(["-f", doc_file, "--out", "text", "coherent", "M"]) == 0
    assert "coherent\tTrue" in capsys.readouterr().out
    assert main(["-f", doc_file, "--out", "text", "hom", "C3", "C3"]) == 0
    assert "count\t3" in capsys.readouterr().out
    assert main(["-f", doc_file, "--out", "text", "sections", "X"]) == 0
    assert "section\t1" in capsys.readouterr().out


def test_cli_domain_error_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.f1m"
    path.write_text("monoid M = dk(\n")
    assert main(["-f", str(path), "spec", "M"]) == 2
    err = capsys.readouterr().err
    assert "error:" in err
