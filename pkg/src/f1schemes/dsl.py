"""A small declarative language for monoids, schemes and morphisms.

Documents (conventionally ``.f1m`` files) are sequences of definitions:

    monoid M = dk(5)
    monoid B = presented <x | x^2 = x>
    monoid L = lattice [[1,0],[0,1]]
    scheme X = p1
    scheme Y = glue { chart M1; chart M2;
                      overlap (0,1) on [1] ~ [1] via linear [[-1]]; }
    morphism f : L -> M = { x -> y^2 }

The parser is hand-written recursive descent; every error carries a
line and column.  ``print_document`` emits a canonical form with
``parse(print_document(parse(s))) == parse(s)`` on abstract syntax.
"""

from dataclasses import dataclass, field

from .errors import DslError, ElementError, F1Error, GluingError
from .monoids import (MonoidHom, adjoin_zero, cyclic, dk, from_table,
                      inf_cyclic, lattice_monoid, localize, nat,
                      presented_monoid, product_monoid)
from .schemes import (Chart, MScheme, Overlap, affine_scheme, disjoint_union,
                      gl_n, p1)

KEYWORDS = {"monoid", "scheme", "morphism", "table", "labels", "rows",
            "presented", "lattice", "cyclic", "inf_cyclic", "nat", "dk",
            "adjoin_zero", "product", "spec", "glue", "chart", "overlap",
            "on", "via", "linear", "p1", "gl", "disjoint"}

PUNCT = ("->", "=", "{", "}", "(", ")", "[", "]", "<", ">", ",", ";", ":",
         "|", "^", "*", "~")


@dataclass
class Token:
    kind: str          # "name", "int", or the punctuation itself
    text: str
    line: int
    col: int


def tokenize(source):
    toks = []
    line, col = 1, 1
    i = 0
    n = len(source)
    while i < n:
        c = source[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c.isspace():
            i += 1
            col += 1
            continue
        if c == "#":
            while i < n and source[i] != "\n":
                i += 1
            continue
        if source.startswith("->", i):
            toks.append(Token("->", "->", line, col))
            i += 2
            col += 2
            continue
        if c == "-" and i + 1 < n and source[i + 1].isdigit():
            j = i + 1
            while j < n and source[j].isdigit():
                j += 1
            toks.append(Token("int", source[i:j], line, col))
            col += j - i
            i = j
            continue
        if c.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            toks.append(Token("int", source[i:j], line, col))
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            toks.append(Token("name", source[i:j], line, col))
            col += j - i
            i = j
            continue
        if c in "".join(PUNCT):
            toks.append(Token(c, c, line, col))
            i += 1
            col += 1
            continue
        raise DslError(f"unexpected character {c!r}", line, col)
    toks.append(Token("eof", "", line, col))
    return toks


# ---------------------------------------------------------------------------
# Abstract syntax

@dataclass
class Word:
    """A multiplicative word: list of (generator name, integer power)."""
    factors: tuple
    span: tuple = field(default=(0, 0), compare=False)


@dataclass
class TableExpr:
    labels: tuple
    rows: tuple
    span: tuple = field(default=(0, 0), compare=False)


@dataclass
class PresentedExpr:
    gens: tuple
    relations: tuple   # pairs of Word
    span: tuple = field(default=(0, 0), compare=False)


@dataclass
class LatticeExpr:
    vectors: tuple
    span: tuple = field(default=(0, 0), compare=False)


@dataclass
class BuiltinExpr:
    head: str          # cyclic, inf_cyclic, nat, dk, gl, p1
    args: tuple        # ints
    span: tuple = field(default=(0, 0), compare=False)


@dataclass
class RefExpr:
    head: str          # adjoin_zero, product, spec, disjoint
    names: tuple
    span: tuple = field(default=(0, 0), compare=False)


@dataclass
class OverlapDecl:
    i: int
    j: int
    f_i: object        # Word or vector tuple
    f_j: object
    mapping: object    # ("linear", matrix) or ("map", ((name, Word), ...))
    span: tuple = field(default=(0, 0), compare=False)


@dataclass
class GlueExpr:
    charts: tuple      # names
    overlaps: tuple
    span: tuple = field(default=(0, 0), compare=False)


@dataclass
class Definition:
    kind: str          # monoid | scheme | morphism
    name: str
    expr: object
    source: str = field(default="", compare=False)
    target: str = field(default="", compare=False)
    span: tuple = field(default=(0, 0), compare=False)


@dataclass
class MorphismExpr:
    entries: tuple     # ((name, Word), ...)
    span: tuple = field(default=(0, 0), compare=False)


@dataclass
class DslDocument:
    definitions: tuple

    def find(self, name, kind=None):
        for d in self.definitions:
            if d.name == name and (kind is None or d.kind == kind):
                return d
        raise DslError(f"undefined name {name!r}", 0, 0)


# ---------------------------------------------------------------------------
# Parser

class Parser:
    def __init__(self, toks):
        self.toks = toks
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise DslError(msg, tok.line, tok.col)

    def expect(self, kind, what=None):
        t = self.next()
        if t.kind != kind:
            self.fail(f"expected {what or kind}, found {t.text!r}", t)
        return t

    def expect_word(self, word):
        t = self.expect("name", word)
        if t.text != word:
            self.fail(f"expected {word!r}, found {t.text!r}", t)
        return t

    def at_word(self, word):
        t = self.peek()
        return t.kind == "name" and t.text == word

    def eat(self, kind):
        if self.peek().kind == kind:
            self.next()
            return True
        return False

    def span(self, tok):
        return (tok.line, tok.col)

    # -- document ----------------------------------------------------------

    def document(self):
        defs = []
        names = set()
        while self.peek().kind != "eof":
            d = self.definition()
            if d.name in names:
                self.fail(f"duplicate definition of {d.name!r}")
            names.add(d.name)
            defs.append(d)
        return DslDocument(tuple(defs))

    def definition(self):
        t = self.expect("name", "monoid, scheme or morphism")
        if t.text not in ("monoid", "scheme", "morphism"):
            self.fail("expected 'monoid', 'scheme' or 'morphism'", t)
        name = self.expect("name", "a name").text
        if t.text == "morphism":
            self.expect(":")
            src = self.expect("name", "source monoid name").text
            self.expect("->")
            dst = self.expect("name", "target monoid name").text
            self.expect("=")
            expr = self.morphism_expr()
            return Definition("morphism", name, expr, source=src, target=dst,
                              span=self.span(t))
        self.expect("=")
        expr = self.monoid_expr() if t.text == "monoid" else self.scheme_expr()
        return Definition(t.text, name, expr, span=self.span(t))

    # -- monoid expressions ------------------------------------------------

    def monoid_expr(self):
        t = self.peek()
        if t.kind != "name":
            self.fail("expected a monoid expression", t)
        head = t.text
        if head == "table":
            return self.table_expr()
        if head == "presented":
            return self.presented_expr()
        if head == "lattice":
            self.next()
            return LatticeExpr(self.vector_list(), span=self.span(t))
        if head in ("cyclic", "dk"):
            self.next()
            self.expect("(")
            arg = int(self.expect("int").text)
            self.expect(")")
            return BuiltinExpr(head, (arg,), span=self.span(t))
        if head in ("inf_cyclic", "nat"):
            self.next()
            args = ()
            if self.eat("("):
                args = (int(self.expect("int").text),)
                self.expect(")")
            return BuiltinExpr(head, args, span=self.span(t))
        if head == "adjoin_zero":
            self.next()
            self.expect("(")
            name = self.expect("name").text
            self.expect(")")
            return RefExpr(head, (name,), span=self.span(t))
        if head == "product":
            self.next()
            self.expect("(")
            a = self.expect("name").text
            self.expect(",")
            b = self.expect("name").text
            self.expect(")")
            return RefExpr(head, (a, b), span=self.span(t))
        self.fail(f"unknown monoid constructor {head!r}", t)

    def table_expr(self):
        t = self.expect_word("table")
        self.expect("{")
        self.expect_word("labels")
        self.expect("[")
        labels = [self.expect("name").text]
        while self.eat(","):
            labels.append(self.expect("name").text)
        self.expect("]")
        self.expect(";")
        self.expect_word("rows")
        rows = self.vector_list()
        self.eat(";")
        self.expect("}")
        return TableExpr(tuple(labels), rows, span=self.span(t))

    def presented_expr(self):
        t = self.expect_word("presented")
        self.expect("<")
        gens = [self.expect("name").text]
        while self.eat(","):
            gens.append(self.expect("name").text)
        self.expect("|")
        rels = []
        while True:
            lhs = self.word()
            self.expect("=")
            rhs = self.word()
            rels.append((lhs, rhs))
            if not self.eat(","):
                break
        self.expect(">")
        return PresentedExpr(tuple(gens), tuple(rels), span=self.span(t))

    def label_token(self):
        t = self.next()
        if t.kind not in ("name", "int"):
            self.fail(f"expected an element label, found {t.text!r}", t)
        return t

    def word(self):
        t = self.peek()
        factors = []
        if t.kind == "int" and t.text == "1":
            self.next()
            return Word((), span=self.span(t))
        while True:
            g = self.label_token()
            power = 1
            if self.eat("^"):
                power = int(self.expect("int").text)
            factors.append((g.text, power))
            if not self.eat("*"):
                break
        return Word(tuple(factors), span=self.span(t))

    def vector(self):
        self.expect("[")
        out = [int(self.expect("int").text)]
        while self.eat(","):
            out.append(int(self.expect("int").text))
        self.expect("]")
        return tuple(out)

    def vector_list(self):
        self.expect("[")
        out = [self.vector()]
        while self.eat(","):
            out.append(self.vector())
        self.expect("]")
        return tuple(out)

    # -- scheme expressions ------------------------------------------------

    def scheme_expr(self):
        t = self.peek()
        if t.kind != "name":
            self.fail("expected a scheme expression", t)
        head = t.text
        if head == "p1":
            self.next()
            return BuiltinExpr("p1", (), span=self.span(t))
        if head == "gl":
            self.next()
            self.expect("(")
            n = int(self.expect("int").text)
            self.expect(")")
            return BuiltinExpr("gl", (n,), span=self.span(t))
        if head == "spec":
            self.next()
            self.expect("(")
            name = self.expect("name").text
            self.expect(")")
            return RefExpr("spec", (name,), span=self.span(t))
        if head == "disjoint":
            self.next()
            self.expect("(")
            names = [self.expect("name").text]
            while self.eat(","):
                names.append(self.expect("name").text)
            self.expect(")")
            return RefExpr("disjoint", tuple(names), span=self.span(t))
        if head == "glue":
            return self.glue_expr()
        self.fail(f"unknown scheme constructor {head!r}", t)

    def glue_expr(self):
        t = self.expect_word("glue")
        self.expect("{")
        charts = []
        overlaps = []
        while not self.eat("}"):
            if self.at_word("chart"):
                self.next()
                charts.append(self.expect("name").text)
                self.expect(";")
            elif self.at_word("overlap"):
                overlaps.append(self.overlap_decl())
            else:
                self.fail("expected 'chart' or 'overlap'")
        return GlueExpr(tuple(charts), tuple(overlaps), span=self.span(t))

    def overlap_decl(self):
        t = self.expect_word("overlap")
        self.expect("(")
        i = int(self.expect("int").text)
        self.expect(",")
        j = int(self.expect("int").text)
        self.expect(")")
        self.expect_word("on")
        f_i = self.open_elem()
        self.expect("~")
        f_j = self.open_elem()
        self.expect_word("via")
        if self.at_word("linear"):
            self.next()
            mapping = ("linear", self.vector_list())
        else:
            self.expect("{")
            entries = []
            while True:
                g = self.label_token().text
                self.expect("->")
                entries.append((g, self.word()))
                if not self.eat(";") or self.peek().kind == "}":
                    break
            self.expect("}")
            mapping = ("map", tuple(entries))
        self.expect(";")
        return OverlapDecl(i, j, f_i, f_j, mapping, span=self.span(t))

    def open_elem(self):
        if self.peek().kind == "[":
            return self.vector()
        return self.word()

    # -- morphisms ---------------------------------------------------------

    def morphism_expr(self):
        t = self.expect("{")
        entries = []
        while True:
            g = self.label_token().text
            self.expect("->")
            entries.append((g, self.word()))
            if not self.eat(";") or self.peek().kind == "}":
                break
        self.expect("}")
        return MorphismExpr(tuple(entries), span=self.span(t))


def parse(source):
    return Parser(tokenize(source)).document()


# ---------------------------------------------------------------------------
# Printer

def _print_word(w):
    if not w.factors:
        return "1"
    parts = []
    for g, p in w.factors:
        parts.append(g if p == 1 else f"{g}^{p}")
    return "*".join(parts)


def _print_vec(v):
    return "[" + ",".join(str(c) for c in v) + "]"


def _print_veclist(vs):
    return "[" + ",".join(_print_vec(v) for v in vs) + "]"


def _print_mapping(mapping):
    kind, body = mapping
    if kind == "linear":
        return "linear " + _print_veclist(body)
    inner = "; ".join(f"{g} -> {_print_word(w)}" for g, w in body)
    return "{ " + inner + " }"


def _print_expr(e):
    if isinstance(e, TableExpr):
        return ("table { labels [" + ",".join(e.labels) + "]; rows "
                + _print_veclist(e.rows) + " }")
    if isinstance(e, PresentedExpr):
        rels = ", ".join(f"{_print_word(l)} = {_print_word(r)}"
                         for l, r in e.relations)
        return "presented <" + ",".join(e.gens) + " | " + rels + ">"
    if isinstance(e, LatticeExpr):
        return "lattice " + _print_veclist(e.vectors)
    if isinstance(e, BuiltinExpr):
        if not e.args:
            return e.head
        return e.head + "(" + ",".join(str(a) for a in e.args) + ")"
    if isinstance(e, RefExpr):
        return e.head + "(" + ",".join(e.names) + ")"
    if isinstance(e, GlueExpr):
        lines = [f"chart {c};" for c in e.charts]
        for ov in e.overlaps:
            fi = _print_vec(ov.f_i) if isinstance(ov.f_i, tuple) \
                else _print_word(ov.f_i)
            fj = _print_vec(ov.f_j) if isinstance(ov.f_j, tuple) \
                else _print_word(ov.f_j)
            lines.append(f"overlap ({ov.i},{ov.j}) on {fi} ~ {fj} "
                         f"via {_print_mapping(ov.mapping)};")
        return "glue { " + " ".join(lines) + " }"
    if isinstance(e, MorphismExpr):
        inner = "; ".join(f"{g} -> {_print_word(w)}" for g, w in e.entries)
        return "{ " + inner + " }"
    raise F1Error(f"unprintable node {e!r}")


def print_document(doc):
    lines = []
    for d in doc.definitions:
        if d.kind == "morphism":
            lines.append(f"morphism {d.name} : {d.source} -> {d.target} = "
                         + _print_expr(d.expr))
        else:
            lines.append(f"{d.kind} {d.name} = " + _print_expr(d.expr))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Resolver

def _err(node, msg):
    line, col = node.span
    return DslError(msg, line, col)


def _word_exponents(word, gens, node):
    out = [0] * len(gens)
    for g, p in word.factors:
        if g not in gens:
            raise _err(node, f"unknown generator {g!r}")
        if p < 0:
            raise _err(node, "negative powers are not allowed here")
        out[gens.index(g)] += p
    return tuple(out)


def _eval_word_finite(word, a, node, target=None, num=None):
    """Evaluate a label word in the finite monoid a, or through
    num: a -> target allowing negative powers of units of target."""
    m = target if target is not None else a
    out = m.identity
    for g, p in word.factors:
        x = a.index_of_label(g) if g in a.labels else None
        if x is None:
            raise _err(node, f"no element labelled {g!r}")
        y = num(x) if num is not None else x
        if p < 0:
            inv = m.inverse(y)
            if inv is None:
                raise _err(node, f"{g!r} is not invertible here")
            y, p = inv, -p
        for _ in range(p):
            out = m.mul(out, y)
    return out


def _matrix_inverse_unimodular(mat, node):
    n = len(mat)
    if any(len(r) != n for r in mat):
        raise _err(node, "linear gluing matrix must be square")
    # adjugate over the integers; determinant must be a unit
    from fractions import Fraction
    aug = [[Fraction(mat[i][j]) for j in range(n)]
           + [Fraction(1 if i == j else 0) for j in range(n)]
           for i in range(n)]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            raise _err(node, "linear gluing matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        det *= aug[c][c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    if det not in (1, -1):
        raise _err(node, "linear gluing matrix must have determinant +-1")
    inv = [[int(aug[i][n + j]) for j in range(n)] for i in range(n)]
    return inv


def _resolve_overlap(decl, charts):
    if not (0 <= decl.i < len(charts)) or not (0 <= decl.j < len(charts)):
        raise _err(decl, "overlap chart index out of range")
    a_i = charts[decl.i].monoid
    a_j = charts[decl.j].monoid
    kind, body = decl.mapping
    if kind == "linear":
        if a_i.is_finite or a_j.is_finite:
            raise _err(decl, "'linear' gluing needs lattice charts")
        f_i, f_j = decl.f_i, decl.f_j
        if not isinstance(f_i, tuple) or not isinstance(f_j, tuple):
            raise _err(decl, "lattice overlap elements must be vectors")
        if not a_i.contains(f_i) or not a_j.contains(f_j):
            raise _err(decl, "overlap element not in its chart monoid")
        mat = [list(r) for r in body]
        inv_mat = _matrix_inverse_unimodular(mat, decl)
        loc_i, _ = localize(a_i, [f_i])
        loc_j, _ = localize(a_j, [f_j])

        def apply(m, v):
            return tuple(sum(m[r][c] * v[c] for c in range(len(v)))
                         for r in range(len(m)))

        iso = MonoidHom(loc_i, loc_j, [apply(mat, g) for g in loc_i.gens])
        inv = MonoidHom(loc_j, loc_i, [apply(inv_mat, g) for g in loc_j.gens])
        return Overlap(decl.i, decl.j, f_i, f_j, iso, inv)
    # elementwise map between finite charts
    if not (a_i.is_finite and a_j.is_finite):
        raise _err(decl, "elementwise gluing needs finite charts")
    f_i = _eval_word_finite(decl.f_i, a_i, decl)
    f_j = _eval_word_finite(decl.f_j, a_j, decl)
    loc_i, num_i = localize(a_i, [f_i])
    loc_j, num_j = localize(a_j, [f_j])
    known = {a_i.identity: loc_j.identity}
    for g, w in body:
        x = a_i.index_of_label(g)
        known[x] = _eval_word_finite(w, a_j, decl, target=loc_j, num=num_j)
    # close multiplicatively over all of A_i
    changed = True
    while changed:
        changed = False
        for x in list(known):
            for y in list(known):
                z = a_i.mul(x, y)
                v = loc_j.mul(known[x], known[y])
                if z in known:
                    if known[z] != v:
                        raise _err(decl, "gluing map is inconsistent")
                else:
                    known[z] = v
                    changed = True
    missing = [a_i.label(x) for x in a_i.elements() if x not in known]
    if missing:
        raise _err(decl, "gluing map does not determine the images of "
                   + ", ".join(sorted(missing)))
    # extend to the localization classwise: (m, s) -> known[m] / known[s]
    reps = {}
    for (m, s), c in loc_i._class_of.items():
        reps.setdefault(c, (m, s))
    full = {}
    for c, (m, s) in reps.items():
        inv_s = loc_j.inverse(known[s])
        if inv_s is None:
            raise _err(decl, "gluing map sends an inverted element to a "
                       "non-unit")
        full[c] = loc_j.mul(known[m], inv_s)
    if len(set(full.values())) != len(full) or len(full) != loc_j.size:
        raise _err(decl, "gluing map is not an isomorphism of the overlaps")
    iso = MonoidHom(loc_i, loc_j, [full[g] for g in loc_i.gens], full_map=full)
    back = {v: k for k, v in full.items()}
    inv = MonoidHom(loc_j, loc_i, [back[g] for g in loc_j.gens], full_map=back)
    return Overlap(decl.i, decl.j, f_i, f_j, iso, inv)


class Resolver:
    """Turns a DslDocument into library objects, in definition order."""

    def __init__(self, doc):
        self.doc = doc
        self.monoids = {}
        self.schemes = {}
        self.morphisms = {}
        for d in doc.definitions:
            if d.kind == "monoid":
                self.monoids[d.name] = self._monoid(d)
            elif d.kind == "scheme":
                self.schemes[d.name] = self._scheme(d)
            else:
                self.morphisms[d.name] = self._morphism(d)

    def monoid(self, name):
        if name not in self.monoids:
            raise DslError(f"undefined monoid {name!r}", 0, 0)
        return self.monoids[name]

    def scheme(self, name):
        if name in self.schemes:
            return self.schemes[name]
        if name in self.monoids:
            return affine_scheme(self.monoids[name], name=f"Spec({name})")
        raise DslError(f"undefined scheme {name!r}", 0, 0)

    def morphism(self, name):
        if name not in self.morphisms:
            raise DslError(f"undefined morphism {name!r}", 0, 0)
        return self.morphisms[name]

    def _monoid(self, d):
        e = d.expr
        try:
            if isinstance(e, TableExpr):
                m = from_table([list(r) for r in e.rows],
                               labels=list(e.labels), name=d.name)
                return m
            if isinstance(e, PresentedExpr):
                gens = list(e.gens)
                rels = [(_word_exponents(l, gens, e), _word_exponents(r, gens, e))
                        for l, r in e.relations]
                return presented_monoid(gens, rels, name=d.name)
            if isinstance(e, LatticeExpr):
                return lattice_monoid([list(v) for v in e.vectors],
                                      name=d.name)
            if isinstance(e, BuiltinExpr):
                if e.head == "cyclic":
                    return cyclic(e.args[0], name=d.name)
                if e.head == "dk":
                    return dk(e.args[0])
                if e.head == "nat":
                    return nat(e.args[0] if e.args else 1, name=d.name)
                if e.head == "inf_cyclic":
                    return inf_cyclic(e.args[0] if e.args else 1, name=d.name)
            if isinstance(e, RefExpr):
                if e.head == "adjoin_zero":
                    return adjoin_zero(self.monoid(e.names[0]), name=d.name)
                if e.head == "product":
                    return product_monoid(self.monoid(e.names[0]),
                                          self.monoid(e.names[1]), name=d.name)
        except DslError:
            raise
        except F1Error as exc:
            raise _err(e, str(exc))
        raise _err(e, "not a monoid expression")

    def _scheme(self, d):
        e = d.expr
        try:
            if isinstance(e, BuiltinExpr):
                if e.head == "p1":
                    return p1(name=d.name)
                if e.head == "gl":
                    return gl_n(e.args[0], name=d.name)
            if isinstance(e, RefExpr):
                if e.head == "spec":
                    return affine_scheme(self.monoid(e.names[0]), name=d.name)
                if e.head == "disjoint":
                    return disjoint_union([self.monoid(n) for n in e.names],
                                          name=d.name)
            if isinstance(e, GlueExpr):
                charts = [Chart(n, self.monoid(n)) for n in e.charts]
                overlaps = [_resolve_overlap(ov, charts) for ov in e.overlaps]
                try:
                    return MScheme(charts, overlaps, name=d.name)
                except GluingError as exc:
                    raise _err(e, f"gluing failed: {exc}")
        except DslError:
            raise
        except F1Error as exc:
            raise _err(e, str(exc))
        raise _err(e, "not a scheme expression")

    def _morphism(self, d):
        src = self.monoid(d.source)
        dst = self.monoid(d.target)
        if not (src.is_finite and dst.is_finite):
            raise _err(d.expr, "morphism definitions need finite monoids")
        known = {src.identity: dst.identity}
        for g, w in d.expr.entries:
            known[src.index_of_label(g)] = _eval_word_finite(w, dst, d.expr)
        changed = True
        while changed:
            changed = False
            for x in list(known):
                for y in list(known):
                    z = src.mul(x, y)
                    v = dst.mul(known[x], known[y])
                    if z in known:
                        if known[z] != v:
                            raise _err(d.expr, "morphism is inconsistent")
                    else:
                        known[z] = v
                        changed = True
        missing = [src.label(x) for x in src.elements() if x not in known]
        if missing:
            raise _err(d.expr, "morphism does not determine the images of "
                       + ", ".join(sorted(missing)))
        h = MonoidHom(src, dst, [known[g] for g in src.gens], full_map=known)
        if not h.is_valid():
            raise _err(d.expr, "not a homomorphism")
        return h


def resolve(source_or_doc):
    doc = source_or_doc
    if isinstance(doc, str):
        doc = parse(doc)
    return Resolver(doc)
