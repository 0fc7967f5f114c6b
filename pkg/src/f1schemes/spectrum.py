"""Prime spectra of monoids with the Zariski topology.

A prime ideal of a commutative monoid A is a proper ideal p such that
A without p is a submonoid; equivalently xy in p forces x in p or y in
p.  The empty ideal is the generic point and A minus its units is the
unique closed point.  All spectra here are finite posets, and since
every specialization-closed set is a finite union of sets V(p), the
Zariski topology coincides with the Alexandrov topology of the
specialization order: the open sets are exactly the generization-closed
ones.

Primes are canonically keyed by their trace on the generator list
(p equals the ideal generated by p intersect gens, by primality applied
to factorizations into generators).
"""

import itertools
import json
from fractions import Fraction

from .errors import ElementError, F1Error, UnsupportedInstanceError
from .monoids import (FiniteMonoid, LatticeMonoid, MonoidHom, hom_enumerate,
                      localize, product_monoid, trivial_monoid)
from .intlin import positive_functional


class PrimeIdeal:
    """A prime ideal, keyed by the subset of generators it contains."""

    def __init__(self, owner, gen_key, element_set=None, functional=None):
        self.owner = owner
        self.gen_key = frozenset(gen_key)
        self.element_set = element_set
        self.functional = functional

    def contains(self, x):
        if self.element_set is not None:
            return x in self.element_set
        # lattice prime: positive value under the face certificate
        if not self.owner.contains(x):
            return False
        val = sum(Fraction(w) * c for w, c in zip(self.functional, x))
        return val > 0

    def is_empty(self):
        if self.element_set is not None:
            return not self.element_set
        return not self.gen_key

    def subset_of(self, other):
        if self.element_set is not None and other.element_set is not None:
            return self.element_set <= other.element_set
        return self.gen_key <= other.gen_key

    def label(self):
        if not self.gen_key:
            return "()"
        labs = sorted(self.owner.label(g) for g in self.gen_key)
        return "(" + ",".join(labs) + ")"

    def __eq__(self, other):
        return (isinstance(other, PrimeIdeal) and self.owner is other.owner
                and self.gen_key == other.gen_key)

    def __hash__(self):
        return hash(self.gen_key)

    def __repr__(self):
        return f"<prime {self.label()}>"


class SpecSpace:
    """The spectrum of a monoid as a finite T0 space."""

    def __init__(self, owner, points):
        self.owner = owner
        self.points = list(points)
        self.index = {p.gen_key: i for i, p in enumerate(self.points)}
        n = len(self.points)
        self.leq = [[self.points[i].subset_of(self.points[j])
                     for j in range(n)] for i in range(n)]
        self.generic = next(i for i, p in enumerate(self.points) if p.is_empty())
        # the closed point is the unique maximal prime
        maxima = [i for i in range(n)
                  if not any(self.leq[i][j] and j != i for j in range(n))]
        if len(maxima) != 1:
            raise F1Error("spectrum has no unique closed point")
        self.closed = maxima[0]

    def __len__(self):
        return len(self.points)

    def point(self, i):
        return self.points[i]

    def all_points(self):
        return frozenset(range(len(self.points)))

    def is_open(self, subset):
        """Open = closed under generization (passing to smaller primes)."""
        s = set(subset)
        return all(j in s
                   for i in s for j in range(len(self.points))
                   if self.leq[j][i])

    def d_open(self, f):
        """The basic open D(f) of primes not containing f."""
        if not self.owner.contains(f):
            raise ElementError(f"{f} is not an element")
        return frozenset(i for i, p in enumerate(self.points)
                         if not p.contains(f))
    def v_closed(self, ideal):
        """V(a): primes containing the ideal a."""
        return frozenset(i for i, p in enumerate(self.points)
                         if all(p.contains(g) for g in ideal.gens))

    def minimal_in(self, subset):
        s = set(subset)
        return [i for i in s
                if not any(self.leq[j][i] and j != i for j in s)]

    def maximal_in(self, subset):
        s = set(subset)
        return [i for i in s
                if not any(self.leq[i][j] and j != i for j in s)]

    # -- reports -----------------------------------------------------------

    def to_json(self):
        pts = [self.points[i].label() for i in range(len(self.points))]
        order = sorted([pts[i], pts[j]]
                       for i in range(len(self.points))
                       for j in range(len(self.points))
                       if i != j and self.leq[i][j])
        return json.dumps({
            "points": sorted(pts),
            "order": order,
            "generic_point": pts[self.generic],
            "closed_point": pts[self.closed],
        }, sort_keys=True, indent=2)

    def to_dot(self):
        lines = ["digraph spec {"]
        pts = [self.points[i].label() for i in range(len(self.points))]
        for lab in sorted(pts):
            lines.append(f'  "{lab}";')
        for i, j in self.cover_relations():
            lines.append(f'  "{pts[i]}" -> "{pts[j]}";')
        lines.append("}")
        return "\n".join(lines)

    def cover_relations(self):
        n = len(self.points)
        out = []
        for i in range(n):
            for j in range(n):
                if i == j or not self.leq[i][j]:
                    continue
                if any(k != i and k != j and self.leq[i][k] and self.leq[k][j]
                       for k in range(n)):
                    continue
                out.append((i, j))
        return sorted(out)


def spec(a):
    """The prime spectrum of a zoo monoid."""
    if a.is_finite:
        return _spec_finite(a)
    if isinstance(a, LatticeMonoid):
        return _spec_lattice(a)
    raise UnsupportedInstanceError(f"no spectrum for {a!r}")


def _spec_finite(a):
    from .monoids import ideal_generated
    points = []
    seen = set()
    for r in range(len(a.gens) + 1):
        for combo in itertools.combinations(a.gens, r):
            ideal = ideal_generated(a, combo)
            elems = ideal.element_set
            if elems in seen:
                continue
            if a.identity in elems:
                continue
            comp = frozenset(a.elements()) - elems
            # complement must be a submonoid
            if not all(a.mul(x, y) in comp for x in comp for y in comp):
                continue
            seen.add(elems)
            key = frozenset(g for g in a.gens if g in elems)
            points.append(PrimeIdeal(a, key, element_set=elems))
    return SpecSpace(a, points)


def _spec_lattice(a):
    unit_gens = [list(a.gens[i]) for i in a.unit_gen_idx]
    pointed = list(a.pointed_idx)
    points = []
    for r in range(len(pointed) + 1):
        for excl in itertools.combinations(pointed, r):
            kept = [list(a.gens[i]) for i in pointed if i not in excl]
            excluded = [list(a.gens[i]) for i in excl]
            if not excluded:
                points.append(PrimeIdeal(a, frozenset(),
                                         functional=tuple([0] * a.dim)))
                continue
            w = positive_functional(unit_gens + kept, excluded, a.dim)
            if w is None:
                continue
            key = frozenset(a.gens[i] for i in excl)
            points.append(PrimeIdeal(a, key, functional=tuple(w)))
    return SpecSpace(a, points)


# ---------------------------------------------------------------------------
# Structure sheaf

class StructureSheaf:
    """Stalk system of a spectrum with its generization maps."""

    def __init__(self, base):
        self.base = base
        self._stalks = {}

    def stalk(self, i):
        """The localization A_p at point index i, with the map A -> A_p."""
        if i not in self._stalks:
            a = self.base.owner
            p = self.base.points[i]
            if a.is_finite:
                s_gens = sorted(x for x in a.elements() if not p.contains(x))
            else:
                s_gens = [g for g in a.gens if g not in p.gen_key]
            self._stalks[i] = localize(a, s_gens, name=f"stalk{p.label()}")
        return self._stalks[i]

    def generization_map(self, i, j):
        """The localization map A_p -> A_q for q a generization of p.

        Requires leq[j][i] (q = point j is contained in p = point i).
        """
        assert self.base.leq[j][i]
        src, _ = self.stalk(i)
        tgt, _ = self.stalk(j)
        a = self.base.owner
        if a.is_finite:
            fm = {}
            for x in src.elements():
                pairs = [pq for pq, c in src._class_of.items() if c == x]
                m, s = pairs[0]
                fm[x] = tgt.frac(m, s)
            return MonoidHom(src, tgt, [fm[g] for g in src.gens], full_map=fm)
        # lattice localizations all live inside the same Z^d
        return MonoidHom(src, tgt, list(src.gens))

    def sections(self, u):
        """The limit of the stalks over the open set u.

        Returns (monoid, restrictions) where restrictions maps each point
        index in u to a MonoidHom sections -> stalk.
        """
        base = self.base
        if not base.is_open(u):
            raise ElementError("section domain is not open")
        u = frozenset(u)
        a = base.owner
        if not u:
            t = trivial_monoid()
            return t, {}
        top = [i for i in u if all(base.leq[j][i] for j in u)]
        if top:
            st, num = self.stalk(top[0])
            restr = {}
            for j in u:
                restr[j] = (MonoidHom(st, st, list(st.gens),
                                      full_map={x: x for x in st.elements()}
                                      if st.is_finite else None)
                            if j == top[0] else self.generization_map(top[0], j))
            return st, restr
        if a.is_finite:
            return self._finite_limit(u)
        return self._lattice_limit(u)

    def _finite_limit(self, u):
        base = self.base
        maxpts = base.maximal_in(u)
        stalks = {i: self.stalk(i)[0] for i in u}
        gmaps = {(i, j): self.generization_map(i, j)
                 for i in u for j in u if i != j and base.leq[j][i]}
        families = []
        for combo in itertools.product(*(stalks[i].elements() for i in maxpts)):
            fam = dict(zip(maxpts, combo))
            ok = True
            for j in u:
                if j in fam:
                    continue
                vals = {gmaps[(i, j)](fam[i]) for i in maxpts if base.leq[j][i]}
                if len(vals) != 1:
                    ok = False
                    break
                fam[j] = vals.pop()
            if ok:
                # cross-compatibility between non-maximal pairs
                for (i, j), g in gmaps.items():
                    if i in fam and j in fam and g(fam[i]) != fam[j]:
                        ok = False
                        break
            if ok:
                families.append(tuple(fam[i] for i in sorted(u)))
        order = sorted(u)
        idx = {f: n for n, f in enumerate(families)}
        table = []
        for f in families:
            row = []
            for g in families:
                prod = tuple(stalks[i].mul(x, y)
                             for i, x, y in zip(order, f, g))
                row.append(idx[prod])
            table.append(row)
        labels = ["(" + ",".join(stalks[i].label(x)
                                 for i, x in zip(order, f)) + ")"
                  for f in families]
        m = FiniteMonoid(table, labels=labels)
        restr = {}
        for pos, i in enumerate(order):
            fm = {idx[f]: f[pos] for f in families}
            restr[i] = MonoidHom(m, stalks[i], [fm[g] for g in m.gens],
                                 full_map=fm)
        return m, restr

    def _lattice_limit(self, u):
        # all stalks embed in Z^d; the limit is the intersection of the
        # stalks at the maximal points of u
        base = self.base
        maxpts = base.maximal_in(u)
        stalks = [self.stalk(i)[0] for i in maxpts]
        inter = intersect_lattice_monoids(base.owner.dim, stalks)
        restr = {}
        for j in u:
            restr[j] = MonoidHom(inter, self.stalk(j)[0], list(inter.gens))
        return inter, restr


def intersect_lattice_monoids(dim, monoids):
    """The intersection of finitely generated submonoids of Z^dim.

    Handles the cases needed for sections of zoo schemes: one monoid
    contained in all others, a group intersection, a trivial cone
    intersection, and a bounded Hilbert-style search in low dimension.
    """
    from .intlin import fm_solve, hermite_basis, integer_kernel, transpose

    monoids = list(monoids)
    if len(monoids) == 1:
        return monoids[0]
    # containment shortcut
    for m in monoids:
        if all(other is m or all(other.contains(g) for g in m.gens)
               for other in monoids):
            return m

    def in_all(v):
        return all(m.contains(v) for m in monoids)

    # does the rational cone intersection contain a nonzero vector?
    def cone_nontrivial():
        for j in range(dim):
            for sign in (1, -1):
                # lambda variables per monoid; equalities tie the combos
                nv = sum(len(m.gens) for m in monoids)
                cons = []
                off = 0
                offs = []
                for m in monoids:
                    offs.append(off)
                    for t in range(len(m.gens)):
                        e = [0] * nv
                        e[off + t] = 1
                        cons.append((e, 0, False))
                    off += len(m.gens)
                first = monoids[0]
                for m, o in zip(monoids[1:], offs[1:]):
                    for c in range(dim):
                        row = [0] * nv
                        for t, g in enumerate(first.gens):
                            row[t] += g[c]
                        for t, g in enumerate(m.gens):
                            row[o + t] -= g[c]
                        cons.append((row, 0, False))
                        cons.append(([-x for x in row], 0, False))
                row = [0] * nv
                for t, g in enumerate(first.gens):
                    row[t] = sign * g[j]
                cons.append((row, 1, False))
                if fm_solve(cons, nv) is not None:
                    return True
        return False

    # group case: every monoid is a group (lattice)
    if all(not m.pointed_idx for m in monoids):
        basis = [list(b) for b in monoids[0].unit_basis]
        for m in monoids[1:]:
            other = [list(b) for b in m.unit_basis]
            # intersection of lattices via the kernel of [B1 | -B2]
            cols = transpose(basis + [[-c for c in row] for row in other])
            joint = integer_kernel(cols) if cols else []
            vecs = []
            for k in joint:
                v = [0] * dim
                for coef, row in zip(k[:len(basis)], basis):
                    for c in range(dim):
                        v[c] += coef * row[c]
                vecs.append(v)
            basis = hermite_basis(vecs)
        gens = [tuple(b) for b in basis] + [tuple(-c for c in b) for b in basis]
        if not gens:
            gens = [tuple([0] * dim)]
        return LatticeMonoid(dim, gens, name="sections")

    if not cone_nontrivial():
        return LatticeMonoid(dim, [tuple([0] * dim)], name="sections")

    # bounded search for a Hilbert-style generating set
    if dim > 3:
        raise UnsupportedInstanceError(
            "lattice section intersection beyond dimension 3")
    prev = None
    for bound in (2, 4, 6, 8, 12):
        members = [v for v in itertools.product(range(-bound, bound + 1),
                                                repeat=dim)
                   if any(v) and in_all(v)]
        if not members:
            prev = []
            continue
        gens = _reduce_generators(dim, members)
        if prev is not None and sorted(prev) == sorted(gens):
            return LatticeMonoid(dim, gens, name="sections")
        prev = gens
    raise UnsupportedInstanceError(
        "lattice section intersection did not stabilize")


def _reduce_generators(dim, members):
    mset = set(members)
    keep = []
    for v in sorted(members, key=lambda v: sum(abs(c) for c in v)):
        sub = LatticeMonoid(dim, keep or [tuple([0] * dim)])
        if not sub.contains(v):
            keep.append(v)
    return keep


# ---------------------------------------------------------------------------
# Morphisms of spectra

class SpecMorphism:
    """A local morphism Spec B -> Spec A induced by phi: A -> B."""

    def __init__(self, phi, spec_a=None, spec_b=None):
        self.phi = phi
        self.spec_a = spec_a if spec_a is not None else spec(phi.source)
        self.spec_b = spec_b if spec_b is not None else spec(phi.target)
        self.point_map = {}
        for i, q in enumerate(self.spec_b.points):
            key = frozenset(g for g in phi.source.generators()
                            if q.contains(phi(g)))
            self.point_map[i] = self.spec_a.index[key]

    def is_continuous(self):
        leq_b, leq_a = self.spec_b.leq, self.spec_a.leq
        n = len(self.spec_b.points)
        return all(leq_a[self.point_map[i]][self.point_map[j]]
                   for i in range(n) for j in range(n) if leq_b[i][j])

    def stalk_hom(self, i):
        """The induced map A_{f(q_i)} -> B_{q_i} on stalks."""
        sheaf_a = StructureSheaf(self.spec_a)
        sheaf_b = StructureSheaf(self.spec_b)
        src, num_a = sheaf_a.stalk(self.point_map[i])
        tgt, num_b = sheaf_b.stalk(i)
        a, b = self.phi.source, self.phi.target
        if a.is_finite and b.is_finite:
            fm = {}
            for x in src.elements():
                m, s = next(pq for pq, c in src._class_of.items() if c == x)
                fm[x] = tgt.frac(self.phi(m), self.phi(s))
            return MonoidHom(src, tgt, [fm[g] for g in src.gens], full_map=fm)
        raise UnsupportedInstanceError("stalk homs materialized for finite case")

    def is_local(self):
        """Units pull back to exactly the units on every stalk."""
        for i in range(len(self.spec_b.points)):
            h = self.stalk_hom(i)
            src, tgt = h.source, h.target
            tunits = set(tgt.units())
            sunits = set(src.units())
            for x in src.elements():
                if (h(x) in tunits) != (x in sunits):
                    return False
        return True


def spec_morphism(phi):
    return SpecMorphism(phi)


def count_local_morphisms(spec_b, spec_a):
    """Count local morphisms Spec B -> Spec A built from scratch.

    Enumerates monotone point maps together with local stalk-hom
    families commuting with the generization maps; this is independent
    of hom_enumerate on A -> B, which Prop-style duality says must give
    the same count.
    """
    sheaf_a = StructureSheaf(spec_a)
    sheaf_b = StructureSheaf(spec_b)
    nb, na = len(spec_b.points), len(spec_a.points)
    total = 0
    for pm in itertools.product(range(na), repeat=nb):
        if not all(spec_a.leq[pm[i]][pm[j]]
                   for i in range(nb) for j in range(nb) if spec_b.leq[i][j]):
            continue
        choices = []
        for i in range(nb):
            src, _ = sheaf_a.stalk(pm[i])
            tgt, _ = sheaf_b.stalk(i)
            tunits = set(tgt.units())
            sunits = set(src.units())
            local = [h for h in hom_enumerate(src, tgt)
                     if all((h(x) in tunits) == (x in sunits)
                            for x in src.elements())]
            choices.append(local)
        for combo in itertools.product(*choices):
            ok = True
            for i in range(nb):
                for j in range(nb):
                    if i == j or not spec_b.leq[j][i]:
                        continue
                    gb = sheaf_b.generization_map(i, j)
                    ga = sheaf_a.generization_map(pm[i], pm[j])
                    src_i = combo[i].source
                    for x in src_i.elements():
                        if gb(combo[i](x)) != combo[j](ga(x)):
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if ok:
                total += 1
    return total
