"""Commutative monoids with decidable equality and membership.

The instance zoo is closed:

* ``FiniteMonoid`` -- an explicit multiplication table on indices
  ``0..n-1``, optionally carrying a complete presentation (generator
  indices plus relations between exponent words) which speeds up
  homomorphism enumeration.
* ``LatticeMonoid`` -- a finitely generated submonoid of Z^d, written
  additively on integer vectors but treated multiplicatively throughout
  (the group C_inf is the lattice Z, the free monoid on one generator is
  N, and so on).  Membership is decided exactly by a bounded search with
  a rational supporting-functional certificate.
* presented quotients (``presented_monoid``) are enumerated into a
  ``FiniteMonoid`` when the quotient is finite, otherwise rejected.
* ``adjoin_zero`` adds a formal absorbing zero to a finite instance; the
  monoids D_k arise this way from cyclic groups.

Elements are plain values: an ``int`` index for finite monoids, a tuple
of ints for lattice monoids.  All values are immutable after
construction and every operation is a pure function.
"""

import itertools
from fractions import Fraction

from .errors import ElementError, UnsupportedInstanceError
from .intlin import (
    cone_member,
    hermite_basis,
    integer_kernel,
    lattice_coordinates,
    positive_functional,
    transpose,
)


class Monoid:
    """Common interface; see FiniteMonoid and LatticeMonoid."""

    is_finite = False
    name = None

    def mul(self, a, b):
        raise NotImplementedError

    def pow(self, a, n):
        if n < 0:
            inv = self.inverse(a)
            if inv is None:
                raise ElementError(f"{self.label(a)} is not invertible")
            return self.pow(inv, -n)
        out = self.identity
        while n:
            if n & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            n >>= 1
        return out

    def inverse(self, a):
        raise NotImplementedError

    def contains(self, x):
        raise NotImplementedError

    def generators(self):
        raise NotImplementedError

    def label(self, x):
        return str(x)

    def word_value(self, exponents):
        """Product of generators raised to the given exponents."""
        gens = self.generators()
        out = self.identity
        for g, e in zip(gens, exponents):
            out = self.mul(out, self.pow(g, e))
        return out

    def __repr__(self):
        n = self.name or type(self).__name__
        return f"<{n}>"


class FiniteMonoid(Monoid):
    """A finite commutative monoid given by its multiplication table.

    ``gens`` is a list of element indices generating the monoid.  When
    ``relations`` is not None it is a *complete* presentation on those
    generators: a list of pairs of exponent tuples, such that any
    generator assignment satisfying all relations extends to a
    homomorphism.  ``element_words`` maps each element to one exponent
    word over the generators.
    """

    is_finite = True

    def __init__(self, table, labels=None, gens=None, relations=None,
                 element_words=None, name=None, check=False):
        self.table = tuple(tuple(row) for row in table)
        self.size = len(self.table)
        if labels is None:
            labels = [f"x{i}" for i in range(self.size)]
        self.labels = tuple(labels)
        self.name = name
        ident = None
        for e in range(self.size):
            if all(self.table[e][x] == x for x in range(self.size)):
                ident = e
                break
        if ident is None:
            raise ElementError("multiplication table has no identity")
        self.identity = ident
        if gens is None:
            gens = [i for i in range(self.size) if i != ident] or [ident]
        self.gens = tuple(gens)
        self.relations = None if relations is None else tuple(
            (tuple(l), tuple(r)) for l, r in relations)
        self.element_words = None if element_words is None else tuple(
            tuple(w) for w in element_words)
        if check:
            self.check_axioms()

    # -- basic structure ---------------------------------------------------

    def elements(self):
        return range(self.size)

    def mul(self, a, b):
        return self.table[a][b]

    def contains(self, x):
        return isinstance(x, int) and 0 <= x < self.size

    def generators(self):
        return list(self.gens)

    def label(self, x):
        return self.labels[x]

    def index_of_label(self, lab):
        try:
            return self.labels.index(lab)
        except ValueError:
            raise ElementError(f"no element labelled {lab!r}")

    def inverse(self, a):
        for b in range(self.size):
            if self.mul(a, b) == self.identity:
                return b
        return None

    def units(self):
        """Indices of the invertible elements (they form a group)."""
        return [a for a in self.elements() if self.inverse(a) is not None]

    def check_axioms(self):
        n = self.size
        for a in range(n):
            for b in range(n):
                if self.table[a][b] != self.table[b][a]:
                    raise ElementError("table is not commutative")
                for c in range(n):
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        raise ElementError("table is not associative")

    def submonoid_closure(self, seed):
        """Smallest subset containing the seed and 1, closed under mul."""
        out = {self.identity}
        frontier = list(seed)
        out.update(frontier)
        while frontier:
            nxt = []
            for a in frontier:
                for b in list(out):
                    c = self.mul(a, b)
                    if c not in out:
                        out.add(c)
                        nxt.append(c)
            frontier = nxt
        return frozenset(out)

    def generated_check(self):
        return self.submonoid_closure(self.gens) == frozenset(self.elements())

    def key_of(self, x):
        return x


class LatticeMonoid(Monoid):
    """A finitely generated submonoid of Z^dim, written additively.

    Elements are integer tuples; ``mul`` is vector addition.  The unit
    generators (those whose negative lies in the rational cone of all
    generators) span the unit group, which is a full sublattice; the
    remaining generators span a pointed cone, giving the coefficient
    bound used by the exact membership search.
    """

    is_finite = False

    def __init__(self, dim, gens, name=None):
        self.dim = dim
        self.gens = tuple(tuple(int(c) for c in g) for g in gens)
        for g in self.gens:
            if len(g) != dim:
                raise ElementError("generator dimension mismatch")
        self.name = name
        self.identity = tuple([0] * dim)
        self._structure_cache = None
        # split generators into unit part E and pointed part P
        gl = [list(g) for g in self.gens]
        self.unit_gen_idx = tuple(
            i for i, g in enumerate(gl) if cone_member([-c for c in g], gl))
        self.pointed_idx = tuple(
            i for i in range(len(gl)) if i not in self.unit_gen_idx)
        self.unit_basis = hermite_basis([gl[i] for i in self.unit_gen_idx])
        if self.pointed_idx:
            w = positive_functional(
                [gl[i] for i in self.unit_gen_idx],
                [gl[i] for i in self.pointed_idx], dim)
            if w is None:
                raise ElementError("generator split certificate not found")
            self.functional = tuple(w)
        else:
            self.functional = tuple([Fraction(0)] * dim)

    def mul(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def generators(self):
        return list(self.gens)

    def label(self, x):
        return "[" + ",".join(str(c) for c in x) + "]"

    def pow(self, a, n):
        return tuple(n * c for c in a)

    def inverse(self, a):
        na = self.neg(a)
        return na if self.contains(na) else None

    def contains(self, v):
        """Exact membership: nonnegative integer combination of gens."""
        if not (isinstance(v, tuple) and len(v) == self.dim):
            return False
        pointed = [self.gens[i] for i in self.pointed_idx]
        budgets = [sum(Fraction(w) * c for w, c in zip(self.functional, g))
                   for g in pointed]
        total = sum(Fraction(w) * c for w, c in zip(self.functional, v))
        if total < 0:
            return False

        def search(k, remaining, budget):
            if k == len(pointed):
                if budget != 0:
                    return False
                from .intlin import lattice_contains
                return lattice_contains(self.unit_basis, list(remaining))
            g, cost = pointed[k], budgets[k]
            c = 0
            while True:
                if cost * c > budget:
                    return False
                if search(k + 1,
                          tuple(r - c * gc for r, gc in zip(remaining, g)),
                          budget - cost * c):
                    return True
                c += 1

        return search(0, v, total)

    def is_unit(self, v):
        return self.contains(v) and self.contains(self.neg(v))

    def unit_group(self):
        """The group of invertible elements, as a LatticeMonoid."""
        gens = [tuple(b) for b in self.unit_basis]
        gens += [tuple(-c for c in b) for b in self.unit_basis]
        return LatticeMonoid(self.dim, gens, name="units")

    def structure(self):
        """Decompose as (free abelian part, free monoid part).

        Returns (unit_basis, free_gens) when the monoid is isomorphic to
        Z^r x N^k via those generators, else None.  This is the class of
        lattice monoids from which homomorphisms can be enumerated.
        """
        if self._structure_cache is not None:
            return self._structure_cache
        free = [list(self.gens[i]) for i in self.pointed_idx]
        cols = transpose([list(b) for b in self.unit_basis] + free) \
            if (self.unit_basis or free) else []
        ok = True
        # columns must be Z-linearly independent: kernel of the column
        # matrix must be trivial
        if cols:
            if integer_kernel(cols):
                ok = False
        # and the lattice they span must be saturated inside lattice(gens):
        # every generator must have integer coordinates
        if ok:
            basis = [list(b) for b in self.unit_basis] + free
            for g in self.gens:
                if lattice_coordinates(basis, list(g)) is None:
                    ok = False
                    break
        self._structure_cache = ((self.unit_basis, [tuple(f) for f in free])
                                 if ok else None)
        return self._structure_cache if ok else None

    def decompose(self, v):
        """Coordinates (unit_coords, free_coords) of v, or None.

        Only valid when structure() is available; free_coords must come
        out nonnegative for v to be a member.
        """
        st = self.structure()
        if st is None:
            return None
        unit_basis, free = st
        basis = [list(b) for b in unit_basis] + [list(f) for f in free]
        coords = lattice_coordinates(basis, list(v))
        if coords is None:
            return None
        r = len(unit_basis)
        ucoords, fcoords = coords[:r], coords[r:]
        if any(c < 0 for c in fcoords):
            return None
        return ucoords, fcoords

    def key_of(self, x):
        return x


# ---------------------------------------------------------------------------
# Homomorphisms

class MonoidHom:
    """A homomorphism determined by generator images.

    ``apply`` evaluates on arbitrary elements using, in order of
    preference: an explicit full map (finite sources), the source's
    element words, or the lattice decomposition of the source.
    """

    def __init__(self, source, target, gen_images, full_map=None):
        self.source = source
        self.target = target
        self.gen_images = tuple(gen_images)
        self.full_map = None if full_map is None else dict(full_map)

    def __call__(self, x):
        if self.full_map is not None:
            return self.full_map[x]
        src = self.source
        if isinstance(src, FiniteMonoid) and src.element_words is not None:
            return self._eval_word(src.element_words[x])
        if isinstance(src, LatticeMonoid):
            dec = src.decompose(x)
            if dec is None:
                raise ElementError(f"cannot decompose {x} in the source")
            ucoords, fcoords = dec
            st = src.structure()
            unit_basis, free = st
            out = self.target.identity
            for b, c in zip(unit_basis, ucoords):
                img = self._image_of_unit(tuple(b))
                out = self.target.mul(out, self.target.pow(img, c) if c >= 0
                                      else self._neg_pow(img, -c))
            for f, c in zip(free, fcoords):
                idx = list(src.gens).index(tuple(f))
                out = self.target.mul(out, self.target.pow(self.gen_images[idx], c))
            return out
        raise ElementError("homomorphism cannot be evaluated on this source")

    def _neg_pow(self, img, n):
        inv = self.target.inverse(img)
        if inv is None:
            raise ElementError("image of a unit has no inverse")
        return self.target.pow(inv, n)

    def _image_of_unit(self, b):
        # express b as an integer combination of source generators and
        # push forward, inverting images where the combination is negative
        src = self.source
        coeffs = lattice_coordinates([list(g) for g in src.gens], list(b))
        if coeffs is None:
            # generators may be dependent; solve with the non-square system
            from .intlin import integer_solve
            coeffs = integer_solve(transpose([list(g) for g in src.gens]), list(b))
        if coeffs is None:
            raise ElementError("unit basis vector outside the generator lattice")
        out = self.target.identity
        for img, c in zip(self.gen_images, coeffs):
            if c >= 0:
                out = self.target.mul(out, self.target.pow(img, c))
            else:
                out = self.target.mul(out, self._neg_pow(img, -c))
        return out

    def _eval_word(self, word):
        out = self.target.identity
        for img, e in zip(self.gen_images, word):
            out = self.target.mul(out, self.target.pow(img, e))
        return out

    def graph_key(self):
        """Hashable identity key: images of all source generators."""
        t = self.target
        return tuple(t.key_of(self(g)) for g in self.source.generators())

    def __eq__(self, other):
        return (isinstance(other, MonoidHom)
                and self.source is other.source
                and self.target is other.target
                and self.graph_key() == other.graph_key())

    def __hash__(self):
        return hash(self.graph_key())

    def is_valid(self):
        src, tgt = self.source, self.target
        if isinstance(src, FiniteMonoid):
            fm = {x: self(x) for x in src.elements()}
            if fm[src.identity] != tgt.identity:
                return False
            return all(fm[src.mul(a, b)] == tgt.mul(fm[a], fm[b])
                       for a in src.elements() for b in src.elements())
        if isinstance(src, LatticeMonoid):
            # cancellative-target-free check: verify on a basis of the
            # relation lattice of the generators, and that each relation
            # is respected after splitting into positive/negative parts
            cols = transpose([list(g) for g in src.gens])
            kernel = integer_kernel(cols) if cols else []
            for rel in kernel:
                lhs = tgt.identity
                rhs = tgt.identity
                for img, c in zip(self.gen_images, rel):
                    if c > 0:
                        lhs = tgt.mul(lhs, tgt.pow(img, c))
                    elif c < 0:
                        rhs = tgt.mul(rhs, tgt.pow(img, -c))
                if lhs != rhs:
                    return False
            return True
        return False

    def compose(self, other):
        """self after other (other: A->B, self: B->C gives A->C)."""
        assert other.target is self.source or other.target == self.source
        images = [self(other(g)) for g in other.source.generators()]
        fm = None
        if isinstance(other.source, FiniteMonoid):
            fm = {x: self(other(x)) for x in other.source.elements()}
        return MonoidHom(other.source, self.target, images, full_map=fm)

    def __repr__(self):
        pairs = ", ".join(
            f"{self.source.label(g)}->{self.target.label(i)}"
            for g, i in zip(self.source.generators(), self.gen_images))
        return f"<hom {pairs}>"


def identity_hom(a):
    fm = {x: x for x in a.elements()} if a.is_finite else None
    return MonoidHom(a, a, a.generators(), full_map=fm)


def hom_enumerate(a, b):
    """All monoid homomorphisms a -> b, duplicate free.

    b must be finite.  Finite sources use their presentation when one is
    attached, otherwise full-map enumeration over all |b|^|a| maps.
    Lattice sources must decompose as Z^r x N^k.
    """
    if not b.is_finite:
        raise UnsupportedInstanceError("homomorphism target must be finite")
    out = []
    seen = set()
    if isinstance(a, FiniteMonoid):
        if a.relations is not None and a.element_words is not None:
            gens = a.generators()
            for images in itertools.product(b.elements(), repeat=len(gens)):
                ok = True
                for lhs, rhs in a.relations:
                    lv = _word_eval(b, images, lhs)
                    rv = _word_eval(b, images, rhs)
                    if lv != rv:
                        ok = False
                        break
                if not ok:
                    continue
                h = MonoidHom(a, b, images)
                fm = {x: h._eval_word(a.element_words[x]) for x in a.elements()}
                h.full_map = fm
                key = tuple(fm[x] for x in a.elements())
                if key not in seen:
                    seen.add(key)
                    out.append(h)
            return out
        # fall back to full maps
        elems = list(a.elements())
        for images in itertools.product(b.elements(), repeat=len(elems)):
            fm = dict(zip(elems, images))
            if fm[a.identity] != b.identity:
                continue
            if all(fm[a.mul(x, y)] == b.mul(fm[x], fm[y])
                   for x in elems for y in elems):
                out.append(MonoidHom(a, b, [fm[g] for g in a.generators()],
                                     full_map=fm))
        return out
    if isinstance(a, LatticeMonoid):
        st = a.structure()
        if st is None:
            raise UnsupportedInstanceError(
                "lattice monoid does not split as Z^r x N^k; "
                "homomorphism enumeration is not supported")
        unit_basis, free = st
        bunits = b.units()
        for ucombo in itertools.product(bunits, repeat=len(unit_basis)):
            for fcombo in itertools.product(b.elements(), repeat=len(free)):
                images = []
                for g in a.gens:
                    coords = lattice_coordinates(
                        [list(x) for x in unit_basis] + [list(f) for f in free],
                        list(g))
                    img = b.identity
                    r = len(unit_basis)
                    for val, c in zip(list(ucombo) + list(fcombo), coords):
                        if c >= 0:
                            img = b.mul(img, b.pow(val, c))
                        else:
                            img = b.mul(img, b.pow(b.inverse(val), -c))
                    images.append(img)
                h = MonoidHom(a, b, images)
                key = h.graph_key()
                if key not in seen:
                    seen.add(key)
                    out.append(h)
        return out
    raise UnsupportedInstanceError(f"unsupported source {a!r}")


def _word_eval(m, images, word):
    out = m.identity
    for img, e in zip(images, word):
        out = m.mul(out, m.pow(img, e))
    return out


# ---------------------------------------------------------------------------
# Ideals

class Ideal:
    """The ideal of `owner` generated by `gens` (the set gens * owner)."""

    def __init__(self, owner, gens):
        self.owner = owner
        self.gens = tuple(gens)
        if owner.is_finite:
            elems = set()
            for t in self.gens:
                for x in owner.elements():
                    elems.add(owner.mul(t, x))
            self.element_set = frozenset(elems)
        else:
            self.element_set = None

    def contains(self, x):
        if self.element_set is not None:
            return x in self.element_set
        # lattice: x in t + A for some generator t
        own = self.owner
        return any(own.contains(tuple(xc - tc for xc, tc in zip(x, t)))
                   for t in self.gens)

    def is_empty(self):
        if self.element_set is not None:
            return not self.element_set
        return not self.gens

    def __repr__(self):
        return f"<ideal gens={[self.owner.label(g) for g in self.gens]}>"


def ideal_generated(a, gens):
    for g in gens:
        if not a.contains(g):
            raise ElementError(f"{g} is not an element of {a!r}")
    return Ideal(a, gens)


# ---------------------------------------------------------------------------
# Congruences and quotients (finite case)

class Congruence:
    """A multiplicative equivalence relation on a finite monoid."""

    def __init__(self, owner, pairs, class_of, classes):
        self.owner = owner
        self.pairs = tuple(pairs)
        self.class_of = tuple(class_of)
        self.classes = tuple(frozenset(c) for c in classes)

    def related(self, a, b):
        return self.class_of[a] == self.class_of[b]

    def quotient(self, name=None):
        """The quotient monoid and the projection homomorphism."""
        own = self.owner
        ncls = len(self.classes)
        reps = [min(c) for c in self.classes]
        table = [[self.class_of[own.mul(reps[i], reps[j])]
                  for j in range(ncls)] for i in range(ncls)]
        labels = ["{" + ",".join(sorted(own.label(x) for x in sorted(c))) + "}"
                  for c in self.classes]
        gens = sorted({self.class_of[g] for g in own.gens})
        words = None
        if own.element_words is not None:
            words = [own.element_words[reps[i]] for i in range(ncls)]
            # words are in terms of the *owner* generators; only keep them
            # when the generator images are exactly the quotient gens in
            # matching order
            gens = [self.class_of[g] for g in own.gens]
        q = FiniteMonoid(table, labels=labels, gens=gens,
                         relations=own.relations if words is not None else None,
                         element_words=words, name=name)
        proj = MonoidHom(own, q, [self.class_of[g] for g in own.gens],
                         full_map={x: self.class_of[x] for x in own.elements()})
        return q, proj


def congruence_closure(a, pairs):
    """Smallest multiplicative equivalence relation containing the pairs.

    Union-find with propagation: merging x ~ y forces xz ~ yz for every
    z, iterated to a fixed point.
    """
    if not a.is_finite:
        raise UnsupportedInstanceError("congruence closure needs a finite monoid")
    parent = list(range(a.size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue = [(x, y) for x, y in pairs]
    for x, y in queue:
        if not (a.contains(x) and a.contains(y)):
            raise ElementError("congruence pair outside the monoid")
    while queue:
        x, y = queue.pop()
        rx, ry = find(x), find(y)
        if rx == ry:
            continue
        parent[max(rx, ry)] = min(rx, ry)
        for z in a.elements():
            xz, yz = a.mul(x, z), a.mul(y, z)
            if find(xz) != find(yz):
                queue.append((xz, yz))
    roots = {}
    for x in a.elements():
        roots.setdefault(find(x), []).append(x)
    classes = sorted(roots.values(), key=min)
    class_of = [0] * a.size
    for i, c in enumerate(classes):
        for x in c:
            class_of[x] = i
    return Congruence(a, pairs, class_of, classes)


# ---------------------------------------------------------------------------
# Localization

class LocalizedFiniteMonoid(FiniteMonoid):
    """S^{-1}A for finite A; elements are fraction classes m/s."""

    def __init__(self, base, s_elements, **kw):
        own = base
        s = sorted(s_elements)
        pairs = [(m, t) for m in own.elements() for t in s]

        def related(p, q):
            m, t = p
            m2, t2 = q
            return any(own.mul(u, own.mul(t2, m)) == own.mul(u, own.mul(t, m2))
                       for u in s)

        classes = []
        class_of = {}
        for p in pairs:
            placed = False
            for i, c in enumerate(classes):
                if related(p, c[0]):
                    c.append(p)
                    class_of[p] = i
                    placed = True
                    break
            if not placed:
                class_of[p] = len(classes)
                classes.append([p])
        ncls = len(classes)
        table = [[class_of[(own.mul(classes[i][0][0], classes[j][0][0]),
                            own.mul(classes[i][0][1], classes[j][0][1]))]
                  for j in range(ncls)] for i in range(ncls)]
        labels = []
        for c in classes:
            m, t = min(c)
            labels.append(own.label(m) if t == own.identity
                          else f"{own.label(m)}/{own.label(t)}")
        self.base = own
        self._class_of = class_of
        self._s = s
        super().__init__(table, labels=labels,
                         gens=sorted({class_of[(g, own.identity)] for g in own.gens}
                                     | {class_of[(own.identity, t)] for t in s}),
                         **kw)

    def frac(self, m, s):
        return self._class_of[(m, s)]

    def numerator_hom(self):
        own = self.base
        return MonoidHom(own, self,
                         [self.frac(g, own.identity) for g in own.gens],
                         full_map={x: self.frac(x, own.identity)
                                   for x in own.elements()})


class LocalizedLatticeMonoid(LatticeMonoid):
    """S^{-1}A for a lattice monoid: adjoin the negated S-generators."""

    def __init__(self, base, s_gens, name=None):
        self.base = base
        self.s_gens = tuple(tuple(g) for g in s_gens)
        gens = list(base.gens) + [tuple(-c for c in g) for g in self.s_gens]
        # drop duplicates, keep order
        seen, uniq = set(), []
        for g in gens:
            if g not in seen:
                seen.add(g)
                uniq.append(g)
        super().__init__(base.dim, uniq, name=name)

    def frac(self, m, s):
        return tuple(mc - sc for mc, sc in zip(m, s))

    def numerator_hom(self):
        return MonoidHom(self.base, self, list(self.base.gens))


def localize(a, s_gens, name=None):
    """The localization S^{-1}A and the canonical map A -> S^{-1}A.

    S is the submonoid generated by s_gens.  Fractions m/s are equal
    when u*s'*m == u*s*m' for some u in S.
    """
    for g in s_gens:
        if not a.contains(g):
            raise ElementError(f"{g} not in the monoid")
    if a.is_finite:
        s = a.submonoid_closure(s_gens)
        loc = LocalizedFiniteMonoid(a, s, name=name)
        return loc, loc.numerator_hom()
    loc = LocalizedLatticeMonoid(a, s_gens, name=name)
    return loc, loc.numerator_hom()


# ---------------------------------------------------------------------------
# Pushouts

def pushout(l, a, b, phi_a, phi_b, name=None):
    """The pushout a (x)_l b of phi_a: l->a and phi_b: l->b.

    Finite x finite goes through the product monoid modulo the
    congruence generated by (phi_a(t), 1) ~ (1, phi_b(t)); lattice x
    lattice goes through the quotient lattice when it is torsion free.
    Returns (p, ia, ib) with the two structure maps.
    """
    if a.is_finite and b.is_finite:
        prod = product_monoid(a, b)
        pairs = []
        for t in l.generators():
            x = prod.pair_index(phi_a(t), b.identity)
            y = prod.pair_index(a.identity, phi_b(t))
            pairs.append((x, y))
        cong = congruence_closure(prod, pairs)
        q, proj = cong.quotient(name=name)
        ia = MonoidHom(a, q, [proj(prod.pair_index(g, b.identity)) for g in a.gens],
                       full_map={x: proj(prod.pair_index(x, b.identity))
                                 for x in a.elements()})
        ib = MonoidHom(b, q, [proj(prod.pair_index(a.identity, g)) for g in b.gens],
                       full_map={x: proj(prod.pair_index(a.identity, x))
                                 for x in b.elements()})
        # attach the combined presentation for fast hom enumeration
        if a.relations is not None and b.relations is not None \
                and a.element_words is not None and b.element_words is not None:
            na, nb = len(a.gens), len(b.gens)
            rels = [(tuple(lh) + (0,) * nb, tuple(rh) + (0,) * nb)
                    for lh, rh in a.relations]
            rels += [((0,) * na + tuple(lh), (0,) * na + tuple(rh))
                     for lh, rh in b.relations]
            for t in l.generators():
                wa = a.element_words[phi_a(t)]
                wb = b.element_words[phi_b(t)]
                rels.append((tuple(wa) + (0,) * nb, (0,) * na + tuple(wb)))
            words = []
            reps = [min(c) for c in cong.classes]
            for r in reps:
                xa, xb = prod.unpair(r)
                words.append(tuple(a.element_words[xa]) + tuple(b.element_words[xb]))
            q.relations = tuple(rels)
            q.element_words = tuple(words)
            q.gens = tuple([ia(g) for g in a.gens] + [ib(g) for g in b.gens])
        return q, ia, ib
    if isinstance(a, LatticeMonoid) and isinstance(b, LatticeMonoid):
        if l.is_finite and l.size == 1:
            k = []
        elif isinstance(l, LatticeMonoid):
            k = [list(phi_a(t)) + [-c for c in phi_b(t)] for t in l.generators()]
        else:
            raise UnsupportedInstanceError("pushout base must be trivial or lattice")
        dim = a.dim + b.dim
        if not k:
            proj = None
            p = LatticeMonoid(dim, [tuple(g) + (0,) * b.dim for g in a.gens]
                              + [(0,) * a.dim + tuple(g) for g in b.gens],
                              name=name)
            ia = MonoidHom(a, p, [tuple(g) + (0,) * b.dim for g in a.gens])
            ib = MonoidHom(b, p, [(0,) * a.dim + tuple(g) for g in b.gens])
            return p, ia, ib
        from .intlin import smith_normal_form
        cols = transpose(k)
        d, u, v = smith_normal_form(cols)
        # quotient Z^dim / lattice(k): torsion free iff all nonzero
        # diagonal entries are 1
        diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
        if any(x not in (0, 1) for x in diag):
            raise UnsupportedInstanceError(
                "lattice pushout has torsion; not representable in the zoo")
        rank_k = sum(1 for x in diag if x)
        # coordinates in the quotient: drop the first rank_k entries of u@x
        def project(vec):
            w = [sum(u[i][j] * vec[j] for j in range(dim)) for i in range(dim)]
            return tuple(w[rank_k:])
        p = LatticeMonoid(dim - rank_k,
                          [project(list(g) + [0] * b.dim) for g in a.gens]
                          + [project([0] * a.dim + list(g)) for g in b.gens],
                          name=name)
        ia = MonoidHom(a, p, [project(list(g) + [0] * b.dim) for g in a.gens])
        ib = MonoidHom(b, p, [project([0] * a.dim + list(g)) for g in b.gens])
        return p, ia, ib
    raise UnsupportedInstanceError(
        "pushout supported for finite x finite and lattice x lattice only")


# ---------------------------------------------------------------------------
# Constructors

def trivial_monoid():
    """F1: the trivial monoid {1}."""
    return FiniteMonoid([[0]], labels=["1"], gens=[], relations=[],
                        element_words=[()], name="F1")


def cyclic(n, name=None):
    """The cyclic group C_n, generator g, written multiplicatively."""
    if n < 1:
        raise ElementError("cyclic order must be >= 1")
    if n == 1:
        return trivial_monoid() if name is None else FiniteMonoid(
            [[0]], labels=["1"], gens=[], relations=[], element_words=[()],
            name=name)
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    labels = ["1", "g"] + [f"g^{k}" for k in range(2, n)]
    return FiniteMonoid(table, labels=labels, gens=[1],
                        relations=[((n,), (0,))],
                        element_words=[(k,) for k in range(n)],
                        name=name or f"C{n}")


def dk(k):
    """D_k = C_{k-1} with an absorbing zero; isomorphic to (F_q, x) for
    k = q a prime power."""
    if k < 1:
        raise ElementError("k must be >= 1")
    return adjoin_zero(cyclic(k - 1) if k > 1 else trivial_monoid(),
                       name=f"D{k}")


def adjoin_zero(m, name=None):
    """Add a formal absorbing zero to a finite monoid."""
    if not m.is_finite:
        raise UnsupportedInstanceError("adjoin_zero needs a finite instance")
    n = m.size
    table = [[m.table[i][j] for j in range(n)] + [n] for i in range(n)]
    table.append([n] * (n + 1))
    labels = list(m.labels) + ["0"]
    gens = list(m.gens) + [n]
    relations = None
    words = None
    if m.relations is not None and m.element_words is not None:
        ng = len(m.gens)
        relations = [(tuple(l) + (0,), tuple(r) + (0,)) for l, r in m.relations]
        z = (0,) * ng + (1,)
        relations.append((tuple(z[:-1]) + (2,), z))  # 0*0 = 0
        for i in range(ng):
            e = [0] * (ng + 1)
            e[i] = 1
            e[ng] = 1
            relations.append((tuple(e), z))  # g*0 = 0
        words = [tuple(w) + (0,) for w in m.element_words] + [z]
    return FiniteMonoid(table, labels=labels, gens=gens, relations=relations,
                        element_words=words, name=name or f"{m.name}+0")


def product_monoid(a, b, name=None):
    """Direct product; for finite factors the result supports
    pair_index/unpair, and inherits a combined presentation."""
    if a.is_finite and b.is_finite:
        na, nb = a.size, b.size
        table = [[(a.mul(i // nb, j // nb)) * nb + b.mul(i % nb, j % nb)
                  for j in range(na * nb)] for i in range(na * nb)]
        labels = [f"({a.label(i // nb)},{b.label(i % nb)})" for i in range(na * nb)]
        gens = [g * nb + b.identity for g in a.gens] \
            + [a.identity * nb + g for g in b.gens]
        relations = None
        words = None
        if a.relations is not None and b.relations is not None \
                and a.element_words is not None and b.element_words is not None:
            ka, kb = len(a.gens), len(b.gens)
            relations = [(tuple(l) + (0,) * kb, tuple(r) + (0,) * kb)
                         for l, r in a.relations]
            relations += [((0,) * ka + tuple(l), (0,) * ka + tuple(r))
                          for l, r in b.relations]
            words = [tuple(a.element_words[i // nb]) + tuple(b.element_words[i % nb])
                     for i in range(na * nb)]
        p = FiniteMonoid(table, labels=labels, gens=gens, relations=relations,
                         element_words=words, name=name or f"{a.name}x{b.name}")
        p.pair_index = lambda x, y: x * nb + y
        p.unpair = lambda i: (i // nb, i % nb)
        return p
    if isinstance(a, LatticeMonoid) and isinstance(b, LatticeMonoid):
        gens = [tuple(g) + (0,) * b.dim for g in a.gens] \
            + [(0,) * a.dim + tuple(g) for g in b.gens]
        return LatticeMonoid(a.dim + b.dim, gens,
                             name=name or f"{a.name}x{b.name}")
    raise UnsupportedInstanceError("mixed finite/lattice products not supported")


def nat(n=1, name=None):
    """The free commutative monoid N^n as a lattice monoid."""
    gens = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        gens.append(tuple(e))
    return LatticeMonoid(n, gens, name=name or ("N" if n == 1 else f"N^{n}"))


def inf_cyclic(n=1, name=None):
    """The free abelian group C_inf^n = Z^n as a lattice monoid."""
    gens = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        gens.append(tuple(e))
        gens.append(tuple(-c for c in e))
    return LatticeMonoid(n, gens, name=name or ("C_inf" if n == 1 else f"C_inf^{n}"))


def lattice_monoid(vectors, name=None):
    vecs = [tuple(v) for v in vectors]
    if not vecs:
        raise ElementError("lattice monoid needs at least one generator")
    return LatticeMonoid(len(vecs[0]), vecs, name=name)


def from_table(table, labels=None, name=None):
    """A finite monoid from an explicit table, axiom-checked."""
    m = FiniteMonoid(table, labels=labels, name=name, check=True)
    return m


def zmod_mult(n):
    """The multiplicative monoid (Z/n, x) as a finite table."""
    table = [[(i * j) % n for j in range(n)] for i in range(n)]
    return FiniteMonoid(table, labels=[str(i) for i in range(n)],
                        name=f"(Z/{n},x)")


def presented_monoid(gen_names, relations, max_exponent=12, name=None):
    """The commutative monoid <gens | relations> when its quotient is finite.

    Relations are pairs of exponent tuples over the generators.  The
    quotient is enumerated by closing the congruence inside growing
    exponent boxes; two consecutive box sizes must agree before the
    result is accepted, and instances that keep growing are rejected.
    """
    ngens = len(gen_names)
    rels = [(tuple(l), tuple(r)) for l, r in relations]
    prev = None
    base = max([max(max(l), max(r)) for l, r in rels] or [1]) + 1
    for bump in range(0, max_exponent, 2):
        e = base + bump
        built = _box_quotient(ngens, rels, e)
        if built is None:
            continue
        if prev is not None and prev[0] == built[0]:
            classes, class_of, box = built[1], built[2], built[3]
            return _box_to_monoid(ngens, gen_names, rels, classes, class_of,
                                  box, name)
        prev = built
    raise UnsupportedInstanceError(
        "presented monoid did not stabilize; the quotient is infinite or "
        "beyond the enumeration bound")


def _box_quotient(ngens, rels, e):
    box = list(itertools.product(range(e + 1), repeat=ngens))
    index = {v: i for i, v in enumerate(box)}
    parent = list(range(len(box)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for lhs, rhs in rels:
        for w in box:
            lw = tuple(a + b for a, b in zip(lhs, w))
            rw = tuple(a + b for a, b in zip(rhs, w))
            if lw in index and rw in index:
                union(index[lw], index[rw])
    roots = {}
    for i, v in enumerate(box):
        roots.setdefault(find(i), []).append(v)
    classes = sorted(roots.values(), key=lambda c: min(c))
    class_of = {}
    for ci, c in enumerate(classes):
        for v in c:
            class_of[v] = ci
    # every class must be closed under multiplication by each generator,
    # with a consistent answer
    for ci, c in enumerate(classes):
        for g in range(ngens):
            results = set()
            for v in c:
                w = list(v)
                w[g] += 1
                w = tuple(w)
                if w in class_of:
                    results.add(class_of[w])
            if len(results) != 1:
                return None
    return len(classes), classes, class_of, box


def _box_to_monoid(ngens, gen_names, rels, classes, class_of, box, name):
    reps = [min(c) for c in classes]

    def shift(ci, g):
        for v in classes[ci]:
            w = list(v)
            w[g] += 1
            w = tuple(w)
            if w in class_of:
                return class_of[w]
        raise UnsupportedInstanceError("box closure incomplete")

    def class_mul(ci, cj):
        out = ci
        for g, e in enumerate(reps[cj]):
            for _ in range(e):
                out = shift(out, g)
        return out

    n = len(classes)
    table = [[class_mul(i, j) for j in range(n)] for i in range(n)]
    words = [reps[i] for i in range(n)]
    labels = [_word_label(gen_names, w) for w in words]
    gens = []
    for g in range(ngens):
        e = [0] * ngens
        e[g] = 1
        gens.append(class_of[tuple(e)])
    m = FiniteMonoid(table, labels=labels, gens=gens, relations=rels,
                     element_words=words, name=name)
    m.check_axioms()
    return m


def _word_label(gen_names, word):
    parts = []
    for g, e in zip(gen_names, word):
        if e == 1:
            parts.append(g)
        elif e > 1:
            parts.append(f"{g}^{e}")
    return "*".join(parts) if parts else "1"
