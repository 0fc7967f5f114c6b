"""Monoid rings Z[A] and finite test rings.

Z[A] is the free integer module on the elements of A with multiplication
extended from the monoid operation by convolution.  Note that an
absorbing monoid zero (as in D_k) stays a basis element; it is not the
ring zero.
"""

import itertools

from .errors import ElementError, UnsupportedInstanceError
from .monoids import FiniteMonoid, hom_enumerate


class MonoidRingElem:
    """A finitely supported integer combination of monoid elements."""

    def __init__(self, owner, support=()):
        self.owner = owner
        self.support = {}
        for elem, coeff in dict(support).items():
            if coeff:
                if not owner.contains(elem):
                    raise ElementError(f"{elem} not in {owner!r}")
                self.support[elem] = coeff

    def __add__(self, other):
        out = dict(self.support)
        for e, c in other.support.items():
            out[e] = out.get(e, 0) + c
        return MonoidRingElem(self.owner, out)

    def __neg__(self):
        return MonoidRingElem(self.owner,
                              {e: -c for e, c in self.support.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return MonoidRingElem(
                self.owner, {e: c * other for e, c in self.support.items()})
        out = {}
        a = self.owner
        for e1, c1 in self.support.items():
            for e2, c2 in other.support.items():
                e = a.mul(e1, e2)
                out[e] = out.get(e, 0) + c1 * c2
        return MonoidRingElem(self.owner, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, MonoidRingElem)
                and self.owner is other.owner
                and self.support == other.support)

    def __hash__(self):
        return hash(frozenset(self.support.items()))

    def is_zero(self):
        return not self.support

    def pretty(self):
        """Sorted canonical form, e.g. '2*g - 1'."""
        a = self.owner
        terms = sorted(((a.label(e), c) for e, c in self.support.items()))
        if not terms:
            return "0"
        parts = []
        for lab, c in terms:
            body = lab if lab != a.label(a.identity) else "1"
            if abs(c) == 1 and body != "1":
                t = body
            elif body == "1":
                t = str(abs(c))
            else:
                t = f"{abs(c)}*{body}"
            parts.append(("- " if c < 0 else "+ " if parts else "") + t)
        s = " ".join(parts)
        return "-" + s[1:] if s.startswith("- ") and terms[0][1] < 0 and len(parts) == 1 else s

    def __repr__(self):
        return f"<Z[{self.owner.name}] {self.pretty()}>"


class MonoidRing:
    """Arithmetic context for Z[A]."""

    def __init__(self, a):
        self.monoid = a

    def zero(self):
        return MonoidRingElem(self.monoid)

    def one(self):
        return MonoidRingElem(self.monoid, {self.monoid.identity: 1})

    def basis_elem(self, x):
        return MonoidRingElem(self.monoid, {x: 1})

    def basis(self):
        if not self.monoid.is_finite:
            raise UnsupportedInstanceError("infinite monoid has no finite basis")
        return [self.basis_elem(x) for x in self.monoid.elements()]

    def rank(self):
        if not self.monoid.is_finite:
            return None
        return self.monoid.size


class FiniteRing:
    """Z/n, or a finite product of such rings.  Elements are ints or
    tuples of ints."""

    def __init__(self, moduli):
        if isinstance(moduli, int):
            moduli = (moduli,)
        self.moduli = tuple(moduli)
        for n in self.moduli:
            if n < 1:
                raise ElementError("modulus must be positive")
        self.scalar = len(self.moduli) == 1

    def elements(self):
        combos = itertools.product(*(range(n) for n in self.moduli))
        if self.scalar:
            return [c[0] for c in combos]
        return list(combos)

    def _lift(self, x):
        return (x,) if self.scalar else x

    def _drop(self, x):
        return x[0] if self.scalar else x

    def add(self, x, y):
        x, y = self._lift(x), self._lift(y)
        return self._drop(tuple((a + b) % n
                                for a, b, n in zip(x, y, self.moduli)))

    def mul(self, x, y):
        x, y = self._lift(x), self._lift(y)
        return self._drop(tuple((a * b) % n
                                for a, b, n in zip(x, y, self.moduli)))

    def zero(self):
        return self._drop(tuple(0 for _ in self.moduli))

    def one(self):
        return self._drop(tuple(1 % n for n in self.moduli))

    def mult_monoid(self):
        """The multiplicative monoid (R, x) as a FiniteMonoid."""
        elems = self.elements()
        pos = {e: i for i, e in enumerate(elems)}
        table = [[pos[self.mul(a, b)] for b in elems] for a in elems]
        return FiniteMonoid(table, labels=[str(e) for e in elems],
                            name=f"({self!r},x)")

    def __repr__(self):
        return "x".join(f"Z/{n}" for n in self.moduli)


def ring_hom_count(a, r):
    """Number of ring homomorphisms Z[A] -> R, counted ring-side.

    A ring map from Z[A] is determined by the images of the basis
    elements; we enumerate all maps A -> R and keep the multiplicative
    unital ones, with all products taken in the ring R.  (The additive
    extension is automatic since Z[A] is free over Z.)
    """
    if not a.is_finite:
        raise UnsupportedInstanceError("ring hom count needs a finite monoid")
    elems = list(a.elements())
    relems = r.elements()
    count = 0
    for images in itertools.product(relems, repeat=len(elems)):
        fm = dict(zip(elems, images))
        if fm[a.identity] != r.one():
            continue
        if all(fm[a.mul(x, y)] == r.mul(fm[x], fm[y])
               for x in elems for y in elems):
            count += 1
    return count


def ring_homs(a, r):
    """The ring homomorphisms themselves, as element maps A -> R."""
    elems = list(a.elements())
    out = []
    for images in itertools.product(r.elements(), repeat=len(elems)):
        fm = dict(zip(elems, images))
        if fm[a.identity] != r.one():
            continue
        if all(fm[a.mul(x, y)] == r.mul(fm[x], fm[y])
               for x in elems for y in elems):
            out.append(fm)
    return out


def monoid_hom_count(a, r):
    """Number of monoid homomorphisms A -> (R, x), counted monoid-side
    via hom_enumerate."""
    return len(hom_enumerate(a, r.mult_monoid()))


def zext_compat_fibre(l, a, b, phi_a, phi_b, rings=None):
    """Check Z-compatibility of the fibre product on functor points.

    For each test ring R, #Hom_Ring(Z[A (x)_L B], R) must equal the
    number of pairs (f, g) of ring maps out of Z[A] and Z[B] agreeing on
    Z[L].  Returns True when all counts match.
    """
    from .monoids import pushout
    if rings is None:
        rings = [FiniteRing(n) for n in (2, 3, 4, 6)]
    p, ia, ib = pushout(l, a, b, phi_a, phi_b)
    for r in rings:
        lhs = ring_hom_count(p, r)
        fa = ring_homs(a, r)
        fb = ring_homs(b, r)
        rhs = sum(1 for f in fa for g in fb
                  if all(f[phi_a(t)] == g[phi_b(t)] for t in l.elements()))
        if lhs != rhs:
            return False
    return True
