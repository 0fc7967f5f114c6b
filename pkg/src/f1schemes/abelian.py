"""Finitely generated abelian groups by generators and relations.

A group is Z^n modulo the sublattice spanned by integer relation
vectors.  Invariants come from the Smith normal form, so everything is
exact.  Used for unit groups of monoids and for Picard groups.
"""

from .errors import UnsupportedInstanceError
from .intlin import smith_normal_form
from .monoids import FiniteMonoid, LatticeMonoid


class FgAbelian:
    """Z^ngens modulo the given relation vectors."""

    def __init__(self, ngens, relations=()):
        self.ngens = ngens
        self.relations = [list(r) for r in relations]
        self._inv = None

    def invariants(self):
        """(free rank, list of torsion orders > 1, sorted by divisibility)."""
        if self._inv is not None:
            return self._inv
        if not self.relations:
            self._inv = (self.ngens, [])
            return self._inv
        m = [list(r) for r in self.relations]
        d, _, _ = smith_normal_form(m)
        k = min(len(d), len(d[0]))
        diag = [d[i][i] for i in range(k)]
        nontrivial = [x for x in diag if x not in (0, 1)]
        rank = self.ngens - sum(1 for x in diag if x != 0)
        self._inv = (rank, nontrivial)
        return self._inv

    @property
    def rank(self):
        return self.invariants()[0]

    @property
    def torsion(self):
        return self.invariants()[1]

    def is_trivial(self):
        return self.invariants() == (0, [])

    def order(self):
        """Group order, or None when infinite."""
        rank, torsion = self.invariants()
        if rank:
            return None
        out = 1
        for t in torsion:
            out *= t
        return out

    def __repr__(self):
        rank, torsion = self.invariants()
        parts = ["Z"] * rank + [f"Z/{t}" for t in torsion]
        return "<" + (" x ".join(parts) if parts else "0") + ">"


def unit_group_presentation(a):
    """Present the unit group of a zoo monoid.

    Returns (group: FgAbelian, gens: list of elements, to_vec) where
    to_vec maps a unit of `a` to its exponent vector over gens.
    """
    if isinstance(a, LatticeMonoid):
        basis = [list(b) for b in a.unit_basis]
        group = FgAbelian(len(basis))

        def to_vec(v):
            from .intlin import lattice_coordinates
            coords = lattice_coordinates(basis, list(v))
            if coords is None:
                raise UnsupportedInstanceError(f"{v} is not a unit")
            return list(coords)

        return group, [tuple(b) for b in basis], to_vec
    if isinstance(a, FiniteMonoid):
        units = sorted(a.units())
        pos = {u: i for i, u in enumerate(units)}
        n = len(units)
        relations = []
        for i in range(n):
            for j in range(i, n):
                k = a.mul(units[i], units[j])
                rel = [0] * n
                rel[i] += 1
                rel[j] += 1
                rel[pos[k]] -= 1
                if any(rel):
                    relations.append(rel)
        # the identity generator is trivial
        rel = [0] * n
        rel[pos[a.identity]] = 1
        relations.append(rel)
        group = FgAbelian(n, relations)

        def to_vec(u):
            e = [0] * n
            e[pos[u]] = 1
            return e

        return group, units, to_vec
    raise UnsupportedInstanceError(f"no unit-group presentation for {a!r}")


def quotient_group(ngens, relations, image_vectors):
    """The quotient (Z^ngens / relations) / span(image_vectors)."""
    return FgAbelian(ngens, list(relations) + [list(v) for v in image_vectors])
