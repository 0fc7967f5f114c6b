"""A-sets (modules over a monoid) and their sheaves.

A module over a monoid A is a set with an A-action.  Direct sum is
disjoint union, tensor product is the quotient of the product by the
bilinearity congruence (am, n) ~ (m, an).  A module M spreads out to
the sheaf M~ on Spec A whose stalks are the localizations M_p, and
coherent sheaves on our finite spaces are exactly the tildes of their
section modules.  The Picard group is the Cech H^1 of the unit sheaf on
the chart cover, computed through Smith normal form.
"""

import itertools

from .abelian import FgAbelian, unit_group_presentation
from .errors import ElementError, RankDefectError, UnsupportedInstanceError
from .monoids import FiniteMonoid, LatticeMonoid, localize
from .spectrum import StructureSheaf, spec


class ASet:
    """A finite set with an action of a finite monoid."""

    def __init__(self, owner, size, action, labels=None, check=True):
        self.owner = owner
        self.size = size
        self.action = tuple(tuple(row) for row in action)
        self.labels = tuple(labels) if labels else tuple(
            f"m{i}" for i in range(size))
        if check:
            self.check_axioms()

    def act(self, a, s):
        return self.action[a][s]

    def elements(self):
        return range(self.size)

    def label(self, s):
        return self.labels[s]

    def check_axioms(self):
        own = self.owner
        for s in range(self.size):
            if self.act(own.identity, s) != s:
                raise ElementError("identity does not act trivially")
        for a in own.elements():
            for b in own.elements():
                ab = own.mul(a, b)
                for s in range(self.size):
                    if self.act(ab, s) != self.act(a, self.act(b, s)):
                        raise ElementError("action is not associative")

    def __repr__(self):
        return f"<ASet over {self.owner.name} size {self.size}>"


def regular_aset(a):
    """A acting on itself."""
    return ASet(a, a.size, [[a.mul(x, s) for s in a.elements()]
                            for x in a.elements()],
                labels=a.labels)


def free_aset(a, n):
    """The free module of rank n: a disjoint union of n copies of A."""
    m = regular_aset(a)
    out = m
    for _ in range(n - 1):
        out = direct_sum(out, m)
    return out


def direct_sum(m, n):
    if m.owner is not n.owner and m.owner != n.owner:
        raise ElementError("direct sum needs a common owner")
    size = m.size + n.size
    action = [[(m.act(a, s) if s < m.size else m.size + n.act(a, s - m.size))
               for s in range(size)] for a in m.owner.elements()]
    labels = [f"l.{m.label(s)}" for s in m.elements()] + \
             [f"r.{n.label(s)}" for s in n.elements()]
    return ASet(m.owner, size, action, labels=labels)


def tensor(m, n):
    """M (x)_A N: the product modulo the closure of (am, n) ~ (m, an)."""
    if m.owner is not n.owner and m.owner != n.owner:
        raise ElementError("tensor needs a common owner")
    a = m.owner
    pairs = [(s, t) for s in m.elements() for t in n.elements()]
    index = {p: i for i, p in enumerate(pairs)}
    parent = list(range(len(pairs)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    changed = True
    while changed:
        changed = False
        for x in a.elements():
            for (s, t) in pairs:
                i = find(index[(m.act(x, s), t)])
                j = find(index[(s, n.act(x, t))])
                if i != j:
                    parent[max(i, j)] = min(i, j)
                    changed = True
    classes = {}
    for p in pairs:
        classes.setdefault(find(index[p]), []).append(p)
    cls = sorted(classes.values(), key=min)
    class_of = {}
    for ci, c in enumerate(cls):
        for p in c:
            class_of[p] = ci
    action = []
    for x in a.elements():
        row = []
        for c in cls:
            s, t = c[0]
            row.append(class_of[(m.act(x, s), t)])
        action.append(row)
    labels = [f"[{m.label(c[0][0])}*{n.label(c[0][1])}]" for c in cls]
    out = ASet(a, len(cls), action, labels=labels)
    out.class_of = class_of
    return out


def aset_homs(m, n):
    """All A-equivariant maps M -> N, as tuples indexed by M."""
    a = m.owner
    out = []

    def extend(partial, s):
        if s == m.size:
            out.append(tuple(partial))
            return
        for img in n.elements():
            ok = True
            for x in a.elements():
                xs = m.act(x, s)
                if xs < s or xs == s:
                    want = n.act(x, img)
                    have = partial[xs] if xs < s else (img if xs == s else None)
                    if xs == s and want != img and m.act(x, s) == s:
                        if n.act(x, img) != img:
                            ok = False
                            break
                    elif xs < s and n.act(x, img) != partial[xs]:
                        ok = False
                        break
            if ok:
                extend(partial + [img], s + 1)

    extend([], 0)
    # filter exhaustively: the pruning above is partial
    final = []
    for f in out:
        if all(f[m.act(x, s)] == n.act(x, f[s])
               for x in a.elements() for s in m.elements()):
            final.append(f)
    return final


def aset_isomorphic(m, n):
    """Is there an equivariant bijection M -> N?"""
    if m.size != n.size:
        return False
    return any(len(set(f)) == m.size for f in aset_homs(m, n))


# ---------------------------------------------------------------------------
# Z-extension of modules

class ZExtModule:
    """The free integer module Z[M] with the linear extension of the
    A-action; rank equals |M|."""

    def __init__(self, m):
        self.module = m
        self.rank = m.size

    def action_matrix(self, a):
        mat = [[0] * self.rank for _ in range(self.rank)]
        for s in self.module.elements():
            mat[self.module.act(a, s)][s] += 1
        return mat


def zext_module(m):
    return ZExtModule(m)


def zext_tensor_invariants(m, n):
    """Invariants of (M (x) Z) (x)_{Z[A]} (N (x) Z).

    The right side is Z[M x N] modulo the bilinearity relations, and its
    rank must match |M (x)_A N| while the torsion must vanish.
    """
    a = m.owner
    pairs = [(s, t) for s in m.elements() for t in n.elements()]
    index = {p: i for i, p in enumerate(pairs)}
    relations = []
    for x in a.elements():
        for (s, t) in pairs:
            row = [0] * len(pairs)
            row[index[(m.act(x, s), t)]] += 1
            row[index[(s, n.act(x, t))]] -= 1
            if any(row):
                relations.append(row)
    return FgAbelian(len(pairs), relations).invariants()


# ---------------------------------------------------------------------------
# Localization of modules and tilde sheaves

def localize_module(m, s_gens, loc=None, num=None):
    """S^-1 M as a module over S^-1 A; returns (module, class lookup).

    Fraction equality is the usual one: (m, s) ~ (m', s') iff
    s'' s' m = s'' s m' for some s'' in S.
    """
    a = m.owner
    s = a.submonoid_closure(s_gens)
    if loc is None:
        loc, num = localize(a, sorted(s))
    pairs = [(x, t) for x in m.elements() for t in sorted(s)]

    def related(p, q):
        x, t = p
        y, u = q
        return any(m.act(a.mul(w, u), x) == m.act(a.mul(w, t), y)
                   for w in s)

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
    action = []
    for z in loc.elements():
        am, asrc = next(pq for pq, c in loc._class_of.items() if c == z)
        row = []
        for c in classes:
            x, t = c[0]
            row.append(class_of[(m.act(am, x), a.mul(asrc, t))])
        action.append(row)
    labels = []
    for c in classes:
        x, t = min(c)
        labels.append(m.label(x) if t == a.identity
                      else f"{m.label(x)}/{a.label(t)}")
    out = ASet(loc, len(classes), action, labels=labels)
    out.class_of = class_of
    return out, class_of


class SheafModule:
    """A sheaf of modules on a finite spectrum: stalks plus generization
    maps over the structure sheaf's."""

    def __init__(self, base, sheaf, stalks, gen_maps):
        self.base = base
        self.sheaf = sheaf
        self.stalks = stalks
        self.gen_maps = gen_maps

    def sections(self, u):
        """(ASet over the section monoid of u, restriction functions)."""
        base = self.base
        if not base.is_open(u):
            raise ElementError("section domain is not open")
        u = frozenset(u)
        sec_monoid, sec_restr = self.sheaf.sections(u)
        if not u:
            return ASet(sec_monoid, 1, [[0]]), {}
        order = sorted(u)
        maxpts = base.maximal_in(u)
        families = []
        for combo in itertools.product(*(self.stalks[i].elements()
                                         for i in maxpts)):
            fam = dict(zip(maxpts, combo))
            ok = True
            for j in order:
                if j in fam:
                    continue
                vals = {self.gen_maps[(i, j)][fam[i]]
                        for i in maxpts if base.leq[j][i]}
                if len(vals) != 1:
                    ok = False
                    break
                fam[j] = vals.pop()
            if ok:
                for (i, j), g in self.gen_maps.items():
                    if i in fam and j in fam and i in u and j in u \
                            and g[fam[i]] != fam[j]:
                        ok = False
                        break
            if ok:
                families.append(tuple(fam[i] for i in order))
        idx = {f: k for k, f in enumerate(families)}
        action = []
        for z in sec_monoid.elements():
            row = []
            for f in families:
                img = tuple(self.stalks[i].act(sec_restr[i](z), x)
                            for i, x in zip(order, f))
                row.append(idx[img])
            action.append(row)
        mod = ASet(sec_monoid, len(families), action, check=False)
        restr = {i: {idx[f]: f[pos] for f in families}
                 for pos, i in enumerate(order)}
        mod.families = families
        return mod, restr


def tilde(m):
    """The sheaf M~ on Spec A with stalks M_p."""
    a = m.owner
    if not a.is_finite:
        raise UnsupportedInstanceError("tilde sheaf needs a finite monoid")
    base = spec(a)
    sheaf = StructureSheaf(base)
    stalks = {}
    lookups = {}
    for i in range(len(base)):
        loc, num = sheaf.stalk(i)
        p = base.points[i]
        s_gens = sorted(x for x in a.elements() if not p.contains(x))
        stalks[i], lookups[i] = localize_module(m, s_gens, loc=loc, num=num)
    gen_maps = {}
    for i in range(len(base)):
        for j in range(len(base)):
            if i != j and base.leq[j][i]:
                gm = {}
                for x in stalks[i].elements():
                    mm, ss = next(p for p, c in lookups[i].items() if c == x)
                    gm[x] = lookups[j][(mm, ss)]
                gen_maps[(i, j)] = gm
    out = SheafModule(base, sheaf, stalks, gen_maps)
    out.module = m
    return out


# ---------------------------------------------------------------------------
# Direct and inverse image

def restrict_scalars(phi, m):
    """The B-set M viewed as an A-set through phi: A -> B."""
    a = phi.source
    action = [[m.act(phi(x), s) for s in m.elements()] for x in a.elements()]
    return ASet(a, m.size, action, labels=m.labels)


def base_change(phi, n):
    """B (x)_A N for phi: A -> B and an A-set N."""
    a, b = phi.source, phi.target
    pairs = [(x, t) for x in b.elements() for t in n.elements()]
    index = {p: i for i, p in enumerate(pairs)}
    parent = list(range(len(pairs)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    changed = True
    while changed:
        changed = False
        for z in a.elements():
            for (x, t) in pairs:
                i = find(index[(b.mul(x, phi(z)), t)])
                j = find(index[(x, n.act(z, t))])
                if i != j:
                    parent[max(i, j)] = min(i, j)
                    changed = True
    classes = {}
    for p in pairs:
        classes.setdefault(find(index[p]), []).append(p)
    cls = sorted(classes.values(), key=min)
    class_of = {}
    for ci, c in enumerate(cls):
        for p in c:
            class_of[p] = ci
    action = []
    for y in b.elements():
        row = []
        for c in cls:
            x, t = c[0]
            row.append(class_of[(b.mul(y, x), t)])
        action.append(row)
    out = ASet(b, len(cls), action,
               labels=[f"[{b.label(c[0][0])}*{n.label(c[0][1])}]" for c in cls])
    out.class_of = class_of
    return out


def pushforward(phi, f_sheaf):
    """f_* of a sheaf on Spec B along f = Spec(phi): Spec B -> Spec A.

    The stalk at a prime p of A is the section module of the preimage of
    the minimal open neighbourhood of p.
    """
    from .spectrum import SpecMorphism
    a = phi.source
    spec_a = spec(a)
    sheaf_a = StructureSheaf(spec_a)
    sm = SpecMorphism(phi, spec_a=spec_a, spec_b=f_sheaf.base)
    stalk_data = {}
    for i in range(len(spec_a)):
        u_min = frozenset(j for j in range(len(spec_a)) if spec_a.leq[j][i])
        pre = frozenset(q for q in range(len(f_sheaf.base))
                        if sm.point_map[q] in u_min)
        mod, restr = f_sheaf.sections(pre)
        stalk_data[i] = (mod, restr, pre)
    # A_p acts on the sections through phi and the chart restrictions;
    # package stalks as ASets over the A_p
    stalks = {}
    gen_maps = {}
    for i in range(len(spec_a)):
        mod, restr, pre = stalk_data[i]
        loc, num = sheaf_a.stalk(i)
        stalks[i] = _transport_action(mod, loc, num, phi, f_sheaf, restr, pre)
    for i in range(len(spec_a)):
        for j in range(len(spec_a)):
            if i != j and spec_a.leq[j][i]:
                mod_i, restr_i, pre_i = stalk_data[i]
                mod_j, restr_j, pre_j = stalk_data[j]
                gm = {}
                for x in mod_i.elements():
                    fam = mod_i.families[x]
                    target = tuple(fam[sorted(pre_i).index(q)]
                                   for q in sorted(pre_j))
                    gm[x] = mod_j.families.index(target)
                gen_maps[(i, j)] = gm
    return SheafModule(spec_a, sheaf_a, stalks, gen_maps)


def _transport_action(mod, loc, num, phi, f_sheaf, restr, pre):
    """Give the section module an action of the localized monoid loc."""
    a = phi.source
    b = phi.target
    order = sorted(pre)
    sheaf_b = f_sheaf.sheaf

    def act_elem(z, x):
        mm, ss = next(pq for pq, c in loc._class_of.items() if c == z)
        fam = list(mod.families[x])
        for pos, q in enumerate(order):
            stalk_b, num_b = sheaf_b.stalk(q)
            mval = stalk_b.frac(phi(mm), b.identity)
            sval = stalk_b.frac(phi(ss), b.identity)
            cur = f_sheaf.stalks[q].act(mval, fam[pos])
            # divide by the unit image of ss
            inv = stalk_b.inverse(sval)
            if inv is None:
                raise ElementError("denominator not invertible on the stalk")
            fam[pos] = f_sheaf.stalks[q].act(inv, cur)
        return mod.families.index(tuple(fam))

    action = [[act_elem(z, x) for x in mod.elements()]
              for z in loc.elements()]
    return ASet(loc, mod.size, action, check=False)


def pullback(phi, n):
    """f^* of N~ along Spec(phi): the tilde of the base change B (x)_A N."""
    return tilde(base_change(phi, n))


# ---------------------------------------------------------------------------
# Line bundles, trace, Picard

class LineBundleCocycle:
    """A locally free sheaf on a glued scheme, given by a rank and one
    transition unit per overlap (an element of the overlap localization)."""

    def __init__(self, scheme, transitions, rank=1):
        self.scheme = scheme
        self.transitions = dict(transitions)
        self.rank = rank
        for ov in scheme.overlaps:
            key = (ov.i, ov.j)
            if key in self.transitions:
                t = self.transitions[key]
                loc, _ = localize(scheme.charts[ov.j].monoid, [ov.f_j])
                if not loc.is_unit(t) if isinstance(loc, LatticeMonoid) \
                        else loc.inverse(t) is None:
                    raise ElementError("transition is not a unit")


def trace_is_iso(f):
    """The trace F (x) F^dual -> O is an isomorphism for rank one.

    Raises RankDefectError when the input is not of rank one; otherwise
    checks stalkwise that the pairing generator * dual generator -> 1
    induces a bijection.
    """
    if f.rank != 1:
        raise RankDefectError(f"rank {f.rank} is not 1")
    # stalkwise the sheaf is a free rank-1 module A_p * e; its dual is
    # A_p * e^vee and the trace sends a e (x) b e^vee to ab, which is the
    # multiplication iso A_p (x) A_p -> A_p on free generators
    for ci, ch in enumerate(f.scheme.charts):
        m = ch.monoid
        if m.is_finite:
            reg = regular_aset(m)
            t = tensor(reg, reg)
            # trace: [x*y] -> xy must be a bijection from A (x) A ~ A
            images = {}
            ok = True
            for x in m.elements():
                for y in m.elements():
                    c = t.class_of[(x, y)]
                    v = m.mul(x, y)
                    if c in images and images[c] != v:
                        ok = False
                    images[c] = v
            if not ok or len(set(images.values())) != t.size:
                return False
        # lattice charts: x (x) y -> x + y on the free generator is the
        # canonical iso; nothing finite to enumerate
    return True


def picard(x):
    """Pic(X) as a finitely generated abelian group via Cech H^1 of the
    unit sheaf on the chart cover."""
    # triple overlaps would need the cocycle condition in H^1; none of
    # the zoo schemes have them
    chart_pairs = {(ov.i, ov.j) for ov in x.overlaps}
    for a, b in chart_pairs:
        for c in range(len(x.charts)):
            if c in (a, b):
                continue
            if ((min(a, c), max(a, c)) in chart_pairs
                    and (min(b, c), max(b, c)) in chart_pairs):
                raise UnsupportedInstanceError(
                    "Picard computation with triple overlaps")
    c0 = [unit_group_presentation(ch.monoid) for ch in x.charts]
    c1 = []
    for ov in x.overlaps:
        loc, num = localize(x.charts[ov.j].monoid, [ov.f_j])
        c1.append((ov, loc, num, unit_group_presentation(loc)))
    # build the quotient C1 / (C1 relations + image of d0)
    offsets = []
    total = 0
    relations = []
    for _, _, _, (grp, gens, to_vec) in c1:
        offsets.append(total)
        for rel in grp.relations:
            relations.append([0] * total + list(rel))
        total += grp.ngens
    relations = [r + [0] * (total - len(r)) for r in relations]
    # image of d0: for each chart i and unit generator u of A_i, the
    # difference of its restrictions to each overlap involving i
    for ci, (grp, gens, to_vec) in enumerate(c0):
        for u in gens:
            col = [0] * total
            for (ov, loc, num, (g1, gens1, tv1)), off in zip(c1, offsets):
                if ov.j == ci:
                    v = tv1(num(u))
                    for k, cval in enumerate(v):
                        col[off + k] += cval
                elif ov.i == ci:
                    loc_i, num_i = localize(x.charts[ov.i].monoid, [ov.f_i])
                    v = tv1(ov.iso(num_i(u)))
                    for k, cval in enumerate(v):
                        col[off + k] -= cval
            if any(col):
                relations.append(col)
    return FgAbelian(total, relations)


# ---------------------------------------------------------------------------
# Coherence

def is_coherent(f_sheaf):
    """Is the sheaf the tilde of its section modules on every affine open?

    Checks, for every point p, that the canonical map from the tilde of
    the sections over the minimal open around p reconstructs the stalks
    on that open.  Returns (bool, witness) where witness names the first
    failing open, if any.
    """
    base = f_sheaf.base
    for i in range(len(base)):
        u = frozenset(j for j in range(len(base)) if base.leq[j][i])
        mod, restr = f_sheaf.sections(u)
        # the section monoid over u is the stalk monoid at the top point
        # i; mod is a module over it; its tilde on Spec(stalk monoid)
        # must reproduce the stalks at every point of u
        for j in sorted(u):
            ok = _stalk_reconstructs(f_sheaf, mod, restr, i, j)
            if not ok:
                return False, f"open around point {base.points[i].label()} " \
                              f"fails at {base.points[j].label()}"
    return True, None


def _stalk_reconstructs(f_sheaf, mod, restr, top, j):
    """Does localizing the sections at j give back the stalk at j?

    The canonical map sends a fraction (section m, denominator s) to
    act(s)^{-1} act applied to the restriction of m; it must be a
    bijection onto the stalk.
    """
    base = f_sheaf.base
    sheaf = f_sheaf.sheaf
    a_top, _ = sheaf.stalk(top)
    stalk_j, _ = sheaf.stalk(j)
    gm = sheaf.generization_map(top, j) if top != j else None
    p_j = base.points[j]
    # denominators: elements of the top stalk mapping to units at j
    junits = set(stalk_j.units())
    dens = [s for s in a_top.elements()
            if (gm(s) if gm else s) in junits]
    reached = {}
    pairs = {}
    for m in mod.elements():
        for s in dens:
            img = restr[j][m] if top != j else restr[j][m]
            sval = gm(s) if gm else s
            inv = stalk_j.inverse(sval)
            val = f_sheaf.stalks[j].act(inv, img)
            # but m itself must also be divided: fraction m/s maps to
            # s^{-1} * m|_j
            pairs[(m, s)] = val
            reached[val] = True
    if len(reached) != f_sheaf.stalks[j].size:
        return False
    # injectivity of the induced map on fraction classes: two fractions
    # mapping to the same stalk element must be identified by some
    # denominator, i.e. the fraction module has the stalk's size
    classes = []
    for p, v in pairs.items():
        placed = False
        for c in classes:
            if pairs[c[0]] == v and _fracs_equal(f_sheaf, mod, restr, top, p, c[0], dens):
                c.append(p)
                placed = True
                break
        if not placed:
            classes.append([p])
    return len(classes) == f_sheaf.stalks[j].size


def _fracs_equal(f_sheaf, mod, restr, top, p, q, dens):
    (m1, s1), (m2, s2) = p, q
    sheaf = f_sheaf.sheaf
    a_top, _ = sheaf.stalk(top)
    for s in dens:
        left = mod.act(a_top.mul(s, s2), m1)
        right = mod.act(a_top.mul(s, s1), m2)
        if left == right:
            return True
    return False
