"""Exact integer and rational linear algebra.

Everything here works on plain Python ints and fractions.Fraction; no
floating point is used anywhere.  Matrices are lists of row lists.
"""

from fractions import Fraction


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, k = len(a), len(b)
    m = len(b[0]) if k else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        for t in range(k):
            c = ai[t]
            if c:
                bt = b[t]
                row = out[i]
                for j in range(m):
                    row[j] += c * bt[j]
    return out


def mat_vec(a, v):
    return [sum(c * x for c, x in zip(row, v)) for row in a]


def transpose(a):
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def smith_normal_form(m):
    """Return (d, u, v) with u*m*v = d, d diagonal and d[i] | d[i+1].

    u and v are unimodular.  m is not modified.
    """
    a = [list(map(int, row)) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = identity_matrix(rows)
    v = identity_matrix(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, c):
        # row dst += c * row src
        for t in range(cols):
            a[dst][t] += c * a[src][t]
        for t in range(rows):
            u[dst][t] += c * u[src][t]

    def add_col(src, dst, c):
        for r in a:
            r[dst] += c * r[src]
        for r in v:
            r[dst] += c * r[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(rows, cols):
        # find a nonzero pivot in the remaining block
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j]:
                    if piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]]):
                        piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if not dirty:
                break
        if a[t][t] < 0:
            negate_row(t)
        # enforce divisibility d[t] | a[i][j] for the rest of the block
        fixed = True
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % a[t][t]:
                    add_row(i, t, 1)
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            t += 1
    return a, u, v


def snf_diagonal(m):
    d, _, _ = smith_normal_form(m)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def integer_solve(m, b):
    """One integer solution x of m @ x = b, or None."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if rows == 0:
        return [0] * cols
    d, u, v = smith_normal_form(m)
    c = mat_vec(u, list(b))
    y = [0] * cols
    for i in range(rows):
        di = d[i][i] if i < cols else 0
        if di:
            if c[i] % di:
                return None
            y[i] = c[i] // di
        elif c[i]:
            return None
    return mat_vec(v, y)


def integer_kernel(m):
    """Basis (list of vectors) of the integer kernel of m."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if rows == 0:
        return [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]
    d, _, v = smith_normal_form(m)
    basis = []
    for j in range(cols):
        dj = d[j][j] if j < rows else 0
        if not dj:
            basis.append([v[i][j] for i in range(cols)])
    return basis


def lattice_contains(basis, vec):
    """Is vec an integer combination of the given basis vectors?"""
    if not basis:
        return all(x == 0 for x in vec)
    m = transpose(basis)
    return integer_solve(m, vec) is not None


def lattice_coordinates(basis, vec):
    """Integer coordinates of vec in the given (independent) basis, or None."""
    if not basis:
        return [] if all(x == 0 for x in vec) else None
    return integer_solve(transpose(basis), vec)


def hermite_basis(vectors):
    """An independent basis of the lattice generated by the given vectors.

    With D = U*M*V from the Smith form of the row matrix M, the rows of
    U*M = D*V^{-1} span the same lattice, and the nonzero ones are
    independent.
    """
    m = [list(v) for v in vectors if any(v)]
    if not m:
        return []
    _, u, _ = smith_normal_form(m)
    return [row for row in mat_mul(u, m) if any(row)]


# ---------------------------------------------------------------------------
# Rational linear feasibility (Fourier-Motzkin with witness recovery)

def _norm_constraint(coeffs, rhs, strict):
    coeffs = tuple(Fraction(c) for c in coeffs)
    return (coeffs, Fraction(rhs), bool(strict))


def fm_solve(constraints, nvars):
    """Solve a system of rational linear inequalities.

    Each constraint is (coeffs, rhs, strict) meaning sum(c*x) >= rhs,
    with > instead of >= when strict.  Returns a witness list of
    Fractions, or None when infeasible.
    """
    system = [_norm_constraint(*c) for c in constraints]
    stages = []
    for var in range(nvars - 1, -1, -1):
        stages.append(system)
        pos, neg, rest = [], [], []
        for coeffs, rhs, strict in system:
            c = coeffs[var]
            if c > 0:
                pos.append((coeffs, rhs, strict))
            elif c < 0:
                neg.append((coeffs, rhs, strict))
            else:
                rest.append((coeffs, rhs, strict))
        new = list(rest)
        for pc, pr, ps in pos:
            for nc, nr, ns in neg:
                a, b = pc[var], -nc[var]
                coeffs = tuple(b * pc[i] + a * nc[i] for i in range(nvars))
                new.append((coeffs, b * pr + a * nr, ps or ns))
        system = _dedupe(new)
        if len(system) > 4000:
            system = _dedupe(system)
    # no variables left: every constraint must hold with x = 0
    for coeffs, rhs, strict in system:
        if strict:
            if not (0 > rhs):
                return None
        elif not (0 >= rhs):
            return None
    # back substitution
    witness = [Fraction(0)] * nvars
    for var, stage in zip(range(nvars), reversed(stages)):
        lo, lo_strict = None, False
        hi, hi_strict = None, False
        for coeffs, rhs, strict in stage:
            c = coeffs[var]
            if c == 0:
                continue
            rest = rhs - sum(coeffs[i] * witness[i] for i in range(var))
            bound = rest / c
            if c > 0:
                if lo is None or bound > lo or (bound == lo and strict):
                    lo, lo_strict = bound, strict
            else:
                if hi is None or bound < hi or (bound == hi and strict):
                    hi, hi_strict = bound, strict
        if lo is None and hi is None:
            val = Fraction(0)
        elif lo is None:
            val = hi - 1
        elif hi is None:
            val = lo + 1
        else:
            val = (lo + hi) / 2
            if lo == hi:
                val = lo  # only valid when neither bound is strict
        witness[var] = val
    # verify (cheap, and guards against the degenerate lo == hi strict case)
    for coeffs, rhs, strict in [_norm_constraint(*c) for c in constraints]:
        s = sum(c * w for c, w in zip(coeffs, witness))
        if strict and not s > rhs:
            return None
        if not strict and not s >= rhs:
            return None
    return witness


def _dedupe(system):
    seen = {}
    for coeffs, rhs, strict in system:
        if all(c == 0 for c in coeffs):
            # keep only if binding; trivially true rows are dropped
            if (rhs < 0) or (rhs == 0 and not strict):
                continue
        g = None
        for c in coeffs:
            if c:
                g = abs(c) if g is None else None
                break
        # normalize by the leading absolute coefficient for deduplication
        lead = next((abs(c) for c in coeffs if c), None)
        if lead:
            key = (tuple(c / lead for c in coeffs), rhs / lead, strict)
        else:
            key = (coeffs, rhs, strict)
        seen.setdefault(key, (coeffs, rhs, strict))
    return list(seen.values())


def cone_member(vec, gens):
    """Is vec in the rational cone spanned by gens (nonneg combinations)?"""
    m = len(gens)
    if m == 0:
        return all(x == 0 for x in vec)
    dim = len(vec)
    cons = []
    for i in range(m):
        e = [0] * m
        e[i] = 1
        cons.append((e, 0, False))
    for j in range(dim):
        row = [g[j] for g in gens]
        cons.append((row, vec[j], False))
        cons.append(([-c for c in row], -vec[j], False))
    return fm_solve(cons, m) is not None


def positive_functional(zero_on, positive_on, dim):
    """A rational w with <w,v> = 0 for v in zero_on and <w,v> >= 1 on
    positive_on, or None."""
    cons = []
    for v in zero_on:
        cons.append((list(v), 0, False))
        cons.append(([-c for c in v], 0, False))
    for v in positive_on:
        cons.append((list(v), 1, False))
    return fm_solve(cons, dim)
