"""Zeta functions by point counting over the monoids D_k.

For a scheme X the counting function is k -> #X(D_k) with D_k the
cyclic group of order k-1 plus an absorbing zero.  When these counts
are given by a polynomial N(x) = a_0 + a_1 x + ... + a_n x^n with
integer coefficients, the zeta function factors as

    zeta_X(s) = s^{a_0} (s-1)^{a_1} ... (s-n)^{a_n}

and the Weil-style series Z_X(p, T) = exp(sum_n T^n/n #X(F_{p^n}))
has the closed form prod_i (1 - p^i T)^{-a_i}.  Everything symbolic is
done in exact rationals; the limit check is the only numeric piece.
"""

import json
import math
from fractions import Fraction

from .errors import ElementError, UnsupportedInstanceError
from .monoids import dk, hom_enumerate
from .schemes import points_over


class CountTable:
    """Exact pairs (k, #X(D_k)) for a range of k."""

    def __init__(self, scheme_id, pairs):
        self.scheme_id = scheme_id
        self.pairs = sorted((int(k), int(c)) for k, c in pairs)
        for k, c in self.pairs:
            if k < 1 or c < 0:
                raise ElementError("invalid count table entry")

    def ks(self):
        return [k for k, _ in self.pairs]

    def counts(self):
        return [c for _, c in self.pairs]


class ZetaReport:
    def __init__(self, scheme_id, counts, polynomial, coeffs, first_failure,
                 zeta_factors, weil_factors, remarks):
        self.scheme_id = scheme_id
        self.counts = counts
        self.polynomial = polynomial
        self.coeffs = coeffs
        self.first_failure = first_failure
        self.zeta_factors = zeta_factors
        self.weil_factors = weil_factors
        self.remarks = remarks

    def to_json(self):
        data = {
            "scheme": self.scheme_id,
            "counts": [[k, c] for k, c in self.counts],
            "polynomial": self.polynomial,
            "poly_coeffs": self.coeffs,
            "zeta_factors": self.zeta_factors,
            "weil_factors": self.weil_factors,
            "remarks": self.remarks,
        }
        if self.first_failure is not None:
            data["first_failure"] = self.first_failure
        return json.dumps(data, sort_keys=True, indent=2)

    def zeta_string(self):
        return format_zeta(self.zeta_factors)


def count_points(x, k):
    """#X(D_k), delegated to the scheme point functor."""
    if k < 1:
        raise ElementError("k must be >= 1")
    return points_over(x, dk(k))


def count_table(x, ks, scheme_id=None):
    return CountTable(scheme_id or (x.name or "X"),
                      [(k, count_points(x, k)) for k in ks])


# ---------------------------------------------------------------------------
# Interpolation

def _interp_through(points):
    """Exact coefficients (ascending) of the Lagrange interpolant."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        # basis polynomial prod_{j != i} (x - xj) / (xi - xj)
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = _poly_mul(basis, [Fraction(-xj), Fraction(1)])
            denom *= (xi - xj)
        scale = Fraction(yi) / denom
        for d, c in enumerate(basis):
            coeffs[d] += scale * c
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_eval(coeffs, x):
    out = Fraction(0)
    for c in reversed(coeffs):
        out = out * x + c
    return out


def interpolate(table):
    """Fit the least-degree exact polynomial and verify the rest.

    Returns (polynomial: bool, coeffs or None, first_failure or None).
    Success needs integer coefficients and at least one tabulated value
    beyond the fitting window agreeing with the fit.
    """
    pairs = table.pairs
    if len(pairs) < 2:
        raise ElementError("need at least 2 tabulated counts")
    last_failure = None
    for d in range(len(pairs) - 1):
        coeffs = _interp_through(pairs[:d + 1])
        failure = None
        for k, c in pairs[d + 1:]:
            if poly_eval(coeffs, k) != c:
                failure = k
                break
        if failure is None:
            if any(c.denominator != 1 for c in coeffs):
                return False, None, None
            return True, [int(c) for c in coeffs], None
        last_failure = failure
    return False, None, last_failure


# ---------------------------------------------------------------------------
# Zeta factorization and Weil series

def zeta_factor(coeffs):
    """[(i, a_i)] meaning zeta(s) = prod (s - i)^{a_i}."""
    return [(i, a) for i, a in enumerate(coeffs) if a]


def format_zeta(factors):
    if not factors:
        return "1"
    parts = []
    for i, a in factors:
        base = "s" if i == 0 else f"(s-{i})"
        parts.append(base if a == 1 else f"{base}^{a}")
    return "*".join(parts)


def _series_trunc(a, m):
    return (a + [Fraction(0)] * (m + 1))[:m + 1]


def _series_mul(a, b, m):
    out = [Fraction(0)] * (m + 1)
    for i, x in enumerate(a[:m + 1]):
        if x == 0:
            continue
        for j, y in enumerate(b[:m + 1 - i]):
            out[i + j] += x * y
    return out


def _geom_power(p_i, exponent, m):
    """The series (1 - p^i T)^(-exponent) to order m."""
    if exponent >= 0:
        # binomial series with nonnegative integer exponent on the inverse
        out = [Fraction(0)] * (m + 1)
        for j in range(m + 1):
            out[j] = Fraction(math.comb(exponent + j - 1, j)) * p_i ** j \
                if exponent > 0 else (Fraction(1) if j == 0 else Fraction(0))
        return out
    # negative: an honest polynomial (1 - p^i T)^{|exponent|}
    e = -exponent
    out = [Fraction(0)] * (m + 1)
    for j in range(min(e, m) + 1):
        out[j] = Fraction((-1) ** j * math.comb(e, j)) * p_i ** j
    return out


def weil_series(coeffs, p, m):
    """(closed-form factors, exp-definition series, match flag).

    Closed form: prod_i (1 - p^i T)^{-a_i}.  The series is the exact
    exponential of sum_{n>=1} T^n/n N(p^n), truncated at order m; the
    match flag records coefficientwise agreement with the closed form's
    expansion.
    """
    factors = [(i, -a) for i, a in enumerate(coeffs) if a]
    closed = [Fraction(1)] + [Fraction(0)] * m
    for i, a in enumerate(coeffs):
        if a:
            closed = _series_mul(closed, _geom_power(p ** i, a, m), m)
    # exp of the logarithmic series via the standard recurrence
    log = [Fraction(0)] * (m + 1)
    for n in range(1, m + 1):
        log[n] = Fraction(poly_eval([Fraction(c) for c in coeffs], p ** n), n)
    series = [Fraction(1)] + [Fraction(0)] * m
    for j in range(1, m + 1):
        acc = Fraction(0)
        for t in range(1, j + 1):
            acc += t * log[t] * series[j - t]
        series[j] = acc / j
    return factors, series, closed == series


def format_weil(factors, p):
    """Factors are [(i, e)] meaning prod (1 - p^i T)^{e}."""
    if not factors:
        return "1"
    parts = []
    for i, e in factors:
        base = f"(1-{p ** i}T)" if p ** i != 1 else "(1-T)"
        parts.append(base if e == 1 else f"{base}^{e}")
    return "*".join(parts)


# ---------------------------------------------------------------------------
# Numeric limit check

def limit_check(coeffs, s_values, eps=1e-8):
    """Max deviation of the p -> 1 limit from prod (s-i)^{a_i}.

    Evaluates Z_X(p, p^{-s})^{-1} / (p-1)^{N(1)} at p = 1 + eps in log
    space and compares with the product formula.  Returns (max
    deviation, list of (s, value, target)).
    """
    n1 = int(poly_eval([Fraction(c) for c in coeffs], 1))
    rows = []
    worst = 0.0
    for s in s_values:
        p = 1.0 + eps
        log_val = 0.0
        sign = 1
        for i, a in enumerate(coeffs):
            if not a:
                continue
            term = 1.0 - p ** (i - s)
            if term < 0:
                sign *= (-1) ** a
                term = -term
            log_val += a * math.log(term)
        log_val -= n1 * math.log(p - 1.0)
        value = sign * math.exp(log_val)
        target = 1.0
        for i, a in enumerate(coeffs):
            if a:
                target *= (s - i) ** a
        dev = abs(value - target)
        worst = max(worst, dev)
        rows.append((s, value, target))
    return worst, rows


def convergence_order(coeffs, s, eps_list=(1e-2, 1e-3, 1e-4)):
    """Empirical order of convergence of the limit at the point s."""
    devs = [limit_check(coeffs, [s], eps=e)[0] for e in eps_list]
    orders = []
    for d1, d2, e1, e2 in zip(devs, devs[1:], eps_list, eps_list[1:]):
        if d1 > 0 and d2 > 0:
            orders.append(math.log(d1 / d2) / math.log(e1 / e2))
    return min(orders) if orders else float("inf")


# ---------------------------------------------------------------------------
# Hasse-Weil comparison

def _prime_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            n = 0
            while q % p == 0:
                q //= p
                n += 1
            return (p, n) if q == 1 else None
    return None


def hasse_weil_crosscheck(x, p, n):
    """#X(F_{p^n}) via the multiplicative monoid equals count_points.

    The multiplicative monoid of the field with p^n elements is D_{p^n}
    (cyclic unit group with an absorbing zero), so for affine X = Spec A
    the left side is #Hom(A, D_{p^n}).
    """
    q = p ** n
    if q > 32:
        raise ElementError("prime power too large for the crosscheck")
    if _prime_power(q) != (p, n):
        raise ElementError(f"{p}^{n} is not a prime power decomposition")
    if len(x.charts) != 1:
        return count_points(x, q) == points_over(x, dk(q))
    a = x.charts[0].monoid
    field_side = len(hom_enumerate(a, dk(q)))
    return field_side == count_points(x, q)


# ---------------------------------------------------------------------------
# Reports

GL1_COEFFS = [-1, 1]

GL1_ERRATUM = ("N(x) = x-1 yields zeta(s) = (s-1)/s from the product "
               "formula; the value s/(s-1) sometimes quoted for GL1 "
               "disagrees with it and is a suspected erratum, so the "
               "formula value is reported")


def zeta_report(x=None, ks=None, table=None, p=2, trunc=10, scheme_id=None):
    """Assemble a full ZetaReport from a scheme or a raw count table."""
    if table is None:
        if ks is None:
            ks = range(2, 13)
        table = count_table(x, list(ks), scheme_id=scheme_id)
    poly, coeffs, first_failure = interpolate(table)
    remarks = []
    zfac = []
    wfac = []
    if poly:
        zfac = zeta_factor(coeffs)
        wfac, series, match = weil_series(coeffs, p, trunc)
        if not match:
            remarks.append("weil series mismatch between closed form and "
                           "exponential definition")
        if coeffs == GL1_COEFFS:
            remarks.append(GL1_ERRATUM)
    else:
        remarks.append("counts are not polynomial on the tabulated range"
                       + (f"; first failing k = {first_failure}"
                          if first_failure is not None else
                          "; interpolation has non-integer coefficients"))
    return ZetaReport(table.scheme_id, table.pairs, poly, coeffs,
                      first_failure, zfac, wfac, remarks)
