"""Coefficient-by-coefficient solvers for the lattice-path functional equations.

Each equation is written as ``residual(x) == 0`` with the x-linear term
normalised so that the order-n coefficient of the residual equals
``x_n + (terms in x_0 .. x_{n-1})``. Solving is then triangular: set
x_n = 0, read off the order-n residual, negate. The solver measures that
unit coefficient instead of trusting it.

The chi-star family has a (m-1) in its linear term. It is solved for the
scaled coefficients c_n = (m-1)^((k+1)n+1) [p^n] chi*, and its residual is
the literal residual multiplied order by order by (m-1)^((k+1)n).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from . import paths as P
from .polyring import (
    MultiPoly,
    RSeries,
    ZERO,
    g_template,
    m,
    m1,
    poly_sum,
    q,
    s,
    u,
    u1,
    z,
)

TAGS = (
    "chi",
    "chi-star",
    "chi-star-k",
    "zeta",
    "nu",
    "nu-motzkin",
    "xi",
    "kappa",
    "alpha",
    "beta",
)
_NEEDS_K = {"chi-star-k", "nu", "nu-motzkin", "xi", "kappa", "alpha", "beta"}

# weights in shifted variables: m' + 1 = m, u' + 1 = u
F3 = m1 * u1 + u1 + 1  # m'u' + u' + 1 = m(u-1) + 1
F4 = m * u  # (m'+1)(u'+1)


class NonTriangular(ArithmeticError):
    pass


@dataclass(frozen=True)
class EquationId:
    tag: str
    k: int = 1

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown equation {self.tag!r}; expected one of {TAGS}")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.tag in ("chi", "chi-star") and self.k != 1:
            raise ValueError(f"{self.tag} has no parameter k")
        if self.tag == "zeta" and self.k != 2:
            raise ValueError("zeta lives on 2-Dyck paths; k is fixed to 2")

    @property
    def var(self) -> str:
        return "p" if self.tag in ("chi-star", "chi-star-k") else "r"

    @property
    def kk(self) -> int:
        """Effective path parameter (chi-star is chi-star-k with k = 1)."""
        return self.k

    @property
    def scaled(self) -> bool:
        return self.tag in ("chi-star", "chi-star-k")

    def __str__(self):
        return f"{self.tag}({self.k})" if self.tag in _NEEDS_K else self.tag


_ID_RE = re.compile(r"^([a-z-]+?)(?:\((\d+)\))?$")


def parse_id(text, k: Optional[int] = None) -> EquationId:
    if isinstance(text, EquationId):
        return text
    match = _ID_RE.match(text.strip())
    if not match:
        raise ValueError(f"cannot parse equation id {text!r}")
    tag = match.group(1)
    if match.group(2) is not None:
        if tag not in _NEEDS_K and tag != "zeta":
            raise ValueError(f"{tag} takes no parameter")
        k = int(match.group(2))
        if tag == "zeta" and k != 2:
            raise ValueError("zeta lives on 2-Dyck paths; k is fixed to 2")
    if tag == "zeta":
        return EquationId(tag, 2)
    if tag in _NEEDS_K and k is None:
        raise ValueError(f"{tag} needs k")
    return EquationId(tag, k if tag in _NEEDS_K else 1)


def _prod_shifts(x: RSeries, lo: int, hi: int) -> RSeries:
    """prod_{j=lo}^{hi} x(r s^j)."""
    out = x.shift(lo)
    for j in range(lo + 1, hi + 1):
        out = out * x.shift(j)
    return out


def _r(x: RSeries, power: int, c: MultiPoly) -> RSeries:
    return x.times_var(power) * c


def residual(eq, x: RSeries) -> RSeries:
    """Left side minus right side of the defining equation, to x.order."""
    eq = parse_id(eq)
    if x.var != eq.var:
        raise ValueError(f"{eq} is a series in {eq.var}, got one in {x.var}")
    k = eq.k
    N = x.order
    one = RSeries.constant(x.var, N)
    tag = eq.tag
    if tag == "chi":
        # f(rs) chi + g(rs) chi chi(rs) - 1
        return x + _r(x, 1, s * m1) + _r(x * x.shift(1), 1, g_template(s)) - one
    if tag in ("chi-star", "chi-star-k"):
        # scaled: c - 1 + p q m' prod_{j<k} c(pq^j) + p q^2 f3 prod_{j<=k} c(pq^j)
        low = _prod_shifts(x, 0, k - 1)
        high = low * x.shift(k)
        return x - one + _r(low, 1, q * m1) + _r(high, 1, q ** 2 * F3)
    if tag == "zeta":
        x1 = x * x.shift(1)
        x2 = x1 * x.shift(2)
        x3 = x2 * x.shift(3)
        return (
            x + _r(x, 1, s * (m - 2)) + _r(x1, 1, s) + _r(x2, 1, s) + _r(x2, 2, s ** 3 * m1)
            + _r(x3, 2, s ** 3) - one
        )
    if tag == "nu":
        return x + _r(x, 1, s * m1) + _r(_prod_shifts(x, 0, k), 1, g_template(s)) - one
    if tag == "nu-motzkin":
        # sign (-1)^k keeps nu(r) = nu'(-r) with nu' the Motzkin path series;
        # for even k this is the equation obtained from the u-substitution
        c = MultiPoly.monomial((-1) ** k, s=(k + 1) * (k + 2) // 2)
        return x + _r(x, 1, s) + _r(_prod_shifts(x, 0, k), k + 1, c) - one
    if tag == "xi":
        low = _prod_shifts(x, 0, k - 1)
        return (
            x + _r(x, 1, s * m1) - _r(low, 1, s * m1) + _r(low * x.shift(k), 1, m * s * u) - one
        )
    if tag == "kappa":
        low = _prod_shifts(x, 0, k - 1)
        return x + _r(low, 1, s * m1) + _r(low * x.shift(k), 1, s * F3) - one
    if tag == "alpha":
        return (
            x + _r(x, 1, s * m1) - _r(x * x.shift(1), 1, s * m1)
            + _r(_prod_shifts(x, 0, k), 1, m * s * u) - one
        )
    if tag == "beta":
        return x - one - _r((x - one) * x * z + x ** (k + 1), 1, MultiPoly.const(1))
    raise ValueError(f"no residual for {eq}")


def _with_coeff(coeffs: list, n: int, value: MultiPoly, var: str) -> RSeries:
    cs = list(coeffs[:n]) + [value]
    return RSeries(var, cs)


@lru_cache(maxsize=None)
def solve(eq, N: int) -> RSeries:
    """Solve the functional equation through order N.

    For the chi-star family the returned coefficients are scaled by
    (m-1)^((k+1)n+1); every other series is returned literally.
    """
    eq = parse_id(eq)
    if N < 0:
        raise ValueError("order must be >= 0")
    if N > 0:
        prev = list(solve(eq, N - 1).coeffs)
    else:
        prev = []
    n = len(prev)
    base = residual(eq, _with_coeff(prev, n, ZERO, eq.var))[n]
    unit = residual(eq, _with_coeff(prev, n, MultiPoly.const(1), eq.var))[n] - base
    if unit == 1:
        value = -base
    elif unit == -1:
        value = base
    else:
        raise NonTriangular(f"{eq}: order-{n} coefficient enters with factor {unit}, not a unit")
    return RSeries(eq.var, prev + [value])


# -- normalised coefficients -----------------------------------------------


def normalized_coeff(eq, n: int, x: Optional[RSeries] = None) -> MultiPoly:
    """The coefficient with the expansion's sign and shift-variable factor
    removed, so it can be compared with a path sum.

    r-series: coeff_n = (-s)^n * value; chi-star: c_n = (-q)^n * value;
    beta: no normalisation.
    """
    eq = parse_id(eq)
    if x is None:
        x = solve(eq, n)
    c = x[n]
    if eq.tag == "beta":
        return c
    sign = (-1) ** n
    if eq.scaled:
        return c.div_monomial(sign, q=n)
    return c.div_monomial(sign, s=n)


def zeta_polynomials(N: int) -> list[MultiPoly]:
    """zeta_n(m, s) with zeta = sum_n zeta_n (-rs)^n."""
    x = solve("zeta", N)
    return [normalized_coeff("zeta", n, x) for n in range(N + 1)]


# -- path expansions -------------------------------------------------------


def _wt_peaks(npk: int, n: int) -> MultiPoly:
    """(m'+1)^P (u'+1)^P (m'u'+u'+1)^(n-P)."""
    return F4 ** npk * F3 ** (n - npk)


def wt_star(word: str, k: int) -> MultiPoly:
    """Recursive weight of a k-Dyck path used by the empty-dimer series.

    Prime factors multiply. For a prime U l_1 D l_2 ... D l_k D the weight is
    q f3 prod_{i>=1} q^{(k+1-i)|l_i|} wt(l_i) when l_1 is nonempty, and
    (m' + q f3) prod_{i>=2} q^{(k+1-i)|l_i|} wt(l_i) otherwise.
    """
    return _wt_star(word, k)


@lru_cache(maxsize=None)
def _wt_star(word: str, k: int) -> MultiPoly:
    if not word:
        return MultiPoly.const(1)
    factors = P.prime_decompose(P.LatticePath("dyck", k, word))
    if len(factors) > 1:
        out = MultiPoly.const(1)
        for f in factors:
            out = out * _wt_star(f.word, k)
        return out
    lam = P.split_first_return(word, k)[:k]  # last part is empty for a prime
    if lam[0]:
        out = q * F3
        start = 0
    else:
        out = m1 + q * F3
        start = 1
    for i in range(start, k):
        size = lam[i].count("U")
        out = out * _wt_star(lam[i], k).mul_monomial(q=(k - i) * size)
    return out


def has_path_sum(eq) -> bool:
    eq = parse_id(eq)
    return eq.tag not in ("alpha", "beta")


@lru_cache(maxsize=None)
def path_sum(eq, n: int, side: str = "dyck") -> MultiPoly:
    """Weighted sum over the path family attached to ``eq`` at size n.

    For chi-star-k, ``side`` selects the Dyck expansion (wt*) or the type-B
    Schröder expansion; for zeta the sum is the m = 1 specialisation.
    """
    eq = parse_id(eq)
    k = eq.k
    tag = eq.tag
    if not has_path_sum(eq):
        raise ValueError(f"{eq} has no path expansion")
    if tag in ("chi", "nu", "xi", "kappa", "zeta"):
        kk = 1 if tag == "chi" else k
        terms = []
        for p in P.enum_paths("dyck", n, kk):
            w = p.word
            a = P.area(p)
            if tag == "zeta":
                wt = MultiPoly.const(1)
            elif tag == "chi":
                wt = _wt_peaks(P.count_peaks(w), n)
            elif tag == "nu":
                wt = _wt_peaks(P.count_peaks_k(w, kk), n)
            elif tag == "kappa":
                wt = _wt_peaks(P.count_peaks(w), n)
            else:
                v = P.count_val2(w, kk)
                wt = F4 ** (n - v) * F3 ** v
            terms.append(wt.mul_monomial(s=a))
        return poly_sum(terms)
    if tag == "nu-motzkin":
        return poly_sum(MultiPoly.monomial(s=P.area(p)) for p in P.enum_paths("motzkin", n, k))
    if tag in ("chi-star", "chi-star-k"):
        if side == "dyck":
            return poly_sum(wt_star(p.word, k) for p in P.enum_paths("dyck", n, k))
        if side == "schroeder-b":
            terms = []
            for p in P.enum_paths("schroeder-b", n, k):
                st = P.path_stats(p)
                terms.append((m1 ** st.n_h * F3 ** st.n_u).mul_monomial(q=st.d_stat or 0))
            return poly_sum(terms)
        raise ValueError(f"unknown side {side!r}")
    raise ValueError(f"no path sum for {eq}")


def zeta_tree_sum(n: int) -> MultiPoly:
    """sum over ternary trees T of m^N(T) s^area(path of T)."""
    if n == 0:
        return MultiPoly.const(1)
    terms = []
    for p in P.enum_paths("dyck", n, 2):
        t = P.dyck_to_tree(p)
        terms.append(MultiPoly.monomial(m=P.tree_statistic_NT(t), s=P.area(p)))
    return poly_sum(terms)


def specialize(eq, N: int, **values) -> list[int]:
    """Signed integer coefficients (-1)^n [r^n] at an integer point, s = 1 unless given."""
    eq = parse_id(eq)
    x = solve(eq, N)
    out = []
    for n, c in enumerate(x.coeffs):
        v = c.eval(values)
        out.append((-1) ** n * v.to_int())
    return out
