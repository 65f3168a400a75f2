"""Closed-form counts obtained by Lagrange inversion.

Every formula with a 1/n (or 1/(n+1)) prefactor checks that the division is
exact; a remainder means a transcription error, not a rounding issue.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable

from .polyring import MultiPoly, m1, u1, poly_sum


def binom(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def _exact(num: int, den: int) -> int:
    qt, rem = divmod(num, den)
    if rem:
        raise ArithmeticError(f"{num}/{den} is not an integer")
    return qt


def _need(cond: bool, msg: str):
    if not cond:
        raise ValueError(msg)


def catalan(n: int) -> int:
    _need(n >= 0, "n must be >= 0")
    return _exact(binom(2 * n, n), n + 1)


def fuss_catalan(n: int, k: int) -> int:
    _need(n >= 0 and k >= 1, "need n >= 0, k >= 1")
    return _exact(binom((k + 1) * n, n), k * n + 1)


def sch_a(n: int, k: int) -> int:
    """Number of k-Schröder paths of type A."""
    _need(n >= 0 and k >= 1, "need n >= 0, k >= 1")
    if n == 0:
        return 1
    return _exact(sum(binom(n, j) * binom(n + k * j, n - 1) for j in range(n + 1)), n)


def sch_b(n: int, k: int) -> int:
    """Number of k-Schröder paths of type B (peak-refined form)."""
    _need(n >= 0 and k >= 1, "need n >= 0, k >= 1")
    if n == 0:
        return 1
    return _exact(sum(2 ** (i + 1) * binom(n * k, i) * binom(n, n - i - 1) for i in range(n)), n)


def sch_b_binomial(n: int, k: int) -> int:
    """Number of k-Schröder paths of type B (binomial-sum form)."""
    _need(n >= 0 and k >= 1, "need n >= 0, k >= 1")
    if n == 0:
        return 1
    return _exact(sum(binom(n, j) * binom(k * n + j, n - 1) for j in range(n + 1)), n)


def schroeder(n: int) -> int:
    """Large Schröder number."""
    _need(n >= 0, "n must be >= 0")
    if n == 0:
        return 1
    return _exact(sum(binom(n, j) * binom(n + j, n - 1) for j in range(n + 1)), n)


def motzkin(n: int, k: int = 1) -> int:
    """Number of k-Motzkin paths with n steps."""
    _need(n >= 0 and k >= 1, "need n >= 0, k >= 1")
    return _exact(sum(binom(n + 1, n - k * j) * binom(n - k * j, j) for j in range(n // k + 1)), n + 1)


def runyon(n: int, k: int, j: int) -> int:
    """k-Dyck paths of size n with j+1 peaks (UD patterns)."""
    _need(n >= 1 and k >= 1 and 0 <= j <= n - 1, "need n >= 1, k >= 1, 0 <= j <= n-1")
    return _exact(binom(n * k, j) * binom(n, n - j - 1), n)


def narayana(n: int, j: int) -> int:
    """Dyck paths of size n with j peaks."""
    _need(n >= 1 and 1 <= j <= n, "need 1 <= j <= n")
    return _exact(binom(n, j) * binom(n, j - 1), n)


def s_k_11(n: int, k: int) -> int:
    """Weighted k-Dyck paths: 4 per UD^k peak, 3 per other up step."""
    _need(n >= 0 and k >= 1, "need n >= 0, k >= 1")
    if n == 0:
        return 1
    return _exact(sum(3 ** j * binom(n, j) * binom(n + k * j, n - 1) for j in range(n + 1)), n)


def xi_special(n: int, k: int) -> int:
    """[r^n] xi(-r) at (m, s, u) = (2, 1, 2)."""
    _need(n >= 0 and k >= 1, "need n >= 0, k >= 1")
    if n == 0:
        return 1
    total = 0
    for p in range(n + 1):
        for q in range(n - p + 1):
            total += (
                3 ** (n - p - q) * 4 ** q * binom(n, p) * binom(n - p, q)
                * binom(n * k - p * (k - 1), n - 1 - q)
            )
    return _exact(total, n)


def alpha_coeff(n: int, k: int) -> int:
    """[r^n] alpha(r) at (m, r, s, u) = (2, -r, 1, 1)."""
    _need(n >= 0 and k >= 1, "need n >= 0, k >= 1")
    if n == 0:
        return 1
    total = sum(
        (-1) ** j * 2 ** (n - j) * binom(n, j) * binom(k * (n - j) + n, n - 1 - j)
        for j in range(n + 1)
    )
    return _exact(total, n)


def a_count(n: int, k: int, j: int) -> int:
    """A(n, k, j): a-family paths of size n with j steps u."""
    _need(n >= 1 and k >= 1 and 0 <= j <= n, "need n >= 1, k >= 1, 0 <= j <= n")
    return _exact(binom(n, j) * binom(k * (n - j) + n, n - 1 - j), n)


def chi_star_q1(n: int) -> MultiPoly:
    """(m-1)^(2n+1) [p^n] chi*(p, q=1), as a polynomial in m and u.

    Uses m' = m - 1 and f3 = m'u' + u' + 1.
    """
    _need(n >= 0, "n must be >= 0")
    if n == 0:
        return MultiPoly.const(1)
    f3 = m1 * u1 + u1 + 1
    total = poly_sum(
        binom(n, t) * binom(2 * n - t, n - 1) * f3 ** (n - t) * m1 ** t for t in range(n + 1)
    )
    return total.exact_div_int(n) * (-1) ** n


@dataclass(frozen=True)
class CountFormula:
    name: str
    params: tuple[str, ...]
    evaluate: Callable


FORMULAS = {
    f.name: f
    for f in [
        CountFormula("catalan", ("n",), catalan),
        CountFormula("fuss-catalan", ("n", "k"), fuss_catalan),
        CountFormula("sch-a", ("n", "k"), sch_a),
        CountFormula("sch-b", ("n", "k"), sch_b),
        CountFormula("sch-b-binomial", ("n", "k"), sch_b_binomial),
        CountFormula("schroeder", ("n",), schroeder),
        CountFormula("motzkin", ("n", "k"), motzkin),
        CountFormula("runyon", ("n", "k", "j"), runyon),
        CountFormula("narayana", ("n", "j"), narayana),
        CountFormula("s-k-11", ("n", "k"), s_k_11),
        CountFormula("xi-special", ("n", "k"), xi_special),
        CountFormula("alpha", ("n", "k"), alpha_coeff),
        CountFormula("a-count", ("n", "k", "j"), a_count),
        CountFormula("chi-star-q1", ("n",), chi_star_q1),
    ]
}


def count(name: str, **params):
    """Evaluate a named formula, e.g. ``count("fuss-catalan", n=4, k=2)``."""
    try:
        f = FORMULAS[name]
    except KeyError:
        raise ValueError(f"unknown formula {name!r}; known: {sorted(FORMULAS)}") from None
    missing = [p for p in f.params if p not in params]
    if missing:
        raise ValueError(f"{name} needs parameters {missing}")
    return f.evaluate(**{p: params[p] for p in f.params})
