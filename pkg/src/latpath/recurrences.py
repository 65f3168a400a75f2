"""Exact G_n for the dimer-model recurrences.

Every recurrence has the shape G_n(r) = sum_p c_p(r) G_{n-p}(r s^p), so each
step is a handful of shifts, multiplications by short polynomials in r, and
additions. Values are memoised per (kind, n).
"""
from __future__ import annotations

import re
import threading
from dataclasses import dataclass

from .polyring import MultiPoly, RSeries, m, m1, q, s, u, u1

KINDS = ("fibonacci", "empty-dimer", "dist2", "type-1", "type-2-G", "type-2-H", "type-3")
_NEEDS_K = {"type-1", "type-2-G", "type-2-H", "type-3"}


@dataclass(frozen=True)
class RecurrenceKind:
    tag: str
    k: int = 1

    def __post_init__(self):
        if self.tag not in KINDS:
            raise ValueError(f"unknown recurrence kind {self.tag!r}; expected one of {KINDS}")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.tag == "type-2-G" and self.k < 2:
            raise ValueError("type-2-G needs k >= 2")

    @property
    def var(self) -> str:
        return "p" if self.tag == "empty-dimer" else "r"

    def __str__(self):
        return f"{self.tag}({self.k})" if self.tag in _NEEDS_K else self.tag


_KIND_RE = re.compile(r"^([A-Za-z0-9-]+?)(?:\((\d+)\))?$")


def parse_kind(text, k: int | None = None) -> RecurrenceKind:
    if isinstance(text, RecurrenceKind):
        return text
    match = _KIND_RE.match(text.strip())
    if not match:
        raise ValueError(f"cannot parse recurrence kind {text!r}")
    tag = match.group(1)
    if match.group(2) is not None:
        k = int(match.group(2))
    if tag in _NEEDS_K and k is None:
        raise ValueError(f"{tag} needs k")
    return RecurrenceKind(tag, k if k is not None else 1)


class _Memo:
    """Single-writer memo table; published entries are immutable."""

    def __init__(self):
        self._table: dict = {}
        self._lock = threading.Lock()

    def get(self, key):
        return self._table.get(key)

    def publish(self, key, value):
        with self._lock:
            return self._table.setdefault(key, value)


_memo = _Memo()


def _one(var: str) -> RSeries:
    return RSeries.constant(var, 0)


def _term(G: RSeries, order: int, shift: int, coeffs: dict[int, MultiPoly]) -> RSeries:
    """(sum_j coeffs[j] var^j) * G(var * shiftvar^shift), as a polynomial of degree <= order."""
    Gs = G.pad(order).shift(shift)
    out = RSeries.zero(G.var, order)
    for j, c in coeffs.items():
        out = out + Gs.times_var(j) * c
    return out


def compute_G(kind, n: int, k: int | None = None) -> RSeries:
    """G_n for the given recurrence, as an exact polynomial in r (or p)
    stored as an RSeries of order max(n, 0)."""
    kind = parse_kind(kind, k)
    if n < -1 and kind.tag == "fibonacci":
        raise ValueError("fibonacci initial conditions start at n = -1")
    if n < 0 and kind.tag == "empty-dimer":
        raise ValueError("empty-dimer initial conditions start at n = 0")
    if n <= 0:
        return _one(kind.var)
    # bottom-up, so no deep recursion
    for i in range(1, n + 1):
        if _memo.get((kind, i)) is None:
            _memo.publish((kind, i), _step(kind, i))
    return _memo.get((kind, n))


def _G(kind: RecurrenceKind, i: int) -> RSeries:
    if i <= 0:
        return _one(kind.var)
    return compute_G(kind, i)


def _step(kind: RecurrenceKind, n: int) -> RSeries:
    var = kind.var
    k = kind.k
    N = n

    def G(i):
        return _G(kind, i)

    tag = kind.tag
    if tag in ("fibonacci", "type-1"):
        kk = 1 if tag == "fibonacci" else k
        # f(rs) G_{n-1}(rs) + g(rs) G_{n-k-1}(rs^{k+1})
        return _term(G(n - 1), N, 1, {0: MultiPoly.const(1), 1: s * m1}) + _term(
            G(n - kk - 1), N, kk + 1, {1: s * (m * u1 + 1)}
        )
    if tag in ("type-2-G", "type-2-H"):
        back = k if tag == "type-2-G" else 2
        return (
            _term(G(n - 1), N, 1, {0: MultiPoly.const(1), 1: s * m1})
            + _term(G(n - back), N, back, {1: -(s * m1)})
            + _term(G(n - k - 1), N, k + 1, {1: m * s * u})
        )
    if tag == "type-3":
        return (
            _term(G(n - 1), N, 1, {0: MultiPoly.const(1)})
            + _term(G(n - k), N, k, {1: s * m1})
            + _term(G(n - k - 1), N, k + 1, {1: s * (m * u1 + 1)})
        )
    if tag == "dist2":
        if n == 1:
            return RSeries(var, [1, s * m])
        return (
            _term(G(n - 1), N, 1, {0: MultiPoly.const(1), 1: s * (m - 2)})
            + _term(G(n - 2), N, 2, {1: s})
            + _term(G(n - 3), N, 3, {1: s, 2: s ** 3 * m1})
            + _term(G(n - 4), N, 4, {2: s ** 3})
        )
    if tag == "empty-dimer":
        if n == 1:
            return RSeries(var, [m * u, q])
        # (pq + m - 1) G*_{n-1}(pq) + p q^2 (m(u-1)+1) G*_{n-2}(pq^2)
        return _term(G(n - 1), N, 1, {0: m1, 1: q}) + _term(
            G(n - 2), N, 2, {1: q ** 2 * (m * u1 + 1)}
        )
    raise ValueError(f"unknown kind {kind}")


def clear_memo():
    global _memo
    _memo = _Memo()
