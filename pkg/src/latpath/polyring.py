"""Sparse multivariate integer polynomials and truncated power series.

Polynomials live in Z[m, u, s, q, z]. The expansion variable of a series
(``r`` or ``p``) is never a polynomial variable; it is the index into
``RSeries.coeffs``.
"""
from __future__ import annotations

import re
from functools import reduce
from operator import add, mul
from typing import Iterable, Mapping, Union

VARS = ("m", "u", "s", "q", "z")
NVARS = len(VARS)
_INDEX = {name: i for i, name in enumerate(VARS)}
_ZERO_EXP = (0,) * NVARS

# shift variable attached to each expansion variable: r -> r*s^p, p -> p*q^p
SHIFT_VAR = {"r": "s", "p": "q"}


class MultiPoly:
    """Immutable polynomial with arbitrary-precision integer coefficients.

    Terms are stored as ``{exponent tuple: coefficient}`` with exponents
    ordered as in ``VARS``; zero coefficients are never stored.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple, int] | None = None):
        if terms:
            self._terms = {e: c for e, c in terms.items() if c}
        else:
            self._terms = {}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "MultiPoly":
        # caller guarantees no zero coefficients
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: int) -> "MultiPoly":
        return cls._raw({_ZERO_EXP: c} if c else {})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "MultiPoly":
        e = [0] * NVARS
        e[_INDEX[name]] = power
        return cls._raw({tuple(e): 1})

    @classmethod
    def monomial(cls, coeff: int = 1, **powers: int) -> "MultiPoly":
        e = [0] * NVARS
        for name, k in powers.items():
            e[_INDEX[name]] = k
        return cls._raw({tuple(e): coeff} if coeff else {})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {_ZERO_EXP}

    def constant_term(self) -> int:
        return self._terms.get(_ZERO_EXP, 0)

    def degree(self, name: str) -> int:
        i = _INDEX[name]
        return max((e[i] for e in self._terms), default=-1)

    def coefficients(self) -> list[int]:
        return list(self._terms.values())

    # -- arithmetic -----------------------------------------------------

    @staticmethod
    def _coerce(x) -> "MultiPoly":
        if isinstance(x, MultiPoly):
            return x
        if isinstance(x, int):
            return MultiPoly.const(x)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for e, c in small.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return MultiPoly._raw({})
            return MultiPoly._raw({e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        get = out.get
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3], e1[4] + e2[4])
                out[e] = get(e, 0) + c1 * c2
        return MultiPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, coeff: int = 1, **powers: int) -> "MultiPoly":
        """Multiply by ``coeff * prod(var**k)`` without a full product."""
        d = [0] * NVARS
        for name, k in powers.items():
            d[_INDEX[name]] = k
        if coeff == 0:
            return MultiPoly._raw({})
        return MultiPoly._raw(
            {tuple(a + b for a, b in zip(e, d)): c * coeff for e, c in self._terms.items()}
        )

    def div_monomial(self, coeff: int = 1, **powers: int) -> "MultiPoly":
        """Exact division by a monomial; raises ArithmeticError if inexact."""
        d = [0] * NVARS
        for name, k in powers.items():
            d[_INDEX[name]] = k
        out = {}
        for e, c in self._terms.items():
            ne = tuple(a - b for a, b in zip(e, d))
            if min(ne) < 0 or c % coeff:
                raise ArithmeticError(f"{self} is not divisible by the monomial")
            out[ne] = c // coeff
        return MultiPoly._raw(out)

    def exact_div_int(self, d: int) -> "MultiPoly":
        out = {}
        for e, c in self._terms.items():
            qt, rem = divmod(c, d)
            if rem:
                raise ArithmeticError(f"{self} is not divisible by {d}")
            out[e] = qt
        return MultiPoly._raw(out)

    # -- substitution ---------------------------------------------------

    def eval(self, bindings: Mapping[str, Union[int, "MultiPoly"]] | None = None, **kw) -> "MultiPoly":
        """Substitute integers or polynomials for some variables.

        Unbound variables stay symbolic. Binding an unknown variable name
        raises ``KeyError``.
        """
        b = dict(bindings or {})
        b.update(kw)
        if not b:
            return self
        idx = {}
        for name, val in b.items():
            if name not in _INDEX:
                raise KeyError(f"unknown variable {name!r}")
            idx[_INDEX[name]] = val

        all_int = all(isinstance(v, int) for v in idx.values())
        if all_int:
            out: dict = {}
            for e, c in self._terms.items():
                ne = list(e)
                for i, v in idx.items():
                    if e[i]:
                        c *= v ** e[i]
                    ne[i] = 0
                if c:
                    t = tuple(ne)
                    out[t] = out.get(t, 0) + c
            return MultiPoly(out)

        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                v = idx[i]
                cache[key] = v ** k if isinstance(v, MultiPoly) else MultiPoly.const(v ** k)
            return cache[key]

        result = MultiPoly._raw({})
        for e, c in self._terms.items():
            ne = list(e)
            for i in idx:
                ne[i] = 0
            factor = MultiPoly._raw({tuple(ne): c})
            for i in idx:
                if e[i]:
                    factor = factor * power(i, e[i])
            result = result + factor
        return result

    def __call__(self, **kw) -> "MultiPoly":
        return self.eval(kw)

    def to_int(self) -> int:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.constant_term()

    # -- comparison / hashing ------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # -- printing -------------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple, int]]:
        """Terms in graded lexicographic order: by total degree, then by
        exponent tuple (m, u, s, q, z) descending within a degree."""
        return sorted(self._terms.items(), key=lambda t: (sum(t[0]), tuple(-x for x in t[0])))

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for i, (e, c) in enumerate(self.sorted_terms()):
            factors = []
            for name, k in zip(VARS, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            a = abs(c)
            if not factors:
                body = str(a)
            elif a == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(a)] + factors)
            if i == 0:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append((" - " if c < 0 else " + ") + body)
        return "".join(pieces)

    def __repr__(self):
        return f"MultiPoly({str(self)!r})"


_TERM_RE = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_poly(text: str) -> MultiPoly:
    """Parse the canonical string form produced by ``str(MultiPoly)``."""
    text = text.strip()
    if text == "0":
        return MultiPoly()
    out: dict = {}
    pos = 0
    for match in _TERM_RE.finditer(text):
        if match.start() != pos:
            raise ValueError(f"cannot parse polynomial {text!r}")
        pos = match.end()
        sign = -1 if match.group(1) == "-" else 1
        coeff = 1
        e = [0] * NVARS
        for factor in match.group(2).strip().split("*"):
            factor = factor.strip()
            if factor.isdigit():
                coeff *= int(factor)
                continue
            name, _, k = factor.partition("^")
            if name not in _INDEX:
                raise ValueError(f"unknown variable {name!r} in {text!r}")
            e[_INDEX[name]] += int(k) if k else 1
        t = tuple(e)
        out[t] = out.get(t, 0) + sign * coeff
    if pos != len(text):
        raise ValueError(f"cannot parse polynomial {text!r}")
    return MultiPoly(out)


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def poly_eval(a: MultiPoly, bindings: Mapping[str, Union[int, MultiPoly]]) -> MultiPoly:
    return a.eval(bindings)


ZERO = MultiPoly.const(0)
ONE = MultiPoly.const(1)
m = MultiPoly.var("m")
u = MultiPoly.var("u")
s = MultiPoly.var("s")
q = MultiPoly.var("q")
z = MultiPoly.var("z")
# shifted colour/component variables m' = m - 1, u' = u - 1
m1 = m - 1
u1 = u - 1


def f_template(x: MultiPoly) -> MultiPoly:
    """f(x) = 1 + x(m - 1)."""
    return 1 + x * m1


def g_template(x: MultiPoly) -> MultiPoly:
    """g(x) = x(m(u - 1) + 1)."""
    return x * (m * u1 + 1)


class RSeries:
    """Power series in ``r`` (or ``p``) truncated after ``order``.

    ``coeffs[n]`` is the MultiPoly coefficient of ``var**n``.
    """

    __slots__ = ("var", "coeffs")

    def __init__(self, var: str, coeffs: Iterable):
        if var not in SHIFT_VAR:
            raise ValueError(f"expansion variable must be one of {sorted(SHIFT_VAR)}")
        cs = tuple(c if isinstance(c, MultiPoly) else MultiPoly.const(c) for c in coeffs)
        if not cs:
            raise ValueError("a series needs at least the constant coefficient")
        self.var = var
        self.coeffs = cs

    @classmethod
    def constant(cls, var: str, order: int, c=1) -> "RSeries":
        return cls(var, [c] + [ZERO] * order)

    @classmethod
    def zero(cls, var: str, order: int) -> "RSeries":
        return cls(var, [ZERO] * (order + 1))

    @classmethod
    def term(cls, var: str, order: int, n: int, c) -> "RSeries":
        """The series ``c * var**n`` truncated at ``order``."""
        cs = [ZERO] * (order + 1)
        if n <= order:
            cs[n] = c if isinstance(c, MultiPoly) else MultiPoly.const(c)
        return cls(var, cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> MultiPoly:
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def _check(self, other: "RSeries"):
        if not isinstance(other, RSeries):
            raise TypeError("expected an RSeries")
        if other.var != self.var:
            raise ValueError(f"series in {self.var} and {other.var} cannot be combined")

    def truncate(self, order: int) -> "RSeries":
        if order > self.order:
            raise ValueError("cannot truncate to a higher order; use pad()")
        return RSeries(self.var, self.coeffs[: order + 1])

    def pad(self, order: int) -> "RSeries":
        """Extend with zero coefficients. Only meaningful for series that are
        known to be polynomials of degree <= current order."""
        if order <= self.order:
            return self.truncate(order)
        return RSeries(self.var, self.coeffs + (ZERO,) * (order - self.order))

    def __add__(self, other):
        if isinstance(other, (int, MultiPoly)):
            return RSeries(self.var, (self.coeffs[0] + other,) + self.coeffs[1:])
        self._check(other)
        n = min(self.order, other.order)
        return RSeries(self.var, [a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return RSeries(self.var, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, MultiPoly)):
            return RSeries(self.var, [c * other for c in self.coeffs])
        self._check(other)
        return series_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = RSeries.constant(self.var, self.order)
        for _ in range(k):
            result = result * self
        return result

    def times_var(self, power: int) -> "RSeries":
        """Multiply by ``var**power`` keeping the same truncation order."""
        cs = (ZERO,) * power + self.coeffs
        return RSeries(self.var, cs[: self.order + 1])

    def shift(self, p: int) -> "RSeries":
        return series_shift(self, p)

    def map(self, fn) -> "RSeries":
        return RSeries(self.var, [fn(c) for c in self.coeffs])

    def eval(self, bindings=None, **kw) -> "RSeries":
        return self.map(lambda c: c.eval(bindings, **kw))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, RSeries):
            return NotImplemented
        return self.var == other.var and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __str__(self):
        parts = []
        for n, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if n == 0:
                parts.append(f"({c})")
            elif n == 1:
                parts.append(f"({c})*{self.var}")
            else:
                parts.append(f"({c})*{self.var}^{n}")
        return (" + ".join(parts) or "0") + f" + O({self.var}^{self.order + 1})"

    def __repr__(self):
        return f"RSeries({self.var!r}, order={self.order})"


def series_shift(x: RSeries, p: int) -> RSeries:
    """Substitute ``r -> r*s**p`` (``p -> p*q**p`` for the empty-dimer series)."""
    if p < 0:
        raise ValueError("shift must be non-negative")
    if p == 0:
        return x
    v = SHIFT_VAR[x.var]
    return RSeries(x.var, [c.mul_monomial(**{v: p * n}) if n else c for n, c in enumerate(x.coeffs)])


def series_mul(a: RSeries, b: RSeries) -> RSeries:
    """Cauchy product truncated at the smaller order."""
    a._check(b)
    n = min(a.order, b.order)
    ac, bc = a.coeffs, b.coeffs
    # skip zero coefficients; many series here are sparse in low orders
    anz = [(i, c) for i, c in enumerate(ac[: n + 1]) if c]
    bnz = [(j, c) for j, c in enumerate(bc[: n + 1]) if c]
    out = [ZERO] * (n + 1)
    for i, ca in anz:
        for j, cb in bnz:
            if i + j > n:
                break
            out[i + j] = out[i + j] + ca * cb
    return RSeries(a.var, out)


def series_product(factors: Iterable[RSeries]) -> RSeries:
    return reduce(mul, factors)


def poly_sum(polys: Iterable[MultiPoly]) -> MultiPoly:
    return reduce(add, polys, ZERO)
