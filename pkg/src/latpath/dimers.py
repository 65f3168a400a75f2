"""Brute-force enumeration of coloured dimer configurations on a segment.

A dimer at position i covers the edge (v_{i-1}, v_i) of the segment [0, n].
Regimes:

    standard             (C1) one dimer per position, (C2) adjacent dimers differ
    component-gap(g)     additionally >= g empty positions between components
    same-color-dist2     equal colours need |i - j| >= 3 (at least two sites apart)
    glued(k)             dimers of length k, position = leftmost cell; a dimer
                         may start at any position 1..n (its tail can overhang)

These generating functions are the ground truth the recurrences are checked
against, so nothing here uses a recurrence.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterator

from .polyring import MultiPoly, RSeries, ZERO, m, m1, u

DIST2_REACH = 2  # equal colours forbidden when |i - j| <= this


@dataclass(frozen=True)
class Regime:
    kind: str
    param: int = 1

    def __str__(self):
        if self.kind in ("component-gap", "glued"):
            return f"{self.kind}({self.param})"
        return self.kind

    @property
    def step(self) -> int:
        """Distance between positions of two touching dimers."""
        return self.param if self.kind == "glued" else 1


_REGIME_RE = re.compile(r"^(standard|same-color-dist2|component-gap|glued)(?:\((\d+)\))?$")


def parse_regime(text) -> Regime:
    if isinstance(text, Regime):
        return text
    match = _REGIME_RE.match(text.strip())
    if not match:
        raise ValueError(f"unknown regime {text!r}")
    kind, param = match.group(1), match.group(2)
    if kind in ("component-gap", "glued"):
        if param is None:
            raise ValueError(f"regime {kind} needs a parameter, e.g. {kind}(2)")
        if int(param) < 1:
            raise ValueError("regime parameter must be >= 1")
        return Regime(kind, int(param))
    if param is not None:
        raise ValueError(f"regime {kind} takes no parameter")
    return Regime(kind)


@dataclass(frozen=True)
class DimerConfig:
    n: int
    components: tuple  # ((start, (colour, ...)), ...)
    regime: Regime

    def positions(self) -> list[int]:
        st = self.regime.step
        return [start + i * st for start, cols in self.components for i in range(len(cols))]

    def colours(self) -> list[int]:
        return [c for _, cols in self.components for c in cols]

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "regime": str(self.regime),
            "components": [{"start": s, "colors": list(c)} for s, c in self.components],
        }


# -- position sets ---------------------------------------------------------


def _components(positions: tuple, step: int) -> list[tuple[int, ...]]:
    comps: list[list[int]] = []
    for p in positions:
        if comps and p - comps[-1][-1] == step:
            comps[-1].append(p)
        else:
            comps.append([p])
    return [tuple(c) for c in comps]


@lru_cache(maxsize=None)
def occupied_sets(n: int, regime: Regime) -> tuple:
    """Admissible sets of dimer positions, each split into components."""
    out = []
    step = regime.step
    for b in range(n + 1):
        for pos in combinations(range(1, n + 1), b):
            if regime.kind == "glued" and any(y - x < step for x, y in zip(pos, pos[1:])):
                continue
            comps = _components(pos, step)
            if regime.kind == "component-gap":
                # empty positions between consecutive components
                if any(c2[0] - c1[-1] - 1 < regime.param for c1, c2 in zip(comps, comps[1:])):
                    continue
            out.append((pos, tuple(comps)))
    return tuple(out)


def _colour_ok(pos: tuple, cols: tuple, regime: Regime, i: int) -> bool:
    """Check the colour of dimer i against earlier dimers."""
    reach = DIST2_REACH if regime.kind == "same-color-dist2" else regime.step
    for j in range(i - 1, -1, -1):
        if pos[i] - pos[j] > reach:
            break
        if cols[j] == cols[i]:
            return False
    return True


def _colourings(pos: tuple, regime: Regime, m_colors: int, first=None) -> Iterator[tuple]:
    """All admissible colourings of the dimers at ``pos`` (colours 1..m)."""
    b = len(pos)
    cols: list[int] = []

    def rec(i):
        if i == b:
            yield tuple(cols)
            return
        choices = [first] if (i == 0 and first is not None) else range(1, m_colors + 1)
        for c in choices:
            cols.append(c)
            if _colour_ok(pos, cols, regime, i):
                yield from rec(i + 1)
            cols.pop()

    yield from rec(0)


def count_colourings(pos: tuple, regime: Regime, m_colors: int, first=None) -> int:
    """Number of admissible colourings, counted by explicit enumeration.

    The last dimer is not expanded: its admissible colours are counted.
    """
    b = len(pos)
    if b == 0:
        return 1
    reach = DIST2_REACH if regime.kind == "same-color-dist2" else regime.step
    near = [[j for j in range(i) if pos[i] - pos[j] <= reach] for i in range(b)]
    cols = [0] * b
    palette = range(1, m_colors + 1)

    def rec(i):
        banned = {cols[j] for j in near[i]}
        if i == 0 and first is not None:
            choices = [first]
        else:
            choices = palette
        if i == b - 1:
            return sum(1 for c in choices if c not in banned)
        total = 0
        for c in choices:
            if c not in banned:
                cols[i] = c
                total += rec(i + 1)
        return total

    return rec(0)


def enum_configs(n: int, regime, m_colors: int) -> list[DimerConfig]:
    """Every configuration on [0, n] with colours drawn from 1..m_colors."""
    regime = parse_regime(regime)
    if n < 0 or m_colors < 1:
        raise ValueError("need n >= 0 and m_colors >= 1")
    out = []
    for pos, comps in occupied_sets(n, regime):
        for cols in _colourings(pos, regime, m_colors):
            it = iter(cols)
            out.append(
                DimerConfig(n, tuple((c[0], tuple(next(it) for _ in c)) for c in comps), regime)
            )
    return out


# -- generating functions --------------------------------------------------


def interpolate_int_poly(points: list[tuple[int, int]]) -> list[int]:
    """Coefficients (low to high) of the polynomial through integer points.

    Newton divided differences over Fraction; the result must be integral.
    """
    xs = [x for x, _ in points]
    coef = [Fraction(y) for _, y in points]
    n = len(points)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # expand Newton form into monomial basis
    poly = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        nxt = [Fraction(0)] * n
        for d, c in enumerate(poly):
            if c:
                if d + 1 < n:
                    nxt[d + 1] += c
                nxt[d] -= c * xs[i]
        nxt[0] += coef[i]
        poly = nxt
    out = []
    for c in poly:
        if c.denominator != 1:
            raise ArithmeticError("interpolated colour count is not an integer polynomial")
        out.append(int(c))
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _m_poly(coeffs: list[int]) -> MultiPoly:
    return MultiPoly({(d, 0, 0, 0, 0): c for d, c in enumerate(coeffs)})


def colour_polynomial(pos: tuple, regime: Regime, first_fixed: bool = False, nodes=None) -> MultiPoly:
    """Colour count of a position set as a polynomial in m.

    For same-color-dist2 the count is found by explicit enumeration at
    integer m and interpolation; the other regimes use m^a (m-1)^(b-a).
    """
    b = len(pos)
    if regime.kind != "same-color-dist2":
        a = len(_components(pos, regime.step))
        if first_fixed:
            return m ** (a - 1) * m1 ** (b - a) if b else ZERO
        return m ** a * m1 ** (b - a)
    if b == 0:
        return ZERO if first_fixed else MultiPoly.const(1)
    if nodes is None:
        nodes = range(1, b + 2)
    nodes = list(nodes)
    if len(nodes) < b + 1:
        raise ValueError(f"need at least {b + 1} interpolation nodes")
    key = _gap_signature(pos)
    pts = [(x, _dist2_count(key, x, first_fixed)) for x in nodes]
    return _m_poly(interpolate_int_poly(pts))


def _gap_signature(pos: tuple) -> tuple:
    # colourings only see gaps up to DIST2_REACH + 1
    return tuple(min(b - a, DIST2_REACH + 1) for a, b in zip(pos, pos[1:]))


@lru_cache(maxsize=None)
def _dist2_count(signature: tuple, m_colors: int, first_fixed: bool) -> int:
    pos = [1]
    for g in signature:
        pos.append(pos[-1] + g)
    if first_fixed and m_colors < 1:
        return 0
    return count_colourings(
        tuple(pos), Regime("same-color-dist2"), m_colors, first=1 if first_fixed else None
    )


def _weight(pos: tuple, comps: tuple, regime: Regime, weighting: str, n: int,
            first_fixed: bool = False, nodes=None) -> tuple[int, MultiPoly]:
    """(series index, coefficient) contributed by one position set."""
    colour = colour_polynomial(pos, regime, first_fixed, nodes)
    if weighting == "standard":
        c = colour.mul_monomial(s=sum(pos))
        if regime.kind != "same-color-dist2":
            c = c * u ** len(comps)
        return len(pos), c
    if weighting == "empty-dimer":
        occupied = set(pos)
        empty = [i for i in range(1, n + 1) if i not in occupied]
        c = colour.mul_monomial(q=sum(empty)) * u ** len(comps)
        return len(empty), c
    raise ValueError(f"unknown weighting {weighting!r}")


def _var(weighting: str) -> str:
    return "p" if weighting == "empty-dimer" else "r"


def brute_gf(n: int, regime="standard", weighting: str = "standard", nodes=None) -> RSeries:
    """Generating function of all configurations on [0, n] by enumeration.

    ``weighting="standard"`` gives the series in r with weight
    m^a (m-1)^(b-a) r^b s^c u^a; ``"empty-dimer"`` gives the series in p with
    p^(#empty) q^(sum of empty positions) and the same m, u factors.
    """
    regime = parse_regime(regime)
    if weighting == "empty-dimer" and regime.kind != "standard":
        raise ValueError("the empty-dimer weighting is defined for the standard regime")
    coeffs = [ZERO] * (n + 1)
    for pos, comps in occupied_sets(n, regime):
        idx, c = _weight(pos, comps, regime, weighting, n, nodes=nodes)
        coeffs[idx] = coeffs[idx] + c
    return RSeries(_var(weighting), coeffs)


def split_gf(n: int, regime="standard", weighting: str = "standard") -> tuple[RSeries, RSeries]:
    """(z_empty, z_color): configurations with position one empty, and with a
    dimer of one fixed colour at position one."""
    regime = parse_regime(regime)
    empty = [ZERO] * (n + 1)
    colour = [ZERO] * (n + 1)
    for pos, comps in occupied_sets(n, regime):
        if pos and pos[0] == 1:
            idx, c = _weight(pos, comps, regime, weighting, n, first_fixed=True)
            colour[idx] = colour[idx] + c
        else:
            idx, c = _weight(pos, comps, regime, weighting, n)
            empty[idx] = empty[idx] + c
    var = _var(weighting)
    return RSeries(var, empty), RSeries(var, colour)


def config_weight(cfg: DimerConfig, weighting: str = "standard") -> tuple[int, MultiPoly]:
    """Weight of one explicitly coloured configuration (colour factor 1)."""
    pos = tuple(cfg.positions())
    ncomp = len(cfg.components)
    if weighting == "standard":
        c = MultiPoly.monomial(s=sum(pos))
        if cfg.regime.kind != "same-color-dist2":
            c = c.mul_monomial(u=ncomp)
        return len(pos), c
    occupied = set(pos)
    empty = [i for i in range(1, cfg.n + 1) if i not in occupied]
    return len(empty), MultiPoly.monomial(q=sum(empty), u=ncomp)
