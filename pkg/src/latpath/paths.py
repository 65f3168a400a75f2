"""Generalised Dyck, Motzkin and Schröder paths.

Words are strings over single-letter steps. Geometry per family (k >= 1):

    dyck          U=(0,1) D=(1,0)              weakly above y = x/k, ends (kn, n)
    schroeder-a   U=(0,1) D=(1,0) H=(k,1)      same boundary
    schroeder-b   U=(0,1) D=(1,0) H=(1,1)      same boundary
    motzkin       U=(1,k) D=(1,-1) H=(1,0)     y >= 0, n steps, ends on the axis
    a-family      u=(k,1) U=(1,k) d=(1,-1)     y >= 0, ends at ((k+1)n, 0), no "ud"

Enumeration order is lexicographic in the declared letter order
U < D < H (u < U < d for the a-family).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

FAMILIES = ("dyck", "motzkin", "schroeder-a", "schroeder-b", "a-family")

LETTERS = {
    "dyck": "UD",
    "motzkin": "UDH",
    "schroeder-a": "UDH",
    "schroeder-b": "UDH",
    "a-family": "uUd",
}


class InvalidPath(ValueError):
    pass


def _steps(family: str, k: int) -> dict[str, tuple[int, int]]:
    if family == "dyck":
        return {"U": (0, 1), "D": (1, 0)}
    if family == "schroeder-a":
        return {"U": (0, 1), "D": (1, 0), "H": (k, 1)}
    if family == "schroeder-b":
        return {"U": (0, 1), "D": (1, 0), "H": (1, 1)}
    if family == "motzkin":
        return {"U": (1, k), "D": (1, -1), "H": (1, 0)}
    if family == "a-family":
        return {"u": (k, 1), "U": (1, k), "d": (1, -1)}
    raise ValueError(f"unknown family {family!r}")


def _check_family(family: str, k: int):
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")


@dataclass(frozen=True)
class LatticePath:
    family: str
    k: int
    word: str

    def __post_init__(self):
        _check_family(self.family, self.k)

    @property
    def size(self) -> int:
        w = self.word
        if self.family == "dyck":
            return w.count("U")
        if self.family in ("schroeder-a", "schroeder-b"):
            return w.count("U") + w.count("H")
        if self.family == "motzkin":
            return len(w)
        return w.count("u") + w.count("U")

    def __str__(self):
        return self.word

    def __len__(self):
        return len(self.word)


def _endpoint(family: str, n: int, k: int) -> tuple[int, int]:
    if family in ("dyck", "schroeder-a", "schroeder-b"):
        return (k * n, n)
    if family == "motzkin":
        return (n, 0)
    return ((k + 1) * n, 0)


def validate(p: LatticePath) -> None:
    """Raise InvalidPath unless ``p`` satisfies its family's constraints."""
    steps = _steps(p.family, p.k)
    x = y = 0
    above_diag = p.family in ("dyck", "schroeder-a", "schroeder-b")
    for i, c in enumerate(p.word):
        if c not in steps:
            raise InvalidPath(f"letter {c!r} not allowed in a {p.family} path")
        dx, dy = steps[c]
        x += dx
        y += dy
        if above_diag and p.k * y < x:
            raise InvalidPath(f"{p.word} goes below y = x/{p.k} at step {i}")
        if not above_diag and y < 0:
            raise InvalidPath(f"{p.word} leaves the first quadrant at step {i}")
    if p.family == "a-family" and "ud" in p.word:
        raise InvalidPath(f"{p.word} contains the forbidden peak ud")
    if (x, y) != _endpoint(p.family, p.size, p.k):
        raise InvalidPath(f"{p.word} ends at {(x, y)}, not {_endpoint(p.family, p.size, p.k)}")


def is_valid(p: LatticePath) -> bool:
    try:
        validate(p)
    except InvalidPath:
        return False
    return True


# -- enumeration -----------------------------------------------------------


@lru_cache(maxsize=None)
def _enum_words(family: str, n: int, k: int, j: Optional[int]) -> tuple[str, ...]:
    steps = _steps(family, k)
    letters = LETTERS[family]
    tx, ty = _endpoint(family, n, k)
    out: list[str] = []
    word: list[str] = []

    if family in ("dyck", "schroeder-a", "schroeder-b"):

        def rec(x, y):
            if (x, y) == (tx, ty):
                out.append("".join(word))
                return
            for c in letters:
                dx, dy = steps[c]
                nx, ny = x + dx, y + dy
                if nx > tx or ny > ty or k * ny < nx:
                    continue
                word.append(c)
                rec(nx, ny)
                word.pop()

        rec(0, 0)
    elif family == "motzkin":

        def rec(i, y):
            if i == n:
                if y == 0:
                    out.append("".join(word))
                return
            left = n - i - 1
            for c in letters:
                ny = y + steps[c][1]
                if ny < 0 or ny > left:
                    continue
                word.append(c)
                rec(i + 1, ny)
                word.pop()

        rec(0, 0)
    else:

        def rec(x, y, nu, prev):
            if x == tx:
                if y == 0 and (j is None or nu == j):
                    out.append("".join(word))
                return
            for c in letters:
                dx, dy = steps[c]
                nx, ny = x + dx, y + dy
                if nx > tx or ny < 0 or ny > tx - nx:
                    continue
                if prev == "u" and c == "d":
                    continue
                nnu = nu + (c == "u")
                if j is not None and nnu > j:
                    continue
                word.append(c)
                rec(nx, ny, nnu, c)
                word.pop()

        rec(0, 0, 0, "")
    return tuple(out)


def enum_paths(family: str, n: int, k: int = 1) -> list[LatticePath]:
    """All paths of the family with size ``n``, in lexicographic order."""
    _check_family(family, k)
    if n < 0:
        raise ValueError("n must be non-negative")
    return [LatticePath(family, k, w) for w in _enum_words(family, n, k, None)]


def enum_A_paths(n: int, k: int, j: int) -> list[LatticePath]:
    """Paths of the a-family of size ``n`` with exactly ``j`` steps ``u``."""
    _check_family("a-family", k)
    if not 0 <= j <= n:
        raise ValueError("need 0 <= j <= n")
    return [LatticePath("a-family", k, w) for w in _enum_words("a-family", n, k, j)]


# -- statistics ------------------------------------------------------------


def lowest_path(family: str, n: int, k: int) -> str:
    if family == "dyck":
        return ("U" + "D" * k) * n
    if family == "schroeder-a":
        return "H" * n
    if family == "schroeder-b":
        return ("H" + "D" * (k - 1)) * n
    if family == "motzkin":
        return "H" * n
    raise ValueError(f"no lowest path defined for {family!r}")


def _double_integral(family: str, k: int, word: str) -> int:
    """2 * (integral of y dx) along the path."""
    steps = _steps(family, k)
    y = 0
    total = 0
    for c in word:
        dx, dy = steps[c]
        # trapezoid: dx * (y + y + dy)
        total += dx * (2 * y + dy)
        y += dy
    return total


def area2(p: LatticePath) -> int:
    """Twice the number of unit cells between ``p`` and the lowest path."""
    if p.family == "a-family":
        return _double_integral(p.family, p.k, p.word)
    low = lowest_path(p.family, p.size, p.k)
    return _double_integral(p.family, p.k, p.word) - _double_integral(p.family, p.k, low)


def area(p: LatticePath) -> int:
    a2 = area2(p)
    if a2 % 2:
        raise ValueError(f"{p.word} has half-integer area {a2}/2")
    return a2 // 2


def _down(p: LatticePath) -> str:
    return "d" if p.family == "a-family" else "D"


def count_peaks(word: str, down: str = "D") -> int:
    return word.count("U" + down)


def count_peaks_k(word: str, k: int, down: str = "D") -> int:
    """Occurrences of U followed by k down steps."""
    pat = "U" + down * k
    return sum(1 for i in range(len(word)) if word.startswith(pat, i))


def valley_sizes(word: str, down: str = "D") -> list[int]:
    """Size of each valley: the length p of the maximal run D^p before a U."""
    return [len(m.group(1)) for m in re.finditer(f"({down}+)(?=U)", word)]


def count_val2(word: str, k: int, down: str = "D") -> int:
    return sum(1 for v in valley_sizes(word, down) if 0 < v <= k - 1)


@dataclass(frozen=True)
class PathStats:
    size: int
    area2: int
    peaks: int
    peaks_k: int
    valleys: int
    val2_k: int
    n_h: int
    n_u: int
    d_stat: Optional[int] = field(default=None)

    def as_dict(self) -> dict:
        d = {
            "size": self.size,
            "area2": self.area2,
            "peaks": self.peaks,
            "peaks_k": self.peaks_k,
            "valleys": self.valleys,
            "val2_k": self.val2_k,
            "n_h": self.n_h,
            "n_u": self.n_u,
        }
        if self.d_stat is not None:
            d["d_stat"] = self.d_stat
        return d


def path_stats(p: LatticePath) -> PathStats:
    validate(p)
    w = p.word
    if not w:
        return PathStats(0, 0, 0, 0, 0, 0, 0, 0, None)
    down = _down(p)
    d_stat = None
    if p.family == "schroeder-b":
        d_stat = area(schb_lift(p)) + p.size - w.count("H")
    return PathStats(
        size=p.size,
        area2=area2(p),
        peaks=count_peaks(w, down),
        peaks_k=count_peaks_k(w, p.k, down),
        valleys=len(valley_sizes(w, down)),
        val2_k=count_val2(w, p.k, down),
        n_h=w.count("H") + w.count("u"),
        n_u=w.count("U"),
        d_stat=d_stat,
    )


def to_record(p: LatticePath) -> dict:
    return {"family": p.family, "k": p.k, "word": p.word, "stats": path_stats(p).as_dict()}


# -- decompositions --------------------------------------------------------


def _level_trace(word: str, k: int) -> list[int]:
    """k*y - x after each step of a k-Dyck word (0 means on the boundary)."""
    lv = 0
    out = []
    for c in word:
        lv += k if c == "U" else -1
        out.append(lv)
    return out


def prime_decompose(p: LatticePath) -> list[LatticePath]:
    if p.family != "dyck":
        raise ValueError("prime decomposition is defined for dyck paths")
    factors = []
    start = 0
    for i, lv in enumerate(_level_trace(p.word, p.k)):
        if lv == 0:
            factors.append(LatticePath("dyck", p.k, p.word[start : i + 1]))
            start = i + 1
    return factors


def is_prime(p: LatticePath) -> bool:
    trace = _level_trace(p.word, p.k)
    return bool(trace) and trace[-1] == 0 and all(lv > 0 for lv in trace[:-1])


def schb_lift(p: LatticePath) -> LatticePath:
    """Replace every H of a type-B Schröder path by UD."""
    if p.family != "schroeder-b":
        raise ValueError("the lift is defined for schroeder-b paths")
    return LatticePath("dyck", p.k, p.word.replace("H", "UD"))


@dataclass(frozen=True)
class KAryTree:
    """A node of a (k+1)-ary tree; ``children`` has k+1 slots, ``None`` = empty."""

    children: tuple

    @property
    def arity(self) -> int:
        return len(self.children)

    @property
    def size(self) -> int:
        return 1 + sum(c.size for c in self.children if c is not None)

    def __str__(self):
        return "(" + ",".join("." if c is None else str(c) for c in self.children) + ")"


def tree_size(t: Optional[KAryTree]) -> int:
    return 0 if t is None else t.size


def split_first_return(word: str, k: int) -> list[str]:
    """Split a nonempty k-Dyck word as U mu_1 D mu_2 D ... mu_k D mu_{k+1}."""
    if not word or word[0] != "U":
        raise InvalidPath(f"{word!r} does not start with U")
    parts = []
    lv = k
    start = 1
    target = k - 1
    for i in range(1, len(word)):
        lv += k if word[i] == "U" else -1
        if lv == target:
            parts.append(word[start:i])
            start = i + 1
            if target == 0:
                break
            target -= 1
    parts.append(word[start:])
    if len(parts) != k + 1:
        raise InvalidPath(f"{word!r} is not a k-Dyck path for k={k}")
    return parts


def dyck_to_tree(p: LatticePath) -> Optional[KAryTree]:
    if p.family != "dyck":
        raise ValueError("the tree bijection is defined for dyck paths")
    validate(p)

    def build(w: str) -> Optional[KAryTree]:
        if not w:
            return None
        return KAryTree(tuple(build(part) for part in split_first_return(w, p.k)))

    return build(p.word)


def tree_to_dyck(t: Optional[KAryTree], k: int) -> LatticePath:
    def word(node: Optional[KAryTree]) -> str:
        if node is None:
            return ""
        if node.arity != k + 1:
            raise ValueError(f"node with {node.arity} children in a {k + 1}-ary tree")
        cs = node.children
        return "U" + "".join(word(c) + "D" for c in cs[:-1]) + word(cs[-1])

    return LatticePath("dyck", k, word(t))


def tree_statistic_NT(t: Optional[KAryTree]) -> int:
    """One plus the number of internal edges leading to a right-most child."""
    if t is None:
        raise ValueError("N(T) is undefined for the empty tree")

    def count(node: KAryTree) -> int:
        total = 1 if node.children[-1] is not None else 0
        return total + sum(count(c) for c in node.children if c is not None)

    return 1 + count(t)
