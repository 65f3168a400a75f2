"""Command-line front end.

    latpath paths   --family dyck --n 2 --k 2 [--j J] [--json]
    latpath dimers  --n 3 [--regime standard] [--weighting standard] [--colors M] [--json]
    latpath recur   --kind fibonacci --n 3 [--k K] [--json]
    latpath series  --id chi --order 4 [--k K] [--set m=2 ...] [--normalized] [--json]
    latpath count   --name fuss-catalan --n 4 --k 2 [--j J] [--mode closed|enum|both] [--csv|--json]
    latpath verify  --suite recurrence-vs-dimers [--max-n N] [--max-k K] [--jobs J] [--json]

``--n``, ``--k`` and ``--j`` of ``count`` also take ranges (``1..6``) or
comma lists, which turns the output into a grid.

Exit status: 0 success, 1 verification failure or count mismatch, 2 usage error.
LATPATH_MAX_N caps every size and grid bound.

Config file (``--config FILE``), INI style with a single ``[latpath]``
section; flags given on the command line win::

    [latpath]
    order = 6
    max_n = 6
    max_k = 3
    jobs = 1
"""
from __future__ import annotations

import argparse
import configparser
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import closedforms as CF
from . import dimers as D
from . import paths as P
from . import recurrences as R
from . import series as S
from .polyring import MultiPoly, RSeries, m, poly_sum

DEFAULTS = {"order": 6, "max_n": 6, "max_k": 3, "jobs": 1}
ENV_CAP = "LATPATH_MAX_N"


class UsageError(Exception):
    pass


def _cap() -> Optional[int]:
    raw = os.environ.get(ENV_CAP)
    if not raw:
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{ENV_CAP} must be an integer, got {raw!r}") from None


def _check_size(n: int, what: str = "n"):
    cap = _cap()
    if cap is not None and n > cap:
        raise UsageError(f"{what}={n} exceeds {ENV_CAP}={cap}")


def _clamp(n: int) -> int:
    cap = _cap()
    return n if cap is None else min(n, cap)


def _int_list(text: str) -> list[int]:
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise UsageError(f"empty integer list {text!r}")
    return out


def _emit(out, record: dict, as_json: bool, text: str):
    out.write((json.dumps(record, sort_keys=True) if as_json else text) + "\n")


# -- count: closed form and enumeration side by side -----------------------


def _enum_runyon(n, k, j):
    return sum(1 for p in P.enum_paths("dyck", n, k) if P.count_peaks(p.word) == j + 1)


def _enum_alpha(n, k):
    if n == 0:
        return 1
    return sum((-1) ** j * 2 ** (n - j) * len(P.enum_A_paths(n, k, j)) for j in range(n + 1))


def _enum_chi_star_q1(n):
    return S.path_sum("chi-star", n, "dyck").eval(q=1) * (-1) ** n


ENUMERATORS: dict[str, Callable] = {
    "catalan": lambda n: len(P.enum_paths("dyck", n, 1)),
    "fuss-catalan": lambda n, k: len(P.enum_paths("dyck", n, k)),
    "sch-a": lambda n, k: len(P.enum_paths("schroeder-a", n, k)),
    "sch-b": lambda n, k: len(P.enum_paths("schroeder-b", n, k)),
    "sch-b-binomial": lambda n, k: len(P.enum_paths("schroeder-b", n, k)),
    "schroeder": lambda n: len(P.enum_paths("schroeder-b", n, 1)),
    "motzkin": lambda n, k: len(P.enum_paths("motzkin", n, k)),
    "runyon": _enum_runyon,
    "narayana": lambda n, j: sum(1 for p in P.enum_paths("dyck", n, 1) if P.count_peaks(p.word) == j),
    "s-k-11": lambda n, k: S.path_sum(S.EquationId("nu", k), n).eval(m=2, u=2, s=1).to_int(),
    "xi-special": lambda n, k: S.path_sum(S.EquationId("xi", k), n).eval(m=2, u=2, s=1).to_int(),
    "alpha": _enum_alpha,
    "a-count": lambda n, k, j: len(P.enum_A_paths(n, k, j)),
    "chi-star-q1": _enum_chi_star_q1,
}


def enumerate_count(name: str, **params):
    f = CF.FORMULAS[name]
    return ENUMERATORS[name](**{p: params[p] for p in f.params})


def _fmt(v) -> str:
    return str(v)


# -- verification suites ---------------------------------------------------


@dataclass
class Cell:
    label: str
    ok: bool
    detail: str = ""

    def as_dict(self):
        d = {"cell": self.label, "status": "pass" if self.ok else "fail"}
        if not self.ok:
            d["mismatch"] = self.detail
        return d


@dataclass
class VerifySuiteReport:
    suite: str
    max_n: int
    max_k: int
    cells: list[Cell] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.cells)

    def as_dict(self):
        return {
            "suite": self.suite,
            "grid": {"n": [0, self.max_n], "k": [1, self.max_k]},
            "status": "pass" if self.ok else "fail",
            "cells": [c.as_dict() for c in self.cells],
            "seconds": round(self.seconds, 3),
        }


def _cmp(label: str, got, want) -> Cell:
    if got == want:
        return Cell(label, True)
    return Cell(label, False, f"{got}  !=  {want}")


def _series_poly(x: RSeries) -> str:
    return str(x)


def _cell_recurrence(kind: str, regime: str, weighting: str, n: int) -> Cell:
    got = R.compute_G(kind, n)
    want = D.brute_gf(n, regime, weighting)
    label = f"{kind} vs {regime}{'/' + weighting if weighting != 'standard' else ''} n={n}"
    return _cmp(label, _series_poly(got.pad(n)), _series_poly(want))


def _grid_recurrence(max_n, max_k):
    n_top = min(max_n, 8)
    cells = []
    for n in range(n_top + 1):
        cells.append(("fibonacci", "standard", "standard", n))
        cells.append(("empty-dimer", "standard", "empty-dimer", n))
        cells.append(("dist2", "same-color-dist2", "standard", n))
        cells.append(("type-2-G(2)", "component-gap(2)", "standard", n))
        for k in range(1, max_k + 1):
            cells.append((f"type-2-H({k})", f"component-gap({k})", "standard", n))
            cells.append((f"type-3({k})", f"glued({k})", "standard", n))
    return _cell_recurrence, cells


def _cell_series(eq: str, n: int) -> Cell:
    e = S.parse_id(eq)
    got = S.normalized_coeff(e, n, S.solve(e, n))
    if e.tag == "zeta":
        got = got.eval(m=1)
    want = S.path_sum(e, n)
    return _cmp(f"{e} n={n}", str(got), str(want))


def _cell_residual(eq: str, order: int) -> Cell:
    e = S.parse_id(eq)
    res = S.residual(e, S.solve(e, order))
    return Cell(f"{e} residual order<={order}", res.is_zero(), "" if res.is_zero() else str(res))


def _series_cell(kind: str, eq: str, n: int) -> Cell:
    return _cell_series(eq, n) if kind == "paths" else _cell_residual(eq, n)


def _grid_series(max_n, max_k):
    cells = []
    ids = ["chi", "zeta"]
    for k in range(1, max_k + 1):
        ids += [f"nu({k})", f"nu-motzkin({k})", f"xi({k})", f"kappa({k})", f"chi-star-k({k})"]
    for eq in ids:
        for n in range(max_n + 1):
            cells.append(("paths", eq, n))
    res_ids = ["chi", "chi-star", "zeta"] + [
        f"{t}({k})"
        for k in range(1, max_k + 1)
        for t in ("chi-star-k", "nu", "nu-motzkin", "xi", "kappa", "alpha", "beta")
    ]
    order = max(max_n, 8)
    cells += [("residual", eq, _clamp(order)) for eq in res_ids]
    return _series_cell, cells


def _closed_cell(name: str, params: tuple) -> Cell:
    kw = dict(params)
    label = f"{name} " + " ".join(f"{a}={b}" for a, b in params)
    return _cmp(label, CF.count(name, **kw), enumerate_count(name, **kw))


def _grid_closed(max_n, max_k):
    cells = []
    for name, f in CF.FORMULAS.items():
        top = min(max_n, 5) if name in ("a-count", "alpha") else max_n
        for n in range(top + 1):
            for k in (range(1, max_k + 1) if "k" in f.params else [None]):
                js: list = [None]
                if name == "runyon":
                    js = list(range(0, n))
                elif name == "narayana":
                    js = list(range(1, n + 1))
                elif name == "a-count":
                    js = list(range(0, n + 1))
                for j in js:
                    if n == 0 and name in ("runyon", "narayana", "a-count"):
                        continue
                    params = tuple(
                        (p, v) for p, v in (("n", n), ("k", k), ("j", j)) if p in f.params
                    )
                    cells.append((name, params))
    return _closed_cell, cells


def _duality_cell(n: int, k: int) -> Cell:
    eq = S.EquationId("chi-star-k", k)
    dyck = S.path_sum(eq, n, "dyck")
    schb = S.path_sum(eq, n, "schroeder-b")
    bad_d = [
        p.word
        for p in P.enum_paths("schroeder-b", n, k)
        if (d := P.path_stats(p).d_stat if n else 0) is None or d < 0
    ]
    if bad_d:
        return Cell(f"chi-star-k({k}) n={n}", False, f"negative d on {bad_d[:3]}")
    return _cmp(f"chi-star-k({k}) n={n}", str(dyck), str(schb))


def _grid_duality(max_n, max_k):
    return _duality_cell, [(n, k) for k in range(1, max_k + 1) for n in range(min(max_n, 5) + 1)]


def ladder_values(name: str, n: int, k: int = 1) -> tuple[int, int]:
    """(series-side value, reference count) for one specialisation."""
    def at(eq, **vals):
        return S.path_sum(S.EquationId(*eq), n).eval(s=1, **vals).to_int() if n else 1

    if name == "chi-00":
        return at(("chi",), m=1, u=1), CF.catalan(n)
    if name == "chi-01":
        return at(("chi",), m=1, u=2), 2 ** n * CF.catalan(n)
    if name == "chi-10":
        return at(("chi",), m=2, u=1), CF.schroeder(n)
    if name == "chi-11":
        return at(("chi",), m=2, u=2), CF.s_k_11(n, 1)
    if name == "type-1":
        return at(("nu", k), m=2, u=1), CF.sch_a(n, k)
    if name == "type-3":
        return at(("kappa", k), m=2, u=1), CF.sch_b(n, k)
    if name == "xi":
        return at(("xi", 1), m=2, u=2), 4 ** n * CF.catalan(n)
    raise ValueError(name)


def _ladder_cell(name: str, n: int, k: int) -> Cell:
    got, want = ladder_values(name, n, k)
    # the series coefficient itself, not just the path sum, must also agree
    if name.startswith("chi") or name == "xi":
        eq = S.EquationId("chi") if name.startswith("chi") else S.EquationId("xi", 1)
    else:
        eq = S.EquationId("nu" if name == "type-1" else "kappa", k)
    mu = {"chi-00": (1, 1), "chi-01": (1, 2), "chi-10": (2, 1), "chi-11": (2, 2), "xi": (2, 2)}.get(
        name, (2, 1)
    )
    series_val = S.normalized_coeff(eq, n, S.solve(eq, n)).eval(m=mu[0], u=mu[1], s=1).to_int()
    label = f"{name} k={k} n={n}"
    if series_val != got:
        return Cell(label, False, f"series {series_val} != path sum {got}")
    return _cmp(label, got, want)


def _grid_ladders(max_n, max_k):
    top = max(max_n, 7)
    top = _clamp(top)
    cells = []
    for n in range(top + 1):
        for name in ("chi-00", "chi-01", "chi-10", "chi-11", "xi"):
            cells.append((name, n, 1))
        for k in range(1, max_k + 1):
            cells.append(("type-1", n, k))
            cells.append(("type-3", n, k))
    return _ladder_cell, cells


def _s(*exps) -> MultiPoly:
    return poly_sum(MultiPoly.monomial(s=e) for e in exps)


# the four zeta polynomials displayed for the tree-statistic experiment
ZETA_PRINTED = {
    0: MultiPoly.const(1),
    1: m,
    2: m ** 2 + m * _s(1, 2),
    3: m ** 3 + m ** 2 * (2 * _s(1) + 3 * _s(2) + _s(4)) + m * _s(3, 3, 4, 5, 6),
    4: m ** 4
    + m ** 3 * _s(1, 1, 1, 2, 2, 2, 2, 2, 3, 4, 4, 6)
    + m ** 2 * _s(2, 3, 3, 3, 3, 3, 3, 4, 4, 4, 4, 4, 4, 5, 5, 5, 5, 5, 5, 5, 6, 6, 7, 7, 7, 8, 8, 8, 10)
    + m * _s(6, 6, 6, 6, 7, 7, 8, 9, 9, 9, 10, 11, 12),
}


def _zeta_cell(n: int, what: str) -> Cell:
    z = S.zeta_polynomials(n)[n]
    if what == "printed":
        return _cmp(f"zeta_{n} printed", str(z), str(ZETA_PRINTED[n]))
    tree = S.zeta_tree_sum(n)
    if n <= 3:
        return _cmp(f"zeta'_{n} == zeta_{n}", str(tree), str(z))
    ok = tree != z
    return Cell(f"zeta'_{n} != zeta_{n}", ok, "" if ok else f"both {z}")


def _grid_zeta(max_n, max_k):
    cells = [(n, "printed") for n in range(5)] + [(n, "tree") for n in range(5)]
    return _zeta_cell, cells


SUITES = {
    "recurrence-vs-dimers": _grid_recurrence,
    "series-vs-paths": _grid_series,
    "closedform-vs-enum": _grid_closed,
    "schb-duality": _grid_duality,
    "specialization-ladders": _grid_ladders,
    "zeta-problem1": _grid_zeta,
}


def _run_cell(args):
    fn, cell = args
    return fn(*cell)


def run_suite(name: str, max_n: int = 6, max_k: int = 3, jobs: int = 1) -> VerifySuiteReport:
    if name not in SUITES:
        raise UsageError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    max_n = _clamp(max_n)
    start = time.perf_counter()
    fn, cells = SUITES[name](max_n, max_k)
    if jobs > 1 and len(cells) > 1:
        # map keeps grid order, so output does not depend on scheduling
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_cell, [(fn, c) for c in cells]))
    else:
        results = [fn(*c) for c in cells]
    report = VerifySuiteReport(name, max_n, max_k, results)
    report.seconds = time.perf_counter() - start
    return report


# -- argument handling -----------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="latpath", description="Lattice paths, dimer recurrences and their series.")
    ap.add_argument("--config", help="INI file with a [latpath] section of defaults")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("paths", help="enumerate paths with their statistics")
    p.add_argument("--family", required=True, choices=P.FAMILIES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--j", type=int, help="number of u steps (a-family only)")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("dimers", help="brute-force dimer generating function or configurations")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--regime", default="standard")
    p.add_argument("--weighting", default="standard", choices=("standard", "empty-dimer"))
    p.add_argument("--colors", type=int, help="list explicit configurations with this many colours")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("recur", help="G_n from a recurrence")
    p.add_argument("--kind", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("series", help="solve a functional equation")
    p.add_argument("--id", required=True, dest="eq")
    p.add_argument("--order", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--set", action="append", default=[], metavar="VAR=INT")
    p.add_argument("--normalized", action="store_true", help="strip the (-s)^n or (-q)^n factor")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("count", help="closed-form counts")
    p.add_argument("--name", required=True, choices=sorted(CF.FORMULAS))
    p.add_argument("--n", required=True)
    p.add_argument("--k")
    p.add_argument("--j")
    p.add_argument("--mode", default="closed", choices=("closed", "enum", "both"))
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--csv", action="store_true")
    fmt.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    p.add_argument("--max-n", type=int)
    p.add_argument("--max-k", type=int)
    p.add_argument("--jobs", type=int)
    p.add_argument("--json", action="store_true")
    return ap


def load_config(path: Optional[str]) -> dict:
    conf = dict(DEFAULTS)
    if not path:
        return conf
    cp = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as fh:
            cp.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if cp.has_section("latpath"):
        for key, val in cp.items("latpath"):
            if key not in DEFAULTS:
                raise UsageError(f"unknown config key {key!r}")
            try:
                conf[key] = int(val)
            except ValueError:
                raise UsageError(f"config key {key} needs an integer") from None
    return conf


def _parse_set(items: list[str]) -> dict[str, int]:
    out = {}
    for item in items:
        name, sep, val = item.partition("=")
        if not sep:
            raise UsageError(f"--set expects VAR=INT, got {item!r}")
        try:
            out[name.strip()] = int(val)
        except ValueError:
            raise UsageError(f"--set {name}: {val!r} is not an integer") from None
    return out


def cmd_paths(a, conf, out) -> int:
    _check_size(a.n)
    if a.family == "a-family":
        if a.j is None:
            raise UsageError("a-family needs --j")
        items = P.enum_A_paths(a.n, a.k, a.j)
    else:
        items = P.enum_paths(a.family, a.n, a.k)
    for p in items:
        rec = P.to_record(p)
        st = rec["stats"]
        text = (p.word or "(empty)") + "  " + " ".join(f"{key}={st[key]}" for key in st)
        _emit(out, rec, a.json, text)
    return 0


def cmd_dimers(a, conf, out) -> int:
    _check_size(a.n)
    if a.colors is not None:
        for cfg in D.enum_configs(a.n, a.regime, a.colors):
            rec = cfg.as_dict()
            text = " ".join(f"{c['start']}:{'-'.join(map(str, c['colors']))}" for c in rec["components"])
            _emit(out, rec, a.json, text or "(empty)")
        return 0
    gf = D.brute_gf(a.n, a.regime, a.weighting)
    for i, c in enumerate(gf.coeffs):
        _emit(out, {"n": a.n, "regime": a.regime, "order": i, "coeff": str(c)}, a.json, f"{i}: {c}")
    return 0


def cmd_recur(a, conf, out) -> int:
    _check_size(a.n)
    kind = R.parse_kind(a.kind, a.k)
    g = R.compute_G(kind, a.n)
    poly = _flatten(g)
    _emit(out, {"kind": str(kind), "n": a.n, "G": poly}, a.json, poly)
    return 0


def _flatten(x: RSeries) -> str:
    """Canonical string of sum_n coeff_n * var^n, var treated as a factor."""
    parts = []
    for n, c in enumerate(x.coeffs):
        if c.is_zero():
            continue
        if n == 0:
            parts.append(str(c))
        else:
            pw = x.var if n == 1 else f"{x.var}^{n}"
            parts.append(f"({c})*{pw}")
    return " + ".join(parts) or "0"


def cmd_series(a, conf, out) -> int:
    order = a.order if a.order is not None else conf["order"]
    _check_size(order, "order")
    eq = S.parse_id(a.eq, a.k)
    binds = _parse_set(a.set)
    x = S.solve(eq, order)
    for n in range(order + 1):
        c = S.normalized_coeff(eq, n, x) if a.normalized else x[n]
        if binds:
            c = c.eval(binds)
        _emit(out, {"id": str(eq), "order": n, "coeff": str(c)}, a.json, f"{n}: {c}")
    return 0


def cmd_count(a, conf, out) -> int:
    f = CF.FORMULAS[a.name]
    given = {"n": a.n, "k": a.k, "j": a.j}
    axes = {}
    for p in f.params:
        if given[p] is None:
            raise UsageError(f"{a.name} needs --{p}")
        axes[p] = _int_list(given[p])
    for v in axes["n"]:
        _check_size(v)
    grid = [{}]
    for p in f.params:
        grid = [dict(g, **{p: v}) for g in grid for v in axes[p]]
    status = 0
    if a.csv:
        cols = list(f.params) + {"closed": ["closed"], "enum": ["enum"], "both": ["closed", "enum", "match"]}[a.mode]
        out.write(",".join(cols) + "\n")
    for params in grid:
        rec = dict(params)
        try:
            closed = CF.count(a.name, **params)
        except ValueError:
            if len(grid) == 1:
                raise
            continue  # outside the formula's domain; grids skip such cells
        if a.mode in ("closed", "both"):
            rec["closed"] = _fmt(closed)
        if a.mode in ("enum", "both"):
            rec["enum"] = _fmt(enumerate_count(a.name, **params))
        if a.mode == "both":
            rec["match"] = rec["closed"] == rec["enum"]
            if not rec["match"]:
                status = 1
        if a.csv:
            out.write(",".join(str(rec[c]).lower() if isinstance(rec[c], bool) else str(rec[c]) for c in cols) + "\n")
        elif a.json:
            _emit(out, dict(rec, name=a.name), True, "")
        elif a.mode == "both":
            out.write(f"{rec['closed']} {rec['enum']} {'match' if rec['match'] else 'MISMATCH'}\n")
        else:
            out.write(rec["closed" if a.mode == "closed" else "enum"] + "\n")
    return status


def cmd_verify(a, conf, out) -> int:
    max_n = a.max_n if a.max_n is not None else conf["max_n"]
    max_k = a.max_k if a.max_k is not None else conf["max_k"]
    jobs = a.jobs if a.jobs is not None else conf["jobs"]
    if max_n < 0 or max_k < 1 or jobs < 1:
        raise UsageError("need --max-n >= 0, --max-k >= 1, --jobs >= 1")
    rep = run_suite(a.suite, max_n, max_k, jobs)
    if a.json:
        out.write(json.dumps(rep.as_dict(), sort_keys=True) + "\n")
    else:
        for c in rep.cells:
            line = f"{'pass' if c.ok else 'FAIL'}  {c.label}"
            if not c.ok:
                line += f"\n      {c.detail}"
            out.write(line + "\n")
        passed = sum(c.ok for c in rep.cells)
        out.write(f"{rep.suite}: {passed}/{len(rep.cells)} cells pass\n")
    return 0 if rep.ok else 1


COMMANDS = {
    "paths": cmd_paths,
    "dimers": cmd_dimers,
    "recur": cmd_recur,
    "series": cmd_series,
    "count": cmd_count,
    "verify": cmd_verify,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        a = build_parser().parse_args(argv)
        conf = load_config(a.config)
        return COMMANDS[a.command](a, conf, out)
    except UsageError as exc:
        err.write(f"latpath: {exc}\n")
        return 2
    except (ValueError, P.InvalidPath) as exc:
        err.write(f"latpath: {exc}\n")
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
