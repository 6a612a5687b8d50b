"""Catalogue of identities and the grid runner that checks them.

Every identity has a default parameter grid (a list of dicts) and a checker.
Mod-p checkers run once per prime and return one cell per parameter and
weight; the exact (word algebra) and real (classical) checkers run once.
Primes at or below ``2N`` are evaluated but flagged as outside the
guaranteed range, so their failures do not count.
"""
from __future__ import annotations

import itertools
import operator
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from . import classical
from .fmzv import EvalContext, zeta_A, zeta_A_combo, zeta_A_word
from .indices import (
    all_ones,
    enumerate_e,
    format_index,
    hoffman_dual,
    index_shuffle,
    indices_of_weight,
    oplus,
)
from .modmath import check_prime
from .report import Report, ReportEntry
from .series import (
    O_series,
    TruncSeries,
    U_telescope_sides,
    lemma_sides,
    main_rhs_series,
    odd_square_series,
    ohno_sum,
    sum_formula_sides,
)
from .words import WordPoly, build_P, build_Q, pq_difference_as_shuffles, pq_shuffle_expansion, shuffle

__all__ = [
    "IDENTITY_IDS",
    "Identity",
    "CATALOG",
    "default_grid",
    "apply_filters",
    "format_params",
    "run_identity",
    "run_all",
    "DEFAULT_CUTOFF",
]

DEFAULT_CUTOFF = 12

# (weight, lhs, rhs, passed)
Cell = tuple[int | None, str, str, bool]


@dataclass(frozen=True)
class Identity:
    name: str
    kind: str  # "modp", "exact" or "real"
    grid: Callable[[int], list[dict]]
    check: Callable


def format_params(params: dict) -> str:
    parts = []
    for key, v in params.items():
        if isinstance(v, tuple):
            v = format_index(v)
        elif isinstance(v, str) and key in ("w", "w2"):
            v = v or "1"
        parts.append(f"{key}={v}")
    return ",".join(parts)


def _sgn(n: int) -> int:
    return -1 if n % 2 else 1


def _cell(weight, lhs: int, rhs: int, p: int) -> Cell:
    lhs, rhs = lhs % p, rhs % p
    return weight, str(lhs), str(rhs), lhs == rhs


def _series_cells(lhs: TruncSeries, rhs: TruncSeries) -> list[Cell]:
    return [(w, str(a), str(b), a == b) for w, (a, b) in enumerate(zip(lhs.coeffs, rhs.coeffs))]


def _cap(limit: int, N: int) -> int:
    return min(limit, N)


def _star(mode: str) -> bool:
    return mode == "star"


MODES = ("strict", "star")

# ---------------------------------------------------------------- grids


def _grid_dep1(N):
    return [{"k": k, "mode": mode} for k in range(1, N + 1) for mode in MODES]


def _grid_symsum(N):
    out = []
    for k in indices_of_weight(1, _cap(8, N), max_depth=4):
        if list(k) == sorted(k):
            out.extend({"k": k, "mode": mode} for mode in MODES)
    return out


def _grid_dep2(N):
    return [{"k": k, "mode": mode} for k in indices_of_weight(2, _cap(10, N)) if len(k) == 2 for mode in MODES]


def _grid_weight8(N, max_depth=None):
    return [{"k": k} for k in indices_of_weight(1, _cap(8, N), max_depth=max_depth)]


def _grid_112(N, with_mode=True):
    out = []
    for a in range(N - 1):
        for b in range(N - 1 - a):
            if with_mode:
                out.extend({"a": a, "b": b, "mode": mode} for mode in MODES)
            else:
                out.append({"a": a, "b": b})
    return out


def _grid_sum_formula(N):
    return [
        {"i": i, "j": j, "n": n, "mode": mode}
        for i in range(3)
        for j in range(3 - i)
        for n in range(i + j + 2, _cap(8, N) + 1)
        for mode in MODES
    ]


def _grid_ohno(N):
    return [
        {"k": k, "m": m} for k in indices_of_weight(1, 5) for m in range(4) if sum(k) + m <= N
    ]


SHF_W = ("y", "yx", "yy", "yxy", "yyx")
SHF_W2 = ("", "y", "yx", "yy")


def _grid_words(N):
    return [{"w": w, "w2": w2} for w in SHF_W for w2 in SHF_W2]


def _grid_pq_exact(N):
    return [
        {"l": l, "m": m, "form": form}
        for l in itertools.product(range(1, 4), repeat=3)
        for m in range(5)
        for form in ("Q", "P-Q")
    ]


def _grid_pq2(N):
    return [{"l": l, "m": m} for l in itertools.product(range(1, 4), repeat=3) for m in range(4) if sum(l) + m <= N]


def _triples(total):
    return [k for k in itertools.product(range(1, total + 1), repeat=3) if sum(k) <= total]


def _grid_triples7(N):
    return [{"k": k} for k in _triples(7)]


def _grid_U(N):
    return [{"k": k, "s": s} for s in range(3, N + 2) for k in range(1, s)]


def _grid_O1(N):
    return [{"k": (k,)} for k in range(1, 6)]


def _grid_O2(N):
    return [{"k": k} for k in indices_of_weight(2, 6) if len(k) == 2]


def _grid_k2eq2(N):
    return [{"k": (k1, 2, k3)} for k1 in range(1, 5) for k3 in range(1, 5) if k1 + k3 <= 5]


def _grid_kaneko(N):
    return [{"k": (2, 1, 2)}]


def _grid_classical(N):
    admissible = [k for k in indices_of_weight(2, 4) if k[-1] >= 2]
    return [{"k": k, "m": m} for k in admissible for m in range(3)]


# ---------------------------------------------------------------- mod-p checks


def _check_dep1(prm, ctx, N):
    return [_cell(prm["k"], zeta_A((prm["k"],), ctx, _star(prm["mode"])), 0, ctx.p)]


def _check_symsum(prm, ctx, N):
    k, star = prm["k"], _star(prm["mode"])
    total = sum(zeta_A(perm, ctx, star) for perm in itertools.permutations(k))
    return [_cell(sum(k), total, 0, ctx.p)]


def _check_dep2(prm, ctx, N):
    (k1, k2), star = prm["k"], _star(prm["mode"])
    rhs = _sgn(k1 + 1) * ctx.binom(k1 + k2, k1) * ctx.frak_z(k1 + k2)
    return [_cell(k1 + k2, zeta_A((k1, k2), ctx, star), rhs, ctx.p)]


def _check_antipode(prm, ctx, N):
    k = prm["k"]
    r = len(k)
    total = sum(_sgn(i) * zeta_A(k[:i], ctx, True) * zeta_A(k[i:][::-1], ctx) for i in range(r + 1))
    return [_cell(sum(k), total, 0, ctx.p)]


def _check_hoffman(prm, ctx, N):
    k = prm["k"]
    return [_cell(sum(k), zeta_A(k, ctx, True), -zeta_A(hoffman_dual(k), ctx, True), ctx.p)]


def _check_reversal(prm, ctx, N):
    k = prm["k"]
    return [_cell(sum(k), zeta_A(k, ctx), _sgn(sum(k)) * zeta_A(k[::-1], ctx), ctx.p)]


def _ones_two_ones(a, b):
    return all_ones(a) + (2,) + all_ones(b)


def _check_112(prm, ctx, N):
    a, b = prm["a"], prm["b"]
    n = a + b + 2
    rhs = _sgn(a + 1) * ctx.binom(n, a + 1) * ctx.frak_z(n)
    return [_cell(n, zeta_A(_ones_two_ones(a, b), ctx, _star(prm["mode"])), rhs, ctx.p)]


def _check_parity112(prm, ctx, N):
    a, b = prm["a"], prm["b"]
    v = zeta_A(_ones_two_ones(a, b), ctx, True)
    return [_cell(a + b + 2, v, _sgn(a + b + 1) * v, ctx.p)]


def _check_sum_formula(prm, ctx, N):
    i, j, n = prm["i"], prm["j"], prm["n"]
    strict, star, f = sum_formula_sides(i, j, n, ctx)
    if prm["mode"] == "strict":
        return [_cell(n, strict, f, ctx.p)]
    return [_cell(n, star, _sgn(i + j + 1) * f, ctx.p)]


def _check_oyama(prm, ctx, N):
    k, m = prm["k"], prm["m"]
    kv = hoffman_dual(k)
    rhs = sum(zeta_A(hoffman_dual(oplus(kv, e)), ctx) for e in enumerate_e(len(kv), m))
    return [_cell(sum(k) + m, ohno_sum(k, m, ctx), rhs, ctx.p)]


def _check_ohno_fs(prm, ctx, N):
    k, m = prm["k"], prm["m"]
    lhs = zeta_A_combo(index_shuffle(k, all_ones(m)), ctx, True)
    return [_cell(sum(k) + m, lhs, ohno_sum(k, m, ctx, True), ctx.p)]


def _check_shF(prm, ctx, N):
    w, w2 = prm["w"], prm["w2"]
    lhs = zeta_A_word(shuffle(w, w2).append("y"), ctx)
    rhs = _sgn(len(w2)) * zeta_A_word(w + "y" + w2[::-1], ctx)
    return [_cell(len(w) + len(w2), lhs, rhs, ctx.p)]


def _check_shF2(prm, ctx, N):
    w, w2 = prm["w"], prm["w2"]
    lhs = zeta_A_word(shuffle(w + "y", w2 + "y"), ctx)
    return [_cell(len(w) + len(w2) + 1, lhs, 0, ctx.p)]


def _check_pq2(prm, ctx, N):
    (l1, l2, l3), m = prm["l"], prm["m"]
    lhs = zeta_A_word(build_P(m, l1, l2, l3) - build_Q(m, l1, l2, l3), ctx)
    return [_cell(l1 + l2 + l3 + m, lhs, 0, ctx.p)]


def _check_lemma(which):
    def check(prm, ctx, N):
        return _series_cells(*lemma_sides(which, *prm["k"], ctx, N))

    return check


def _check_U(prm, ctx, N):
    lhs, rhs = U_telescope_sides(prm["k"], prm["s"], ctx)
    return [_cell(prm["s"] - 1, lhs, rhs, ctx.p)]


def _check_O_zero(prm, ctx, N):
    return _series_cells(O_series(prm["k"], ctx, N), TruncSeries.zero(ctx.p, N))


def _check_main(prm, ctx, N):
    return _series_cells(O_series(prm["k"], ctx, N), main_rhs_series(*prm["k"], ctx, N))


def _check_kaneko(prm, ctx, N):
    return _series_cells(O_series(prm["k"], ctx, N), odd_square_series(ctx, N))


# ---------------------------------------------------------------- exact / real checks


def _describe(poly: WordPoly) -> str:
    text = repr(poly)
    return text if len(text) <= 80 else f"WordPoly<{len(poly)} terms, degree {sorted(poly.degrees())}>"


def _check_pq_exact(prm, N):
    (l1, l2, l3), m = prm["l"], prm["m"]
    if prm["form"] == "Q":
        lhs, rhs = build_Q(m, l1, l2, l3), pq_shuffle_expansion(m, l1, l2, l3)
    else:
        lhs, rhs = build_P(m, l1, l2, l3) - build_Q(m, l1, l2, l3), pq_difference_as_shuffles(m, l1, l2, l3)
    return [(l1 + l2 + l3 + m, _describe(lhs), _describe(rhs), lhs == rhs)]


def _check_classical(prm, N):
    e = classical.verify_ohno_classical(prm["k"], prm["m"])
    return [(e.weight, e.lhs, e.rhs, e.passed)]


CATALOG: dict[str, Identity] = {
    ident.name: ident
    for ident in [
        Identity("dep1_vanish", "modp", _grid_dep1, _check_dep1),
        Identity("symsum", "modp", _grid_symsum, _check_symsum),
        Identity("dep2_eval", "modp", _grid_dep2, _check_dep2),
        Identity("antipode", "modp", lambda N: _grid_weight8(N, max_depth=4), _check_antipode),
        Identity("hoffman_duality", "modp", _grid_weight8, _check_hoffman),
        Identity("reversal", "modp", _grid_weight8, _check_reversal),
        Identity("eval_112", "modp", _grid_112, _check_112),
        Identity("parity_112", "modp", lambda N: _grid_112(N, with_mode=False), _check_parity112),
        Identity("sum_formula", "modp", _grid_sum_formula, _check_sum_formula),
        Identity("oyama", "modp", _grid_ohno, _check_oyama),
        Identity("ohno_fs", "modp", _grid_ohno, _check_ohno_fs),
        Identity("shF", "modp", _grid_words, _check_shF),
        Identity("shF2", "modp", _grid_words, _check_shF2),
        Identity("PQ_exact", "exact", _grid_pq_exact, _check_pq_exact),
        Identity("PQ2_modp", "modp", _grid_pq2, _check_pq2),
        Identity("lemma_A", "modp", _grid_triples7, _check_lemma("A")),
        Identity("lemma_B", "modp", _grid_triples7, _check_lemma("B")),
        Identity("U_telescope", "modp", _grid_U, _check_U),
        Identity("O_depth1", "modp", _grid_O1, _check_O_zero),
        Identity("O_depth2", "modp", _grid_O2, _check_O_zero),
        Identity("main", "modp", _grid_triples7, _check_main),
        Identity("main_k2eq2", "modp", _grid_k2eq2, _check_O_zero),
        Identity("kaneko_conjecture", "modp", _grid_kaneko, _check_kaneko),
        Identity("ohno_classical", "real", _grid_classical, _check_classical),
    ]
}

IDENTITY_IDS: tuple[str, ...] = tuple(CATALOG)


def _identity(name: str) -> Identity:
    try:
        return CATALOG[name]
    except KeyError:
        raise ValueError(f"unknown identity {name!r}; choose from {', '.join(IDENTITY_IDS)}") from None


def default_grid(name: str, N: int = DEFAULT_CUTOFF) -> list[dict]:
    return _identity(name).grid(N)


# ---------------------------------------------------------------- parameter filters

_OPS = {
    "<=": operator.le,
    ">=": operator.ge,
    "!=": operator.ne,
    "==": operator.eq,
    "<": operator.lt,
    ">": operator.gt,
    "=": operator.eq,
}
_CLAUSE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*(<=|>=|!=|==|<|>|=)\s*(-?\d+)\s*$")


def _derived(params: dict) -> dict:
    out = dict(params)
    k = params.get("k")
    if isinstance(k, tuple):
        out.setdefault("k_sum", sum(k))
        out.setdefault("depth", len(k))
        for pos, v in enumerate(k, 1):
            out.setdefault(f"k{pos}", v)
    l = params.get("l")
    if isinstance(l, tuple):
        out.setdefault("l_sum", sum(l))
    return out


def apply_filters(grid: list[dict], text: str | None) -> list[dict]:
    """Keep grid cells matching every clause of ``text`` (e.g. ``"k_sum<=7,m<=2"``).

    Clauses naming a key unknown to the grid raise ``ValueError``.
    """
    if not text:
        return grid
    clauses = []
    for raw in re.split(r"[;,]", text):
        if not raw.strip():
            continue
        m = _CLAUSE.match(raw)
        if not m:
            raise ValueError(f"cannot parse parameter filter {raw.strip()!r}")
        clauses.append((m.group(1), _OPS[m.group(2)], int(m.group(3))))
    out = []
    for params in grid:
        d = _derived(params)
        keep = True
        for key, op, value in clauses:
            if key not in d:
                raise ValueError(f"parameter {key!r} is outside this identity's grid (keys: {', '.join(d)})")
            if not op(d[key], value):
                keep = False
        if keep:
            out.append(params)
    return out


# ---------------------------------------------------------------- runners


def _run_cells(ident: Identity, params: dict, run: Callable[[], list[Cell]], prime, guaranteed: bool) -> list[ReportEntry]:
    text = format_params(params)
    try:
        cells = run()
    except (ValueError, ZeroDivisionError) as exc:
        cells = [(None, f"undefined: {exc}", "-", False)]
    return [ReportEntry(ident.name, text, prime, w, lhs, rhs, ok, guaranteed) for w, lhs, rhs, ok in cells]


def _run_prime(task: tuple[list[tuple[str, list[dict]]], int, int]) -> list[ReportEntry]:
    """All mod-p work for one prime; the unit of parallelism."""
    jobs, p, N = task
    ctx = EvalContext(p)
    guaranteed = p > 2 * N
    cutoff = min(N, p - 2)
    out: list[ReportEntry] = []
    for name, grid in jobs:
        ident = CATALOG[name]
        for params in grid:
            out.extend(_run_cells(ident, params, lambda: ident.check(params, ctx, cutoff), p, guaranteed))
    return out


def _validate_primes(primes: Iterable[int]) -> list[int]:
    return sorted({check_prime(p) for p in primes})


def _execute(jobs: list[tuple[str, list[dict]]], primes: Sequence[int], N: int, parallel: int) -> Report:
    if N < 1:
        raise ValueError("cutoff N must be positive")
    modp = [(name, grid) for name, grid in jobs if CATALOG[name].kind == "modp"]
    other = [(name, grid) for name, grid in jobs if CATALOG[name].kind != "modp"]
    entries: list[ReportEntry] = []
    for name, grid in other:
        ident = CATALOG[name]
        field = "exact" if ident.kind == "exact" else "real"
        for params in grid:
            entries.extend(_run_cells(ident, params, lambda: ident.check(params, N), field, True))
    tasks = [(modp, p, N) for p in primes] if modp else []
    if parallel > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            for chunk in pool.map(_run_prime, tasks):
                entries.extend(chunk)
    else:
        for task in tasks:
            entries.extend(_run_prime(task))
    return Report(entries)


def run_identity(
    name: str,
    params: Sequence[dict] | str | None = None,
    primes: Iterable[int] = (),
    N: int = DEFAULT_CUTOFF,
    parallel: int = 1,
) -> Report:
    """Check one identity over a grid and a set of primes.

    ``params`` is either an explicit list of parameter dicts, a filter string
    applied to the default grid, or ``None`` for the default grid.
    """
    _identity(name)
    grid = default_grid(name, N)
    if isinstance(params, str) or params is None:
        grid = apply_filters(grid, params)
    else:
        grid = [dict(p) for p in params]
    return _execute([(name, grid)], _validate_primes(primes), N, parallel)


def run_all(
    primes: Iterable[int],
    N: int = DEFAULT_CUTOFF,
    parallel: int = 1,
    names: Sequence[str] | None = None,
    params: str | None = None,
) -> Report:
    """Every identity (or the given subset) over its default grid."""
    chosen = list(IDENTITY_IDS if names is None else names)
    jobs = []
    for name in chosen:
        grid = default_grid(name, N)
        if params:
            grid = apply_filters(grid, params)
        jobs.append((name, grid))
    return _execute(jobs, _validate_primes(primes), N, parallel)
