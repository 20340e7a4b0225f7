"""Exact evaluation of identity sides and grid/recurrence verification.

Sides compile once into plain Python functions over dense lookup tables,
so sweeping a grid costs a function call per point rather than an AST
walk. All arithmetic is unbounded int; a PASS means exact equality at
every point evaluated.
"""

from __future__ import annotations

import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Any, Callable, Iterable, Mapping, Sequence

from .catalog import Identity
from .errors import EvalError, GridError, InternalFault
from .expr import (
    Add, Binom, Lit, Mul, Neg, Node, Pow, Pow5Floor, SeqRef, Sign, Sub, Sum, Sym,
)
from .ranges import Interval, index_window, merge_windows, point_intervals
from .seq import FIB_SEED, LUCAS_SEED, Seed, fib, lucas, table

__all__ = [
    "ParamPoint", "GridSpec", "Failure", "VerifyReport",
    "eval_side", "verify_grid", "check_recurrence", "case_split_value",
    "compile_side", "STANDARD_SEEDS",
]

STANDARD_SEEDS = (Seed(0, 1), Seed(2, 1), Seed(3, 7), Seed(-4, 5))


@dataclass(frozen=True)
class ParamPoint:
    """Concrete integer assignment for an identity's parameters plus the G seed."""

    values: Mapping[str, int]
    seed: Seed = FIB_SEED


@dataclass(frozen=True)
class GridSpec:
    """Inclusive per-parameter ranges and the seeds to sweep."""

    ranges: Mapping[str, Interval]
    seeds: tuple[Seed, ...] = STANDARD_SEEDS

    def __post_init__(self) -> None:
        for name, (lo, hi) in self.ranges.items():
            if lo > hi:
                raise GridError(f"empty range {lo}..{hi} for parameter '{name}'")
        if not self.seeds:
            raise GridError("GridSpec needs at least one seed")

    def points(self, params: Sequence[str]) -> list[tuple[int, ...]]:
        axes = [range(self.ranges[p][0], self.ranges[p][1] + 1) for p in params]
        return list(itertools.product(*axes))


@dataclass(frozen=True)
class Failure:
    """One failing evaluation: the point, the seed, and both side values.

    For symbolic mode, point holds parity bits, seed is None, and the side
    values are residual-polynomial text.
    """

    point: tuple[tuple[str, int], ...]
    seed: Seed | None
    lhs: int | str
    rhs: int | str

    @property
    def diff(self) -> int | None:
        if isinstance(self.lhs, int) and isinstance(self.rhs, int):
            return self.lhs - self.rhs
        return None


@dataclass
class VerifyReport:
    """Machine-readable outcome of one verification run."""

    identity: str
    paper_tag: str
    mode: str  # "grid" | "recurrence" | "symbolic"
    grid: dict[str, Any]
    total: int
    failures: list[Failure] = field(default_factory=list)
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_json_dict(self, *, include_timing: bool = False) -> dict[str, Any]:
        def enc(v: int | str) -> str:
            return str(v)

        failures = []
        for f in self.failures:
            entry: dict[str, Any] = {
                "point": dict(f.point),
                "seed": [f.seed.g0, f.seed.g1] if f.seed is not None else None,
                "lhs": enc(f.lhs),
                "rhs": enc(f.rhs),
            }
            if f.diff is not None:
                entry["diff"] = enc(f.diff)
            failures.append(entry)
        return {
            "version": 1,
            "identity": self.identity,
            "paper_tag": self.paper_tag,
            "mode": self.mode,
            "grid": self.grid,
            "total": self.total,
            "failures": failures,
            "elapsed_ms": round(self.elapsed_ms, 3) if include_timing else 0,
        }

    def to_json(self, *, include_timing: bool = False) -> str:
        return json.dumps(self.to_json_dict(include_timing=include_timing),
                          sort_keys=True, separators=(",", ":"))


# --- compiled evaluation ---------------------------------------------------

def _bi(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


def _pw(base: int, e: int) -> int:
    if e < 0:
        raise EvalError(f"negative exponent {e} in power")
    return base ** e


def _p5(e: int) -> int:
    if e < 0:
        raise EvalError(f"pow5floor argument {e} is negative")
    return 5 ** (e // 2)


def _rng(lo: int, hi: int) -> range:
    if lo > hi + 1:
        raise EvalError(f"sum bounds {lo}..{hi} are inverted")
    return range(lo, hi + 1)


_COMPILE_GLOBALS = {
    "__builtins__": {},
    "sum": sum,
    "_bi": _bi,
    "_pw": _pw,
    "_p5": _p5,
    "_rng": _rng,
}


def _gen_code(node: Node, names: Mapping[str, str]) -> str:
    if isinstance(node, Lit):
        return repr(node.value)
    if isinstance(node, Sym):
        try:
            return names[node.name]
        except KeyError:
            raise EvalError(f"symbol '{node.name}' has no value") from None
    if isinstance(node, Add):
        return f"({_gen_code(node.left, names)} + {_gen_code(node.right, names)})"
    if isinstance(node, Sub):
        return f"({_gen_code(node.left, names)} - {_gen_code(node.right, names)})"
    if isinstance(node, Neg):
        return f"(-{_gen_code(node.operand, names)})"
    if isinstance(node, Mul):
        return f"({_gen_code(node.left, names)} * {_gen_code(node.right, names)})"
    if isinstance(node, Pow):
        return f"_pw({_gen_code(node.base, names)}, {_gen_code(node.exponent, names)})"
    if isinstance(node, SeqRef):
        return f"_{node.kind}[{_gen_code(node.arg, names)}]"
    if isinstance(node, Binom):
        return f"_bi({_gen_code(node.top, names)}, {_gen_code(node.bottom, names)})"
    if isinstance(node, Sign):
        return f"(-1 if ({_gen_code(node.arg, names)}) & 1 else 1)"
    if isinstance(node, Pow5Floor):
        return f"_p5({_gen_code(node.arg, names)})"
    if isinstance(node, Sum):
        var = f"k_{node.var}"
        inner = dict(names)
        inner[node.var] = var
        return (f"sum(({_gen_code(node.body, inner)}) "
                f"for {var} in _rng({_gen_code(node.lo, names)}, "
                f"{_gen_code(node.hi, names)}))")
    raise TypeError(f"unknown node {node!r}")


_compile_cache: dict[tuple[Node, tuple[str, ...]], Callable[..., int]] = {}


def compile_side(ast: Node, params: tuple[str, ...]) -> Callable[..., int]:
    """Compile one identity side to fn(*param_values, F, L, G) -> int.

    F, L, G are index-to-value mappings covering the side's index window.
    Parameter symbols are mangled, so any legal parameter name is safe.
    """
    key = (ast, params)
    fn = _compile_cache.get(key)
    if fn is None:
        names = {p: f"v{i}" for i, p in enumerate(params)}
        args = ", ".join([*names.values(), "_F", "_L", "_G"])
        source = f"def _side({args}):\n    return {_gen_code(ast, names)}\n"
        scope: dict[str, Any] = {}
        exec(compile(source, "<fibkit-side>", "exec"), dict(_COMPILE_GLOBALS), scope)
        fn = _compile_cache[key] = scope["_side"]
    return fn


def _build_tables(window: Interval | None, seeds: Iterable[Seed],
                  ) -> tuple[dict[int, int], dict[int, int], dict[Seed, dict[int, int]]]:
    if window is None:
        return {}, {}, {s: {} for s in seeds}
    lo, hi = window
    f_tab = table(FIB_SEED, lo, hi).as_dict()
    l_tab = table(LUCAS_SEED, lo, hi).as_dict()
    g_tabs = {s: table(s, lo, hi).as_dict() for s in seeds}
    return f_tab, l_tab, g_tabs


def eval_side(ast: Node, pt: ParamPoint) -> int:
    """Exact value of one identity side at a concrete parameter point."""
    params = tuple(sorted(pt.values))
    fn = compile_side(ast, params)
    window = index_window(ast, point_intervals(pt.values))
    f_tab, l_tab, g_tabs = _build_tables(window, (pt.seed,))
    return fn(*(pt.values[p] for p in params), f_tab, l_tab, g_tabs[pt.seed])


# --- grid verification -----------------------------------------------------

def _check_spec_covers(identity: Identity, spec: GridSpec) -> None:
    missing = [p for p in identity.free_params if p not in spec.ranges]
    if missing:
        raise GridError(
            f"grid does not cover parameter(s) {', '.join(missing)} "
            f"of '{identity.name}'")
    for p in identity.rank_params:
        if spec.ranges[p][0] < 0:
            raise GridError(
                f"rank parameter '{p}' of '{identity.name}' must stay >= 0, "
                f"got range {spec.ranges[p][0]}..{spec.ranges[p][1]}")


def _grid_desc(identity: Identity, spec: GridSpec) -> dict[str, Any]:
    return {
        "ranges": {p: list(spec.ranges[p]) for p in identity.free_params},
        "seeds": [[s.g0, s.g1] for s in spec.seeds],
    }


def _eval_points(identity: Identity, spec: GridSpec,
                 points: Sequence[tuple[int, ...]], use_oracle: bool,
                 ) -> list[tuple[tuple[int, ...], int, int, int]]:
    """Evaluate both sides on the given points; returns raw failure tuples."""
    params = identity.free_params
    env = {p: spec.ranges[p] for p in params}
    window = merge_windows(index_window(identity.lhs, env),
                           index_window(identity.rhs, env))
    f_tab, l_tab, g_tabs = _build_tables(window, spec.seeds)
    lhs_fn = compile_side(identity.lhs, params)
    rhs_fn = compile_side(identity.rhs, params)

    if use_oracle:
        from . import oracle

    failures = []
    for seed_idx, seed in enumerate(spec.seeds):
        g_tab = g_tabs[seed]
        for vals in points:
            try:
                lv = lhs_fn(*vals, f_tab, l_tab, g_tab)
                rv = rhs_fn(*vals, f_tab, l_tab, g_tab)
            except EvalError as exc:
                pt_desc = ", ".join(f"{p}={v}" for p, v in zip(params, vals))
                raise EvalError(f"{exc} at point ({pt_desc}), seed {seed}") from exc
            if use_oracle:
                pt = ParamPoint(dict(zip(params, vals)), seed)
                ov_l = oracle.oracle_eval(identity.lhs, pt)
                ov_r = oracle.oracle_eval(identity.rhs, pt)
                if ov_l != lv or ov_r != rv:
                    raise InternalFault(
                        f"oracle disagrees with evaluator on '{identity.name}' "
                        f"at {dict(zip(params, vals))}, seed {seed}: "
                        f"oracle ({ov_l}, {ov_r}) vs fast ({lv}, {rv})")
            if lv != rv:
                failures.append((vals, seed_idx, lv, rv))
    return failures


def _chunk_job(args: tuple) -> list[tuple[tuple[int, ...], int, int, int]]:
    identity, spec, chunk, use_oracle = args
    return _eval_points(identity, spec, chunk, use_oracle)


def verify_grid(identity: Identity, spec: GridSpec, *, workers: int = 1,
                use_oracle: bool = False) -> VerifyReport:
    """Check lhs == rhs at every grid point and seed; list every failure.

    The result is independent of evaluation order and worker count:
    failures are sorted by point (lexicographically in parameter order),
    then by seed position.
    """
    _check_spec_covers(identity, spec)
    params = identity.free_params
    started = time.perf_counter()
    points = spec.points(params)

    if workers > 1 and len(points) > 1:
        chunk_size = (len(points) + workers - 1) // workers
        chunks = [points[i:i + chunk_size] for i in range(0, len(points), chunk_size)]
        raw: list[tuple[tuple[int, ...], int, int, int]] = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            jobs = ((identity, spec, chunk, use_oracle) for chunk in chunks)
            for part in pool.map(_chunk_job, jobs):
                raw.extend(part)
    else:
        raw = _eval_points(identity, spec, points, use_oracle)

    raw.sort(key=lambda item: (item[0], item[1]))
    failures = [
        Failure(tuple(zip(params, vals)), spec.seeds[seed_idx], lv, rv)
        for vals, seed_idx, lv, rv in raw
    ]
    elapsed = (time.perf_counter() - started) * 1000.0
    return VerifyReport(
        identity=identity.name,
        paper_tag=identity.paper_tag,
        mode="grid",
        grid=_grid_desc(identity, spec),
        total=len(points) * len(spec.seeds),
        failures=failures,
        elapsed_ms=elapsed,
    )


# --- recurrence consistency (the mechanized induction step) ----------------

_RECURRENCE_PARAMS = ("n", "m", "p", "q")


def check_recurrence(identity: Identity, side: str, spec: GridSpec, *,
                     coeff: str = "F") -> VerifyReport:
    """Check S(n,m,p,q) = C(m+q) S(n-1,m,p,q) - C(m) S(n-1,m,p+q,q).

    S is the designated side ("lhs" or "rhs") of the identity and C is the
    coefficient sequence: F for the Fibonacci-weighted summation family,
    L for the Lucas-weighted one. This is the induction step that carries
    the rank-1 base cases to every rank.
    """
    if side not in ("lhs", "rhs"):
        raise GridError(f"side must be 'lhs' or 'rhs', got '{side}'")
    if coeff not in ("F", "L"):
        raise GridError(f"coeff must be 'F' or 'L', got '{coeff}'")
    if identity.free_params != _RECURRENCE_PARAMS:
        raise GridError(
            f"recurrence check needs parameters (n, m, p, q); "
            f"'{identity.name}' has {identity.free_params}")
    _check_spec_covers(identity, spec)
    n_lo, n_hi = spec.ranges["n"]
    if n_lo < 1:
        raise GridError(f"recurrence check needs n >= 1, got range {n_lo}..{n_hi}")

    started = time.perf_counter()
    ast = identity.lhs if side == "lhs" else identity.rhs
    fn = compile_side(ast, _RECURRENCE_PARAMS)

    m_iv, p_iv, q_iv = (spec.ranges[p] for p in ("m", "p", "q"))
    shifted_env = {
        "n": (n_lo - 1, n_hi),
        "m": m_iv,
        "p": (p_iv[0] + min(0, q_iv[0]), p_iv[1] + max(0, q_iv[1])),
        "q": q_iv,
    }
    coeff_iv = (m_iv[0] + min(0, q_iv[0]), m_iv[1] + max(0, q_iv[1]))
    window = merge_windows(index_window(ast, shifted_env), coeff_iv)
    f_tab, l_tab, g_tabs = _build_tables(window, spec.seeds)
    coeff_tab = f_tab if coeff == "F" else l_tab

    points = spec.points(_RECURRENCE_PARAMS)
    raw = []
    for seed_idx, seed in enumerate(spec.seeds):
        g_tab = g_tabs[seed]
        for n, m, p, q in points:
            s0 = fn(n, m, p, q, f_tab, l_tab, g_tab)
            s1 = fn(n - 1, m, p, q, f_tab, l_tab, g_tab)
            s2 = fn(n - 1, m, p + q, q, f_tab, l_tab, g_tab)
            combined = coeff_tab[m + q] * s1 - coeff_tab[m] * s2
            if s0 != combined:
                raw.append(((n, m, p, q), seed_idx, s0, combined))

    raw.sort(key=lambda item: (item[0], item[1]))
    failures = [
        Failure(tuple(zip(_RECURRENCE_PARAMS, vals)), spec.seeds[si], lv, rv)
        for vals, si, lv, rv in raw
    ]
    elapsed = (time.perf_counter() - started) * 1000.0
    grid = _grid_desc(identity, spec)
    grid["side"] = side
    grid["coeff"] = coeff
    return VerifyReport(
        identity=f"{identity.name}.{side}",
        paper_tag=identity.paper_tag,
        mode="recurrence",
        grid=grid,
        total=len(points) * len(spec.seeds),
        failures=failures,
        elapsed_ms=elapsed,
    )


def case_split_value(p_idx: int, n: int, m: int) -> int:
    """F(p-nm+1) - (-1)^n F(p-nm-1), checked against its closed form.

    The value collapses to F(p-nm) for even n and L(p-nm) for odd n; a
    mismatch would mean a broken sequence kernel and raises InternalFault.
    """
    i = p_idx - n * m
    if n % 2 == 0:
        value = fib(i + 1) - fib(i - 1)
        expected = fib(i)
    else:
        value = fib(i + 1) + fib(i - 1)
        expected = lucas(i)
    if value != expected:
        raise InternalFault(
            f"case split at p={p_idx}, n={n}, m={m}: {value} != {expected}")
    return value
