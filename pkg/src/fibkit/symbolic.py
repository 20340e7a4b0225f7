"""Symbolic identity proofs over all integer parameters at fixed rank.

Every sequence reference is rewritten through the exact Binet forms into
Laurent monomials in one invertible symbol per remaining free parameter
(the symbol stands for phi raised to that parameter). The conjugate root
satisfies (1 - phi)^e = (-1)^e * phi^(-e), so each free parameter's sign
is discharged by splitting on its parity: 2^r cases for r parameters,
whose union covers all integers.

G references expand through G(e) = [(G(-1)+G(1)) F(e) + G(0) L(e)] / 2
with the two seed combinations kept as formal scalars, so a PASS is
universal over seeds as well. An identity passes one case when the
difference of its sides reduces to the zero polynomial.
"""

from __future__ import annotations

import itertools
import time
from typing import Iterable, Mapping

from .catalog import Identity
from .errors import SymbolicError
from .expr import (
    Add, Binom, Lit, Mul, Neg, Node, Pow, Pow5Floor, SeqRef, Sign, Sub, Sum, Sym,
    substitute, to_text,
)
from .verify import Failure, VerifyReport, _bi
from .zphi import HALF, INV_SQRT5, LaurentPoly3, GoldenRat, phi_pow

__all__ = ["SeedPoly", "prove_symbolic"]


class SeedPoly:
    """Polynomial in the two formal seed scalars with LaurentPoly3 coefficients.

    Keys are (i, j) for splus^i * szero^j, where splus stands for
    G(-1) + G(1) and szero for G(0). Zero coefficients are pruned, so
    is_zero() is a plain emptiness test.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], LaurentPoly3] |
                 Iterable[tuple[tuple[int, int], LaurentPoly3]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        self._terms = {k: p for k, p in items if not p.is_zero()}

    @classmethod
    def zero(cls) -> SeedPoly:
        return cls()

    @classmethod
    def scalar(cls, value: int | GoldenRat) -> SeedPoly:
        return cls({(0, 0): LaurentPoly3.scalar(value)})

    @classmethod
    def from_laurent(cls, poly: LaurentPoly3) -> SeedPoly:
        return cls({(0, 0): poly})

    def terms(self) -> dict[tuple[int, int], LaurentPoly3]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: SeedPoly) -> SeedPoly:
        merged = dict(self._terms)
        for k, p in other._terms.items():
            merged[k] = merged[k] + p if k in merged else p
        return SeedPoly(merged)

    def __sub__(self, other: SeedPoly) -> SeedPoly:
        return self + (-other)

    def __neg__(self) -> SeedPoly:
        return SeedPoly({k: -p for k, p in self._terms.items()})

    def __mul__(self, other: SeedPoly) -> SeedPoly:
        product: dict[tuple[int, int], LaurentPoly3] = {}
        for (i1, j1), p1 in self._terms.items():
            for (i2, j2), p2 in other._terms.items():
                k = (i1 + i2, j1 + j2)
                piece = p1 * p2
                product[k] = product[k] + piece if k in product else piece
        return SeedPoly(product)

    def __pow__(self, n: int) -> SeedPoly:
        if n < 0:
            raise ValueError("SeedPoly power requires n >= 0")
        result = SeedPoly.scalar(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SeedPoly):
            return NotImplemented
        return self._terms == other._terms

    def describe(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (i, j) in sorted(self._terms):
            head = "*".join(filter(None, [
                f"splus^{i}" if i else "",
                f"szero^{j}" if j else "",
            ])) or "1"
            parts.append(f"{head}: {self._terms[(i, j)]!r}")
        return " ; ".join(parts)

    __repr__ = describe


# --- affine analysis of index expressions -----------------------------------

def _affine(node: Node) -> tuple[int, dict[str, int]]:
    """Index expression as constant + sum(coeff * param); SymbolicError otherwise."""
    if isinstance(node, Lit):
        return node.value, {}
    if isinstance(node, Sym):
        return 0, {node.name: 1}
    if isinstance(node, Add):
        c1, t1 = _affine(node.left)
        c2, t2 = _affine(node.right)
        return c1 + c2, _merge(t1, t2, 1)
    if isinstance(node, Sub):
        c1, t1 = _affine(node.left)
        c2, t2 = _affine(node.right)
        return c1 - c2, _merge(t1, t2, -1)
    if isinstance(node, Neg):
        c, t = _affine(node.operand)
        return -c, {k: -v for k, v in t.items()}
    if isinstance(node, Mul):
        c1, t1 = _affine(node.left)
        c2, t2 = _affine(node.right)
        if not t1:
            return c1 * c2, {k: c1 * v for k, v in t2.items()}
        if not t2:
            return c1 * c2, {k: c2 * v for k, v in t1.items()}
        raise SymbolicError(
            "index is not affine in the free parameters (product of parameters)")
    raise SymbolicError(
        f"index contains unsupported node {type(node).__name__}")


def _merge(t1: dict[str, int], t2: dict[str, int], sign: int) -> dict[str, int]:
    out = dict(t1)
    for k, v in t2.items():
        out[k] = out.get(k, 0) + sign * v
    return {k: v for k, v in out.items() if v != 0}


def _eval_index(node: Node, env: Mapping[str, int], what: str) -> int:
    """Evaluate an index expression; every symbol it uses must be in env."""
    if isinstance(node, Lit):
        return node.value
    if isinstance(node, Sym):
        if node.name not in env:
            raise SymbolicError(f"{what} depends on free parameter '{node.name}'")
        return env[node.name]
    if isinstance(node, Add):
        return _eval_index(node.left, env, what) + _eval_index(node.right, env, what)
    if isinstance(node, Sub):
        return _eval_index(node.left, env, what) - _eval_index(node.right, env, what)
    if isinstance(node, Neg):
        return -_eval_index(node.operand, env, what)
    if isinstance(node, Mul):
        return _eval_index(node.left, env, what) * _eval_index(node.right, env, what)
    raise SymbolicError(f"{what} contains unsupported node {type(node).__name__}")


# --- Binet rewriting per parity case -----------------------------------------

class _Case:
    """One parity case: axis assignment and parity bit per free parameter."""

    __slots__ = ("axes", "bits")

    def __init__(self, axes: dict[str, int], bits: dict[str, int]):
        self.axes = axes
        self.bits = bits

    def phi_power(self, const: int, terms: dict[str, int]) -> LaurentPoly3:
        exps = [0, 0, 0]
        for param, coeff in terms.items():
            exps[self.axes[param]] += coeff
        return LaurentPoly3.monomial(tuple(exps), GoldenRat(phi_pow(const)))

    def conj_power(self, const: int, terms: dict[str, int]) -> LaurentPoly3:
        # (1 - phi)^e = (-1)^e * phi^(-e); parity of e fixes the sign
        parity = const
        exps = [0, 0, 0]
        for param, coeff in terms.items():
            parity += coeff * self.bits[param]
            exps[self.axes[param]] -= coeff
        coeff_scalar = GoldenRat(phi_pow(-const))
        if parity & 1:
            coeff_scalar = -coeff_scalar
        return LaurentPoly3.monomial(tuple(exps), coeff_scalar)

    def seq_poly(self, kind: str, arg: Node) -> SeedPoly:
        try:
            const, terms = _affine(arg)
        except SymbolicError as exc:
            raise SymbolicError(f"{kind}({to_text(arg)}): {exc}") from None
        plus = self.phi_power(const, terms)
        minus = self.conj_power(const, terms)
        if kind == "F":
            return SeedPoly.from_laurent((plus - minus) * INV_SQRT5)
        if kind == "L":
            return SeedPoly.from_laurent(plus + minus)
        # G(e) = [splus * F(e) + szero * L(e)] / 2 with formal seed scalars
        f_part = (plus - minus) * INV_SQRT5 * HALF
        l_part = (plus + minus) * HALF
        return SeedPoly({(1, 0): f_part, (0, 1): l_part})

    def sign_value(self, arg: Node) -> int:
        parity = _eval_index(arg, self.bits, "sign() exponent") & 1
        return -1 if parity else 1

    def to_poly(self, node: Node) -> SeedPoly:
        if isinstance(node, Lit):
            return SeedPoly.scalar(node.value)
        if isinstance(node, Sym):
            raise SymbolicError(
                f"parameter '{node.name}' appears as a bare value; the prover "
                f"handles parameters only inside indices, exponents, and signs")
        if isinstance(node, Add):
            return self.to_poly(node.left) + self.to_poly(node.right)
        if isinstance(node, Sub):
            return self.to_poly(node.left) - self.to_poly(node.right)
        if isinstance(node, Neg):
            return -self.to_poly(node.operand)
        if isinstance(node, Mul):
            return self.to_poly(node.left) * self.to_poly(node.right)
        if isinstance(node, Pow):
            e = _eval_index(node.exponent, {}, "power exponent")
            if e < 0:
                raise SymbolicError(f"power exponent {e} is negative")
            return self.to_poly(node.base) ** e
        if isinstance(node, SeqRef):
            return self.seq_poly(node.kind, node.arg)
        if isinstance(node, Binom):
            top = _eval_index(node.top, {}, "binom() argument")
            bottom = _eval_index(node.bottom, {}, "binom() argument")
            return SeedPoly.scalar(_bi(top, bottom))
        if isinstance(node, Sign):
            return SeedPoly.scalar(self.sign_value(node.arg))
        if isinstance(node, Pow5Floor):
            e = _eval_index(node.arg, {}, "pow5floor() argument")
            if e < 0:
                raise SymbolicError(f"pow5floor argument {e} is negative")
            return SeedPoly.scalar(5 ** (e // 2))
        if isinstance(node, Sum):
            lo = _eval_index(node.lo, {}, "sum lower bound")
            hi = _eval_index(node.hi, {}, "sum upper bound")
            if lo > hi + 1:
                raise SymbolicError(f"sum bounds {lo}..{hi} are inverted")
            acc = SeedPoly.zero()
            for k in range(lo, hi + 1):
                acc = acc + self.to_poly(substitute(node.body, {node.var: k}))
            return acc
        raise TypeError(f"unknown node {node!r}")


def prove_symbolic(identity: Identity, fixed: Mapping[str, int] | None = None,
                   ) -> VerifyReport:
    """Prove an identity for every integer value of its free parameters.

    Rank parameters (sum bounds) must be pinned through `fixed`; other
    parameters may optionally be pinned too. At most three parameters may
    remain free. A PASS certifies the identity for all integer values of
    the free parameters and every integer seed at the fixed rank.
    """
    fixed = dict(fixed or {})
    for name in fixed:
        if name not in identity.free_params:
            raise SymbolicError(
                f"'{identity.name}' has no parameter '{name}' to fix")
    for rank in identity.rank_params:
        if rank not in fixed:
            raise SymbolicError(
                f"rank parameter '{rank}' of '{identity.name}' must be fixed "
                f"for a symbolic proof")
        if fixed[rank] < 0:
            raise SymbolicError(f"rank parameter '{rank}' must be >= 0")
    free = tuple(p for p in identity.free_params if p not in fixed)
    if len(free) > 3:
        raise SymbolicError(
            f"'{identity.name}' keeps {len(free)} parameters free; at most 3 "
            f"are supported")

    started = time.perf_counter()
    lhs = substitute(identity.lhs, fixed)
    rhs = substitute(identity.rhs, fixed)
    axes = {p: i for i, p in enumerate(free)}

    failures: list[Failure] = []
    for bit_tuple in itertools.product((0, 1), repeat=len(free)):
        case = _Case(axes, dict(zip(free, bit_tuple)))
        residual = case.to_poly(lhs) - case.to_poly(rhs)
        if not residual.is_zero():
            failures.append(Failure(
                point=tuple(zip(free, bit_tuple)),
                seed=None,
                lhs=residual.describe(),
                rhs="0",
            ))

    elapsed = (time.perf_counter() - started) * 1000.0
    return VerifyReport(
        identity=identity.name,
        paper_tag=identity.paper_tag,
        mode="symbolic",
        grid={
            "fixed": dict(sorted(fixed.items())),
            "parity_params": list(free),
            "axes": {"XYZ"[i]: p for p, i in axes.items()},
        },
        total=2 ** len(free),
        failures=failures,
        elapsed_ms=elapsed,
    )
