"""Correspondence calculus and the projector identities of the model.

A correspondence is a tautological class on a product together with a
split of the factors into a source block and a target block.
Composition pulls both operands to a triple product, multiplies, and
pushes forward over the middle block.  On top of that sit the
projectors of the model (one per even cohomological degree), the small
diagonal, and exact verifiers for the projector axioms, the
multiplicativity condition, the diagonal-times-h expansion, the
modified small diagonal, and the Euler characteristic identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .algebra import (
    ModelParams,
    TautClass,
    enumerate_basis,
    h_class,
    multiply,
    o_class,
    tau_class,
)
from .calculus import integrate, pullback, pushforward
from .grammar import format_class
from .linalg import RationalMatrix, solve_linear


@dataclass(frozen=True)
class Correspondence:
    """Class on a product of s + t factors, read as a map from s factors to t."""

    cls: TautClass
    s: int
    t: int

    def __post_init__(self) -> None:
        if self.s < 0 or self.t < 0 or self.s + self.t < 1:
            raise ValueError("source and target blocks must cover at least one factor")
        if self.cls.m != self.s + self.t:
            raise ValueError(f"class lives on {self.cls.m} factors, blocks cover {self.s + self.t}")


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class CkReport:
    params: ModelParams
    checks: tuple[CheckResult, ...]
    passed: bool


@dataclass(frozen=True)
class MckCase:
    i: int
    j: int
    k: int
    required_zero: bool
    is_zero: bool
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class MckReport:
    params: ModelParams
    cases: tuple[MckCase, ...]
    partition: tuple[CheckResult, ...]
    passed: bool


@dataclass(frozen=True)
class ProjectorSet:
    """Projectors indexed by even cohomological degree 0, 2, ..., 2n.

    The container itself enforces only the block structure; the
    idempotent / orthogonal / sum-to-diagonal laws are what verify_ck
    checks, so deliberately broken sets can be built for testing.
    """

    params: ModelParams
    projectors: Mapping[int, Correspondence]

    def __post_init__(self) -> None:
        for k, corr in self.projectors.items():
            if k % 2 or not 0 <= k <= 2 * self.params.n:
                raise ValueError(f"projector index {k} must be even in [0, 2n]")
            if corr.s != 1 or corr.t != 1:
                raise ValueError("projectors must map one factor to one factor")

    def indices(self) -> list[int]:
        return sorted(self.projectors)

    def __getitem__(self, k: int) -> Correspondence:
        return self.projectors[k]


@dataclass(frozen=True)
class Gamma3Solution:
    """Coefficients of the pure-polarization correction that cancels the
    small diagonal against its diagonal-times-point terms, plus the residual
    (zero exactly when the cancellation succeeds)."""

    coefficients: Mapping[tuple[int, int, int], Fraction]
    residual: TautClass


def diagonal_class(params: ModelParams) -> TautClass:
    """The diagonal on the square: tau plus the full Kuenneth h-sum."""
    n, d = params.n, params.d
    total = tau_class(2, 1, 2) + o_class(2, 1) + o_class(2, 2)
    for j in range(1, n):
        term = multiply(h_class(params, 2, 1, j), h_class(params, 2, 2, n - j), params)
        total = total + term.scale(Fraction(1, d))
    return total


def diagonal(params: ModelParams) -> Correspondence:
    return Correspondence(diagonal_class(params), 1, 1)


def compose(f: Correspondence, g: Correspondence, params: ModelParams) -> Correspondence:
    """Composition f o g (g applied first): pull to the triple product,
    multiply, push over the middle block."""
    if g.t != f.s:
        raise ValueError(f"block mismatch: g has target size {g.t}, f has source size {f.s}")
    total = g.s + g.t + f.t
    left = pullback(g.cls, total, tuple(range(1, g.s + g.t + 1)))
    right = pullback(f.cls, total, tuple(range(g.s + 1, total + 1)))
    product = multiply(left, right, params)
    kept = list(range(1, g.s + 1)) + list(range(g.s + g.t + 1, total + 1))
    return Correspondence(pushforward(product, kept, params), g.s, f.t)


def transpose(f: Correspondence) -> Correspondence:
    """Swap the source and target blocks (an involution)."""
    embedding = tuple(range(f.t + 1, f.t + f.s + 1)) + tuple(range(1, f.t + 1))
    return Correspondence(pullback(f.cls, f.s + f.t, embedding), f.t, f.s)


def tensor(f: Correspondence, g: Correspondence, params: ModelParams) -> Correspondence:
    """Product correspondence acting on juxtaposed source and target blocks."""
    total = f.s + g.s + f.t + g.t
    emb_f = tuple(range(1, f.s + 1)) + tuple(range(f.s + g.s + 1, f.s + g.s + f.t + 1))
    emb_g = tuple(range(f.s + 1, f.s + g.s + 1)) + tuple(range(f.s + g.s + f.t + 1, total + 1))
    cls = multiply(pullback(f.cls, total, emb_f), pullback(g.cls, total, emb_g), params)
    return Correspondence(cls, f.s + g.s, f.t + g.t)


def ck_projectors(params: ModelParams) -> ProjectorSet:
    """The projector family: (1/d) h^(n-j) x h^j off the middle degree,
    and the diagonal minus all of those in the middle."""
    n, d = params.n, params.d
    projectors: dict[int, Correspondence] = {}
    middle_rest = diagonal_class(params)
    for j in range(n + 1):
        if j == n // 2:
            continue
        cls = multiply(h_class(params, 2, 1, n - j), h_class(params, 2, 2, j), params)
        cls = cls.scale(Fraction(1, d))
        projectors[2 * j] = Correspondence(cls, 1, 1)
        middle_rest = middle_rest - cls
    projectors[n] = Correspondence(middle_rest, 1, 1)
    return ProjectorSet(params=params, projectors=projectors)


def verify_ck(ps: ProjectorSet) -> CkReport:
    """Check idempotence, mutual orthogonality, and sum-to-diagonal, exactly."""
    params = ps.params
    checks: list[CheckResult] = []
    indices = ps.indices()
    for k in indices:
        pk = ps[k]
        square = compose(pk, pk, params)
        ok = square.cls == pk.cls
        detail = "" if ok else f"pi^{k} o pi^{k} = {format_class(square.cls, params)}"
        checks.append(CheckResult(f"idempotent[{k}]", ok, detail))
    for k1 in indices:
        for k2 in indices:
            if k1 == k2:
                continue
            product = compose(ps[k1], ps[k2], params)
            ok = product.cls.is_zero
            detail = "" if ok else f"pi^{k1} o pi^{k2} = {format_class(product.cls, params)}"
            checks.append(CheckResult(f"orthogonal[{k1},{k2}]", ok, detail))
    total = TautClass.zero(2)
    for k in indices:
        total = total + ps[k].cls
    diff = total - diagonal_class(params)
    ok = diff.is_zero
    checks.append(
        CheckResult("sum=diagonal", ok, "" if ok else f"sum - diagonal = {format_class(diff, params)}")
    )
    return CkReport(params=params, checks=tuple(checks), passed=all(c.ok for c in checks))


def small_diagonal(params: ModelParams) -> TautClass:
    """Class of the triple diagonal on the cube, as a product of two diagonals."""
    diag = diagonal_class(params)
    left = pullback(diag, 3, (1, 2))
    right = pullback(diag, 3, (1, 3))
    return multiply(left, right, params)


def small_diagonal_correspondence(params: ModelParams) -> Correspondence:
    """The triple diagonal read as the multiplication map from two factors to one."""
    return Correspondence(small_diagonal(params), 2, 1)


def verify_mck(params: ModelParams) -> MckReport:
    """Exact multiplicativity check of the projector family.

    For every even (i, j, k) the composition pi^k o sm o (pi^i x pi^j)
    must vanish unless i + j == k, and for fixed (i, j) the k-components
    must add up to sm o (pi^i x pi^j).
    """
    ps = ck_projectors(params)
    sm = small_diagonal_correspondence(params)
    indices = ps.indices()
    cases: list[MckCase] = []
    partition: list[CheckResult] = []
    for i in indices:
        for j in indices:
            mij = compose(sm, tensor(ps[i], ps[j], params), params)
            ksum = TautClass.zero(3)
            for k in indices:
                piece = compose(ps[k], mij, params)
                ksum = ksum + piece.cls
                required = i + j != k
                zero = piece.cls.is_zero
                ok = zero or not required
                detail = "" if ok else format_class(piece.cls, params)
                cases.append(MckCase(i, j, k, required, zero, ok, detail))
            ok = ksum == mij.cls
            partition.append(
                CheckResult(
                    f"partition[{i},{j}]",
                    ok,
                    "" if ok else f"sum-over-k mismatch: {format_class(ksum - mij.cls, params)}",
                )
            )
    passed = all(c.ok for c in cases) and all(p.ok for p in partition)
    return MckReport(params=params, cases=tuple(cases), partition=tuple(partition), passed=passed)


def act(f: Correspondence, x: TautClass, params: ModelParams) -> TautClass:
    """Apply a one-to-one correspondence to a class on a single factor."""
    if f.s != 1 or f.t != 1:
        raise ValueError("act requires a correspondence with one source and one target factor")
    if x.m != 1:
        raise ValueError("act requires a class on a single factor")
    product = multiply(f.cls, pullback(x, 2, (1,)), params)
    return pushforward(product, (2,), params)


def expand_diagonal_times_h(params: ModelParams, factor: int) -> TautClass:
    """Product of the diagonal with h on one factor, in normal form.

    The result must equal the closed Kuenneth form
    (1/d) * sum_k h^k x h^(n+1-k); a mismatch would mean the model
    relations are broken, and raises ArithmeticError.
    """
    if factor not in (1, 2):
        raise ValueError("factor must be 1 or 2")
    n, d = params.n, params.d
    product = multiply(diagonal_class(params), h_class(params, 2, factor, 1), params)
    expected = TautClass.zero(2)
    for k in range(n + 2):
        term = multiply(h_class(params, 2, 1, k), h_class(params, 2, 2, n + 1 - k), params)
        expected = expected + term.scale(Fraction(1, d))
    if product != expected:
        raise ArithmeticError("diagonal-times-h expansion does not match its closed form")
    return product


def solve_gamma3(params: ModelParams) -> Gamma3Solution:
    """Solve for the symmetric h-polynomial that cancels the small diagonal
    against the three diagonal-times-point corrections.

    Sets up  sm - (D_12 o_3 + D_13 o_2 + D_23 o_1) + sum a_ijk h1^i h2^j h3^k = 0
    over exponent triples i + j + k = 2n with each exponent at most n
    (exponent n realized through o), and solves the exact linear system.
    """
    n = params.n
    diag = diagonal_class(params)
    gap = small_diagonal(params)
    for (fi, fj), other in (((1, 2), 3), ((1, 3), 2), ((2, 3), 1)):
        term = multiply(pullback(diag, 3, (fi, fj)), o_class(3, other), params)
        gap = gap - term
    exponents = [
        (i, j, 2 * n - i - j)
        for i in range(n + 1)
        for j in range(n + 1)
        if 0 <= 2 * n - i - j <= n
    ]
    exponents.sort()
    columns: list[TautClass] = []
    for i, j, k in exponents:
        cls = multiply(h_class(params, 3, 1, i), h_class(params, 3, 2, j), params)
        cls = multiply(cls, h_class(params, 3, 3, k), params)
        columns.append(cls)
    basis = enumerate_basis(params, 3, 2 * n)
    matrix = RationalMatrix(
        [[col.coefficient(mono) for col in columns] for mono in basis],
        cols=len(columns),
    )
    rhs = [-gap.coefficient(mono) for mono in basis]
    solution = solve_linear(matrix, rhs)
    if solution is None:
        raise ArithmeticError("no polarization polynomial cancels the small diagonal")
    residual = gap
    for value, col in zip(solution, columns):
        residual = residual + col.scale(value)
    coefficients = {exp: value for exp, value in zip(exponents, solution)}
    return Gamma3Solution(coefficients=coefficients, residual=residual)


def euler_char(params: ModelParams) -> Fraction:
    """Degree of the self-intersection of the diagonal; equals n + b."""
    diag = diagonal_class(params)
    return integrate(multiply(diag, diag, params), params)
