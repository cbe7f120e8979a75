"""Integration, projections, the intersection pairing and Gram reports.

The cohomological realization of the formal ring is defined as the
quotient by the radical of the intersection pairing: a class is zero in
cohomology exactly when it pairs to zero with every monomial of
complementary codimension.  Gram reports expose that radical degree by
degree through exact ranks and kernels.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import (
    ModelParams,
    TautClass,
    TautMonomial,
    _mul_monomials,
    class_codim,
    enumerate_basis,
    multiply,
)
from .linalg import RationalMatrix, rank_kernel


def integrate(x: TautClass, params: ModelParams) -> Fraction:
    """Degree of the top-codimension component, normalized so o integrates to 1.

    Only the monomial carrying o on every factor has codimension m*n, so
    the integral is simply its coefficient; lower components contribute 0.
    """
    top = TautMonomial(x.m, opoints=tuple(range(1, x.m + 1)))
    return x.coefficient(top)


def pullback(x: TautClass, m_target: int, embedding: Sequence[int]) -> TautClass:
    """Relabel factor i of x to embedding[i-1] inside a product with m_target factors."""
    if len(embedding) != x.m:
        raise ValueError(f"embedding must list a target for each of {x.m} factors")
    if len(set(embedding)) != len(embedding):
        raise ValueError("embedding must be injective")
    for f in embedding:
        if not 1 <= f <= m_target:
            raise ValueError(f"embedding target {f} out of range 1..{m_target}")
    relabel = {i + 1: f for i, f in enumerate(embedding)}
    acc: dict[TautMonomial, Fraction] = {}
    for mono, coeff in x.terms.items():
        moved = TautMonomial(
            m_target,
            tuple((relabel[i], relabel[j]) for i, j in mono.pairs),
            tuple((relabel[f], e) for f, e in mono.hpows),
            tuple(relabel[f] for f in mono.opoints),
        )
        acc[moved] = coeff
    return TautClass(m_target, acc)


def pushforward(x: TautClass, kept: Iterable[int], params: ModelParams) -> TautClass:
    """Integrate out the factors not in `kept` and relabel the rest in order.

    A dropped factor contributes 1 when it carries o and kills the term
    otherwise: h powers below n and the unit integrate to 0, and a tau
    edge with a dropped endpoint pushes to 0 because its diagonal part
    cancels against its top Kuenneth correction.
    """
    kept_sorted = sorted(set(kept))
    for f in kept_sorted:
        if not 1 <= f <= x.m:
            raise ValueError(f"kept factor {f} out of range 1..{x.m}")
    dropped = set(range(1, x.m + 1)) - set(kept_sorted)
    relabel = {f: i + 1 for i, f in enumerate(kept_sorted)}
    acc: dict[TautMonomial, Fraction] = {}
    for mono, coeff in x.terms.items():
        o_set = set(mono.opoints)
        if not dropped <= o_set:
            continue  # a dropped factor must carry o; anything else integrates to 0
        moved = TautMonomial(
            len(kept_sorted),
            tuple((relabel[i], relabel[j]) for i, j in mono.pairs),
            tuple((relabel[f], e) for f, e in mono.hpows),
            tuple(relabel[f] for f in mono.opoints if f not in dropped),
        )
        acc[moved] = acc.get(moved, Fraction(0)) + coeff
    return TautClass(len(kept_sorted), acc)


def pair(x: TautClass, y: TautClass, params: ModelParams) -> Fraction:
    """Intersection pairing: integrate the product."""
    if x.m != y.m:
        raise ValueError(f"factor count mismatch: {x.m} != {y.m}")
    return integrate(multiply(x, y, params), params)


def _mono_pairing(a: TautMonomial, b: TautMonomial, params: ModelParams) -> Fraction:
    """Pairing of two monomials: the top coefficient of their product."""
    result = _mul_monomials(a, b, params)
    if result is None:
        return Fraction(0)
    coeff, mono = result
    if mono.pairs or mono.hpows or len(mono.opoints) != mono.m:
        return Fraction(0)
    return coeff


@dataclass(frozen=True)
class GramReport:
    """Pairing matrix of a codimension basis against its complementary basis.

    `gram` has one row per basis monomial and one column per dual
    monomial; `kernel_basis` spans the classes in the row basis that
    pair to zero with every dual monomial, so
    rank + len(kernel_basis) == len(basis).
    """

    params: ModelParams
    m: int
    codim: int
    basis: tuple[TautMonomial, ...]
    dual_basis: tuple[TautMonomial, ...]
    gram: RationalMatrix
    rank: int
    kernel_basis: tuple[TautClass, ...]


def gram(params: ModelParams, m: int, codim: int) -> GramReport:
    """Exact Gram report at the given power and codimension."""
    basis = enumerate_basis(params, m, codim)
    dual = enumerate_basis(params, m, m * params.n - codim)
    entries = [[_mono_pairing(row, col, params) for col in dual] for row in basis]
    matrix = RationalMatrix(entries, cols=len(dual))
    rank, kernel_vectors = rank_kernel(matrix.transpose())
    kernel = tuple(
        TautClass(m, {mono: c for mono, c in zip(basis, vec) if c}) for vec in kernel_vectors
    )
    return GramReport(
        params=params,
        m=m,
        codim=codim,
        basis=tuple(basis),
        dual_basis=tuple(dual),
        gram=matrix,
        rank=rank,
        kernel_basis=kernel,
    )


def is_zero_in_cohomology(x: TautClass, params: ModelParams) -> bool:
    """True when x pairs to zero with every monomial of complementary codimension."""
    codim = class_codim(x, params)  # raises on inhomogeneous input
    if codim is None:
        return True
    duals = enumerate_basis(params, x.m, x.m * params.n - codim)
    items = list(x.terms.items())
    for dual in duals:
        total = Fraction(0)
        for mono, coeff in items:
            total += coeff * _mono_pairing(mono, dual, params)
        if total:
            return False
    return True
