"""The alternating tau relation, its pairing combinatorics, and the
injectivity scanner.

On 2b factors the alternating sum of sign(sigma) * prod tau_(i, b+sigma(i))
over the symmetric group pairs against any block matching to a signed
falling factorial of the loop value, so it falls into the Gram radical
exactly when the loop value is b - 1.  The scanner tabulates rank
deficiencies of the Gram pairing degree by degree to locate where the
radical first appears.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import ModelParams, TautClass, TautMonomial, enumerate_basis
from .calculus import gram, is_zero_in_cohomology, pair

DEFAULT_B_CAP = 7
DEFAULT_GRAM_CAP = 2000


class ResourceLimitError(RuntimeError):
    """A configured resource cap was exceeded; carries partial output if any."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


def _cycle_count(perm: Sequence[int]) -> int:
    # perm maps position i (0-based) to perm[i] (1-based values)
    seen = [False] * len(perm)
    cycles = 0
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycles += 1
        cur = start
        while not seen[cur]:
            seen[cur] = True
            cur = perm[cur] - 1
    return cycles


def _sign(perm: Sequence[int]) -> int:
    return -1 if (len(perm) - _cycle_count(perm)) % 2 else 1


@dataclass(frozen=True)
class KimuraElement:
    """Alternating sum of block matchings on 2b factors; b! terms, signs +-1."""

    b: int
    cls: TautClass


def kimura_element(params: ModelParams, cap_b: int = DEFAULT_B_CAP) -> KimuraElement:
    """Build sum over sigma of sign(sigma) * prod_i tau_(i, b+sigma(i))."""
    b = params.b
    if b > cap_b:
        raise ResourceLimitError(f"b={b} exceeds the cap {cap_b} ({b}! terms)")
    m = 2 * b
    terms: dict[TautMonomial, Fraction] = {}
    for perm in itertools.permutations(range(1, b + 1)):
        pairs = tuple((i, b + perm[i - 1]) for i in range(1, b + 1))
        terms[TautMonomial(m, pairs)] = Fraction(_sign(perm))
    return KimuraElement(b=b, cls=TautClass(m, terms))


def falling_factorial_pairing(b: int, delta: Fraction | int, cap_b: int = DEFAULT_B_CAP) -> Fraction:
    """Brute-force sum over the symmetric group of sign(sigma) * delta^cycles(sigma).

    This is the pairing of the alternating element against a fixed block
    matching, and it equals delta * (delta - 1) * ... * (delta - b + 1).
    """
    if b > cap_b:
        raise ResourceLimitError(f"b={b} exceeds the cap {cap_b} ({b}! permutations)")
    delta = Fraction(delta)
    total = Fraction(0)
    for perm in itertools.permutations(range(1, b + 1)):
        total += _sign(perm) * delta ** _cycle_count(perm)
    return total


@dataclass(frozen=True)
class KimuraReport:
    params: ModelParams
    b: int
    delta: Fraction
    vanishing: bool
    crosscheck_ok: bool
    dual_count: int

    @property
    def passed(self) -> bool:
        return self.vanishing and self.crosscheck_ok


def verify_kimura_vanishing(
    params: ModelParams,
    cap_b: int = DEFAULT_B_CAP,
    cap_gram: int = DEFAULT_GRAM_CAP,
) -> KimuraReport:
    """Radical membership of the alternating element at the loop value.

    `vanishing` is radical membership (zero pairing against every
    complementary monomial); `crosscheck_ok` compares the pairings
    against block matchings with the signed falling factorial computed
    by independent permutation enumeration.
    """
    element = kimura_element(params, cap_b)
    b, m = element.b, 2 * params.b
    duals = enumerate_basis(params, m, b * params.n)
    if len(duals) > cap_gram:
        raise ResourceLimitError(
            f"dual basis has {len(duals)} monomials, over the Gram cap {cap_gram}"
        )
    vanishing = is_zero_in_cohomology(element.cls, params)
    expected = falling_factorial_pairing(b, params.delta, cap_b)
    crosscheck_ok = True
    for rho in itertools.permutations(range(1, b + 1)):
        mono = TautMonomial(m, tuple((i, b + rho[i - 1]) for i in range(1, b + 1)))
        value = pair(element.cls, TautClass.from_monomial(mono), params)
        if value != _sign(rho) * expected:
            crosscheck_ok = False
            break
    return KimuraReport(
        params=params,
        b=b,
        delta=params.delta,
        vanishing=vanishing,
        crosscheck_ok=crosscheck_ok,
        dual_count=len(duals),
    )


@dataclass(frozen=True)
class ScanRow:
    m: int
    codim: int
    basis_size: int
    rank: int
    deficiency: int


@dataclass(frozen=True)
class ScanTable:
    params: ModelParams
    m_max: int
    rows: tuple[ScanRow, ...]


def scan_injectivity(
    params: ModelParams, m_max: int, cap_gram: int = DEFAULT_GRAM_CAP
) -> ScanTable:
    """Gram rank deficiencies for every power up to m_max and every codimension.

    Raises ResourceLimitError carrying the partial table when a Gram
    dimension exceeds the cap.
    """
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    rows: list[ScanRow] = []
    for m in range(1, m_max + 1):
        for codim in range(m * params.n + 1):
            size = len(enumerate_basis(params, m, codim))
            dual_size = len(enumerate_basis(params, m, m * params.n - codim))
            if max(size, dual_size) > cap_gram:
                raise ResourceLimitError(
                    f"Gram dimension {max(size, dual_size)} at m={m}, codim={codim} "
                    f"exceeds the cap {cap_gram}",
                    partial=ScanTable(params=params, m_max=m_max, rows=tuple(rows)),
                )
            report = gram(params, m, codim)
            rows.append(
                ScanRow(
                    m=m,
                    codim=codim,
                    basis_size=len(report.basis),
                    rank=report.rank,
                    deficiency=len(report.kernel_basis),
                )
            )
    return ScanTable(params=params, m_max=m_max, rows=tuple(rows))
