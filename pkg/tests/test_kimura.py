import itertools
from fractions import Fraction

import pytest

from tautring import (
    ModelParams,
    ResourceLimitError,
    TautClass,
    TautMonomial,
    class_codim,
    falling_factorial_pairing,
    kimura_element,
    pair,
    parse_class,
    pullback,
    scan_injectivity,
    verify_kimura_vanishing,
)

P2 = ModelParams(2, 8, 2)
P3 = ModelParams(2, 8, 3)


def _inversion_sign(perm):
    # independent of the library's cycle-count sign
    inversions = sum(
        1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b]
    )
    return -1 if inversions % 2 else 1


def _cycles_of(perm):
    seen = set()
    count = 0
    for start in range(len(perm)):
        if start in seen:
            continue
        count += 1
        cur = start
        while cur not in seen:
            seen.add(cur)
            cur = perm[cur] - 1
    return count


def test_kimura_element_b2():
    element = kimura_element(P2)
    assert element.cls == parse_class("t(1,3)*t(2,4) - t(1,4)*t(2,3)", P2)


def test_kimura_element_b3_shape():
    element = kimura_element(P3)
    assert len(element.cls.terms) == 6
    assert all(abs(c) == 1 for c in element.cls.terms.values())
    assert class_codim(element.cls, P3) == P3.b * P3.n
    for mono in element.cls.terms:
        assert len(mono.pairs) == P3.b
        assert all(i <= P3.b < j for i, j in mono.pairs)


def test_kimura_element_respects_cap():
    with pytest.raises(ResourceLimitError):
        kimura_element(ModelParams(2, 8, 8))
    with pytest.raises(ResourceLimitError):
        kimura_element(P3, cap_b=2)


def test_falling_factorial_examples():
    assert falling_factorial_pairing(2, 1) == 0
    assert falling_factorial_pairing(3, 2) == 0
    assert falling_factorial_pairing(3, 3) == 6


def test_falling_factorial_matches_closed_form_and_independent_sum():
    deltas = [Fraction(0), Fraction(1), Fraction(2), Fraction(3), Fraction(7, 2)]
    for b in range(1, 7):
        for delta in deltas:
            value = falling_factorial_pairing(b, delta)
            closed = Fraction(1)
            for i in range(b):
                closed *= delta - i
            assert value == closed
            independent = Fraction(0)
            for perm in itertools.permutations(range(1, b + 1)):
                independent += _inversion_sign(perm) * delta ** _cycles_of(perm)
            assert value == independent


def test_falling_factorial_vanishes_at_loop_value():
    for b in range(1, 8):
        assert falling_factorial_pairing(b, b - 1) == 0


def test_pairing_against_block_matchings_counts_cycles():
    # <prod tau_(i,b+sigma(i)), prod tau_(i,b+rho(i))> = delta^cycles(sigma rho^-1)
    for b, params in ((2, P2), (3, P3), (4, ModelParams(2, 8, 4))):
        m = 2 * b
        for sigma in itertools.permutations(range(1, b + 1)):
            left = TautClass.from_monomial(
                TautMonomial(m, tuple((i, b + sigma[i - 1]) for i in range(1, b + 1)))
            )
            for rho in itertools.permutations(range(1, b + 1)):
                right = TautClass.from_monomial(
                    TautMonomial(m, tuple((i, b + rho[i - 1]) for i in range(1, b + 1)))
                )
                rho_inv = [0] * b
                for i in range(1, b + 1):
                    rho_inv[rho[i - 1] - 1] = i
                composed = tuple(sigma[rho_inv[i] - 1] for i in range(b))
                expected = params.delta ** _cycles_of(composed)
                assert pair(left, right, params) == expected


def test_kimura_pairing_matches_falling_factorial_for_all_matchings():
    for b, params in ((2, P2), (3, P3), (4, ModelParams(2, 8, 4))):
        element = kimura_element(params)
        base = falling_factorial_pairing(b, params.delta)
        for rho in itertools.permutations(range(1, b + 1)):
            mono = TautMonomial(2 * b, tuple((i, b + rho[i - 1]) for i in range(1, b + 1)))
            value = pair(element.cls, TautClass.from_monomial(mono), params)
            assert value == _inversion_sign(rho) * base


def test_kimura_element_is_alternating_under_relabeling():
    element = kimura_element(P3)
    swapped = pullback(element.cls, 6, (2, 1, 3, 4, 5, 6))
    assert swapped == -element.cls


def test_vanishing_at_loop_value_and_not_above():
    report = verify_kimura_vanishing(P2)
    assert report.vanishing and report.crosscheck_ok and report.passed
    shifted = verify_kimura_vanishing(ModelParams(2, 8, 2, delta=Fraction(2)))
    assert not shifted.vanishing
    assert shifted.crosscheck_ok
    report3 = verify_kimura_vanishing(P3)
    assert report3.vanishing and report3.crosscheck_ok


def test_vanishing_respects_gram_cap():
    with pytest.raises(ResourceLimitError):
        verify_kimura_vanishing(P3, cap_gram=10)


def test_scan_injectivity_thresholds():
    table = scan_injectivity(P2, 4)
    below = [row for row in table.rows if row.m <= 2 * P2.b - 1]
    assert all(row.deficiency == 0 for row in below)
    nonzero = [row for row in table.rows if row.deficiency]
    assert nonzero
    first = nonzero[0]
    assert (first.m, first.codim) == (4, 4)
    for row in table.rows:
        assert row.rank + row.deficiency == row.basis_size


def test_scan_emits_partial_table_on_resource_limit():
    with pytest.raises(ResourceLimitError) as err:
        scan_injectivity(P2, 4, cap_gram=10)
    partial = err.value.partial
    assert partial is not None
    assert partial.rows
    assert all(row.deficiency == 0 for row in partial.rows)


def test_scan_validates_m_max():
    with pytest.raises(ValueError):
        scan_injectivity(P2, 0)
