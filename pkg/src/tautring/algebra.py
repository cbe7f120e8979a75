"""Formal tautological ring of the m-th power of a polarized even-dimensional variety.

Classes on the m-th power are rational combinations of normal-form
monomials built from three kinds of generator: the hyperplane class h_i
on factor i (degree 1), the normalized point class o_i (degree n), and
the primitive diagonal correction tau_ij between factors i and j
(degree n).  Products are rewritten to a fixpoint of

    o_i * o_i   = 0        h_i * o_i   = 0        h_i^n = d * o_i
    tau_ij * o_i = 0       tau_ij * h_i = 0
    tau_ij * tau_ij = delta * o_i * o_j
    tau_ij * tau_ik = tau_jk * o_i            (i, j, k distinct)

where d is the degree of the variety and delta is the loop value picked
up by a closed tau cycle (b - 1 for a middle cohomology of dimension b).
The rules kill every monomial in which a tau-matched factor carries a
local class, and cap h exponents at n - 1, so a normal-form monomial is
a partial matching of the factors by tau edges plus one local class
(h power below n, or o) on each unmatched factor.  That makes the space
of classes of each codimension finite-dimensional with an explicit
monomial basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterator, Mapping


@dataclass(frozen=True)
class ModelParams:
    """Numerical profile of the model: dimension n (even), degree d,
    middle cohomology dimension b, loop value delta (defaults to b - 1)."""

    n: int
    d: int
    b: int
    delta: Fraction = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 2 or self.n % 2:
            raise ValueError("n must be an even integer >= 2")
        if not isinstance(self.d, int) or self.d < 1:
            raise ValueError("d must be an integer >= 1")
        if not isinstance(self.b, int) or self.b < 1:
            raise ValueError("b must be an integer >= 1")
        delta = Fraction(self.b - 1) if self.delta is None else Fraction(self.delta)
        object.__setattr__(self, "delta", delta)


@dataclass(frozen=True)
class TautMonomial:
    """Normal-form monomial on m factors.

    `pairs` is the tau matching (disjoint, each pair sorted), `hpows`
    maps unmatched factors to h exponents >= 1, `opoints` lists the
    unmatched factors carrying the point class.  Absent factors carry
    the unit.  Construction sorts the fields, so equality is syntactic.
    """

    m: int
    pairs: tuple[tuple[int, int], ...] = ()
    hpows: tuple[tuple[int, int], ...] = ()
    opoints: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.m < 0:
            raise ValueError("factor count must be >= 0")
        pairs = tuple(sorted(tuple(sorted(p)) for p in self.pairs))
        hpows = tuple(sorted(tuple(h) for h in self.hpows))
        opoints = tuple(sorted(self.opoints))
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "hpows", hpows)
        object.__setattr__(self, "opoints", opoints)
        used: set[int] = set()
        for i, j in pairs:
            if i == j:
                raise ValueError(f"tau pair ({i},{j}) must join distinct factors")
            for f in (i, j):
                self._claim(f, used)
        for f, e in hpows:
            if e < 1:
                raise ValueError(f"h exponent {e} must be >= 1")
            self._claim(f, used)
        for f in opoints:
            self._claim(f, used)

    def _claim(self, factor: int, used: set[int]) -> None:
        if not 1 <= factor <= self.m:
            raise ValueError(f"factor index {factor} out of range 1..{self.m}")
        if factor in used:
            raise ValueError(f"factor {factor} used more than once")
        used.add(factor)

    def canonical_str(self) -> str:
        """Canonical text form: tau atoms sorted, then locals by factor."""
        atoms = [f"t({i},{j})" for i, j in self.pairs]
        locals_ = [(f, "o", 0) for f in self.opoints] + [(f, "h", e) for f, e in self.hpows]
        for f, kind, e in sorted(locals_):
            if kind == "o":
                atoms.append(f"o{f}")
            else:
                atoms.append(f"h{f}" if e == 1 else f"h{f}^{e}")
        return "*".join(atoms) if atoms else "1"

    def __str__(self) -> str:
        return self.canonical_str()


def monomial_codim(mono: TautMonomial, params: ModelParams) -> int:
    """Codimension: n per tau pair and per o, plus the h exponents."""
    n = params.n
    for _, e in mono.hpows:
        if e >= n:
            raise ValueError(f"h exponent {e} is not in normal form for n={n}")
    return n * (len(mono.pairs) + len(mono.opoints)) + sum(e for _, e in mono.hpows)


class TautClass:
    """Finite rational combination of normal-form monomials on a fixed power m.

    Instances behave as immutable values: term maps are copied on the
    way in, zero coefficients are dropped, and equality is syntactic.
    """

    __slots__ = ("m", "_terms")

    def __init__(self, m: int, terms: Mapping[TautMonomial, Fraction | int] | None = None):
        clean: dict[TautMonomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            if mono.m != m:
                raise ValueError(f"monomial on {mono.m} factors in a class on {m}")
            coeff = Fraction(coeff)
            if coeff:
                clean[mono] = coeff
        self.m = m
        self._terms = clean

    @classmethod
    def zero(cls, m: int) -> "TautClass":
        return cls(m)

    @classmethod
    def from_monomial(cls, mono: TautMonomial, coeff: Fraction | int = 1) -> "TautClass":
        return cls(mono.m, {mono: Fraction(coeff)})

    @property
    def terms(self) -> Mapping[TautMonomial, Fraction]:
        return MappingProxyType(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, mono: TautMonomial) -> Fraction:
        return self._terms.get(mono, Fraction(0))

    def sorted_terms(self, params: ModelParams) -> list[tuple[TautMonomial, Fraction]]:
        """Terms in canonical order: by codimension, then canonical string."""
        return sorted(
            self._terms.items(),
            key=lambda item: (monomial_codim(item[0], params), item[0].canonical_str()),
        )

    def scale(self, coeff: Fraction | int) -> "TautClass":
        coeff = Fraction(coeff)
        if not coeff:
            return TautClass(self.m)
        return TautClass(self.m, {mono: c * coeff for mono, c in self._terms.items()})

    def __add__(self, other: "TautClass") -> "TautClass":
        if not isinstance(other, TautClass):
            return NotImplemented
        if self.m != other.m:
            raise ValueError(f"factor count mismatch: {self.m} != {other.m}")
        acc = dict(self._terms)
        for mono, c in other._terms.items():
            acc[mono] = acc.get(mono, Fraction(0)) + c
        return TautClass(self.m, acc)

    def __sub__(self, other: "TautClass") -> "TautClass":
        if not isinstance(other, TautClass):
            return NotImplemented
        return self + other.scale(-1)

    def __neg__(self) -> "TautClass":
        return self.scale(-1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TautClass):
            return NotImplemented
        return self.m == other.m and self._terms == other._terms

    def __repr__(self) -> str:
        body = " + ".join(
            f"{c}*{mono}" for mono, c in sorted(self._terms.items(), key=lambda t: t[0].canonical_str())
        )
        return f"TautClass({self.m}: {body or '0'})"


def unit_class(m: int) -> TautClass:
    return TautClass.from_monomial(TautMonomial(m))


def o_class(m: int, i: int) -> TautClass:
    return TautClass.from_monomial(TautMonomial(m, opoints=(i,)))


def tau_class(m: int, i: int, j: int) -> TautClass:
    return TautClass.from_monomial(TautMonomial(m, pairs=((i, j),)))


def h_class(params: ModelParams, m: int, i: int, exp: int = 1) -> TautClass:
    """The class h_i^exp in normal form: exponent n becomes d * o_i, above n zero."""
    if exp < 0:
        raise ValueError("h exponent must be >= 0")
    if exp == 0:
        return unit_class(m)
    if exp < params.n:
        return TautClass.from_monomial(TautMonomial(m, hpows=((i, exp),)))
    if exp == params.n:
        return TautClass.from_monomial(TautMonomial(m, opoints=(i,)), params.d)
    return TautClass.zero(m)


def _mul_monomials(
    a: TautMonomial, b: TautMonomial, params: ModelParams
) -> tuple[Fraction, TautMonomial] | None:
    """Normal form of a monomial product; None when the product is zero.

    The tau edges of the operands form a graph in which every vertex has
    degree at most two, so the components are paths and cycles.  A cycle
    contracts to the scalar delta with o on its vertices; a path
    contracts to a single tau between its endpoints with o on its
    interior.  Any local class sitting on a tau vertex kills the term,
    and locals on shared free factors combine with h^n -> d*o capping.
    """
    n, d = params.n, params.d
    pa: dict[int, int] = {}
    for i, j in a.pairs:
        pa[i] = j
        pa[j] = i
    pb: dict[int, int] = {}
    for i, j in b.pairs:
        pb[i] = j
        pb[j] = i
    la = dict(a.hpows)
    for f in a.opoints:
        la[f] = n
    lb = dict(b.hpows)
    for f in b.opoints:
        lb[f] = n
    for f in pa:
        if f in lb:
            return None
    for f in pb:
        if f in la:
            return None

    coeff = Fraction(1)
    new_pairs: list[tuple[int, int]] = []
    new_o: list[int] = []
    cycles = 0
    visited: set[int] = set()
    vertices = set(pa) | set(pb)
    for v in sorted(vertices):
        if v in visited or (v in pa and v in pb):
            continue
        # path endpoint: walk to the other end, o on the interior
        visited.add(v)
        cur = v
        use_a = v in pa
        while True:
            w = pa[cur] if use_a else pb[cur]
            visited.add(w)
            if w in pa and w in pb:
                new_o.append(w)
                use_a = not use_a
                cur = w
            else:
                new_pairs.append((v, w) if v < w else (w, v))
                break
    for v in sorted(vertices):
        if v in visited:
            continue
        cycles += 1
        cur = v
        use_a = True
        while True:
            visited.add(cur)
            new_o.append(cur)
            cur = pa[cur] if use_a else pb[cur]
            use_a = not use_a
            if cur == v:
                break
    if cycles:
        coeff *= params.delta**cycles
        if not coeff:
            return None

    new_h: list[tuple[int, int]] = []
    for f in sorted(set(la) | set(lb)):
        s = la.get(f, 0) + lb.get(f, 0)
        if s > n:
            return None
        if s == n:
            if f in la and f in lb:
                coeff *= d  # h^x * h^(n-x) closes to d * o
            new_o.append(f)
        else:
            new_h.append((f, s))
    mono = TautMonomial(a.m, tuple(new_pairs), tuple(new_h), tuple(new_o))
    return coeff, mono


def multiply(x: TautClass, y: TautClass, params: ModelParams) -> TautClass:
    """Product in the tautological ring, fully rewritten to normal form."""
    if x.m != y.m:
        raise ValueError(f"factor count mismatch: {x.m} != {y.m}")
    acc: dict[TautMonomial, Fraction] = {}
    for ma, ca in x._terms.items():
        for mb, cb in y._terms.items():
            result = _mul_monomials(ma, mb, params)
            if result is None:
                continue
            coeff, mono = result
            coeff *= ca * cb
            prev = acc.get(mono)
            acc[mono] = coeff if prev is None else prev + coeff
    return TautClass(x.m, acc)


def class_codim(x: TautClass, params: ModelParams) -> int | None:
    """Codimension of a homogeneous class, None for the zero class.

    Raises ValueError on inhomogeneous input.
    """
    codims = {monomial_codim(mono, params) for mono in x._terms}
    if not codims:
        return None
    if len(codims) > 1:
        raise ValueError("class is not homogeneous")
    return codims.pop()


def _matchings(avail: tuple[int, ...]) -> Iterator[tuple[tuple[int, int], ...]]:
    if not avail:
        yield ()
        return
    first, rest = avail[0], avail[1:]
    yield from _matchings(rest)
    for k in range(len(rest)):
        partner = rest[k]
        remaining = rest[:k] + rest[k + 1 :]
        for sub in _matchings(remaining):
            yield ((first, partner),) + sub


def _local_assignments(
    factors: tuple[int, ...], total: int, n: int
) -> Iterator[tuple[tuple[tuple[int, int], ...], tuple[int, ...]]]:
    # degree n on a factor means the point class o
    if not factors:
        if total == 0:
            yield ((), ())
        return
    f, rest = factors[0], factors[1:]
    for deg in range(min(n, total) + 1):
        for hp, op in _local_assignments(rest, total - deg, n):
            if deg == 0:
                yield hp, op
            elif deg == n:
                yield hp, (f,) + op
            else:
                yield ((f, deg),) + hp, op


def enumerate_basis(params: ModelParams, m: int, codim: int) -> list[TautMonomial]:
    """All normal-form monomials of the given codimension, in canonical order."""
    if m < 1:
        raise ValueError("factor count must be >= 1")
    if codim < 0:
        raise ValueError("codimension must be >= 0")
    n = params.n
    if codim > m * n:
        return []
    out: list[TautMonomial] = []
    factors = tuple(range(1, m + 1))
    for pairs in _matchings(factors):
        rem = codim - n * len(pairs)
        if rem < 0:
            continue
        matched = {f for p in pairs for f in p}
        unmatched = tuple(f for f in factors if f not in matched)
        for hp, op in _local_assignments(unmatched, rem, n):
            out.append(TautMonomial(m, pairs, hp, op))
    out.sort(key=TautMonomial.canonical_str)
    return out
