"""Exact chord-diagram combinatorics.

A chord diagram of size ``n`` is a perfect matching of the points
``1, ..., 2n``; two chords ``(a, b)`` and ``(c, d)`` with ``a < b``,
``c < d`` cross iff ``a < c < b < d``.  Counting diagrams by crossings
gives the Touchard-Riordan polynomials ``RT(n, q)``, which are also the
ensemble-averaged ``2n``-th moments of the SYK Hamiltonian in the
double-scaled limit.  Everything in this module uses arbitrary-precision
integers and rationals; no floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterator, NamedTuple, Sequence

from .errors import DomainError, SizeLimitError

#: Exhaustive enumeration cap: (2n-1)!! matchings, 2 027 025 at n = 8.
ENUMERATION_LIMIT = 8

#: Cap for the brute-force composition sum (partitions of j).
BRUTEFORCE_J_LIMIT = 12


class QPolynomial:
    """Polynomial in the crossing weight q with integer coefficients.

    ``coeffs[k]`` is the coefficient of ``q**k``.  Trailing zeros are
    trimmed, so two equal polynomials compare equal structurally.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int]):
        end = len(coeffs)
        while end > 0 and coeffs[end - 1] == 0:
            end -= 1
        self.coeffs = tuple(int(c) for c in coeffs[:end])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, q):
        """Evaluate at q (exact for int/Fraction input, float for float)."""
        acc = 0 * q
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, QPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == ((other,) if other else ())
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return QPolynomial(out)

    def __mul__(self, other: "QPolynomial") -> "QPolynomial":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return QPolynomial(())
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return QPolynomial(out)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "QPolynomial(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(f"{c}")
            elif k == 1:
                terms.append(f"{c}*q" if c != 1 else "q")
            else:
                terms.append(f"{c}*q^{k}" if c != 1 else f"q^{k}")
        return "QPolynomial(" + " + ".join(terms) + ")"


class ChordDiagram(NamedTuple):
    """A perfect matching of {1, ..., 2n} together with its crossing count."""

    pairs: tuple[tuple[int, int], ...]
    crossings: int


def matchings_count(n: int) -> int:
    """(2n-1)!!, the number of perfect matchings of 2n points."""
    out = 1
    for k in range(3, 2 * n, 2):
        out *= k
    return out


def crossing_number(pairs: Sequence[tuple[int, int]]) -> int:
    """Count crossings directly from the definition (quadratic scan)."""
    norm = [tuple(sorted(p)) for p in pairs]
    count = 0
    for i, (a, b) in enumerate(norm):
        for (c, d) in norm[i + 1 :]:
            lo, hi = ((a, b), (c, d)) if a < c else ((c, d), (a, b))
            if lo[0] < hi[0] < lo[1] < hi[1]:
                count += 1
    return count


# Enumeration walks points left to right, always matching the smallest
# unmatched point a to a larger free point b.  Every point < a is already
# matched, so each used point strictly between a and b is the right end of
# a chord that starts before a and therefore crosses (a, b).  This makes
# the incremental crossing count O(1) per branch.

@lru_cache(maxsize=None)
def _between_masks(n_points: int) -> tuple[tuple[int, ...], ...]:
    masks = []
    for a in range(n_points):
        row = []
        for b in range(n_points):
            if b > a + 1:
                row.append(((1 << b) - 1) ^ ((1 << (a + 1)) - 1))
            else:
                row.append(0)
        masks.append(tuple(row))
    return tuple(masks)


def iter_chord_diagrams(n: int) -> Iterator[ChordDiagram]:
    """Yield all (2n-1)!! diagrams in lexicographic order of their pair lists."""
    if n < 1:
        raise DomainError(f"diagram size must be >= 1, got {n}")
    between = _between_masks(2 * n)
    full = (1 << (2 * n)) - 1

    def rec(free: int, cross: int, acc: list[tuple[int, int]]):
        if not free:
            yield ChordDiagram(tuple(acc), cross)
            return
        a = (free & -free).bit_length() - 1
        rest = free ^ (1 << a)
        row = between[a]
        r = rest
        while r:
            bbit = r & -r
            b = bbit.bit_length() - 1
            r ^= bbit
            added = (b - a - 1) - (rest & row[b]).bit_count()
            acc.append((a + 1, b + 1))
            yield from rec(rest ^ bbit, cross + added, acc)
            acc.pop()

    yield from rec(full, 0, [])


def enumerate_chord_diagrams(n: int, limit: int = ENUMERATION_LIMIT) -> list[ChordDiagram]:
    """All perfect matchings of 2n points with exact crossing counts.

    Refuses n above ``limit`` ((2n-1)!! growth; the default cap is 8,
    i.e. 2 027 025 diagrams).
    """
    if n > limit:
        raise SizeLimitError(
            f"n={n} exceeds the exhaustive enumeration limit {limit}"
        )
    return list(iter_chord_diagrams(n))


def crossing_polynomial(n: int, limit: int = ENUMERATION_LIMIT) -> QPolynomial:
    """Crossing-count generating polynomial by exhaustive enumeration.

    Streams the diagrams without materialising them; this is the oracle
    that guards :func:`rt_polynomial`.
    """
    if n == 0:
        return QPolynomial((1,))
    if n > limit:
        raise SizeLimitError(
            f"n={n} exceeds the exhaustive enumeration limit {limit}"
        )
    counts = [0] * (n * (n - 1) // 2 + 1)
    between = _between_masks(2 * n)
    full = (1 << (2 * n)) - 1

    def rec(free: int, cross: int):
        if not free:
            counts[cross] += 1
            return
        a = (free & -free).bit_length() - 1
        rest = free ^ (1 << a)
        row = between[a]
        r = rest
        while r:
            bbit = r & -r
            b = bbit.bit_length() - 1
            r ^= bbit
            rec(rest ^ bbit, cross + (b - a - 1) - (rest & row[b]).bit_count())

    rec(full, 0)
    return QPolynomial(counts)


def _mul_qbracket(poly: list[int], c: int) -> list[int]:
    # poly * (1 + q + ... + q^{c-1}) == poly * (1 - q^c) / (1 - q),
    # done with shifted subtraction and a prefix sum (exact).
    h = poly + [0] * c
    for i, a in enumerate(poly):
        h[i + c] -= a
    out = []
    s = 0
    for a in h:
        s += a
        out.append(s)
    while out and out[-1] == 0:
        out.pop()
    return out


@lru_cache(maxsize=None)
def _rt_table(nmax: int) -> tuple[QPolynomial, ...]:
    # One left-to-right sweep over 2*nmax points.  State: number of open
    # chords -> weight polynomial.  Opening a chord is free; closing one of
    # c open chords inserts the new chord past 0..c-1 of them, weight [c]_q.
    # The zero-open state after 2m points is exactly RT(m, q).
    table: list[QPolynomial] = [QPolynomial((1,))]
    front: dict[int, list[int]] = {0: [1]}
    for m in range(1, 2 * nmax + 1):
        nxt: dict[int, list[int]] = {}

        def add(c: int, poly: list[int]):
            tgt = nxt.setdefault(c, [])
            if len(tgt) < len(poly):
                tgt.extend([0] * (len(poly) - len(tgt)))
            for i, a in enumerate(poly):
                tgt[i] += a

        for c, poly in front.items():
            add(c + 1, poly)
            if c > 0:
                add(c - 1, _mul_qbracket(poly, c))
        front = nxt
        if m % 2 == 0:
            table.append(QPolynomial(front.get(0, [0])))
    return tuple(table)


def rt_polynomial(n: int) -> QPolynomial:
    """Touchard-Riordan polynomial RT(n, q): chord diagrams by crossings.

    Computed by the chord-insertion dynamic program above, never by
    enumeration and never by the closed alternating-sum formula.
    ``RT(n, 0)`` is the n-th Catalan number and ``RT(n, 1) = (2n-1)!!``.
    """
    if n < 0:
        raise DomainError(f"RT index must be >= 0, got {n}")
    # size the cached table in powers of two so repeated calls share work
    size = max(16, 1 << (n - 1).bit_length()) if n > 1 else 16
    return _rt_table(size)[n]


def catalan(n: int) -> int:
    """n-th Catalan number, C_n = binom(2n, n) / (n + 1)."""
    if n < 0:
        raise DomainError(f"Catalan index must be >= 0, got {n}")
    return comb(2 * n, n) // (n + 1)


def necklace_count(n: int, block_coeffs: Sequence[Fraction | int]) -> Fraction:
    """Pointed labeled cycles of rooted blocks: n * [z^n] log(1/(1 - z B(z))).

    ``block_coeffs`` supplies b_0 .. b_n of the block generating function
    B(z).  Exact rational series arithmetic; equivalent to the multinomial
    sum over multiplicity vectors.
    """
    if n < 1:
        raise DomainError(f"necklace size must be >= 1, got {n}")
    if len(block_coeffs) < n + 1:
        raise DomainError(
            f"need block coefficients b_0..b_{n}, got {len(block_coeffs)}"
        )
    b = [Fraction(c) for c in block_coeffs[: n + 1]]
    # s = z * B(z) truncated at z^n; s[0] == 0 so log(1/(1-s)) = sum s^k / k
    s = [Fraction(0)] + b[:n]
    log_coeff_n = Fraction(0)
    power = [Fraction(1)] + [Fraction(0)] * n  # s^0
    for k in range(1, n + 1):
        nxt = [Fraction(0)] * (n + 1)
        for i, a in enumerate(power):
            if a == 0:
                continue
            for j in range(1, n + 1 - i):
                if s[j]:
                    nxt[i + j] += a * s[j]
        power = nxt
        log_coeff_n += power[n] / k
    return n * log_coeff_n


def iter_multiplicity_vectors(j: int) -> Iterator[dict[int, int]]:
    """Multiplicity vectors k_1..k_j with sum i*k_i = j, as {part: count}."""

    def rec(rem: int, maxpart: int) -> Iterator[dict[int, int]]:
        if rem == 0:
            yield {}
            return
        for part in range(min(rem, maxpart), 0, -1):
            for count in range(1, rem // part + 1):
                for tail in rec(rem - part * count, part - 1):
                    d = dict(tail)
                    d[part] = count
                    yield d

    yield from rec(j, j)


def catalan_composition_sum(p: int, j: int) -> Fraction:
    """Closed form ((p - 2j) / p) * binom(p, j) of the Catalan block sum.

    This is the total weight of ways to hang non-crossing diagrams with j
    chords in total onto a row of p - 2j labeled beads (see the brute-force
    companion for the defining sum).
    """
    if p < 1:
        raise DomainError(f"p must be >= 1, got {p}")
    if not 0 <= j <= (p - 1) // 2:
        raise DomainError(f"j must satisfy 0 <= j <= floor((p-1)/2), got j={j}, p={p}")
    return Fraction(p - 2 * j, p) * comb(p, j)


def catalan_composition_sum_bruteforce(p: int, j: int) -> Fraction:
    """Defining sum of the Catalan block weight, term by term.

    Sums over all multiplicity vectors (k_1, ..., k_j) with sum i*k_i = j:
    multinomial(k_1 + ... + k_j; k_1, ..., k_j) * binom(p - 2j, sum k_i)
    * prod C_i^{k_i}.  Serves as the oracle for
    :func:`catalan_composition_sum`.
    """
    if p < 1:
        raise DomainError(f"p must be >= 1, got {p}")
    if not 0 <= j <= (p - 1) // 2:
        raise DomainError(f"j must satisfy 0 <= j <= floor((p-1)/2), got j={j}, p={p}")
    if j > BRUTEFORCE_J_LIMIT:
        raise SizeLimitError(f"j={j} exceeds the brute-force limit {BRUTEFORCE_J_LIMIT}")
    total = Fraction(0)
    for ks in iter_multiplicity_vectors(j):
        r = sum(ks.values())
        multinom = factorial(r)
        for count in ks.values():
            multinom //= factorial(count)
        term = Fraction(multinom * comb(p - 2 * j, r))
        for part, count in ks.items():
            term *= catalan(part) ** count
        total += term
    return total


def effective_q(N: int, p: int) -> Fraction:
    """Finite-size crossing weight for p-body interactions among N fermions.

    The normalized alternating overlap sum
    ``sum_c (-1)^c binom(p, c) binom(N-p, p-c) / binom(N, p)``:
    the expected exchange sign of two independent p-subsets.  Approaches
    exp(-2 p^2 / N) in the double-scaled limit.  Exact rational output.
    """
    if p < 0:
        raise DomainError(f"p must be >= 0, got {p}")
    if p > N:
        raise DomainError(f"p={p} exceeds N={N}")
    s = sum((-1) ** c * comb(p, c) * comb(N - p, p - c) for c in range(p + 1))
    return Fraction(s, comb(N, p))
