"""Cheap, always-terminating no-match certificates for pair systems.

Each filter checks a necessary condition for a match: equal concatenations
must have equal lengths, equal letter counts, a prefix-comparable first
pair, and a suffix-comparable last pair.  A firing filter is a sound proof
that no match exists; a silent filter asserts nothing.

Certificates are lifted to threefold systems through the pair projections:
refuting any projection refutes that pair game and the three-row game at
once, since a three-row win is also a win of every pair game.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Union

from .core import Game, PAIR_GAMES, PairSystem, TriSystem, project


@dataclass(frozen=True)
class LengthImbalance:
    """Per-domino length differences all have the same strict sign."""

    diffs: tuple[int, ...]


@dataclass(frozen=True)
class LetterImbalance:
    """No nonnegative, nonzero combination of the count vectors is zero."""

    letters: str
    vectors: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class NoStarter:
    pass


@dataclass(frozen=True)
class NoEnder:
    pass


@dataclass(frozen=True)
class ClosedStateGraph:
    """The reachable configuration graph was fully explored with no accept."""

    states_explored: int
    depth_reached: int


Certificate = Union[LengthImbalance, LetterImbalance, NoStarter, NoEnder, ClosedStateGraph]

_CERT_KINDS = {
    LengthImbalance: "length-imbalance",
    LetterImbalance: "letter-imbalance",
    NoStarter: "no-starter",
    NoEnder: "no-ender",
    ClosedStateGraph: "closed-state-graph",
}


def certificate_kind(certificate: Certificate) -> str:
    return _CERT_KINDS[type(certificate)]


def balance_vectors(pair_system: PairSystem) -> list[tuple[int, ...]]:
    """Per-pair letter-count differences (first minus second), one entry per alphabet letter."""
    alphabet = pair_system.alphabet
    return [
        tuple(first.count(ch) - second.count(ch) for ch in alphabet)
        for first, second in pair_system.pairs
    ]


def length_filter(pair_system: PairSystem) -> LengthImbalance | None:
    """Fires when every pair strictly lengthens the same side.

    Then no nonempty selection can sum the differences to zero, so the two
    concatenations can never have equal length.
    """
    diffs = tuple(len(first) - len(second) for first, second in pair_system.pairs)
    if all(d > 0 for d in diffs) or all(d < 0 for d in diffs):
        return LengthImbalance(diffs)
    return None


def _solve_convex_coefficients(columns: list[tuple[int, ...]]) -> list[Fraction] | None:
    """Solve sum(c_j * columns[j]) = (0,...,0,1) exactly, requiring c >= 0.

    The trailing 1 in each column encodes the coefficients summing to one.
    Returns None when the columns are affinely dependent (no unique
    solution), inconsistent, or the unique solution has a negative entry.
    """
    k = len(columns)
    height = len(columns[0])
    rhs = [Fraction(0)] * (height - 1) + [Fraction(1)]
    m = [[Fraction(columns[j][r]) for j in range(k)] + [rhs[r]] for r in range(height)]

    pivot_rows: list[int] = []
    r = 0
    for c in range(k):
        pivot = next((i for i in range(r, height) if m[i][c] != 0), None)
        if pivot is None:
            return None  # rank deficient: affinely dependent support
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(height):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivot_rows.append(r)
        r += 1

    for i in range(r, height):
        if m[i][k] != 0:
            return None  # inconsistent

    solution = [m[j][k] for j in range(k)]
    if any(c < 0 for c in solution):
        return None
    return solution


def zero_in_hull(vectors: list[tuple[int, ...]]) -> tuple[bool, int]:
    """Exact test whether 0 lies in the convex hull of integer vectors.

    Enumerates supports of size at most dimension+1 (Caratheodory bound) and
    solves each candidate exactly with rational arithmetic.  Returns the
    verdict plus the number of supports examined, so tests can pin an
    operation-count ceiling.
    """
    dim = len(vectors[0])
    examined = 0
    zero = (0,) * dim
    for size in range(1, min(len(vectors), dim + 1) + 1):
        for support in combinations(range(len(vectors)), size):
            examined += 1
            if size == 1:
                if vectors[support[0]] == zero:
                    return True, examined
                continue
            columns = [vectors[i] + (1,) for i in support]
            if _solve_convex_coefficients(columns) is not None:
                return True, examined
    return False, examined


def balance_filter(pair_system: PairSystem) -> LetterImbalance | None:
    """Fires when no selection of pairs can balance every letter count.

    A match uses each domino some nonnegative number of times, not all zero,
    and zeroes every per-letter count difference; such a combination exists
    iff the zero vector lies in the convex hull of the difference vectors.
    """
    vectors = balance_vectors(pair_system)
    feasible, _ = zero_in_hull(vectors)
    if feasible:
        return None
    return LetterImbalance(pair_system.alphabet, tuple(vectors))


def _comparable(x: str, y: str, *, suffix: bool = False) -> bool:
    if suffix:
        return x.endswith(y) or y.endswith(x)
    return x.startswith(y) or y.startswith(x)


def boundary_filter(pair_system: PairSystem) -> NoStarter | NoEnder | None:
    """A match must start prefix-comparable and end suffix-comparable.

    Both concatenations are prefixes (and suffixes) of the same final word,
    so the first selected pair must agree letter-for-letter as far as the
    shorter word runs, and symmetrically at the end.
    """
    if not any(_comparable(a, b) for a, b in pair_system.pairs):
        return NoStarter()
    if not any(_comparable(a, b, suffix=True) for a, b in pair_system.pairs):
        return NoEnder()
    return None


def filter_pair(pair_system: PairSystem) -> Certificate | None:
    """Run the pair filters cheapest-first; report the first that fires."""
    for flt in (length_filter, boundary_filter, balance_filter):
        certificate = flt(pair_system)
        if certificate is not None:
            return certificate
    return None


def filter_triple(system: TriSystem) -> tuple[Game, Certificate] | None:
    """Certify the three-row game through its pair projections.

    Any projection certificate refutes both that pair game and the
    three-row game, because winning all three rows wins every pair.
    """
    for game in PAIR_GAMES:
        certificate = filter_pair(project(system, game))
        if certificate is not None:
            return game, certificate
    return None
