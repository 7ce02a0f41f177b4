"""Instance sources: exhaustive canonical enumeration, seeded random
instances, and planted-match instances that are solvable by construction.

All generators are pure functions of their arguments.  The random source is
Python's `random.Random` (Mersenne Twister), which is deterministic across
platforms and versions for the operations used here; the seed scheme is
documented in the README so sweep records stay reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterator, Sequence

from .core import Domino, InvalidCut, MatchSeq, TriSystem, ensure_valid

ALPHABET_POOL = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class EnumParams:
    max_dominoes: int
    max_word_len: int
    alphabet_size: int

    def __post_init__(self) -> None:
        for name in ("max_dominoes", "max_word_len", "alphabet_size"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be strictly positive")
        if self.alphabet_size > len(ALPHABET_POOL):
            raise ValueError(f"alphabet_size must be at most {len(ALPHABET_POOL)}")


def _alphabet(size: int) -> str:
    return ALPHABET_POOL[:size]


def canonicalize(system: TriSystem) -> TriSystem:
    """Canonical representative under letter renaming and domino reordering.

    Applies every bijective relabeling of the alphabet, sorts the dominoes
    lexicographically, and keeps the least domino list.  Taking the orbit
    minimum makes the operation idempotent and collapses exactly the
    letter-renaming plus reordering symmetries, nothing more: the rows are
    never permuted, because the four games are not symmetric under row
    exchange.  Cost grows as factorial of the alphabet size; meant for the
    small alphabets the enumerations use.
    """
    best: tuple | None = None
    for perm in permutations(system.alphabet):
        table = str.maketrans(system.alphabet, "".join(perm))
        relabeled = sorted(
            (d.top.translate(table), d.middle.translate(table), d.bottom.translate(table))
            for d in system.dominoes
        )
        key = tuple(relabeled)
        if best is None or key < best:
            best = key
    assert best is not None
    return TriSystem(system.alphabet, tuple(Domino(t, m, b) for t, m, b in best))


def _all_words(alphabet: str, max_len: int) -> list[str]:
    words = [
        "".join(letters)
        for length in range(1, max_len + 1)
        for letters in product(alphabet, repeat=length)
    ]
    return sorted(words)


def enumerate_systems(params: EnumParams) -> Iterator[TriSystem]:
    """Every canonical system within the size limits, in encoding order.

    Raw systems are generated lexicographically (by domino count, then by
    the domino word triples); a system is yielded iff it already equals its
    canonical form, which emits each equivalence class exactly once.
    """
    alphabet = _alphabet(params.alphabet_size)
    words = _all_words(alphabet, params.max_word_len)
    dominoes = [Domino(t, m, b) for t, m, b in product(words, repeat=3)]
    for n in range(1, params.max_dominoes + 1):
        for combo in product(dominoes, repeat=n):
            system = TriSystem(alphabet, combo)
            if canonicalize(system).dominoes == system.dominoes:
                yield system


def random_instance(seed: int, params: EnumParams) -> TriSystem:
    """Deterministic instance for (seed, params): uniform raw choices."""
    rng = random.Random(seed)
    alphabet = _alphabet(params.alphabet_size)

    def word() -> str:
        return "".join(rng.choice(alphabet) for _ in range(rng.randint(1, params.max_word_len)))

    n = rng.randint(1, params.max_dominoes)
    system = TriSystem(alphabet, tuple(Domino(word(), word(), word()) for _ in range(n)))
    ensure_valid(system)
    return system


def assemble_planted(
    word: str,
    top_lengths: Sequence[int],
    middle_lengths: Sequence[int],
    bottom_lengths: Sequence[int],
    alphabet: str,
) -> tuple[TriSystem, MatchSeq]:
    """Build the system whose dominoes are three same-count cuts of `word`.

    Each length list must consist of positive parts summing to len(word).
    Playing the dominoes in order reassembles `word` on all three rows, so
    the returned index sequence 1..pieces is a three-row match by
    construction.
    """
    pieces = len(top_lengths)
    if not (len(middle_lengths) == len(bottom_lengths) == pieces):
        raise InvalidCut("all three cuts must have the same number of pieces")
    for lengths in (top_lengths, middle_lengths, bottom_lengths):
        if any(x < 1 for x in lengths) or sum(lengths) != len(word):
            raise InvalidCut("cut lengths must be positive and sum to the word length")

    def segments(lengths: Sequence[int]) -> list[str]:
        out, at = [], 0
        for length in lengths:
            out.append(word[at : at + length])
            at += length
        return out

    tops, middles, bottoms = segments(top_lengths), segments(middle_lengths), segments(bottom_lengths)
    system = TriSystem(alphabet, tuple(Domino(t, m, b) for t, m, b in zip(tops, middles, bottoms)))
    return system, tuple(range(1, pieces + 1))


def plant_match(
    seed: int, word_len: int, pieces: int, alphabet_size: int
) -> tuple[TriSystem, MatchSeq]:
    """Random instance with a known three-row match planted into it.

    Draws a word of `word_len` letters and cuts it into exactly `pieces`
    nonempty segments three independent times; domino i stacks the i-th
    top, middle, and bottom segments.
    """
    if pieces < 1:
        raise InvalidCut("pieces must be strictly positive")
    if pieces > word_len:
        raise InvalidCut(f"cannot cut a word of length {word_len} into {pieces} nonempty pieces")
    rng = random.Random(seed)
    alphabet = _alphabet(alphabet_size)
    word = "".join(rng.choice(alphabet) for _ in range(word_len))

    def lengths() -> list[int]:
        cuts = sorted(rng.sample(range(1, word_len), pieces - 1))
        edges = [0] + cuts + [word_len]
        return [b - a for a, b in zip(edges, edges[1:])]

    return assemble_planted(word, lengths(), lengths(), lengths(), alphabet)
