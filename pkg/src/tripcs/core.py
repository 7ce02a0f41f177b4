"""Domain model for threefold Post correspondence systems.

A threefold system (3PCS) is an ordered list of dominoes, each carrying a
top, middle, and bottom word over a shared alphabet.  Four solitaire games
are played on the same list: make all three rows spell the same word when
read left to right, or make one chosen pair of rows agree.  Each pair game
corresponds to a two-row projection of the system, which is an ordinary
Post correspondence system.

Everything here is an immutable value; the operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence


class TriPcsError(Exception):
    """Base class for all domain errors."""


class IndexOutOfRange(TriPcsError):
    pass


class EmptyIndexSequence(TriPcsError):
    pass


class NotAPairGame(TriPcsError):
    pass


class InvalidCut(TriPcsError):
    pass


class InvalidSystem(TriPcsError):
    """Raised when an operation requires a valid system but got violations."""

    def __init__(self, violations: Sequence[str]):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


class Row(Enum):
    TOP = "top"
    MIDDLE = "middle"
    BOTTOM = "bottom"


class Game(Enum):
    """One of the four solitaire games, keyed by its CLI/wire code."""

    TOP_MIDDLE_BOTTOM = "tmb"
    TOP_MIDDLE = "tm"
    TOP_BOTTOM = "tb"
    MIDDLE_BOTTOM = "mb"

    @property
    def code(self) -> str:
        return self.value

    @classmethod
    def from_code(cls, code: str) -> "Game":
        try:
            return cls(code)
        except ValueError:
            raise ValueError(
                f"unknown game code {code!r} (expected tmb, tm, tb or mb)"
            ) from None

    @property
    def rows(self) -> tuple[Row, ...]:
        return _GAME_ROWS[self]

    @property
    def is_pair(self) -> bool:
        return self is not Game.TOP_MIDDLE_BOTTOM


_GAME_ROWS = {
    Game.TOP_MIDDLE_BOTTOM: (Row.TOP, Row.MIDDLE, Row.BOTTOM),
    Game.TOP_MIDDLE: (Row.TOP, Row.MIDDLE),
    Game.TOP_BOTTOM: (Row.TOP, Row.BOTTOM),
    Game.MIDDLE_BOTTOM: (Row.MIDDLE, Row.BOTTOM),
}

ALL_GAMES: tuple[Game, ...] = tuple(Game)
PAIR_GAMES: tuple[Game, ...] = (Game.TOP_MIDDLE, Game.TOP_BOTTOM, Game.MIDDLE_BOTTOM)

# 1-based domino indices, as in all external surfaces.
MatchSeq = tuple[int, ...]


@dataclass(frozen=True)
class Domino:
    """An ordered triple of words written in the thirds of one domino."""

    top: str
    middle: str
    bottom: str

    def row(self, row: Row) -> str:
        if row is Row.TOP:
            return self.top
        if row is Row.MIDDLE:
            return self.middle
        return self.bottom


@dataclass(frozen=True)
class TriSystem:
    """A threefold system: an alphabet plus an ordered list of dominoes."""

    alphabet: str
    dominoes: tuple[Domino, ...]

    @property
    def n(self) -> int:
        return len(self.dominoes)

    def row_words(self, row: Row) -> tuple[str, ...]:
        return tuple(d.row(row) for d in self.dominoes)

    @classmethod
    def from_rows(cls, alphabet: str, triples: Iterable[tuple[str, str, str]]) -> "TriSystem":
        return cls(alphabet, tuple(Domino(t, m, b) for t, m, b in triples))


@dataclass(frozen=True)
class PairSystem:
    """A two-row projection: an ordinary Post correspondence system."""

    alphabet: str
    pairs: tuple[tuple[str, str], ...]

    @property
    def n(self) -> int:
        return len(self.pairs)


# Letters that would collide with the instance text grammar ('|' separates
# domino thirds, '#' starts a comment) are rejected outright.
_FORBIDDEN_LETTERS = frozenset("|#")


def _alphabet_violations(alphabet: str) -> list[str]:
    out = []
    if not alphabet:
        out.append("alphabet must not be empty")
    seen = set()
    for ch in alphabet:
        if ch in seen:
            out.append(f"duplicate letter {ch!r} in alphabet")
        seen.add(ch)
        if not (33 <= ord(ch) <= 126) or ch in _FORBIDDEN_LETTERS:
            out.append(f"letter {ch!r} must be printable ASCII and not one of '|', '#'")
    return out


def _word_violations(word: str, alphabet: str, where: str) -> list[str]:
    if word == "":
        return [f"empty word in {where}"]
    return [
        f"letter not in alphabet: {ch!r} in {where}"
        for ch in dict.fromkeys(word)
        if ch not in alphabet
    ]


def validate(system: TriSystem) -> list[str]:
    """Check every invariant; return the full list of violations (empty if ok)."""
    out = _alphabet_violations(system.alphabet)
    if system.n < 1:
        out.append("n >= 1 required: system has no dominoes")
    for i, domino in enumerate(system.dominoes, 1):
        for row in Row:
            out.extend(_word_violations(domino.row(row), system.alphabet, f"{row.value} of domino {i}"))
    return out


def validate_pair(pair_system: PairSystem) -> list[str]:
    out = _alphabet_violations(pair_system.alphabet)
    if pair_system.n < 1:
        out.append("n >= 1 required: system has no pairs")
    for i, (first, second) in enumerate(pair_system.pairs, 1):
        out.extend(_word_violations(first, pair_system.alphabet, f"first of pair {i}"))
        out.extend(_word_violations(second, pair_system.alphabet, f"second of pair {i}"))
    return out


def ensure_valid(system: TriSystem) -> None:
    violations = validate(system)
    if violations:
        raise InvalidSystem(violations)


def ensure_valid_pair(pair_system: PairSystem) -> None:
    violations = validate_pair(pair_system)
    if violations:
        raise InvalidSystem(violations)


def concat_row(system: TriSystem, row: Row, indices: Sequence[int] = ()) -> str:
    """Concatenate the chosen row of the selected dominoes, left to right.

    An empty index list yields the empty word (for internal composition;
    matches themselves must be nonempty, see verify_match).
    """
    n = system.n
    words = []
    for index in indices:
        if not 1 <= index <= n:
            raise IndexOutOfRange(f"index {index} out of range 1..{n}")
        words.append(system.dominoes[index - 1].row(row))
    return "".join(words)


def verify_match(system: TriSystem, indices: Sequence[int], game: Game) -> bool:
    """True iff the rows selected by the game concatenate to equal words.

    The index sequence must be nonempty: a zero-length play never counts as
    a win in any of the four games.
    """
    if len(indices) == 0:
        raise EmptyIndexSequence("a match needs at least one index (k >= 1)")
    words = [concat_row(system, row, indices) for row in game.rows]
    return all(w == words[0] for w in words[1:])


def project(system: TriSystem, game: Game) -> PairSystem:
    """The pair system keeping the two rows named by a pair game."""
    if not game.is_pair:
        raise NotAPairGame("the three-row game has no pair projection")
    r1, r2 = game.rows
    return PairSystem(system.alphabet, tuple((d.row(r1), d.row(r2)) for d in system.dominoes))
