"""Bounded breadth-first search over prefix-overhang configurations.

While building a domino list, the partial row concatenations must all be
prefixes of the eventual common word, so any two of them stay
prefix-comparable and their whole state is captured by the suffix one row
sticks out past the other.  Discarding the agreed prefix keeps the
configuration space finite whenever overhangs are bounded, which is what
makes the closed-state-graph certificate possible.

Every search terminates with one of three outcomes: a shortest match, a
sound certificate that no match exists, or an honest Unknown naming the
resource bound that was hit.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence, Union

from .core import (
    Domino,
    IndexOutOfRange,
    MatchSeq,
    PairSystem,
    TriSystem,
    ensure_valid,
    ensure_valid_pair,
)
from .filters import Certificate, ClosedStateGraph


class Side(Enum):
    FIRST = "first"
    SECOND = "second"


@dataclass(frozen=True)
class PairConfig:
    """The suffix by which the leading track exceeds the trailing one.

    An empty overhang means the two concatenations are equal; it is
    normalized to `ahead=FIRST` so equal states compare equal.
    """

    ahead: Side
    overhang: str

    @property
    def balanced(self) -> bool:
        return self.overhang == ""


PAIR_START = PairConfig(Side.FIRST, "")


def _make_pair_config(ahead: Side, overhang: str) -> PairConfig:
    if overhang == "":
        return PAIR_START
    return PairConfig(ahead, overhang)


def step_pair(config: PairConfig, pair: tuple[str, str]) -> PairConfig | None:
    """Append one pair of words to the two tracks.

    Returns the new configuration, or None when the extended products stop
    being prefix-comparable (a dead end, not an error).
    """
    first, second = pair
    if config.ahead is Side.FIRST:
        a, b = config.overhang + first, second
    else:
        a, b = first, config.overhang + second
    if a.startswith(b):
        return _make_pair_config(Side.FIRST, a[len(b):])
    if b.startswith(a):
        return _make_pair_config(Side.SECOND, b[len(a):])
    return None


@dataclass(frozen=True)
class TriConfig:
    """Signed overhangs of the top track against the middle and bottom ones.

    The middle/bottom relation is implied: when both trail the top they are
    prefixes of one string and automatically comparable; when both lead, the
    two overhangs themselves must be prefix-comparable, which step_triple
    enforces.
    """

    top_middle: PairConfig
    top_bottom: PairConfig

    @property
    def balanced(self) -> bool:
        return self.top_middle.balanced and self.top_bottom.balanced


TRI_START = TriConfig(PAIR_START, PAIR_START)


def step_triple(config: TriConfig, domino: Domino) -> TriConfig | None:
    """Append one domino to all three tracks; None when any pair diverges."""
    top_middle = step_pair(config.top_middle, (domino.top, domino.middle))
    if top_middle is None:
        return None
    top_bottom = step_pair(config.top_bottom, (domino.top, domino.bottom))
    if top_bottom is None:
        return None
    if top_middle.ahead is Side.SECOND and top_bottom.ahead is Side.SECOND:
        u, v = top_middle.overhang, top_bottom.overhang
        if not (u.startswith(v) or v.startswith(u)):
            return None
    return TriConfig(top_middle, top_bottom)


@dataclass(frozen=True)
class SearchBounds:
    """Resource caps: list length, overhang letters, stored configurations."""

    max_depth: int = 64
    max_overhang: int = 64
    max_states: int = 1_000_000

    def __post_init__(self) -> None:
        for name in ("max_depth", "max_overhang", "max_states"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be strictly positive")


DEFAULT_BOUNDS = SearchBounds()


@dataclass(frozen=True)
class SearchStats:
    states_explored: int
    depth_reached: int


@dataclass(frozen=True)
class Found:
    match: MatchSeq


@dataclass(frozen=True)
class CertifiedNo:
    certificate: Certificate


@dataclass(frozen=True)
class Unknown:
    reason: str  # "depth" | "overhang" | "states"
    stats: SearchStats


SearchOutcome = Union[Found, CertifiedNo, Unknown]


@dataclass
class Exploration:
    """A finished search plus its BFS bookkeeping (config -> (parent, index))."""

    outcome: SearchOutcome
    parents: dict
    start: object


def reconstruct(parents: dict, config) -> MatchSeq:
    """Index sequence along BFS tree edges from the start to `config`."""
    out = []
    while config in parents:
        config, index = parents[config]
        out.append(index)
    return tuple(reversed(out))


def _explore(n: int, step: Callable, size: Callable, start, bounds: SearchBounds) -> Exploration:
    """Deduplicating BFS from `start`, expanding indices in ascending order.

    Accepting means the overhang is empty again after at least one step.
    The accept test runs on every generated configuration before
    deduplication: the balanced configuration usually *is* the start state,
    which is already in the visited set.

    Configurations at depth == max_depth are not expanded, but their
    transitions are still probed: a live transition to an unvisited or
    accepting configuration counts as pruning, which is exactly what keeps
    the closed-state-graph certificate sound.  Matches longer than max_depth
    are therefore never reported; they downgrade the result to Unknown.
    """
    parents: dict = {}
    visited = {start}
    queue = deque([(start, 0)])
    pruned: str | None = None
    depth_reached = 0

    while queue:
        config, depth = queue.popleft()
        boundary = depth >= bounds.max_depth
        for index in range(1, n + 1):
            nxt = step(config, index)
            if nxt is None:
                continue
            if size(nxt) == 0:
                if boundary:
                    pruned = pruned or "depth"
                    continue
                match = reconstruct(parents, config) + (index,)
                return Exploration(Found(match), parents, start)
            if boundary:
                if nxt not in visited:
                    pruned = pruned or "depth"
                continue
            if size(nxt) > bounds.max_overhang:
                pruned = pruned or "overhang"
                continue
            if nxt in visited:
                continue
            if len(visited) >= bounds.max_states:
                pruned = pruned or "states"
                continue
            visited.add(nxt)
            parents[nxt] = (config, index)
            queue.append((nxt, depth + 1))
            if depth + 1 > depth_reached:
                depth_reached = depth + 1

    stats = SearchStats(len(visited), depth_reached)
    if pruned is None:
        outcome: SearchOutcome = CertifiedNo(ClosedStateGraph(stats.states_explored, stats.depth_reached))
    else:
        outcome = Unknown(pruned, stats)
    return Exploration(outcome, parents, start)


def explore_pair(
    pair_system: PairSystem,
    bounds: SearchBounds = DEFAULT_BOUNDS,
    start: PairConfig = PAIR_START,
) -> Exploration:
    ensure_valid_pair(pair_system)
    pairs = pair_system.pairs

    def step(config: PairConfig, index: int) -> PairConfig | None:
        return step_pair(config, pairs[index - 1])

    return _explore(len(pairs), step, lambda c: len(c.overhang), start, bounds)


def explore_triple(
    system: TriSystem,
    bounds: SearchBounds = DEFAULT_BOUNDS,
    start: TriConfig = TRI_START,
) -> Exploration:
    ensure_valid(system)
    dominoes = system.dominoes

    def step(config: TriConfig, index: int) -> TriConfig | None:
        return step_triple(config, dominoes[index - 1])

    def size(config: TriConfig) -> int:
        return max(len(config.top_middle.overhang), len(config.top_bottom.overhang))

    return _explore(len(dominoes), step, size, start, bounds)


def search_pair(
    pair_system: PairSystem,
    bounds: SearchBounds = DEFAULT_BOUNDS,
    start: PairConfig = PAIR_START,
) -> SearchOutcome:
    """Semi-decide the pair question: Found, CertifiedNo, or Unknown.

    Found always carries a shortest match, ties broken by the
    lexicographically least index sequence; CertifiedNo(ClosedStateGraph) is
    only emitted when no transition was ever pruned and the frontier
    emptied, so it certifies that no match of any length exists.
    """
    return explore_pair(pair_system, bounds, start).outcome


def search_triple(
    system: TriSystem,
    bounds: SearchBounds = DEFAULT_BOUNDS,
    start: TriConfig = TRI_START,
) -> SearchOutcome:
    """Same contract as search_pair, for the three-row game."""
    return explore_triple(system, bounds, start).outcome


def pair_config_after(pair_system: PairSystem, indices: Sequence[int]) -> PairConfig | None:
    """Fold the pairs selected by `indices` from the start configuration."""
    config: PairConfig | None = PAIR_START
    n = pair_system.n
    for index in indices:
        if not 1 <= index <= n:
            raise IndexOutOfRange(f"index {index} out of range 1..{n}")
        config = step_pair(config, pair_system.pairs[index - 1])
        if config is None:
            return None
    return config


def tri_config_after(system: TriSystem, indices: Sequence[int]) -> TriConfig | None:
    config: TriConfig | None = TRI_START
    n = system.n
    for index in indices:
        if not 1 <= index <= n:
            raise IndexOutOfRange(f"index {index} out of range 1..{n}")
        config = step_triple(config, system.dominoes[index - 1])
        if config is None:
            return None
    return config
