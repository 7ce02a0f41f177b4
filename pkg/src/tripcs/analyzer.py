"""Per-instance quadruple analysis and the sweep harness.

`analyze` answers all four game questions for one instance with the partial
tools available: filters first, then bounded search.  Unknown is a
first-class outcome; nothing is ever guessed.  An instance counts as
conjecture-witnessed when at least one of its four questions was decided
either way, which is the empirical quantity the sweep measures.

Decisions propagate along the one logical implication between the games:
winning all three rows wins every pair, so a three-row match decides the
pair games YES, and any pair-game refutation decides the three-row game NO.
Propagated statuses are marked `via="closure"` so originals stay
attributable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

from . import search as _search
from .core import ALL_GAMES, Game, MatchSeq, PAIR_GAMES, TriSystem, ensure_valid, project, validate
from .filters import Certificate, certificate_kind, filter_pair
from .search import DEFAULT_BOUNDS, SearchBounds, search_pair, search_triple


@dataclass(frozen=True)
class DecidedYes:
    match: MatchSeq
    via: str = "search"  # "search" | "closure"


@dataclass(frozen=True)
class DecidedNo:
    certificate: Certificate
    via: str = "search"  # "filter" | "search" | "closure"


@dataclass(frozen=True)
class Unknown:
    reason: str


GameStatus = Union[DecidedYes, DecidedNo, Unknown]


@dataclass
class AnalysisReport:
    statuses: dict[Game, GameStatus]
    conjecture_witnessed: bool
    bounds: SearchBounds


def analyze(system: TriSystem, bounds: SearchBounds = DEFAULT_BOUNDS) -> AnalysisReport:
    """Answer all four game questions for one instance, honestly Unknown."""
    ensure_valid(system)
    statuses: dict[Game, GameStatus] = {}

    for game in PAIR_GAMES:
        pair_system = project(system, game)
        certificate = filter_pair(pair_system)
        if certificate is not None:
            statuses[game] = DecidedNo(certificate, via="filter")
            continue
        statuses[game] = _from_outcome(search_pair(pair_system, bounds))

    refuted = next((g for g in PAIR_GAMES if isinstance(statuses[g], DecidedNo)), None)
    if refuted is not None:
        # Contrapositive of the closure property: no pair match, no
        # three-row match either.
        statuses[Game.TOP_MIDDLE_BOTTOM] = DecidedNo(statuses[refuted].certificate, via="closure")
    else:
        statuses[Game.TOP_MIDDLE_BOTTOM] = _from_outcome(search_triple(system, bounds))

    tmb = statuses[Game.TOP_MIDDLE_BOTTOM]
    if isinstance(tmb, DecidedYes):
        for game in PAIR_GAMES:
            if isinstance(statuses[game], Unknown):
                statuses[game] = DecidedYes(tmb.match, via="closure")

    ordered = {game: statuses[game] for game in ALL_GAMES}
    witnessed = any(not isinstance(s, Unknown) for s in ordered.values())
    return AnalysisReport(ordered, witnessed, bounds)


def _from_outcome(outcome: _search.SearchOutcome) -> GameStatus:
    if isinstance(outcome, _search.Found):
        return DecidedYes(outcome.match, via="search")
    if isinstance(outcome, _search.CertifiedNo):
        return DecidedNo(outcome.certificate, via="search")
    return Unknown(outcome.reason)


@dataclass
class SweepRecord:
    seq: int
    system: TriSystem | None
    report: AnalysisReport | None = None
    error: str | None = None


@dataclass
class SweepSummary:
    instances: int = 0
    errors: int = 0
    by_game: dict[Game, dict[str, int]] = field(
        default_factory=lambda: {g: {"yes": 0, "no": 0, "unknown": 0} for g in ALL_GAMES}
    )
    certificates: dict[str, int] = field(default_factory=dict)
    witnessed: int = 0

    @property
    def witnessed_fraction(self) -> Fraction:
        if self.instances == 0:
            return Fraction(0)
        return Fraction(self.witnessed, self.instances)


@dataclass
class SweepResult:
    records: list[SweepRecord]
    summary: SweepSummary


def sweep(source: Iterable[TriSystem], bounds: SearchBounds = DEFAULT_BOUNDS) -> SweepResult:
    """Analyze every instance of a stream; tally outcomes and certificates.

    Validation failures become per-record errors without aborting the rest
    of the stream.  Given the same stream and bounds, the records and the
    summary are identical run to run.
    """
    records: list[SweepRecord] = []
    summary = SweepSummary()

    for seq, system in enumerate(source, 1):
        violations = validate(system)
        if violations:
            records.append(SweepRecord(seq, system, error="; ".join(violations)))
            summary.errors += 1
            continue
        report = analyze(system, bounds)
        records.append(SweepRecord(seq, system, report=report))
        summary.instances += 1
        if report.conjecture_witnessed:
            summary.witnessed += 1
        for game, status in report.statuses.items():
            if isinstance(status, DecidedYes):
                summary.by_game[game]["yes"] += 1
            elif isinstance(status, DecidedNo):
                summary.by_game[game]["no"] += 1
                if status.via != "closure":
                    kind = certificate_kind(status.certificate)
                    summary.certificates[kind] = summary.certificates.get(kind, 0) + 1
            else:
                summary.by_game[game]["unknown"] += 1

    return SweepResult(records, summary)
