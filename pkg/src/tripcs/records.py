"""Line-delimited structured records.

One JSON object per line, keys sorted, no insignificant whitespace, ASCII
only: two runs over equal inputs produce byte-identical files.  The field
names here are the stable schema documented in docs/records.md.
"""

from __future__ import annotations

import json

from . import analyzer, filters, search
from .analyzer import AnalysisReport, SweepRecord, SweepSummary
from .core import Game
from .formats import instance_to_obj
from .search import SearchBounds


def dumps_record(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def certificate_to_obj(certificate: filters.Certificate) -> dict:
    obj: dict = {"kind": filters.certificate_kind(certificate)}
    if isinstance(certificate, filters.LengthImbalance):
        obj["diffs"] = list(certificate.diffs)
    elif isinstance(certificate, filters.LetterImbalance):
        obj["letters"] = certificate.letters
        obj["vectors"] = [list(v) for v in certificate.vectors]
    elif isinstance(certificate, filters.ClosedStateGraph):
        obj["statesExplored"] = certificate.states_explored
        obj["depthReached"] = certificate.depth_reached
    return obj


def outcome_to_obj(outcome: search.SearchOutcome) -> dict:
    if isinstance(outcome, search.Found):
        return {"result": "found", "match": list(outcome.match)}
    if isinstance(outcome, search.CertifiedNo):
        return {"result": "certified-no", "certificate": certificate_to_obj(outcome.certificate)}
    return {
        "result": "unknown",
        "reason": outcome.reason,
        "statesExplored": outcome.stats.states_explored,
        "depthReached": outcome.stats.depth_reached,
    }


def status_to_obj(status: analyzer.GameStatus) -> dict:
    if isinstance(status, analyzer.DecidedYes):
        return {"status": "yes", "match": list(status.match), "via": status.via}
    if isinstance(status, analyzer.DecidedNo):
        return {
            "status": "no",
            "certificate": certificate_to_obj(status.certificate),
            "via": status.via,
        }
    return {"status": "unknown", "reason": status.reason}


def bounds_to_obj(bounds: SearchBounds) -> dict:
    return {
        "maxDepth": bounds.max_depth,
        "maxOverhang": bounds.max_overhang,
        "maxStates": bounds.max_states,
    }


def report_to_obj(report: AnalysisReport) -> dict:
    return {
        "games": {game.code: status_to_obj(status) for game, status in report.statuses.items()},
        "witnessed": report.conjecture_witnessed,
        "bounds": bounds_to_obj(report.bounds),
    }


def sweep_record_to_obj(record: SweepRecord) -> dict:
    obj: dict = {"type": "instance", "seq": record.seq}
    if record.system is not None:
        obj["instance"] = instance_to_obj(record.system)
    if record.error is not None:
        obj["error"] = record.error
        return obj
    assert record.report is not None
    obj["games"] = {g.code: status_to_obj(s) for g, s in record.report.statuses.items()}
    obj["witnessed"] = record.report.conjecture_witnessed
    return obj


def summary_to_obj(summary: SweepSummary) -> dict:
    fraction = summary.witnessed_fraction
    return {
        "type": "summary",
        "instances": summary.instances,
        "errors": summary.errors,
        "byGame": {g.code: dict(counts) for g, counts in summary.by_game.items()},
        "certificates": dict(sorted(summary.certificates.items())),
        "witnessed": summary.witnessed,
        "witnessedFraction": f"{fraction.numerator}/{fraction.denominator}",
    }
