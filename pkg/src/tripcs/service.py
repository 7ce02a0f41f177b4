"""Stateful session service for playing the solitaire games move by move.

Sessions live in memory with an idle expiry; each holds one system plus the
index list built so far.  The wire protocol (version 1) is line-delimited
JSON records over a TCP socket, one request record per line and one
response record per line; field names are pinned in docs/protocol.md.

Operations on one session are serialized by a per-session lock; independent
sessions proceed concurrently under the threading TCP server.
"""

from __future__ import annotations

import itertools
import json
import socketserver
import threading
import time
from dataclasses import dataclass

from .core import (
    ALL_GAMES,
    Game,
    IndexOutOfRange,
    PAIR_GAMES,
    Row,
    TriPcsError,
    TriSystem,
    concat_row,
    ensure_valid,
    project,
)
from .formats import InstanceFormatError, instance_to_obj, parse_instance
from .records import dumps_record
from .search import (
    DEFAULT_BOUNDS,
    Found,
    SearchBounds,
    pair_config_after,
    search_pair,
    search_triple,
    tri_config_after,
)

PROTOCOL_VERSION = 1


class UnknownSession(TriPcsError):
    pass


class NothingToUndo(TriPcsError):
    pass


class MoveLimitExceeded(TriPcsError):
    pass


@dataclass(frozen=True)
class SessionView:
    """Snapshot shown after every operation: the three growing words plus
    live win/dead flags per game."""

    played: tuple[int, ...]
    top: str
    middle: str
    bottom: str
    common_prefix_len: int
    won_games: tuple[Game, ...]
    dead_games: tuple[Game, ...]


def _prefix_comparable(a: str, b: str) -> bool:
    return a.startswith(b) or b.startswith(a)


def _common_prefix_len(a: str, b: str, c: str) -> int:
    limit = min(len(a), len(b), len(c))
    i = 0
    while i < limit and a[i] == b[i] == c[i]:
        i += 1
    return i


def compute_view(system: TriSystem, played: tuple[int, ...]) -> SessionView:
    words = {row: concat_row(system, row, played) for row in Row}
    by_game = {
        Game.TOP_MIDDLE: (words[Row.TOP], words[Row.MIDDLE]),
        Game.TOP_BOTTOM: (words[Row.TOP], words[Row.BOTTOM]),
        Game.MIDDLE_BOTTOM: (words[Row.MIDDLE], words[Row.BOTTOM]),
    }
    won = []
    dead = []
    pair_dead = {g: not _prefix_comparable(*by_game[g]) for g in PAIR_GAMES}
    for game in ALL_GAMES:
        if game.is_pair:
            if played and by_game[game][0] == by_game[game][1]:
                won.append(game)
            if pair_dead[game]:
                dead.append(game)
        else:
            if played and len(set(words.values())) == 1:
                won.append(game)
            # A dead pair kills the three-row game: it can never equalize
            # two rows that already diverged.
            if any(pair_dead.values()):
                dead.append(game)
    return SessionView(
        played=played,
        top=words[Row.TOP],
        middle=words[Row.MIDDLE],
        bottom=words[Row.BOTTOM],
        common_prefix_len=_common_prefix_len(words[Row.TOP], words[Row.MIDDLE], words[Row.BOTTOM]),
        won_games=tuple(won),
        dead_games=tuple(dead),
    )


def view_to_obj(view: SessionView) -> dict:
    return {
        "played": list(view.played),
        "top": view.top,
        "middle": view.middle,
        "bottom": view.bottom,
        "commonPrefixLen": view.common_prefix_len,
        "wonGames": [g.code for g in view.won_games],
        "deadGames": [g.code for g in view.dead_games],
    }


class _Session:
    def __init__(self, sid: str, system: TriSystem, now: float):
        self.id = sid
        self.system = system
        self.played: list[int] = []
        self.lock = threading.Lock()
        self.last_used = now


class SessionStore:
    """In-memory sessions with idle expiry and a per-session move cap."""

    def __init__(
        self,
        *,
        ttl: float = 3600.0,
        move_limit: int = 10_000,
        bounds: SearchBounds = DEFAULT_BOUNDS,
        clock=time.monotonic,
    ):
        self._ttl = ttl
        self._move_limit = move_limit
        self._bounds = bounds
        self._clock = clock
        self._lock = threading.Lock()
        self._sessions: dict[str, _Session] = {}
        self._ids = itertools.count(1)

    def _purge(self, now: float) -> None:
        stale = [sid for sid, s in self._sessions.items() if now - s.last_used > self._ttl]
        for sid in stale:
            del self._sessions[sid]

    def _get(self, sid: str) -> _Session:
        now = self._clock()
        with self._lock:
            self._purge(now)
            session = self._sessions.get(sid)
            if session is None:
                raise UnknownSession(f"unknown session {sid!r}")
            session.last_used = now
            return session

    def create(self, system: TriSystem) -> tuple[str, SessionView]:
        ensure_valid(system)
        now = self._clock()
        with self._lock:
            self._purge(now)
            sid = f"s{next(self._ids)}"
            self._sessions[sid] = _Session(sid, system, now)
        return sid, compute_view(system, ())

    def view(self, sid: str) -> SessionView:
        session = self._get(sid)
        with session.lock:
            return compute_view(session.system, tuple(session.played))

    def play(self, sid: str, index: int) -> SessionView:
        session = self._get(sid)
        with session.lock:
            if not 1 <= index <= session.system.n:
                raise IndexOutOfRange(f"index {index} out of range 1..{session.system.n}")
            if len(session.played) >= self._move_limit:
                raise MoveLimitExceeded(f"session move limit {self._move_limit} reached")
            session.played.append(index)
            return compute_view(session.system, tuple(session.played))

    def undo(self, sid: str) -> SessionView:
        session = self._get(sid)
        with session.lock:
            if not session.played:
                raise NothingToUndo("no moves to undo")
            session.played.pop()
            return compute_view(session.system, tuple(session.played))

    def hint(self, sid: str, game: Game) -> int | None:
        """First index of a shortest winning completion, if the bounded
        search can find one from the current position."""
        session = self._get(sid)
        with session.lock:
            system = session.system
            played = tuple(session.played)
        if game.is_pair:
            pair_system = project(system, game)
            config = pair_config_after(pair_system, played)
            if config is None:
                return None
            outcome = search_pair(pair_system, self._bounds, start=config)
        else:
            config = tri_config_after(system, played)
            if config is None:
                return None
            outcome = search_triple(system, self._bounds, start=config)
        if isinstance(outcome, Found):
            return outcome.match[0]
        return None

    def instance_obj(self, sid: str) -> dict:
        return instance_to_obj(self._get(sid).system)


def _ok(**fields) -> dict:
    return {"v": PROTOCOL_VERSION, "ok": True, **fields}


def _err(code: str, message: str) -> dict:
    return {"v": PROTOCOL_VERSION, "ok": False, "error": code, "message": message}


def handle_record(store: SessionStore, record: dict) -> dict:
    """Transport-independent dispatch of one protocol request record."""
    try:
        op = record.get("op")
        if op == "create":
            system = parse_instance(record["instance"])
            sid, view = store.create(system)
            return _ok(session=sid, view=view_to_obj(view), instance=instance_to_obj(system))
        if op == "play":
            view = store.play(record["session"], _int_field(record, "index"))
            return _ok(session=record["session"], view=view_to_obj(view))
        if op == "undo":
            view = store.undo(record["session"])
            return _ok(session=record["session"], view=view_to_obj(view))
        if op == "view":
            view = store.view(record["session"])
            return _ok(session=record["session"], view=view_to_obj(view))
        if op == "hint":
            game = Game.from_code(record.get("game", ""))
            hint = store.hint(record["session"], game)
            return _ok(session=record["session"], hint=hint)
        return _err("unknown-op", f"unknown op {op!r}")
    except KeyError as e:
        return _err("bad-record", f"missing field {e.args[0]!r}")
    except InstanceFormatError as e:
        return _err("parse-error", str(e))
    except UnknownSession as e:
        return _err("unknown-session", str(e))
    except IndexOutOfRange as e:
        return _err("index-out-of-range", str(e))
    except NothingToUndo as e:
        return _err("nothing-to-undo", str(e))
    except MoveLimitExceeded as e:
        return _err("move-limit", str(e))
    except ValueError as e:
        return _err("bad-request", str(e))
    except TriPcsError as e:
        return _err("invalid-system", str(e))


def _int_field(record: dict, name: str) -> int:
    value = record[name]
    if not isinstance(value, int) or isinstance(value, bool):
        raise ValueError(f"field {name!r} must be an integer")
    return value


class _RecordHandler(socketserver.StreamRequestHandler):
    def handle(self) -> None:
        for raw in self.rfile:
            line = raw.decode("utf-8", errors="replace").strip()
            if not line:
                continue
            try:
                record = json.loads(line)
                if not isinstance(record, dict):
                    raise ValueError("record must be a JSON object")
            except (json.JSONDecodeError, ValueError) as e:
                response = _err("bad-record", str(e))
            else:
                response = handle_record(self.server.store, record)  # type: ignore[attr-defined]
            self.wfile.write((dumps_record(response) + "\n").encode("utf-8"))
            self.wfile.flush()


class SessionServer(socketserver.ThreadingTCPServer):
    allow_reuse_address = True
    daemon_threads = True

    def __init__(self, address: tuple[str, int], store: SessionStore):
        super().__init__(address, _RecordHandler)
        self.store = store


def make_server(host: str, port: int, store: SessionStore | None = None) -> SessionServer:
    return SessionServer((host, port), store or SessionStore())
