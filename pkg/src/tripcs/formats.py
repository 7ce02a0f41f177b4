"""The plain-text instance format.

Grammar, one item per line, `#` starts a comment, blank lines ignored:

    alphabet: <letters>
    dominoes:
    <top> | <middle> | <bottom>     (one line per domino)

Whitespace around tokens is ignored.  `serialize_instance` emits the
canonical rendering; `parse_instance(serialize_instance(s)) == s` for every
valid system.
"""

from __future__ import annotations

from .core import Domino, TriPcsError, TriSystem, validate


class InstanceFormatError(TriPcsError):
    """Syntax or validation failure, with the offending line when known."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"{message} (line {line})")
        self.line = line


def parse_instance(text: str) -> TriSystem:
    alphabet: str | None = None
    saw_header = False
    dominoes: list[Domino] = []

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if alphabet is None:
            if not line.startswith("alphabet:"):
                raise InstanceFormatError("expected 'alphabet: <letters>'", lineno)
            alphabet = line[len("alphabet:"):].strip()
            if not alphabet:
                raise InstanceFormatError("alphabet must not be empty", lineno)
            continue
        if not saw_header:
            if line != "dominoes:":
                raise InstanceFormatError("expected 'dominoes:'", lineno)
            saw_header = True
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 3:
            raise InstanceFormatError("expected 'top | middle | bottom'", lineno)
        for row_name, word in zip(("top", "middle", "bottom"), parts):
            if word == "":
                raise InstanceFormatError(f"empty word in {row_name}", lineno)
            for ch in word:
                if ch not in alphabet:
                    raise InstanceFormatError(
                        f"letter not in alphabet: {ch!r} in {row_name}", lineno
                    )
        dominoes.append(Domino(*parts))

    if alphabet is None:
        raise InstanceFormatError("missing 'alphabet:' line")
    if not saw_header:
        raise InstanceFormatError("missing 'dominoes:' line")
    if not dominoes:
        raise InstanceFormatError("n >= 1 required: no domino lines")

    system = TriSystem(alphabet, tuple(dominoes))
    violations = validate(system)  # alphabet-level rules (duplicates, printability)
    if violations:
        raise InstanceFormatError("; ".join(violations))
    return system


def serialize_instance(system: TriSystem) -> str:
    lines = [f"alphabet: {system.alphabet}", "dominoes:"]
    lines.extend(f"{d.top} | {d.middle} | {d.bottom}" for d in system.dominoes)
    return "\n".join(lines) + "\n"


def instance_to_obj(system: TriSystem) -> dict:
    """Structured form used inside records: alphabet plus domino triples."""
    return {
        "alphabet": system.alphabet,
        "dominoes": [[d.top, d.middle, d.bottom] for d in system.dominoes],
    }


def instance_from_obj(obj: dict) -> TriSystem:
    return TriSystem.from_rows(obj["alphabet"], [tuple(row) for row in obj["dominoes"]])
