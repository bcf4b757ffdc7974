"""Text formats for zigzags.

Interval format::

    field 2
    cell u 0 1 9
    cell e 1 5 5 u:-1 v:1

Event format::

    field 2
    add u 0
    add e 1 u:-1 v:1
    del e
    pad
    addsimplex a b c      # an oriented simplex and its alternating boundary
    delsimplex a b c

``#`` starts a comment.  An optional ``n <int>`` line in interval files
fixes the number of spaces when it exceeds ``max tmax + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional, Tuple, Union

from .algebra import is_prime
from .model import Add, CellRecord, Del, DeltaComplex, Event, Pad, TimeInterval, id_key, ingest_events, simplex_add, simplex_del


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Parsed:
    complex: DeltaComplex
    p: Optional[int]
    format: str


def _lines(text: str) -> Iterable[Tuple[int, List[str]]]:
    for k, raw in enumerate(text.splitlines(), 1):
        words = raw.split("#", 1)[0].split()
        if words:
            yield k, words


def _int(word: str, k: int, what: str) -> int:
    try:
        return int(word)
    except ValueError:
        raise ParseError(k, f"{what} must be an integer, got {word!r}") from None


def _faces(words: List[str], k: int) -> Tuple[Tuple[str, int], ...]:
    out = []
    for w in words:
        face, sep, coeff = w.rpartition(":")
        if not sep or not face:
            raise ParseError(k, f"face term {w!r} is not <face>:<coeff>")
        out.append((face, _int(coeff, k, "coefficient")))
    return tuple(out)


def _field(words: List[str], k: int) -> int:
    if len(words) != 2:
        raise ParseError(k, "expected 'field <p>'")
    p = _int(words[1], k, "field")
    if not is_prime(p):
        raise ParseError(k, f"field size {p} is not prime")
    return p


def detect_format(text: str) -> str:
    for _, words in _lines(text):
        if words[0] in ("field", "n"):
            continue
        return "interval" if words[0] == "cell" else "events"
    return "interval"


def parse_interval(text: str) -> Parsed:
    p = None
    n = None
    cells: List[CellRecord] = []
    for k, words in _lines(text):
        head = words[0]
        if head == "field":
            p = _field(words, k)
        elif head == "n":
            if len(words) != 2:
                raise ParseError(k, "expected 'n <int>'")
            n = _int(words[1], k, "n")
        elif head == "cell":
            if len(words) < 5:
                raise ParseError(k, "expected 'cell <id> <dim> <tmin> <tmax> <face>:<coeff> ...'")
            dim = _int(words[2], k, "dim")
            tmin = _int(words[3], k, "tmin")
            tmax = _int(words[4], k, "tmax")
            cells.append(CellRecord(words[1], dim, _faces(words[5:], k), TimeInterval(tmin, tmax)))
        else:
            raise ParseError(k, f"unknown keyword {head!r}")
    c = DeltaComplex.from_cells(cells)
    if n is not None:
        if n < c.n:
            raise ParseError(0, f"n = {n} is below max tmax + 1 = {c.n}")
        c = DeltaComplex.from_cells(cells, n)
    return Parsed(c, p, "interval")


def parse_events_list(text: str) -> Tuple[List[Event], Optional[int]]:
    p = None
    events: List[Event] = []
    for k, words in _lines(text):
        head = words[0]
        if head == "field":
            p = _field(words, k)
        elif head == "add":
            if len(words) < 3:
                raise ParseError(k, "expected 'add <id> <dim> <face>:<coeff> ...'")
            events.append(Add(words[1], _int(words[2], k, "dim"), _faces(words[3:], k)))
        elif head == "del":
            if len(words) != 2:
                raise ParseError(k, "expected 'del <id>'")
            events.append(Del(words[1]))
        elif head == "pad":
            if len(words) != 1:
                raise ParseError(k, "'pad' takes no arguments")
            events.append(Pad())
        elif head in ("addsimplex", "delsimplex"):
            if len(words) < 2:
                raise ParseError(k, f"expected '{head} <vertex> ...'")
            verts = words[1:]
            if len(set(verts)) != len(verts):
                raise ParseError(k, "repeated vertex in simplex")
            events.append(simplex_add(verts) if head == "addsimplex" else simplex_del(verts))
        else:
            raise ParseError(k, f"unknown keyword {head!r}")
    return events, p


def parse_events(text: str) -> Parsed:
    events, p = parse_events_list(text)
    try:
        c = ingest_events(events)
    except ValueError as exc:
        raise ParseError(0, str(exc)) from None
    return Parsed(c, p, "events")


def parse(text: str, fmt: str = "auto") -> Parsed:
    if fmt == "auto":
        fmt = detect_format(text)
    if fmt == "interval":
        return parse_interval(text)
    if fmt == "events":
        return parse_events(text)
    raise ValueError(f"unknown format {fmt!r}")


def read(path: Union[str, Path], fmt: str = "auto") -> Parsed:
    return parse(Path(path).read_text(), fmt)


def format_interval(c: DeltaComplex, p: Optional[int] = None) -> str:
    out = []
    if p is not None:
        out.append(f"field {p}")
    if c.n != max((rec.tmax for rec in c), default=0) + 1:
        out.append(f"n {c.n}")
    for rec in c:
        faces = "".join(f" {face}:{coeff}" for face, coeff in rec.boundary)
        out.append(f"cell {rec.id} {rec.dim} {rec.tmin} {rec.tmax}{faces}")
    return "\n".join(out) + "\n"


def format_events(events: Iterable[Event], p: Optional[int] = None) -> str:
    out = [f"field {p}"] if p is not None else []
    for ev in events:
        if isinstance(ev, Add):
            out.append(f"add {ev.id} {ev.dim}" + "".join(f" {f}:{a}" for f, a in ev.boundary))
        elif isinstance(ev, Del):
            out.append(f"del {ev.id}")
        else:
            out.append("pad")
    return "\n".join(out) + "\n"


def to_events(c: DeltaComplex) -> List[Event]:
    """An event stream whose replay gives back a complex with the same
    spaces, in order, up to repeated spaces."""
    steps = []
    for rec in c:
        steps.append((rec.tmin, 0, c.position(rec.id), Add(rec.id, rec.dim, rec.boundary)))
        steps.append((rec.tmax, 1, -c.position(rec.id), Del(rec.id)))
    steps.sort(key=lambda s: s[:3])
    return [s[3] for s in steps]
