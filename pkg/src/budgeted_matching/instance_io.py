"""Line-oriented instance files.

A file starts with a header line and then holds one event per line::

    MODEL vertex K 4 RIGHT 5          # bipartite vertex arrivals, right ids 0..4
    V 5 0 1                           # left vertex 5 arrives adjacent to 0 and 1
    F 5 1                             # optional forced path for the previous V

    MODEL vertex-general K 4          # general graph, edges to earlier vertices
    MODEL edge K 4 VERTICES 6         # edge arrivals over ids 0..5
    E 0 1
    MODEL weighted K 4 RIGHT 3        # complete bipartite, weights may be p/q
    V 3 0:1 1:1/2 2:0
    MODEL loadbalance K 4 SERVERS 3   # client allowed-server lists
    C 0 2

``#`` starts a comment; blank lines are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path as FsPath
from typing import Optional, Union

from .core import ArrivalEvent, EdgeArrival, Path, VertexArrival
from .errors import ParseError

MODELS = ("vertex", "vertex-general", "edge", "weighted", "loadbalance")
_HEADER_KEYS = {"K": "k", "RIGHT": "right", "VERTICES": "vertices", "SERVERS": "servers"}


@dataclass
class Instance:
    model: str
    k: int
    right: Optional[int] = None
    vertices: Optional[int] = None
    servers: Optional[int] = None
    events: list[ArrivalEvent] = field(default_factory=list)
    forced: dict[int, Path] = field(default_factory=dict)  # event index -> path
    clients: list[frozenset[int]] = field(default_factory=list)

    @property
    def right_ids(self) -> list[int]:
        return list(range(self.right or 0))


def _int(tok: str, lineno: int) -> int:
    try:
        val = int(tok)
    except ValueError:
        raise ParseError(f"line {lineno}: expected an integer, got {tok!r}") from None
    if val < 0:
        raise ParseError(f"line {lineno}: ids must be non-negative, got {val}")
    return val


def _weight(tok: str, lineno: int) -> Fraction:
    try:
        w = Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"line {lineno}: bad weight {tok!r}") from None
    if w < 0:
        raise ParseError(f"line {lineno}: negative weight {tok!r}")
    return w


def _parse_header(tokens: list[str], lineno: int) -> Instance:
    if len(tokens) < 2 or tokens[0] != "MODEL":
        raise ParseError(f"line {lineno}: instance must start with a MODEL header")
    model = tokens[1]
    if model not in MODELS:
        raise ParseError(f"line {lineno}: unknown model {model!r}")
    rest = tokens[2:]
    if len(rest) % 2:
        raise ParseError(f"line {lineno}: header keys and values must pair up")
    values: dict[str, int] = {}
    for key, val in zip(rest[::2], rest[1::2]):
        if key not in _HEADER_KEYS:
            raise ParseError(f"line {lineno}: unknown header key {key!r}")
        values[_HEADER_KEYS[key]] = _int(val, lineno)
    if "k" not in values:
        raise ParseError(f"line {lineno}: header needs K")
    need = {"vertex": "right", "weighted": "right", "edge": "vertices", "loadbalance": "servers"}
    if model in need and need[model] not in values:
        raise ParseError(f"line {lineno}: model {model} needs {need[model].upper()}")
    return Instance(model=model, **values)


def parse_instance(text: str) -> Instance:
    inst: Optional[Instance] = None
    last_vertex: Optional[int] = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if inst is None:
            inst = _parse_header(tokens, lineno)
            continue
        tag, args = tokens[0], tokens[1:]
        if tag == "V" and inst.model in ("vertex", "vertex-general", "weighted"):
            if not args:
                raise ParseError(f"line {lineno}: V needs a vertex id")
            v = _int(args[0], lineno)
            nbrs, weights = [], []
            for tok in args[1:]:
                if ":" in tok:
                    a, w = tok.split(":", 1)
                    nbrs.append(_int(a, lineno))
                    weights.append(_weight(w, lineno))
                else:
                    nbrs.append(_int(tok, lineno))
            if weights and len(weights) != len(nbrs):
                raise ParseError(f"line {lineno}: either every neighbor has a weight or none does")
            if inst.model == "weighted" and not weights and nbrs:
                raise ParseError(f"line {lineno}: weighted arrivals need neighbor:weight pairs")
            if len(set(nbrs)) != len(nbrs):
                raise ParseError(f"line {lineno}: repeated neighbor")
            inst.events.append(VertexArrival(v, tuple(nbrs), tuple(weights) if weights else None))
            last_vertex = v
        elif tag == "F" and inst.model == "vertex":
            if last_vertex is None or not inst.events:
                raise ParseError(f"line {lineno}: F must follow a V line")
            idx = len(inst.events) - 1
            if idx in inst.forced:
                raise ParseError(f"line {lineno}: second F for the same arrival")
            inst.forced[idx] = tuple(_int(a, lineno) for a in args)
        elif tag == "E" and inst.model == "edge":
            if len(args) != 2:
                raise ParseError(f"line {lineno}: E needs exactly two endpoints")
            inst.events.append(EdgeArrival(_int(args[0], lineno), _int(args[1], lineno)))
        elif tag == "C" and inst.model == "loadbalance":
            if not args:
                raise ParseError(f"line {lineno}: C needs at least one server")
            inst.clients.append(frozenset(_int(a, lineno) for a in args))
        else:
            raise ParseError(f"line {lineno}: record {tag!r} is not valid for model {inst.model}")
    if inst is None:
        raise ParseError("empty instance: missing MODEL header")
    return inst


def load_instance(path: Union[str, FsPath]) -> Instance:
    return parse_instance(FsPath(path).read_text(encoding="utf-8"))


def format_event(event: ArrivalEvent) -> str:
    if isinstance(event, VertexArrival):
        if event.weights is None:
            parts = [str(n) for n in event.neighbors]
        else:
            parts = [f"{n}:{w}" for n, w in zip(event.neighbors, event.weights)]
        return " ".join(["V", str(event.vertex), *parts])
    if isinstance(event, EdgeArrival):
        return f"E {event.u} {event.v}"
    return "STOP"


def dump_instance(inst: Instance) -> str:
    header = ["MODEL", inst.model, "K", str(inst.k)]
    for attr, key in (("right", "RIGHT"), ("vertices", "VERTICES"), ("servers", "SERVERS")):
        val = getattr(inst, attr)
        if val is not None:
            header += [key, str(val)]
    lines = [" ".join(header)]
    for i, ev in enumerate(inst.events):
        lines.append(format_event(ev))
        if i in inst.forced:
            lines.append(" ".join(["F", *map(str, inst.forced[i])]))
    for c in inst.clients:
        lines.append(" ".join(["C", *map(str, sorted(c))]))
    return "\n".join(lines) + "\n"
