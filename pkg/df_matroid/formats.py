"""
Line-oriented text formats.

Digraph::

    vertices 4
    sinks 2 3
    arc 0 1

Bipartite::

    elements 4
    set A 0 1 2 3

Flats::

    elements 6
    flat 0
    flat 2 0 1 3

``#`` starts a comment; blank lines are ignored.
"""
import hashlib
from typing import Iterable, Iterator, List, Set, Tuple, Union

from .exceptions import DfMatroidValidationError, InputFormatError
from .gammoid import DigraphRep, gammoid_matroid
from .ground import ElementSet, SetSystem
from .lattice import CyclicFlat, CyclicFlatFamily
from .matroids import Matroid, TransversalMatroid, matroid_from_cyclic_flats

DIGRAPH = "digraph"
BIPARTITE = "bipartite"
FLATS = "flats"

Parsed = Union[DigraphRep, SetSystem, CyclicFlatFamily]


def _lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].split()
        if content:
            yield number, content


def _integer(token: str, number: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise InputFormatError(f"expected an integer, got {token!r}", line=number)
    if value < 0:
        raise InputFormatError(f"negative index {value}", line=number)
    return value


def _indices(tokens: List[str], bound: int, number: int) -> List[int]:
    values = [_integer(token, number) for token in tokens]
    for value in values:
        if value >= bound:
            raise InputFormatError(f"index {value} is outside [0, {bound})", line=number)
    if len(set(values)) != len(values):
        raise InputFormatError("repeated index", line=number)
    return values


def _header(lines: List[Tuple[int, List[str]]], keyword: str) -> int:
    if not lines:
        raise InputFormatError(f"missing '{keyword}' line")
    number, tokens = lines[0]
    if tokens[0] != keyword or len(tokens) != 2:
        raise InputFormatError(f"expected '{keyword} <n>'", line=number)
    size = _integer(tokens[1], number)
    try:
        ElementSet.empty(size)
    except DfMatroidValidationError as exc:
        raise InputFormatError(str(exc.detail[0]), line=number)
    return size


def detect_format(text: str) -> str:
    for number, tokens in _lines(text):
        if tokens[0] == "vertices":
            return DIGRAPH
        if tokens[0] == "elements":
            for _number, rest in _lines(text):
                if rest[0] == "flat":
                    return FLATS
            return BIPARTITE
        raise InputFormatError(f"unknown header {tokens[0]!r}", line=number)
    raise InputFormatError("empty input")


def parse_digraph(text: str) -> DigraphRep:
    lines = list(_lines(text))
    n = _header(lines, "vertices")
    sinks = None
    arcs: Set[Tuple[int, int]] = set()
    for number, tokens in lines[1:]:
        keyword, rest = tokens[0], tokens[1:]
        if keyword == "sinks":
            if sinks is not None:
                raise InputFormatError("second 'sinks' line", line=number)
            sinks = _indices(rest, n, number)
        elif keyword == "arc":
            if len(rest) != 2:
                raise InputFormatError("expected 'arc <u> <v>'", line=number)
            tail, head = (_integer(token, number) for token in rest)
            if tail >= n or head >= n:
                raise InputFormatError(f"arc endpoint outside [0, {n})", line=number)
            if tail == head:
                raise InputFormatError(f"self-arc at {tail}", line=number)
            if (tail, head) in arcs:
                raise InputFormatError(f"duplicate arc {tail} {head}", line=number)
            arcs.add((tail, head))
        else:
            raise InputFormatError(f"unknown directive {keyword!r}", line=number)
    if sinks is None:
        raise InputFormatError("missing 'sinks' line")
    return DigraphRep.of(n, arcs, sinks)


def parse_bipartite(text: str) -> SetSystem:
    lines = list(_lines(text))
    n = _header(lines, "elements")
    sets = []
    names = []
    for number, tokens in lines[1:]:
        if tokens[0] != "set" or len(tokens) < 2:
            raise InputFormatError("expected 'set <name> <i> ...'", line=number)
        names.append(tokens[1])
        sets.append(ElementSet.of(n, _indices(tokens[2:], n, number)))
    return SetSystem(n, tuple(sets), tuple(names))


def parse_flats(text: str) -> CyclicFlatFamily:
    lines = list(_lines(text))
    n = _header(lines, "elements")
    records = []
    for number, tokens in lines[1:]:
        if tokens[0] != "flat" or len(tokens) < 2:
            raise InputFormatError("expected 'flat <rank> <i> ...'", line=number)
        rank = _integer(tokens[1], number)
        records.append(CyclicFlat(ElementSet.of(n, _indices(tokens[2:], n, number)), rank))
    return CyclicFlatFamily(n, tuple(records))


def parse(text: str) -> Parsed:
    kind = detect_format(text)
    if kind == DIGRAPH:
        return parse_digraph(text)
    if kind == FLATS:
        return parse_flats(text)
    return parse_bipartite(text)


def _joined(values: Iterable[int]) -> str:
    return " ".join(str(value) for value in values)


def format_digraph(digraph: DigraphRep) -> str:
    lines = [f"vertices {digraph.ground_size}", f"sinks {_joined(digraph.sinks)}".rstrip()]
    lines.extend(f"arc {tail} {head}" for tail, head in digraph.sorted_arcs)
    return "\n".join(lines) + "\n"


def format_bipartite(system: SetSystem) -> str:
    lines = [f"elements {system.ground_size}"]
    lines.extend(
        f"set {name} {_joined(member)}".rstrip()
        for name, member in zip(system.names, system.sets)
    )
    return "\n".join(lines) + "\n"


def format_flats(family: CyclicFlatFamily) -> str:
    lines = [f"elements {family.ground_size}"]
    lines.extend(
        f"flat {record.rank} {_joined(record.flat)}".rstrip() for record in family
    )
    return "\n".join(lines) + "\n"


def format_any(parsed: Parsed) -> str:
    if isinstance(parsed, DigraphRep):
        return format_digraph(parsed)
    if isinstance(parsed, SetSystem):
        return format_bipartite(parsed)
    return format_flats(parsed)


def input_digest(parsed: Parsed) -> str:
    """SHA-256 of the canonical text of ``parsed``."""
    return hashlib.sha256(format_any(parsed).encode("utf-8")).hexdigest()


def matroid_of(parsed: Parsed) -> Matroid:
    if isinstance(parsed, DigraphRep):
        return gammoid_matroid(parsed)
    if isinstance(parsed, SetSystem):
        return TransversalMatroid(parsed)
    return matroid_from_cyclic_flats(parsed)
