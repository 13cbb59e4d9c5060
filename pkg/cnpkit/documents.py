"""
JSON documents for genomes, CNPs, events, set systems and graphs

Every command-line argument naming a document may be a file path, inline
JSON, or a shorthand: a genome string over one-character symbols ("abba") or
comma-separated CNP counts ("2,4,3").
"""

import json
import os
from typing import Any, Dict, List, Optional, Sequence

from .errors import CnpkitError, DocumentError
from .genome_core import Alphabet, Cnp, Deletion, Duplication, Event, Genome
from .mcng_solver import McngInstance, SearchResult, SearchStatus
from .reductions import ColoredGraph, ScEcInstance, SetSystem


def dumps(doc: Any) -> str:
    """Byte-stable JSON text; keys keep the order documents are built in"""
    return json.dumps(doc, separators=(',', ':'), ensure_ascii=False)


def parse_json(text: str, source: str = '<inline>') -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"malformed JSON in {source}: {e.msg}", line=e.lineno, column=e.colno)


def _looks_like_json(text: str) -> bool:
    return text.lstrip()[:1] in ('{', '[')


def read_argument(arg: str) -> Any:
    """JSON value from a file path or an inline JSON string; None when it is neither"""
    if _looks_like_json(arg):
        return parse_json(arg)
    if os.path.isfile(arg):
        with open(arg, 'r', encoding='utf-8') as f:
            return parse_json(f.read(), source=arg)
    return None


def _require(doc: Any, key: str, kind: type, what: str) -> Any:
    if not isinstance(doc, dict) or key not in doc:
        raise DocumentError(f"{what} document needs a {key!r} field")
    value = doc[key]
    if not isinstance(value, kind):
        raise DocumentError(f"{what} field {key!r} must be a {kind.__name__}")
    return value


def _is_integer(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _convert(what: str, build):
    try:
        return build()
    except DocumentError:
        raise
    except (CnpkitError, ValueError, TypeError) as e:
        raise DocumentError(f"invalid {what}: {e}")


# Genomes and CNPs

def alphabet_from_doc(doc: Any, what: str) -> Alphabet:
    symbols = _require(doc, 'alphabet', list, what)
    return _convert(what, lambda: Alphabet(tuple(symbols)))


def genome_from_doc(doc: Any) -> Genome:
    alphabet = alphabet_from_doc(doc, 'genome')
    seq = _require(doc, 'seq', list, 'genome')
    return _convert('genome', lambda: Genome.from_symbols(alphabet, [str(s) for s in seq]))


def genome_to_doc(genome: Genome) -> Dict:
    return {'alphabet': list(genome.alphabet.symbols), 'seq': genome.symbols()}


def cnp_from_doc(doc: Any) -> Cnp:
    alphabet = alphabet_from_doc(doc, 'CNP')
    counts = _require(doc, 'counts', list, 'CNP')
    if not all(_is_integer(c) for c in counts):
        raise DocumentError("CNP counts must be integers")
    return _convert('CNP', lambda: Cnp(alphabet, tuple(counts)))


def cnp_to_doc(cnp: Cnp) -> Dict:
    return {'alphabet': list(cnp.alphabet.symbols), 'counts': list(cnp.counts)}


def parse_genome(arg: str, alphabet: Optional[Alphabet] = None) -> Genome:
    doc = read_argument(arg)
    if doc is not None:
        return genome_from_doc(doc)
    if alphabet is None:
        alphabet = Alphabet.from_text(arg)
    if not alphabet.single_character:
        raise DocumentError("inline genome strings need a one-character alphabet; use JSON")
    return _convert('genome', lambda: Genome.from_string(alphabet, arg))


def parse_genome_pair(first: str, second: str):
    """Two genomes over one alphabet; two shorthands share the union of their characters"""
    if read_argument(first) is None and read_argument(second) is None:
        alphabet = Alphabet.from_text(first, second)
        return parse_genome(first, alphabet), parse_genome(second, alphabet)
    a = parse_genome(first)
    b = parse_genome(second, a.alphabet)
    return a, b


def default_alphabet(size: int) -> Alphabet:
    if size > 26:
        raise DocumentError("shorthand CNPs support at most 26 symbols; use JSON")
    return Alphabet(tuple(chr(ord('a') + i) for i in range(size)))


def parse_cnp(arg: str, alphabet: Optional[Alphabet] = None) -> Cnp:
    doc = read_argument(arg)
    if doc is not None:
        return cnp_from_doc(doc)
    try:
        counts = [int(part) for part in arg.replace('⟨', '').replace('⟩', '').split(',')]
    except ValueError:
        raise DocumentError(f"cannot read {arg!r} as a CNP document or comma-separated counts")
    alphabet = alphabet or default_alphabet(len(counts))
    return _convert('CNP', lambda: Cnp(alphabet, tuple(counts)))


# Events

def _event_field(doc: Dict, key: str, position: int) -> int:
    if key not in doc:
        raise DocumentError(f"event #{position} is missing field {key!r}")
    value = doc[key]
    if not _is_integer(value):
        raise DocumentError(f"event #{position} field {key!r} must be an integer, got {value!r}")
    return value


def event_from_doc(doc: Any, position: int) -> Event:
    if not isinstance(doc, dict):
        raise DocumentError(f"event #{position} must be an object")
    op = doc.get('op')
    if op == 'del':
        return Deletion(_event_field(doc, 'i', position), _event_field(doc, 'j', position))
    if op == 'dup':
        return Duplication(_event_field(doc, 'i', position), _event_field(doc, 'j', position),
                           _event_field(doc, 'p', position))
    raise DocumentError(f"event #{position} has unknown op {op!r}")


def events_from_doc(doc: Any) -> List[Event]:
    if not isinstance(doc, list):
        raise DocumentError("an event list must be a JSON array")
    return [event_from_doc(item, n) for n, item in enumerate(doc)]


def event_to_doc(event: Event) -> Dict:
    if isinstance(event, Deletion):
        return {'op': 'del', 'i': event.i, 'j': event.j}
    return {'op': 'dup', 'i': event.i, 'j': event.j, 'p': event.p}


def events_to_doc(events: Sequence[Event]) -> List[Dict]:
    return [event_to_doc(e) for e in events]


def parse_events(arg: str) -> List[Event]:
    doc = read_argument(arg)
    if doc is None:
        raise DocumentError(f"{arg!r} is neither an event file nor inline JSON")
    return events_from_doc(doc)


def search_result_to_doc(result: SearchResult) -> Dict:
    if result.status is SearchStatus.FOUND:
        return {'status': 'found', 'distance': result.distance,
                'witness': events_to_doc(result.witness)}
    return {'status': result.status.value}


def mcng_instance_to_doc(instance: McngInstance) -> Dict:
    return {'genome': genome_to_doc(instance.genome), 'cnp': cnp_to_doc(instance.target)}


# Set systems and graphs

def setsystem_from_doc(doc: Any) -> SetSystem:
    universe = _require(doc, 'universe', list, 'set system')
    sets = _require(doc, 'sets', dict, 'set system')
    for name, members in sets.items():
        if not isinstance(members, list):
            raise DocumentError(f"set {name!r} must be a list of element names")
    return _convert('set system', lambda: SetSystem.from_named(
        [str(u) for u in universe], {name: [str(u) for u in members] for name, members in sets.items()}))


def setsystem_to_doc(system: SetSystem) -> Dict:
    return {'universe': list(system.universe),
            'sets': {name: [system.universe[u] for u in members] for name, members in system.sets}}


def parse_setsystem(arg: str) -> SetSystem:
    doc = read_argument(arg)
    if doc is None:
        raise DocumentError(f"{arg!r} is neither a set system file nor inline JSON")
    return setsystem_from_doc(doc)


def graph_from_doc(doc: Any) -> ColoredGraph:
    k = _require(doc, 'k', int, 'graph')
    colors = _require(doc, 'colors', dict, 'graph')
    edges = doc.get('edges', [])
    if not isinstance(edges, list) or not all(isinstance(e, list) and len(e) == 2 for e in edges):
        raise DocumentError("graph field 'edges' must be a list of vertex pairs")
    return _convert('graph', lambda: ColoredGraph.from_colors(k, dict(colors), [tuple(e) for e in edges]))


def graph_to_doc(graph: ColoredGraph) -> Dict:
    return {'k': graph.k, 'colors': {v: graph.color[v] for v in graph.vertices},
            'edges': [list(e) for e in graph.edges]}


def parse_graph(arg: str) -> ColoredGraph:
    doc = read_argument(arg)
    if doc is None:
        raise DocumentError(f"{arg!r} is neither a graph file nor inline JSON")
    return graph_from_doc(doc)


def scec_to_doc(instance: ScEcInstance) -> Dict:
    return {'system': setsystem_to_doc(instance.system), 'k_prime': instance.k_prime}
