"""
Set-cover reductions and their converters

* sc_to_mcng: a set system becomes a genome made of one block per set,
  a separator s_S followed by one e_u per element u of S, and a CNP asking
  for exactly one copy of every e_u to disappear.
* exact covers become deletion sequences and event sequences become covers
  (deletions only, or with duplications through unimportant positions).
* mcq_to_scec: multicolored clique instances become set cover instances in
  which every cover of size at most k' is exact.

Brute-force oracles (minimum cover, multicolored clique, promise check) carry
explicit size guards and fail loudly rather than truncate.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from .config import CnpkitConfig, load_config
from .errors import (
    HasDuplication,
    ImproperColoring,
    InternalInvariantViolation,
    NotACover,
    NotASolution,
    NotExactCover,
    ReductionError,
    SetTooLarge,
    TooLarge,
    TooManySets,
    UncoveredElement,
)
from .genome_core import (
    Alphabet,
    Cnp,
    Deletion,
    Duplication,
    Event,
    EventSequence,
    Genome,
    apply_sequence,
    cnp_of,
    surviving_origins,
    with_origins,
)
from .mcng_solver import McngInstance

logger = logging.getLogger(__name__)

SEPARATOR_PREFIX = 's_'
ELEMENT_PREFIX = 'e_'


@dataclass(frozen=True)
class SetSystem:
    """Universe of named elements and an ordered collection of named subsets"""

    universe: Tuple[str, ...]
    sets: Tuple[Tuple[str, Tuple[int, ...]], ...]

    def __post_init__(self):
        universe = tuple(str(u) for u in self.universe)
        if len(set(universe)) != len(universe):
            raise ValueError("universe element names must be distinct")

        normalized = []
        names = set()
        for name, members in self.sets:
            name = str(name)
            if name in names:
                raise ValueError(f"duplicate set name {name!r}")
            names.add(name)
            members = tuple(members)
            if not members:
                raise ValueError(f"set {name!r} is empty")
            if len(set(members)) != len(members):
                raise ValueError(f"set {name!r} lists an element twice")
            for u in members:
                if not 0 <= u < len(universe):
                    raise ValueError(f"set {name!r} refers to unknown element index {u}")
            normalized.append((name, tuple(sorted(members))))

        object.__setattr__(self, 'universe', universe)
        object.__setattr__(self, 'sets', tuple(normalized))

    @classmethod
    def from_named(cls, universe: Sequence[str], sets: Dict[str, Iterable[str]]) -> 'SetSystem':
        position = {str(u): i for i, u in enumerate(universe)}
        built = []
        for name, members in sets.items():
            indices = []
            for u in members:
                if str(u) not in position:
                    raise ValueError(f"set {name!r} contains {u!r}, which is not in the universe")
                indices.append(position[str(u)])
            built.append((name, tuple(indices)))
        return cls(tuple(universe), tuple(built))

    @property
    def names(self) -> List[str]:
        return [name for name, _ in self.sets]

    def members(self, index: int) -> Tuple[int, ...]:
        return self.sets[index][1]

    def element_names(self, index: int) -> List[str]:
        return [self.universe[u] for u in self.members(index)]

    def masks(self) -> List[int]:
        return [sum(1 << u for u in members) for _, members in self.sets]

    @property
    def full_mask(self) -> int:
        return (1 << len(self.universe)) - 1

    def frequency(self) -> List[int]:
        """f(u): number of sets containing each element"""
        counts = [0] * len(self.universe)
        for _, members in self.sets:
            for u in members:
                counts[u] += 1
        return counts

    def uncovered(self) -> List[int]:
        return [u for u, f in enumerate(self.frequency()) if f == 0]


@dataclass(frozen=True)
class Cover:
    """Chosen set indices, kept sorted and distinct"""

    chosen: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'chosen', tuple(sorted(set(self.chosen))))

    def __len__(self) -> int:
        return len(self.chosen)

    def names(self, system: SetSystem) -> List[str]:
        return [system.sets[i][0] for i in self.chosen]


@dataclass(frozen=True)
class ColoredGraph:
    """Properly k-colored simple graph"""

    vertices: Tuple[str, ...]
    k: int
    color: Dict[str, int]
    edges: Tuple[Tuple[str, str], ...]
    graph: nx.Graph = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        vertices = tuple(str(v) for v in self.vertices)
        if len(set(vertices)) != len(vertices):
            raise ImproperColoring("vertex names must be distinct")
        for v in vertices:
            c = self.color.get(v)
            if not isinstance(c, int) or not 1 <= c <= self.k:
                raise ImproperColoring(f"vertex {v!r} has color {c!r}, expected 1..{self.k}")

        graph = nx.Graph()
        graph.add_nodes_from(vertices)
        edges = []
        for u, v in self.edges:
            u, v = str(u), str(v)
            if u not in graph or v not in graph:
                raise ImproperColoring(f"edge {u}-{v} uses an unknown vertex")
            if u == v:
                raise ImproperColoring(f"self loop on {u!r}")
            if self.color[u] == self.color[v]:
                raise ImproperColoring(f"edge {u}-{v} joins two vertices of color {self.color[u]}")
            if not graph.has_edge(u, v):
                graph.add_edge(u, v)
                edges.append((u, v))

        object.__setattr__(self, 'vertices', vertices)
        object.__setattr__(self, 'edges', tuple(edges))
        object.__setattr__(self, 'graph', graph)

    @classmethod
    def from_colors(cls, k: int, colors: Dict[str, int],
                    edges: Iterable[Tuple[str, str]]) -> 'ColoredGraph':
        return cls(tuple(colors), k, dict(colors), tuple(tuple(e) for e in edges))

    def color_class(self, i: int) -> List[str]:
        return [v for v in self.vertices if self.color[v] == i]

    def oriented_edges(self, i: int, j: int) -> List[Tuple[str, str]]:
        """E_ij as (u, v) pairs with u of color i and v of color j, in edge order"""
        found = []
        for u, v in self.edges:
            if self.color[u] == i and self.color[v] == j:
                found.append((u, v))
            elif self.color[u] == j and self.color[v] == i:
                found.append((v, u))
        return found


@dataclass(frozen=True)
class ScEcInstance:
    system: SetSystem
    k_prime: int


@dataclass(frozen=True)
class Block:
    """Layout of one set in the reduced genome (1-based positions)"""

    set_index: int
    separator: int
    start: int
    end: int


def k_prime(k: int) -> int:
    return k + k * (k - 1) // 2


# SET-COVER -> MCNG

def separator_symbol(name: str) -> str:
    return SEPARATOR_PREFIX + name


def element_symbol(name: str) -> str:
    return ELEMENT_PREFIX + name


def block_layout(system: SetSystem) -> List[Block]:
    blocks = []
    position = 1
    for index, (_, members) in enumerate(system.sets):
        blocks.append(Block(index, position, position + 1, position + len(members)))
        position += len(members) + 1
    return blocks


def pred_separator(system: SetSystem, position: int) -> int:
    """Index of the set whose separator is the nearest one strictly left of `position`"""
    owner = None
    for block in block_layout(system):
        if block.separator < position:
            owner = block.set_index
        else:
            break
    if owner is None:
        raise ValueError(f"no separator to the left of position {position}")
    return owner


def sc_to_mcng(system: SetSystem) -> McngInstance:
    uncovered = system.uncovered()
    if uncovered:
        names = ', '.join(system.universe[u] for u in uncovered)
        raise UncoveredElement(f"elements not contained in any set: {names}")

    n_sets = len(system.sets)
    alphabet = Alphabet(
        tuple(separator_symbol(name) for name in system.names)
        + tuple(element_symbol(u) for u in system.universe))

    seq: List[int] = []
    for index, (_, members) in enumerate(system.sets):
        seq.append(index)
        seq.extend(n_sets + u for u in members)

    counts = [1] * n_sets + [f - 1 for f in system.frequency()]
    return McngInstance(Genome(alphabet, tuple(seq)), Cnp(alphabet, tuple(counts)))


def _why_not_exact(system: SetSystem, cover: Cover) -> Optional[str]:
    seen: Dict[int, int] = {}
    for index in cover.chosen:
        if not 0 <= index < len(system.sets):
            return f"set index {index} does not exist"
        for u in system.members(index):
            if u in seen:
                return (f"element {system.universe[u]} is covered by both "
                        f"{system.sets[seen[u]][0]} and {system.sets[index][0]}")
            seen[u] = index
    missing = [system.universe[u] for u in range(len(system.universe)) if u not in seen]
    if missing:
        return f"elements not covered: {', '.join(missing)}"
    return None


def is_exact_cover(system: SetSystem, cover: Cover) -> bool:
    return _why_not_exact(system, cover) is None


def is_cover(system: SetSystem, cover: Cover) -> bool:
    if any(not 0 <= i < len(system.sets) for i in cover.chosen):
        return False
    masks = system.masks()
    union = 0
    for i in cover.chosen:
        union |= masks[i]
    return union == system.full_mask


def exact_cover_deletions(system: SetSystem, cover: Cover) -> EventSequence:
    """One deletion per chosen block q(S), right to left so indices stay valid"""
    reason = _why_not_exact(system, cover)
    if reason is not None:
        raise NotExactCover(reason)
    blocks = block_layout(system)
    chosen = sorted((blocks[i] for i in cover.chosen), key=lambda b: b.start, reverse=True)
    return tuple(Deletion(b.start, b.end) for b in chosen)


def _check_instance(instance: McngInstance, system: SetSystem) -> None:
    if instance != sc_to_mcng(system):
        raise ReductionError("the instance was not built from this set system")


def _check_solution(instance: McngInstance, events: Sequence[Event]) -> None:
    result = apply_sequence(instance.genome, events)
    if cnp_of(result) != instance.target:
        raise NotASolution(
            f"the events reach CNP {cnp_of(result)} instead of {instance.target}")


def _assert_cover(system: SetSystem, cover: Cover, events: Sequence[Event], lemma: str) -> Cover:
    if not is_cover(system, cover):
        raise InternalInvariantViolation(f"{lemma}: extracted sets {cover.names(system)} do not cover")
    if len(cover) > len(events):
        raise InternalInvariantViolation(
            f"{lemma}: extracted {len(cover)} sets from only {len(events)} events")
    return cover


def extract_cover_deletions(instance: McngInstance, system: SetSystem,
                            events: Sequence[Event]) -> Cover:
    """Sets whose block loses at least one character to some deletion"""
    if any(isinstance(e, Duplication) for e in events):
        raise HasDuplication("deletion-based extraction needs a deletions-only sequence")
    _check_instance(instance, system)
    _check_solution(instance, events)

    tagged = with_origins(instance.genome).seq
    affected = set()
    for event in events:
        removed = tagged[event.i - 1:event.j]
        affected.add(pred_separator(system, min(origin for _, origin in removed)))
        tagged = tagged[:event.i - 1] + tagged[event.j:]

    return _assert_cover(system, Cover(tuple(affected)), events, "deletion extraction")


def extract_cover_general(instance: McngInstance, system: SetSystem,
                          events: Sequence[Event]) -> Cover:
    """Sets owning, for each element, its leftmost occurrence without a descendant"""
    _check_instance(instance, system)
    _check_solution(instance, events)

    survivors = surviving_origins(instance.genome, events)
    n_sets = len(system.sets)
    chosen = set()
    for u, name in enumerate(system.universe):
        position = next(
            (p for p, x in enumerate(instance.genome.seq, start=1)
             if x == n_sets + u and p not in survivors),
            None)
        if position is None:
            raise InternalInvariantViolation(
                f"every occurrence of e_{name} is important, which cannot happen for a solution")
        chosen.add(pred_separator(system, position))

    return _assert_cover(system, Cover(tuple(chosen)), events, "general extraction")


# Instance transforms

def subset_closure(system: SetSystem, t: int, config: Optional[CnpkitConfig] = None) -> SetSystem:
    """Every non-empty subset of every set, first occurrence kept"""
    config = config or load_config()
    if t > config.closure_guard:
        raise SetTooLarge(f"t = {t} exceeds {config.closure_guard}", limit=config.closure_guard)
    for name, members in system.sets:
        if len(members) > t:
            raise SetTooLarge(f"set {name} has {len(members)} elements, more than t = {t}", limit=t)

    seen = set()
    closed = []
    for _, members in system.sets:
        for size in range(1, len(members) + 1):
            for subset in combinations(members, size):
                if subset in seen:
                    continue
                seen.add(subset)
                label = '{' + ','.join(system.universe[u] for u in subset) + '}'
                closed.append((label, subset))
    logger.debug(f"subset_closure: {len(system.sets)} sets -> {len(closed)} sets")
    return SetSystem(system.universe, tuple(closed))


def disjointify(system: SetSystem, cover: Cover) -> List[Tuple[int, ...]]:
    """S1, S2 - S1, S3 - (S1 U S2), ... with empty residuals dropped

    The chain follows increasing set index, since covers keep their indices sorted.
    """
    if not is_cover(system, cover):
        raise NotACover(f"sets {cover.names(system)} do not cover the universe")
    covered = set()
    parts = []
    for index in cover.chosen:
        residual = tuple(u for u in system.members(index) if u not in covered)
        covered.update(residual)
        if residual:
            parts.append(residual)
    return parts


def cover_from_parts(system: SetSystem, parts: Iterable[Sequence[int]]) -> Cover:
    """Cover made of the sets whose members are exactly the given parts"""
    by_members = {}
    for index, (_, members) in enumerate(system.sets):
        by_members.setdefault(frozenset(members), index)
    chosen = []
    for part in parts:
        index = by_members.get(frozenset(part))
        if index is None:
            names = ','.join(system.universe[u] for u in sorted(part))
            raise NotACover(f"no set equals {{{names}}}")
        chosen.append(index)
    return Cover(tuple(chosen))


# MULTICOLORED-CLIQUE -> SET-COVER-EC

def mcq_to_scec(graph: ColoredGraph) -> ScEcInstance:
    k = graph.k
    if k < 2:
        raise ImproperColoring(f"the construction needs k >= 2, got {k}")

    universe: List[str] = [f"col:{i}" for i in range(1, k + 1)]
    color_pairs = [(i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)]
    universe += [f"pair:{i}:{j}" for i, j in color_pairs]
    arcs_between: Dict[Tuple[int, int], List[Tuple[str, str]]] = {}
    for i, j in color_pairs:
        arcs = []
        for u, v in graph.oriented_edges(i, j):
            arcs += [(u, v), (v, u)]
        arcs_between[(i, j)] = arcs
        universe += [f"arc:{x}:{y}" for x, y in arcs]

    sets: Dict[str, List[str]] = {}
    for u in graph.vertices:
        neighbors = [v for v in graph.vertices if graph.graph.has_edge(u, v)]
        sets[f"V:{u}"] = [f"col:{graph.color[u]}"] + [f"arc:{u}:{v}" for v in neighbors]
    for i, j in color_pairs:
        for u, v in graph.oriented_edges(i, j):
            sets[f"E:{u}:{v}"] = [f"pair:{i}:{j}"] + [
                f"arc:{x}:{y}" for x, y in arcs_between[(i, j)] if x not in (u, v)]

    system = SetSystem.from_named(universe, sets)
    logger.info(f"mcq_to_scec: k={k}, |U|={len(system.universe)}, {len(system.sets)} sets")
    return ScEcInstance(system, k_prime(k))


# Oracles

def _guard_sets(system: SetSystem, config: CnpkitConfig) -> None:
    if len(system.sets) > config.max_cover_sets:
        raise TooManySets(
            f"{len(system.sets)} sets exceed the exhaustive limit of {config.max_cover_sets}",
            limit=config.max_cover_sets)


def _covers_of_size(masks: List[int], full: int, size: int) -> Iterator[Tuple[int, ...]]:
    """Covers with exactly `size` sets, in lexicographic order of indices"""
    n = len(masks)
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] | masks[i]

    chosen: List[int] = []

    def walk(start: int, union: int) -> Iterator[Tuple[int, ...]]:
        if len(chosen) == size:
            if union == full:
                yield tuple(chosen)
            return
        need = size - len(chosen)
        for i in range(start, n - need + 1):
            if union | suffix[i] != full:
                break
            chosen.append(i)
            yield from walk(i + 1, union | masks[i])
            chosen.pop()

    yield from walk(0, 0)


def enumerate_covers(system: SetSystem, k_max: int,
                     config: Optional[CnpkitConfig] = None) -> Iterator[Cover]:
    """Every cover with at most k_max sets, by size then lexicographically"""
    config = config or load_config()
    _guard_sets(system, config)
    masks = system.masks()
    for size in range(min(k_max, len(masks)) + 1):
        for chosen in _covers_of_size(masks, system.full_mask, size):
            yield Cover(chosen)


def min_set_cover(system: SetSystem, k_max: int,
                  config: Optional[CnpkitConfig] = None) -> Optional[Cover]:
    for cover in enumerate_covers(system, k_max, config):
        return cover
    return None


def check_scec_promise(instance: ScEcInstance, config: Optional[CnpkitConfig] = None) -> bool:
    """True iff every cover of size at most k' is exact"""
    system = instance.system
    masks = system.masks()
    width = len(system.universe)
    for cover in enumerate_covers(system, instance.k_prime, config):
        if sum(bin(masks[i]).count('1') for i in cover.chosen) != width:
            logger.debug(f"promise broken by non-exact cover {cover.names(system)}")
            return False
    return True


def has_multicolored_clique(graph: ColoredGraph,
                            config: Optional[CnpkitConfig] = None) -> Optional[List[str]]:
    """First clique with one vertex per color, in color-class product order"""
    config = config or load_config()
    classes = [graph.color_class(i) for i in range(1, graph.k + 1)]
    combinations_count = 1
    for members in classes:
        combinations_count *= len(members)
    if combinations_count > config.clique_guard:
        raise TooLarge(
            f"{combinations_count} color-class combinations exceed {config.clique_guard}",
            limit=config.clique_guard)

    picked: List[str] = []

    def extend(color: int) -> bool:
        if color == len(classes):
            return True
        for v in classes[color]:
            if all(graph.graph.has_edge(u, v) for u in picked):
                picked.append(v)
                if extend(color + 1):
                    return True
                picked.pop()
        return False

    return list(picked) if extend(0) else None
