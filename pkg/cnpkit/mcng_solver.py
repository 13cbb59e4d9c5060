"""
Exact genome-to-CNP and genome-to-genome distances by exhaustive search

Iterative deepening over event sequences: every sequence of length <= budget
is (implicitly) generated, so a Found answer is a true minimum. Only sound
cuts are used:

  * a symbol the target needs but the current genome lost can never return;
  * surplus somewhere needs a deletion, deficit somewhere needs a duplication,
    so a node with such a bound above its remaining depth is dead;
  * (genome, remaining depth) pairs already proven dead are not re-expanded.

Candidate events are enumerated deletions first, then duplications, each in
lexicographic (i, j, p) order. dup(i, j, i-1) and dup(i, j, j) produce the
same genome; only the p = j form is generated.
"""

import logging
import time
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterator, List, Optional, Set, Tuple

from .config import CnpkitConfig, load_config
from .errors import BudgetTooLarge
from .genome_core import (
    Cnp,
    Deletion,
    Duplication,
    Event,
    EventSequence,
    Genome,
    cnp_of,
    require_same_alphabet,
)


class SearchMode(Enum):
    ALL_EVENTS = "all-events"
    DELETIONS_ONLY = "deletions-only"


class SearchStatus(Enum):
    FOUND = "found"
    INFEASIBLE = "infeasible"
    BUDGET = "budget"


@dataclass(frozen=True)
class McngInstance:
    genome: Genome
    target: Cnp

    def __post_init__(self):
        require_same_alphabet(self.genome, self.target)


@dataclass(frozen=True)
class SearchResult:
    """Outcome of an exact search: Found, Infeasible or ExceedsBudget"""

    status: SearchStatus
    distance: Optional[int] = None
    witness: EventSequence = ()
    budget: Optional[int] = None
    nodes: int = 0

    @classmethod
    def found(cls, witness: List[Event], budget: int, nodes: int) -> 'SearchResult':
        return cls(SearchStatus.FOUND, len(witness), tuple(witness), budget, nodes)

    @classmethod
    def infeasible(cls) -> 'SearchResult':
        return cls(SearchStatus.INFEASIBLE)

    @classmethod
    def exceeds_budget(cls, budget: int, nodes: int) -> 'SearchResult':
        return cls(SearchStatus.BUDGET, budget=budget, nodes=nodes)

    @property
    def is_found(self) -> bool:
        return self.status is SearchStatus.FOUND


@lru_cache(maxsize=64)
def candidate_events(n: int, mode: SearchMode = SearchMode.ALL_EVENTS) -> Tuple[Event, ...]:
    """All events applicable to a genome of length n, in enumeration order"""
    events: List[Event] = [Deletion(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
    if mode is SearchMode.ALL_EVENTS:
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                for p in range(0, i - 1):
                    events.append(Duplication(i, j, p))
                for p in range(j, n + 1):
                    events.append(Duplication(i, j, p))
    return tuple(events)


def _successor(seq: Tuple[int, ...], event: Event) -> Tuple[int, ...]:
    if isinstance(event, Deletion):
        return seq[:event.i - 1] + seq[event.j:]
    return seq[:event.p] + seq[event.i - 1:event.j] + seq[event.p:]


def _counts(seq: Tuple[int, ...], size: int) -> List[int]:
    counts = [0] * size
    for x in seq:
        counts[x] += 1
    return counts


def _windows(seq: Tuple[int, ...], length: int, size: int) -> Iterator[Tuple[int, List[int]]]:
    """(i, symbol counts of seq[i..i+length-1]) for every window start i, 1-based"""
    n = len(seq)
    if length < 1 or length > n:
        return
    window = _counts(seq[:length], size)
    yield 1, window
    for start in range(1, n - length + 1):
        window[seq[start - 1]] -= 1
        window[seq[start + length - 1]] += 1
        yield start + 1, window


def _insertion_points(i: int, j: int, n: int) -> Iterator[int]:
    yield from range(0, i - 1)
    yield from range(j, n + 1)


INFINITY = float('inf')


class _CnpGoal:
    """Reach any genome whose CNP equals the target"""

    def __init__(self, target: Cnp, mode: SearchMode):
        self.target = list(target.counts)
        self.total = sum(self.target)
        self.size = len(self.target)
        self.mode = mode

    def lower_bound(self, seq: Tuple[int, ...]) -> float:
        surplus = deficit = False
        for have, want in zip(_counts(seq, self.size), self.target):
            if have > want:
                surplus = True
            elif have < want:
                if have == 0 or self.mode is SearchMode.DELETIONS_ONLY:
                    return INFINITY
                deficit = True
        return int(surplus) + int(deficit)

    def final_events(self, seq: Tuple[int, ...]) -> Iterator[Event]:
        """Every single event taking `seq` onto the target, in enumeration order"""
        n = len(seq)
        counts = _counts(seq, self.size)
        excess = n - self.total
        if excess > 0:
            needed = [have - want for have, want in zip(counts, self.target)]
            for i, window in _windows(seq, excess, self.size):
                if window == needed:
                    yield Deletion(i, i + excess - 1)
        elif excess < 0 and self.mode is SearchMode.ALL_EVENTS:
            length = -excess
            needed = [want - have for have, want in zip(counts, self.target)]
            for i, window in _windows(seq, length, self.size):
                if window == needed:
                    j = i + length - 1
                    for p in _insertion_points(i, j, n):
                        yield Duplication(i, j, p)


class _GenomeGoal:
    """Reach exactly the target genome"""

    def __init__(self, target: Genome):
        self.target = target.seq
        self.size = len(target.alphabet)
        self.target_counts = _counts(self.target, self.size)
        self.mode = SearchMode.ALL_EVENTS

    def lower_bound(self, seq: Tuple[int, ...]) -> float:
        surplus = deficit = False
        for have, want in zip(_counts(seq, self.size), self.target_counts):
            if have > want:
                surplus = True
            elif have < want:
                if have == 0:
                    return INFINITY
                deficit = True
        if not surplus and not deficit and seq != self.target:
            # same length, different string: one event always changes the length
            return 2
        return int(surplus) + int(deficit)

    def final_events(self, seq: Tuple[int, ...]) -> Iterator[Event]:
        n = len(seq)
        m = len(self.target)
        if n > m:
            length = n - m
            for i in range(1, n - length + 2):
                if seq[:i - 1] + seq[i + length - 1:] == self.target:
                    yield Deletion(i, i + length - 1)
        elif n < m:
            length = m - n
            for i in range(1, n - length + 2):
                j = i + length - 1
                copy = seq[i - 1:j]
                for p in _insertion_points(i, j, n):
                    if seq[:p] + copy + seq[p:] == self.target:
                        yield Duplication(i, j, p)


class ExhaustiveSolver:
    """Iterative-deepening exact search with a node ceiling"""

    def __init__(self, config: Optional[CnpkitConfig] = None):
        self.config = config or load_config()
        self.logger = logging.getLogger(__name__)
        self.nodes = 0
        self._dead: Set[Tuple[Tuple[int, ...], int]] = set()
        self._goal = None

    def _reset(self, goal) -> None:
        self.nodes = 0
        self._dead = set()
        self._goal = goal

    def _expand(self) -> None:
        self.nodes += 1
        if self.nodes > self.config.node_ceiling:
            raise BudgetTooLarge(
                f"search expanded more than {self.config.node_ceiling} nodes",
                limit=self.config.node_ceiling)

    def _first(self, seq: Tuple[int, ...], remaining: int) -> Optional[List[Event]]:
        """First sequence of exactly `remaining` events from `seq` reaching the goal"""
        key = (seq, remaining)
        if key in self._dead:
            return None
        self._expand()

        bound = self._goal.lower_bound(seq)
        if bound > remaining:
            self._dead.add(key)
            return None
        if remaining == 0:
            return []
        if remaining == 1:
            for event in self._goal.final_events(seq):
                return [event]
            self._dead.add(key)
            return None

        for event in candidate_events(len(seq), self._goal.mode):
            found = self._first(_successor(seq, event), remaining - 1)
            if found is not None:
                return [event] + found

        self._dead.add(key)
        return None

    def _every(self, seq: Tuple[int, ...], remaining: int) -> Iterator[List[Event]]:
        key = (seq, remaining)
        if key in self._dead:
            return
        self._expand()

        if self._goal.lower_bound(seq) > remaining:
            self._dead.add(key)
            return
        if remaining == 0:
            yield []
            return

        produced = False
        if remaining == 1:
            for event in self._goal.final_events(seq):
                produced = True
                yield [event]
        else:
            for event in candidate_events(len(seq), self._goal.mode):
                for tail in self._every(_successor(seq, event), remaining - 1):
                    produced = True
                    yield [event] + tail
        if not produced:
            self._dead.add(key)

    def _deepen(self, start: Tuple[int, ...], budget: int, label: str) -> SearchResult:
        started = time.perf_counter()
        self.logger.info(f"Starting {label} search (length {len(start)}, budget {budget})")
        for depth in range(budget + 1):
            path = self._first(start, depth)
            if path is not None:
                self.logger.info(
                    f"{label}: distance {depth} after {self.nodes} nodes "
                    f"in {time.perf_counter() - started:.3f}s")
                return SearchResult.found(path, budget, self.nodes)
            self.logger.debug(f"{label}: no sequence of length {depth} ({self.nodes} nodes so far)")
        self.logger.info(f"{label}: distance exceeds budget {budget} ({self.nodes} nodes)")
        return SearchResult.exceeds_budget(budget, self.nodes)

    def d_gcnp(self, genome: Genome, target: Cnp, budget: int,
               mode: SearchMode = SearchMode.ALL_EVENTS) -> SearchResult:
        require_same_alphabet(genome, target)
        if budget < 0:
            raise ValueError(f"budget must be non-negative, got {budget}")
        if not feasible(genome, target):
            return SearchResult.infeasible()
        self._reset(_CnpGoal(target, mode))
        return self._deepen(genome.seq, budget, f"d_gcnp[{mode.value}]")

    def d_gg(self, genome: Genome, other: Genome, budget: int) -> SearchResult:
        require_same_alphabet(genome, other)
        if budget < 0:
            raise ValueError(f"budget must be non-negative, got {budget}")
        if not feasible(genome, cnp_of(other)):
            return SearchResult.infeasible()
        self._reset(_GenomeGoal(other))
        return self._deepen(genome.seq, budget, "d_gg")

    def solutions(self, genome: Genome, target: Cnp, max_length: int,
                  mode: SearchMode = SearchMode.ALL_EVENTS) -> Iterator[EventSequence]:
        """Every valid sequence of at most `max_length` events reaching the target CNP"""
        require_same_alphabet(genome, target)
        if not feasible(genome, target):
            return
        self._reset(_CnpGoal(target, mode))
        for length in range(max_length + 1):
            for path in self._every(genome.seq, length):
                yield tuple(path)


def feasible(genome: Genome, target: Cnp) -> bool:
    """True iff every symbol the target needs occurs in the genome"""
    require_same_alphabet(genome, target)
    have = cnp_of(genome).counts
    return all(want == 0 or count > 0 for count, want in zip(have, target.counts))


def d_gcnp_exact(genome: Genome, target: Cnp, budget: int,
                 mode: SearchMode = SearchMode.ALL_EVENTS,
                 config: Optional[CnpkitConfig] = None) -> SearchResult:
    return ExhaustiveSolver(config).d_gcnp(genome, target, budget, mode)


def d_gg_exact(genome: Genome, other: Genome, budget: int,
               config: Optional[CnpkitConfig] = None) -> SearchResult:
    return ExhaustiveSolver(config).d_gg(genome, other, budget)


def enumerate_solutions(genome: Genome, target: Cnp, max_length: int,
                        mode: SearchMode = SearchMode.ALL_EVENTS,
                        config: Optional[CnpkitConfig] = None) -> Iterator[EventSequence]:
    return ExhaustiveSolver(config).solutions(genome, target, max_length, mode)
