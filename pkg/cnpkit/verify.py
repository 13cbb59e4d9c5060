"""
Property harness for the constructive lemmas

Each check runs a family of small instances (exhaustive where the guards
allow it, seeded random otherwise) and records failures together with a
document that reproduces the failing instance. Budget exhaustion inside a
check is counted as skipped, never as pass or fail.
"""

import logging
import random
import time
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, product
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Tuple

from .cnpc_solver import (
    cnpc_adjacency_count,
    cnpc_brute_force,
    cnpc_solve,
    find_transfer_pair,
    max_common_subvector,
)
from .config import CnpkitConfig, load_config
from .documents import (
    cnp_to_doc,
    events_to_doc,
    genome_to_doc,
    graph_to_doc,
    setsystem_to_doc,
)
from .errors import CnpkitError, GuardError
from .genome_core import (
    Alphabet,
    Cnp,
    Deletion,
    Duplication,
    Event,
    Genome,
    apply_sequence,
    cnp_of,
    remove_symbol,
    replace_position,
    unimportant_positions,
    zero_symbol,
)
from .mcng_solver import SearchMode, d_gcnp_exact, d_gg_exact, enumerate_solutions
from .reductions import (
    ColoredGraph,
    Cover,
    SetSystem,
    check_scec_promise,
    exact_cover_deletions,
    extract_cover_deletions,
    extract_cover_general,
    has_multicolored_clique,
    is_cover,
    mcq_to_scec,
    min_set_cover,
    sc_to_mcng,
    subset_closure,
)

logger = logging.getLogger(__name__)


@dataclass
class Failure:
    instance: Any
    expected: Any
    got: Any

    def to_doc(self) -> Dict:
        return {'instance': self.instance, 'expected': self.expected, 'got': self.got}


@dataclass
class CheckReport:
    name: str
    attempted: int = 0
    failures: List[Failure] = field(default_factory=list)
    skipped: int = 0
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, instance: Any, expected: Any, got: Any) -> None:
        logger.warning(f"{self.name}: expected {expected}, got {got}")
        self.failures.append(Failure(instance, expected, got))

    def skip(self, reason: str) -> None:
        logger.warning(f"{self.name}: skipped instance ({reason})")
        self.skipped += 1

    def to_doc(self, timing: bool = False) -> Dict:
        doc = {
            'check': self.name,
            'passed': self.passed,
            'attempted': self.attempted,
            'skipped': self.skipped,
            'failures': [f.to_doc() for f in self.failures],
        }
        if timing:
            doc['elapsed'] = round(self.elapsed, 3)
        return doc

    def to_text(self, timing: bool = False) -> str:
        status = 'PASS' if self.passed else 'FAIL'
        line = (f"{status} {self.name}: {self.attempted} attempted, "
                f"{len(self.failures)} failed, {self.skipped} skipped")
        if timing:
            line += f" ({self.elapsed:.2f}s)"
        lines = [line]
        for failure in self.failures:
            lines.append(f"  expected {failure.expected}, got {failure.got}: {failure.instance}")
        return '\n'.join(lines)


class _Timer:
    def __init__(self, report: CheckReport):
        self.report = report

    def __enter__(self) -> CheckReport:
        logger.info(f"Starting check {self.report.name}")
        self.started = time.perf_counter()
        return self.report

    def __exit__(self, *exc) -> bool:
        self.report.elapsed = time.perf_counter() - self.started
        logger.info(
            f"Finished check {self.report.name}: {self.report.attempted} attempted, "
            f"{len(self.report.failures)} failed, {self.report.skipped} skipped")
        return False


# Instance generators

def random_planted_system(rng: random.Random, max_elements: int = 6,
                          max_noise: int = 3) -> Tuple[SetSystem, Cover]:
    """Random set system together with an exact cover planted in it"""
    m = rng.randint(0, max_elements)
    elements = list(range(m))
    rng.shuffle(elements)

    planted: List[Tuple[int, ...]] = []
    if m:
        cuts = sorted(rng.sample(range(1, m), rng.randint(0, m - 1)))
        bounds = [0] + cuts + [m]
        planted = [tuple(elements[a:b]) for a, b in zip(bounds, bounds[1:])]

    noise: List[Tuple[int, ...]] = []
    if m:
        for _ in range(rng.randint(0, max_noise)):
            noise.append(tuple(rng.sample(range(m), rng.randint(1, m))))

    tagged = [(members, True) for members in planted] + [(members, False) for members in noise]
    rng.shuffle(tagged)
    sets = tuple((f"S{n}", members) for n, (members, _) in enumerate(tagged, start=1))
    cover = Cover(tuple(n for n, (_, is_planted) in enumerate(tagged) if is_planted))
    return SetSystem(tuple(str(u + 1) for u in range(m)), sets), cover


def small_set_systems(max_sets: int, max_elements: int) -> Iterator[SetSystem]:
    """Every covering system of distinct non-empty sets, up to the given sizes"""
    for m in range(1, max_elements + 1):
        subsets = [c for size in range(1, m + 1) for c in combinations(range(m), size)]
        full = set(range(m))
        for count in range(1, max_sets + 1):
            for chosen in combinations(subsets, count):
                if set().union(*chosen) != full:
                    continue
                yield SetSystem(
                    tuple(str(u + 1) for u in range(m)),
                    tuple((f"S{n}", members) for n, members in enumerate(chosen, start=1)))


def random_event(rng: random.Random, n: int) -> Event:
    i = rng.randint(1, n)
    j = rng.randint(i, n)
    if rng.random() < 0.5:
        return Deletion(i, j)
    return Duplication(i, j, rng.choice(list(range(0, i)) + list(range(j, n + 1))))


def random_events(rng: random.Random, genome: Genome, count: int) -> List[Event]:
    events: List[Event] = []
    current = genome
    for _ in range(count):
        if len(current) == 0:
            break
        event = random_event(rng, len(current))
        events.append(event)
        current = apply_sequence(current, [event])
    return events


def random_colored_graph(rng: random.Random, vertex_max: int, k_max: int) -> ColoredGraph:
    k = rng.randint(2, k_max)
    n = rng.randint(k, max(k, vertex_max))
    colors = {f"v{x}": (x % k) + 1 if x < k else rng.randint(1, k) for x in range(n)}
    density = rng.choice([0.3, 0.5, 0.8])
    names = list(colors)
    edges = [(u, v) for u, v in combinations(names, 2)
             if colors[u] != colors[v] and rng.random() < density]
    return ColoredGraph.from_colors(k, colors, edges)


def fixed_colored_graphs() -> List[ColoredGraph]:
    return [
        ColoredGraph.from_colors(3, {'a': 1, 'b': 2, 'c': 3}, [('a', 'b'), ('b', 'c'), ('a', 'c')]),
        ColoredGraph.from_colors(2, {'u': 1, 'v': 2}, []),
        ColoredGraph.from_colors(2, {'u': 1, 'v': 2}, [('u', 'v')]),
    ]


def cnp_pairs(max_total: int, alphabet_size: int) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """CNP pairs with component sums <= max_total, up to relabelling the alphabet"""
    columns = list(product(range(max_total + 1), repeat=2))
    for chosen in combinations_with_replacement(columns, alphabet_size):
        first = tuple(a for a, _ in chosen)
        second = tuple(b for _, b in chosen)
        if sum(first) <= max_total and sum(second) <= max_total:
            yield first, second


# Checks

def check_lemma2(trials: int = 50, seed: int = 1) -> CheckReport:
    """Planted exact covers become deletion sequences and come back unchanged"""
    rng = random.Random(seed)
    with _Timer(CheckReport('lemma2')) as report:
        for _ in range(trials):
            system, planted = random_planted_system(rng)
            report.attempted += 1
            doc = {'system': setsystem_to_doc(system), 'cover': planted.names(system)}
            try:
                instance = sc_to_mcng(system)
                events = exact_cover_deletions(system, planted)
                reached = cnp_of(apply_sequence(instance.genome, events))
                if len(events) != len(planted) or reached != instance.target:
                    report.fail(doc, f"{len(planted)} deletions reaching {instance.target}",
                                f"{len(events)} deletions reaching {reached}")
                    continue
                extracted = extract_cover_deletions(instance, system, events)
                if extracted != planted:
                    report.fail(doc, planted.names(system), extracted.names(system))
            except CnpkitError as e:
                report.fail(doc, 'no error', str(e))
    return report


def check_extraction(budget: int = 2, max_sets: int = 3, max_elements: int = 4,
                     config: Optional[CnpkitConfig] = None) -> CheckReport:
    """Every short solution of a reduced instance yields a cover no larger than itself"""
    if budget > 2:
        raise ValueError(f"extraction check supports budgets up to 2, got {budget}")
    config = config or load_config()
    with _Timer(CheckReport('extraction')) as report:
        for system in small_set_systems(max_sets, max_elements):
            instance = sc_to_mcng(system)
            try:
                solutions = list(enumerate_solutions(
                    instance.genome, instance.target, budget, SearchMode.ALL_EVENTS, config))
            except GuardError as e:
                report.skip(str(e))
                continue
            for events in solutions:
                report.attempted += 1
                doc = {'system': setsystem_to_doc(system), 'events': events_to_doc(events)}
                _check_one_extraction(report, doc, instance, system, events)
    return report


def _check_one_extraction(report: CheckReport, doc: Dict, instance, system: SetSystem,
                          events) -> None:
    try:
        general = extract_cover_general(instance, system, events)
    except CnpkitError as e:
        report.fail(doc, f"a cover of size <= {len(events)}", str(e))
        return
    if not is_cover(system, general) or len(general) > len(events):
        report.fail(doc, f"a cover of size <= {len(events)}", general.names(system))
        return
    if all(isinstance(e, Deletion) for e in events):
        try:
            by_deletions = extract_cover_deletions(instance, system, events)
        except CnpkitError as e:
            report.fail(doc, f"a cover of size <= {len(events)}", str(e))
            return
        if not is_cover(system, by_deletions) or len(by_deletions) > len(events):
            report.fail(doc, f"a cover of size <= {len(events)}", by_deletions.names(system))


def check_closure(max_sets: int = 2, max_elements: int = 3,
                  config: Optional[CnpkitConfig] = None) -> CheckReport:
    """On subset-closed systems the minimum cover size equals the reduced distance"""
    if max_elements > 3:
        raise ValueError(f"closure check supports universes up to 3 elements, got {max_elements}")
    config = config or load_config()
    with _Timer(CheckReport('closure')) as report:
        for system in small_set_systems(max_sets, max_elements):
            closed = subset_closure(system, max_elements, config)
            report.attempted += 1
            doc = {'system': setsystem_to_doc(closed)}
            try:
                cover = min_set_cover(closed, len(closed.sets), config)
                if cover is None:
                    report.fail(doc, 'a cover', None)
                    continue
                instance = sc_to_mcng(closed)
                result = d_gcnp_exact(instance.genome, instance.target, len(cover),
                                      SearchMode.ALL_EVENTS, config)
            except GuardError as e:
                report.skip(str(e))
                continue
            if not result.is_found or result.distance != len(cover):
                report.fail(doc, len(cover), result.distance if result.is_found else result.status.value)
    return report


def alternating_genomes(n: int, y_length: int = 2,
                        y_symbols: int = 2) -> Iterator[Tuple[Genome, Cnp, bool]]:
    """Y0 x1 Y1 ... xn Yn with |Yi| <= y_length, Yi non-empty for i >= 1"""
    xs = [f"x{i}" for i in range(1, n + 1)]
    ys = [f"y{i}" for i in range(1, y_symbols + 1)]
    alphabet = Alphabet(tuple(xs + ys))
    blocks = [w for size in range(1, y_length + 1) for w in product(ys, repeat=size)]
    target = Cnp(alphabet, tuple([1] * n + [0] * y_symbols))
    for head in [()] + blocks:
        for tail in product(blocks, repeat=n):
            symbols = list(head)
            for x, block in zip(xs, tail):
                symbols.append(x)
                symbols.extend(block)
            yield Genome.from_symbols(alphabet, symbols), target, not head


def check_alternation(n_max: int = 2, config: Optional[CnpkitConfig] = None) -> CheckReport:
    """Alternating genomes need at least n events, exactly n when Y0 is empty"""
    if n_max > 3:
        raise ValueError(f"alternation check supports n up to 3, got {n_max}")
    config = config or load_config()
    with _Timer(CheckReport('alternation')) as report:
        for n in range(1, n_max + 1):
            for genome, target, head_empty in alternating_genomes(n):
                report.attempted += 1
                doc = {'genome': genome_to_doc(genome), 'cnp': cnp_to_doc(target)}
                try:
                    result = d_gcnp_exact(genome, target, n, SearchMode.ALL_EVENTS, config)
                except GuardError as e:
                    report.skip(str(e))
                    continue
                if result.is_found and result.distance < n:
                    report.fail(doc, f">= {n}", result.distance)
                elif head_empty and not result.is_found:
                    report.fail(doc, n, result.status.value)
    return report


def check_propositions(trials: int = 100, seed: int = 7,
                       config: Optional[CnpkitConfig] = None) -> CheckReport:
    """Removing a symbol, or rewriting an unimportant position, never makes things worse"""
    config = config or load_config()
    rng = random.Random(seed)
    with _Timer(CheckReport('propositions')) as report:
        for _ in range(trials):
            alphabet = Alphabet(('a', 'b', 'c')[:rng.randint(2, 3)])
            genome = Genome(alphabet, tuple(
                rng.randrange(len(alphabet)) for _ in range(rng.randint(1, 5))))
            report.attempted += 1
            try:
                reasons = [_check_removal(report, rng, genome, config),
                           _check_unimportant(report, rng, genome, config)]
            except GuardError as e:
                reasons = [str(e)]
            # one skip per trial
            reasons = [r for r in reasons if r]
            if reasons:
                report.skip('; '.join(reasons))
    return report


def _check_removal(report: CheckReport, rng: random.Random, genome: Genome,
                   config: CnpkitConfig) -> Optional[str]:
    target = cnp_of(apply_sequence(genome, random_events(rng, genome, rng.randint(0, 2))))
    base = d_gcnp_exact(genome, target, 2, SearchMode.ALL_EVENTS, config)
    if not base.is_found:
        return f"d_gcnp beyond budget 2 for {genome}"
    for symbol in genome.alphabet:
        reduced = d_gcnp_exact(remove_symbol(genome, symbol), zero_symbol(target, symbol),
                               base.distance, SearchMode.ALL_EVENTS, config)
        if not reduced.is_found:
            report.fail({'genome': genome_to_doc(genome), 'cnp': cnp_to_doc(target), 'symbol': symbol},
                        f"<= {base.distance}", reduced.status.value)
    return None


def _check_unimportant(report: CheckReport, rng: random.Random, genome: Genome,
                       config: CnpkitConfig) -> Optional[str]:
    other = apply_sequence(genome, random_events(rng, genome, rng.randint(0, 2)))
    base = d_gg_exact(genome, other, 2, config)
    if not base.is_found:
        return f"d_gg beyond budget 2 for {genome}"
    for position in unimportant_positions(genome, base.witness):
        for symbol in genome.alphabet:
            if symbol == genome.alphabet[genome.seq[position - 1]]:
                continue
            changed = replace_position(genome, position, symbol)
            result = d_gg_exact(changed, other, base.distance, config)
            if not result.is_found:
                report.fail({'genome': genome_to_doc(genome), 'target': genome_to_doc(other),
                             'position': position, 'symbol': symbol},
                            f"<= {base.distance}", result.status.value)
    return None


def check_cnpc(max_total: int = 4, alphabet_size: int = 4,
               config: Optional[CnpkitConfig] = None) -> CheckReport:
    """Conforming strings reach the brute-force optimum, which is n* or n* - 1"""
    if max_total > 6:
        raise ValueError(f"CNPC check supports sums up to 6, got {max_total}")
    config = config or load_config()
    alphabet = Alphabet(tuple(chr(ord('a') + i) for i in range(alphabet_size)))
    with _Timer(CheckReport('cnpc')) as report:
        for first, second in cnp_pairs(max_total, alphabet_size):
            report.attempted += 1
            c1, c2 = Cnp(alphabet, first), Cnp(alphabet, second)
            doc = {'c1': list(first), 'c2': list(second)}
            try:
                solution = cnpc_solve(c1, c2, config)
                optimum = cnpc_brute_force(c1, c2, config)
            except GuardError as e:
                report.skip(str(e))
                continue

            n_star = solution.n_star
            has_pair = find_transfer_pair(c1, c2, max_common_subvector(c1, c2)) is not None
            expected = 0 if n_star == 0 else (n_star if has_pair else n_star - 1)
            if cnp_of(solution.s1) != c1 or cnp_of(solution.s2) != c2:
                report.fail(doc, 'strings with the given CNPs', [str(solution.s1), str(solution.s2)])
            elif solution.adjacencies != optimum:
                report.fail(doc, optimum, solution.adjacencies)
            elif optimum != expected:
                report.fail(doc, expected, optimum)
            elif cnpc_adjacency_count(c1, c2) != optimum:
                report.fail(doc, optimum, cnpc_adjacency_count(c1, c2))
    return report


def check_w1_reduction(vertex_max: int = 6, k_max: int = 3, samples: int = 500, seed: int = 0,
                       config: Optional[CnpkitConfig] = None) -> CheckReport:
    """Multicolored clique exists iff a cover of size k' exists, and the promise holds"""
    if vertex_max > 7 or k_max > 3:
        raise ValueError("W[1] reduction check supports at most 7 vertices and k <= 3")
    config = config or load_config()
    rng = random.Random(seed)
    graphs = fixed_colored_graphs() + [random_colored_graph(rng, vertex_max, k_max)
                                       for _ in range(samples)]
    with _Timer(CheckReport('w1')) as report:
        for graph in graphs:
            report.attempted += 1
            doc = graph_to_doc(graph)
            try:
                clique = has_multicolored_clique(graph, config)
                instance = mcq_to_scec(graph)
                cover = min_set_cover(instance.system, instance.k_prime, config)
                promise = check_scec_promise(instance, config)
            except GuardError as e:
                report.skip(str(e))
                continue
            if (clique is None) != (cover is None):
                report.fail(doc, f"clique {clique}", f"cover {None if cover is None else cover.names(instance.system)}")
            elif not promise:
                report.fail(doc, 'every cover of size <= k\' is exact', 'a non-exact cover')
    return report


CHECKS: Dict[str, Callable[..., CheckReport]] = {
    'alternation': check_alternation,
    'closure': check_closure,
    'cnpc': check_cnpc,
    'extraction': check_extraction,
    'lemma2': check_lemma2,
    'propositions': check_propositions,
    'w1': check_w1_reduction,
}


def run_checks(names: Iterable[str], options: Optional[Dict[str, Dict[str, Any]]] = None) -> List[CheckReport]:
    """Run the named checks; reports come back sorted by check name"""
    options = options or {}
    reports = []
    for name in sorted(set(names)):
        if name not in CHECKS:
            raise KeyError(f"unknown check {name!r}; choose from {', '.join(sorted(CHECKS))}")
        reports.append(CHECKS[name](**options.get(name, {})))
    return reports
