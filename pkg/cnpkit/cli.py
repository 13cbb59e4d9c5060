"""
cnpkit command line

Every subcommand prints one result to stdout (or --output) as text or JSON.
Logging goes to stderr so machine-readable output stays byte-stable.

Exit codes: 0 success, 1 failed check, 2 usage or input error,
3 guard or budget exhausted.
"""

import argparse
import inspect
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import yaml

from .cnpc_solver import adjacencies, breakpoint_distance, breakpoints, cnpc_brute_force, cnpc_solve
from .config import CnpkitConfig, load_config
from .documents import (
    cnp_to_doc,
    dumps,
    genome_to_doc,
    mcng_instance_to_doc,
    parse_cnp,
    parse_events,
    parse_genome,
    parse_genome_pair,
    parse_graph,
    parse_setsystem,
    scec_to_doc,
    search_result_to_doc,
    setsystem_to_doc,
)
from .errors import CnpkitError, GuardError
from .genome_core import apply_sequence, cnp_of
from .mcng_solver import SearchMode, SearchResult, SearchStatus, d_gcnp_exact, d_gg_exact
from .reductions import mcq_to_scec, sc_to_mcng, subset_closure
from .verify import CHECKS, run_checks

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_GUARD = 3

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s %(message)s'

# verify flag -> keyword of each check
VERIFY_OPTIONS: Dict[str, Dict[str, str]] = {
    'alternation': {'max': 'n_max'},
    'closure': {'max': 'max_elements'},
    'cnpc': {'max': 'max_total'},
    'extraction': {'max': 'budget'},
    'lemma2': {'seed': 'seed', 'trials': 'trials'},
    'propositions': {'seed': 'seed', 'trials': 'trials'},
    'w1': {'seed': 'seed', 'trials': 'samples', 'max': 'vertex_max'},
}

Outcome = Tuple[int, Any, str]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def configure_logging(config: CnpkitConfig) -> None:
    """Log to stderr, and to config.log_file when one is set"""
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if config.log_file:
        Path(config.log_file).parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(config.log_file))
    logging.basicConfig(
        level=getattr(logging, config.log_level.upper()),
        format=LOG_FORMAT,
        handlers=handlers,
        force=True,
    )


# Subcommands

def _result_text(result: SearchResult) -> str:
    if result.status is SearchStatus.FOUND:
        events = ', '.join(str(e) for e in result.witness) or '(no events)'
        return f"distance {result.distance}: {events}"
    if result.status is SearchStatus.INFEASIBLE:
        return "infeasible"
    return f"exceeds budget {result.budget}"


def _search_outcome(result: SearchResult) -> Outcome:
    code = EXIT_GUARD if result.status is SearchStatus.BUDGET else EXIT_OK
    return code, search_result_to_doc(result), _result_text(result)


def cmd_cnp(args, config: CnpkitConfig) -> Outcome:
    cnp = cnp_of(parse_genome(args.genome))
    return EXIT_OK, cnp_to_doc(cnp), str(cnp)


def cmd_apply(args, config: CnpkitConfig) -> Outcome:
    genome = parse_genome(args.genome)
    result = apply_sequence(genome, parse_events(args.events))
    return EXIT_OK, genome_to_doc(result), str(result)


def cmd_mcng(args, config: CnpkitConfig) -> Outcome:
    genome = parse_genome(args.genome)
    target = parse_cnp(args.cnp, genome.alphabet)
    mode = SearchMode.DELETIONS_ONLY if args.deletions_only else SearchMode.ALL_EVENTS
    budget = config.default_budget if args.budget is None else args.budget
    return _search_outcome(d_gcnp_exact(genome, target, budget, mode, config))


def cmd_dgg(args, config: CnpkitConfig) -> Outcome:
    genome, other = parse_genome_pair(args.genome, args.other)
    budget = config.default_budget if args.budget is None else args.budget
    return _search_outcome(d_gg_exact(genome, other, budget, config))


def cmd_cnpc(args, config: CnpkitConfig) -> Outcome:
    c1 = parse_cnp(args.c1)
    c2 = parse_cnp(args.c2, c1.alphabet)
    solution = cnpc_solve(c1, c2, config)
    doc = solution.to_doc()
    lines = [
        f"s1: {solution.s1}",
        f"s2: {solution.s2}",
        f"adjacencies: {solution.adjacencies} (n* = {solution.n_star})",
    ]
    if args.oracle:
        doc['oracle'] = cnpc_brute_force(c1, c2, config)
        lines.append(f"oracle: {doc['oracle']}")
    return EXIT_OK, doc, '\n'.join(lines)


def cmd_adjacency(args, config: CnpkitConfig) -> Outcome:
    a, b = parse_genome_pair(args.s1, args.s2)
    shared = adjacencies(a, b)
    first, second = breakpoints(a, b)
    distance = breakpoint_distance(a, b)
    doc = {'adjacencies': shared, 'breakpoints': [first, second], 'distance': distance}
    text = f"{shared}\nbreakpoints ({first}, {second})\nbreakpoint distance {distance}"
    return EXIT_OK, doc, text


def cmd_reduce_sc_mcng(args, config: CnpkitConfig) -> Outcome:
    instance = sc_to_mcng(parse_setsystem(args.setsystem))
    return EXIT_OK, mcng_instance_to_doc(instance), f"{instance.genome}\n{instance.target}"


def cmd_reduce_mcq_scec(args, config: CnpkitConfig) -> Outcome:
    instance = mcq_to_scec(parse_graph(args.graph))
    doc = scec_to_doc(instance)
    return EXIT_OK, doc, dumps(doc)


def cmd_reduce_subset_closure(args, config: CnpkitConfig) -> Outcome:
    closed = subset_closure(parse_setsystem(args.setsystem), args.t, config)
    doc = setsystem_to_doc(closed)
    return EXIT_OK, doc, dumps(doc)


def _check_options(name: str, args, config: CnpkitConfig) -> Dict[str, Any]:
    options = {}
    for flag, keyword in VERIFY_OPTIONS[name].items():
        value = getattr(args, flag)
        if value is not None:
            options[keyword] = value
    if 'config' in inspect.signature(CHECKS[name]).parameters:
        options['config'] = config
    return options


def cmd_verify(args, config: CnpkitConfig) -> Outcome:
    names = sorted(CHECKS) if args.check == 'all' else [args.check]
    if args.check != 'all':
        unsupported = [f"--{flag}" for flag in ('seed', 'trials', 'max')
                       if getattr(args, flag) is not None and flag not in VERIFY_OPTIONS[args.check]]
        if unsupported:
            raise UsageError(f"check {args.check} does not take {', '.join(unsupported)}")
    reports = run_checks(names, {name: _check_options(name, args, config) for name in names})
    passed = all(r.passed for r in reports)
    doc = {'passed': passed, 'reports': [r.to_doc(args.timing) for r in reports]}
    text = '\n'.join(r.to_text(args.timing) for r in reports)
    return (EXIT_OK if passed else EXIT_CHECK_FAILED), doc, text


# Parser

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog='cnpkit', description='Genome and copy-number profile distances')
    parser.add_argument('--format', choices=['text', 'json'], default='text',
                        help='output format (default: text)')
    parser.add_argument('--output', metavar='PATH', help='write the result to PATH instead of stdout')
    parser.add_argument('--timing', action='store_true', help='include wall time in check reports')

    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    p = commands.add_parser('cnp', help='copy-number profile of a genome')
    p.add_argument('genome')
    p.set_defaults(handler=cmd_cnp)

    p = commands.add_parser('apply', help='apply an event sequence to a genome')
    p.add_argument('genome')
    p.add_argument('events')
    p.set_defaults(handler=cmd_apply)

    p = commands.add_parser('mcng', help='exact genome-to-CNP distance')
    p.add_argument('genome')
    p.add_argument('cnp')
    p.add_argument('--budget', type=int, help='maximum number of events (default from config)')
    p.add_argument('--deletions-only', action='store_true', help='search deletions only')
    p.set_defaults(handler=cmd_mcng)

    p = commands.add_parser('dgg', help='exact genome-to-genome distance')
    p.add_argument('genome')
    p.add_argument('other')
    p.add_argument('--budget', type=int, help='maximum number of events (default from config)')
    p.set_defaults(handler=cmd_dgg)

    p = commands.add_parser('cnpc', help='conforming strings with the most common adjacencies')
    p.add_argument('c1')
    p.add_argument('c2')
    p.add_argument('--oracle', action='store_true', help='also run the brute-force oracle')
    p.set_defaults(handler=cmd_cnpc)

    p = commands.add_parser('adjacency', help='adjacencies and breakpoints of two strings')
    p.add_argument('s1')
    p.add_argument('s2')
    p.set_defaults(handler=cmd_adjacency)

    reduce = commands.add_parser('reduce', help='hardness reductions')
    reductions = reduce.add_subparsers(dest='reduction', metavar='reduction')
    reductions.required = True
    r = reductions.add_parser('sc-mcng', help='set cover to genome-to-CNP distance')
    r.add_argument('setsystem')
    r.set_defaults(handler=cmd_reduce_sc_mcng)
    r = reductions.add_parser('mcq-scec', help='multicolored clique to exact-cover-promise set cover')
    r.add_argument('graph')
    r.set_defaults(handler=cmd_reduce_mcq_scec)
    r = reductions.add_parser('subset-closure', help='close a set system under subsets')
    r.add_argument('setsystem')
    r.add_argument('--t', type=int, required=True, help='maximum set size')
    r.set_defaults(handler=cmd_reduce_subset_closure)

    p = commands.add_parser('verify', help='run property checks')
    p.add_argument('check', choices=sorted(CHECKS) + ['all'])
    p.add_argument('--seed', type=int)
    p.add_argument('--trials', type=int)
    p.add_argument('--max', type=int)
    p.set_defaults(handler=cmd_verify)

    return parser


def _emit(args, doc: Any, text: str) -> None:
    body = (dumps(doc) if args.format == 'json' else text) + '\n'
    if args.output:
        with open(args.output, 'w', encoding='utf-8') as f:
            f.write(body)
    else:
        sys.stdout.write(body)


def run(argv: Optional[List[str]] = None, config: Optional[CnpkitConfig] = None) -> int:
    """Parse argv, run one subcommand and return its exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        sys.stderr.write(f"{parser.prog}: usage error: {e}\n")
        return EXIT_USAGE
    except SystemExit as e:
        # --help
        return e.code if isinstance(e.code, int) else EXIT_OK

    try:
        config = config or load_config()
    except (ValueError, TypeError, OSError, yaml.YAMLError) as e:
        sys.stderr.write(f"{parser.prog}: configuration error: {e}\n")
        return EXIT_USAGE

    handler: Callable[..., Outcome] = args.handler
    try:
        code, doc, text = handler(args, config)
        _emit(args, doc, text)
        return code
    except UsageError as e:
        sys.stderr.write(f"{parser.prog}: usage error: {e}\n")
        return EXIT_USAGE
    except GuardError as e:
        logger.warning(f"Guard tripped: {e}")
        sys.stderr.write(f"{parser.prog}: limit exceeded: {e}\n")
        return EXIT_GUARD
    except (CnpkitError, ValueError, KeyError) as e:
        sys.stderr.write(f"{parser.prog}: error: {e}\n")
        return EXIT_USAGE
    except OSError as e:
        sys.stderr.write(f"{parser.prog}: cannot write output: {e}\n")
        return EXIT_USAGE


def main(argv: Optional[List[str]] = None) -> int:
    try:
        config = load_config()
        configure_logging(config)
    except Exception as e:
        sys.stderr.write(f"ERROR: Failed to initialize logging: {e}\n")
        return EXIT_USAGE
    return run(argv, config)
