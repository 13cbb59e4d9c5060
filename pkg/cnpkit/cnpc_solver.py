"""
Copy Number Profile Conforming under the breakpoint distance

Given two CNPs, build one string for each so that the number of common
adjacencies is maximum. The construction places the maximum common sub-vector
v in both strings and, when a transfer pair (x, y) exists, gains one extra
adjacency {x, y} by closing s(v) with x on one side and opening it with y on
the other. The optimum is then n* = sum(v), otherwise n* - 1.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from more_itertools import distinct_permutations

from .config import CnpkitConfig, load_config
from .errors import InternalInvariantViolation, InvalidSubvector, SizeGuardExceeded
from .genome_core import Cnp, Genome, canonical_genome, cnp_of, require_same_alphabet

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


@dataclass(frozen=True)
class CnpcSolution:
    s1: Genome
    s2: Genome
    adjacencies: int
    n_star: int

    def to_doc(self) -> Dict:
        return {
            's1': self.s1.symbols(),
            's2': self.s2.symbols(),
            'adjacencies': self.adjacencies,
            'n_star': self.n_star,
        }


def adjacency_multiset(seq: Tuple[int, ...]) -> Counter:
    """Multiplicity of every unordered pair {x, y} of adjacent symbols"""
    return Counter((min(a, b), max(a, b)) for a, b in zip(seq, seq[1:]))


def _common(first: Counter, second: Counter) -> int:
    if len(first) > len(second):
        first, second = second, first
    return sum(min(count, second[pair]) for pair, count in first.items())


def adjacencies(a: Genome, b: Genome) -> int:
    """Size of a maximum matching between the 2-substrings of a and b"""
    require_same_alphabet(a, b)
    return _common(adjacency_multiset(a.seq), adjacency_multiset(b.seq))


def breakpoints(a: Genome, b: Genome) -> Tuple[int, int]:
    shared = adjacencies(a, b)
    return max(len(a) - 1, 0) - shared, max(len(b) - 1, 0) - shared


def breakpoint_distance(a: Genome, b: Genome) -> int:
    first, second = breakpoints(a, b)
    return first + second


def max_common_subvector(c1: Cnp, c2: Cnp) -> Cnp:
    require_same_alphabet(c1, c2)
    return Cnp(c1.alphabet, tuple(min(x, y) for x, y in zip(c1.counts, c2.counts)))


def _transfer_pair(c1: Tuple[int, ...], c2: Tuple[int, ...],
                   v: Tuple[int, ...]) -> Optional[Pair]:
    x = next((s for s, (have, common) in enumerate(zip(c1, v)) if common >= 1 and have > common), None)
    y = next((s for s, (have, common) in enumerate(zip(c2, v)) if common >= 1 and have > common), None)
    if x is None or y is None:
        return None
    if x == y:
        raise InternalInvariantViolation(
            f"symbol index {x} has surplus on both sides of its common count {v[x]}")
    return x, y


def find_transfer_pair(c1: Cnp, c2: Cnp, v: Cnp) -> Optional[Tuple[str, str]]:
    """Symbols (x, y) with surplus over v in c1 and c2 respectively, both present in v"""
    require_same_alphabet(c1, c2)
    require_same_alphabet(c1, v)
    if v != max_common_subvector(c1, c2):
        raise InvalidSubvector(f"{v} is not the componentwise minimum of {c1} and {c2}")
    pair = _transfer_pair(c1.counts, c2.counts, v.counts)
    if pair is None:
        return None
    return c1.alphabet[pair[0]], c1.alphabet[pair[1]]


def _expand(counts: List[int]) -> List[int]:
    seq: List[int] = []
    for x, count in enumerate(counts):
        seq.extend([x] * count)
    return seq


def cnpc_solve(c1: Cnp, c2: Cnp, config: Optional[CnpkitConfig] = None) -> CnpcSolution:
    """Two strings with CNPs c1 and c2 sharing the maximum number of adjacencies"""
    require_same_alphabet(c1, c2)
    config = config or load_config()
    size = c1.total + c2.total
    if size > config.cnpc_size_guard:
        raise SizeGuardExceeded(
            f"total length {size} exceeds {config.cnpc_size_guard}", limit=config.cnpc_size_guard)

    alphabet = c1.alphabet
    v = [min(x, y) for x, y in zip(c1.counts, c2.counts)]
    n_star = sum(v)

    if n_star == 0:
        s1, s2 = canonical_genome(c1), canonical_genome(c2)
    else:
        left_over_1 = [x - common for x, common in zip(c1.counts, v)]
        left_over_2 = [y - common for y, common in zip(c2.counts, v)]
        pair = _transfer_pair(c1.counts, c2.counts, tuple(v))
        if pair is None:
            core = _expand(v)
            seq1 = core + _expand(left_over_1)
            seq2 = core + _expand(left_over_2)
        else:
            x, y = pair
            middle = list(v)
            middle[x] -= 1
            middle[y] -= 1
            core = [x] + _expand(middle) + [y]
            left_over_1[x] -= 1
            left_over_2[y] -= 1
            seq1 = core + [x] + _expand(left_over_1)
            seq2 = [y] + core + _expand(left_over_2)
        s1, s2 = Genome(alphabet, tuple(seq1)), Genome(alphabet, tuple(seq2))

    shared = adjacencies(s1, s2)
    logger.debug(f"cnpc_solve: n*={n_star}, adjacencies={shared}")
    return CnpcSolution(s1, s2, shared, n_star)


def cnpc_adjacency_count(c1: Cnp, c2: Cnp) -> int:
    """Optimal number of common adjacencies, computed on the vectors alone"""
    require_same_alphabet(c1, c2)
    v = tuple(min(x, y) for x, y in zip(c1.counts, c2.counts))
    n_star = sum(v)
    if n_star == 0:
        return 0
    if _transfer_pair(c1.counts, c2.counts, v) is None:
        return n_star - 1
    return n_star


@lru_cache(maxsize=1024)
def _adjacency_profiles(counts: Tuple[int, ...]) -> Tuple[Counter, ...]:
    """Distinct adjacency multisets over all strings with the given counts"""
    seen = {}
    for perm in distinct_permutations(_expand(list(counts))):
        profile = adjacency_multiset(tuple(perm))
        seen.setdefault(frozenset(profile.items()), profile)
    return tuple(seen.values())


def cnpc_brute_force(c1: Cnp, c2: Cnp, config: Optional[CnpkitConfig] = None) -> int:
    """Exact optimum by trying every pair of strings with the given CNPs"""
    require_same_alphabet(c1, c2)
    config = config or load_config()
    limit = config.oracle_size_guard
    if c1.total > limit or c2.total > limit:
        raise SizeGuardExceeded(
            f"oracle needs both CNP sums <= {limit}, got {c1.total} and {c2.total}", limit=limit)

    ceiling = max(min(c1.total, c2.total) - 1, 0)
    best = 0
    for first in _adjacency_profiles(c1.counts):
        for second in _adjacency_profiles(c2.counts):
            best = max(best, _common(first, second))
            if best == ceiling:
                return best
    return best
