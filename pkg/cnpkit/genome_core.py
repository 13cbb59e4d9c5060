"""
Genomes, copy-number profiles and the events acting on them

Genomes are strings over an ordered alphabet, stored as tuples of alphabet
indices. Positions are 1-based and spans inclusive everywhere:

    del(i, j)     G[1..i-1] G[j+1..n]
    dup(i, j, p)  G[1..p] G[i..j] G[p+1..n],  p in {0..i-1} U {j..n}

Origin tracking tags every character with the position of the character of
the starting genome it descends from, so that after an event sequence one can
tell which starting positions still have a descendant (important positions).
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Sequence, Tuple, Union

from .errors import (
    AlphabetMismatch,
    InsideCopyError,
    InvalidEventError,
    SequenceError,
    UnknownSymbol,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Alphabet:
    """Ordered list of distinct symbol names"""

    symbols: Tuple[str, ...]
    _index: Dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        symbols = tuple(str(s) for s in self.symbols)
        index = {}
        for position, symbol in enumerate(symbols):
            if symbol in index:
                raise ValueError(f"duplicate symbol {symbol!r} in alphabet")
            index[symbol] = position
        object.__setattr__(self, 'symbols', symbols)
        object.__setattr__(self, '_index', index)

    @classmethod
    def from_text(cls, *texts: str) -> 'Alphabet':
        """Alphabet of the distinct characters of `texts`, in sorted order"""
        return cls(tuple(sorted(set(''.join(texts)))))

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise UnknownSymbol(f"symbol {symbol!r} is not in the alphabet") from None

    def __contains__(self, symbol: object) -> bool:
        return symbol in self._index

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)

    def __getitem__(self, position: int) -> str:
        return self.symbols[position]

    @property
    def single_character(self) -> bool:
        return all(len(s) == 1 for s in self.symbols)

    def render(self, seq: Iterable[int]) -> str:
        """Text form of an index sequence; space separated unless all symbols are one character"""
        separator = '' if self.single_character else ' '
        return separator.join(self.symbols[x] for x in seq)


@dataclass(frozen=True)
class Genome:
    alphabet: Alphabet
    seq: Tuple[int, ...] = ()

    def __post_init__(self):
        seq = tuple(self.seq)
        size = len(self.alphabet)
        for x in seq:
            if not 0 <= x < size:
                raise UnknownSymbol(f"index {x} is not valid for an alphabet of size {size}")
        object.__setattr__(self, 'seq', seq)

    @classmethod
    def from_symbols(cls, alphabet: Alphabet, symbols: Iterable[str]) -> 'Genome':
        return cls(alphabet, tuple(alphabet.index(s) for s in symbols))

    @classmethod
    def from_string(cls, alphabet: Alphabet, text: str) -> 'Genome':
        """Genome from a string of one-character symbols"""
        return cls.from_symbols(alphabet, list(text))

    def symbols(self) -> List[str]:
        return [self.alphabet[x] for x in self.seq]

    def __len__(self) -> int:
        return len(self.seq)

    def __str__(self) -> str:
        return self.alphabet.render(self.seq)


@dataclass(frozen=True)
class Cnp:
    """Copy-number profile: one non-negative count per alphabet symbol"""

    alphabet: Alphabet
    counts: Tuple[int, ...]

    def __post_init__(self):
        counts = tuple(self.counts)
        if not all(isinstance(c, int) and not isinstance(c, bool) for c in counts):
            raise ValueError(f"CNP components must be integers, got {list(counts)}")
        if len(counts) != len(self.alphabet):
            raise ValueError(
                f"CNP has {len(counts)} components but the alphabet has {len(self.alphabet)} symbols")
        if any(c < 0 for c in counts):
            raise ValueError(f"CNP components must be non-negative, got {list(counts)}")
        object.__setattr__(self, 'counts', counts)

    @classmethod
    def zero(cls, alphabet: Alphabet) -> 'Cnp':
        return cls(alphabet, (0,) * len(alphabet))

    def __getitem__(self, symbol: Union[str, int]) -> int:
        if isinstance(symbol, str):
            symbol = self.alphabet.index(symbol)
        return self.counts[symbol]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __str__(self) -> str:
        return '⟨' + ','.join(str(c) for c in self.counts) + '⟩'


@dataclass(frozen=True)
class Deletion:
    i: int
    j: int

    op = 'del'

    def __str__(self) -> str:
        return f"del({self.i},{self.j})"


@dataclass(frozen=True)
class Duplication:
    i: int
    j: int
    p: int

    op = 'dup'

    def __str__(self) -> str:
        return f"dup({self.i},{self.j},{self.p})"


Event = Union[Deletion, Duplication]
EventSequence = Tuple[Event, ...]


@dataclass(frozen=True)
class OriginTaggedGenome:
    """Genome whose characters carry the 1-based position they descend from"""

    alphabet: Alphabet
    seq: Tuple[Tuple[int, int], ...] = ()

    def __len__(self) -> int:
        return len(self.seq)

    def origins(self) -> FrozenSet[int]:
        return frozenset(origin for _, origin in self.seq)


# Raw event semantics on plain tuples (symbol indices or tagged pairs alike)

def delete_span(seq: Tuple, i: int, j: int) -> Tuple:
    n = len(seq)
    if not 1 <= i <= j <= n:
        raise InvalidEventError(f"deletion ({i},{j}) needs 1 <= i <= j <= {n}")
    return seq[:i - 1] + seq[j:]


def duplicate_span(seq: Tuple, i: int, j: int, p: int) -> Tuple:
    n = len(seq)
    if not 1 <= i <= j <= n:
        raise InvalidEventError(f"duplication ({i},{j},{p}) needs 1 <= i <= j <= {n}")
    if not 0 <= p <= n:
        raise InvalidEventError(f"duplication ({i},{j},{p}) needs 0 <= p <= {n}")
    if i - 1 < p < j:
        raise InsideCopyError(f"duplication ({i},{j},{p}) inserts the copy inside itself")
    return seq[:p] + seq[i - 1:j] + seq[p:]


def apply_raw(seq: Tuple, event: Event) -> Tuple:
    if isinstance(event, Deletion):
        return delete_span(seq, event.i, event.j)
    if isinstance(event, Duplication):
        return duplicate_span(seq, event.i, event.j, event.p)
    raise TypeError(f"not an event: {event!r}")


def apply_raw_sequence(seq: Tuple, events: Sequence[Event]) -> Tuple:
    for index, event in enumerate(events):
        try:
            seq = apply_raw(seq, event)
        except InvalidEventError as e:
            raise SequenceError(index, event, e) from e
    return seq


def require_same_alphabet(first, second) -> None:
    if first.alphabet != second.alphabet:
        raise AlphabetMismatch(
            f"alphabets differ: {list(first.alphabet.symbols)} vs {list(second.alphabet.symbols)}")


# Operations

def cnp_of(genome: Genome) -> Cnp:
    counts = [0] * len(genome.alphabet)
    for x in genome.seq:
        counts[x] += 1
    return Cnp(genome.alphabet, tuple(counts))


def apply_deletion(genome: Genome, i: int, j: int) -> Genome:
    return Genome(genome.alphabet, delete_span(genome.seq, i, j))


def apply_duplication(genome: Genome, i: int, j: int, p: int) -> Genome:
    return Genome(genome.alphabet, duplicate_span(genome.seq, i, j, p))


def apply_event(genome: Genome, event: Event) -> Genome:
    return Genome(genome.alphabet, apply_raw(genome.seq, event))


def apply_sequence(genome: Genome, events: Sequence[Event]) -> Genome:
    """Apply events left to right; a failing event raises SequenceError with its index"""
    return Genome(genome.alphabet, apply_raw_sequence(genome.seq, events))


def with_origins(genome: Genome) -> OriginTaggedGenome:
    return OriginTaggedGenome(
        genome.alphabet,
        tuple((x, position) for position, x in enumerate(genome.seq, start=1)),
    )


def apply_sequence_tagged(tagged: OriginTaggedGenome, events: Sequence[Event]) -> OriginTaggedGenome:
    return OriginTaggedGenome(tagged.alphabet, apply_raw_sequence(tagged.seq, events))


def erase_origins(tagged: OriginTaggedGenome) -> Genome:
    return Genome(tagged.alphabet, tuple(x for x, _ in tagged.seq))


def surviving_origins(genome: Genome, events: Sequence[Event]) -> FrozenSet[int]:
    """Important positions of `genome` w.r.t. `events`: those with a descendant in the result"""
    return apply_sequence_tagged(with_origins(genome), events).origins()


def unimportant_positions(genome: Genome, events: Sequence[Event]) -> List[int]:
    survivors = surviving_origins(genome, events)
    return [p for p in range(1, len(genome) + 1) if p not in survivors]


def remove_symbol(genome: Genome, symbol: str) -> Genome:
    x = genome.alphabet.index(symbol)
    return Genome(genome.alphabet, tuple(y for y in genome.seq if y != x))


def zero_symbol(cnp: Cnp, symbol: str) -> Cnp:
    x = cnp.alphabet.index(symbol)
    counts = list(cnp.counts)
    counts[x] = 0
    return Cnp(cnp.alphabet, tuple(counts))


def replace_position(genome: Genome, position: int, symbol: str) -> Genome:
    """Genome with G[position] replaced by `symbol`"""
    if not 1 <= position <= len(genome):
        raise InvalidEventError(f"position {position} is outside 1..{len(genome)}")
    seq = list(genome.seq)
    seq[position - 1] = genome.alphabet.index(symbol)
    return Genome(genome.alphabet, tuple(seq))


def canonical_genome(cnp: Cnp) -> Genome:
    """The string s(c): every symbol repeated c(s) times, in alphabet order"""
    seq: List[int] = []
    for x, count in enumerate(cnp.counts):
        seq.extend([x] * count)
    return Genome(cnp.alphabet, tuple(seq))
