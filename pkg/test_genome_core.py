"""
Tests for genomes, CNPs, events and origin tracking
"""

import pytest
from hypothesis import given, settings, strategies as st

from cnpkit.errors import InsideCopyError, InvalidEventError, SequenceError, UnknownSymbol
from cnpkit.genome_core import (
    Alphabet,
    Cnp,
    Deletion,
    Duplication,
    Genome,
    apply_deletion,
    apply_duplication,
    apply_event,
    apply_sequence,
    apply_sequence_tagged,
    canonical_genome,
    cnp_of,
    erase_origins,
    remove_symbol,
    replace_position,
    surviving_origins,
    unimportant_positions,
    with_origins,
    zero_symbol,
)

ABC = Alphabet(('a', 'b', 'c'))


def genome(text: str, alphabet: Alphabet = ABC) -> Genome:
    return Genome.from_string(alphabet, text)


# Strategies

genomes = st.lists(st.integers(0, 2), max_size=4).map(lambda seq: Genome(ABC, tuple(seq)))


def draw_event(data, n: int):
    i = data.draw(st.integers(1, n))
    j = data.draw(st.integers(i, n))
    if data.draw(st.booleans()):
        return Deletion(i, j)
    p = data.draw(st.sampled_from(list(range(0, i)) + list(range(j, n + 1))))
    return Duplication(i, j, p)


def draw_events(data, start: Genome, max_events: int = 2):
    events = []
    current = start
    for _ in range(data.draw(st.integers(0, max_events))):
        if len(current) == 0:
            break
        event = draw_event(data, len(current))
        events.append(event)
        current = apply_event(current, event)
    return events


class TestAlphabet:
    def test_duplicate_symbols_rejected(self):
        with pytest.raises(ValueError):
            Alphabet(('a', 'a'))

    def test_index_of_unknown_symbol(self):
        with pytest.raises(UnknownSymbol):
            ABC.index('z')

    def test_from_text_sorts_distinct_characters(self):
        assert Alphabet.from_text('cab', 'bd').symbols == ('a', 'b', 'c', 'd')

    def test_multi_character_symbols_render_with_spaces(self):
        alphabet = Alphabet(('x1', 'y'))
        assert str(Genome.from_symbols(alphabet, ['x1', 'y', 'x1'])) == 'x1 y x1'


class TestCnp:
    def test_cnp_of_example(self):
        assert cnp_of(genome('abbcbbcca')).counts == (2, 4, 3)

    def test_cnp_of_empty_genome(self):
        assert cnp_of(genome('')) == Cnp.zero(ABC)

    def test_cnp_of_single_symbol(self):
        ab = Alphabet(('a', 'b'))
        assert cnp_of(genome('aa', ab)).counts == (2, 0)

    def test_text_form(self):
        assert str(cnp_of(genome('abbcbbcca'))) == '⟨2,4,3⟩'

    def test_lookup_by_name(self):
        assert cnp_of(genome('abbcbbcca'))['b'] == 4

    def test_negative_counts_rejected(self):
        with pytest.raises(ValueError):
            Cnp(ABC, (1, -1, 0))

    def test_wrong_length_rejected(self):
        with pytest.raises(ValueError):
            Cnp(ABC, (1, 1))

    def test_fractional_counts_rejected(self):
        with pytest.raises(ValueError):
            Cnp(ABC, (1.5, 0, 0))

    def test_boolean_counts_rejected(self):
        with pytest.raises(ValueError):
            Cnp(ABC, (True, 0, 0))


class TestEvents:
    def test_deletion_normalized_example(self):
        assert str(apply_deletion(genome('abbccabcab'), 5, 7)) == 'abbccab'

    def test_delete_everything(self):
        assert len(apply_deletion(genome('abc'), 1, 3)) == 0

    def test_single_character_deletion(self):
        assert str(apply_deletion(genome('abc'), 2, 2)) == 'ac'

    @pytest.mark.parametrize('i,j', [(0, 1), (2, 1), (1, 4)])
    def test_invalid_deletion(self, i, j):
        with pytest.raises(IndexError):
            apply_deletion(genome('abc'), i, j)

    def test_deletion_on_empty_genome(self):
        with pytest.raises(InvalidEventError):
            apply_deletion(genome(''), 1, 1)

    def test_duplication_example(self):
        assert str(apply_duplication(genome('abbccab'), 2, 5, 6)) == 'abbccabbccb'

    def test_prepend_single_copy(self):
        assert str(apply_duplication(genome('a'), 1, 1, 0)) == 'aa'

    def test_whole_string_append(self):
        assert str(apply_duplication(genome('ab'), 1, 2, 2)) == 'abab'

    def test_copy_inside_itself(self):
        with pytest.raises(InsideCopyError) as excinfo:
            apply_duplication(genome('abc'), 1, 3, 1)
        assert isinstance(excinfo.value, IndexError)

    def test_insertion_point_out_of_range(self):
        with pytest.raises(InvalidEventError):
            apply_duplication(genome('abc'), 1, 1, 4)

    def test_event_text_forms(self):
        assert str(Deletion(5, 7)) == 'del(5,7)'
        assert str(Duplication(2, 5, 6)) == 'dup(2,5,6)'


class TestSequences:
    def test_deletion_then_duplication(self):
        events = [Deletion(5, 7), Duplication(2, 5, 6)]
        assert str(apply_sequence(genome('abbccabcab'), events)) == 'abbccabbccb'

    def test_empty_sequence_is_identity(self):
        g = genome('abca')
        assert apply_sequence(g, []) == g

    def test_duplicate_then_delete(self):
        ab = Alphabet(('a', 'b'))
        assert str(apply_sequence(genome('ab', ab), [Duplication(1, 1, 1), Deletion(1, 1)])) == 'ab'

    def test_failing_event_reports_its_index(self):
        with pytest.raises(SequenceError) as excinfo:
            apply_sequence(genome('ab'), [Deletion(1, 1), Deletion(2, 2)])
        assert excinfo.value.index == 1
        assert excinfo.value.event == Deletion(2, 2)


class TestOrigins:
    def test_with_origins_example(self):
        tagged = with_origins(genome('aabcb'))
        assert [(ABC[x], origin) for x, origin in tagged.seq] == [
            ('a', 1), ('a', 2), ('b', 3), ('c', 4), ('b', 5)]

    def test_with_origins_empty(self):
        assert len(with_origins(genome(''))) == 0

    def test_with_origins_single(self):
        x = Alphabet(('x',))
        assert with_origins(genome('x', x)).seq == ((0, 1),)

    def test_nothing_deleted_keeps_every_origin(self):
        assert surviving_origins(genome('abca'), []) == {1, 2, 3, 4}

    def test_deleted_position_has_no_descendant(self):
        assert surviving_origins(genome('ab'), [Deletion(1, 1)]) == {2}

    def test_copy_survives_deletion_of_source(self):
        assert surviving_origins(genome('ab'), [Duplication(1, 1, 1), Deletion(1, 1)]) == {1, 2}

    def test_unimportant_positions(self):
        assert unimportant_positions(genome('abc'), [Deletion(2, 3)]) == [2, 3]

    def test_duplicated_characters_keep_their_origin(self):
        tagged = apply_sequence_tagged(with_origins(genome('ab')), [Duplication(1, 2, 2)])
        assert [origin for _, origin in tagged.seq] == [1, 2, 1, 2]


class TestSymbols:
    def test_remove_symbol(self):
        assert str(remove_symbol(genome('abab'), 'a')) == 'bb'
        assert str(remove_symbol(genome('bb'), 'a')) == 'bb'
        assert len(remove_symbol(genome('aaa'), 'a')) == 0

    def test_remove_unknown_symbol(self):
        with pytest.raises(UnknownSymbol):
            remove_symbol(genome('ab'), 'z')

    def test_zero_symbol(self):
        ab = Alphabet(('a', 'b'))
        assert zero_symbol(Cnp(ab, (2, 1)), 'a').counts == (0, 1)
        assert zero_symbol(Cnp(ab, (0, 3)), 'a').counts == (0, 3)
        assert zero_symbol(Cnp.zero(ab), 'b') == Cnp.zero(ab)

    def test_zero_unknown_symbol(self):
        with pytest.raises(UnknownSymbol):
            zero_symbol(Cnp.zero(ABC), 'z')

    def test_replace_position(self):
        assert str(replace_position(genome('abc'), 2, 'c')) == 'acc'

    def test_replace_position_out_of_range(self):
        with pytest.raises(InvalidEventError):
            replace_position(genome('abc'), 4, 'a')

    def test_canonical_genome(self):
        assert str(canonical_genome(Cnp(ABC, (2, 0, 1)))) == 'aac'


class TestProperties:
    @settings(max_examples=200)
    @given(genomes, st.data())
    def test_projection_of_tagged_genome(self, start, data):
        events = draw_events(data, start)
        tagged = apply_sequence_tagged(with_origins(start), events)
        assert erase_origins(tagged) == apply_sequence(start, events)

    @given(genomes, st.data())
    def test_event_changes_length_and_counts_as_stated(self, start, data):
        if len(start) == 0:
            return
        event = draw_event(data, len(start))
        before = cnp_of(start).counts
        result = apply_event(start, event)
        after = cnp_of(result).counts
        span = len(range(event.i, event.j + 1))
        segment = cnp_of(Genome(ABC, start.seq[event.i - 1:event.j])).counts
        if isinstance(event, Deletion):
            assert len(result) == len(start) - span
            assert all(a <= b for a, b in zip(after, before))
        else:
            assert len(result) == len(start) + span
            assert after == tuple(b + s for b, s in zip(before, segment))

    @given(genomes, st.data())
    def test_absent_symbols_stay_absent(self, start, data):
        events = draw_events(data, start)
        before = cnp_of(start).counts
        after = cnp_of(apply_sequence(start, events)).counts
        assert all(a == 0 for a, b in zip(after, before) if b == 0)
