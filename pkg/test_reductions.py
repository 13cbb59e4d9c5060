"""
Tests for the set-cover reductions, converters and oracles
"""

import pytest

from cnpkit.config import CnpkitConfig
from cnpkit.errors import (
    HasDuplication,
    ImproperColoring,
    NotACover,
    NotASolution,
    NotExactCover,
    ReductionError,
    SetTooLarge,
    TooLarge,
    TooManySets,
    UncoveredElement,
)
from cnpkit.genome_core import Deletion, Duplication, apply_sequence, cnp_of
from cnpkit.mcng_solver import d_gcnp_exact
from cnpkit.reductions import (
    ColoredGraph,
    Cover,
    ScEcInstance,
    SetSystem,
    block_layout,
    check_scec_promise,
    cover_from_parts,
    disjointify,
    enumerate_covers,
    exact_cover_deletions,
    extract_cover_deletions,
    extract_cover_general,
    has_multicolored_clique,
    is_cover,
    is_exact_cover,
    k_prime,
    mcq_to_scec,
    min_set_cover,
    pred_separator,
    sc_to_mcng,
    subset_closure,
)
from cnpkit.verify import small_set_systems

CONFIG = CnpkitConfig()


@pytest.fixture
def three_sets():
    return SetSystem.from_named(
        ['1', '2', '3', '4', '5'],
        {'S1': ['1', '2', '3'], 'S2': ['1', '3', '4'], 'S3': ['2', '3', '5']})


@pytest.fixture
def exact_system():
    return SetSystem.from_named(['1', '2', '3'], {'S1': ['1', '2'], 'S2': ['3'], 'S3': ['2', '3']})


def triangle() -> ColoredGraph:
    return ColoredGraph.from_colors(3, {'a': 1, 'b': 2, 'c': 3}, [('a', 'b'), ('b', 'c'), ('a', 'c')])


class TestSetSystem:
    def test_empty_set_rejected(self):
        with pytest.raises(ValueError):
            SetSystem.from_named(['1'], {'S1': []})

    def test_unknown_element_rejected(self):
        with pytest.raises(ValueError):
            SetSystem.from_named(['1'], {'S1': ['2']})

    def test_members_are_sorted(self):
        system = SetSystem.from_named(['1', '2', '3'], {'S1': ['3', '1']})
        assert system.element_names(0) == ['1', '3']

    def test_frequency(self, three_sets):
        assert three_sets.frequency() == [2, 2, 3, 1, 1]

    def test_cover_is_normalised(self):
        assert Cover((2, 0, 2)).chosen == (0, 2)


class TestScToMcng:
    def test_three_set_genome_and_target(self, three_sets):
        instance = sc_to_mcng(three_sets)
        assert instance.genome.symbols() == [
            's_S1', 'e_1', 'e_2', 'e_3',
            's_S2', 'e_1', 'e_3', 'e_4',
            's_S3', 'e_2', 'e_3', 'e_5',
        ]
        assert instance.target.alphabet.symbols == (
            's_S1', 's_S2', 's_S3', 'e_1', 'e_2', 'e_3', 'e_4', 'e_5')
        assert instance.target.counts == (1, 1, 1, 1, 1, 2, 0, 0)

    def test_uncovered_element(self):
        with pytest.raises(UncoveredElement):
            sc_to_mcng(SetSystem.from_named(['1', '2'], {'S1': ['1']}))

    def test_block_layout(self, three_sets):
        blocks = block_layout(three_sets)
        assert [(b.separator, b.start, b.end) for b in blocks] == [(1, 2, 4), (5, 6, 8), (9, 10, 12)]

    def test_pred_separator(self, three_sets):
        assert pred_separator(three_sets, 2) == 0
        assert pred_separator(three_sets, 8) == 1
        assert pred_separator(three_sets, 12) == 2
        with pytest.raises(ValueError):
            pred_separator(three_sets, 1)


class TestExactCoverDeletions:
    def test_deletions_reach_target(self, exact_system):
        instance = sc_to_mcng(exact_system)
        cover = Cover((0, 1))
        events = exact_cover_deletions(exact_system, cover)
        assert events == (Deletion(5, 5), Deletion(2, 3))
        assert cnp_of(apply_sequence(instance.genome, events)) == instance.target

    def test_round_trip(self, exact_system):
        instance = sc_to_mcng(exact_system)
        cover = Cover((0, 1))
        events = exact_cover_deletions(exact_system, cover)
        assert extract_cover_deletions(instance, exact_system, events) == cover

    def test_not_exact(self, three_sets):
        assert is_cover(three_sets, Cover((1, 2)))
        assert not is_exact_cover(three_sets, Cover((1, 2)))
        with pytest.raises(NotExactCover):
            exact_cover_deletions(three_sets, Cover((1, 2)))


class TestExtraction:
    EVENTS = (Deletion(12, 12), Deletion(8, 8), Deletion(2, 4))

    def test_deletion_extraction(self, three_sets):
        instance = sc_to_mcng(three_sets)
        cover = extract_cover_deletions(instance, three_sets, self.EVENTS)
        assert cover.names(three_sets) == ['S1', 'S2', 'S3']

    def test_general_extraction(self, three_sets):
        instance = sc_to_mcng(three_sets)
        cover = extract_cover_general(instance, three_sets, self.EVENTS)
        assert cover.names(three_sets) == ['S1', 'S2', 'S3']

    def test_general_extraction_with_duplication(self, exact_system):
        instance = sc_to_mcng(exact_system)
        # move s_S2 to the end, then drop everything between s_S1 and s_S3
        events = (Duplication(4, 4, 8), Deletion(2, 5))
        assert cnp_of(apply_sequence(instance.genome, events)) == instance.target
        cover = extract_cover_general(instance, exact_system, events)
        assert cover.names(exact_system) == ['S1', 'S2']

    def test_duplications_rejected_by_deletion_extraction(self, exact_system):
        instance = sc_to_mcng(exact_system)
        with pytest.raises(HasDuplication):
            extract_cover_deletions(instance, exact_system, (Duplication(1, 1, 1),))

    def test_not_a_solution(self, three_sets):
        instance = sc_to_mcng(three_sets)
        with pytest.raises(NotASolution):
            extract_cover_general(instance, three_sets, (Deletion(2, 2),))

    def test_instance_from_another_system(self, three_sets, exact_system):
        with pytest.raises(ReductionError):
            extract_cover_general(sc_to_mcng(exact_system), three_sets, ())


class TestClosure:
    def test_three_set_closure(self, three_sets):
        closed = subset_closure(three_sets, 3, CONFIG)
        assert len(closed.sets) == 15
        assert closed.names[:4] == ['{1}', '{2}', '{3}', '{1,2}']

    def test_set_larger_than_t(self, three_sets):
        with pytest.raises(SetTooLarge):
            subset_closure(three_sets, 2, CONFIG)

    def test_closure_guard(self, three_sets):
        with pytest.raises(SetTooLarge):
            subset_closure(three_sets, 11, CONFIG)

    def test_disjointify(self, three_sets):
        assert disjointify(three_sets, Cover((0, 1, 2))) == [(0, 1, 2), (3,), (4,)]

    def test_disjointify_follows_set_index_order(self, three_sets):
        assert disjointify(three_sets, Cover((2, 1))) == [(0, 2, 3), (1, 4)]

    def test_disjointify_needs_a_cover(self, three_sets):
        with pytest.raises(NotACover):
            disjointify(three_sets, Cover((0,)))

    def test_parts_become_an_exact_cover_of_the_closure(self, three_sets):
        closed = subset_closure(three_sets, 3, CONFIG)
        parts = disjointify(three_sets, Cover((1, 2)))
        cover = cover_from_parts(closed, parts)
        assert len(cover) <= 2
        assert is_exact_cover(closed, cover)

    def test_missing_part(self, three_sets):
        with pytest.raises(NotACover):
            cover_from_parts(three_sets, [(0,)])


class TestOracles:
    def test_min_set_cover(self, three_sets):
        assert min_set_cover(three_sets, 3, CONFIG) == Cover((1, 2))

    def test_no_cover_within_bound(self, three_sets):
        assert min_set_cover(three_sets, 1, CONFIG) is None

    def test_enumeration_order(self, three_sets):
        assert list(enumerate_covers(three_sets, 3, CONFIG)) == [Cover((1, 2)), Cover((0, 1, 2))]

    def test_promise_broken_by_overlap(self, three_sets):
        assert not check_scec_promise(ScEcInstance(three_sets, 2), CONFIG)

    def test_promise_holds_for_exact_system(self):
        system = SetSystem.from_named(['1', '2', '3'], {'S1': ['1'], 'S2': ['2', '3']})
        assert check_scec_promise(ScEcInstance(system, 2), CONFIG)

    def test_too_many_sets(self, three_sets):
        with pytest.raises(TooManySets):
            min_set_cover(three_sets, 3, CnpkitConfig(max_cover_sets=2))


class TestMulticoloredClique:
    def test_triangle(self):
        graph = triangle()
        instance = mcq_to_scec(graph)
        assert instance.k_prime == 6
        assert len(instance.system.universe) == 12
        assert has_multicolored_clique(graph, CONFIG) == ['a', 'b', 'c']
        cover = min_set_cover(instance.system, instance.k_prime, CONFIG)
        assert cover is not None and len(cover) == 6
        assert check_scec_promise(instance, CONFIG)

    def test_edgeless(self):
        graph = ColoredGraph.from_colors(2, {'u': 1, 'v': 2}, [])
        instance = mcq_to_scec(graph)
        assert has_multicolored_clique(graph, CONFIG) is None
        assert min_set_cover(instance.system, instance.k_prime, CONFIG) is None

    def test_single_edge(self):
        graph = ColoredGraph.from_colors(2, {'u': 1, 'v': 2}, [('u', 'v')])
        instance = mcq_to_scec(graph)
        assert instance.k_prime == 3
        assert instance.system.names == ['V:u', 'V:v', 'E:u:v']
        assert instance.system.element_names(2) == ['pair:1:2']
        cover = min_set_cover(instance.system, 3, CONFIG)
        assert cover == Cover((0, 1, 2))
        assert is_exact_cover(instance.system, cover)

    def test_k_prime(self):
        assert [k_prime(k) for k in (2, 3, 4)] == [3, 6, 10]

    def test_same_color_edge(self):
        with pytest.raises(ImproperColoring):
            ColoredGraph.from_colors(2, {'u': 1, 'v': 1}, [('u', 'v')])

    def test_color_out_of_range(self):
        with pytest.raises(ImproperColoring):
            ColoredGraph.from_colors(2, {'u': 3}, [])

    def test_duplicate_edges_collapse(self):
        graph = ColoredGraph.from_colors(2, {'u': 1, 'v': 2}, [('u', 'v'), ('v', 'u')])
        assert graph.edges == (('u', 'v'),)

    def test_clique_guard(self):
        with pytest.raises(TooLarge):
            has_multicolored_clique(triangle(), CnpkitConfig(clique_guard=0))


class TestClosedSystems:
    @pytest.mark.parametrize('system', list(small_set_systems(2, 2)), ids=str)
    def test_cover_size_equals_reduced_distance(self, system):
        closed = subset_closure(system, 2, CONFIG)
        cover = min_set_cover(closed, len(closed.sets), CONFIG)
        instance = sc_to_mcng(closed)
        result = d_gcnp_exact(instance.genome, instance.target, len(cover), config=CONFIG)
        assert result.is_found
        assert result.distance == len(cover)

    def test_cover_becomes_deletions_and_back(self, three_sets):
        closed = subset_closure(three_sets, 3, CONFIG)
        instance = sc_to_mcng(closed)
        cover = cover_from_parts(closed, disjointify(three_sets, Cover((1, 2))))
        events = exact_cover_deletions(closed, cover)
        assert len(events) == 2
        assert cnp_of(apply_sequence(instance.genome, events)) == instance.target
        assert len(extract_cover_general(instance, closed, events)) <= 2
