import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import normal_closure_ball, quadratic_is_trivial, structure_is_trivial
from raagcrypt.graphs import SimplicialGraph, VertexMap, VertexSubset, random_graph
from raagcrypt.raag import (
    OracleBoundError,
    Raag,
    SpecialSubgroup,
    are_equal,
    empty_piling,
    is_trivial,
    oracle_is_trivial,
    push_letter,
    sample_nontrivial_word,
    sample_trivial_word,
    verify_generator_homomorphism,
)
from raagcrypt.words import WordError, concat, exponent_sums, free_reduce, invert, parse_word

EDGE = Raag(SimplicialGraph(("a", "b"), [("a", "b")]))
FREE2 = Raag(SimplicialGraph(("a", "b")))
COMMUTATOR = parse_word("a b a^-1 b^-1")


def random_word(rng, graph, max_len=12):
    verts = graph.vertices
    return tuple((verts[rng.randrange(len(verts))], rng.choice((1, -1)))
                 for _ in range(rng.randint(0, max_len)))


class TestPushLetter:
    def test_push_on_nonadjacent_pair(self):
        g = FREE2.graph
        p = push_letter(empty_piling(g), ("a", 1), g)
        assert p.stacks == ((1,), (0,))

    def test_cancellation_empties(self):
        g = FREE2.graph
        p = push_letter(empty_piling(g), ("a", 1), g)
        p = push_letter(p, ("a", -1), g)
        assert p.is_empty()

    def test_adjacent_vertex_gets_no_marker(self):
        g = EDGE.graph
        p = push_letter(empty_piling(g), ("a", 1), g)
        assert p.stacks == ((1,), ())

    def test_unknown_generator(self):
        with pytest.raises(WordError):
            push_letter(empty_piling(EDGE.graph), ("zz", 1), EDGE.graph)

    def test_is_trivial_matches_stepwise_pushes(self):
        rng = random.Random(6)
        for _ in range(300):
            g = random_graph(rng.randint(1, 5), rng.random(), rng.getrandbits(32))
            w = random_word(rng, g)
            p = empty_piling(g)
            for l in w:
                p = push_letter(p, l, g)
            assert p.is_empty() == is_trivial(Raag(g), w)

    def test_marker_counts_stay_consistent(self):
        # number of 0s on a stack == total nonzero entries on the stacks
        # of its non-neighbors
        rng = random.Random(7)
        for _ in range(200):
            g = random_graph(rng.randint(1, 5), rng.random(), rng.getrandbits(32))
            nbar = g.nonneighbors()
            p = empty_piling(g)
            for l in random_word(rng, g, max_len=20):
                p = push_letter(p, l, g)
                for u in range(len(g.vertices)):
                    zeros = sum(1 for e in p.stacks[u] if e == 0)
                    expected = sum(sum(1 for e in p.stacks[v] if e != 0) for v in nbar[u])
                    assert zeros == expected


class TestIsTrivial:
    def test_commutator_of_adjacent_generators(self):
        assert is_trivial(EDGE, COMMUTATOR)

    def test_commutator_in_free_group(self):
        assert not is_trivial(FREE2, COMMUTATOR)

    def test_empty_word(self):
        assert is_trivial(EDGE, ())
        assert is_trivial(FREE2, ())

    def test_unknown_generator(self):
        with pytest.raises(WordError):
            is_trivial(EDGE, (("zz", 1),))

    @settings(max_examples=150, deadline=None)
    @given(st.data())
    def test_word_times_its_inverse_is_trivial(self, data):
        n = data.draw(st.integers(1, 5))
        g = random_graph(n, data.draw(st.floats(0, 1)), data.draw(st.integers(0, 2**32)))
        verts = g.vertices
        w = tuple((verts[data.draw(st.integers(0, n - 1))], data.draw(st.sampled_from((1, -1))))
                  for _ in range(data.draw(st.integers(0, 10))))
        assert is_trivial(Raag(g), concat(w, invert(w)))

    def test_trivial_words_have_zero_exponent_sums(self):
        rng = random.Random(9)
        seen_trivial = 0
        for _ in range(2000):
            g = random_graph(rng.randint(1, 4), rng.random(), rng.getrandbits(32))
            w = random_word(rng, g, max_len=8)
            if is_trivial(Raag(g), w):
                seen_trivial += 1
                assert not any(exponent_sums(w).values())
        assert seen_trivial > 50

    def test_adding_an_edge_preserves_triviality(self):
        rng = random.Random(10)
        checked = 0
        while checked < 300:
            g = random_graph(rng.randint(2, 5), rng.random(), rng.getrandbits(32))
            w = sample_trivial_word(Raag(g), 2 * rng.randint(1, 5), rng.getrandbits(32))
            nonedges = [(u, v) for i, u in enumerate(g.vertices)
                        for v in g.vertices[i + 1:] if not g.has_edge(u, v)]
            if not nonedges:
                continue
            u, v = nonedges[rng.randrange(len(nonedges))]
            bigger = SimplicialGraph(g.vertices, [*g.edge_list(), (u, v)])
            assert is_trivial(Raag(bigger), w)
            checked += 1

    def test_full_subgraph_words_agree_with_ambient(self):
        rng = random.Random(12)
        checked = 0
        while checked < 300:
            g = random_graph(rng.randint(2, 6), rng.random(), rng.getrandbits(32))
            members = [v for v in g.vertices if rng.random() < 0.6]
            if not members:
                continue
            special = SpecialSubgroup(Raag(g), VertexSubset(g, members))
            small = special.presentation()
            w = random_word(rng, small.graph, max_len=10)
            assert is_trivial(small, w) == is_trivial(Raag(g), w)
            checked += 1


class TestAreEqual:
    def test_commuting_generators(self):
        assert are_equal(EDGE, parse_word("a b"), parse_word("b a"))

    def test_free_generators(self):
        assert not are_equal(FREE2, parse_word("a b"), parse_word("b a"))

    def test_any_word_equals_itself(self):
        rng = random.Random(14)
        for _ in range(100):
            g = random_graph(rng.randint(1, 5), rng.random(), rng.getrandbits(32))
            w = random_word(rng, g)
            assert are_equal(Raag(g), w, w)


class TestOracle:
    def test_empty_word(self):
        assert oracle_is_trivial(EDGE, ())

    def test_single_letter_never_trivial(self):
        rng = random.Random(15)
        for _ in range(50):
            g = random_graph(rng.randint(1, 5), rng.random(), rng.getrandbits(32))
            v = g.vertices[rng.randrange(len(g.vertices))]
            assert not oracle_is_trivial(Raag(g), ((v, 1),))

    def test_commutator_both_ways(self):
        assert oracle_is_trivial(EDGE, COMMUTATOR)
        assert not oracle_is_trivial(FREE2, COMMUTATOR)

    def test_bound_measured_after_free_reduction(self):
        w = concat(*([(("a", 1), ("a", -1))] * 20))
        assert oracle_is_trivial(EDGE, w)  # 40 letters, reduces to none

    def test_refuses_oversized_words(self):
        w = tuple(("a", 1) if i % 2 == 0 else ("b", 1) for i in range(16))
        with pytest.raises(OracleBoundError):
            oracle_is_trivial(EDGE, w)
        assert not oracle_is_trivial(EDGE, w, max_reduced_length=16)

    def test_agrees_with_solver_on_random_corpus(self):
        rng = random.Random(16)
        for _ in range(1500):
            g = random_graph(rng.randint(1, 5), rng.random(), rng.getrandbits(32))
            w = random_word(rng, g)
            assert oracle_is_trivial(Raag(g), w) == is_trivial(Raag(g), w)

    def test_solver_agrees_with_quadratic_deletion_at_medium_length(self):
        # the BFS oracle stops at reduced length 14; the quadratic
        # pair-deletion method covers words an order of magnitude longer
        rng = random.Random(23)
        for _ in range(300):
            g = random_graph(rng.randint(1, 6), rng.random(), rng.getrandbits(32))
            group = Raag(g)
            kind = rng.random()
            if kind < 0.4:
                w = random_word(rng, g, max_len=200)
            elif kind < 0.7:
                w = sample_trivial_word(group, 2 * rng.randint(10, 100), rng.getrandbits(32))
            else:
                w = sample_nontrivial_word(group, rng.randint(20, 200), rng.getrandbits(32))
            assert is_trivial(group, w) == quadratic_is_trivial(g, w)

    def test_agrees_with_structure_oracle_exhaustively(self):
        # every graph shape on <= 3 vertices, every word of length <= 4,
        # plus a random slab of longer words
        shapes = [
            SimplicialGraph(("a",)),
            SimplicialGraph(("a", "b")),
            SimplicialGraph(("a", "b"), [("a", "b")]),
            SimplicialGraph(("a", "b", "c")),
            SimplicialGraph(("a", "b", "c"), [("a", "b")]),
            SimplicialGraph(("a", "b", "c"), [("a", "b"), ("b", "c")]),
            SimplicialGraph(("a", "b", "c"), [("a", "b"), ("b", "c"), ("a", "c")]),
        ]
        rng = random.Random(17)
        for g in shapes:
            gr = Raag(g)
            alphabet = [(v, s) for v in g.vertices for s in (1, -1)]
            for length in range(0, 5):
                for w in itertools.product(alphabet, repeat=length):
                    assert oracle_is_trivial(gr, w) == structure_is_trivial(g, w)
            for _ in range(400):
                w = tuple(alphabet[rng.randrange(len(alphabet))]
                          for _ in range(rng.randint(5, 6)))
                assert oracle_is_trivial(gr, w) == structure_is_trivial(g, w)

    def test_accepts_every_relator_product(self):
        # everything reachable by inserting relators and cancelling pairs
        # is trivial by construction; the oracle must agree
        shapes = [
            SimplicialGraph(("a", "b"), [("a", "b")]),
            SimplicialGraph(("a", "b", "c"), [("a", "b")]),
            SimplicialGraph(("a", "b", "c"), [("a", "b"), ("b", "c")]),
        ]
        for g in shapes:
            gr = Raag(g)
            ball = normal_closure_ball(g, cap=6)
            assert len(ball) > 10
            for w in ball:
                assert oracle_is_trivial(gr, w)
                assert is_trivial(gr, w)


class TestSamplers:
    def test_trivial_sampler_contract(self):
        rng = random.Random(18)
        for _ in range(200):
            g = random_graph(rng.randint(1, 6), rng.random(), rng.getrandbits(32))
            length = 2 * rng.randint(1, 15)
            w = sample_trivial_word(Raag(g), length, rng.getrandbits(32))
            assert len(w) == length
            assert is_trivial(Raag(g), w)

    def test_trivial_sampler_verified_by_oracle_at_small_length(self):
        rng = random.Random(19)
        for _ in range(100):
            g = random_graph(rng.randint(1, 4), rng.random(), rng.getrandbits(32))
            w = sample_trivial_word(Raag(g), 2 * rng.randint(1, 6), rng.getrandbits(32))
            assert oracle_is_trivial(Raag(g), w)

    def test_nontrivial_sampler_contract(self):
        rng = random.Random(20)
        for _ in range(200):
            g = random_graph(rng.randint(1, 6), rng.random(), rng.getrandbits(32))
            length = rng.randint(1, 30)
            w = sample_nontrivial_word(Raag(g), length, rng.getrandbits(32))
            assert not is_trivial(Raag(g), w)
            assert abs(len(w) - length) <= max(1, length // 4)

    def test_nontrivial_sampler_verified_by_oracle_at_small_length(self):
        rng = random.Random(21)
        for _ in range(100):
            g = random_graph(rng.randint(1, 4), rng.random(), rng.getrandbits(32))
            w = sample_nontrivial_word(Raag(g), rng.randint(1, 11), rng.getrandbits(32))
            assert not oracle_is_trivial(Raag(g), w)

    def test_determinism(self):
        g = Raag(random_graph(5, 0.5, 77))
        assert sample_trivial_word(g, 20, 123) == sample_trivial_word(g, 20, 123)
        assert sample_nontrivial_word(g, 20, 123) == sample_nontrivial_word(g, 20, 123)
        assert sample_trivial_word(g, 20, 123) != sample_trivial_word(g, 20, 124)

    def test_single_vertex_nontrivial_word_has_odd_exponent(self):
        g = Raag(SimplicialGraph(("a",)))
        for seed in range(20):
            w = sample_nontrivial_word(g, 9, seed)
            assert exponent_sums(w)["a"] % 2 == 1

    def test_edgeless_graph_still_samples_trivial_words(self):
        g = Raag(SimplicialGraph(("a", "b", "c")))
        w = sample_trivial_word(g, 12, 5)
        assert is_trivial(g, w) and len(w) == 12

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            sample_trivial_word(EDGE, 7, 0)  # odd
        with pytest.raises(ValueError):
            sample_trivial_word(EDGE, 0, 0)
        with pytest.raises(ValueError):
            sample_nontrivial_word(EDGE, 0, 0)
        empty = Raag(SimplicialGraph(()))
        with pytest.raises(ValueError):
            sample_trivial_word(empty, 4, 0)
        with pytest.raises(ValueError):
            sample_nontrivial_word(empty, 4, 0)


class TestPresentationText:
    def test_edge_graph(self):
        from raagcrypt.raag import presentation_text
        assert presentation_text(EDGE) == "< a, b | [a,b] >"

    def test_edgeless_graph(self):
        from raagcrypt.raag import presentation_text
        assert presentation_text(FREE2.graph) == "< a, b | >"

    def test_relators_follow_declaration_order(self):
        from raagcrypt.raag import presentation_text
        g = SimplicialGraph(("c", "a", "b"), [("a", "b"), ("c", "b")])
        assert presentation_text(g) == "< c, a, b | [c,b], [a,b] >"


class TestGeneratorHomomorphism:
    def test_constant_map_extends(self):
        g = SimplicialGraph(("a", "b"), [("a", "b")])
        t = SimplicialGraph(("x",))
        assert verify_generator_homomorphism(VertexMap(g, t, {"a": "x", "b": "x"}))

    def test_edge_to_edgeless_fails(self):
        g = SimplicialGraph(("a", "b"), [("a", "b")])
        t = SimplicialGraph(("x", "y"))
        assert not verify_generator_homomorphism(VertexMap(g, t, {"a": "x", "b": "y"}))

    def test_strict_implies_relaxed(self):
        rng = random.Random(22)
        from raagcrypt.graphs import find_graph_homomorphism, verify_graph_homomorphism
        found = 0
        while found < 60:
            a = random_graph(rng.randint(1, 5), rng.random(), rng.getrandbits(32))
            b = random_graph(rng.randint(3, 6), 0.7, rng.getrandbits(32))
            f = find_graph_homomorphism(a, b, budget=200_000)
            if f is None:
                continue
            found += 1
            assert verify_graph_homomorphism(f)
            assert verify_generator_homomorphism(f)
