import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import dag_game, matching_pennies, naive_psne_set, spectator_pennies
from psnehom.errors import PreconditionError
from psnehom.game2hom import decide_psne
from psnehom.games import ColoredHypergraphicalGame, brute_force_psne, is_psne
from psnehom.graphs import ColoredHypergraph, Digraph, is_irreducible
from psnehom.random_instances import random_chg, random_digraph, random_graphical_game
from psnehom.reduction import extend_psne, reduce_digraph, reduce_game


def _is_dag(g):
    indeg = {v: len(g.in_neighbors(v)) for v in g.vertices}
    ready = [v for v in g.vertices if indeg[v] == 0]
    seen = 0
    while ready:
        v = ready.pop()
        seen += 1
        for w in g.successors(v):
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    return seen == len(g.vertices)


def test_path_fully_reduces():
    g = Digraph(["1", "2", "3"], [("1", "2"), ("2", "3")])
    red, trace = reduce_digraph(g)
    assert not red.vertices
    assert trace.removal_rounds == ({"3"}, {"2"}, {"1"})
    assert trace.reduced_vertices == {"1", "2", "3"}


def test_two_cycle_unchanged():
    g = Digraph(["1", "2"], [("1", "2"), ("2", "1")])
    red, trace = reduce_digraph(g)
    assert red == g and trace.removal_rounds == ()


def test_cycle_with_tail():
    g = Digraph(["1", "2", "3", "4"], [("1", "2"), ("2", "1"), ("2", "3"), ("3", "4")])
    red, trace = reduce_digraph(g)
    assert red.vertices == ("1", "2") and red.arcs == {("1", "2"), ("2", "1")}
    assert trace.removal_rounds == ({"4"}, {"3"})
    assert trace.kept_vertices == ("1", "2")


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 8))
def test_reduction_properties(seed, n):
    rng = random.Random(seed)
    g = random_digraph(rng, n, rng.choice([0.15, 0.3, 0.5]))
    red, trace = reduce_digraph(g)
    again, trace2 = reduce_digraph(red)
    assert again == red and trace2.removal_rounds == ()
    assert is_irreducible(red)
    assert (not red.vertices) == _is_dag(g)
    # each round removes exactly the sinks of what was left before it
    alive = set(g.vertices)
    for rnd in trace.removal_rounds:
        sub = g.subgraph(alive)
        assert rnd == {v for v in sub.vertices if sub.out_degree(v) == 0}
        alive -= rnd
    assert alive == set(trace.kept_vertices)


def test_dag_game_reduces_to_empty_and_extends():
    game = dag_game()
    assert reduce_game(game).players == ()
    prof = extend_psne(game, {})
    assert is_psne(game, prof)
    assert prof == {"1": 1, "2": 2, "3": 1}


def test_spectator_is_stripped():
    reduced = reduce_game(spectator_pennies())
    mp = matching_pennies()
    assert reduced.graph == mp.graph
    assert dict(reduced.local_utilities) == dict(mp.local_utilities)


def test_spectator_pipeline_reports_none():
    game = spectator_pennies()
    assert brute_force_psne(reduce_game(game)) is None
    res = decide_psne(game)
    assert not res.exists and res.witness is None


def test_extend_rejects_non_equilibrium():
    with pytest.raises(PreconditionError):
        extend_psne(spectator_pennies(), {"row": "H", "col": "H"})


def test_chg_reduction_drops_edges_and_unused_colors():
    h = ColoredHypergraph(
        ["1", "2", "3"],
        [(("1", "2"), "a"), (("2", "1"), "a"), (("3", "1", "2"), "b")],
    )
    game = ColoredHypergraphicalGame(
        h, 2, {"a": {k: k[0] * k[1] for k in [(1, 1), (1, 2), (2, 1), (2, 2)]},
               "b": {(x, y, z): x for x in (1, 2) for y in (1, 2) for z in (1, 2)}})
    red = reduce_game(game)
    assert red.players == ("1", "2")
    assert set(red.color_utilities) == {"a"}
    assert len(red.hypergraph.edges) == 2


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_existence_preserved_graphical(seed):
    rng = random.Random(seed)
    game = random_graphical_game(rng, rng.randint(1, 6), [rng.randint(1, 3) for _ in range(6)],
                                 p=rng.choice([0.2, 0.35]))
    reduced = reduce_game(game)
    full = naive_psne_set(game)
    assert bool(full) == bool(naive_psne_set(reduced))
    if full:
        sub = brute_force_psne(reduced)
        assert is_psne(game, extend_psne(game, sub))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_existence_preserved_chg(seed):
    rng = random.Random(seed)
    game = random_chg(rng, rng.randint(1, 5), rng.randint(1, 3), max_arity=2)
    reduced = reduce_game(game)
    assert (brute_force_psne(game) is None) == (brute_force_psne(reduced) is None)
    sub = brute_force_psne(reduced)
    if sub is not None:
        assert is_psne(game, extend_psne(game, sub))
