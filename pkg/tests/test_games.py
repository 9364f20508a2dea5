import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from helpers import coordination, dag_game, matching_pennies, naive_psne_set
from psnehom.errors import CapExceeded, StructuralError
from psnehom.game2hom import chg_to_graphical
from psnehom.gadgets import cycle_game, strongly_connected_game
from psnehom.games import (
    ColoredHypergraphicalGame,
    GraphicalGame,
    all_psne,
    best_responses,
    brute_force_psne,
    enumerate_profiles,
    graphical_game,
    is_psne,
    utility,
)
from psnehom.graphs import ColoredHypergraph, Digraph
from psnehom.random_instances import random_chg, random_graphical_game


def unary_chg():
    h = ColoredHypergraph(["v"], [(("v",), "c")])
    return ColoredHypergraphicalGame(h, 2, {"c": {(1,): 5, (2,): 7}})


# -- utilities and best responses ------------------------------------------------

def test_matching_pennies_utility():
    assert utility(matching_pennies(), "row", {"row": "H", "col": "H"}) == 1
    assert utility(matching_pennies(), "col", {"row": "H", "col": "H"}) == -1


def test_unary_chg_utility():
    assert utility(unary_chg(), "v", {"v": 2}) == 7


def test_best_response_matching_pennies():
    assert best_responses(matching_pennies(), "row", {"col": "H"}) == ("H",)


def test_constant_player_best_responds_with_everything():
    g = graphical_game(Digraph(["a"]), {"a": ("x", "y", "z")}, lambda _v, _k: 0)
    assert best_responses(g, "a", {}) == ("x", "y", "z")


@pytest.mark.parametrize("p", [2, 3, 5])
def test_cycle_best_response_is_successor(p):
    game = cycle_game(3, p)
    for a in range(p):
        # actions are encoded 1..p for labels 0..p-1
        assert best_responses(game, "v1", {"v0": a + 1}) == ((a + 1) % p + 1,)


def test_float_utilities_rejected():
    with pytest.raises(StructuralError):
        graphical_game(Digraph(["a"]), {"a": ("x",)}, lambda _v, _k: 0.5)


def test_tables_must_be_total():
    g = Digraph(["a"])
    with pytest.raises(StructuralError):
        GraphicalGame(g, {"a": ("x", "y")}, {"a": {("x",): 1}})
    h = ColoredHypergraph(["v"], [(("v",), "c")])
    with pytest.raises(StructuralError):
        ColoredHypergraphicalGame(h, 2, {"c": {(1,): 1}})


def test_chg_requires_game_hypergraph():
    h = ColoredHypergraph(["a", "b"], [(("a", "b"), "c")])
    with pytest.raises(StructuralError):
        ColoredHypergraphicalGame(h, 1, {"c": {(1, 1): 0}})


# -- PSNE -------------------------------------------------------------------------

def test_coordination_psne():
    assert is_psne(coordination(), {"1": "a", "2": "a"})
    assert not is_psne(coordination(), {"1": "a", "2": "b"})
    assert brute_force_psne(coordination()) == {"1": "a", "2": "a"}


def test_matching_pennies_has_no_psne():
    game = matching_pennies()
    assert not any(is_psne(game, p) for p in enumerate_profiles(game))
    assert brute_force_psne(game) is None


def test_dag_greedy_profile_is_psne():
    # topological greedy: 1 plays its first best response, then 2, then 3
    assert is_psne(dag_game(), {"1": 1, "2": 2, "3": 1})


def test_enumeration_order_is_odometer():
    g = graphical_game(Digraph(["a", "b"]), {"a": (0, 1), "b": ("x", "y")}, lambda _v, _k: 0)
    assert [tuple(p.values()) for p in enumerate_profiles(g)] == [(0, "x"), (0, "y"), (1, "x"), (1, "y")]


def test_brute_force_cap():
    g = graphical_game(Digraph(["a", "b"]), {"a": (0, 1, 2), "b": (0, 1, 2)}, lambda _v, _k: 0)
    with pytest.raises(CapExceeded) as err:
        brute_force_psne(g, cap=8)
    assert err.value.size == 9 and err.value.cap == 8


def test_two_cycle_successor_game_has_no_psne():
    game = strongly_connected_game(Digraph(["1", "2"], [("1", "2"), ("2", "1")]))
    assert game.m == 3
    assert brute_force_psne(game) is None


# -- oracle agreement -------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_brute_force_matches_naive_oracle_graphical(seed):
    rng = random.Random(seed)
    game = random_graphical_game(rng, rng.randint(1, 4), [rng.randint(1, 3) for _ in range(4)])
    expected = naive_psne_set(game)
    assert all_psne(game) == expected
    assert brute_force_psne(game) == (expected[0] if expected else None)
    for prof in enumerate_profiles(game):
        assert is_psne(game, prof) == (prof in expected)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_chg_expansion_preserves_utilities_and_psne(seed):
    rng = random.Random(seed)
    chg = random_chg(rng, rng.randint(1, 5), rng.randint(1, 3))
    gg = chg_to_graphical(chg)
    for prof in enumerate_profiles(chg):
        for v in chg.players:
            assert utility(chg, v, prof) == utility(gg, v, prof)
    assert all_psne(chg) == all_psne(gg) == naive_psne_set(chg)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.fractions(min_value=Fraction(1, 10), max_value=10),
       st.fractions(min_value=-10, max_value=10))
def test_positive_affine_rescaling_keeps_best_responses(seed, alpha, beta):
    rng = random.Random(seed)
    game = random_graphical_game(rng, rng.randint(1, 4), 2)
    v = rng.choice(game.players)
    tables = dict(game.local_utilities)
    tables[v] = {k: alpha * u + beta for k, u in tables[v].items()}
    scaled = GraphicalGame(game.graph, game.action_sets, tables)
    for prof in enumerate_profiles(game):
        for w in game.players:
            assert best_responses(game, w, prof) == best_responses(scaled, w, prof)
    assert all_psne(game) == all_psne(scaled)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_best_responses_never_empty(seed):
    rng = random.Random(seed)
    game = random_graphical_game(rng, rng.randint(1, 4), [rng.randint(1, 3) for _ in range(4)])
    for prof in enumerate_profiles(game):
        for w in game.players:
            assert best_responses(game, w, prof)
