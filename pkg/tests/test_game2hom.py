import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import coordination, dag_game, matching_pennies, naive_homs, naive_psne_set
from psnehom.errors import CapExceeded, StructuralError
from psnehom.game2hom import (
    chg_to_graphical,
    decide_psne,
    game_to_hom,
    graphical_game_to_hom,
    graphical_to_chg,
    profile_from_chg,
    profile_to_chg,
)
from psnehom.gadgets import example15
from psnehom.games import ColoredHypergraphicalGame, all_psne, brute_force_psne, graphical_game, is_psne
from psnehom.graphs import ColoredHypergraph, Digraph, induced_hypergraph
from psnehom.homomorphism import HomInstance, brute_force_hom, check_homomorphism
from psnehom.random_instances import random_chg, random_graphical_game, random_utilities


def unary_game(u1, u2):
    h = ColoredHypergraph(["v"], [(("v",), "c")])
    return ColoredHypergraphicalGame(h, 2, {"c": {(1,): u1, (2,): u2}})


def test_unique_argmax_edge():
    inst = game_to_hom(unary_game(5, 7))
    assert inst.right.vertices == ("1", "2")
    assert set(inst.right.edges) == {(("2",), "c")}


def test_ties_give_every_maximizer():
    inst = game_to_hom(unary_game(3, 3))
    assert set(inst.right.edges) == {(("1",), "c"), (("2",), "c")}


def test_matching_pennies_has_no_homomorphism():
    chg = graphical_to_chg(matching_pennies())
    assert len(chg.hypergraph.colors) == 2
    inst = game_to_hom(chg)
    assert brute_force_hom(inst) is None and naive_homs(inst.left, inst.right) == []


def test_left_side_is_the_game_hypergraph():
    chg = random_chg(random.Random(3), 5, 3)
    assert game_to_hom(chg).left == chg.hypergraph


# -- graphical to colored -------------------------------------------------------------------

def test_matching_pennies_conversion_keeps_psne_sets():
    mp = matching_pennies()
    chg = graphical_to_chg(mp)
    assert chg.action_labels == ("H", "T")
    assert all_psne(chg) == all_psne(mp) == []
    co = coordination()
    assert [profile_from_chg(co, p) for p in all_psne(graphical_to_chg(co))] == all_psne(co)


def test_isolated_player():
    g = graphical_game(Digraph(["solo"]), {"solo": ("a", "b")}, lambda _v, k: int(k[0] == "b"))
    chg = graphical_to_chg(g)
    assert chg.hypergraph.edges == ((("solo",), "solo"),)
    assert brute_force_psne(chg) == {"solo": 2}


def test_unequal_action_counts_rejected():
    g = graphical_game(Digraph(["a", "b"]), {"a": (0,), "b": (0, 1)}, lambda _v, _k: 0)
    with pytest.raises(StructuralError, match="dummy"):
        graphical_to_chg(g)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_conversion_preserves_psne_sets(seed):
    rng = random.Random(seed)
    game = random_graphical_game(rng, rng.randint(1, 5), rng.randint(1, 3))
    chg = graphical_to_chg(game)
    assert chg.hypergraph == induced_hypergraph(game.graph)
    expected = naive_psne_set(game)
    assert [profile_from_chg(game, p) for p in all_psne(chg)] == expected
    assert all(profile_to_chg(game, p) in all_psne(chg) for p in expected)
    back = chg_to_graphical(chg)
    assert all_psne(back) == all_psne(chg)


# -- best-response encoding ------------------------------------------------------------------

@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_best_response_encoding_equivalence_and_witnesses(seed):
    rng = random.Random(seed)
    chg = random_chg(rng, rng.randint(1, 5), rng.randint(1, 3))
    inst = game_to_hom(chg)
    homs = naive_homs(inst.left, inst.right)
    psne = naive_psne_set(chg)
    assert [{v: int(a) for v, a in h.items()} for h in homs] == psne
    for p in psne:
        assert check_homomorphism(inst, {v: str(a) for v, a in p.items()})


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_player_qualified_encoding(seed):
    rng = random.Random(seed)
    game = random_graphical_game(rng, rng.randint(1, 4), [rng.randint(1, 3) for _ in range(4)])
    inst, decode = graphical_game_to_hom(game)
    homs = naive_homs(inst.left, inst.right)
    decoded = [{v: decode[t][1] for v, t in h.items()} for h in homs
               if all(decode[t][0] == v for v, t in h.items())]
    assert decoded == naive_psne_set(game)


# -- pipeline ------------------------------------------------------------------------------------

def test_dag_game_short_circuits():
    res = decide_psne(dag_game())
    assert res.exists and res.backend == "greedy"
    assert is_psne(dag_game(), res.witness)


def test_matching_pennies_pipeline():
    res = decide_psne(matching_pennies())
    assert not res.exists and res.witness is None and res.backend == "dp"


def test_brute_fallback_and_refusal():
    game = random_utilities(random.Random(0), example15(1), 2)
    res = decide_psne(game, width_threshold=1)
    assert res.backend == "brute" and res.width == 3
    assert res.exists == (brute_force_psne(game) is not None)
    with pytest.raises(CapExceeded, match="decide_psne"):
        decide_psne(game, width_threshold=1, hom_cap=4)


def test_core_option_on_example15():
    rng = random.Random(11)
    for _ in range(5):
        game = random_utilities(rng, example15(2), 2)
        plain = decide_psne(game)
        cored = decide_psne(game, use_core=True, core_cap=12, hom_cap=10**8)
        assert plain.exists == cored.exists
        assert cored.notes and "4 of 12" in cored.notes[0]
        if cored.exists:
            assert is_psne(game, cored.witness)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.booleans())
def test_pipeline_matches_oracle(seed, colored):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    if colored:
        game = random_chg(rng, n, rng.randint(1, 3))
    else:
        game = random_graphical_game(rng, n, [rng.randint(1, 3) for _ in range(n)], p=rng.choice([0.2, 0.4]))
    res = decide_psne(game)
    assert res.exists == bool(naive_psne_set(game))
    if res.exists:
        assert is_psne(game, res.witness)
    cored = decide_psne(game, use_core=True)
    assert cored.exists == res.exists
    if cored.exists:
        assert is_psne(game, cored.witness)


def test_witness_uses_hom_instance_types():
    inst = game_to_hom(unary_game(1, 2))
    assert isinstance(inst, HomInstance)
