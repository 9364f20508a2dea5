"""From games to homomorphism instances, and the PSNE decision pipeline.

For a colored hypergraphical game the left structure is the game's own
hypergraph.  The right structure has one vertex per action and, for each
color ``c`` and each tuple of neighbor actions, an edge ``(a, a1..ar)`` of
color ``c`` for every best response ``a``.  Homomorphisms are then exactly
the pure Nash equilibria.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable

from .errors import CapExceeded, StructuralError
from .games import (
    ColoredHypergraphicalGame,
    Game,
    GraphicalGame,
    best_responses_local,
)
from .graphs import ColoredHypergraph, induced_digraph, induced_hypergraph, primal_graph
from .homomorphism import (
    DEFAULT_CORE_CAP,
    DEFAULT_HOM_CAP,
    HomInstance,
    brute_force_hom,
    core_with_retraction,
    dp_hom,
    search_space,
)
from .reduction import ReductionTrace, extend_psne, reduce_digraph, reduce_game
from .treewidth import heuristic_decomposition

log = logging.getLogger(__name__)

DEFAULT_WIDTH_THRESHOLD = 12


def game_to_hom(game: ColoredHypergraphicalGame) -> HomInstance:
    right_vertices = [str(a) for a in range(1, game.m + 1)]
    edges = []
    h = game.hypergraph
    for c in h.colors:
        r = h.arity(c) - 1
        for others in itertools.product(range(1, game.m + 1), repeat=r):
            values = {a: game.color_utilities[c][(a,) + others] for a in range(1, game.m + 1)}
            top = max(values.values())
            for a, v in values.items():
                if v == top:
                    edges.append((tuple(str(x) for x in (a,) + others), c))
    return HomInstance(h, ColoredHypergraph(right_vertices, edges))


def graphical_game_to_hom(game: GraphicalGame) -> tuple[HomInstance, dict[str, tuple[str, object]]]:
    """Best-response encoding of a graphical game with arbitrary action sets.

    Left is the induced hypergraph (one color per player).  Right vertices
    are player-qualified actions ``"<player index>:<action index>"``, so
    differing action sets need no padding.  Returns the instance and a map
    from right vertices back to ``(player, action)``.
    """
    players = game.players
    pidx = {v: i for i, v in enumerate(players)}
    names = {}
    decode = {}
    for v in players:
        for k, a in enumerate(game.actions(v)):
            name = f"{pidx[v]}:{k}"
            names[(v, a)] = name
            decode[name] = (v, a)
    edges = []
    for v in players:
        nbhd = game.neighborhood(v)
        for others in itertools.product(*(game.actions(u) for u in nbhd[1:])):
            for a in best_responses_local(game, v, others):
                tup = tuple(names[(u, x)] for u, x in zip(nbhd, (a,) + others))
                edges.append((tup, v))
    right = ColoredHypergraph(list(decode), edges)
    return HomInstance(induced_hypergraph(game.graph), right), decode


def graphical_to_chg(game: GraphicalGame) -> ColoredHypergraphicalGame:
    """Induced colored hypergraphical game: one fresh color per player.

    Player ``v``'s ``k``-th declared action becomes action ``k + 1``.  All
    players must have the same number of actions.
    """
    sizes = {len(game.actions(v)) for v in game.players}
    if len(sizes) > 1:
        raise StructuralError(
            "players have different numbers of actions; colored hypergraphical games need a "
            "common count m (add dominated dummy actions before converting)"
        )
    m = sizes.pop() if sizes else 1
    hyper = induced_hypergraph(game.graph)
    tables = {}
    for v in game.players:
        nbhd = game.neighborhood(v)
        acts = [game.actions(u) for u in nbhd]
        tables[v] = {
            key: game.local_utility(v, tuple(acts[k][key[k] - 1] for k in range(len(key))))
            for key in itertools.product(range(1, m + 1), repeat=len(nbhd))
        }
    labels = None
    if game.players and all(game.actions(v) == game.actions(game.players[0]) for v in game.players):
        labels = tuple(str(a) for a in game.actions(game.players[0]))
        if len(set(labels)) != len(labels):
            labels = None
    return ColoredHypergraphicalGame(hyper, m, tables, labels)


def chg_to_graphical(game: ColoredHypergraphicalGame) -> GraphicalGame:
    """Expand a colored hypergraphical game into per-player local tables."""
    graph = induced_digraph(game.hypergraph)
    acts = tuple(range(1, game.m + 1))
    tables = {}
    for v in game.players:
        edge = game.neighborhood(v)
        order = (v,) + graph.in_neighbors(v)
        where = [edge.index(u) for u in order]
        table = {}
        for key in itertools.product(acts, repeat=len(order)):
            along_edge = [None] * len(edge)
            for k, w in enumerate(where):
                along_edge[w] = key[k]
            table[key] = game.local_utility(v, tuple(along_edge))
        tables[v] = table
    return GraphicalGame(graph, {v: acts for v in game.players}, tables)


def profile_to_chg(game: GraphicalGame, profile) -> dict:
    return {v: game.actions(v).index(profile[v]) + 1 for v in game.players}


def profile_from_chg(game: GraphicalGame, profile) -> dict:
    return {v: game.actions(v)[profile[v] - 1] for v in game.players}


@dataclass(frozen=True)
class PsneResult:
    exists: bool
    witness: dict | None
    trace: ReductionTrace
    width: int | None = None
    backend: str = "none"
    notes: tuple[str, ...] = field(default_factory=tuple)


def _encode(game: Game) -> tuple[HomInstance, Callable[[dict], dict]]:
    if isinstance(game, GraphicalGame):
        instance, decode = graphical_game_to_hom(game)
        return instance, lambda h: {v: decode[t][1] for v, t in h.items()}
    instance = game_to_hom(game)
    return instance, lambda h: {v: int(t) for v, t in h.items()}


def solve_hom(instance: HomInstance, width_threshold: int = DEFAULT_WIDTH_THRESHOLD,
              hom_cap: int = DEFAULT_HOM_CAP, stage: str = "hom") -> tuple[dict | None, int, str]:
    """Pick a backend by decomposition width and solve; returns (witness, width, backend)."""
    decomp = heuristic_decomposition(primal_graph(instance.left))
    width = decomp.width
    if width <= width_threshold:
        return dp_hom(instance, decomp), width, "dp"
    size = search_space(instance)
    if size <= hom_cap:
        return brute_force_hom(instance, hom_cap), width, "brute"
    raise CapExceeded(f"{stage}: width {width} above threshold {width_threshold} and brute force", size, hom_cap)


def decide_psne(
    game: Game,
    width_threshold: int = DEFAULT_WIDTH_THRESHOLD,
    hom_cap: int = DEFAULT_HOM_CAP,
    use_core: bool = False,
    core_cap: int = DEFAULT_CORE_CAP,
) -> PsneResult:
    """Decide whether ``game`` has a PSNE and return one if so.

    Pipeline: strip sinks, encode the reduced game as a homomorphism
    instance, solve it (tree-decomposition DP when the heuristic width is
    at most ``width_threshold``, else brute force within ``hom_cap``), decode
    the homomorphism to a profile of the reduced game and extend it greedily
    to the removed players.
    """
    _, trace = reduce_digraph(game.digraph)
    reduced = reduce_game(game)
    if not reduced.players:
        witness = extend_psne(game, {}, trace)
        return PsneResult(True, witness, trace, None, "greedy")

    instance, decode = _encode(reduced)
    notes = []
    retraction = None
    if use_core and len(instance.left.vertices) <= core_cap:
        core_left, retraction = core_with_retraction(instance.left, core_cap, hom_cap)
        notes.append(f"core has {len(core_left.vertices)} of {len(instance.left.vertices)} vertices")
        solve_on = HomInstance(core_left, instance.right)
    else:
        solve_on = instance
    h, width, backend = solve_hom(solve_on, width_threshold, hom_cap, stage="decide_psne")
    log.debug("decide_psne: backend=%s width=%s", backend, width)
    if h is None:
        return PsneResult(False, None, trace, width, backend, tuple(notes))
    if retraction is not None:
        h = {v: h[retraction[v]] for v in instance.left.vertices}
    witness = extend_psne(game, decode(h), trace)
    return PsneResult(True, witness, trace, width, backend, tuple(notes))
