"""Iterated sink removal and greedy extension of equilibria.

A sink's action influences nobody, so it can always best-respond last.
Repeatedly stripping all current sinks leaves the reduced graph, and any
PSNE of the reduced game extends to the full game by assigning the removed
players in reverse removal order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError
from .games import ColoredHypergraphicalGame, Game, GraphicalGame, best_responses, is_psne
from .graphs import ColoredHypergraph, Digraph


@dataclass(frozen=True)
class ReductionTrace:
    removal_rounds: tuple[frozenset[str], ...]
    kept_vertices: tuple[str, ...]

    @property
    def reduced_vertices(self) -> frozenset[str]:
        return frozenset().union(*self.removal_rounds)


def reduce_digraph(g: Digraph) -> tuple[Digraph, ReductionTrace]:
    alive = set(g.vertices)
    out_deg = {v: g.out_degree(v) for v in g.vertices}
    rounds = []
    while True:
        sinks = {v for v in alive if out_deg[v] == 0}
        if not sinks:
            break
        rounds.append(frozenset(sinks))
        alive -= sinks
        for v in sinks:
            for u in g.in_neighbors(v):
                out_deg[u] -= 1
    kept = tuple(v for v in g.vertices if v in alive)
    return g.subgraph(alive), ReductionTrace(tuple(rounds), kept)


def reduce_game(game: Game) -> Game:
    """Restrict ``game`` to the players that survive sink removal."""
    _, trace = reduce_digraph(game.digraph)
    kept = set(trace.kept_vertices)
    for v in kept:
        if not all(u in kept for u in game.neighborhood(v)):
            # cannot happen: a kept vertex keeps all its in-neighbors
            raise AssertionError(f"kept {v!r} reads a removed player")

    if isinstance(game, GraphicalGame):
        reduced = GraphicalGame(
            game.graph.subgraph(kept),
            {v: game.action_sets[v] for v in trace.kept_vertices},
            {v: game.local_utilities[v] for v in trace.kept_vertices},
        )
        return reduced

    h = game.hypergraph
    edges = [e for e in h.edges if all(v in kept for v in e.tuple)]
    sub = ColoredHypergraph(trace.kept_vertices, edges)
    used = set(sub.colors)
    reduced = ColoredHypergraphicalGame(
        sub,
        game.m,
        {c: t for c, t in game.color_utilities.items() if c in used},
        game.action_labels,
    )
    return reduced


def extend_psne(game: Game, reduced_profile, trace: ReductionTrace | None = None) -> dict:
    """Extend a PSNE of the reduced game to a PSNE of ``game``.

    Removed players are assigned in reverse removal order, each taking its
    first best response (in declared action order) to already-fixed
    neighbors.  Raises :class:`PreconditionError` if the result is not an
    equilibrium, which means ``reduced_profile`` was not one.
    """
    if trace is None:
        _, trace = reduce_digraph(game.digraph)
    profile = {v: reduced_profile[v] for v in trace.kept_vertices}
    for removed in reversed(trace.removal_rounds):
        for v in sorted(removed, key=game.players.index):
            profile[v] = best_responses(game, v, profile)[0]
    profile = {v: profile[v] for v in game.players}
    if not is_psne(game, profile):
        raise PreconditionError("extended profile is not a PSNE; input was not a PSNE of the reduced game")
    return profile
