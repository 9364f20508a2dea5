"""Graphical games, colored hypergraphical games and PSNE checks.

Both game classes expose the same small surface used by everything else:

``players``               players in vertex order
``actions(i)``            the ordered action list of player ``i``
``neighborhood(i)``       the players ``i``'s utility reads, ``i`` first
``local_utility(i, t)``   utility of ``i`` for the local tuple ``t``
                          (actions of ``neighborhood(i)`` in that order)

Utilities are :class:`fractions.Fraction` so argmax ties are exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Hashable, Iterator, Mapping, Sequence, Union

from .errors import CapExceeded, StructuralError
from .graphs import ColoredHypergraph, Digraph, induced_digraph

Action = Hashable
Profile = Mapping[str, Action]

DEFAULT_PROFILE_CAP = 10**7


def as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise StructuralError("utilities must be exact rationals, not floats")
    return Fraction(x)


@dataclass(frozen=True)
class GraphicalGame:
    """A game on a digraph; player ``i`` reads itself and its in-neighbors.

    ``local_utilities[i]`` maps tuples ordered as ``(i, *in_neighbors(i))``
    (in-neighbors ascending) to utilities, and must be total.
    """

    graph: Digraph
    action_sets: Mapping[str, tuple]
    local_utilities: Mapping[str, Mapping[tuple, Fraction]]

    def __post_init__(self):
        sets = {}
        for v in self.graph.vertices:
            if v not in self.action_sets:
                raise StructuralError(f"no action set for player {v!r}")
            acts = tuple(self.action_sets[v])
            if not acts:
                raise StructuralError(f"player {v!r} has no actions")
            if len(set(acts)) != len(acts):
                raise StructuralError(f"player {v!r} has duplicate actions")
            sets[v] = acts
        extra = set(self.action_sets) - set(self.graph.vertices)
        if extra:
            raise StructuralError(f"action sets for unknown players {sorted(extra)!r}")
        tables = {}
        for v in self.graph.vertices:
            table = self.local_utilities.get(v)
            if table is None:
                raise StructuralError(f"no utility table for player {v!r}")
            nbhd = (v,) + self.graph.in_neighbors(v)
            clean = {}
            for key in itertools.product(*(sets[u] for u in nbhd)):
                if key not in table:
                    raise StructuralError(f"utility table of {v!r} misses local profile {key!r}")
                clean[key] = as_fraction(table[key])
            if len(table) != len(clean):
                raise StructuralError(f"utility table of {v!r} has entries outside its domain")
            tables[v] = clean
        object.__setattr__(self, "action_sets", sets)
        object.__setattr__(self, "local_utilities", tables)

    @property
    def players(self) -> tuple[str, ...]:
        return self.graph.vertices

    def actions(self, player: str) -> tuple:
        return self.action_sets[player]

    def neighborhood(self, player: str) -> tuple[str, ...]:
        return (player,) + self.graph.in_neighbors(player)

    def local_utility(self, player: str, local: tuple) -> Fraction:
        return self.local_utilities[player][local]

    @property
    def digraph(self) -> Digraph:
        return self.graph


@dataclass(frozen=True)
class ColoredHypergraphicalGame:
    """Players are vertices of a game hypergraph; actions are ``1..m``.

    The player heading edge ``e`` of color ``c`` receives
    ``color_utilities[c][actions along e]``.  ``action_labels`` optionally
    names the actions for display (``action_labels[a - 1]`` names ``a``).
    """

    hypergraph: ColoredHypergraph
    m: int
    color_utilities: Mapping[str, Mapping[tuple, Fraction]]
    action_labels: tuple[str, ...] | None = None
    _heads: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        self.hypergraph.check_game_hypergraph()
        if self.m < 1:
            raise StructuralError("m must be at least 1")
        if self.action_labels is not None:
            labels = tuple(self.action_labels)
            if len(labels) != self.m or len(set(labels)) != self.m:
                raise StructuralError("action_labels must name each of the m actions once")
            object.__setattr__(self, "action_labels", labels)
        colors = self.hypergraph.colors
        extra = set(self.color_utilities) - set(colors)
        if extra:
            raise StructuralError(f"utility tables for unused colors {sorted(extra)!r}")
        tables = {}
        acts = range(1, self.m + 1)
        for c in colors:
            table = self.color_utilities.get(c)
            if table is None:
                raise StructuralError(f"no utility table for color {c!r}")
            clean = {}
            for key in itertools.product(acts, repeat=self.hypergraph.arity(c)):
                if key not in table:
                    raise StructuralError(f"utility table of color {c!r} misses {key!r}")
                clean[key] = as_fraction(table[key])
            if len(table) != len(clean):
                raise StructuralError(f"utility table of color {c!r} has entries outside its domain")
            tables[c] = clean
        object.__setattr__(self, "color_utilities", tables)
        object.__setattr__(self, "_heads", self.hypergraph.head_edges())

    @property
    def players(self) -> tuple[str, ...]:
        return self.hypergraph.vertices

    def actions(self, player: str) -> tuple[int, ...]:
        return tuple(range(1, self.m + 1))

    def neighborhood(self, player: str) -> tuple[str, ...]:
        return self._heads[player].tuple

    def color_of(self, player: str) -> str:
        return self._heads[player].color

    def local_utility(self, player: str, local: tuple) -> Fraction:
        return self.color_utilities[self.color_of(player)][local]

    @property
    def digraph(self) -> Digraph:
        return induced_digraph(self.hypergraph)

    def label(self, action: int) -> str:
        if self.action_labels is None:
            return str(action)
        return self.action_labels[action - 1]


Game = Union[GraphicalGame, ColoredHypergraphicalGame]


def _local(game: Game, player: str, profile: Profile) -> tuple:
    try:
        return tuple(profile[u] for u in game.neighborhood(player))
    except KeyError as exc:
        raise StructuralError(f"profile has no action for player {exc.args[0]!r}") from None


def utility(game: Game, player: str, profile: Profile) -> Fraction:
    local = _local(game, player, profile)
    try:
        return game.local_utility(player, local)
    except KeyError:
        raise StructuralError(f"no utility entry for {player!r} at {local!r}") from None


def best_responses(game: Game, player: str, profile: Profile) -> tuple:
    """All maximizers of ``player``'s utility against ``profile``, in action order.

    ``profile`` must cover the player's in-neighbors; its entry for the
    player itself, if any, is ignored.
    """
    others = tuple(profile[u] for u in game.neighborhood(player)[1:])
    return best_responses_local(game, player, others)


def best_responses_local(game: Game, player: str, others: tuple) -> tuple:
    values = [(a, game.local_utility(player, (a,) + others)) for a in game.actions(player)]
    top = max(v for _, v in values)
    return tuple(a for a, v in values if v == top)


def is_psne(game: Game, profile: Profile) -> bool:
    for i in game.players:
        local = _local(game, i, profile)
        if local[0] not in best_responses_local(game, i, local[1:]):
            return False
    return True


def profile_count(game: Game) -> int:
    return prod(len(game.actions(i)) for i in game.players)


def enumerate_profiles(game: Game) -> Iterator[dict]:
    """Odometer over players in vertex order; the last player varies fastest."""
    players = game.players
    for combo in itertools.product(*(game.actions(i) for i in players)):
        yield dict(zip(players, combo))


def _best_response_sets(game: Game) -> dict[str, set]:
    out = {}
    for i in game.players:
        good = set()
        nbhd = game.neighborhood(i)
        for others in itertools.product(*(game.actions(u) for u in nbhd[1:])):
            for a in best_responses_local(game, i, others):
                good.add((a,) + others)
        out[i] = good
    return out


def brute_force_psne(game: Game, cap: int = DEFAULT_PROFILE_CAP) -> dict | None:
    """First PSNE in :func:`enumerate_profiles` order, or None.

    Raises :class:`CapExceeded` rather than searching a profile space
    larger than ``cap``.
    """
    size = profile_count(game)
    if size > cap:
        raise CapExceeded("brute_force_psne", size, cap)
    good = _best_response_sets(game)
    nbhds = {i: game.neighborhood(i) for i in game.players}
    for profile in enumerate_profiles(game):
        if all(tuple(profile[u] for u in nbhds[i]) in good[i] for i in game.players):
            return profile
    return None


def all_psne(game: Game, cap: int = DEFAULT_PROFILE_CAP) -> list[dict]:
    size = profile_count(game)
    if size > cap:
        raise CapExceeded("all_psne", size, cap)
    return [p for p in enumerate_profiles(game) if is_psne(game, p)]


def graphical_game(graph: Digraph, action_sets: Mapping[str, Sequence], utility_fn) -> GraphicalGame:
    """Build a graphical game from ``utility_fn(player, local_tuple)``."""
    tables = {}
    for v in graph.vertices:
        nbhd = (v,) + graph.in_neighbors(v)
        tables[v] = {
            key: as_fraction(utility_fn(v, key))
            for key in itertools.product(*(action_sets[u] for u in nbhd))
        }
    return GraphicalGame(graph, {v: tuple(action_sets[v]) for v in graph.vertices}, tables)
