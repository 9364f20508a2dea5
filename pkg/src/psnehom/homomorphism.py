"""Colored-hypergraph homomorphisms.

A homomorphism from ``left`` to ``right`` maps vertices so that every left
edge ``(a1..ak)`` of color ``c`` lands on a right edge ``(h(a1)..h(ak))``
of the same color.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

from .errors import CapExceeded, StructuralError
from .graphs import ColoredHypergraph, primal_graph
from .treewidth import TreeDecomposition, clique_in_some_bag, exact_treewidth, validate_decomposition

DEFAULT_HOM_CAP = 10**7
DEFAULT_CORE_CAP = 8


@dataclass(frozen=True)
class HomInstance:
    left: ColoredHypergraph
    right: ColoredHypergraph


def _right_index(right: ColoredHypergraph) -> set[tuple]:
    return {(e.color, e.tuple) for e in right.edges}


def check_homomorphism(instance: HomInstance, mapping: Mapping[str, str]) -> bool:
    right_vertices = set(instance.right.vertices)
    if any(mapping.get(v) not in right_vertices for v in instance.left.vertices):
        return False
    index = _right_index(instance.right)
    return all(
        (e.color, tuple(mapping[v] for v in e.tuple)) in index for e in instance.left.edges
    )


def candidate_domains(instance: HomInstance) -> dict[str, tuple[str, ...]]:
    """For each left vertex, the right vertices it could possibly map to.

    A vertex at position ``k`` of a ``c``-colored left edge can only land on
    something found at position ``k`` of a ``c``-colored right edge.  The
    domains keep the right side's declaration order.
    """
    allowed: dict[str, set[str]] = {}
    by_slot: dict[tuple[str, int], set[str]] = {}
    for e in instance.right.edges:
        for k, t in enumerate(e.tuple):
            by_slot.setdefault((e.color, k), set()).add(t)
    for e in instance.left.edges:
        for k, v in enumerate(e.tuple):
            slot = by_slot.get((e.color, k), set())
            allowed[v] = allowed[v] & slot if v in allowed else set(slot)
    return {
        v: tuple(t for t in instance.right.vertices if v not in allowed or t in allowed[v])
        for v in instance.left.vertices
    }


def search_space(instance: HomInstance) -> int:
    return len(instance.right.vertices) ** len(instance.left.vertices)


def brute_force_hom(instance: HomInstance, cap: int = DEFAULT_HOM_CAP) -> dict | None:
    """Lexicographically first homomorphism, or None.

    Left vertices are assigned in declaration order, each trying right
    vertices in declaration order; an edge is checked as soon as its last
    vertex is assigned, which prunes without changing which mapping is
    found first.
    """
    size = search_space(instance)
    if size > cap:
        raise CapExceeded("brute_force_hom", size, cap)
    left, right = instance.left, instance.right
    order = left.vertices
    pos = {v: i for i, v in enumerate(order)}
    index = _right_index(right)
    due: list[list] = [[] for _ in order]
    for e in left.edges:
        if e.tuple:
            due[max(pos[v] for v in e.tuple)].append(e)
        elif (e.color, ()) not in index:
            return None
    domains = candidate_domains(instance)
    assignment: dict[str, str] = {}

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        v = order[k]
        for t in domains[v]:
            assignment[v] = t
            if all((e.color, tuple(assignment[u] for u in e.tuple)) in index for e in due[k]):
                if extend(k + 1):
                    return True
        assignment.pop(v, None)
        return False

    if extend(0):
        return dict(assignment)
    return None


def dp_hom(instance: HomInstance, decomp: TreeDecomposition) -> dict | None:
    """Decide and witness a homomorphism by dynamic programming on ``decomp``.

    ``decomp`` must be a tree decomposition of the primal graph of the left
    side.  Each left edge is checked at the first bag containing it.  Bag
    tables hold the bag assignments satisfying their edges and agreeing
    with some surviving assignment of every child; the witness is read off
    top-down from the root (bag 0).
    """
    left, right = instance.left, instance.right
    check = validate_decomposition(primal_graph(left), decomp)
    if not check:
        raise StructuralError(f"invalid decomposition: {check.reason} {check.witness}")
    index = _right_index(right)
    routed: list[list] = [[] for _ in decomp.bags]
    for e in left.edges:
        if not e.tuple:
            if (e.color, ()) not in index:
                return None
            continue
        routed[clique_in_some_bag(decomp, e.tuple)].append(e)

    bag_vars = [sorted(b, key=left.vertices.index) for b in decomp.bags]
    adj = decomp.neighbors()
    parent = [-1] * len(decomp.bags)
    order = [0]
    seen = {0}
    for i in order:
        for j in adj[i]:
            if j not in seen:
                seen.add(j)
                parent[j] = i
                order.append(j)
    children: list[list[int]] = [[] for _ in decomp.bags]
    for j in order[1:]:
        children[parent[j]].append(j)

    domains = candidate_domains(instance)
    tables: list[list[tuple] | None] = [None] * len(decomp.bags)
    for i in reversed(order):
        vars_i = bag_vars[i]
        pos = {v: k for k, v in enumerate(vars_i)}
        # every constraint is checked once its last coordinate is filled
        due: list[list] = [[] for _ in vars_i]
        for e in routed[i]:
            slots = [pos[v] for v in e.tuple]
            due[max(slots)].append((e.color, slots))
        for j in children[i]:
            shared = [v for v in vars_i if v in decomp.bags[j]]
            if not shared:
                continue
            cpos = {v: k for k, v in enumerate(bag_vars[j])}
            allowed = {tuple(row[cpos[v]] for v in shared) for row in tables[j]}
            slots = [pos[v] for v in shared]
            due[max(slots)].append((allowed, slots))
        rows = _bag_rows(vars_i, domains, due, index)
        if not rows:
            return None
        tables[i] = rows

    mapping: dict[str, str] = {}
    for i in order:
        vars_i = bag_vars[i]
        for row in tables[i]:
            if all(mapping.get(v, t) == t for v, t in zip(vars_i, row)):
                mapping.update(zip(vars_i, row))
                break
        else:  # pragma: no cover - guaranteed by the bottom-up pass
            raise AssertionError("witness reconstruction failed")
    return {v: mapping[v] for v in left.vertices}


def _bag_rows(vars_i, domains, due, index) -> list[tuple]:
    rows: list[tuple] = []
    row: list[str] = []

    def ok(check, slots) -> bool:
        key = tuple(row[k] for k in slots)
        if isinstance(check, str):
            return (check, key) in index
        return key in check

    def fill(k: int) -> None:
        if k == len(vars_i):
            rows.append(tuple(row))
            return
        for t in domains[vars_i[k]]:
            row.append(t)
            if all(ok(check, slots) for check, slots in due[k]):
                fill(k + 1)
            row.pop()

    fill(0)
    return rows


def homomorphically_equivalent(a: ColoredHypergraph, b: ColoredHypergraph,
                               cap: int = DEFAULT_HOM_CAP) -> bool:
    return (brute_force_hom(HomInstance(a, b), cap) is not None
            and brute_force_hom(HomInstance(b, a), cap) is not None)


def core_with_retraction(h: ColoredHypergraph, cap: int = DEFAULT_CORE_CAP,
                         hom_cap: int = DEFAULT_HOM_CAP) -> tuple[ColoredHypergraph, dict]:
    """Smallest induced substructure that ``h`` maps onto, and that map.

    Candidate vertex sets are tried by increasing size, then in
    lexicographic order of declaration positions, so the first hit is
    vertex-minimal and deterministic.
    """
    n = len(h.vertices)
    if n > cap:
        raise CapExceeded("core", n, cap)
    for k in range(n + 1):
        for subset in itertools.combinations(h.vertices, k):
            sub = h.induced(subset)
            mapping = brute_force_hom(HomInstance(h, sub), hom_cap)
            if mapping is not None:
                return sub, mapping
    raise AssertionError("unreachable: h maps to itself")  # pragma: no cover


def core(h: ColoredHypergraph, cap: int = DEFAULT_CORE_CAP,
         hom_cap: int = DEFAULT_HOM_CAP) -> ColoredHypergraph:
    return core_with_retraction(h, cap, hom_cap)[0]


def modulo_treewidth_upper(h: ColoredHypergraph, core_cap: int = DEFAULT_CORE_CAP,
                           hom_cap: int = DEFAULT_HOM_CAP) -> int:
    """Treewidth of the primal graph of the core of ``h``.

    This bounds the modulo-treewidth from above; for induced hypergraphs of
    digraphs the two coincide.
    """
    width, _ = exact_treewidth(primal_graph(core(h, core_cap, hom_cap)))
    return width
