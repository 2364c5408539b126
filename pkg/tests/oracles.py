"""Independent brute-force oracles for the test suite.

Everything here is deliberately written from first principles (plain
dictionaries, Fractions, double loops) so it shares no code path with the
package implementation it checks.
"""
from __future__ import annotations

import random
from fractions import Fraction


def union_find_components(nodes, edges):
    """Connected components via union-find; returns sorted lists, ordered
    by smallest member."""
    parent = {u: u for u in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    node_set = set(nodes)
    for u, v in edges:
        if u in node_set and v in node_set:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
    groups: dict[int, list[int]] = {}
    for u in nodes:
        groups.setdefault(find(u), []).append(u)
    comps = [sorted(g) for g in groups.values()]
    comps.sort(key=lambda c: c[0])
    return comps


def adjacency_of(edges, nodes=None):
    """Plain dict-of-sets adjacency for an undirected edge list."""
    adj: dict[int, set[int]] = {u: set() for u in (nodes or [])}
    for u, v in edges:
        if u == v:
            continue
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return adj


def count_within(adj, members) -> int:
    """Brute-force count of edges with both endpoints in ``members``."""
    mset = set(members)
    total = 0
    for u in mset:
        for v in adj.get(u, ()):
            if v in mset and u < v:
                total += 1
    return total


def bipartition_by_bfs(adj, members):
    """Two-coloring by BFS depth parity; None on an odd cycle.

    Returns (side_of_smallest_id, other_side) as sorted lists.
    """
    mset = set(members)
    start = min(mset)
    color = {start: 0}
    queue = [start]
    while queue:
        u = queue.pop(0)
        for v in sorted(adj.get(u, ())):
            if v not in mset:
                continue
            if v not in color:
                color[v] = 1 - color[u]
                queue.append(v)
            elif color[v] == color[u]:
                return None
    side0 = sorted(u for u in mset if color.get(u) == 0)
    side1 = sorted(u for u in mset if color.get(u) == 1)
    return side0, side1


def is_connected(adj, members) -> bool:
    mset = set(members)
    seen = {min(mset)}
    stack = [min(mset)]
    while stack:
        u = stack.pop()
        for v in adj.get(u, ()):
            if v in mset and v not in seen:
                seen.add(v)
                stack.append(v)
    return seen == mset


def brute_force_classify(adj, members, epsilon: Fraction, chain_mode="strict_path") -> str:
    """Definitional re-derivation of the classification ladder.

    Completeness, bipartite completeness, and path-ness are each verified
    by explicit enumeration rather than edge arithmetic shortcuts.
    """
    mset = set(members)
    n = len(mset)
    m = count_within(adj, mset)

    def complete() -> bool:
        return all(v in adj.get(u, ()) for u in mset for v in mset if u != v)

    if complete():
        return "fc"
    if Fraction(m) > (1 - epsilon) * Fraction(n * (n - 1), 2):
        return "nc"
    if Fraction(m) < Fraction(n * n, 4):
        sides = bipartition_by_bfs(adj, mset)
        if sides is not None:
            side_a, side_b = sides
            if len(side_a) == 1 or len(side_b) == 1:
                return "st"
            cross_complete = all(b in adj.get(a, ()) for a in side_a for b in side_b)
            if cross_complete:
                return "fb"
            if Fraction(m) > (1 - epsilon) * len(side_a) * len(side_b):
                return "nb"
            if m == n - 1:
                if chain_mode == "tree_literal":
                    return "ch"
                degrees_ok = all(len(adj.get(u, set()) & mset) <= 2 for u in mset)
                endpoints = sum(1 for u in mset if len(adj.get(u, set()) & mset) == 1)
                if degrees_ok and endpoints == 2 and is_connected(adj, mset):
                    return "ch"
    return "undefined"


def project_rational(x: int, x_min: int, x_max: int, res: int, offset: int) -> int:
    """Eq-style pixel projection evaluated with exact rationals."""
    if x_min == x_max:
        ratio = Fraction(0)
    else:
        ratio = Fraction(x - x_min, x_max - x_min)
    value = (res - 1) * ratio + Fraction(1, 2)
    # ceil of an exact rational
    q = value.numerator // value.denominator
    if q * value.denominator < value.numerator:
        q += 1
    return offset + q


def tally_edges_by_assignment(edges, assignment):
    """Brute-force version of the condenser's edge accounting.

    ``assignment`` maps node -> structure id, missing/None = unclassified.
    Returns (inter dict with i<j keys, internal dict, unclassified count).
    """
    inter: dict[tuple[int, int], int] = {}
    internal: dict[int, int] = {}
    unclassified = 0
    for u, v in edges:
        a, b = assignment.get(u), assignment.get(v)
        if a is None or b is None:
            unclassified += 1
        elif a == b:
            internal[a] = internal.get(a, 0) + 1
        else:
            key = (min(a, b), max(a, b))
            inter[key] = inter.get(key, 0) + 1
    return inter, internal, unclassified


# ---------------------------------------------------------------------------
# instance generators for the classification equivalence suite

def _k_edges(nodes):
    return [(u, v) for i, u in enumerate(nodes) for v in nodes[i + 1:]]


def gen_fc(rng: random.Random, n: int):
    return _k_edges(list(range(n)))


def _remove_edges_connected(rng, full_edges, nodes, removed):
    """Drop ``removed`` random edges, retrying until no node is isolated
    and the remainder stays connected."""
    edges = list(full_edges)
    while True:
        rng.shuffle(edges)
        kept = edges[removed:]
        adj = adjacency_of(kept, nodes)
        if all(adj[u] for u in nodes) and is_connected(adj, nodes):
            return kept


def max_near_removals(total: int, epsilon: Fraction) -> int:
    """Largest removal count that still satisfies m > (1-eps)*total."""
    import math
    return math.ceil(epsilon * total) - 1


def gen_nc(rng: random.Random, n: int, epsilon: Fraction, boundary=False):
    """Clique minus r edges.  By default r keeps the result a near clique;
    ``boundary`` uses the smallest r that no longer qualifies (m lands
    exactly on (1-eps)*total whenever that value is an integer)."""
    total = n * (n - 1) // 2
    max_nc = max_near_removals(total, epsilon)
    removed = (max_nc + 1) if boundary else rng.randint(1, max(1, max_nc))
    removed = min(removed, total - n + 1)
    return _remove_edges_connected(rng, _k_edges(list(range(n))), range(n), removed)


def _split_sides(rng: random.Random, n: int) -> tuple[int, int]:
    """Side sizes for bipartite cores: both >= 2 and distinct (equal sides
    fail the m < n^2/4 ladder guard, so they classify as undefined)."""
    a = rng.randint(2, max(2, n // 2 - 1))
    b = n - a
    if a == b:
        a, b = a - 1, b + 1
    return a, b


def gen_fb(rng: random.Random, n: int):
    a, b = _split_sides(rng, n)
    return [(u, v) for u in range(a) for v in range(a, a + b)]


def gen_nb(rng: random.Random, n: int, epsilon: Fraction, boundary=False):
    a, b = _split_sides(rng, n)
    full = [(u, v) for u in range(a) for v in range(a, a + b)]
    max_nb = max_near_removals(a * b, epsilon)
    removed = (max_nb + 1) if boundary else rng.randint(1, max(1, max_nb))
    removed = min(removed, a * b - n + 1)
    return _remove_edges_connected(rng, full, range(n), removed)


def gen_st(rng: random.Random, n: int):
    return [(0, i) for i in range(1, n)]


def gen_ch(rng: random.Random, n: int):
    return [(i, i + 1) for i in range(n - 1)]


def gen_tree(rng: random.Random, n: int):
    """Random non-path tree (spider-ish), for chain-mode coverage."""
    edges = [(0, 1), (0, 2), (0, 3)]
    for i in range(4, n):
        edges.append((rng.randint(0, i - 1), i))
    return edges


def gen_sparse_connected(rng: random.Random, n: int):
    """Random connected graph that is none of the vocabulary shapes."""
    edges = set(gen_tree(rng, n))
    extra = rng.randint(1, max(1, n // 2))
    for _ in range(extra):
        u, v = rng.sample(range(n), 2)
        edges.add((min(u, v), max(u, v)))
    return sorted(edges)
