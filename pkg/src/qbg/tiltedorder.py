"""
Tilted Bruhat order: w <=_u v when w lies on a shortest u -> v path in the
quantum Bruhat graph, i.e. l(u,w) + l(w,v) = l(u,v).  Intervals [u,v] do
not depend on the base point, so the subscript is dropped.

Membership in [u,v] has two independent routes: the length identity on the
built graph, and the prefix criteria (for one shift sequence / for all
shift sequences), which need no graph.  The equivalence of the routes is a
theorem and is exercised by the test suites, so the two implementations
are deliberately kept apart.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

from .errors import PreconditionError
from .latticepath import shifted_gale_leq, valid_shifts
from .permcore import Perm, all_permutations, format_permutation, prefix_set
from .qbgraph import QbgEdge, QuantumBruhatGraph, edge_weight, monomial_str


def tilted_leq(base: Perm, w: Perm, v: Perm, g: QuantumBruhatGraph) -> bool:
    """w <=_base v via the length identity (criterion on the graph)."""
    if not len(base) == len(w) == len(v) == g.n:
        raise PreconditionError("permutations must all live in the graph's S_n")
    dist_from_base = g.distances_from(base)
    dist_from_w = g.distances_from(w)
    return dist_from_base[w] + dist_from_w[v] == dist_from_base[v]


def interval_members_criterion(u: Perm, v: Perm, w: Perm, mode: str) -> bool:
    """
    Graph-free membership tests for w in [u, v].

    mode="exists_shift": some per-column shift puts the k-prefix of w
    between those of u and v, for every k.  mode="all_shifts": every shift
    valid for (u, v) in column k does.
    """
    n = len(u)
    if mode == "exists_shift":
        return all(
            valid_shifts(prefix_set(u, k), prefix_set(w, k), n)
            & valid_shifts(prefix_set(w, k), prefix_set(v, k), n)
            for k in range(1, n)
        )
    if mode == "all_shifts":
        for k in range(1, n):
            uk, vk, wk = prefix_set(u, k), prefix_set(v, k), prefix_set(w, k)
            for r in valid_shifts(uk, vk, n):
                if not (
                    shifted_gale_leq(uk, wk, r, n) and shifted_gale_leq(wk, vk, r, n)
                ):
                    return False
        return True
    raise PreconditionError(f"unknown mode {mode!r} (expected exists_shift or all_shifts)")


@lru_cache(maxsize=4096)
def interval_member_set(u: Perm, v: Perm) -> frozenset[Perm]:
    """All of [u, v], graph-free (exists_shift route over all of S_n)."""
    return frozenset(
        w
        for w in all_permutations(len(u))
        if interval_members_criterion(u, v, w, "exists_shift")
    )


@dataclass(frozen=True)
class TiltedInterval:
    bottom: Perm
    top: Perm
    members: frozenset[Perm]
    rank: dict[Perm, int]

    @property
    def length(self) -> int:
        return self.rank[self.top]


def interval(u: Perm, v: Perm, g: QuantumBruhatGraph) -> TiltedInterval:
    """[u, v] computed from the graph, with rank(w) = l(u, w)."""
    dist_from_u = g.distances_from(u)
    dist_to_v = g.distances_to(v)
    total = dist_from_u[v]
    members = frozenset(
        w for w in g.vertices if dist_from_u[w] + dist_to_v[w] == total
    )
    rank = {w: dist_from_u[w] for w in members}
    return TiltedInterval(u, v, members, rank)


def hasse_edges(ti: TiltedInterval) -> list[QbgEdge]:
    """
    Cover relations: graph edges between consecutive ranks inside the
    interval.  Recomputed from edge_weight, so no graph object is needed.
    """
    edges = []
    for w in sorted(ti.members):
        for x in sorted(ti.members):
            if ti.rank[x] != ti.rank[w] + 1:
                continue
            diff = [p for p in range(1, len(w) + 1) if w[p - 1] != x[p - 1]]
            if len(diff) != 2:
                continue
            t = (diff[0], diff[1])
            exps = edge_weight(w, t)
            if exps is not None:
                edges.append(QbgEdge(w, x, t, exps))
    return edges


def hasse_export(ti: TiltedInterval, fmt: str) -> str:
    """DOT (rank-grouped) or JSON rendering of the interval's diagram."""
    edges = hasse_edges(ti)
    if fmt == "dot":
        lines = ["digraph hasse {", "  rankdir=BT;"]
        for r in range(ti.length + 1):
            row = sorted(w for w in ti.members if ti.rank[w] == r)
            names = " ".join(f'"{format_permutation(w)}";' for w in row)
            lines.append(f"  {{ rank=same; {names} }}")
        for e in edges:
            lines.append(
                f'  "{format_permutation(e.source)}" -> '
                f'"{format_permutation(e.target)}" '
                f'[weight="{monomial_str(e.exps)}"];'
            )
        lines.append("}")
        return "\n".join(lines) + "\n"
    if fmt == "json":
        payload = {
            "bottom": format_permutation(ti.bottom),
            "top": format_permutation(ti.top),
            "length": ti.length,
            "members": [
                {"perm": format_permutation(w), "rank": ti.rank[w]}
                for w in sorted(ti.members)
            ],
            "edges": [
                {
                    "source": format_permutation(e.source),
                    "target": format_permutation(e.target),
                    "root": list(e.root),
                    "exps": list(e.exps),
                }
                for e in edges
            ],
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    raise PreconditionError(f"unknown format {fmt!r} (expected dot or json)")
