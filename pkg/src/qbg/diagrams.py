"""
Tilted Rothe diagrams and the vanishing-equation ledgers they generate.

A shift sequence a is *flat* for (u, v) when u <=_a v and each a_k also
compares the (k-1)-prefixes.  The diagram of u below the per-column cut
("down") collects cells (i, k) with i below u_k in the column's shifted
order and i not yet used by u; the diagram of v above the cut ("up") is
the mirror.  Each cell names one Plucker coordinate that must vanish, and
for flat a the ledger has exactly C(n,2) - l(u,v) equations, which the
suites check against the graph oracle.

All Plucker indices are normalized to sorted-subset form immediately; the
sign swallowed by the normalization is recorded on the equation so the
quadratic relations keep their meaning.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import chain

from .errors import InternalInvariantError, PreconditionError
from .latticepath import shift_leq, shifted_gale_leq, valid_shifts
from .permcore import (
    Perm,
    cyclic_contains,
    format_permutation,
    inverse,
    prefix_set,
    shifted_less,
)
from .qbgraph import graph_distance
from .tiltedorder import interval_members_criterion

Cell = tuple[int, int]  # (i, k): row value i, column k


def is_flat(u: Perm, v: Perm, a: tuple[int, ...]) -> bool:
    """u <=_a v plus the prefix condition u[k-1] <=_{a_k} v[k-1], k = 2..n-1."""
    n = len(u)
    if not shift_leq(u, v, a):
        return False
    return all(
        shifted_gale_leq(prefix_set(u, k - 1), prefix_set(v, k - 1), a[k - 1], n)
        for k in range(2, n)
    )


def find_flat(u: Perm, v: Perm) -> tuple[int, ...]:
    """
    A flat sequence for (u, v): column k takes the smallest shift valid for
    both the (k-1)- and k-prefixes.  The intersection is never empty; an
    empty one signals a bug, not bad input.
    """
    n = len(u)
    if len(v) != n:
        raise PreconditionError("permutations must have the same size")
    out = []
    for k in range(1, n):
        candidates = valid_shifts(prefix_set(u, k), prefix_set(v, k), n)
        if k >= 2:
            candidates &= valid_shifts(prefix_set(u, k - 1), prefix_set(v, k - 1), n)
        if not candidates:
            raise InternalInvariantError(
                f"no common shift for columns {k - 1} and {k} of "
                f"({format_permutation(u)}, {format_permutation(v)})"
            )
        out.append(min(candidates))
    return tuple(out)


def tilted_rothe(w: Perm, a: tuple[int, ...], kind: str) -> frozenset[Cell]:
    """
    Diagram cells.  kind="down": {(i,k) : i <_{a_k} w_k, w^{-1}(i) > k};
    kind="up":   {(i,k) : i >_{a_k} w_k, w^{-1}(i) > k}.

    >>> sorted(tilted_rothe((4, 3, 2, 1), (4, 4, 2), "down"))
    [(1, 2), (2, 2)]
    """
    n = len(w)
    if len(a) != n - 1:
        raise PreconditionError(f"shift sequence must have length {n - 1}")
    if kind not in ("down", "up"):
        raise PreconditionError(f"kind must be 'down' or 'up', got {kind!r}")
    w_inv = inverse(w)
    cells = set()
    for k in range(1, n):
        r = a[k - 1]
        wk = w[k - 1]
        for i in range(1, n + 1):
            if w_inv[i - 1] <= k:
                continue
            below = shifted_less(r, i, wk, n)
            if (kind == "down" and below) or (kind == "up" and shifted_less(r, wk, i, n)):
                cells.add((i, k))
    return frozenset(cells)


def signed_sorted_insert(prefix: frozenset[int], extra: int) -> tuple[frozenset[int], int]:
    """
    Normalize the index list (sorted prefix, extra) to sorted-subset form.
    Returns (subset, sign): the coordinate equals sign * P_subset.
    """
    if extra in prefix:
        raise InternalInvariantError(f"repeated index {extra} in Plucker subset")
    sign = -1 if sum(1 for p in prefix if p > extra) % 2 else 1
    return prefix | {extra}, sign


@dataclass(frozen=True)
class PluckerEquation:
    """
    kind="vanish": signs[0] * P_{subsets[0]} = 0 (one cell, one coordinate).
    kind="quadratic": s0 s1 P_{S0} P_{S1} - s2 s3 P_{S2} P_{S3} = 0.
    """

    kind: str
    column: int
    cell: Cell
    origin: str  # down | up | up-shifted | up-minor
    subsets: tuple[frozenset[int], ...]
    signs: tuple[int, ...]


@dataclass(frozen=True)
class EquationSet:
    u: Perm
    v: Perm
    a: tuple[int, ...]
    x: Perm | None
    equations: tuple[PluckerEquation, ...]

    def __len__(self) -> int:
        return len(self.equations)

    def by_column(self, k: int) -> tuple[PluckerEquation, ...]:
        return tuple(eq for eq in self.equations if eq.column == k)


def _vanish(prefix: frozenset[int], extra: int, cell: Cell, origin: str) -> PluckerEquation:
    subset, sign = signed_sorted_insert(prefix, extra)
    return PluckerEquation("vanish", cell[1], cell, origin, (subset,), (sign,))


def equations(u: Perm, v: Perm, a: tuple[int, ...]) -> EquationSet:
    """
    The vanishing ledger of (u, v, a): one equation P_{u[k-1] + i} = 0 per
    down cell (i, k), one equation P_{v[k-1] + i} = 0 per up cell.
    """
    if not shift_leq(u, v, a):
        raise PreconditionError("u is not below v under the supplied shift sequence")
    eqs = []
    for i, k in sorted(tilted_rothe(u, a, "down"), key=lambda c: (c[1], c[0])):
        eqs.append(_vanish(prefix_set(u, k - 1), i, (i, k), "down"))
    for i, k in sorted(tilted_rothe(v, a, "up"), key=lambda c: (c[1], c[0])):
        eqs.append(_vanish(prefix_set(v, k - 1), i, (i, k), "up"))
    eqs.sort(key=lambda e: (e.column, e.cell, e.origin))
    return EquationSet(u, v, tuple(a), None, tuple(eqs))


def coatom_positions(v: Perm, x: Perm) -> tuple[int, int]:
    """The (p, q) with x = v t_{pq}; errors unless exactly two entries differ."""
    diff = [p for p in range(1, len(v) + 1) if v[p - 1] != x[p - 1]]
    if len(diff) != 2:
        raise PreconditionError(
            f"{format_permutation(x)} is not {format_permutation(v)} times a transposition"
        )
    return diff[0], diff[1]


def equations_with_x(u: Perm, v: Perm, a: tuple[int, ...], x: Perm) -> EquationSet:
    """
    The ledger of (u, v, a) rewritten through a coatom x = v t_{pq} of the
    interval (flat a required).  Down cells keep their equations; up cells
    shared with the diagram of x swap in the x-prefix; the remaining up
    cells become either a shifted vanishing coordinate (columns strictly
    between p and q) or, in column q, a quadratic two-by-two relation.
    """
    n = len(u)
    if not is_flat(u, v, a):
        raise PreconditionError("shift sequence is not flat for (u, v)")
    if not interval_members_criterion(u, v, x, "exists_shift"):
        raise PreconditionError("x is not a member of the interval [u, v]")
    ell_uv = graph_distance(u, v)
    if graph_distance(u, x) != ell_uv - 1:
        raise PreconditionError("x is not one step below v in the interval")
    p, q = coatom_positions(v, x)
    xp, xq = x[p - 1], x[q - 1]

    eqs = []
    for i, k in sorted(tilted_rothe(u, a, "down"), key=lambda c: (c[1], c[0])):
        eqs.append(_vanish(prefix_set(u, k - 1), i, (i, k), "down"))
    up_v = tilted_rothe(v, a, "up")
    up_x = tilted_rothe(x, a, "up")
    for i, k in sorted(up_v, key=lambda c: (c[1], c[0])):
        if (i, k) in up_x:
            eqs.append(_vanish(prefix_set(x, k - 1), i, (i, k), "up"))
        elif i == xp and p < k < q:
            eqs.append(_vanish(prefix_set(x, k - 1), xq, (i, k), "up-shifted"))
        elif k == q and cyclic_contains(xp, xq, i, n, include_a=False, include_b=False):
            s0 = signed_sorted_insert(prefix_set(x, q - 1), i)
            s1 = signed_sorted_insert(prefix_set(x, p - 1), xq)
            s2 = signed_sorted_insert(prefix_set(x, p - 1), i)
            s3 = signed_sorted_insert(prefix_set(x, q - 1), xq)
            eqs.append(
                PluckerEquation(
                    "quadratic",
                    k,
                    (i, k),
                    "up-minor",
                    (s0[0], s1[0], s2[0], s3[0]),
                    (s0[1], s1[1], s2[1], s3[1]),
                )
            )
        else:
            raise InternalInvariantError(
                f"up cell {(i, k)} fits no rewrite case for x = {format_permutation(x)}"
            )
    eqs.sort(key=lambda e: (e.column, e.cell, e.origin))
    return EquationSet(u, v, tuple(a), x, tuple(eqs))


# ---------------------------------------------------------------------------
# Rendering


def render_diagram(w: Perm, a: tuple[int, ...], kind: str) -> str:
    """
    ASCII grid: rows are values 1..n top to bottom, columns 1..n.  "#" is a
    diagram cell, "o" the entry of w in that column, "-" marks the
    per-column floor (drawn immediately above value a_k).
    """
    n = len(w)
    cells = tilted_rothe(w, a, kind)
    dots = {(w[k - 1], k) for k in range(1, n + 1)}
    floors = {k: a[k - 1] for k in range(1, n)}

    def separator(after_row: int) -> str | None:
        marks = [
            "---" if floors.get(k) == after_row + 1 else "   " for k in range(1, n + 1)
        ]
        if all(m == "   " for m in marks):
            return None
        return "    |" + "".join(marks)

    lines = [f"{kind} diagram of {format_permutation(w)}, cuts a={','.join(map(str, a))}"]
    header = "     " + "".join(f"{k:^3}" for k in range(1, n + 1))
    lines.append(header)
    top = separator(0)
    if top:
        lines.append(top)
    for r in range(1, n + 1):
        row = []
        for k in range(1, n + 1):
            if (r, k) in cells:
                row.append(" # ")
            elif (r, k) in dots:
                row.append(" o ")
            else:
                row.append(" . ")
        lines.append(f"{r:>3} |" + "".join(row))
        sep = separator(r)
        if sep and r < n:
            lines.append(sep)
    cell_list = " ".join(
        f"({i},{k})" for i, k in sorted(cells, key=lambda c: (c[1], c[0]))
    )
    lines.append(f"cells: {cell_list if cell_list else '(none)'}")
    return "\n".join(lines)


def _subset_key(subset: frozenset[int]) -> str:
    return ",".join(str(i) for i in sorted(subset))


def equation_str(eq: PluckerEquation) -> str:
    if eq.kind == "vanish":
        sign = "" if eq.signs[0] == 1 else "-"
        return f"{sign}P[{_subset_key(eq.subsets[0])}] = 0"
    s01 = eq.signs[0] * eq.signs[1]
    s23 = eq.signs[2] * eq.signs[3]
    lead = "" if s01 == 1 else "-"
    mid = "-" if s23 == 1 else "+"
    return (
        f"{lead}P[{_subset_key(eq.subsets[0])}]*P[{_subset_key(eq.subsets[1])}] "
        f"{mid} P[{_subset_key(eq.subsets[2])}]*P[{_subset_key(eq.subsets[3])}] = 0"
    )


def equations_to_json(es: EquationSet) -> str:
    payload = {
        "u": format_permutation(es.u),
        "v": format_permutation(es.v),
        "a": list(es.a),
        "x": format_permutation(es.x) if es.x is not None else None,
        "count": len(es.equations),
        "equations": [
            {
                "kind": eq.kind,
                "column": eq.column,
                "cell": list(eq.cell),
                "origin": eq.origin,
                "subsets": [sorted(s) for s in eq.subsets],
                "signs": list(eq.signs),
            }
            for eq in es.equations
        ],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def column_cell_count(u: Perm, v: Perm, a: tuple[int, ...], k: int) -> int:
    """Cells in column k across both diagrams (n - k of them when u = v)."""
    down = tilted_rothe(u, a, "down")
    up = tilted_rothe(v, a, "up")
    return sum(1 for cell in chain(down, up) if cell[1] == k)
