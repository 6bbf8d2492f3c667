"""
Named verification suites behind `qbg verify`.  Each suite checks one
family of invariants exhaustively at desk scale and reports instance
counts; the acceptance tests run them at their contractual sizes.

All comparisons are exact; a suite passes only with zero violations.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb

from . import diagrams, exactgeom, qbgraph, tiltedorder
from .errors import PreconditionError, SamplingError
from .latticepath import valid_shifts
from .permcore import (
    Perm,
    all_permutations,
    format_permutation,
    identity,
    long_cycle_rotate,
    longest_element,
    prefix_set,
    reduced_words_of_longest,
    reflection_ordering,
)
from .qbgraph import (
    QuantumBruhatGraph,
    build_graph,
    edge_weight,
    exponent_add,
    exponent_divides,
    formula_weight,
    graph_distance,
    increasing_paths_from,
    shortest_path_weight_sets,
    zero_exponent,
)


@dataclass
class SuiteResult:
    name: str
    n: int
    ok: bool
    body: str
    details: list[str] = field(default_factory=list)

    def report(self) -> str:
        lines = [f"suite={self.name} n={self.n}", self.body]
        lines.extend(self.details)
        lines.append("PASS" if self.ok else "FAIL")
        return "\n".join(lines)


def _fmt(w: Perm) -> str:
    return format_permutation(w)


# ---------------------------------------------------------------------------


def suite_distance(n: int, seed: int, samples: int) -> SuiteResult:
    """Closed-form weight and length agree with the BFS oracle on all pairs."""
    g = build_graph(n)
    pairs = 0
    mismatches = []
    for v in g.vertices:
        dist_to_v = g.distances_to(v)
        for u in g.vertices:
            pairs += 1
            length = dist_to_v[u]
            exps = zero_exponent(n)
            w = u
            while w != v:
                step = next(
                    e for e in g.out_edges[w] if dist_to_v[e.target] == dist_to_v[w] - 1
                )
                exps = exponent_add(exps, step.exps)
                w = step.target
            if exps != formula_weight(u, v) or length != graph_distance(u, v):
                mismatches.append(f"mismatch at ({_fmt(u)}, {_fmt(v)})")
    return SuiteResult(
        "distance",
        n,
        not mismatches,
        f"{pairs} pairs, {len(mismatches)} mismatches",
        mismatches[:10],
    )


def suite_samepath(n: int, seed: int, samples: int) -> SuiteResult:
    """
    All shortest paths between a pair carry one common weight; every walk
    within two steps of geodesic length carries a weight divisible by it,
    with equality only at geodesic length.
    """
    g = build_graph(n)
    bad: list[str] = []
    pairs = 0
    walks = 0
    for u in g.vertices:
        u_idx = g.index[u]
        weight_sets = shortest_path_weight_sets(g, u)
        for v in g.vertices:
            pairs += 1
            if len(weight_sets[v]) != 1:
                bad.append(f"several shortest-path weights for ({_fmt(u)}, {_fmt(v)})")
        minimal = [next(iter(weight_sets[w])) for w in g.vertices]
        dist = g.distance_vector_from(u)
        stack: list[tuple[int, int, tuple[int, ...]]] = [(u_idx, 0, zero_exponent(n))]
        while stack:
            w_idx, length, exps = stack.pop()
            walks += 1
            ref = minimal[w_idx]
            if not exponent_divides(ref, exps):
                bad.append(f"walk weight below minimum at {_fmt(g.vertices[w_idx])}")
            elif exps == ref and length != dist[w_idx]:
                bad.append(f"minimal weight on a non-shortest walk from {_fmt(u)}")
            for t_idx, e_exps in g.out_idx[w_idx]:
                if length + 1 <= dist[t_idx] + 2:
                    stack.append((t_idx, length + 1, exponent_add(exps, e_exps)))
    return SuiteResult(
        "samepath",
        n,
        not bad,
        f"{pairs} pairs, {walks} bounded walks, {len(bad)} violations",
        bad[:10],
    )


def suite_bfp(n: int, seed: int, samples: int) -> SuiteResult:
    """The greedy label-increasing path has oracle length and formula weight."""
    g = build_graph(n)
    bad: list[str] = []
    pairs = 0
    root_rank = {t: i for i, t in enumerate(qbgraph.all_roots(n))}
    for u in g.vertices:
        dist = g.distances_from(u)
        for v in g.vertices:
            pairs += 1
            path = qbgraph.bfp_greedy_path(u, v)
            labels = [root_rank[e.root] for e in path]
            increasing = all(a < b for a, b in zip(labels, labels[1:]))
            weight = qbgraph.path_weight(path, n)
            if (
                len(path) != dist[v]
                or weight != formula_weight(u, v)
                or not increasing
            ):
                bad.append(f"greedy path wrong for ({_fmt(u)}, {_fmt(v)})")
    return SuiteResult(
        "bfp", n, not bad, f"{pairs} pairs, {len(bad)} violations", bad[:10]
    )


def suite_increasing(n: int, seed: int, samples: int) -> SuiteResult:
    """Every reflection ordering admits exactly one increasing path per pair."""
    g = build_graph(n)
    words = reduced_words_of_longest(n)
    expected_words = {3: 2, 4: 16}
    bad: list[str] = []
    if n in expected_words and len(words) != expected_words[n]:
        bad.append(f"expected {expected_words[n]} reduced words, found {len(words)}")
    checked = 0
    for word in sorted(words):
        ordering = reflection_ordering(word)
        for u in g.vertices:
            dist = g.distances_from(u)
            found = increasing_paths_from(g, u, ordering)
            for v in g.vertices:
                checked += 1
                paths = found.get(v, [])
                if len(paths) != 1 or len(paths[0]) != dist[v]:
                    bad.append(
                        f"word {word}: {len(paths)} paths for ({_fmt(u)}, {_fmt(v)})"
                    )
    return SuiteResult(
        "increasing",
        n,
        not bad,
        f"{len(words)} orderings, {checked} pairs, {len(bad)} violations",
        bad[:10],
    )


def suite_rotation(n: int, seed: int, samples: int) -> SuiteResult:
    """Rotating all values by the long cycle preserves the unweighted edges."""
    bad = 0
    checked = 0
    roots = qbgraph.all_roots(n)
    for w in all_permutations(n):
        rotated = long_cycle_rotate(w)
        for t in roots:
            checked += 1
            if (edge_weight(w, t) is None) != (edge_weight(rotated, t) is None):
                bad += 1
    return SuiteResult(
        "rotation", n, bad == 0, f"{checked} vertex-root pairs, {bad} violations"
    )


_FIGURE_D132_EDGES = {
    ((1, 3, 2), (1, 2, 3)),
    ((1, 3, 2), (2, 3, 1)),
    ((1, 3, 2), (3, 1, 2)),
    ((1, 2, 3), (2, 1, 3)),
    ((2, 3, 1), (2, 1, 3)),
    ((2, 3, 1), (3, 2, 1)),
    ((3, 1, 2), (3, 2, 1)),
}


def base_poset_hasse(g: QuantumBruhatGraph, base: Perm) -> set[tuple[Perm, Perm]]:
    """Cover relations of the order with the given base point: graph edges
    that step one rank further from the base."""
    dist = g.distances_from(base)
    return {
        (e.source, e.target)
        for e in g.all_edges()
        if dist[e.target] == dist[e.source] + 1
    }


def suite_tilted(n: int, seed: int, samples: int) -> SuiteResult:
    """The three membership criteria agree on every (u, v, w) triple."""
    g = build_graph(n)
    dist = {u: g.distance_vector_from(u) for u in g.vertices}
    bad: list[str] = []
    triples = 0
    for u in g.vertices:
        du = dist[u]
        for v in g.vertices:
            total = du[g.index[v]]
            for w in g.vertices:
                triples += 1
                by_length = du[g.index[w]] + dist[w][g.index[v]] == total
                by_all = tiltedorder.interval_members_criterion(u, v, w, "all_shifts")
                by_exists = tiltedorder.interval_members_criterion(
                    u, v, w, "exists_shift"
                )
                if not by_length == by_all == by_exists:
                    bad.append(f"criteria split on ({_fmt(u)}, {_fmt(v)}, {_fmt(w)})")
    if n == 3:
        base = (1, 3, 2)
        ranks = g.distances_from(base)
        if [sorted(ranks[w] for w in g.vertices)] != [[0, 1, 1, 1, 2, 2]]:
            bad.append("rank profile of the base-132 order is wrong")
        if base_poset_hasse(g, base) != _FIGURE_D132_EDGES:
            bad.append("cover relations of the base-132 order are wrong")
    body = f"{triples} triples, " + ("equivalences hold" if not bad else "violations")
    return SuiteResult("tilted", n, not bad, body, bad[:10])


def suite_flat_count(n: int, seed: int, samples: int) -> SuiteResult:
    """find_flat yields flat sequences and the ledgers have the right size."""
    g = build_graph(n)
    bad: list[str] = []
    pairs = 0
    x_checked = 0
    total = comb(n, 2)
    for u in g.vertices:
        dist = g.distances_from(u)
        for v in g.vertices:
            pairs += 1
            a = diagrams.find_flat(u, v)
            if not diagrams.is_flat(u, v, a):
                bad.append(f"find_flat not flat for ({_fmt(u)}, {_fmt(v)})")
                continue
            count = len(diagrams.equations(u, v, a))
            if count != total - dist[v]:
                bad.append(
                    f"ledger size {count} != {total - dist[v]} for ({_fmt(u)}, {_fmt(v)})"
                )
            if n <= 4 and dist[v] >= 1:
                members = tiltedorder.interval(u, v, g).members
                for x in sorted(members):
                    if dist[x] != dist[v] - 1:
                        continue
                    try:
                        count_x = len(diagrams.equations_with_x(u, v, a, x))
                    except PreconditionError as exc:
                        bad.append(f"x-ledger rejected ({_fmt(u)}, {_fmt(v)}, {_fmt(x)}): {exc}")
                        continue
                    x_checked += 1
                    if count_x != total - dist[v]:
                        bad.append(
                            f"x-ledger size {count_x} != {total - dist[v]} for "
                            f"({_fmt(u)}, {_fmt(v)}, {_fmt(x)})"
                        )
    body = f"{pairs} pairs, " + ("count law holds" if not bad else "violations")
    details = [f"{x_checked} coatom ledgers checked"] if x_checked else []
    return SuiteResult("flat-count", n, not bad, body, details + bad[:10])


def suite_fixedpoints(n: int, seed: int, samples: int) -> SuiteResult:
    """Coordinate flags sit in exactly the varieties of intervals containing them."""
    g = build_graph(n)
    dist = {u: g.distance_vector_from(u) for u in g.vertices}
    flags = {w: exactgeom.permutation_flag(w) for w in g.vertices}
    bad: list[str] = []
    checked = 0
    for u in g.vertices:
        du = dist[u]
        for v in g.vertices:
            total = du[g.index[v]]
            for w in g.vertices:
                checked += 1
                in_interval = du[g.index[w]] + dist[w][g.index[v]] == total
                member = exactgeom.member_T_plucker(u, v, flags[w])
                if member != in_interval:
                    bad.append(f"fixed point split on ({_fmt(u)}, {_fmt(v)}, {_fmt(w)})")
    return SuiteResult(
        "fixedpoints", n, not bad, f"{checked} triples, {len(bad)} violations", bad[:10]
    )


def _equivalence_pairs(n: int, seed: int, count: int) -> list[tuple[Perm, Perm]]:
    rng = random.Random(seed)
    perms = list(all_permutations(n))
    pairs: list[tuple[Perm, Perm]] = []
    if n == 4:
        pairs.append(((4, 3, 2, 1), (3, 1, 4, 2)))
    pairs.append((identity(n), longest_element(n)))
    pairs.append((identity(n), identity(n)))
    while len(pairs) < count:
        pair = (rng.choice(perms), rng.choice(perms))
        if pair not in pairs:
            pairs.append(pair)
    return pairs


def _all_shift_sequences(u: Perm, v: Perm) -> list[tuple[int, ...]]:
    from itertools import product

    n = len(u)
    per_column = [
        sorted(valid_shifts(prefix_set(u, k), prefix_set(v, k), n))
        for k in range(1, n)
    ]
    return [tuple(a) for a in product(*per_column)]


def suite_equivalence(n: int, seed: int, samples: int) -> SuiteResult:
    """
    The rank, per-column, and multi-Plucker membership routes agree (open
    and closed) on sampled, generic, and coordinate flags, for every shift
    sequence valid for the pair.
    """
    pairs = _equivalence_pairs(n, seed, max(50, samples))
    rng = random.Random(seed + 1)
    bad: list[str] = []
    flags_used = 0
    checks = 0
    for idx, (u, v) in enumerate(pairs):
        shift_seqs = _all_shift_sequences(u, v)
        flags: list[exactgeom.Flag] = []
        for s in range(5):
            try:
                flags.append(exactgeom.sample_in_open_stratum(u, v, seed * 1000 + idx * 10 + s))
            except SamplingError as exc:
                bad.append(f"sampler failed for ({_fmt(u)}, {_fmt(v)}): {exc}")
        flags.extend(exactgeom.random_flag(n, rng) for _ in range(5))
        flags.extend(exactgeom.permutation_flag(w) for w in all_permutations(n))
        flags_used += len(flags)
        for F in flags:
            for open_cell in (False, True):
                reference = exactgeom.member_T_plucker(u, v, F, open_cell)
                for a in shift_seqs:
                    checks += 1
                    by_rank = exactgeom.member_T_rank(u, v, a, F, open_cell)
                    by_grass = exactgeom.member_T_grassmann(u, v, a, F, open_cell)
                    if not by_rank == by_grass == reference:
                        bad.append(
                            f"memberships split on ({_fmt(u)}, {_fmt(v)}), "
                            f"a={a}, open={open_cell}"
                        )
    return SuiteResult(
        "equivalence",
        n,
        not bad,
        f"{len(pairs)} pairs, {flags_used} flags, {checks} checks, {len(bad)} disagreements",
        bad[:10],
    )


def _subinterval_classes(u: Perm, v: Perm) -> dict[frozenset[Perm], list[tuple[Perm, Perm]]]:
    """
    Subintervals of [u, v] grouped by their member sets.  A subinterval is
    a geodesically nested pair: x and y on a common shortest u -> v path
    in that order (member-set containment alone is weaker and would break
    the disjointness being tested).
    """
    members = tiltedorder.interval_member_set(u, v)
    total = graph_distance(u, v)
    classes: dict[frozenset[Perm], list[tuple[Perm, Perm]]] = {}
    for x in sorted(members):
        head = graph_distance(u, x)
        for y in sorted(members):
            if head + graph_distance(x, y) + graph_distance(y, v) != total:
                continue
            sub = tiltedorder.interval_member_set(x, y)
            classes.setdefault(sub, []).append((x, y))
    return classes


def _stratify_one(u: Perm, v: Perm, F: exactgeom.Flag, bad: list[str], notes: list[str]) -> None:
    n = len(u)
    want = tiltedorder.interval_member_set(u, v)
    label = exactgeom.stratum(u, v, F)
    located = tiltedorder.interval_member_set(label.x, label.y)
    if located != want:
        bad.append(f"stratum of a ({_fmt(u)}, {_fmt(v)}) sample is {_fmt(label.x)}, {_fmt(label.y)}")
    elif (label.x, label.y) != (u, v):
        notes.append(
            f"label ({_fmt(label.x)}, {_fmt(label.y)}) names the same stratum as "
            f"({_fmt(u)}, {_fmt(v)})"
        )
    a = diagrams.find_flat(u, v)
    closed = exactgeom.member_T_rank(u, v, a, F, False)
    open_ = exactgeom.member_T_rank(u, v, a, F, True)
    chart = F.plucker_perm(u) != 0 and F.plucker_perm(v) != 0
    if open_ != (closed and chart):
        bad.append(f"chart law fails for ({_fmt(u)}, {_fmt(v)})")
    if not exactgeom.all_equations_vanish(F, diagrams.equations(u, v, a)):
        bad.append(f"ledger does not vanish on a ({_fmt(u)}, {_fmt(v)}) sample")


def _disjointness(u: Perm, v: Perm, F: exactgeom.Flag, bad: list[str], notes: list[str]) -> None:
    hits = []
    for member_set, reps in sorted(
        _subinterval_classes(u, v).items(), key=lambda kv: sorted(kv[1])[0]
    ):
        outcomes = {exactgeom.member_T_plucker(x, y, F, True) for x, y in reps}
        if len(outcomes) > 1:
            notes.append(
                f"open test splits within one member set under ({_fmt(u)}, {_fmt(v)})"
            )
        if True in outcomes:
            hits.append(member_set)
    if len(hits) != 1:
        bad.append(
            f"flag passes {len(hits)} open strata inside ({_fmt(u)}, {_fmt(v)}), expected 1"
        )


def suite_stratify(n: int, seed: int, samples: int) -> SuiteResult:
    """Sampler round trips, the chart law, and stratum disjointness."""
    bad: list[str] = []
    notes: list[str] = []
    if n <= 3:
        pairs = [(u, v) for u in all_permutations(n) for v in all_permutations(n)]
    else:
        rng = random.Random(seed)
        perms = list(all_permutations(n))
        pairs = [((4, 3, 2, 1), (3, 1, 4, 2)), (identity(n), longest_element(n))]
        while len(pairs) < max(10, samples):
            pair = (rng.choice(perms), rng.choice(perms))
            if pair not in pairs:
                pairs.append(pair)
    stratified = 0
    for idx, (u, v) in enumerate(pairs):
        try:
            F = exactgeom.sample_in_open_stratum(u, v, seed * 100 + idx)
        except SamplingError as exc:
            bad.append(f"sampler failed for ({_fmt(u)}, {_fmt(v)}): {exc}")
            continue
        stratified += 1
        _stratify_one(u, v, F, bad, notes)
        _disjointness(u, v, F, bad, notes)
        # a flag sampled on the boundary must land in its own substratum
        classes = _subinterval_classes(u, v)
        proper = [
            reps[0]
            for member_set, reps in sorted(classes.items(), key=lambda kv: sorted(kv[1])[0])
            if member_set != tiltedorder.interval_member_set(u, v)
        ]
        if proper:
            x, y = proper[len(proper) // 2]
            try:
                G = exactgeom.sample_in_open_stratum(x, y, seed * 100 + idx + 7)
            except SamplingError as exc:
                bad.append(f"sampler failed for substratum ({_fmt(x)}, {_fmt(y)}): {exc}")
                continue
            if not exactgeom.member_T_plucker(u, v, G, False):
                bad.append(
                    f"substratum sample of ({_fmt(x)}, {_fmt(y)}) escapes ({_fmt(u)}, {_fmt(v)})"
                )
                continue
            label = exactgeom.stratum(u, v, G)
            if tiltedorder.interval_member_set(label.x, label.y) != tiltedorder.interval_member_set(x, y):
                bad.append(
                    f"boundary flag of ({_fmt(u)}, {_fmt(v)}) located in the wrong stratum"
                )
            _disjointness(x, y, G, bad, notes)
    return SuiteResult(
        "stratify",
        n,
        not bad,
        f"{stratified} sampled flags, {len(bad)} violations",
        notes[:5] + bad[:10],
    )


def suite_plucker(n: int, seed: int, samples: int) -> SuiteResult:
    """Incidence relations hold exactly on random coordinates of real flags."""
    rng = random.Random(seed)
    flags = [exactgeom.random_flag(n, rng) for _ in range(max(2, samples // 2))]
    flags.append(exactgeom.permutation_flag(longest_element(n)))
    if n >= 3:
        u, v = identity(n), longest_element(n)
        flags.append(exactgeom.sample_in_open_stratum(u, v, seed))
    universe = list(range(1, n + 1))
    bad = 0
    checked = 0
    for F in flags:
        for _ in range(100):
            if n >= 3:
                k = rng.randint(2, n - 1)
                I = rng.sample(universe, k)
                J = rng.sample(universe, k - 1)
                checked += 1
                if not exactgeom.incidence_product_rule_holds(F, I, J):
                    bad += 1
            if n >= 4:
                r = rng.randint(3, n - 1)
                s = rng.randint(1, r - 2)
                I = rng.sample(universe, r)
                J = rng.sample(universe, s)
                j = rng.choice([x for x in universe if x not in J])
                checked += 2
                if not exactgeom.incidence_sum_rule_holds(F, I, J):
                    bad += 1
                if not exactgeom.incidence_exchange_rule_holds(F, I, J, j):
                    bad += 1
    return SuiteResult(
        "plucker", n, bad == 0, f"{len(flags)} flags, {checked} relations, {bad} violations"
    )


SUITES = {
    "distance": (suite_distance, 4),
    "samepath": (suite_samepath, 3),
    "bfp": (suite_bfp, 4),
    "increasing": (suite_increasing, 3),
    "rotation": (suite_rotation, 4),
    "tilted": (suite_tilted, 3),
    "flat-count": (suite_flat_count, 4),
    "fixedpoints": (suite_fixedpoints, 3),
    "equivalence": (suite_equivalence, 4),
    "stratify": (suite_stratify, 3),
    "plucker": (suite_plucker, 4),
}


def run_suite(name: str, n: int | None = None, seed: int = 0, samples: int = 5) -> SuiteResult:
    if name not in SUITES:
        raise PreconditionError(
            f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))}"
        )
    fn, default_n = SUITES[name]
    return fn(n if n is not None else default_n, seed, samples)
