"""
Exact-rational flags, Plucker coordinates, and tilted Richardson membership.

Everything here is exact: matrices are tuples of tuples of Fraction, zero
tests are literal equality, and no floating point appears anywhere.  A
flag is an invertible n x n matrix; its k-th space is the span of the
first k columns, and P_I is the minor on rows I and the first |I| columns.

Membership of a flag in the (open) tilted Richardson variety of a pair
(u, v) is decided three provably equivalent ways: rank bounds on cyclic
row windows, per-column rotated Grassmannian Richardson conditions, and
vanishing of the multi-Plucker coordinates P_w for w outside [u, v].  The
implementations share nothing on purpose; their agreement is part of the
verification suites.
"""
from __future__ import annotations

import random
import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .diagrams import EquationSet, PluckerEquation, find_flat
from .errors import (
    InternalInvariantError,
    ParseError,
    PreconditionError,
    ResourceLimitError,
    SamplingError,
)
from .latticepath import shift_leq, shifted_gale_leq, shifted_interval
from .permcore import (
    Perm,
    all_permutations,
    cyclic_set,
    format_permutation,
    prefix_set,
    validate_permutation,
)
from .tiltedorder import interval_member_set

Matrix = tuple[tuple[Fraction, ...], ...]

#: Full Plucker tables (all 2^n subsets) are only materialized up to here.
MAX_TABLE_N = 7

#: Numerators of random rational draws are uniform on [-SAMPLE_BOUND, SAMPLE_BOUND].
SAMPLE_BOUND = 100


# ---------------------------------------------------------------------------
# Exact linear algebra on Fraction rows


def _echelon_rank(rows: list[list[Fraction]]) -> int:
    """Rank by Gaussian elimination; mutates its argument."""
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        lead = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            if rows[r][col] != 0:
                factor = rows[r][col] / lead
                for c in range(col, ncols):
                    rows[r][c] -= factor * rows[rank][c]
        rank += 1
    return rank


def _determinant(rows: list[list[Fraction]]) -> Fraction:
    """Determinant by elimination with row swaps; mutates its argument."""
    n = len(rows)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        lead = rows[col][col]
        for r in range(col + 1, n):
            if rows[r][col] != 0:
                factor = rows[r][col] / lead
                for c in range(col, n):
                    rows[r][c] -= factor * rows[col][c]
    return det


def nullspace_basis(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """A basis of {x : Rx = 0} via reduced row echelon form."""
    if not rows:
        return [[Fraction(i == j) for j in range(ncols)] for i in range(ncols)]
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        lead = mat[rank][col]
        mat[rank] = [x / lead for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                factor = mat[r][col]
                mat[r] = [x - factor * y for x, y in zip(mat[r], mat[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -mat[r][f]
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# Matrices and the text format


def matrix_from_rows(rows: Iterable[Iterable[object]]) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def parse_matrix(text: str) -> Matrix:
    """
    Plain-text format: first line n, then n lines of n rationals ("p/q" or
    integers) separated by whitespace.
    """
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty matrix file")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise ParseError(f"first line must be the size n, got {lines[0]!r}") from exc
    if len(lines) != n + 1:
        raise ParseError(f"expected {n} matrix rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        tokens = ln.split()
        if len(tokens) != n:
            raise ParseError(f"expected {n} entries per row, got {len(tokens)}: {ln!r}")
        try:
            rows.append(tuple(Fraction(tok) for tok in tokens))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational in row {ln!r}: {exc}") from exc
    return tuple(rows)


def format_matrix(m: Matrix) -> str:
    lines = [str(len(m))]
    for row in m:
        lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def chi_rotate(m: Matrix) -> Matrix:
    """Cyclic row rotation: (row_1, ..., row_n) becomes (row_n, row_1, ...)."""
    return (m[-1],) + m[:-1]


def chi_set(values: Iterable[int], n: int) -> frozenset[int]:
    """The companion index rotation i -> i + 1 (mod n)."""
    return frozenset(i % n + 1 for i in values)


# ---------------------------------------------------------------------------
# Flags


class Flag:
    """
    An invertible exact-rational matrix with a lazily built, internally
    synchronized table of Plucker coordinates.  Immutable once built.
    """

    def __init__(self, matrix: Matrix):
        n = len(matrix)
        if n == 0 or any(len(row) != n for row in matrix):
            raise PreconditionError("flag matrices must be square and nonempty")
        self.matrix: Matrix = matrix_from_rows(matrix)
        self.n = n
        self._cache: dict[frozenset[int], Fraction] = {frozenset(): Fraction(1)}
        self._lock = threading.Lock()
        if self.plucker(range(1, n + 1)) == 0:
            raise PreconditionError("matrix is singular; a flag needs full rank")

    def plucker(self, values: Iterable[int]) -> Fraction:
        """P_I: minor on rows I (sorted) and the first |I| columns; P_{} = 1."""
        key = frozenset(values)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        rows_idx = sorted(key)
        if rows_idx and not (1 <= rows_idx[0] and rows_idx[-1] <= self.n):
            raise PreconditionError(f"row set {sorted(key)} out of range 1..{self.n}")
        k = len(rows_idx)
        sub = [list(self.matrix[r - 1][:k]) for r in rows_idx]
        value = _determinant(sub)
        with self._lock:
            self._cache[key] = value
        return value

    def plucker_perm(self, w: Perm) -> Fraction:
        """P_w: the product of the prefix coordinates of w."""
        out = Fraction(1)
        for k in range(1, self.n):
            out *= self.plucker(prefix_set(w, k))
            if out == 0:
                return out
        return out


def flag_from_matrix(m: Matrix) -> Flag:
    return Flag(m)


def permutation_flag(w: Perm) -> Flag:
    """The coordinate flag of w: matrix with a 1 at (w(i), i)."""
    validate_permutation(w)
    n = len(w)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(1, n + 1):
        rows[w[i - 1] - 1][i - 1] = Fraction(1)
    return Flag(matrix_from_rows(rows))


def random_flag(n: int, seed: int | random.Random, bound: int = SAMPLE_BOUND) -> Flag:
    """A generic flag: integer entries uniform on [-bound, bound]."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    while True:
        rows = [[Fraction(rng.randint(-bound, bound)) for _ in range(n)] for _ in range(n)]
        if _determinant([row[:] for row in rows]) != 0:
            return Flag(matrix_from_rows(rows))


def plucker_table_json(F: Flag) -> str:
    """Full table keyed by sorted index strings; bounded at n <= MAX_TABLE_N."""
    import json

    if F.n > MAX_TABLE_N:
        raise ResourceLimitError(f"full Plucker tables are bounded at n <= {MAX_TABLE_N}")
    table = {}
    for k in range(1, F.n + 1):
        for I in combinations(range(1, F.n + 1), k):
            table[",".join(map(str, I))] = str(F.plucker(I))
    return json.dumps(table, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# Signed coordinates and the incidence relations


def plucker_seq(F: Flag, seq: Sequence[int]) -> Fraction:
    """P of an arbitrary index sequence: 0 on repeats, else the sign of the
    sorting permutation times the sorted-subset coordinate."""
    if len(set(seq)) != len(seq):
        return Fraction(0)
    inversions = sum(
        1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j]
    )
    sign = -1 if inversions % 2 else 1
    return sign * F.plucker(seq)


def plucker_plus(F: Flag, J: Iterable[int], i: int) -> Fraction:
    """P_{J + i}: append i to the sorted list of J."""
    return plucker_seq(F, tuple(sorted(J)) + (i,))


def plucker_minus(F: Flag, I: Iterable[int], i: int) -> Fraction:
    """P_{I - i}: drop i from sorted I, with the sign (-1)^(k - position)."""
    I_sorted = tuple(sorted(I))
    pos = I_sorted.index(i) + 1
    sign = -1 if (len(I_sorted) - pos) % 2 else 1
    return sign * F.plucker(frozenset(I_sorted) - {i})


def plucker_minus_plus(F: Flag, I: Iterable[int], i: int, j: int) -> Fraction:
    """P_{(I - i) + j}."""
    I_sorted = tuple(sorted(I))
    pos = I_sorted.index(i) + 1
    sign = -1 if (len(I_sorted) - pos) % 2 else 1
    return sign * plucker_seq(F, tuple(x for x in I_sorted if x != i) + (j,))


def incidence_product_rule_holds(F: Flag, I: Iterable[int], J: Iterable[int]) -> bool:
    """P_I P_J = sum_{i in I} P_{I-i} P_{J+i} for |I| = |J| + 1."""
    I_set, J_set = frozenset(I), frozenset(J)
    if len(I_set) != len(J_set) + 1:
        raise PreconditionError("product rule needs |I| = |J| + 1")
    lhs = F.plucker(I_set) * F.plucker(J_set)
    rhs = sum(plucker_minus(F, I_set, i) * plucker_plus(F, J_set, i) for i in I_set)
    return lhs == rhs


def incidence_sum_rule_holds(F: Flag, I: Iterable[int], J: Iterable[int]) -> bool:
    """sum_{i in I} P_{I-i} P_{J+i} = 0 for |I| - |J| >= 2."""
    I_set, J_set = frozenset(I), frozenset(J)
    if len(I_set) - len(J_set) < 2:
        raise PreconditionError("sum rule needs |I| - |J| >= 2")
    return sum(plucker_minus(F, I_set, i) * plucker_plus(F, J_set, i) for i in I_set) == 0


def incidence_exchange_rule_holds(
    F: Flag, I: Iterable[int], J: Iterable[int], j: int
) -> bool:
    """
    P_I P_{J+j} = sum_{i in I} P_{I-i+j} P_{J+i} for |I| - |J| >= 2 and
    j not in J.  (The sign convention here is the one actual minors obey:
    it follows from the general incidence relation with the singleton
    exchange set {j}.)
    """
    I_set, J_set = frozenset(I), frozenset(J)
    if len(I_set) - len(J_set) < 2:
        raise PreconditionError("exchange rule needs |I| - |J| >= 2")
    if j in J_set:
        raise PreconditionError("exchange rule needs j outside J")
    lhs = F.plucker(I_set) * plucker_plus(F, J_set, j)
    rhs = sum(
        plucker_minus_plus(F, I_set, i, j) * plucker_plus(F, J_set, i) for i in I_set
    )
    return lhs == rhs


# ---------------------------------------------------------------------------
# Rank windows


def rank_region(F: Flag, region: Iterable[int], k: int) -> int:
    """Rank of the rows in `region` restricted to the first k columns."""
    rows_idx = sorted(frozenset(region))
    if not 0 <= k <= F.n:
        raise PreconditionError(f"column count {k} out of range 0..{F.n}")
    if not rows_idx or k == 0:
        return 0
    return _echelon_rank([list(F.matrix[r - 1][:k]) for r in rows_idx])


# ---------------------------------------------------------------------------
# The three membership definitions


def member_T_rank(
    u: Perm, v: Perm, a: tuple[int, ...], F: Flag, open_cell: bool = False
) -> bool:
    """
    Rank-window route: for every column i and window endpoint j, the rows
    cyclically at or after the cut a_i satisfy the bound from u and the
    rows before it the bound from v (equalities for the open cell).
    """
    n = F.n
    if not shift_leq(u, v, a):
        raise PreconditionError("u is not below v under the supplied shift sequence")
    for i in range(1, n):
        u_i, v_i = prefix_set(u, i), prefix_set(v, i)
        cut = a[i - 1]
        for j in range(1, n + 1):
            upper = cyclic_set(cut, j, n)
            lower = cyclic_set(j, cut - 1, n)
            bound_u = len(u_i & upper)
            bound_v = len(v_i & lower)
            ru = rank_region(F, upper, i)
            rv = rank_region(F, lower, i)
            if open_cell:
                if ru != bound_u or rv != bound_v:
                    return False
            else:
                if ru > bound_u or rv > bound_v:
                    return False
    return True


def member_T_grassmann(
    u: Perm, v: Perm, a: tuple[int, ...], F: Flag, open_cell: bool = False
) -> bool:
    """
    Per-column route: column k must land in the rotated Grassmannian
    Richardson variety of (u[k], v[k], a_k), i.e. every P_K with K outside
    the shifted Gale interval vanishes; the open cell also needs the two
    endpoint coordinates nonzero.
    """
    n = F.n
    if not shift_leq(u, v, a):
        raise PreconditionError("u is not below v under the supplied shift sequence")
    for k in range(1, n):
        window = shifted_interval(prefix_set(u, k), prefix_set(v, k), a[k - 1], n)
        for K in combinations(range(1, n + 1), k):
            if frozenset(K) not in window and F.plucker(K) != 0:
                return False
        if open_cell and (
            F.plucker(prefix_set(u, k)) == 0 or F.plucker(prefix_set(v, k)) == 0
        ):
            return False
    return True


def member_T_plucker(u: Perm, v: Perm, F: Flag, open_cell: bool = False) -> bool:
    """
    Multi-Plucker route, needing no shift sequence: P_w vanishes for every
    w outside [u, v]; the open cell adds P_u P_v != 0.
    """
    n = F.n
    if len(u) != n or len(v) != n:
        raise PreconditionError("permutations must match the flag's size")
    members = interval_member_set(u, v)
    for w in all_permutations(n):
        if w not in members and F.plucker_perm(w) != 0:
            return False
    if open_cell:
        return F.plucker_perm(u) != 0 and F.plucker_perm(v) != 0
    return True


# ---------------------------------------------------------------------------
# Stratum location


@dataclass(frozen=True)
class StratumLabel:
    x: Perm
    y: Perm
    u: Perm
    v: Perm
    a: tuple[int, ...]


def _rank_jump_rows(F: Flag, k: int, row_order: Sequence[int]) -> frozenset[int]:
    """Rows where the rank of the first k columns jumps while scanning."""
    basis: list[list[Fraction]] = []
    jumps = set()
    for r in row_order:
        vec = list(F.matrix[r - 1][:k])
        for b in basis:
            lead = next((c for c in range(k) if b[c] != 0), None)
            if lead is not None and vec[lead] != 0:
                factor = vec[lead] / b[lead]
                vec = [x - factor * y for x, y in zip(vec, b)]
        if any(x != 0 for x in vec):
            jumps.add(r)
            basis.append(vec)
    return frozenset(jumps)


def stratum(u: Perm, v: Perm, F: Flag) -> StratumLabel:
    """
    Locate the unique open stratum of the tilted Richardson variety of
    (u, v) containing F.  Scanning the rows of each column space cyclically
    from the flat cut (forward for the bottom label, backward for the top)
    yields nested rank-jump sets whose layers spell out the pair (x, y).
    """
    n = F.n
    if not member_T_plucker(u, v, F, open_cell=False):
        raise PreconditionError("flag is not a member of the tilted Richardson variety")
    a = find_flat(u, v)
    x_word: list[int] = []
    y_word: list[int] = []
    I_prev: frozenset[int] = frozenset()
    J_prev: frozenset[int] = frozenset()
    for k in range(1, n + 1):
        if k < n:
            cut = a[k - 1]
            forward = [(cut - 1 + s) % n + 1 for s in range(n)]
            backward = list(reversed(forward))
            I_k = _rank_jump_rows(F, k, forward)
            J_k = _rank_jump_rows(F, k, backward)
        else:
            I_k = J_k = frozenset(range(1, n + 1))
        for name, cur, prev in (("forward", I_k, I_prev), ("backward", J_k, J_prev)):
            if len(cur) != k or not prev < cur:
                raise InternalInvariantError(
                    f"{name} rank-jump sets fail to nest at column {k}"
                )
        x_word.append(next(iter(I_k - I_prev)))
        y_word.append(next(iter(J_k - J_prev)))
        I_prev, J_prev = I_k, J_k
    x, y = tuple(x_word), tuple(y_word)
    label = StratumLabel(x, y, u, v, a)
    for k in range(1, n):
        chain = (prefix_set(u, k), prefix_set(x, k), prefix_set(y, k), prefix_set(v, k))
        for lo, hi in zip(chain, chain[1:]):
            if not shifted_gale_leq(lo, hi, a[k - 1], n):
                raise InternalInvariantError(
                    f"stratum label breaks the shifted chain at column {k}"
                )
    if not member_T_plucker(x, y, F, open_cell=True):
        raise InternalInvariantError("located stratum rejects its own flag")
    return label


# ---------------------------------------------------------------------------
# Completion of a nonvanishing coordinate to a permutation


def complete_to_permutation(F: Flag, values: Iterable[int]) -> Perm:
    """
    Given P_I != 0, produce w with w[|I|] = I and P_w != 0, by shrinking I
    one full-rank step at a time and then growing it back up to [n]
    (smallest usable row at each step, for determinism).
    """
    I = frozenset(values)
    k = len(I)
    if F.plucker(I) == 0:
        raise PreconditionError("P_I vanishes; completion needs a nonzero coordinate")
    word: dict[int, int] = {}
    cur = I
    for size in range(k, 0, -1):
        choice = None
        for i in sorted(cur):
            if F.plucker(cur - {i}) != 0:
                choice = i
                break
        if choice is None:
            raise InternalInvariantError("no full-rank shrink step exists")
        word[size] = choice
        cur = cur - {choice}
    cur = I
    for size in range(k, F.n):
        choice = None
        for i in sorted(frozenset(range(1, F.n + 1)) - cur):
            if F.plucker(cur | {i}) != 0:
                choice = i
                break
        if choice is None:
            raise InternalInvariantError("no full-rank growth step exists")
        word[size + 1] = choice
        cur = cur | {choice}
    w = tuple(word[pos] for pos in range(1, F.n + 1))
    if F.plucker_perm(w) == 0:
        raise InternalInvariantError("completion produced a vanishing P_w")
    return w


# ---------------------------------------------------------------------------
# Equation evaluation and the stratum sampler


def equation_vanishes(F: Flag, eq: PluckerEquation) -> bool:
    if eq.kind == "vanish":
        return F.plucker(eq.subsets[0]) == 0
    s0, s1, s2, s3 = eq.signs
    lhs = s0 * s1 * F.plucker(eq.subsets[0]) * F.plucker(eq.subsets[1])
    rhs = s2 * s3 * F.plucker(eq.subsets[2]) * F.plucker(eq.subsets[3])
    return lhs == rhs


def all_equations_vanish(F: Flag, es: EquationSet) -> bool:
    return all(equation_vanishes(F, eq) for eq in es.equations)


def _minor_of_columns(cols: list[list[Fraction]], rows_idx: Sequence[int]) -> Fraction:
    sub = [[cols[c][r - 1] for c in range(len(rows_idx))] for r in rows_idx]
    return _determinant(sub)


def _cap_constraints(
    cols: list[list[Fraction]], rows_idx: Sequence[int], cap: int, n: int
) -> list[list[Fraction]] | None:
    """
    Keep rank(rows, built columns + new column) at most cap.  If the built
    columns already sit at the cap, the new column's restriction must stay
    inside their restricted span, a linear condition; below the cap the new
    column is unconstrained; above it, the partial matrix is already bad.
    """
    restricted = [[col[r - 1] for r in rows_idx] for col in cols]
    rank = _echelon_rank([row[:] for row in restricted]) if restricted else 0
    if rank > cap:
        return None
    if rank < cap:
        return []
    out = []
    for lam in nullspace_basis(restricted, len(rows_idx)):
        coeffs = [Fraction(0)] * n
        for m, r in enumerate(rows_idx):
            coeffs[r - 1] = lam[m]
        out.append(coeffs)
    return out


def _sampler_caps(u: Perm, v: Perm, a: tuple[int, ...]) -> list[dict[tuple[int, ...], int]]:
    """
    Projection-rank caps for the column sampler.  A space whose Plucker
    coordinates vanish outside the level-j window has row matroid with
    every basis inside the window, so for any row subset S its projection
    rank is at most max over window members K of |K and S|.  Those caps
    bind every earlier column as well (each column lies in every later
    space of the flag), so column k obeys, for each S, the minimum cap
    over levels j >= k.  Entry k-1 of the returned list maps S to that
    suffix minimum; vacuous caps (>= |S|) are dropped.
    """
    n = len(u)
    subsets = [
        tuple(sorted(S))
        for size in range(1, n + 1)
        for S in combinations(range(1, n + 1), size)
    ]
    per_level: list[dict[tuple[int, ...], int]] = []
    for j in range(1, n):
        window = shifted_interval(prefix_set(u, j), prefix_set(v, j), a[j - 1], n)
        caps = {}
        for S in subsets:
            S_set = frozenset(S)
            caps[S] = max(len(K & S_set) for K in window)
        per_level.append(caps)
    suffix: list[dict[tuple[int, ...], int]] = [dict() for _ in range(n)]
    running: dict[tuple[int, ...], int] = {}
    for j in range(n - 1, 0, -1):
        for S, cap in per_level[j - 1].items():
            if S not in running or cap < running[S]:
                running[S] = cap
        suffix[j - 1] = {S: cap for S, cap in running.items() if cap < len(S)}
    return suffix


def sample_in_open_stratum(
    u: Perm,
    v: Perm,
    seed: int = 0,
    *,
    max_column_tries: int = 40,
    max_restarts: int = 8,
) -> Flag:
    """
    A random rational flag in the open stratum of (u, v), built column by
    column with exact rational elimination.  Column k must respect every
    projection-rank cap the level windows impose (which makes all the
    off-window Plucker coordinates of its level vanish, plus everything
    deeper levels force on it, since the column lies inside every later
    space of the flag); the caps are linear in the column once earlier
    columns are fixed.  A random point of the solution space is drawn,
    redrawn until the chart coordinates of the column are nonzero, and
    the finished flag is re-verified through the Plucker membership route.
    """
    n = len(u)
    if len(v) != n:
        raise PreconditionError("permutations must have the same size")
    a = find_flat(u, v)
    caps_for_column = _sampler_caps(u, v, a)
    rng = random.Random(seed)
    last_failure = n
    for _ in range(max_restarts):
        cols: list[list[Fraction]] = []
        failed = False
        for k in range(1, n + 1):
            constraints: list[list[Fraction]] = []
            if k < n:
                for S, cap in sorted(caps_for_column[k - 1].items()):
                    if cap >= min(len(S), k):
                        continue
                    extra = _cap_constraints(cols, S, cap, n)
                    if extra is None:
                        raise InternalInvariantError(
                            f"partial matrix broke a rank cap at column {k}"
                        )
                    constraints.extend(extra)
            basis = nullspace_basis(constraints, n)
            chart_rows = [sorted(prefix_set(u, k)), sorted(prefix_set(v, k))]
            accepted = None
            if basis:
                for _attempt in range(max_column_tries):
                    draw = [
                        Fraction(rng.randint(-SAMPLE_BOUND, SAMPLE_BOUND))
                        for _ in basis
                    ]
                    col = [
                        sum((c * b[r] for c, b in zip(draw, basis)), Fraction(0))
                        for r in range(n)
                    ]
                    trial = cols + [col]
                    if all(_minor_of_columns(trial, rows) != 0 for rows in chart_rows):
                        accepted = col
                        break
            if accepted is None:
                last_failure = k
                failed = True
                break
            cols.append(accepted)
        if failed:
            continue
        matrix = matrix_from_rows([[cols[c][r] for c in range(n)] for r in range(n)])
        flag = Flag(matrix)
        if member_T_plucker(u, v, flag, open_cell=True):
            return flag
        last_failure = n
    raise SamplingError(
        f"could not sample the open stratum of ({format_permutation(u)}, "
        f"{format_permutation(v)}); column {last_failure} kept failing",
        column=last_failure,
    )
