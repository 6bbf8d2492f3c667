"""
Permutations of [n] = {1, ..., n} in one-line notation, together with the
cyclic-interval / shifted-order vocabulary everything else is built on.

Conventions used throughout the package:

- A permutation is a tuple of the values 1..n, ``w = (w_1, ..., w_n)``, so
  ``w[i-1]`` is the value at position ``i``.
- Composition is ``(u v)(i) = u(v(i))``; multiplying on the right by the
  transposition ``t = (i, j)`` exchanges the entries at positions i and j.
- A root is a pair ``(i, j)`` with ``1 <= i < j <= n``, printed ``e{i}-e{j}``.
- Cyclic intervals are read by walking forward ``a -> a+1 -> ... -> b``
  (values wrap at n).  Two conventions circulate for the wrapped case a > b;
  we use the walk-forward reading {a+1,...,n} u {1,...,b-1} for the open
  interval, which is the one that makes membership rotation-equivariant:
  k in (a,b)_c iff k+1 in (a+1,b+1)_c.  Degenerate cases: [j,j]_c = {j},
  [j,j)_c = (j,j]_c = (j,j)_c = {} and a right endpoint of 0 is read as n,
  so [j,0]_c = {j,...,n}.
"""
from __future__ import annotations

import itertools
from math import isqrt
from typing import Iterable, Iterator, Sequence

from .errors import ParseError, PreconditionError

Perm = tuple[int, ...]
Root = tuple[int, int]


def is_permutation_word(word: Sequence[int]) -> bool:
    """True iff word lists each of 1..n exactly once, n = len(word) >= 1."""
    n = len(word)
    return n >= 1 and sorted(word) == list(range(1, n + 1))


def validate_permutation(w: Sequence[int]) -> Perm:
    if not is_permutation_word(w):
        raise PreconditionError(f"not a permutation of 1..{len(w)}: {tuple(w)}")
    return tuple(w)


def parse_permutation(text: str) -> Perm:
    """
    Parse one-line notation, either a digit string (n <= 9) or a
    comma-separated list of integers.

    >>> parse_permutation("321")
    (3, 2, 1)
    >>> parse_permutation("7,3,6,4,1,5,2")
    (7, 3, 6, 4, 1, 5, 2)
    """
    text = text.strip()
    if not text:
        raise ParseError("empty permutation")
    if "," in text:
        tokens = [tok.strip() for tok in text.split(",")]
    else:
        tokens = list(text)
    word = []
    for tok in tokens:
        if not tok.isdigit():
            raise ParseError(f"invalid token {tok!r} in permutation {text!r}")
        word.append(int(tok))
    n = len(word)
    seen: set[int] = set()
    for tok, value in zip(tokens, word):
        if value < 1 or value > n:
            raise ParseError(f"value {tok} out of range 1..{n} in {text!r}")
        if value in seen:
            raise ParseError(f"duplicate value {tok} in {text!r}")
        seen.add(value)
    return tuple(word)


def format_permutation(w: Perm) -> str:
    """One-line text form: digits for n <= 9, comma-separated above."""
    if len(w) <= 9:
        return "".join(str(v) for v in w)
    return ",".join(str(v) for v in w)


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def longest_element(n: int) -> Perm:
    """w_0 = n n-1 ... 1."""
    return tuple(range(n, 0, -1))


def inverse(w: Perm) -> Perm:
    inv = [0] * len(w)
    for pos, value in enumerate(w, start=1):
        inv[value - 1] = pos
    return tuple(inv)


def compose(u: Perm, v: Perm) -> Perm:
    """(u v)(i) = u(v(i))."""
    return tuple(u[v[i] - 1] for i in range(len(u)))


def all_permutations(n: int) -> Iterator[Perm]:
    """All of S_n in lexicographic one-line order."""
    return itertools.permutations(range(1, n + 1))


def coxeter_length(w: Perm) -> int:
    """
    Number of inversions #{(i,j) : i < j, w_i > w_j}.

    >>> coxeter_length((3, 2, 1))
    3
    """
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def apply_transposition(w: Perm, t: Root) -> Perm:
    """
    Right multiplication w * t_{ij}: exchange the entries at positions i, j.

    >>> apply_transposition((3, 2, 1), (1, 3))
    (1, 2, 3)
    """
    i, j = t
    if not (1 <= i < j <= len(w)):
        raise PreconditionError(f"root ({i},{j}) out of range for n={len(w)}")
    word = list(w)
    word[i - 1], word[j - 1] = word[j - 1], word[i - 1]
    return tuple(word)


def prefix_set(w: Perm, k: int) -> frozenset[int]:
    """The value set {w_1, ..., w_k}; k = 0 gives the empty set."""
    if not 0 <= k <= len(w):
        raise PreconditionError(f"prefix length {k} out of range 0..{len(w)}")
    return frozenset(w[:k])


def long_cycle_rotate(w: Perm) -> Perm:
    """
    Apply the long cycle (1 2 ... n) on values: every value v becomes v+1
    (mod n), positions untouched.

    >>> long_cycle_rotate((1, 2, 3))
    (2, 3, 1)
    """
    n = len(w)
    return tuple(v % n + 1 for v in w)


def root_str(t: Root) -> str:
    return f"e{t[0]}-e{t[1]}"


def all_roots(n: int) -> list[Root]:
    """Positive roots (i, j), i < j, in lexicographic order."""
    return [(i, j) for i in range(1, n) for j in range(i + 1, n + 1)]


# ---------------------------------------------------------------------------
# Cyclic intervals


def cyclic_contains(
    a: int,
    b: int,
    k: int,
    n: int,
    *,
    include_a: bool = True,
    include_b: bool = True,
) -> bool:
    """
    Is k in the cyclic interval from a to b (walk-forward reading)?

    Openness is controlled per endpoint; the fully closed interval is the
    default.  A right endpoint b = 0 is read as n.

    >>> cyclic_contains(3, 1, 4, 4, include_a=False, include_b=False)
    True
    >>> cyclic_contains(5, 5, 2, 6, include_b=False)
    False
    """
    if not 1 <= a <= n:
        raise PreconditionError(f"left endpoint {a} out of range 1..{n}")
    if b == 0:
        b = n
    if not 1 <= b <= n:
        raise PreconditionError(f"right endpoint {b} out of range 0..{n}")
    if not 1 <= k <= n:
        raise PreconditionError(f"value {k} out of range 1..{n}")
    if a == b:
        return include_a and include_b and k == a
    pos = (k - a) % n
    width = (b - a) % n
    if pos == 0:
        return include_a
    if pos == width:
        return include_b
    return pos < width


def cyclic_set(
    a: int,
    b: int,
    n: int,
    *,
    include_a: bool = True,
    include_b: bool = True,
) -> frozenset[int]:
    """The cyclic interval from a to b as a set, same conventions as above."""
    return frozenset(
        k
        for k in range(1, n + 1)
        if cyclic_contains(a, b, k, n, include_a=include_a, include_b=include_b)
    )


# ---------------------------------------------------------------------------
# Shifted linear order


def shifted_key(r: int, x: int, n: int) -> int:
    """Rank of x in the order r < r+1 < ... < n < 1 < ... < r-1."""
    return (x - r) % n


def shifted_less(r: int, a: int, b: int, n: int) -> bool:
    """
    Is a strictly before b in the shifted linear order with minimum r?

    >>> shifted_less(4, 5, 2, 5)
    True
    """
    return shifted_key(r, a, n) < shifted_key(r, b, n)


def shifted_sorted(r: int, values: Iterable[int], n: int) -> tuple[int, ...]:
    return tuple(sorted(values, key=lambda x: shifted_key(r, x, n)))


# ---------------------------------------------------------------------------
# Reflection orderings


def reflection_ordering(reduced_word: Sequence[int]) -> tuple[Root, ...]:
    """
    The reflection ordering induced by a reduced word for the longest
    permutation: the k-th root is the image of the k-th simple root under
    the product of the first k-1 letters.

    The word uses 1-based simple-generator indices.  Raises if the word is
    not a reduced word for w_0 (wrong length, bad letters, or wrong product).

    >>> reflection_ordering((1, 2, 1))
    ((1, 2), (1, 3), (2, 3))
    """
    length = len(reduced_word)
    n = (1 + isqrt(1 + 8 * length)) // 2
    if n * (n - 1) // 2 != length:
        raise PreconditionError(
            f"word of length {length} cannot be a reduced word for any w_0"
        )
    if n == 1:
        return ()
    for letter in reduced_word:
        if not 1 <= letter <= n - 1:
            raise PreconditionError(f"letter {letter} out of range 1..{n - 1}")
    sigma = list(range(1, n + 1))
    roots: list[Root] = []
    for letter in reduced_word:
        i, j = sigma[letter - 1], sigma[letter]
        if i > j:
            # the word revisits an inversion, so it is not reduced
            raise PreconditionError(
                f"word {tuple(reduced_word)} is not reduced (repeats e{j}-e{i})"
            )
        roots.append((i, j))
        sigma[letter - 1], sigma[letter] = sigma[letter], sigma[letter - 1]
    if tuple(sigma) != longest_element(n):
        raise PreconditionError(
            f"word {tuple(reduced_word)} is not a reduced word for w_0"
        )
    return tuple(roots)


def is_reflection_ordering(roots: Sequence[Root], n: int) -> bool:
    """
    Betweenness test: for every i < j < k, the root (i,k) must appear
    between (i,j) and (j,k).
    """
    if sorted(roots) != all_roots(n):
        return False
    position = {root: idx for idx, root in enumerate(roots)}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                lo, hi = sorted((position[(i, j)], position[(j, k)]))
                if not lo < position[(i, k)] < hi:
                    return False
    return True


def reduced_words_of_longest(n: int) -> list[tuple[int, ...]]:
    """
    All reduced words for w_0 in S_n, enumerated by peeling right descents.
    Exponential; meant for validation at n <= 4.
    """

    def words(w: Perm) -> list[tuple[int, ...]]:
        if coxeter_length(w) == 0:
            return [()]
        out: list[tuple[int, ...]] = []
        for i in range(1, len(w)):
            if w[i - 1] > w[i]:
                shorter = apply_transposition(w, (i, i + 1))
                out.extend(word + (i,) for word in words(shorter))
        return out

    return words(longest_element(n))
