"""Shared fixtures: the matrix corpus and independent brute-force oracles.

The oracles deliberately avoid the library's own algorithms: rotation
minima are taken by base-N positional value over all rotations, periodicity
by trying every proper divisor, and cyclic words by filtering the full
cartesian product.
"""

from __future__ import annotations

import itertools

from ckrep.words import TransitionMatrix, Word, validate_matrix

# The seven 2x2 matrices without zero rows or columns.
ALL_2X2 = [
    [[1, 1], [1, 1]],
    [[1, 1], [1, 0]],
    [[0, 1], [1, 1]],
    [[1, 0], [1, 1]],
    [[1, 1], [0, 1]],
    [[1, 0], [0, 1]],
    [[0, 1], [1, 0]],
]

A1_ROWS = [[1, 1], [0, 1]]
A2_ROWS = [[1, 1], [1, 0]]

# 3x3 fixture matrices; NAIVE1/NAIVE2 carry the hand-built rule systems.
NAIVE1_ROWS = [[0, 0, 1], [1, 0, 1], [1, 1, 1]]
NAIVE2_ROWS = [[0, 1, 1], [1, 0, 1], [1, 1, 1]]
A3_ROWS = [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
A4_ROWS = [[1, 0, 1], [0, 1, 1], [1, 1, 1]]

FOUR_BY_FOUR = [
    ([[0, 1, 0, 1], [0, 1, 0, 1], [1, 1, 0, 1], [0, 1, 1, 1]], "2"),
    ([[0, 1, 0, 1], [0, 0, 1, 1], [1, 1, 0, 1], [0, 1, 1, 1]], "123"),
    ([[0, 0, 1, 1], [1, 0, 1, 1], [0, 1, 0, 1], [0, 1, 1, 1]], "132"),
]

CORPUS_ROWS = ALL_2X2 + [NAIVE1_ROWS, NAIVE2_ROWS, A3_ROWS, A4_ROWS] + [
    rows for rows, _ in FOUR_BY_FOUR
]


def corpus() -> list[TransitionMatrix]:
    return [validate_matrix(rows) for rows in CORPUS_ROWS]


def full_matrix(n: int) -> TransitionMatrix:
    return validate_matrix([[1] * n for _ in range(n)])


def all_words(n: int, length: int):
    return itertools.product(range(1, n + 1), repeat=length)


def brute_min_rotation(word: Word, n: int) -> Word:
    """Positional-value minimum over all rotations, straight from the
    definition of the order."""
    k = len(word)

    def value(w: Word) -> int:
        return sum(s * n ** (k - 1 - i) for i, s in enumerate(w))

    return min((word[r:] + word[:r] for r in range(k)), key=value)


def brute_is_periodic(word: Word) -> bool:
    k = len(word)
    return any(
        k % d == 0 and word == word[:d] * (k // d) for d in range(1, k) if k % d == 0
    )


def brute_cyclic_words(a: TransitionMatrix, length: int) -> list[Word]:
    """All cyclically admissible words of exactly `length`, by filtering
    the full product."""
    out = []
    for w in all_words(a.n, length):
        pairs = list(zip(w, w[1:] + w[:1]))
        if all(a.entry(x, y) for x, y in pairs):
            out.append(tuple(w))
    return out


def brute_simple_cycles(a: TransitionMatrix) -> list[tuple[int, ...]]:
    """Simple cycles of the digraph as rotation classes (min vertex first)."""
    cycles = set()
    for k in range(1, a.n + 1):
        for verts in itertools.permutations(range(1, a.n + 1), k):
            if verts[0] != min(verts):
                continue
            pairs = list(zip(verts, verts[1:] + verts[:1]))
            if all(a.entry(x, y) for x, y in pairs):
                cycles.add(verts)
    return sorted(cycles, key=lambda w: (len(w), w))


def brute_spectrum_finite(a: TransitionMatrix) -> bool:
    """Independent finiteness decision: the class count is finite iff no
    vertex lies on two distinct simple cycles."""
    cycles = brute_simple_cycles(a)
    seen: set[int] = set()
    for cyc in cycles:
        if seen & set(cyc):
            return False
        seen.update(cyc)
    return True
