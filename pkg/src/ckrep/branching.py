"""Branching function systems over a transition matrix.

A branching function system is a family {f_i} of partial injections on a
countable carrier with pairwise disjoint ranges covering the carrier and
D(f_i) equal to the union of the ranges R(f_j) over the symbols j that i
may precede.  This module holds finite truncations of such systems:
axiom validation, the coding map, orbit/cycle/chain analysis, direct sums,
and the explicit constructions (cycle carriers, chain carriers, the
standard system on {1..B}, and a fixed-width stand-in for the one-sided
shift).

Truncation honesty: a carrier point is *frontier* when some axiom-relevant
datum (an image under some f_i, or the coding preimage) falls outside the
truncation.  Axioms and component structure are asserted only on the
non-frontier part; nothing is ever guessed past the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence, Union

from .words import (
    NotAdmissibleError,
    NotCyclicallyAdmissibleError,
    TailWord,
    TransitionMatrix,
    Word,
    admissible_words,
    format_word,
    is_cyclically_admissible,
    tail_is_admissible,
    tree,
)

Label = Union[int, str]

#: A source of chain letters: an eventually periodic tail, or an arbitrary
#: generator mapping 1-based positions to symbols (declared non-eventually
#: periodic; its equivalence class is opaque beyond object identity).
TailSource = Union[TailWord, Callable[[int], int]]


class BranchingError(ValueError):
    """A branching-system argument violates an operation contract."""


class MatrixMismatchError(BranchingError):
    pass


class UnresolvedPointError(BranchingError):
    pass


class InvalidSystemError(BranchingError):
    pass


class DumpFormatError(BranchingError):
    pass


@dataclass(frozen=True, eq=False)
class BranchingSystem:
    """A finite truncation of a branching function system.

    `maps[i]` is the recorded part of the partial injection f_i (domain
    point -> image point); `frontier` marks points with incomplete data.
    Immutable after construction; analyses are pure.
    """

    matrix: TransitionMatrix
    carrier: tuple[Label, ...]
    maps: dict[int, dict[Label, Label]]
    frontier: frozenset[Label]
    origin: str = "custom"
    declared_tails: dict[Label, TailSource] = field(default_factory=dict)

    @cached_property
    def position(self) -> dict[Label, int]:
        return {x: k for k, x in enumerate(self.carrier)}

    @property
    def n(self) -> int:
        return self.matrix.n

    def domain_of(self, i: int) -> set[Label]:
        return set(self.maps.get(i, {}))

    def range_of(self, i: int) -> set[Label]:
        return set(self.maps.get(i, {}).values())

    @cached_property
    def owner(self) -> dict[Label, tuple[int, Label]]:
        """For each recorded image y = f_i(x), the pair (i, x).

        Raises InvalidSystemError if two recorded edges share an image.
        """
        out: dict[Label, tuple[int, Label]] = {}
        for i in range(1, self.n + 1):
            for x, y in self.maps.get(i, {}).items():
                if y in out:
                    raise InvalidSystemError(
                        f"point {y!r} lies in two ranges: {out[y][0]} and {i}"
                    )
                out[y] = (i, x)
        return out


@dataclass(frozen=True)
class Violation:
    kind: str
    symbols: tuple[int, ...]
    points: tuple[Label, ...]
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checked_points: int
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_bfs(f: BranchingSystem) -> ValidationReport:
    """Check the system axioms on all recorded data.

    Injectivity and range disjointness are checked globally; coverage
    (every point in exactly one range) and the domain law
    D(f_i) = union of R(f_j) over j with a_ij = 1 are checked at every
    non-frontier point.  Violations are report entries, not exceptions.
    """
    a = f.matrix
    violations: list[Violation] = []

    owner: dict[Label, tuple[int, Label]] = {}
    for i in range(1, f.n + 1):
        images: dict[Label, Label] = {}
        for x in sorted(f.maps.get(i, {}), key=f.position.get):
            y = f.maps[i][x]
            if y in images:
                violations.append(
                    Violation("InjectivityFail", (i,), (images[y], x, y))
                )
            else:
                images[y] = x
            if y in owner and owner[y][0] != i:
                violations.append(
                    Violation("RangeOverlap", (owner[y][0], i), (y,))
                )
            else:
                owner.setdefault(y, (i, x))

    ranges = {i: f.range_of(i) for i in range(1, f.n + 1)}
    checked = 0
    for x in f.carrier:
        if x in f.frontier:
            continue
        checked += 1
        holders = [i for i in range(1, f.n + 1) if x in ranges[i]]
        if not holders:
            violations.append(Violation("NotCovered", (), (x,)))
        for i in range(1, f.n + 1):
            in_domain = x in f.maps.get(i, {})
            should = any(a.entry(i, j) and x in ranges[j] for j in range(1, f.n + 1))
            if in_domain != should:
                violations.append(
                    Violation(
                        "DomainMismatch",
                        (i,),
                        (x,),
                        "recorded" if in_domain else "missing",
                    )
                )
    return ValidationReport(checked_points=checked, violations=tuple(violations))


@dataclass(frozen=True)
class CodingMap:
    """The left inverse F of the system: F(f_i(x)) = x.

    Defined on non-frontier points; each entry is (symbol, preimage).
    """

    entries: dict[Label, tuple[int, Label]]

    def __call__(self, point: Label) -> tuple[int, Label]:
        if point not in self.entries:
            raise UnresolvedPointError(f"coding data for {point!r} is outside the truncation")
        return self.entries[point]


def coding_map(f: BranchingSystem) -> CodingMap:
    owner = f.owner
    return CodingMap({y: owner[y] for y in f.carrier if y not in f.frontier and y in owner})


@dataclass(frozen=True)
class ComponentSkeleton:
    """One orbit of the system inside the truncation.

    kind "cycle": `word` is the cycle word read from `points[0]` and
    f_{word[l]}(points[l+1]) = points[l] around the cycle.
    kind "chain": the system was built from a declared tail; `word` is the
    observed prefix and `points` the chain spine.
    kind "unresolved": the orbit leaves through the frontier with no
    declared tail; `word` is the observed coding prefix.
    """

    kind: str
    word: Word
    points: tuple[Label, ...]
    basin: tuple[Label, ...]
    declared: TailSource | None = None


class _UnionFind:
    def __init__(self):
        self.parent: dict[Label, Label] = {}

    def find(self, x: Label) -> Label:
        root = x
        while self.parent.setdefault(root, root) != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: Label, y: Label) -> None:
        self.parent[self.find(x)] = self.find(y)


def find_components(f: BranchingSystem) -> tuple[ComponentSkeleton, ...]:
    """Partition the truncation into orbits and classify each one.

    Follows the coding map from a deterministic start until it either
    closes (cycle, provided the whole cycle is non-frontier) or exits
    through the frontier (chain when the system declares a tail for the
    orbit, unresolved otherwise).  Orbits with no non-frontier point are
    truncation noise and are not reported.
    """
    owner = f.owner  # raises on range overlaps
    uf = _UnionFind()
    for x in f.carrier:
        uf.find(x)
    for y, (_, x) in owner.items():
        uf.union(x, y)

    groups: dict[Label, list[Label]] = {}
    for x in f.carrier:
        groups.setdefault(uf.find(x), []).append(x)

    def walk(start: Label) -> tuple[list[Label], list[int], Label | None]:
        # Follow F until a repeat (returns repeat point) or a dead end.
        seen: dict[Label, int] = {}
        points: list[Label] = []
        letters: list[int] = []
        cur = start
        while cur not in seen:
            seen[cur] = len(points)
            points.append(cur)
            if cur not in owner:
                return points, letters, None
            sym, nxt = owner[cur]
            letters.append(sym)
            cur = nxt
        return points, letters, cur

    components: list[ComponentSkeleton] = []
    ordered_groups = sorted(groups.values(), key=lambda g: min(f.position[x] for x in g))
    for group in ordered_groups:
        non_frontier = [x for x in group if x not in f.frontier]
        if not non_frontier:
            continue
        basin = tuple(sorted(group, key=f.position.get))
        start = min(group, key=f.position.get)
        points, letters, repeat = walk(start)
        if repeat is not None:
            at = points.index(repeat)
            cycle_pts = points[at:]
            # restart at the cycle's first-in-carrier point for determinism
            anchor = min(cycle_pts, key=f.position.get)
            cyc_points: list[Label] = []
            cyc_word: list[int] = []
            cur = anchor
            for _ in cycle_pts:
                cyc_points.append(cur)
                sym, cur = owner[cur]
                cyc_word.append(sym)
            kind = "cycle" if all(p not in f.frontier for p in cyc_points) else "unresolved"
            components.append(
                ComponentSkeleton(
                    kind=kind,
                    word=tuple(cyc_word),
                    points=tuple(cyc_points),
                    basin=basin,
                )
            )
            continue
        anchors = [x for x in group if x in f.declared_tails]
        if len(anchors) == 1:
            a_points, a_letters, a_repeat = walk(anchors[0])
            if a_repeat is None:
                components.append(
                    ComponentSkeleton(
                        kind="chain",
                        word=tuple(a_letters),
                        points=tuple(a_points),
                        basin=basin,
                        declared=f.declared_tails[anchors[0]],
                    )
                )
                continue
        components.append(
            ComponentSkeleton(
                kind="unresolved",
                word=tuple(letters),
                points=tuple(points),
                basin=basin,
            )
        )
    return tuple(components)


def direct_sum(*systems: BranchingSystem) -> BranchingSystem:
    """Disjoint union; labels gain a "<part>:" prefix."""
    if not systems:
        raise BranchingError("direct_sum needs at least one system")
    first = systems[0]
    for g in systems[1:]:
        if g.matrix.rows != first.matrix.rows:
            raise MatrixMismatchError("summands live over different matrices")

    def tag(k: int, x: Label) -> str:
        return f"{k}:{x}"

    carrier: list[Label] = []
    maps: dict[int, dict[Label, Label]] = {i: {} for i in range(1, first.n + 1)}
    frontier: set[Label] = set()
    declared: dict[Label, TailSource] = {}
    for k, g in enumerate(systems):
        carrier.extend(tag(k, x) for x in g.carrier)
        for i in range(1, g.n + 1):
            for x, y in g.maps.get(i, {}).items():
                maps[i][tag(k, x)] = tag(k, y)
        frontier.update(tag(k, x) for x in g.frontier)
        for x, src in g.declared_tails.items():
            declared[tag(k, x)] = src
    return BranchingSystem(
        matrix=first.matrix,
        carrier=tuple(carrier),
        maps=maps,
        frontier=frozenset(frontier),
        origin="sum",
        declared_tails=declared,
    )


def build_cycle_system(a: TransitionMatrix, word: Word, depth: int) -> BranchingSystem:
    """The cycle carrier for a cyclically admissible word.

    Carrier points are multiindices: the suffixes of `word` (the cycle),
    the one-letter side branches that are not cycle edges, and the
    feeding trees on those branches, truncated to tree depth `depth`.
    Maps prepend their symbol, except the single wrap edge sending the
    full word to its last suffix.  Tree leaves at the depth bound are
    frontier.
    """
    if not word or not is_cyclically_admissible(a, word):
        raise NotCyclicallyAdmissibleError(f"{format_word(word)} is not cyclically admissible")
    if depth < 0:
        raise BranchingError("depth must be >= 0")
    k = len(word)
    suffixes = [word[l:] for l in range(k)]  # suffix l starts at letter l+1
    lambda2: list[Word] = []
    for l in range(k):
        prev = word[l - 1]  # letter before position l+1, cyclically
        for j in a.predecessors(word[l]):
            if j != prev:
                lambda2.append((j,) + suffixes[l])
    lambda3: list[Word] = []
    for branch in lambda2:
        for x in tree(a, branch[0], depth, "in").words:
            lambda3.append(x + branch)
    points: list[Word] = suffixes + lambda2 + lambda3
    assert len(set(points)) == len(points)

    labels = {w: format_word(w) for w in points}
    point_set = set(points)
    carrier = tuple(labels[w] for w in points)
    maps: dict[int, dict[Label, Label]] = {i: {} for i in range(1, a.n + 1)}
    frontier: set[Label] = set()
    wrap_source, wrap_symbol, wrap_target = word, word[-1], suffixes[-1]
    for w in points:
        for i in a.predecessors(w[0]):
            if w == wrap_source and i == wrap_symbol:
                target: Word = wrap_target
            else:
                target = (i,) + w
            if target in point_set:
                maps[i][labels[w]] = labels[target]
            else:
                frontier.add(labels[w])
    return BranchingSystem(
        matrix=a,
        carrier=carrier,
        maps=maps,
        frontier=frozenset(frontier),
        origin="cycle",
    )


def _chain_letters(a: TransitionMatrix, source: TailSource, count: int) -> list[int]:
    if isinstance(source, TailWord):
        if not tail_is_admissible(a, source):
            raise NotAdmissibleError(f"tail {source} is not admissible")
        return [source.letter(m) for m in range(1, count + 1)]
    letters = [source(m) for m in range(1, count + 1)]
    for m, letter in enumerate(letters, start=1):
        if not 1 <= letter <= a.n:
            raise NotAdmissibleError(f"generator letter {letter} at {m} outside 1..{a.n}")
    for m in range(1, count):
        if not a.entry(letters[m - 1], letters[m]):
            raise NotAdmissibleError(
                f"generator letters {letters[m-1]},{letters[m]} break admissibility at {m}"
            )
    return letters


def build_chain_system(
    a: TransitionMatrix, source: TailSource, chain_len: int, depth: int
) -> BranchingSystem:
    """The chain carrier for an infinite word given by `source`.

    Spine points 1..chain_len with f_{j_{m-1}}(m) = m-1, side branches
    "(j)@m" for the symbols that enter position m without being the chain
    edge (all of them at m = 1), and feeding trees to `depth`.  The spine
    end and the tree boundary are frontier; the spine head declares the
    source, so the orbit classifies as a chain.
    """
    if chain_len < 2:
        raise BranchingError("chain_len must be >= 2")
    if depth < 0:
        raise BranchingError("depth must be >= 0")
    letters = _chain_letters(a, source, chain_len)

    def side_label(w: Word, m: int) -> str:
        return f"{format_word(w)}@{m}"

    carrier: list[Label] = list(range(1, chain_len + 1))
    side_words: list[tuple[Word, int]] = []
    for m in range(1, chain_len + 1):
        for j in a.predecessors(letters[m - 1]):
            if m == 1 or j != letters[m - 2]:
                side_words.append(((j,), m))
    branches = list(side_words)
    for (branch, m) in branches:
        for x in tree(a, branch[0], depth, "in").words:
            side_words.append((x + branch, m))
    carrier.extend(side_label(w, m) for (w, m) in side_words)

    side_set = {(w, m) for (w, m) in side_words}
    maps: dict[int, dict[Label, Label]] = {i: {} for i in range(1, a.n + 1)}
    frontier: set[Label] = {chain_len}  # its coding preimage is chain_len + 1
    for m in range(1, chain_len + 1):
        for i in a.predecessors(letters[m - 1]):
            if m >= 2 and i == letters[m - 2]:
                maps[i][m] = m - 1
            else:
                maps[i][m] = side_label((i,), m)
    for (w, m) in side_words:
        for i in a.predecessors(w[0]):
            target = ((i,) + w, m)
            if target in side_set:
                maps[i][side_label(w, m)] = side_label(*target)
            else:
                frontier.add(side_label(w, m))
    return BranchingSystem(
        matrix=a,
        carrier=tuple(carrier),
        maps=maps,
        frontier=frozenset(frontier),
        origin="chain",
        declared_tails={1: source},
    )


@dataclass(frozen=True)
class ACoordinate:
    """Per-row data (B_i, M_i, q_i) of the standard system.

    q_i ranks the members of B_i = {j : a_ij = 1}; it is the order
    isomorphism onto {1..M_i}.
    """

    b_sets: tuple[tuple[int, ...], ...]

    def m(self, i: int) -> int:
        return len(self.b_sets[i - 1])

    def q(self, i: int, j: int) -> int:
        return self.b_sets[i - 1].index(j) + 1

    def q_inv(self, i: int, r: int) -> int:
        return self.b_sets[i - 1][r - 1]


def a_coordinate(a: TransitionMatrix) -> ACoordinate:
    return ACoordinate(tuple(a.successors(i) for i in range(1, a.n + 1)))


def standard_bfs(a: TransitionMatrix, truncation: int) -> BranchingSystem:
    """The standard system on {1..B}: f_i(N(m-1)+j) = N(M_i(m-1)+q_i(j)-1)+i.

    R(f_i) is the residue class of i; the formula is invertible, so a point
    is frontier exactly when one of its images or its unique preimage lands
    beyond the truncation.
    """
    n = a.n
    if truncation < n:
        raise BranchingError(f"truncation must be >= {n}")
    coord = a_coordinate(a)
    maps: dict[int, dict[Label, Label]] = {i: {} for i in range(1, n + 1)}
    frontier: set[Label] = set()
    for i in range(1, n + 1):
        mi = coord.m(i)
        for j in coord.b_sets[i - 1]:
            qi = coord.q(i, j)
            m = 1
            while (x := n * (m - 1) + j) <= truncation:
                y = n * (mi * (m - 1) + qi - 1) + i
                if y <= truncation:
                    maps[i][x] = y
                else:
                    frontier.add(x)
                m += 1
    for x in range(1, truncation + 1):
        i = (x - 1) % n + 1
        pos = (x - 1) // n  # x = N*pos + i
        mi = coord.m(i)
        pre = n * (pos // mi) + coord.q_inv(i, pos % mi + 1)
        if pre > truncation:
            frontier.add(x)
    return BranchingSystem(
        matrix=a,
        carrier=tuple(range(1, truncation + 1)),
        maps=maps,
        frontier=frozenset(frontier),
        origin="standard",
    )


def phi_map(a: TransitionMatrix) -> dict[int, int]:
    """The min-successor map i -> min{j : a_ij = 1}."""
    return {i: min(a.successors(i)) for i in range(1, a.n + 1)}


@dataclass(frozen=True)
class ACycleSet:
    """Cycle words of the min-successor map, split by multiplicity.

    `once` lists the cycles appearing once in the standard system;
    `infinite` those whose letters all sit on delta rows, which recur with
    infinite multiplicity.
    """

    cycles: tuple[Word, ...]
    once: tuple[Word, ...]
    infinite: tuple[Word, ...]


def a_cycle_set(a: TransitionMatrix) -> ACycleSet:
    phi = phi_map(a)
    seen: set[int] = set()
    cycles: list[Word] = []
    for start in range(1, a.n + 1):
        if start in seen:
            continue
        trail = []
        v = start
        while v not in seen:
            seen.add(v)
            trail.append(v)
            v = phi[v]
        if v in trail:  # new cycle closed within this walk
            cyc = trail[trail.index(v):]
            head = min(cyc)
            word = [head]
            w = phi[head]
            while w != head:
                word.append(w)
                w = phi[w]
            cycles.append(tuple(word))

    def is_delta_cycle(word: Word) -> bool:
        k = len(word)
        for idx, i in enumerate(word):
            nxt = word[(idx + 1) % k]
            row = a.rows[i - 1]
            if any(row[j] != (1 if j == nxt - 1 else 0) for j in range(a.n)):
                return False
        return True

    cycles.sort(key=lambda w: (len(w), w))
    infinite = tuple(w for w in cycles if is_delta_cycle(w))
    once = tuple(w for w in cycles if not is_delta_cycle(w))
    return ACycleSet(cycles=tuple(cycles), once=once, infinite=infinite)


def _min_period(word: Word) -> int:
    table = [0] * len(word)
    k = 0
    for i in range(1, len(word)):
        while k and word[i] != word[k]:
            k = table[k - 1]
        if word[i] == word[k]:
            k += 1
        table[i] = k
    return len(word) - table[-1]


def _periodic_extension(word: Word) -> int:
    """The next letter when `word` continues with its minimal period."""
    return word[len(word) - _min_period(word)]


def shift_bfs(a: TransitionMatrix, word_len: int) -> BranchingSystem:
    """Fixed-width stand-in for the shift system on one-sided sequences.

    Points are admissible words of length `word_len` standing for the
    sequences extending them.  Each point's coding image drops the first
    letter and extends by the minimal period of the remainder, which is
    the true shift for genuinely periodic points of period at most
    word_len/2; everything whose extension is not forced this way is
    frontier.  Only cycle detection up to that period is claimed.
    """
    if word_len < 2:
        raise BranchingError("word_len must be >= 2")
    points = admissible_words(a, word_len)
    point_set = set(points)
    maps: dict[int, dict[Label, Label]] = {i: {} for i in range(1, a.n + 1)}
    backward_defined: set[Word] = set()
    for y in points:
        rest = y[1:]
        ext = _periodic_extension(rest)
        if a.entry(y[-1], ext):
            x = rest + (ext,)
            assert x in point_set
            maps[y[0]][format_word(x)] = format_word(y)
            backward_defined.add(y)
    frontier = {
        format_word(w)
        for w in points
        if not (w in backward_defined and _periodic_extension(w[:-1]) == w[-1])
    }
    return BranchingSystem(
        matrix=a,
        carrier=tuple(format_word(w) for w in points),
        maps=maps,
        frontier=frozenset(frontier),
        origin="shift",
    )


def truncated_from_rules(
    a: TransitionMatrix,
    size: int,
    rules: Sequence[tuple[Callable[[int], bool], Callable[[int], int]]],
) -> BranchingSystem:
    """Truncate a system given on all of {1,2,...} by per-symbol rules.

    `rules[i-1]` is a (domain test, image) pair describing f_i on the full
    carrier.  Points whose image escapes {1..size}, or that no recorded
    edge covers, are frontier; coverage gaps are attributed to the
    truncation, so the rules are trusted to describe a genuine system.
    """
    if len(rules) != a.n:
        raise BranchingError(f"need {a.n} rules, got {len(rules)}")
    maps: dict[int, dict[Label, Label]] = {i: {} for i in range(1, a.n + 1)}
    frontier: set[Label] = set()
    covered: set[int] = set()
    for i, (dom, img) in enumerate(rules, start=1):
        for x in range(1, size + 1):
            if dom(x):
                y = img(x)
                if y < 1:
                    raise BranchingError(f"rule {i} sends {x} to {y}, below the carrier")
                if y <= size:
                    maps[i][x] = y
                    covered.add(y)
                else:
                    frontier.add(x)
    frontier.update(x for x in range(1, size + 1) if x not in covered)
    return BranchingSystem(
        matrix=a,
        carrier=tuple(range(1, size + 1)),
        maps=maps,
        frontier=frozenset(frontier),
        origin="rules",
    )


def dump_bfs(f: BranchingSystem) -> str:
    """Line format: header "N B", one "i: x->y, ..." line per symbol.

    Frontier points carry a "~" prefix at each occurrence; points with no
    incident edge are listed on a trailing "0:" line.  Labels may not
    contain the separators.
    """

    def fmt(x: Label) -> str:
        s = str(x)
        if any(tok in s for tok in (",", "->", "~", " ")):
            raise DumpFormatError(f"label {s!r} clashes with the dump separators")
        return f"~{s}" if x in f.frontier else s

    def order(x: Label) -> tuple[int, str]:
        # label-intrinsic ordering so a dump survives a load/dump cycle
        return (len(str(x)), str(x))

    lines = [f"{f.n} {len(f.carrier)}"]
    touched: set[Label] = set()
    for i in range(1, f.n + 1):
        edges = sorted(f.maps.get(i, {}).items(), key=lambda e: order(e[0]))
        lines.append(f"{i}: " + ", ".join(f"{fmt(x)}->{fmt(y)}" for x, y in edges))
        touched.update(x for x, _ in edges)
        touched.update(y for _, y in edges)
    isolated = sorted((x for x in f.carrier if x not in touched), key=order)
    if isolated:
        lines.append("0: " + ", ".join(fmt(x) for x in isolated))
    return "\n".join(lines) + "\n"


def load_bfs(text: str, matrix: TransitionMatrix) -> BranchingSystem:
    """Parse the dump format back into a system over the given matrix.

    Labels are opaque in the text format and come back as strings; the
    carrier keeps first-mention order.  Components and decompositions do
    not depend on either choice.
    """
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise DumpFormatError("empty dump")
    head = lines[0].split()
    if len(head) != 2:
        raise DumpFormatError(f"bad header {lines[0]!r}")
    n, size = int(head[0]), int(head[1])
    if n != matrix.n:
        raise DumpFormatError(f"dump is for {n} symbols, matrix has {matrix.n}")

    frontier: set[Label] = set()
    carrier: list[Label] = []
    seen: set[Label] = set()

    def intern(token: str) -> Label:
        token = token.strip()
        is_front = token.startswith("~")
        if is_front:
            token = token[1:]
        label: Label = token
        if label not in seen:
            seen.add(label)
            carrier.append(label)
        if is_front:
            frontier.add(label)
        return label

    maps: dict[int, dict[Label, Label]] = {i: {} for i in range(1, n + 1)}
    for line in lines[1:]:
        sym_text, _, rest = line.partition(":")
        sym = int(sym_text)
        if not 0 <= sym <= n:
            raise DumpFormatError(f"bad symbol {sym_text!r}")
        for item in filter(None, (p.strip() for p in rest.split(","))):
            if sym == 0:
                intern(item)
                continue
            if "->" not in item:
                raise DumpFormatError(f"bad edge {item!r}")
            src, dst = item.split("->", 1)
            maps[sym][intern(src)] = intern(dst)
    if len(carrier) != size:
        raise DumpFormatError(f"header says {size} points, found {len(carrier)}")
    return BranchingSystem(
        matrix=matrix,
        carrier=tuple(carrier),
        maps=maps,
        frontier=frozenset(frontier),
        origin="loaded",
    )
