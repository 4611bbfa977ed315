"""Representation classes, realizations and decomposition reports.

The cyclic building blocks are P(J; z) for a cyclically admissible finite
word J and unit phase z (a cycle with one phase-twisted edge), P(K) for an
infinite word K (a chain), and the direct-integral class into which an
eventually periodic chain splits.  This module realizes branching systems
as sparse phase-weighted partial permutations, verifies the two defining
relations of the algebra, classifies components, and produces cyclic and
irreducible-level decomposition reports.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .branching import (
    BranchingSystem,
    ComponentSkeleton,
    Label,
    Violation,
    build_cycle_system,
    direct_sum,
    a_cycle_set,
    find_components,
    standard_bfs,
    validate_bfs,
)
from .phases import ONE, Phase, RootSum, phases_equal
from .words import (
    EMPTY_WORD,
    TailWord,
    TransitionMatrix,
    Word,
    canonical_rotation,
    enumerate_cyclic_classes,
    format_tail,
    format_word,
    is_cyclically_admissible,
    is_periodic,
    power,
    primitive_root,
    pspec_summary,
    tail_canonical,
    tail_is_admissible,
)

INFINITY = float("inf")

Multiplicity = Union[int, float]  # positive int, or INFINITY


class RepError(ValueError):
    """A representation-level argument violates an operation contract."""


class PhaseOffDomainError(RepError):
    pass


class UnresolvedComponentError(RepError):
    pass


class IntegralClassUnsupportedError(RepError):
    pass


class PhaseUnsupportedError(RepError):
    pass


class UndecidableEquivalenceError(RepError):
    pass


@dataclass(frozen=True)
class FiniteClass:
    """P(word; phase): word canonical (minimal rotation), phase = the
    product of edge phases around the cycle."""

    word: Word
    phase: Phase = ONE


@dataclass(frozen=True)
class TailClass:
    """P(tail) for an eventually periodic tail in canonical form."""

    tail: TailWord


@dataclass(frozen=True)
class IntegralClass:
    """The direct integral of P(word; c) over the unit circle."""

    word: Word


@dataclass(frozen=True, eq=False)
class OpaqueTailClass:
    """P(K) for a declared non-eventually-periodic generator.

    Identity of the generator object is the only handle on the class;
    finite shifts of the same generator stay in one class.
    """

    prefix: Word
    source: object

    def __eq__(self, other: object) -> bool:
        return isinstance(other, OpaqueTailClass) and self.source is other.source

    def __hash__(self) -> int:
        return hash(id(self.source))


RepClass = Union[FiniteClass, TailClass, IntegralClass, OpaqueTailClass]


def finite_class(word: Word, phase: Phase = ONE, matrix: TransitionMatrix | None = None) -> FiniteClass:
    """Canonical P(word; phase); validates cyclic admissibility when a
    matrix is supplied.  The phase is rotation-invariant, so it carries
    over to the canonical rotation unchanged."""
    if matrix is not None and not is_cyclically_admissible(matrix, word):
        raise RepError(f"{format_word(word)} is not cyclically admissible")
    return FiniteClass(word=canonical_rotation(word), phase=phase)


def tail_class(tail: TailWord, matrix: TransitionMatrix | None = None) -> TailClass:
    if matrix is not None:
        return TailClass(tail_canonical(matrix, tail))
    return TailClass(TailWord(EMPTY_WORD, canonical_rotation(tail.period)))


def integral_class(word: Word, matrix: TransitionMatrix | None = None) -> IntegralClass:
    if matrix is not None and not is_cyclically_admissible(matrix, word):
        raise RepError(f"{format_word(word)} is not cyclically admissible")
    if is_periodic(word):
        raise RepError("integral classes carry non-periodic words only")
    return IntegralClass(word=canonical_rotation(word))


def class_literal(c: RepClass) -> str:
    """Round-trippable literal: P(12), P(12;1/2), P((1|2)^inf), Int(12)."""
    if isinstance(c, FiniteClass):
        if c.phase.is_one():
            return f"P({format_word(c.word)})"
        return f"P({format_word(c.word)};{format_phase(c.phase)})"
    if isinstance(c, TailClass):
        pre = format_word(c.tail.preperiod) if c.tail.preperiod else ""
        return f"P(({pre}|{format_word(c.tail.period)})^inf)"
    if isinstance(c, IntegralClass):
        return f"Int({format_word(c.word)})"
    return f"P((~{format_word(c.prefix)}...)^inf)"  # opaque: not round-trippable


def format_phase(p: Phase) -> str:
    if p.is_exact:
        return f"{p.turns.numerator}/{p.turns.denominator}"
    z = p.as_complex()
    return f"{z.real:.12g}{z.imag:+.12g}i"


def parse_phase(text: str) -> Phase:
    text = text.strip()
    if text.endswith("i"):
        body = text[:-1]
        split = max(body.rfind("+", 1), body.rfind("-", 1))
        if split <= 0:
            raise RepError(f"bad phase literal {text!r}")
        return Phase.from_complex(complex(float(body[:split]), float(body[split:])))
    if "/" in text:
        num, den = text.split("/", 1)
        return Phase.exact(int(num), int(den))
    try:
        return Phase.exact(int(text))
    except ValueError:
        raise RepError(f"bad phase literal {text!r}") from None


def parse_class_literal(text: str, matrix: TransitionMatrix | None = None) -> RepClass:
    from .words import parse_tail, parse_word

    text = text.strip()
    if text.startswith("Int(") and text.endswith(")"):
        return integral_class(parse_word(text[4:-1]), matrix)
    if not (text.startswith("P(") and text.endswith(")")):
        raise RepError(f"bad class literal {text!r}")
    body = text[2:-1]
    if body.endswith("^inf"):
        inner = body[:-4].strip()
        if inner.startswith("(") and inner.endswith(")"):
            inner = inner[1:-1]
        tail = parse_tail(inner if "|" in inner else f"|({inner})")
        if matrix is not None and not tail_is_admissible(matrix, tail):
            raise RepError(f"tail {format_tail(tail)} is not admissible")
        return tail_class(tail, matrix)
    word_text, _, phase_text = body.partition(";")
    phase = parse_phase(phase_text) if phase_text else ONE
    return finite_class(parse_word(word_text), phase, matrix)


def is_irreducible(c: RepClass) -> bool:
    """Finite classes: non-periodic word.  Eventually periodic tails are
    never irreducible; declared non-eventually-periodic generators are.
    A direct integral is not irreducible."""
    if isinstance(c, FiniteClass):
        return not is_periodic(c.word)
    if isinstance(c, TailClass):
        return False
    if isinstance(c, OpaqueTailClass):
        return True
    return False


def equivalent(c1: RepClass, c2: RepClass) -> bool:
    """Unitary equivalence of cyclic classes over one matrix.

    Finite classes match on rotation class and phase; tails on their
    canonical tail; integrals on their word; kinds never mix.  Two
    distinct opaque generators are undecidable and raise.
    """
    if isinstance(c1, FiniteClass) and isinstance(c2, FiniteClass):
        return c1.word == c2.word and phases_equal(c1.phase, c2.phase)
    if isinstance(c1, TailClass) and isinstance(c2, TailClass):
        return c1.tail == c2.tail
    if isinstance(c1, IntegralClass) and isinstance(c2, IntegralClass):
        return c1.word == c2.word
    if isinstance(c1, OpaqueTailClass) and isinstance(c2, OpaqueTailClass):
        if c1.source is c2.source:
            return True
        raise UndecidableEquivalenceError(
            "equivalence of two distinct tail generators is not finitely decidable"
        )
    return False


def twist_by_gauge(c: RepClass, gauge: tuple[Phase, ...]) -> RepClass:
    """Compose with the gauge automorphism s_i -> g_i s_i.

    A finite class picks up the product of the gauge phases along its
    word; chain-type classes are untouched.
    """
    if isinstance(c, IntegralClass):
        raise IntegralClassUnsupportedError("gauge twist of a direct integral is not supported")
    if isinstance(c, FiniteClass):
        acc = c.phase
        for s in c.word:
            acc = acc * gauge[s - 1]
        return FiniteClass(word=c.word, phase=acc)
    return c


@dataclass(eq=False)
class Decomposition:
    """A multiset of cyclic classes with multiplicities in {1,2,...,inf}.

    Keys are canonical, so equivalent components merge; components the
    truncation could not resolve are listed, never merged.
    """

    entries: dict[RepClass, Multiplicity] = field(default_factory=dict)
    unresolved: tuple[ComponentSkeleton, ...] = ()
    level: str = "cyclic"
    matrix: TransitionMatrix | None = None
    tail_marker: bool | None = None  # shift reports: non-e.p. classes exist

    def add(self, c: RepClass, mult: Multiplicity = 1) -> None:
        self.entries[c] = self.entries.get(c, 0) + mult

    def sorted_entries(self) -> list[tuple[RepClass, Multiplicity]]:
        return sorted(self.entries.items(), key=lambda kv: class_literal(kv[0]))


@dataclass(frozen=True, eq=False)
class MatrixRealization:
    """pi_f as a sparse phase-weighted partial permutation per symbol.

    s_i sends the basis vector at x to weight * basis vector at f_i(x)
    on the recorded domain and to 0 elsewhere.
    """

    system: BranchingSystem
    weights: dict[int, dict[Label, Phase]]

    @property
    def matrix(self) -> TransitionMatrix:
        return self.system.matrix


def realize(
    f: BranchingSystem, phases: dict[tuple[int, Label], Phase] | None = None
) -> MatrixRealization:
    """Attach unit weights (or the supplied twists) to the recorded edges."""
    weights: dict[int, dict[Label, Phase]] = {
        i: {x: ONE for x in f.maps.get(i, {})} for i in range(1, f.n + 1)
    }
    for (i, x), phase in (phases or {}).items():
        if x not in f.maps.get(i, {}):
            raise PhaseOffDomainError(f"no edge for symbol {i} at point {x!r}")
        weights[i][x] = phase
    return MatrixRealization(system=f, weights=weights)


Vector = dict[Label, RootSum]


def basis_vector(label: Label) -> Vector:
    return {label: RootSum.one()}


def _add_term(vec: Vector, label: Label, coeff: RootSum) -> None:
    cur = vec.get(label)
    vec[label] = coeff if cur is None else cur + coeff


def apply_symbol(m: MatrixRealization, i: int, vec: Vector) -> Vector:
    out: Vector = {}
    edges = m.system.maps.get(i, {})
    for x, coeff in vec.items():
        y = edges.get(x)
        if y is not None:
            _add_term(out, y, coeff * RootSum.from_phase(m.weights[i][x]))
    return out


def apply_symbol_adjoint(m: MatrixRealization, i: int, vec: Vector) -> Vector:
    out: Vector = {}
    owner = m.system.owner
    for y, coeff in vec.items():
        data = owner.get(y)
        if data is not None and data[0] == i:
            x = data[1]
            _add_term(out, x, coeff * RootSum.from_phase(m.weights[i][x].conjugate()))
    return out


def apply_word(m: MatrixRealization, word: Word, vec: Vector) -> Vector:
    """s_word = s_{j_1} ... s_{j_k}; the rightmost factor acts first."""
    for i in reversed(word):
        vec = apply_symbol(m, i, vec)
    return vec


def apply_word_adjoint(m: MatrixRealization, word: Word, vec: Vector) -> Vector:
    """(s_word)^* = s_{j_k}^* ... s_{j_1}^*; s_{j_1}^* acts first."""
    for i in word:
        vec = apply_symbol_adjoint(m, i, vec)
    return vec


def inner_product(v: Vector, w: Vector) -> RootSum:
    total = RootSum.zero()
    for x, c in v.items():
        d = w.get(x)
        if d is not None:
            total = total + c.conjugate() * d
    return total


def vectors_equal(v: Vector, w: Vector) -> bool:
    for x in set(v) | set(w):
        if not (v.get(x, RootSum.zero()) - w.get(x, RootSum.zero())).is_zero():
            return False
    return True


@dataclass(frozen=True)
class CKReport:
    """Exact verification of the two defining relations on the basis.

    With unit phases both relations reduce to the partial-permutation
    structure, so the checks are integer-exact: s_i^* s_i at a basis point
    must match the projection sum over the row of A, and the range
    projections must resolve the identity."""

    checked_points: int
    domain_checks: int
    completeness_checks: int
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_ck_relations(m: MatrixRealization) -> CKReport:
    f = m.system
    a = f.matrix
    violations: list[Violation] = []

    for i in range(1, f.n + 1):
        images: dict[Label, Label] = {}
        for x in sorted(f.maps.get(i, {}), key=f.position.get):
            y = f.maps[i][x]
            if y in images:
                violations.append(Violation("InjectivityFail", (i,), (images[y], x, y)))
            else:
                images[y] = x

    ranges = {i: f.range_of(i) for i in range(1, f.n + 1)}
    checked = domain_checks = completeness_checks = 0
    for x in f.carrier:
        if x in f.frontier:
            continue
        checked += 1
        for i in range(1, f.n + 1):
            domain_checks += 1
            lhs = 1 if x in f.maps.get(i, {}) else 0
            rhs = sum(1 for j in range(1, f.n + 1) if a.entry(i, j) and x in ranges[j])
            if lhs != rhs:
                violations.append(Violation("DomainFail", (i,), (x,), f"{lhs} != {rhs}"))
        completeness_checks += 1
        cover = sum(1 for i in range(1, f.n + 1) if x in ranges[i])
        if cover != 1:
            violations.append(Violation("CompletenessFail", (), (x,), f"covered {cover} times"))
    return CKReport(
        checked_points=checked,
        domain_checks=domain_checks,
        completeness_checks=completeness_checks,
        violations=tuple(violations),
    )


def classify_component(c: ComponentSkeleton, m: MatrixRealization) -> RepClass:
    """Read off the class of a resolved component.

    A cycle yields P(canonical word; product of edge phases); the product
    is rotation invariant, so no rebasing is needed.  A chain yields the
    canonical tail class of its declared tail, or an opaque class when the
    tail came from a generator.
    """
    if c.kind == "cycle":
        phase = ONE
        k = len(c.points)
        for l in range(k):
            source = c.points[(l + 1) % k]
            phase = phase * m.weights[c.word[l]][source]
        return finite_class(c.word, phase, m.matrix)
    if c.kind == "chain":
        if isinstance(c.declared, TailWord):
            return tail_class(c.declared, m.matrix)
        return OpaqueTailClass(prefix=c.word, source=c.declared)
    raise UnresolvedComponentError(
        f"component through {c.points[0]!r} is not resolved inside the truncation"
    )


def decompose(
    f: BranchingSystem,
    phases: dict[tuple[int, Label], Phase] | None = None,
    structural_infinities: bool = True,
) -> Decomposition:
    """Cyclic-level decomposition of a realized system.

    Counts the resolved components per canonical class; unresolved
    components are listed untouched.  For an untwisted standard-system
    truncation the delta-row cycle classes recur with infinite
    multiplicity; their observed counts corroborate that and the reported
    multiplicity is the structural "inf".
    """
    report = validate_bfs(f)
    if not report.ok:
        raise RepError(f"system fails validation: {report.violations[0]}")
    m = realize(f, phases)
    out = Decomposition(matrix=f.matrix)
    unresolved: list[ComponentSkeleton] = []
    for comp in find_components(f):
        if comp.kind == "unresolved":
            unresolved.append(comp)
        else:
            out.add(classify_component(comp, m))
    out.unresolved = tuple(unresolved)
    if structural_infinities and not phases and f.origin == "standard":
        cycles = a_cycle_set(f.matrix)
        for word in cycles.infinite:
            key = finite_class(word)
            if key in out.entries:
                out.entries[key] = INFINITY
        for word in cycles.once:
            if out.entries.get(finite_class(word), 0) > 1:
                raise RepError(f"standard system shows {format_word(word)} more than once")
    return out


def expand_irreducible(d: Decomposition) -> Decomposition:
    """Split every reducible entry into its irreducible constituents.

    P(J0^p; c) becomes the p classes P(J0; c^(1/p) * xi^j) with xi the
    first p-th root of unity; an eventually periodic tail becomes the
    direct integral over its primitive cycle word.  Opaque tails pass
    through; the result is idempotent under this map.
    """
    out = Decomposition(
        level="irreducible",
        matrix=d.matrix,
        unresolved=d.unresolved,
        tail_marker=d.tail_marker,
    )
    for c, mult in d.entries.items():
        if isinstance(c, FiniteClass):
            root, p = primitive_root(c.word)
            if p == 1:
                out.add(c, mult)
            else:
                base = c.phase.root(p)
                for j in range(1, p + 1):
                    out.add(FiniteClass(word=root, phase=base * Phase.exact(j, p)), mult)
        elif isinstance(c, TailClass):
            out.add(IntegralClass(word=c.tail.period), mult)
        else:
            out.add(c, mult)
    return out


def state_value(a: TransitionMatrix, c: RepClass, left: Word, right: Word) -> int:
    """The vector state of the class at s_left s_right^*; exact 0 or 1.

    Cycle case: 1 iff both words lie in a common set
    I_p = {J^a + J[:p] : a >= 0}, 0 <= p < |J|.  Chain case: 1 iff both
    words are the same prefix of the tail.  Inadmissible words give 0.
    The state is written for phase 1 only; other phases are refused.
    """
    if isinstance(c, FiniteClass):
        if not c.phase.is_one():
            raise PhaseUnsupportedError("the state formula covers phase 1 only")
        word = c.word
        k = len(word)

        def in_ip(w: Word, p: int) -> bool:
            if len(w) < p or (len(w) - p) % k:
                return False
            reps = (len(w) - p) // k
            return w == power(word, reps) + word[:p]

        for p in range(k):
            if in_ip(left, p) and in_ip(right, p):
                return 1
        return 0
    if isinstance(c, TailClass):
        if left != right:
            return 0
        return 1 if left == c.tail.prefix(len(left)) else 0
    raise RepError("the state formula covers cycle and tail classes only")


def is_pure(c: RepClass) -> bool:
    """Purity of the associated state; coincides with irreducibility."""
    if isinstance(c, FiniteClass) and not c.phase.is_one():
        raise PhaseUnsupportedError("the state formula covers phase 1 only")
    if isinstance(c, IntegralClass):
        raise RepError("the state formula covers cycle and tail classes only")
    return is_irreducible(c)


@dataclass(frozen=True)
class GPReport:
    """Outcome of the cyclic-vector check for a split power class."""

    word: Word
    p: int
    fixed_point_ok: bool
    orthonormal_ok: bool
    family_size: int
    decomposition_matches: bool

    @property
    def ok(self) -> bool:
        return self.fixed_point_ok and self.orthonormal_ok and self.decomposition_matches


def gp_vector_check(a: TransitionMatrix, word: Word, p: int, depth: int = 2) -> GPReport:
    """Verify, in exact cyclotomic arithmetic, that the direct sum of the
    p phase-twisted copies of P(word) carries the power class.

    Builds P(word; xi^j) for j = 1..p, forms the unnormalized sum of the
    cyclic vectors, and checks (i) s_{word^p} fixes it, (ii) the kp
    partial-orbit vectors have Gram matrix p * identity, (iii) decomposing
    the sum reproduces the irreducible expansion of P(word^p).
    """
    if p < 1:
        raise RepError("p must be >= 1")
    if is_periodic(word):
        raise RepError("the power-splitting check needs a non-periodic word")
    k = len(word)
    summands = [build_cycle_system(a, word, depth) for _ in range(p)]
    total = direct_sum(*summands)
    anchor = format_word(word)
    wrap = word[-1]
    phases = {(wrap, f"{j - 1}:{anchor}"): Phase.exact(j, p) for j in range(1, p + 1)}
    m = realize(total, phases)

    omega: Vector = {f"{j}:{anchor}": RootSum.one() for j in range(p)}
    fixed_ok = vectors_equal(apply_word(m, power(word, p), dict(omega)), omega)

    family: list[Vector] = []
    for l in range(1, k + 1):
        for reps in range(p):
            family.append(apply_word(m, word[l - 1 :] + power(word, reps), dict(omega)))
    gram_ok = True
    expect_p = RootSum.rational(p)
    for u_idx, u in enumerate(family):
        for w_idx, w in enumerate(family):
            want = expect_p if u_idx == w_idx else RootSum.zero()
            if not (inner_product(u, w) - want).is_zero():
                gram_ok = False

    observed = decompose(total, phases=phases)
    expected = expand_irreducible(
        Decomposition(entries={finite_class(power(word, p), ONE, a): 1}, matrix=a)
    )
    deco_ok = _entries_match(observed.entries, expected.entries) and not observed.unresolved
    return GPReport(
        word=word,
        p=p,
        fixed_point_ok=fixed_ok,
        orthonormal_ok=gram_ok,
        family_size=len(family),
        decomposition_matches=deco_ok,
    )


def _entries_match(
    left: dict[RepClass, Multiplicity], right: dict[RepClass, Multiplicity]
) -> bool:
    return left == right


def decompose_standard(
    a: TransitionMatrix, cross_check_truncation: int | None = None
) -> Decomposition:
    """Exact decomposition of the standard representation.

    Each cycle of the min-successor map contributes once, except the
    delta-row cycles, which contribute with infinite multiplicity.  With a
    truncation bound the symbolic answer is checked against an actual
    truncated system.
    """
    cycles = a_cycle_set(a)
    out = Decomposition(matrix=a)
    for word in cycles.once:
        out.add(finite_class(word, ONE, a), 1)
    for word in cycles.infinite:
        out.add(finite_class(word, ONE, a), INFINITY)
    if cross_check_truncation is not None:
        observed = decompose(standard_bfs(a, cross_check_truncation))
        if not _entries_match(observed.entries, out.entries):
            raise RepError(
                f"truncation at {cross_check_truncation} disagrees with the "
                f"structural standard decomposition"
            )
    return out


def decompose_shift(a: TransitionMatrix, max_period: int) -> Decomposition:
    """Decomposition of the shift representation up to a period bound.

    Every primitive cyclic class of length <= max_period appears exactly
    once; the tail marker records whether non-eventually-periodic classes
    (each also of multiplicity one) exist at all.
    """
    if max_period < 1:
        raise RepError("max_period must be >= 1")
    out = Decomposition(matrix=a)
    for word, periodic in enumerate_cyclic_classes(a, max_period):
        if not periodic:
            out.add(finite_class(word, ONE, a), 1)
    out.tail_marker = not pspec_summary(a, max_period).finite
    return out


def standard_is_multiplicity_free(a: TransitionMatrix) -> bool:
    return not a_cycle_set(a).infinite


def standard_is_irreducible(a: TransitionMatrix) -> bool:
    cycles = a_cycle_set(a)
    return not cycles.infinite and len(cycles.once) == 1


def phase_json(p: Phase) -> dict:
    if p.is_exact:
        return {"num": p.turns.numerator, "den": p.turns.denominator}
    z = p.as_complex()
    return {"re": z.real, "im": z.imag}


def decomposition_json(d: Decomposition) -> dict:
    """The report schema used by the CLI and the golden tests."""
    components = []
    for c, mult in d.sorted_entries():
        entry: dict = {}
        if isinstance(c, FiniteClass):
            entry["kind"] = "finite"
            entry["word"] = format_word(c.word)
            entry["phase"] = phase_json(c.phase)
        elif isinstance(c, TailClass):
            entry["kind"] = "tail"
            entry["word"] = format_word(c.tail.period)
        elif isinstance(c, IntegralClass):
            entry["kind"] = "integral"
            entry["word"] = format_word(c.word)
        else:
            raise RepError("opaque tail classes have no report form")
        entry["multiplicity"] = "inf" if mult == INFINITY else mult
        components.append(entry)
    out = {
        "matrix": [list(row) for row in d.matrix.rows] if d.matrix else None,
        "level": d.level,
        "components": components,
        "unresolved": [
            {"prefix": format_word(c.word), "size": len(c.basin)} for c in d.unresolved
        ],
    }
    if d.tail_marker is not None:
        out["tail_classes_present"] = d.tail_marker
    return out
