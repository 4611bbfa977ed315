"""Command-line front end.

Thin adapters only: every verb parses arguments, calls the library, and
prints a deterministic text or JSON report.  Exit codes: 0 on success,
1 on any validation problem (including usage), 2 on an internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import branching, reps, words
from .phases import Phase, PhaseError
from .reps import INFINITY, Decomposition

DEFAULT_TRUNCATION = 256
DEFAULT_DEPTH = 4
DEFAULT_MAX_PERIOD = 6
DEFAULT_CHAIN_LEN = 8


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{message}\n\n{self.format_help()}")


def _load_matrix(path: str) -> words.TransitionMatrix:
    return words.TransitionMatrix.from_text(Path(path).read_text())


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def render_report(d: Decomposition, fmt: str = "text") -> str:
    """Deterministic rendering of a decomposition; classes sort by literal."""
    if fmt == "json":
        return json.dumps(reps.decomposition_json(d), indent=2, sort_keys=True)
    parts = []
    for c, mult in d.sorted_entries():
        lit = reps.class_literal(c)
        if mult == 1:
            parts.append(lit)
        elif mult == INFINITY:
            parts.append(f"{lit}^(inf)")
        else:
            parts.append(f"{lit}^({mult})")
    lines = [" (+) ".join(parts) if parts else "(empty)"]
    if d.unresolved:
        lines.append(f"unresolved components: {len(d.unresolved)}")
    if d.tail_marker is not None:
        lines.append(
            "non-eventually-periodic classes: "
            + ("present (each multiplicity 1)" if d.tail_marker else "none")
        )
    return "\n".join(lines)


def _print_decomposition(d: Decomposition, as_json: bool) -> None:
    print(render_report(d, "json" if as_json else "text"))


def _maybe_dump(system: branching.BranchingSystem, path: str | None) -> None:
    if path:
        Path(path).write_text(branching.dump_bfs(system))


def _cmd_classify_word(args) -> int:
    a = _load_matrix(args.matrix)
    w = words.parse_word(args.word)
    if not w:
        raise words.EmptyWordError("classify-word needs a nonempty word")
    adm = words.is_admissible(a, w)
    cyc = adm and words.is_cyclically_admissible(a, w)
    root, mult = words.primitive_root(w)
    canon = words.canonical_rotation(w)
    info = {
        "word": words.format_word(w),
        "admissible": adm,
        "cyclically_admissible": cyc,
        "periodic": mult >= 2,
        "primitive_root": words.format_word(root),
        "multiplicity": mult,
        "minimal": canon == w,
        "canonical_rotation": words.format_word(canon),
    }
    if args.json:
        _emit_json(info)
    else:
        for key in (
            "word",
            "admissible",
            "cyclically_admissible",
            "periodic",
            "primitive_root",
            "multiplicity",
            "minimal",
            "canonical_rotation",
        ):
            print(f"{key.replace('_', ' ')}: {_fmt_scalar(info[key])}")
    return 0


def _fmt_scalar(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _cmd_canon(args) -> int:
    w = words.parse_word(args.word)
    canon = words.format_word(words.canonical_rotation(w))
    if args.json:
        _emit_json({"word": canon})
    else:
        print(canon)
    return 0


def _cmd_equiv(args) -> int:
    a = _load_matrix(args.matrix) if args.matrix else None
    if len(args.cls) != 2:
        raise UsageError("equiv needs exactly two --class arguments")
    c1 = reps.parse_class_literal(args.cls[0], a)
    c2 = reps.parse_class_literal(args.cls[1], a)
    verdict = reps.equivalent(c1, c2)
    if args.json:
        _emit_json({"equivalent": verdict})
    else:
        print("equivalent" if verdict else "not equivalent")
    return 0


def _cmd_decompose_standard(args) -> int:
    a = _load_matrix(args.matrix)
    d = reps.decompose_standard(a, cross_check_truncation=args.truncate)
    _maybe_dump(branching.standard_bfs(a, args.truncate), args.dump_bfs)
    _print_decomposition(d, args.json)
    return 0


def _cmd_decompose_shift(args) -> int:
    a = _load_matrix(args.matrix)
    d = reps.decompose_shift(a, args.max_period)
    _maybe_dump(branching.shift_bfs(a, max(2, args.max_period * 2)), args.dump_bfs)
    _print_decomposition(d, args.json)
    return 0


def _cmd_decompose_bfs(args) -> int:
    a = _load_matrix(args.matrix)
    text = sys.stdin.read() if args.bfs == "-" else Path(args.bfs).read_text()
    system = branching.load_bfs(text, a)
    d = reps.decompose(system)
    _print_decomposition(d, args.json)
    return 0


def _cmd_expand(args) -> int:
    a = _load_matrix(args.matrix) if args.matrix else None
    d = Decomposition(matrix=a)
    if args.cls:
        for lit in args.cls:
            d.add(reps.parse_class_literal(lit, a))
    else:
        payload = json.loads(sys.stdin.read())
        if a is None and payload.get("matrix"):
            a = words.validate_matrix(payload["matrix"])
            d.matrix = a
        for comp in payload["components"]:
            mult = INFINITY if comp["multiplicity"] == "inf" else comp["multiplicity"]
            if comp["kind"] == "finite":
                phase = _phase_from_json(comp.get("phase"))
                d.add(reps.finite_class(words.parse_word(comp["word"]), phase, a), mult)
            elif comp["kind"] == "tail":
                d.add(reps.tail_class(words.TailWord((), words.parse_word(comp["word"])), a), mult)
            elif comp["kind"] == "integral":
                d.add(reps.integral_class(words.parse_word(comp["word"]), a), mult)
            else:
                raise UsageError(f"unknown component kind {comp['kind']!r}")
    _print_decomposition(reps.expand_irreducible(d), args.json)
    return 0


def _phase_from_json(data) -> Phase:
    if data is None:
        return Phase.exact(0)
    if "num" in data:
        return Phase.exact(data["num"], data["den"])
    return Phase.from_complex(complex(data["re"], data["im"]))


def _build_system(args, a: words.TransitionMatrix) -> branching.BranchingSystem:
    kind = args.system
    if kind == "standard":
        return branching.standard_bfs(a, args.truncate)
    if kind == "shift":
        return branching.shift_bfs(a, args.word_len)
    if kind == "cycle":
        if not args.word:
            raise UsageError("--system cycle needs --word")
        return branching.build_cycle_system(a, words.parse_word(args.word), args.depth)
    if kind == "chain":
        if not args.tail:
            raise UsageError("--system chain needs --tail")
        return branching.build_chain_system(
            a, words.parse_tail(args.tail), args.chain_len, args.depth
        )
    raise UsageError(f"unknown system kind {kind!r}")


def _cmd_verify_relations(args) -> int:
    a = _load_matrix(args.matrix)
    system = _build_system(args, a)
    _maybe_dump(system, args.dump_bfs)
    report = reps.verify_ck_relations(reps.realize(system))
    if args.json:
        _emit_json(
            {
                "checked_points": report.checked_points,
                "domain_checks": report.domain_checks,
                "completeness_checks": report.completeness_checks,
                "violations": [
                    {"kind": v.kind, "symbols": list(v.symbols), "points": [str(p) for p in v.points]}
                    for v in report.violations
                ],
                "ok": report.ok,
            }
        )
    else:
        print(f"checked points: {report.checked_points}")
        print(f"domain checks: {report.domain_checks}")
        print(f"completeness checks: {report.completeness_checks}")
        if report.ok:
            print("relations: ok")
        else:
            for v in report.violations:
                print(f"violation: {v.kind} symbols={v.symbols} points={v.points}")
    return 0 if report.ok else 1


def _cmd_state(args) -> int:
    a = _load_matrix(args.matrix)
    c = reps.parse_class_literal(args.cls, a)
    value = reps.state_value(a, c, words.parse_word(args.left), words.parse_word(args.right))
    if args.json:
        _emit_json({"value": value})
    else:
        print(value)
    return 0


def _cmd_pspec(args) -> int:
    a = _load_matrix(args.matrix)
    summary = words.pspec_summary(a, args.max_len)
    if args.json:
        _emit_json(
            {
                "finite": summary.finite,
                "class_count": summary.class_count,
                "tails_empty": summary.tails_empty,
                "counts_by_length": list(summary.counts_by_length),
                "cycle_words": [words.format_word(w) for w in summary.cycle_words],
                "cross_check_ok": summary.cross_check_ok,
            }
        )
    else:
        print(f"verdict: {'finite' if summary.finite else 'infinite'}")
        if summary.finite:
            print(f"primitive classes: {summary.class_count}")
            print(f"cycle words: {' '.join(words.format_word(w) for w in summary.cycle_words)}")
        print(f"tail classes: {'empty' if summary.tails_empty else 'nonempty'}")
        counts = " ".join(
            f"{k}:{c}" for k, c in enumerate(summary.counts_by_length, start=1)
        )
        print(f"primitive counts by length: {counts}")
        print(f"enumeration cross-check: {'ok' if summary.cross_check_ok else 'FAILED'}")
    return 0


def _cmd_gp_check(args) -> int:
    a = _load_matrix(args.matrix)
    report = reps.gp_vector_check(a, words.parse_word(args.word), args.power, depth=args.depth)
    if args.json:
        _emit_json(
            {
                "word": words.format_word(report.word),
                "p": report.p,
                "fixed_point_ok": report.fixed_point_ok,
                "orthonormal_ok": report.orthonormal_ok,
                "family_size": report.family_size,
                "decomposition_matches": report.decomposition_matches,
                "ok": report.ok,
            }
        )
    else:
        print(f"word: {words.format_word(report.word)} power: {report.p}")
        print(f"fixed point: {'ok' if report.fixed_point_ok else 'FAILED'}")
        print(
            f"orthonormal family of {report.family_size}: "
            f"{'ok' if report.orthonormal_ok else 'FAILED'}"
        )
        print(f"decomposition match: {'ok' if report.decomposition_matches else 'FAILED'}")
    return 0 if report.ok else 1


def _cmd_twist(args) -> int:
    a = _load_matrix(args.matrix) if args.matrix else None
    c = reps.parse_class_literal(args.cls, a)
    gauge = tuple(reps.parse_phase(p) for p in args.gauge.split(","))
    if a is not None and len(gauge) != a.n:
        raise UsageError(f"gauge needs {a.n} phases, got {len(gauge)}")
    if isinstance(c, reps.FiniteClass) and max(c.word) > len(gauge):
        raise UsageError(f"gauge too short for word {words.format_word(c.word)}")
    literal = reps.class_literal(reps.twist_by_gauge(c, gauge))
    if args.json:
        _emit_json({"class": literal})
    else:
        print(literal)
    return 0


def _add_common(sub, *, matrix_required=True):
    if matrix_required:
        sub.add_argument("--matrix", required=True, help="matrix file (0/1 rows)")
    else:
        sub.add_argument("--matrix", help="matrix file (0/1 rows)")
    sub.add_argument("--json", action="store_true", help="emit the JSON report")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ck", description="Permutative representation calculator")
    sub = parser.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("classify-word", help="admissibility and canonical form of a word")
    _add_common(s)
    s.add_argument("--word", required=True)
    s.set_defaults(fn=_cmd_classify_word)

    s = sub.add_parser("canon", help="canonical rotation of a word")
    s.add_argument("--word", required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=_cmd_canon)

    s = sub.add_parser("equiv", help="equivalence of two class literals")
    _add_common(s, matrix_required=False)
    s.add_argument("--class", dest="cls", action="append", required=True)
    s.set_defaults(fn=_cmd_equiv)

    s = sub.add_parser("decompose-standard", help="decompose the standard representation")
    _add_common(s)
    s.add_argument("--truncate", type=int, default=DEFAULT_TRUNCATION)
    s.add_argument("--dump-bfs", help="also write the truncated system dump here")
    s.set_defaults(fn=_cmd_decompose_standard)

    s = sub.add_parser("decompose-shift", help="decompose the shift representation")
    _add_common(s)
    s.add_argument("--max-period", type=int, default=DEFAULT_MAX_PERIOD)
    s.add_argument("--dump-bfs", help="also write the truncated system dump here")
    s.set_defaults(fn=_cmd_decompose_shift)

    s = sub.add_parser("decompose-bfs", help="decompose a dumped system")
    _add_common(s)
    s.add_argument("--bfs", required=True, help="dump file, or - for stdin")
    s.set_defaults(fn=_cmd_decompose_bfs)

    s = sub.add_parser("expand", help="irreducible-level expansion")
    _add_common(s, matrix_required=False)
    s.add_argument("--class", dest="cls", action="append", help="class literal (repeatable)")
    s.set_defaults(fn=_cmd_expand)

    s = sub.add_parser("verify-relations", help="check the defining relations on a system")
    _add_common(s)
    s.add_argument("--system", choices=["standard", "shift", "cycle", "chain"], default="standard")
    s.add_argument("--word", help="cycle word for --system cycle")
    s.add_argument("--tail", help="tail literal for --system chain")
    s.add_argument("--truncate", type=int, default=DEFAULT_TRUNCATION)
    s.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    s.add_argument("--chain-len", type=int, default=DEFAULT_CHAIN_LEN)
    s.add_argument("--word-len", type=int, default=6)
    s.add_argument("--dump-bfs", help="also write the system dump here")
    s.set_defaults(fn=_cmd_verify_relations)

    s = sub.add_parser("state", help="evaluate the class state at s_left s_right^*")
    _add_common(s)
    s.add_argument("--class", dest="cls", required=True)
    s.add_argument("--left", required=True, help="word literal (0 for the unit)")
    s.add_argument("--right", required=True, help="word literal (0 for the unit)")
    s.set_defaults(fn=_cmd_state)

    s = sub.add_parser("pspec", help="finite/infinite verdict for the class spectrum")
    _add_common(s)
    s.add_argument("--max-len", type=int, default=DEFAULT_MAX_PERIOD)
    s.set_defaults(fn=_cmd_pspec)

    s = sub.add_parser("gp-check", help="cyclic-vector check for a power class")
    _add_common(s)
    s.add_argument("--word", required=True)
    s.add_argument("--power", type=int, required=True)
    s.add_argument("--depth", type=int, default=2)
    s.set_defaults(fn=_cmd_gp_check)

    s = sub.add_parser("twist", help="gauge-twist a class literal")
    _add_common(s, matrix_required=False)
    s.add_argument("--class", dest="cls", required=True)
    s.add_argument("--gauge", required=True, help="comma-separated phase literals")
    s.set_defaults(fn=_cmd_twist)

    return parser


_USER_ERRORS = (
    words.WordError,
    branching.BranchingError,
    reps.RepError,
    PhaseError,
    FileNotFoundError,
)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except _USER_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        return 1
    except Exception as exc:  # internal invariant violation
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
