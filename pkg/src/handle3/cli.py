"""Command-line front end.

Subcommands mirror the library: ``lens`` for the modular arithmetic,
``decomp`` for validation and profile enumeration, ``moves`` for the
stabilization calculus, and ``classify`` for isotopy-class counts.  With
--json every command emits a deterministic envelope
{"schema": "handle3/1", "status": ..., "command": ..., "data": ...};
exit code 0 on success, 1 on a domain error, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional, Tuple

from . import classify, decomp, fixtures, moves
from .decomp import SCHEMA
from .lens import (
    ManifoldForm,
    SPHERE3,
    canonical,
    core_isotopy_criterion,
    diffeotopy_group,
    is_homeomorphic,
    lens_space,
    normalize,
)
from .surfaces import canonical_name


def _use_color(stream) -> bool:
    mode = os.environ.get("HANDLE3_COLOR", "auto")
    if mode == "always":
        return True
    if mode == "never":
        return False
    return hasattr(stream, "isatty") and stream.isatty()


def _paint(text: str, color: str, stream) -> str:
    if not _use_color(stream):
        return text
    codes = {"green": "32", "red": "31", "yellow": "33"}
    return "\x1b[%sm%s\x1b[0m" % (codes[color], text)


def parse_manifold(spec: str) -> Tuple[ManifoldForm, List[str]]:
    """Parse the `s3` / `p,q` manifold grammar, normalizing lens data."""
    warnings: List[str] = []
    if spec.lower() == "s3":
        return SPHERE3, warnings
    try:
        p_str, q_str = spec.split(",")
        p, q = int(p_str), int(q_str)
    except ValueError:
        raise argparse.ArgumentTypeError(
            "manifold must be 's3' or 'p,q', got %r" % spec
        )
    m = normalize(p, q)
    if not m.is_sphere and (m.p, m.q) != (p, q):
        warnings.append("normalized L(%d,%d) to %s" % (p, q, m))
    elif m.is_sphere and spec.lower() != "s3":
        warnings.append("normalized L(%d,%d) to the 3-sphere" % (p, q))
    return m, warnings


def _genera(spec: str) -> Tuple[int, int, int]:
    parts = spec.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("genera must be g1,g2,g3")
    return tuple(int(g) for g in parts)


def _manifold_str(m: ManifoldForm) -> str:
    return "S3" if m.is_sphere else "L(%d,%d)" % (m.p, m.q)


class _Output:
    """Collects the command result and renders the envelope or plain text."""

    def __init__(self, command: str, as_json: bool):
        self.command = command
        self.as_json = as_json
        self.warnings: List[str] = []
        self.lines: List[str] = []
        self.data = None
        self.exit_code = 0

    def emit_ok(self) -> int:
        if self.as_json:
            envelope = {
                "schema": SCHEMA,
                "status": "ok",
                "command": self.command,
                "data": self.data,
                "warnings": self.warnings,
            }
            print(json.dumps(envelope, sort_keys=True, indent=2))
        else:
            for w in self.warnings:
                print(_paint("warning: %s" % w, "yellow", sys.stdout))
            for line in self.lines:
                print(line)
        return 0

    def emit_error(self, message: str) -> int:
        if self.as_json:
            envelope = {
                "schema": SCHEMA,
                "status": "error",
                "command": self.command,
                "error": message,
                "warnings": self.warnings,
            }
            print(json.dumps(envelope, sort_keys=True, indent=2))
        else:
            print(_paint("error: %s" % message, "red", sys.stderr), file=sys.stderr)
        return 1


def _profile_str(profile) -> str:
    return " / ".join(
        "{%s}" % ",".join(canonical_name(p) for p in patch) for patch in profile
    )


# --------------------------------------------------------------------------
# Subcommand handlers
# --------------------------------------------------------------------------


def _cmd_lens(args, out: _Output) -> None:
    if args.lens_cmd == "normalize":
        m = normalize(args.p, args.q)
        out.data = decomp.manifold_to_json(m)
        out.lines.append(_manifold_str(m))
    elif args.lens_cmd == "homeo":
        a = normalize(args.p1, args.q1)
        b = normalize(args.p2, args.q2)
        same = is_homeomorphic(a, b)
        out.data = {"homeomorphic": same}
        out.lines.append("homeomorphic" if same else "not homeomorphic")
    elif args.lens_cmd == "diffeotopy":
        m = normalize(args.p, args.q)
        group = diffeotopy_group(m)
        out.data = {"group": group.group, "generator": group.generator_tag}
        out.lines.append("%s (generator %s)" % (group.group, group.generator_tag))
    elif args.lens_cmd == "core-criterion":
        m = normalize(args.p, args.q)
        crit = core_isotopy_criterion(m)
        out.data = {"cores_isotopic": crit}
        out.lines.append(
            "cores are isotopic" if crit else "cores are not isotopic"
        )


def _cmd_decomp(args, out: _Output) -> None:
    if args.decomp_cmd == "validate":
        with open(args.file) as fh:
            d = decomp.from_json_dict(json.load(fh))
        report = decomp.validate(d)
        out.warnings.extend(report.warnings)
        out.data = {
            "valid": report.ok,
            "violations": [
                {"code": v.code, "message": v.message} for v in report.violations
            ],
        }
        if report.ok:
            out.lines.append(_paint("valid", "green", sys.stdout))
        else:
            out.lines.append(_paint("invalid", "red", sys.stdout))
            for v in report.violations:
                out.lines.append("  %s: %s" % (v.code, v.message))
            out.exit_code = 1
    elif args.decomp_cmd == "enumerate":
        m, warns = parse_manifold(args.manifold)
        out.warnings.extend(warns)
        result = decomp.enumerate_profiles(
            m, args.genera, args.max_loci, explain=args.explain
        )
        cases = []
        for s in result.survivors:
            rec = {
                "b": s.b,
                "patches": {
                    key: [
                        {"genus": p.genus, "boundary": p.boundary_count}
                        for p in patch
                    ]
                    for key, patch in zip(decomp.PAIR_KEYS, s.normalized)
                },
                "case": (
                    {"genera": list(s.case.genera), "number": s.case.number}
                    if s.case
                    else None
                ),
            }
            cases.append(rec)
            label = "case %d" % s.case.number if s.case else "unmatched"
            out.lines.append(
                "b=%d  %s  [%s]" % (s.b, _profile_str(s.normalized), label)
            )
        out.data = {"count": len(cases), "cases": cases}
        if args.explain:
            out.data["pruned"] = [
                {
                    "b": p.b,
                    "profile": [
                        ["%d,%d" % (q.genus, q.boundary_count) for q in patch]
                        for patch in p.profile
                    ],
                    "rule": p.rule,
                }
                for p in result.pruned
            ]
            for p in result.pruned:
                out.lines.append(
                    "pruned b=%d %s by %s" % (p.b, _profile_str(p.profile), p.rule)
                )
        if not cases:
            out.lines.append("no admissible profiles")


def _load_decomposition(path: str) -> decomp.Decomposition:
    with open(path) as fh:
        return decomp.from_json_dict(json.load(fh))


def _cmd_moves(args, out: _Output) -> None:
    if args.moves_cmd == "apply":
        d = _load_decomposition(args.decomp)
        with open(args.script) as fh:
            script = moves.script_from_json(json.load(fh))
        result = moves.apply_script(d, script)
        out.data = decomp.to_json_dict(result)
        out.lines.append(
            "applied %d moves: genera %s, %d loci"
            % (len(script), result.genera, result.branch_count)
        )
        if not out.as_json:
            out.lines.append(decomp.dumps(result))
    elif args.moves_cmd == "candidates":
        d = _load_decomposition(args.decomp)
        scan = moves.destabilization_candidates(d)
        out.data = {
            "witnesses": [
                {"handlebody": w.handlebody, "loci": list(w.loci)}
                for w in scan.witnesses
            ],
            "indeterminate": list(scan.indeterminate),
        }
        for w in scan.witnesses:
            out.lines.append(
                "destabilization on H%d across loci %s"
                % (w.handlebody, list(w.loci))
            )
        for h in scan.indeterminate:
            out.lines.append(
                "H%d indeterminate (unknown curve classes)" % h
            )
        if not scan.witnesses and not scan.indeterminate:
            out.lines.append("no destabilization available")
    elif args.moves_cmd == "reduce":
        d = _load_decomposition(args.decomp)
        terminal, script = moves.stable_reduce(d)
        case = decomp.case_of(terminal)
        out.data = {
            "terminal": decomp.to_json_dict(terminal),
            "script": moves.script_to_json(script),
            "steps": len(script),
            "case": (
                {"genera": list(case.genera), "number": case.number}
                if case
                else None
            ),
        }
        out.lines.append(
            "reduced in %d steps to genera %s with %d loci"
            % (len(script), terminal.genera, terminal.branch_count)
        )


def _cmd_classify(args, out: _Output) -> None:
    if args.classify_cmd == "count":
        m, warns = parse_manifold(args.manifold)
        out.warnings.extend(warns)
        case = classify.CaseId(args.genera, args.case)
        count = classify.isotopy_class_count(m, case, args.backend)
        out.data = {
            "count": count.count,
            "backend": count.backend,
            "discrepancy": count.discrepancy_flag,
        }
        out.lines.append(str(count.count))
        if count.discrepancy_flag:
            out.warnings.append(
                "theorem and derived backends disagree on this case"
            )
    elif args.classify_cmd == "audit":
        m, warns = parse_manifold(args.manifold)
        out.warnings.extend(warns)
        rows = classify.consistency_report(m)
        out.data = {
            "disagreements": [
                {
                    "genera": list(c.genera),
                    "case": c.case_number,
                    "theorem": theorem,
                    "derived": derived,
                }
                for c, theorem, derived in rows
            ]
        }
        if rows:
            for c, theorem, derived in rows:
                out.lines.append(
                    "genera %s case %d: theorem %d vs derived %d"
                    % (c.genera, c.case_number, theorem, derived)
                )
        else:
            out.lines.append("backends agree on every classified case")
    elif args.classify_cmd == "table":
        rows = []
        lines = ["manifold,genera,case,theorem,derived,discrepancy"]
        manifolds = [SPHERE3]
        for p in range(2, args.max_p + 1):
            for q in range(1, p):
                m = SPHERE3
                try:
                    m = normalize(p, q)
                except ValueError:
                    continue
                if not m.is_sphere and (m.p, m.q) == (p, q):
                    manifolds.append(m)
        for m in manifolds:
            for case in classify.classified_cases(m):
                theorem = classify.isotopy_class_count(m, case, "theorem")
                derived = classify.isotopy_class_count(m, case, "derived")
                rows.append(
                    {
                        "manifold": decomp.manifold_to_json(m),
                        "genera": list(case.genera),
                        "case": case.case_number,
                        "theorem": theorem.count,
                        "derived": derived.count,
                        "discrepancy": theorem.discrepancy_flag,
                    }
                )
                lines.append(
                    "%s,%s,%d,%d,%d,%s"
                    % (
                        _manifold_str(m),
                        "".join(str(g) for g in case.genera),
                        case.case_number,
                        theorem.count,
                        derived.count,
                        "yes" if theorem.discrepancy_flag else "no",
                    )
                )
        out.data = {"rows": rows}
        out.lines.extend(lines)


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    # --json is accepted both before and after the subcommand; the leaf copy
    # uses SUPPRESS so it never clobbers a value parsed at the top level.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--json",
        action="store_true",
        default=argparse.SUPPRESS,
        help="machine output",
    )

    parser = argparse.ArgumentParser(
        prog="handle3",
        description="Three-handlebody decompositions of the 3-sphere and "
        "lens spaces: validation, enumeration, moves, classification.",
    )
    parser.add_argument("--json", action="store_true", help="machine output")
    sub = parser.add_subparsers(dest="command", required=True)

    lens_p = sub.add_parser("lens", help="lens-space arithmetic")
    lens_sub = lens_p.add_subparsers(dest="lens_cmd", required=True)
    norm = lens_sub.add_parser(
        "normalize", parents=[common], help="canonical form of L(p,q)"
    )
    norm.add_argument("p", type=int)
    norm.add_argument("q", type=int)
    homeo = lens_sub.add_parser("homeo", parents=[common], help="homeomorphism test")
    homeo.add_argument("p1", type=int)
    homeo.add_argument("q1", type=int)
    homeo.add_argument("p2", type=int)
    homeo.add_argument("q2", type=int)
    diffeo = lens_sub.add_parser(
        "diffeotopy", parents=[common], help="diffeotopy group of L(p,q)"
    )
    diffeo.add_argument("p", type=int)
    diffeo.add_argument("q", type=int)
    core = lens_sub.add_parser(
        "core-criterion",
        parents=[common],
        help="are the two Heegaard cores isotopic",
    )
    core.add_argument("p", type=int)
    core.add_argument("q", type=int)

    dec = sub.add_parser("decomp", help="decomposition validation/enumeration")
    dec_sub = dec.add_subparsers(dest="decomp_cmd", required=True)
    val = dec_sub.add_parser(
        "validate", parents=[common], help="validate a decomposition file"
    )
    val.add_argument("file")
    enum = dec_sub.add_parser(
        "enumerate", parents=[common], help="enumerate profile cases"
    )
    enum.add_argument("--genera", type=_genera, required=True, metavar="g1,g2,g3")
    enum.add_argument("--manifold", required=True, metavar="s3|p,q")
    enum.add_argument("--max-loci", type=int, default=4, dest="max_loci")
    enum.add_argument("--explain", action="store_true")

    mov = sub.add_parser("moves", help="stabilization moves")
    mov_sub = mov.add_subparsers(dest="moves_cmd", required=True)
    app = mov_sub.add_parser("apply", parents=[common], help="apply a move script")
    app.add_argument("decomp")
    app.add_argument("script")
    cand = mov_sub.add_parser(
        "candidates", parents=[common], help="destabilization witnesses"
    )
    cand.add_argument("decomp")
    red = mov_sub.add_parser(
        "reduce", parents=[common], help="greedy stable reduction"
    )
    red.add_argument("decomp")

    cls = sub.add_parser("classify", help="isotopy-class counts")
    cls_sub = cls.add_subparsers(dest="classify_cmd", required=True)
    cnt = cls_sub.add_parser("count", parents=[common], help="classes for one case")
    cnt.add_argument("--manifold", required=True, metavar="s3|p,q")
    cnt.add_argument("--genera", type=_genera, required=True, metavar="g1,g2,g3")
    cnt.add_argument("--case", type=int, required=True)
    cnt.add_argument(
        "--backend", choices=("theorem", "derived"), default="theorem"
    )
    aud = cls_sub.add_parser(
        "audit", parents=[common], help="compare the two backends"
    )
    aud.add_argument("--manifold", required=True, metavar="s3|p,q")
    tab = cls_sub.add_parser(
        "table", parents=[common], help="CSV of all counts up to p"
    )
    tab.add_argument("--max-p", type=int, required=True, dest="max_p")

    return parser


_HANDLERS = {
    "lens": _cmd_lens,
    "decomp": _cmd_decomp,
    "moves": _cmd_moves,
    "classify": _cmd_classify,
}


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    command = args.command
    subname = getattr(args, "%s_cmd" % command, None)
    out = _Output("%s %s" % (command, subname), args.json)
    try:
        _HANDLERS[command](args, out)
    except (ValueError, OSError, KeyError) as exc:
        return out.emit_error(str(exc))
    out.emit_ok()
    return out.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
