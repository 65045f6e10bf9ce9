"""Command-line surface for the proof workbench.

Verbs:

``check <proof-file>``
    Replay a serialized proof through the kernel checker.  Exit 0 when the
    proof checks, 1 when it is rejected.

``prove --goal <formula> [--hyp <file>] [--axioms <names>] [--max-steps N]``
    Search for a kernel proof of the goal from the hypotheses and axiom
    sets.  On success the proof script is printed to stdout (pipe it to a
    file and replay it with ``check``).  Exit 3 when the budget runs out.

``closure [--hyp <file>] [--axioms <names>] [--max-steps N] [--dump <path>]``
    Saturate the consequence closure of the hypotheses under the axiom
    sets; optionally dump every derived formula to a file.  Exit 3 when
    the budget runs out before a fixpoint.

``taut <file>``
    Decide propositional-skeleton tautology for one formula per line,
    printing ``TAUT`` or ``NONTAUT <falsifying valuation>``.

``audit <script-id|path> [--deterministic] [--report <dir>] [--max-steps N]``
    Run a builtin or user-supplied audit script and print the classified
    report; optionally write the full report tree (including re-checkable
    certificates) to a directory.

``eval --bound N <formula>``
    Evaluate an arithmetic sentence over the bounded standard model,
    printing ``true``, ``false`` (with a counterexample), or ``unknown``.

Exit codes: 0 success, 1 check/refutation failure, 2 usage error,
3 budget exhausted.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .audit import AuditError, load_script, render_report_text, run_audit, write_report
from .engine import Budget, bounded_closure, prove
from .parser import ParseError, parse, render
from .proofs import Ax, ScriptError, check_proof, parse_proof_script, render_proof_script
from .schemata import AXIOM_SET_NAMES, axiom_set
from .scripts import builtin_claims, builtin_scripts
from .semantics import (
    SkeletonLimitError,
    ThreeValued,
    arith_counterexample,
    eval_arith,
    falsifying_valuation,
    free_vars,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class _UsageError(Exception):
    """Raised for recoverable CLI input problems; maps to exit code 2."""


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise _UsageError(f"cannot read {path}: {e.strerror or e}") from e


def _parse_formula(text: str) -> "object":
    try:
        return parse(text)
    except ParseError as e:
        raise _UsageError(f"bad formula {text!r}: {e}") from e


def _axiom_names(raw: list[str] | None) -> list[str]:
    names: list[str] = []
    for chunk in raw or []:
        for name in chunk.replace(",", " ").split():
            if name not in AXIOM_SET_NAMES:
                known = ", ".join(AXIOM_SET_NAMES)
                raise _UsageError(f"unknown axiom set {name!r} (known: {known})")
            if name not in names:
                names.append(name)
    return names


def _recognizers(names: list[str]):
    return tuple(axiom_set(n) for n in names)


def _load_hypotheses(path: str | None) -> tuple[tuple[str, "object"], ...]:
    """Read hypotheses, one per line: either a bare formula or ``name formula``."""
    if path is None:
        return ()
    hyps: list[tuple[str, object]] = []
    auto = 0
    for lineno, raw in enumerate(_read_text(path).splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            auto += 1
            hyps.append((f"h{auto}", parse(line)))
            continue
        except ParseError:
            auto -= 1
        parts = line.split(None, 1)
        if len(parts) != 2:
            raise _UsageError(f"{path}:{lineno}: expected a formula or 'name formula'")
        name, ftext = parts
        try:
            hyps.append((name, parse(ftext)))
        except ParseError as e:
            raise _UsageError(f"{path}:{lineno}: bad formula: {e}") from e
    seen: set[str] = set()
    for name, _ in hyps:
        if name in seen:
            raise _UsageError(f"{path}: duplicate hypothesis name {name!r}")
        seen.add(name)
    return tuple(hyps)


def _budget(args: argparse.Namespace) -> Budget:
    max_steps = getattr(args, "max_steps", None)
    if max_steps is None:
        return Budget()
    if max_steps <= 0:
        raise _UsageError("--max-steps must be positive")
    return Budget(max_steps=max_steps)


# ---------------------------------------------------------------------------
# verb implementations


def _cmd_check(args: argparse.Namespace, out, err) -> int:
    text = _read_text(args.proof_file)
    try:
        proof = parse_proof_script(text)
    except ScriptError as e:
        raise _UsageError(f"{args.proof_file}: {e}") from e
    names = _axiom_names(args.axioms)
    for step in proof.steps:
        if isinstance(step.just, Ax) and step.just.set_name not in names:
            if step.just.set_name not in AXIOM_SET_NAMES:
                raise _UsageError(
                    f"{args.proof_file}: unknown axiom set {step.just.set_name!r}"
                )
            names.append(step.just.set_name)
    result = check_proof(proof, _recognizers(names), strict=args.strict)
    for warning in result.warnings:
        print(f"warning: {warning}", file=err)
    if not result.ok:
        print(f"FAIL step {result.step}: {result.reason}", file=out)
        return EXIT_FAIL
    conclusion = render(proof.steps[-1].formula) if proof.steps else "(empty proof)"
    print(f"ok {len(proof.steps)} steps: {conclusion}", file=out)
    return EXIT_OK


def _cmd_prove(args: argparse.Namespace, out, err) -> int:
    goal = _parse_formula(args.goal)
    hyps = _load_hypotheses(args.hyp)
    axioms = _recognizers(_axiom_names(args.axioms))
    outcome = prove(goal, hyps, axioms, _budget(args))
    if outcome.proof is None:
        print(
            f"not found within budget: {outcome.report.steps_expended} steps expended",
            file=err,
        )
        return EXIT_BUDGET
    print(
        f"found: {len(outcome.proof.steps)} proof steps, "
        f"{outcome.report.steps_expended} search steps",
        file=err,
    )
    print(render_proof_script(outcome.proof), file=out)
    return EXIT_OK


def _cmd_closure(args: argparse.Namespace, out, err) -> int:
    hyps = _load_hypotheses(args.hyp)
    axioms = _recognizers(_axiom_names(args.axioms))
    state = bounded_closure(hyps, axioms, _budget(args))
    if args.dump is not None:
        lines = [render(f) for f in state.formulas]
        Path(args.dump).write_text("\n".join(lines) + "\n", encoding="utf-8")
    fixpoint = "yes" if state.report.fixpoint else "no"
    print(
        f"derived {len(state)} formulas in {state.report.steps_expended} steps; "
        f"fixpoint: {fixpoint}",
        file=out,
    )
    if state.contradiction is not None:
        a, b = state.contradiction
        print(f"contradiction: {render(a)}  /  {render(b)}", file=out)
    return EXIT_OK if state.report.fixpoint else EXIT_BUDGET


def _cmd_taut(args: argparse.Namespace, out, err) -> int:
    for lineno, raw in enumerate(_read_text(args.file).splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            f = parse(line)
        except ParseError as e:
            raise _UsageError(f"{args.file}:{lineno}: bad formula: {e}") from e
        try:
            valuation = falsifying_valuation(f)
        except SkeletonLimitError as e:
            raise _UsageError(f"{args.file}:{lineno}: {e}") from e
        if valuation is None:
            print("TAUT", file=out)
        else:
            bits = "; ".join(
                f"{render(atom)} := {1 if value else 0}"
                for atom, value in valuation.items()
            )
            print(f"NONTAUT {bits}", file=out)
    return EXIT_OK


def _cmd_audit(args: argparse.Namespace, out, err) -> int:
    target = args.script
    if target in builtin_scripts():
        script_id = target
        claims = builtin_claims(target)
    else:
        path = Path(target)
        if not path.exists():
            known = ", ".join(builtin_scripts())
            raise _UsageError(
                f"{target!r} is neither a builtin script ({known}) nor a file"
            )
        try:
            claims = load_script(path.read_text(encoding="utf-8"), script_id=path.stem)
        except AuditError as e:
            raise _UsageError(f"{target}: {e}") from e
        script_id = path.stem
    report = run_audit(script_id, claims, _budget(args), deterministic=args.deterministic)
    if args.report is not None:
        directory = write_report(report, args.report)
        print(Path(directory, "report.txt").read_text(encoding="utf-8"), end="", file=out)
        print(f"report written to {directory}", file=err)
    else:
        print(render_report_text(report), end="", file=out)
    return EXIT_OK


def _cmd_eval(args: argparse.Namespace, out, err) -> int:
    f = _parse_formula(" ".join(args.formula))
    if free_vars(f):
        pretty = ", ".join(f"x{i}" for i in sorted(free_vars(f)))
        raise _UsageError(f"formula has free variables ({pretty}); a sentence is required")
    if args.bound <= 0:
        raise _UsageError("--bound must be positive")
    verdict = eval_arith(f, args.bound)
    if verdict is ThreeValued.FALSE:
        env = arith_counterexample(f, args.bound)
        if env:
            witness = " ".join(f"x{i}={env[i]}" for i in sorted(env))
            print(f"false (counterexample: {witness})", file=out)
        else:
            print("false", file=out)
    else:
        print(verdict.value, file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit(2) with its own text
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="proofbench",
        description="Hilbert-style first-order proof workbench",
    )
    sub = parser.add_subparsers(dest="verb", metavar="verb")

    p = sub.add_parser("check", help="replay a serialized proof through the kernel")
    p.add_argument("proof_file", help="proof script file")
    p.add_argument("--axioms", nargs="*", default=None, help="extra axiom set names")
    p.add_argument(
        "--strict",
        action="store_true",
        help="reject generalization over variables free in hypotheses",
    )
    p.set_defaults(run=_cmd_check)

    p = sub.add_parser("prove", help="search for a kernel proof of a goal")
    p.add_argument("--goal", required=True, help="goal formula")
    p.add_argument("--hyp", default=None, help="hypothesis file (one formula per line)")
    p.add_argument("--axioms", nargs="*", default=None, help="axiom set names")
    p.add_argument("--max-steps", type=int, default=None, help="search budget")
    p.set_defaults(run=_cmd_prove)

    p = sub.add_parser("closure", help="saturate the consequence closure")
    p.add_argument("--hyp", default=None, help="hypothesis file (one formula per line)")
    p.add_argument("--axioms", nargs="*", default=None, help="axiom set names")
    p.add_argument("--max-steps", type=int, default=None, help="derivation budget")
    p.add_argument("--dump", default=None, help="write derived formulas to this file")
    p.set_defaults(run=_cmd_closure)

    p = sub.add_parser("taut", help="decide skeleton tautology, one formula per line")
    p.add_argument("file", help="formula file")
    p.set_defaults(run=_cmd_taut)

    p = sub.add_parser("audit", help="run an audit script and print the report")
    p.add_argument("script", help="builtin script id or script file path")
    p.add_argument(
        "--deterministic",
        action="store_true",
        help="omit wall times so repeated runs are byte-identical",
    )
    p.add_argument("--report", default=None, help="write the report tree here")
    p.add_argument("--max-steps", type=int, default=None, help="per-claim budget")
    p.set_defaults(run=_cmd_audit)

    p = sub.add_parser("eval", help="evaluate a sentence over a bounded model")
    p.add_argument("--bound", type=int, required=True, help="model size N")
    p.add_argument("formula", nargs="+", help="arithmetic sentence")
    p.set_defaults(run=_cmd_eval)

    return parser


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "run", None) is None:
            parser.print_help(err)
            return EXIT_USAGE
        return args.run(args, out, err)
    except _UsageError as e:
        print(f"error: {e}", file=err)
        return EXIT_USAGE
    except AuditError as e:
        print(f"error: {e}", file=err)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
