"""Claim auditing: judge derivation-chain claims and write replayable reports.

An *audit claim* asserts something about the budget-bounded consequence
closure of a hypothesis context (named axiom sets plus finitely many named
sentences).  Four claim shapes exist:

``membership``
    A target sentence is derivable from the context.
``set-equality``
    The context derives every sentence (collapse to the full language).
    Since the calculus contains the explosion schema, collapse is probed
    through its equivalent: some sentence and its negation are both
    derivable.
``contradiction``
    Some sentence and its negation are both derivable from the context.
``sanity``
    The target sentence has no counterexample in the standard numeric
    model below a stated bound.

Every claim receives exactly one verdict:

``VERIFIED``
    A kernel-checked certificate exists (a proof, a proof pair, or a
    completed numeric sweep).
``REFUTED``
    A propositional-skeleton valuation satisfies the context but falsifies
    the target (or, for collapse probes, satisfies the context outright,
    witnessing that no contradiction is reachable), or a numeric
    counterexample exists.
``UNRESOLVED``
    Neither certificate nor countermodel was found within budget.  This in
    particular covers contexts whose skeletons are jointly unsatisfiable
    while the calculus still cannot reach the claimed formula — the
    equivalence connective is not decomposable here, so semantic absurdity
    need not be derivable.

The refutation oracle is *sound relative to the finite premise reading*:
premises are the claim's hypothesis sentences plus every recognized axiom-set
member in the claim's search pool, and skeleton atoms whose formulas are
derivable outright from the axiom sets (members, or universally quantified
prefixes of members, which generalization reaches in one step) are pinned
true before the sweep.  A valuation found under those constraints falsifies
every proof attempt built from pooled axioms and Modus Ponens.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass
from pathlib import Path

from .engine import Budget, BudgetReport, assemble_pool, bounded_closure, prove, sorted_pool
from .parser import ParseError, render
from .parser import parse as parse_formula
from .proofs import Ax, Proof, check_proof, parse_proof_script, render_proof_script
from .schemata import (
    AXIOM_SET_NAMES,
    NAMED_FORMULA_NAMES,
    PSI_AXIOMS,
    Q_AXIOMS,
    AxiomSetRecognizer,
    axiom_set,
    named_formula,
)
from .semantics import (
    FALSE,
    MAX_SKELETON_ATOMS,
    SkeletonLimitError,
    arith_counterexample,
    eval_arith,
    eval_skeleton,
    skeletonize_all,
)
from .syntax import Forall, Formula, Implies, Not

VERIFIED = "VERIFIED"
REFUTED = "REFUTED"
UNRESOLVED = "UNRESOLVED"

CLAIM_SHAPES = ("membership", "set-equality", "contradiction", "sanity")

_ID_RE = re.compile(r"^[A-Za-z0-9][A-Za-z0-9_.-]*$")


class AuditError(ValueError):
    """A malformed claim, script, or report."""


@dataclass(frozen=True)
class AuditClaim:
    """One judgeable assertion about a hypothesis context.

    ``axiom_names`` name recognizer sets; ``hypotheses`` are (label, sentence)
    pairs.  ``goal`` is required for membership and sanity claims and must be
    absent for collapse/contradiction probes.  ``locus`` is free text echoed
    into reports so a reader can trace the claim to its source chain.
    """

    claim_id: str
    shape: str
    axiom_names: tuple[str, ...] = ()
    hypotheses: tuple[tuple[str, Formula], ...] = ()
    goal: Formula | None = None
    locus: str = ""
    eval_bound: int = 50

    def __post_init__(self) -> None:
        if not _ID_RE.match(self.claim_id):
            raise AuditError(f"claim id {self.claim_id!r} is not filesystem-safe")
        if self.shape not in CLAIM_SHAPES:
            raise AuditError(f"unknown claim shape {self.shape!r}")
        if self.shape in ("membership", "sanity") and self.goal is None:
            raise AuditError(f"claim {self.claim_id}: shape {self.shape} needs a goal")
        if self.shape in ("set-equality", "contradiction") and self.goal is not None:
            raise AuditError(f"claim {self.claim_id}: shape {self.shape} takes no goal")
        for name in self.axiom_names:
            if name not in AXIOM_SET_NAMES:
                raise AuditError(f"claim {self.claim_id}: unknown axiom set {name!r}")


@dataclass(frozen=True)
class AuditVerdict:
    """The judged outcome of one claim, with its supporting artifact."""

    claim: AuditClaim
    status: str
    proofs: tuple[Proof, ...] = ()
    valuation: tuple[tuple[Formula, bool], ...] | None = None
    steps: int = 0
    wall_time: float = 0.0
    detail: str = ""


@dataclass(frozen=True)
class AuditReport:
    script_id: str
    verdicts: tuple[AuditVerdict, ...]
    budget: Budget
    deterministic: bool = True

    @property
    def counts(self) -> dict[str, int]:
        out = {VERIFIED: 0, REFUTED: 0, UNRESOLVED: 0}
        for v in self.verdicts:
            out[v.status] += 1
        return out


# -- derivability shortcuts ---------------------------------------------


def derivable_outright(f: Formula, axioms: tuple[AxiomSetRecognizer, ...]) -> bool:
    """Whether ``f`` is an axiom-set member or a universal prefix of one.

    Generalization turns any member into each of its universally quantified
    prefixes, so such formulas are derivable with no hypotheses at all.
    """
    g = f
    while True:
        if any(r.contains(g) for r in axioms):
            return True
        if isinstance(g, Forall):
            g = g.body
            continue
        return False


def _context_recognizers(claim: AuditClaim) -> tuple[AxiomSetRecognizer, ...]:
    return tuple(axiom_set(n) for n in claim.axiom_names)


def _semantic_premises(
    hyps: tuple[tuple[str, Formula], ...],
    axioms: tuple[AxiomSetRecognizer, ...],
    goal: Formula | None,
) -> list[Formula]:
    """Hypotheses plus every recognized axiom-set member in the search pool.

    This is exactly the stock of non-tautological axiom steps a bounded
    derivation from this context can draw on, so a valuation satisfying all
    of them bounds what is derivable.
    """
    pool = assemble_pool(tuple(f for _, f in hyps), axioms, goal)
    premises = [f for _, f in hyps]
    seen = set(premises)
    for f in sorted_pool(pool):
        if f not in seen and any(r.contains(f) for r in axioms):
            premises.append(f)
            seen.add(f)
    return premises


def refutation_valuation(
    premises: list[Formula],
    goal: Formula | None,
    axioms: tuple[AxiomSetRecognizer, ...],
) -> tuple[tuple[Formula, bool], ...] | None:
    """A skeleton valuation satisfying ``premises`` and falsifying ``goal``.

    With ``goal`` None this is a plain satisfiability probe.  Atoms standing
    for formulas derivable outright from the axiom sets are pinned true.
    Returns None when no such valuation exists (or the sweep would be wider
    than the atom cap allows).
    """
    formulas = list(premises) + ([goal] if goal is not None else [])
    roots, atoms = skeletonize_all(formulas)
    goal_root = roots.pop() if goal is not None else None
    forced = 0
    free_positions = []
    for i, a in enumerate(atoms):
        if derivable_outright(a, axioms):
            forced |= 1 << i
        else:
            free_positions.append(i)
    if len(free_positions) > MAX_SKELETON_ATOMS:
        raise SkeletonLimitError(
            f"{len(free_positions)} free skeleton atoms exceed the cap of "
            f"{MAX_SKELETON_ATOMS}"
        )
    for mask in range(1 << len(free_positions)):
        bits = forced
        for j, pos in enumerate(free_positions):
            if mask >> j & 1:
                bits |= 1 << pos
        if not all(eval_skeleton(r, bits) for r in roots):
            continue
        if goal_root is None or not eval_skeleton(goal_root, bits):
            return tuple((a, bool(bits >> i & 1)) for i, a in enumerate(atoms))
    return None


# -- judging ------------------------------------------------------------


def _strict_check(proof: Proof, axioms: tuple[AxiomSetRecognizer, ...]) -> None:
    result = check_proof(proof, axioms, strict=True)
    if not result.ok:
        raise AuditError(
            f"internal: engine produced a proof that fails the strict kernel "
            f"check at step {result.step}: {result.reason}"
        )


def _judge_membership(claim: AuditClaim, budget: Budget) -> AuditVerdict:
    axioms = _context_recognizers(claim)
    goal = claim.goal
    assert goal is not None
    hyp_formulas = {f for _, f in claim.hypotheses}
    # Hypothesis members and outright-derivable targets can never be refuted;
    # go straight to proof search.
    if goal not in hyp_formulas and not derivable_outright(goal, axioms):
        premises = _semantic_premises(claim.hypotheses, axioms, goal)
        val = refutation_valuation(premises, goal, axioms)
        if val is not None:
            return AuditVerdict(
                claim,
                REFUTED,
                valuation=val,
                detail="context-satisfying skeleton valuation falsifies the target",
            )
    outcome = prove(goal, claim.hypotheses, axioms, budget)
    if outcome.proof is not None:
        _strict_check(outcome.proof, axioms)
        return AuditVerdict(
            claim,
            VERIFIED,
            proofs=(outcome.proof,),
            steps=len(outcome.proof.steps),
            detail=f"proof with {len(outcome.proof.steps)} steps",
        )
    return AuditVerdict(
        claim,
        UNRESOLVED,
        steps=outcome.report.steps_expended,
        detail=_unresolved_detail(outcome.report),
    )


def _judge_collapse(claim: AuditClaim, budget: Budget) -> AuditVerdict:
    axioms = _context_recognizers(claim)
    premises = _semantic_premises(claim.hypotheses, axioms, None)
    val = refutation_valuation(premises, None, axioms)
    if val is not None:
        what = (
            "collapse to the full language"
            if claim.shape == "set-equality"
            else "a derivable contradiction"
        )
        return AuditVerdict(
            claim,
            REFUTED,
            valuation=val,
            detail=f"the context has a satisfying skeleton valuation, ruling out {what}",
        )
    closure = bounded_closure(claim.hypotheses, axioms, budget)
    if closure.contradiction is not None:
        a, na = closure.contradiction
        pos, neg = closure.proof_of(a), closure.proof_of(na)
        _strict_check(pos, axioms)
        _strict_check(neg, axioms)
        return AuditVerdict(
            claim,
            VERIFIED,
            proofs=(pos, neg),
            steps=len(pos.steps) + len(neg.steps),
            detail=f"contradiction pair on {render(a)}",
        )
    return AuditVerdict(
        claim,
        UNRESOLVED,
        steps=closure.report.steps_expended,
        detail=(
            "context skeletons are jointly unsatisfiable, yet no contradiction "
            "pair was derivable within budget"
        ),
    )


def _judge_sanity(claim: AuditClaim) -> AuditVerdict:
    goal = claim.goal
    assert goal is not None
    verdict = eval_arith(goal, claim.eval_bound)
    if verdict is FALSE:
        env = arith_counterexample(goal, claim.eval_bound) or {}
        assignment = ", ".join(f"x{k}={v}" for k, v in sorted(env.items()))
        return AuditVerdict(
            claim,
            REFUTED,
            detail=(
                f"false in the standard model at bound {claim.eval_bound}"
                + (f" under {assignment}" if assignment else "")
            ),
        )
    return AuditVerdict(
        claim,
        VERIFIED,
        detail=f"no counterexample below bound {claim.eval_bound} ({verdict.value})",
    )


def _unresolved_detail(report: BudgetReport) -> str:
    if report.fixpoint:
        return (
            f"search reached a fixpoint after {report.steps_expended} steps "
            "without finding a proof"
        )
    return f"budget of {report.max_steps} steps exhausted"


def run_claim(claim: AuditClaim, budget: Budget | None = None) -> AuditVerdict:
    """Judge a single claim.  Deterministic for a fixed claim and budget."""
    budget = budget or Budget()
    start = time.perf_counter()
    if claim.shape == "membership":
        verdict = _judge_membership(claim, budget)
    elif claim.shape in ("set-equality", "contradiction"):
        verdict = _judge_collapse(claim, budget)
    else:
        verdict = _judge_sanity(claim)
    wall = time.perf_counter() - start
    return AuditVerdict(
        verdict.claim,
        verdict.status,
        proofs=verdict.proofs,
        valuation=verdict.valuation,
        steps=verdict.steps,
        wall_time=wall,
        detail=verdict.detail,
    )


def run_audit(
    script_id: str,
    claims: list[AuditClaim],
    budget: Budget | None = None,
    deterministic: bool = True,
) -> AuditReport:
    """Judge every claim in order and collect the results."""
    budget = budget or Budget()
    seen: set[str] = set()
    for c in claims:
        if c.claim_id in seen:
            raise AuditError(f"duplicate claim id {c.claim_id!r}")
        seen.add(c.claim_id)
    verdicts = tuple(run_claim(c, budget) for c in claims)
    return AuditReport(script_id, verdicts, budget, deterministic)


# -- claim scripts ------------------------------------------------------

_DEFAULT_BINDINGS = ("delta", "alpha_prime")


def _base_bindings() -> dict[str, Formula]:
    return {
        "delta": PSI_AXIOMS["psi1"],
        "alpha_prime": named_formula("u27"),
    }


def _resolve_token(token: str, bindings: dict[str, Formula]) -> Formula | None:
    """A formula for a hypothesis token, or None when it names an axiom set."""
    if token in AXIOM_SET_NAMES:
        return None
    if token in bindings:
        return bindings[token]
    if token in PSI_AXIOMS:
        return PSI_AXIOMS[token]
    if token in Q_AXIOMS:
        return Q_AXIOMS[token]
    if token in NAMED_FORMULA_NAMES:
        return named_formula(token)
    if token == "beta0":
        return named_formula("beta0", conjuncts=(PSI_AXIOMS["psi2"],))
    if token == "beta1":
        return named_formula("beta1", conjuncts=(PSI_AXIOMS["psi2"],))
    if token == "delta00":
        return named_formula("delta00", delta=bindings["delta"])
    if token == "not_delta00":
        return Not(named_formula("delta00", delta=bindings["delta"]))
    if token == "alpha_imp_psi7":
        return Implies(bindings["alpha_prime"], PSI_AXIOMS["psi7"])
    raise AuditError(f"unknown hypothesis token {token!r}")


def load_script(text: str, script_id: str = "script") -> list[AuditClaim]:
    """Parse a claim script.

    Grammar, one directive per line (``#`` starts a comment)::

        set <name> <formula-text>
        claim <id> | hyps <token>[,<token>...] | goal <formula-or-name> | locus <text>

    ``set`` binds or overrides a name usable in later ``hyps``/``goal``
    fields.  Hypothesis tokens may name axiom sets, bound names, or the
    built-in sentence constants.  Parsed claims are membership claims.
    """
    bindings = _base_bindings()
    claims: list[AuditClaim] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("set "):
            rest = line[4:].strip()
            parts = rest.split(None, 1)
            if len(parts) != 2:
                raise AuditError(f"line {lineno}: set needs a name and a formula")
            name, body = parts
            try:
                bindings[name] = parse_formula(body)
            except ParseError as exc:
                raise AuditError(f"line {lineno}: {exc}") from exc
            continue
        if not line.startswith("claim "):
            raise AuditError(f"line {lineno}: expected 'set' or 'claim', got {line!r}")
        fields = [p.strip() for p in line[6:].split("|")]
        claim_id = fields[0]
        axiom_names: list[str] = []
        hypotheses: list[tuple[str, Formula]] = []
        goal: Formula | None = None
        locus = ""
        for part in fields[1:]:
            if part.startswith("hyps "):
                for token in part[5:].replace(",", " ").split():
                    resolved = _resolve_token(token, bindings)
                    if resolved is None:
                        axiom_names.append(token)
                    else:
                        hypotheses.append((token, resolved))
            elif part.startswith("goal "):
                body = part[5:].strip()
                resolved = (
                    _resolve_token(body, bindings)
                    if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", body)
                    else None
                )
                if resolved is not None:
                    goal = resolved
                else:
                    try:
                        goal = parse_formula(body)
                    except ParseError as exc:
                        raise AuditError(f"line {lineno}: {exc}") from exc
            elif part.startswith("locus "):
                locus = part[6:].strip()
            else:
                raise AuditError(f"line {lineno}: unknown claim field {part!r}")
        if goal is None:
            raise AuditError(f"line {lineno}: claim {claim_id!r} has no goal")
        claims.append(
            AuditClaim(
                claim_id,
                "membership",
                tuple(axiom_names),
                tuple(hypotheses),
                goal,
                locus,
            )
        )
    return claims


# -- report serialization ------------------------------------------------


def _detail_files(verdict: AuditVerdict) -> list[tuple[str, str]]:
    """(relative path, content) pairs for one verdict's artifacts."""
    cid = verdict.claim.claim_id
    goal_line = (
        f"# goal {render(verdict.claim.goal)}\n" if verdict.claim.goal is not None else ""
    )
    out: list[tuple[str, str]] = []
    if verdict.status == VERIFIED and verdict.proofs:
        if len(verdict.proofs) == 1:
            out.append(
                (f"details/{cid}.proof", goal_line + render_proof_script(verdict.proofs[0]))
            )
        else:
            pos, neg = verdict.proofs
            out.append(
                (
                    f"details/{cid}.pos.proof",
                    f"# goal {render(pos.conclusion)}\n" + render_proof_script(pos),
                )
            )
            out.append(
                (
                    f"details/{cid}.neg.proof",
                    f"# goal {render(neg.conclusion)}\n" + render_proof_script(neg),
                )
            )
    elif verdict.status == VERIFIED:
        out.append((f"details/{cid}.eval", f"{verdict.detail}\n"))
    elif verdict.status == REFUTED:
        if verdict.valuation is not None:
            lines = [f"{render(a)}\t{int(b)}" for a, b in verdict.valuation]
            out.append((f"details/{cid}.valuation", "\n".join(lines) + "\n"))
        else:
            out.append((f"details/{cid}.eval", f"{verdict.detail}\n"))
    else:
        out.append((f"details/{cid}.budget", f"{verdict.detail}\n"))
    return out


def _primary_detail_path(verdict: AuditVerdict) -> str:
    files = _detail_files(verdict)
    return files[0][0] if files else "-"


def render_report_text(report: AuditReport) -> str:
    """The human-readable report body (the content of report.txt)."""
    counts = report.counts
    lines = [
        f"audit: {report.script_id}",
        f"claims: {len(report.verdicts)}"
        f"  verified: {counts[VERIFIED]}"
        f"  refuted: {counts[REFUTED]}"
        f"  unresolved: {counts[UNRESOLVED]}",
        f"budget: max_steps={report.budget.max_steps}"
        f" max_depth={report.budget.max_depth}"
        f" deterministic={'yes' if report.deterministic else 'no'}",
        "-" * 72,
    ]
    for v in report.verdicts:
        target = render(v.claim.goal) if v.claim.goal is not None else v.claim.shape
        stamp = "" if report.deterministic else f"  wall={v.wall_time:.3f}s"
        lines.append(f"{v.claim.claim_id}\t{v.status}\tsteps={v.steps}{stamp}\t{target}")
        if v.claim.locus:
            lines.append(f"\tlocus: {v.claim.locus}")
        if v.detail:
            lines.append(f"\tdetail: {v.detail}")
    lines.append("-" * 72)
    lines.append(
        f"totals: verified={counts[VERIFIED]} refuted={counts[REFUTED]} "
        f"unresolved={counts[UNRESOLVED]}"
    )
    return "\n".join(lines) + "\n"


def write_report(report: AuditReport, directory: str | Path) -> Path:
    """Write report.txt, report.tsv, and per-claim detail files.

    In deterministic mode wall times are omitted, so two runs over the same
    claims produce byte-identical trees.
    """
    root = Path(directory)
    (root / "details").mkdir(parents=True, exist_ok=True)
    (root / "report.txt").write_text(render_report_text(report))

    tsv = [
        f"{v.claim.claim_id}\t{v.status}\t{v.steps}\t{_primary_detail_path(v)}"
        for v in report.verdicts
    ]
    (root / "report.tsv").write_text("\n".join(tsv) + "\n")

    for v in report.verdicts:
        for rel, content in _detail_files(v):
            (root / rel).write_text(content)
    return root


def recheck_report(directory: str | Path) -> list[str]:
    """Cold-pass re-validation of a written report; a list of problems.

    Every serialized proof certificate is re-parsed and re-checked against
    freshly built recognizers (read off its axiom justifications), and its
    conclusion is compared with the recorded goal line.  An empty list means
    the report replays cleanly.
    """
    root = Path(directory)
    problems: list[str] = []
    tsv_path = root / "report.tsv"
    if not tsv_path.exists():
        return [f"missing {tsv_path}"]
    for line in tsv_path.read_text().splitlines():
        parts = line.split("\t")
        if len(parts) != 4:
            problems.append(f"malformed report line: {line!r}")
            continue
        cid, status, _steps, detail = parts
        if status not in (VERIFIED, REFUTED, UNRESOLVED):
            problems.append(f"{cid}: unknown status {status!r}")
        if detail != "-" and not (root / detail).exists():
            problems.append(f"{cid}: missing detail file {detail}")
    for proof_path in sorted(root.glob("details/*.proof")):
        text = proof_path.read_text()
        goal: Formula | None = None
        first = text.splitlines()[0] if text.splitlines() else ""
        if first.startswith("# goal "):
            try:
                goal = parse_formula(first[len("# goal ") :])
            except ParseError as exc:
                problems.append(f"{proof_path.name}: bad goal line: {exc}")
        try:
            proof = parse_proof_script(text)
        except Exception as exc:  # noqa: BLE001 - report, not crash
            problems.append(f"{proof_path.name}: does not parse: {exc}")
            continue
        set_names = {
            step.just.set_name for step in proof.steps if isinstance(step.just, Ax)
        }
        try:
            recognizers = tuple(axiom_set(n) for n in sorted(set_names))
        except ValueError as exc:
            problems.append(f"{proof_path.name}: {exc}")
            continue
        result = check_proof(proof, recognizers, strict=True)
        if not result.ok:
            problems.append(
                f"{proof_path.name}: fails re-check at step {result.step}: {result.reason}"
            )
        elif goal is not None and proof.conclusion != goal:
            problems.append(f"{proof_path.name}: conclusion differs from recorded goal")
    return problems
