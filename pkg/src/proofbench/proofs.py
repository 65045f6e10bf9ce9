"""Proof objects, the checking kernel, and the plain-text proof script format.

A proof is a numbered list of steps over a fixed list of named hypotheses.
Each step carries a formula and a justification: hypothesis by name, axiom by
set name, modus ponens from two earlier steps, or generalization over a
variable.  :func:`check_proof` validates every step against a list of axiom-set
recognizers; in strict mode it also refuses generalization over a variable
free in a hypothesis the step depends on.

Scripts serialize proofs one step per line::

    hyp h1 (Ax1)~(1 = x1 + 1) -> (Ax1)(x1 = x1)
    1. (Ax1)(x1 = x1) -> (1 < 1 -> (Ax1)(x1 = x1)) ; axiom L12
    2. ...                                         ; mp 1 3
    3. ...                                         ; gen 2 x2

``#`` comments and blank lines are allowed anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

from .parser import ParseError, parse, render
from .schemata import AxiomSetRecognizer
from .syntax import Forall, Formula, Implies, free_vars


@dataclass(frozen=True)
class Hyp:
    """Justification: the named hypothesis."""

    name: str


@dataclass(frozen=True)
class Ax:
    """Justification: member of the named axiom set."""

    set_name: str


@dataclass(frozen=True)
class Mp:
    """Justification: modus ponens from step ``i`` and step ``j`` = (i -> this)."""

    i: int
    j: int


@dataclass(frozen=True)
class Gen:
    """Justification: generalization of step ``i`` over variable ``var``."""

    i: int
    var: int


Justification = Hyp | Ax | Mp | Gen


@dataclass(frozen=True)
class ProofStep:
    index: int  # 1-based position
    formula: Formula
    just: Justification


@dataclass(frozen=True)
class Proof:
    """Named hypotheses plus the step list; the conclusion is the last formula."""

    hypotheses: tuple[tuple[str, Formula], ...]
    steps: tuple[ProofStep, ...]

    @property
    def conclusion(self) -> Formula:
        if not self.steps:
            raise ValueError("empty proof has no conclusion")
        return self.steps[-1].formula

    def hypothesis(self, name: str) -> Formula | None:
        for n, f in self.hypotheses:
            if n == name:
                return f
        return None


@dataclass(frozen=True)
class CheckResult:
    """Outcome of :func:`check_proof`: ok, or the first failing step and why."""

    ok: bool
    step: int | None = None
    reason: str | None = None
    warnings: tuple[str, ...] = ()


def check_proof(
    proof: Proof,
    axioms: tuple[AxiomSetRecognizer, ...],
    strict: bool = False,
) -> CheckResult:
    """Validate every step of ``proof`` against the given axiom sets.

    Failure reasons: ``dangling-ref`` (forward or missing step reference),
    ``bad-mp`` (cited steps do not fit), ``bad-gen`` (not the stated
    generalization), ``not-axiom`` (recognizer refused; refined to
    ``side-condition`` when a recognizer diagnostic says so), unknown
    hypothesis/axiom names also surface as ``dangling-ref``.

    In strict mode, generalizing over a variable free in a hypothesis the
    step's derivation uses is ``gen-on-free-hyp-var``; in lax mode the same
    situation is a warning.
    """
    by_name = dict(proof.hypotheses)
    if len(by_name) != len(proof.hypotheses):
        return CheckResult(False, None, "duplicate hypothesis name")
    recog = {r.name: r for r in axioms}
    warnings: list[str] = []
    # hypothesis names each step's derivation depends on, per step index
    deps: dict[int, frozenset[str]] = {}

    for pos, step in enumerate(proof.steps, start=1):
        if step.index != pos:
            return CheckResult(False, pos, "dangling-ref")
        j = step.just
        if isinstance(j, Hyp):
            want = by_name.get(j.name)
            if want is None or want != step.formula:
                return CheckResult(False, pos, "dangling-ref")
            deps[pos] = frozenset((j.name,))
        elif isinstance(j, Ax):
            r = recog.get(j.set_name)
            if r is None:
                return CheckResult(False, pos, "dangling-ref")
            if not r.contains(step.formula):
                reason = "not-axiom"
                if r.diagnose is not None and r.diagnose(step.formula) == "side-condition":
                    reason = "side-condition"
                return CheckResult(False, pos, reason)
            deps[pos] = frozenset()
        elif isinstance(j, Mp):
            if not (1 <= j.i < pos and 1 <= j.j < pos):
                return CheckResult(False, pos, "dangling-ref")
            minor = proof.steps[j.i - 1].formula
            major = proof.steps[j.j - 1].formula
            if not (isinstance(major, Implies) and major.left == minor and major.right == step.formula):
                return CheckResult(False, pos, "bad-mp")
            deps[pos] = deps[j.i] | deps[j.j]
        elif isinstance(j, Gen):
            if not (1 <= j.i < pos):
                return CheckResult(False, pos, "dangling-ref")
            prev = proof.steps[j.i - 1].formula
            if step.formula != Forall(j.var, prev):
                return CheckResult(False, pos, "bad-gen")
            deps[pos] = deps[j.i]
            offenders = [
                name
                for name in sorted(deps[pos])
                if j.var in free_vars(by_name[name])
            ]
            if offenders:
                msg = (
                    f"step {pos}: generalizes over x{j.var}, free in hypothesis "
                    f"{offenders[0]!r} used by this derivation"
                )
                if strict:
                    return CheckResult(False, pos, "gen-on-free-hyp-var")
                warnings.append(msg)
        else:
            return CheckResult(False, pos, "dangling-ref")
    return CheckResult(True, warnings=tuple(warnings))


# -- script format ------------------------------------------------------


class ScriptError(ValueError):
    """Raised on malformed proof scripts, with the offending line number."""

    def __init__(self, message: str, line: int) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_proof_script(text: str) -> Proof:
    hyps: list[tuple[str, Formula]] = []
    steps: list[ProofStep] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("hyp ") or line == "hyp":
            if steps:
                raise ScriptError("hypotheses must precede all steps", lineno)
            parts = line.split(None, 2)
            if len(parts) != 3:
                raise ScriptError("expected: hyp <name> <formula>", lineno)
            _, name, ftext = parts
            try:
                hyps.append((name, parse(ftext)))
            except ParseError as e:
                raise ScriptError(f"bad formula: {e}", lineno) from e
            continue
        head, sep, just_text = line.partition(";")
        if not sep:
            raise ScriptError("expected '<n>. <formula> ; <justification>'", lineno)
        head = head.strip()
        num, dot, ftext = head.partition(".")
        if not dot or not num.strip().isdigit():
            raise ScriptError("step must start with '<n>.'", lineno)
        index = int(num.strip())
        try:
            formula = parse(ftext.strip())
        except ParseError as e:
            raise ScriptError(f"bad formula: {e}", lineno) from e
        jparts = just_text.split()
        if not jparts:
            raise ScriptError("missing justification", lineno)
        kind = jparts[0]
        just: Justification
        if kind == "hyp" and len(jparts) == 2:
            just = Hyp(jparts[1])
        elif kind == "axiom" and len(jparts) == 2:
            just = Ax(jparts[1])
        elif kind == "mp" and len(jparts) == 3 and all(p.isdigit() for p in jparts[1:]):
            just = Mp(int(jparts[1]), int(jparts[2]))
        elif (
            kind == "gen"
            and len(jparts) == 3
            and jparts[1].isdigit()
            and jparts[2].startswith("x")
            and jparts[2][1:].isdigit()
        ):
            just = Gen(int(jparts[1]), int(jparts[2][1:]))
        else:
            raise ScriptError(f"bad justification {just_text.strip()!r}", lineno)
        steps.append(ProofStep(index, formula, just))
    return Proof(tuple(hyps), tuple(steps))


def render_proof_script(proof: Proof) -> str:
    lines = [f"hyp {name} {render(f)}" for name, f in proof.hypotheses]
    for step in proof.steps:
        j = step.just
        if isinstance(j, Hyp):
            jt = f"hyp {j.name}"
        elif isinstance(j, Ax):
            jt = f"axiom {j.set_name}"
        elif isinstance(j, Mp):
            jt = f"mp {j.i} {j.j}"
        else:
            jt = f"gen {j.i} x{j.var}"
        lines.append(f"{step.index}. {render(step.formula)} ; {jt}")
    return "\n".join(lines) + "\n"


# -- incremental construction ------------------------------------------


class ProofBuilder:
    """Grow a proof step by step, reusing steps that restate a formula.

    ``label`` maps a formula to the axiom-set name to cite for it; it is
    consulted by :meth:`add_axiom`.
    """

    def __init__(
        self,
        hypotheses: tuple[tuple[str, Formula], ...] = (),
        label=None,
    ) -> None:
        self.hypotheses = hypotheses
        self._label = label
        self._steps: list[ProofStep] = []
        self._index_of: dict[Formula, int] = {}

    def _add(self, formula: Formula, just: Justification) -> int:
        got = self._index_of.get(formula)
        if got is not None:
            return got
        idx = len(self._steps) + 1
        self._steps.append(ProofStep(idx, formula, just))
        self._index_of[formula] = idx
        return idx

    def idx_of(self, formula: Formula) -> int | None:
        return self._index_of.get(formula)

    def formula(self, idx: int) -> Formula:
        return self._steps[idx - 1].formula

    def add_hyp(self, name: str) -> int:
        for n, f in self.hypotheses:
            if n == name:
                return self._add(f, Hyp(name))
        raise KeyError(f"unknown hypothesis {name!r}")

    def add_axiom(self, formula: Formula) -> int:
        if self._label is None:
            raise ValueError("builder has no axiom labeler")
        set_name = self._label(formula)
        if set_name is None:
            raise ValueError(f"no axiom set covers: {render(formula)}")
        return self._add(formula, Ax(set_name))

    def add_axiom_named(self, formula: Formula, set_name: str) -> int:
        return self._add(formula, Ax(set_name))

    def add_mp(self, i: int, j: int) -> int:
        major = self.formula(j)
        if not (isinstance(major, Implies) and major.left == self.formula(i)):
            raise ValueError(f"step {j} is not (step {i} -> _)")
        return self._add(major.right, Mp(i, j))

    def restate(self, i: int, j: int) -> int:
        """Append mp(i, j) as a fresh step even when its formula already occurred.

        Used to end a proof on its conclusion when step reuse left that
        formula in the middle.
        """
        major = self.formula(j)
        if not (isinstance(major, Implies) and major.left == self.formula(i)):
            raise ValueError(f"step {j} is not (step {i} -> _)")
        idx = len(self._steps) + 1
        self._steps.append(ProofStep(idx, major.right, Mp(i, j)))
        return idx

    def add_gen(self, i: int, var: int) -> int:
        return self._add(Forall(var, self.formula(i)), Gen(i, var))

    def proof(self) -> Proof:
        return Proof(self.hypotheses, tuple(self._steps))
