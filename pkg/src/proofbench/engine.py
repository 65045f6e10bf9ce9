"""Budgeted consequence closure, goal-directed proof search, consistency probes.

The closure is a deterministic FIFO saturation loop.  Schema instantiation is
restricted to a finite *pool*: the subformula closure of the hypotheses, the
goal, the catalogue of named sentence constants, every recognizer's finite
core, and goal-targeted members contributed by recognizers with a
``generate_for`` hook.  Rules only ever derive pool formulas or negations of
pool formulas, so the derivable set is finite and saturation reaches a genuine
fixpoint when the budget allows.  Every derived formula carries a recipe from
which a kernel proof is rebuilt on demand.

:func:`prove` layers iterative-deepening backward decomposition (implication
discharge via the deduction transform, conjunction/negation introduction
templates) on top of the forward closure.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace

from .proofs import Proof, ProofBuilder
from .schemata import NAMED_FORMULA_NAMES, AxiomSetRecognizer, named_formula
from .syntax import (
    And,
    Forall,
    Formula,
    Implies,
    Not,
    Or,
    connective_depth,
    free_vars,
    is_sentence,
    subformulas,
)
from .transforms import (
    axiom_labeler,
    conclude,
    deduction_transform,
    derive_andel,
    derive_andintro,
    derive_dnelim,
    derive_dnintro,
    derive_explosion,
    derive_imp_from_cons,
    derive_imp_from_neg,
    derive_notand,
    derive_notimp_intro,
    derive_notimp_left,
    derive_notimp_right,
    derive_notor,
    derive_orin,
    reductio_transform,
    splice,
)


@dataclass(frozen=True)
class Budget:
    """Search limits.  ``max_depth`` bounds the connective depth of derived formulas."""

    max_steps: int = 10**6
    max_depth: int = 40
    deterministic: bool = True

    def __post_init__(self) -> None:
        if self.max_steps < 1 or self.max_depth < 1:
            raise ValueError("budget counters must be positive")


@dataclass(frozen=True)
class BudgetReport:
    """What a run spent and whether it stopped at a fixpoint or ran dry."""

    steps_expended: int
    max_steps: int
    max_depth: int
    fixpoint: bool


@dataclass(frozen=True)
class _Entry:
    order: int
    recipe: tuple
    hyp_deps: frozenset[str]


class ClosureState:
    """Derived formulas with reconstructible justifications.

    Iteration over :attr:`formulas` follows derivation order, which is
    deterministic for a fixed input.
    """

    def __init__(
        self,
        hypotheses: tuple[tuple[str, Formula], ...],
        axioms: tuple[AxiomSetRecognizer, ...],
        report: BudgetReport,
        entries: dict[Formula, _Entry],
        contradiction: tuple[Formula, Formula] | None,
    ) -> None:
        self.hypotheses = hypotheses
        self.axioms = axioms
        self.report = report
        self._entries = entries
        self.contradiction = contradiction

    def __contains__(self, f: Formula) -> bool:
        return f in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    @property
    def formulas(self) -> list[Formula]:
        return sorted(self._entries, key=lambda f: self._entries[f].order)

    def hyp_deps(self, f: Formula) -> frozenset[str]:
        return self._entries[f].hyp_deps

    def proof_of(self, f: Formula) -> Proof:
        """Rebuild a kernel proof of ``f`` from stored recipes."""
        if f not in self._entries:
            raise KeyError(f"not derived: {f!r}")
        b = ProofBuilder(self.hypotheses, label=axiom_labeler(self.axioms))
        conclude(b, self._emit(b, f))
        return b.proof()

    def _emit(self, b: ProofBuilder, f: Formula) -> int:
        # iterative post-order over recipe premises; builder dedup keeps it linear
        done: dict[Formula, int] = {}
        stack: list[tuple[Formula, bool]] = [(f, False)]
        while stack:
            g, expanded = stack.pop()
            if g in done:
                continue
            entry = self._entries[g]
            premises = [p for p in entry.recipe[1:] if isinstance(p, Formula) and p in self._entries]
            if not expanded:
                stack.append((g, True))
                for p in premises:
                    if p not in done:
                        stack.append((p, False))
                continue
            done[g] = self._emit_one(b, g, entry, done)
        return done[f]

    def _emit_one(
        self, b: ProofBuilder, g: Formula, entry: _Entry, done: dict[Formula, int]
    ) -> int:
        kind = entry.recipe[0]
        args = entry.recipe[1:]
        if kind == "hyp":
            return b.add_hyp(args[0])
        if kind == "axiom":
            return b.add_axiom_named(g, args[0])
        if kind == "mp":
            return b.add_mp(done[args[0]], done[args[1]])
        if kind == "notimp_l":
            return derive_notimp_left(b, done[args[0]])
        if kind == "notimp_r":
            return derive_notimp_right(b, done[args[0]])
        if kind == "dnelim":
            return derive_dnelim(b, done[args[0]])
        if kind == "dnintro":
            return derive_dnintro(b, done[args[0]])
        if kind == "andel1":
            return derive_andel(b, done[args[0]], 1)
        if kind == "andel2":
            return derive_andel(b, done[args[0]], 2)
        if kind == "andintro":
            return derive_andintro(b, done[args[0]], done[args[1]])
        if kind == "orin_l":
            assert isinstance(g, Or)
            return derive_orin(b, done[args[0]], g.right, "left")
        if kind == "orin_r":
            assert isinstance(g, Or)
            return derive_orin(b, done[args[0]], g.left, "right")
        if kind == "imp_from_cons":
            assert isinstance(g, Implies)
            return derive_imp_from_cons(b, done[args[0]], g.left)
        if kind == "imp_from_neg":
            return derive_imp_from_neg(b, done[args[0]], g.right)
        if kind == "explosion":
            return derive_explosion(b, done[args[0]], done[args[1]], g)
        if kind == "gen":
            return b.add_gen(done[args[0]], args[1])
        raise AssertionError(f"unknown recipe {kind!r}")

    def dump(self) -> str:
        """One formula per line, prefixed by its 1-based derivation index."""
        from .parser import render

        lines = [f"{i}\t{render(f)}" for i, f in enumerate(self.formulas, start=1)]
        return "\n".join(lines) + ("\n" if lines else "")


def _named_hyps(X) -> tuple[tuple[str, Formula], ...]:
    """Normalize a formula list (or (name, formula) list) to named hypotheses."""
    out: list[tuple[str, Formula]] = []
    for i, item in enumerate(X, start=1):
        if isinstance(item, Formula):
            out.append((f"h{i}", item))
        else:
            name, f = item
            out.append((name, f))
    return tuple(out)


def assemble_pool(
    hyp_formulas: tuple[Formula, ...],
    axioms: tuple[AxiomSetRecognizer, ...],
    goal: Formula | None,
) -> tuple[Formula, ...]:
    """The finite instantiation pool, in a deterministic order."""
    pool: dict[Formula, None] = {}

    def add(f: Formula) -> None:
        for g in subformulas(f):
            pool.setdefault(g, None)

    for f in hyp_formulas:
        add(f)
    if goal is not None:
        add(goal)
    for name in NAMED_FORMULA_NAMES:
        add(named_formula(name))
    for r in axioms:
        for f in r.finite_core:
            add(f)
    for r in axioms:
        if r.generate_for is None:
            continue
        for f in list(pool):
            for m in r.generate_for(f):
                add(m)
    return tuple(pool)


class _Saturation:
    """One forward-closure run.  Mutable; produces a ClosureState."""

    def __init__(
        self,
        hypotheses: tuple[tuple[str, Formula], ...],
        axioms: tuple[AxiomSetRecognizer, ...],
        budget: Budget,
        goal: Formula | None,
    ) -> None:
        self.hypotheses = hypotheses
        self.axioms = axioms
        self.budget = budget
        self.goal = goal
        self.pool = frozenset(
            assemble_pool(tuple(f for _, f in hypotheses), axioms, goal)
        )
        self.entries: dict[Formula, _Entry] = {}
        self.frontier: deque[Formula] = deque()
        self.steps = 0
        self.contradiction: tuple[Formula, Formula] | None = None
        # indexes over derived formulas
        self.majors_by_left: dict[Formula, list[Formula]] = {}
        # indexes over the pool
        self.pool_imp_by_right: dict[Formula, list[Implies]] = {}
        self.pool_imp_by_left: dict[Formula, list[Implies]] = {}
        self.pool_and_by_side: dict[Formula, list[And]] = {}
        self.pool_or_by_side: dict[Formula, list[Or]] = {}
        self.pool_all_by_body: dict[Formula, list[Forall]] = {}
        for f in sorted_pool(self.pool):
            if isinstance(f, Implies):
                self.pool_imp_by_right.setdefault(f.right, []).append(f)
                self.pool_imp_by_left.setdefault(f.left, []).append(f)
            elif isinstance(f, And):
                self.pool_and_by_side.setdefault(f.left, []).append(f)
                if f.right != f.left:
                    self.pool_and_by_side.setdefault(f.right, []).append(f)
            elif isinstance(f, Or):
                self.pool_or_by_side.setdefault(f.left, []).append(f)
                if f.right != f.left:
                    self.pool_or_by_side.setdefault(f.right, []).append(f)
            elif isinstance(f, Forall) and isinstance(f.var, int):
                self.pool_all_by_body.setdefault(f.body, []).append(f)

    def allowed(self, f: Formula) -> bool:
        if connective_depth(f) > self.budget.max_depth:
            return False
        return f in self.pool or (isinstance(f, Not) and f.body in self.pool)

    def spent(self) -> bool:
        return self.steps >= self.budget.max_steps

    def add(self, f: Formula, recipe: tuple, deps: frozenset[str], free: bool = False) -> bool:
        """Index ``f`` if new; returns True when added.  Non-free additions cost a step."""
        if f in self.entries:
            return False
        if not free:
            if self.spent():
                return False
            self.steps += 1
        self.entries[f] = _Entry(len(self.entries), recipe, deps)
        self.frontier.append(f)
        neg = Not(f)
        if neg in self.entries and self.contradiction is None:
            self.contradiction = (f, neg)
        elif isinstance(f, Not) and f.body in self.entries and self.contradiction is None:
            self.contradiction = (f.body, f)
        return True

    def run(self) -> ClosureState:
        for name, f in self.hypotheses:
            # (a1): the base set is in the closure at any budget
            self.add(f, ("hyp", name), frozenset((name,)), free=True)
        for f in sorted_pool(self.pool):
            if self.spent():
                break
            for r in self.axioms:
                if r.contains(f):
                    self.add(f, ("axiom", r.name), frozenset())
                    break
        while self.frontier and not self.spent():
            f = self.frontier.popleft()
            self.expand(f)
            if self.contradiction is not None and self.goal is not None:
                a, na = self.contradiction
                if self.goal not in self.entries and self.allowed(self.goal):
                    deps = self.entries[a].hyp_deps | self.entries[na].hyp_deps
                    self.add(self.goal, ("explosion", a, na), deps)
        report = BudgetReport(
            steps_expended=self.steps,
            max_steps=self.budget.max_steps,
            max_depth=self.budget.max_depth,
            fixpoint=not self.frontier,
        )
        return ClosureState(
            self.hypotheses, self.axioms, report, self.entries, self.contradiction
        )

    def expand(self, f: Formula) -> None:
        deps = self.entries[f].hyp_deps
        # modus ponens, this formula as the major premise
        if isinstance(f, Implies):
            self.majors_by_left.setdefault(f.left, []).append(f)
            if f.left in self.entries and self.allowed(f.right):
                self.add(
                    f.right, ("mp", f.left, f), deps | self.entries[f.left].hyp_deps
                )
        # modus ponens, this formula as the minor premise
        for major in self.majors_by_left.get(f, ()):
            if major in self.entries and self.allowed(major.right):
                self.add(
                    major.right,
                    ("mp", f, major),
                    deps | self.entries[major].hyp_deps,
                )
        # decompositions
        if isinstance(f, Not) and isinstance(f.body, Implies):
            if self.allowed(f.body.left):
                self.add(f.body.left, ("notimp_l", f), deps)
            if self.allowed(Not(f.body.right)):
                self.add(Not(f.body.right), ("notimp_r", f), deps)
        if isinstance(f, Not) and isinstance(f.body, Not):
            if self.allowed(f.body.body):
                self.add(f.body.body, ("dnelim", f), deps)
        if isinstance(f, And):
            if self.allowed(f.left):
                self.add(f.left, ("andel1", f), deps)
            if self.allowed(f.right):
                self.add(f.right, ("andel2", f), deps)
        # pool-gated introductions
        dn = Not(Not(f))
        if self.allowed(dn):
            self.add(dn, ("dnintro", f), deps)
        for imp in self.pool_imp_by_right.get(f, ()):
            self.add(imp, ("imp_from_cons", f), deps)
        if isinstance(f, Not):
            for imp in self.pool_imp_by_left.get(f.body, ()):
                self.add(imp, ("imp_from_neg", f), deps)
        for conj in self.pool_and_by_side.get(f, ()):
            other = conj.right if conj.left == f else conj.left
            if other in self.entries:
                left, right = conj.left, conj.right
                self.add(
                    conj,
                    ("andintro", left, right),
                    self.entries[left].hyp_deps | self.entries[right].hyp_deps,
                )
        for disj in self.pool_or_by_side.get(f, ()):
            recipe = ("orin_l", f) if disj.left == f else ("orin_r", f)
            self.add(disj, recipe, deps)
        for quant in self.pool_all_by_body.get(f, ()):
            by_name = dict(self.hypotheses)
            if any(quant.var in free_vars(by_name[n]) for n in deps):
                continue
            self.add(quant, ("gen", f, quant.var), deps)


def sorted_pool(pool: frozenset[Formula]) -> list[Formula]:
    """Deterministic pool ordering: by depth, then rendered text."""
    from .parser import render

    return sorted(pool, key=lambda f: (connective_depth(f), render(f)))


def bounded_closure(
    X,
    axioms: tuple[AxiomSetRecognizer, ...],
    budget: Budget | None = None,
    goal: Formula | None = None,
) -> ClosureState:
    """Budget-bounded consequence closure of ``X`` under the axiom sets.

    ``X`` may contain formulas or (name, formula) pairs.  When ``goal`` is
    given, the pool is widened toward it and a detected contradiction
    immediately yields the goal by explosion.
    """
    budget = budget or Budget()
    return _Saturation(_named_hyps(X), tuple(axioms), budget, goal).run()


@dataclass(frozen=True)
class SearchOutcome:
    """``proof`` is None when the search exhausted its budget or options."""

    proof: Proof | None
    report: BudgetReport

    @property
    def found(self) -> bool:
        return self.proof is not None


@dataclass(frozen=True)
class ConsistencyVerdict:
    kind: str  # contradiction_found | no_contradiction_within_budget
    #        | target_derived | target_not_derived_within_budget
    witness: Formula | None
    proofs: tuple[Proof, ...]
    report: BudgetReport


_BACKWARD_DEPTH = 12


class _Searcher:
    def __init__(
        self,
        hypotheses: tuple[tuple[str, Formula], ...],
        axioms: tuple[AxiomSetRecognizer, ...],
        budget: Budget,
    ) -> None:
        self.base_hyps = hypotheses
        self.axioms = axioms
        self.budget = budget
        self.steps = 0
        self.closures: dict[tuple, ClosureState] = {}
        self.failed: dict[tuple, int] = {}  # (goal, hyps-key) -> highest depth failed

    def remaining(self) -> int:
        return max(0, self.budget.max_steps - self.steps)

    def closure_for(
        self, hyps: tuple[tuple[str, Formula], ...], goal: Formula
    ) -> ClosureState:
        key = (tuple(f for _, f in hyps), goal)
        got = self.closures.get(key)
        if got is None:
            sub_budget = replace(self.budget, max_steps=self.remaining())
            got = _Saturation(hyps, self.axioms, sub_budget, goal).run()
            self.steps += got.report.steps_expended
            self.closures[key] = got
        return got

    def prove(
        self, goal: Formula, hyps: tuple[tuple[str, Formula], ...], depth: int
    ) -> Proof | None:
        key = (goal, tuple(f for _, f in hyps))
        if self.failed.get(key, -1) >= depth:
            return None
        proof = self._attempt(goal, hyps, depth)
        if proof is None:
            self.failed[key] = max(self.failed.get(key, -1), depth)
        return proof

    def _attempt(
        self, goal: Formula, hyps: tuple[tuple[str, Formula], ...], depth: int
    ) -> Proof | None:
        closure = self.closure_for(hyps, goal)
        if goal in closure:
            return closure.proof_of(goal)
        if depth <= 0 or self.remaining() == 0:
            return None
        if isinstance(goal, Implies) and is_sentence(goal.left):
            name = f"g{len(hyps) + 1}"
            sub = self.prove(goal.right, hyps + ((name, goal.left),), depth - 1)
            if sub is not None:
                return deduction_transform(sub, name, self.axioms)
        if isinstance(goal, And):
            left = self.prove(goal.left, hyps, depth - 1)
            if left is not None:
                right = self.prove(goal.right, hyps, depth - 1)
                if right is not None:
                    return self._combine(
                        hyps, (left, right), lambda b, idx: derive_andintro(b, *idx)
                    )
        if isinstance(goal, Or):
            for sub_goal, side in ((goal.left, "left"), (goal.right, "right")):
                other = goal.right if side == "left" else goal.left
                sub = self.prove(sub_goal, hyps, depth - 1)
                if sub is not None:
                    return self._combine(
                        hyps, (sub,), lambda b, idx: derive_orin(b, idx[0], other, side)
                    )
        if isinstance(goal, Not):
            inner = goal.body
            if isinstance(inner, Not):
                sub = self.prove(inner.body, hyps, depth - 1)
                if sub is not None:
                    return self._combine(hyps, (sub,), lambda b, idx: derive_dnintro(b, idx[0]))
            if isinstance(inner, Implies):
                left = self.prove(inner.left, hyps, depth - 1)
                if left is not None:
                    right = self.prove(Not(inner.right), hyps, depth - 1)
                    if right is not None:
                        return self._combine(
                            hyps, (left, right), lambda b, idx: derive_notimp_intro(b, *idx)
                        )
            if isinstance(inner, And):
                for sub_goal, which in ((Not(inner.left), 1), (Not(inner.right), 2)):
                    other = inner.right if which == 1 else inner.left
                    sub = self.prove(sub_goal, hyps, depth - 1)
                    if sub is not None:
                        return self._combine(
                            hyps,
                            (sub,),
                            lambda b, idx: derive_notand(b, idx[0], other, which),
                        )
            if isinstance(inner, Or):
                left = self.prove(Not(inner.left), hyps, depth - 1)
                if left is not None:
                    right = self.prove(Not(inner.right), hyps, depth - 1)
                    if right is not None:
                        return self._combine(
                            hyps, (left, right), lambda b, idx: derive_notor(b, *idx)
                        )
            # reductio: assume the body, close, look for a contradiction
            if is_sentence(inner):
                name = f"g{len(hyps) + 1}"
                assumed = hyps + ((name, inner),)
                sub_closure = self.closure_for(assumed, goal)
                if sub_closure.contradiction is not None:
                    a, na = sub_closure.contradiction
                    return reductio_transform(
                        sub_closure.proof_of(a),
                        sub_closure.proof_of(na),
                        name,
                        self.axioms,
                    )
        return None

    def _combine(self, hyps, sub_proofs, finish) -> Proof:
        b = ProofBuilder(hyps, label=axiom_labeler(self.axioms))
        idx = tuple(splice(b, p) for p in sub_proofs)
        conclude(b, finish(b, idx))
        return b.proof()


def prove(
    goal: Formula,
    X,
    axioms: tuple[AxiomSetRecognizer, ...],
    budget: Budget | None = None,
) -> SearchOutcome:
    """Search for a kernel proof of ``goal`` from hypotheses ``X``.

    Iterative deepening over backward decompositions; each frontier consults
    the forward closure.  Deterministic; returns the first proof found.
    """
    budget = budget or Budget()
    hyps = _named_hyps(X)
    searcher = _Searcher(hyps, tuple(axioms), budget)
    proof = None
    for depth in range(_BACKWARD_DEPTH + 1):
        proof = searcher.prove(goal, hyps, depth)
        if proof is not None or searcher.remaining() == 0:
            break
        # a fully saturated base closure cannot improve with more depth unless
        # some decomposition applies; the failure memo keeps re-walks cheap
    report = BudgetReport(
        steps_expended=searcher.steps,
        max_steps=budget.max_steps,
        max_depth=budget.max_depth,
        fixpoint=proof is None and searcher.remaining() > 0,
    )
    return SearchOutcome(proof, report)


def check_traditional_consistency(
    X,
    axioms: tuple[AxiomSetRecognizer, ...],
    budget: Budget | None = None,
) -> ConsistencyVerdict:
    """Probe for a pair alpha, ~alpha in the bounded closure of ``X``."""
    budget = budget or Budget()
    closure = bounded_closure(X, axioms, budget)
    if closure.contradiction is not None:
        a, na = closure.contradiction
        return ConsistencyVerdict(
            "contradiction_found",
            a,
            (closure.proof_of(a), closure.proof_of(na)),
            closure.report,
        )
    return ConsistencyVerdict(
        "no_contradiction_within_budget", None, (), closure.report
    )


def check_absolute_consistency(
    X,
    axioms: tuple[AxiomSetRecognizer, ...],
    target: Formula | None = None,
    budget: Budget | None = None,
) -> ConsistencyVerdict:
    """Probe whether the designated target sentence is derivable from ``X``."""
    budget = budget or Budget()
    if target is None:
        target = named_formula("u27")
    outcome = prove(target, X, axioms, budget)
    if outcome.found:
        return ConsistencyVerdict(
            "target_derived", target, (outcome.proof,), outcome.report
        )
    return ConsistencyVerdict(
        "target_not_derived_within_budget", target, (), outcome.report
    )
