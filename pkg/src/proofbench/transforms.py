"""Derived inference templates and constructive proof transforms.

The templates append concrete axiom/modus-ponens step sequences to a
:class:`~proofbench.proofs.ProofBuilder` and return the index of the derived
line; because the builder reuses steps that restate a formula, nesting
templates stays linear.  Everything here bottoms out in the twelve logical
schemata plus modus ponens and generalization, so the results go straight
through the kernel checker.

The transforms rebuild whole proofs:

* :func:`deduction_transform` discharges a hypothesis ``alpha`` from a proof
  of ``chi``, producing a proof of ``alpha -> chi`` with linear overhead.
* :func:`reductio_transform` turns proofs of ``beta`` and ``~beta`` under
  ``alpha`` into a proof of ``~alpha``.
* :func:`explosion_transform` turns proofs of ``beta`` and ``~beta`` into a
  proof of an arbitrary goal.
"""

from __future__ import annotations

from typing import Sequence

from .proofs import Ax, Gen, Hyp, Mp, Proof, ProofBuilder, check_proof
from .schemata import AxiomSetRecognizer
from .syntax import (
    And,
    Forall,
    Formula,
    Implies,
    Not,
    Or,
    Term,
    free_for,
    free_vars,
    is_sentence,
    substitute,
)


class TransformError(ValueError):
    """Raised when a transform's precondition fails (e.g. capture on discharge)."""


# -- schema instance constructors ---------------------------------------


def phi1_instance(a: Formula, b: Formula, c: Formula) -> Formula:
    return Implies(Implies(a, Implies(b, c)), Implies(Implies(a, b), Implies(a, c)))


def phi2_instance(a: Formula) -> Formula:
    return Implies(Implies(Not(a), a), a)


def phi3_instance(a: Formula, b: Formula) -> Formula:
    return Implies(Not(a), Implies(a, b))


def phi4_instance(a: Formula, b: Formula) -> Formula:
    return Implies(a, Implies(b, a))


def phi5_instance(a: Formula, b: Formula) -> Formula:
    return Implies(And(a, b), a)


def phi6_instance(a: Formula, b: Formula) -> Formula:
    return Implies(And(a, b), b)


def phi7_instance(a: Formula, b: Formula) -> Formula:
    return Implies(a, Implies(b, And(a, b)))


def phi8_instance(a: Formula, b: Formula) -> Formula:
    return Implies(a, Or(a, b))


def phi9_instance(a: Formula, b: Formula) -> Formula:
    return Implies(b, Or(a, b))


def phi10_instance(a: Formula, b: Formula, d: Formula) -> Formula:
    return Implies(Implies(a, b), Implies(Implies(d, b), Implies(Or(a, d), b)))


def phi11_instance(x: int, phi: Formula, t: Term) -> Formula:
    if not free_for(x, t, phi):
        raise TransformError(f"term not free for x{x} in instantiation target")
    return Implies(Forall(x, phi), substitute(phi, x, t))


def phi12_instance(x: int, phi: Formula, psi: Formula) -> Formula:
    if x in free_vars(phi):
        raise TransformError(f"x{x} must not be free in the fixed antecedent")
    return Implies(Forall(x, Implies(phi, psi)), Implies(phi, Forall(x, psi)))


# -- derived-rule templates ---------------------------------------------


def derive_identity(b: ProofBuilder, a: Formula) -> int:
    """Append a proof of ``a -> a``."""
    s1 = b.add_axiom(phi4_instance(a, Implies(a, a)))
    s2 = b.add_axiom(phi1_instance(a, Implies(a, a), a))
    s3 = b.add_mp(s1, s2)
    s4 = b.add_axiom(phi4_instance(a, a))
    return b.add_mp(s4, s3)


def derive_chain(b: ProofBuilder, i: int, j: int) -> int:
    """From step ``i``: A -> B and step ``j``: B -> C, derive A -> C."""
    fi, fj = b.formula(i), b.formula(j)
    if not (isinstance(fi, Implies) and isinstance(fj, Implies) and fi.right == fj.left):
        raise TransformError("chain needs A -> B and B -> C")
    a, _, c = fi.left, fi.right, fj.right
    s1 = b.add_axiom(phi4_instance(fj, a))
    s2 = b.add_mp(j, s1)
    s3 = b.add_axiom(phi1_instance(a, fi.right, c))
    s4 = b.add_mp(s2, s3)
    return b.add_mp(i, s4)


def derive_dnelim_imp(b: ProofBuilder, a: Formula) -> int:
    """Append a proof of ``~~a -> a``."""
    s1 = b.add_axiom(phi3_instance(Not(a), a))  # ~~a -> (~a -> a)
    s2 = b.add_axiom(phi2_instance(a))  # (~a -> a) -> a
    return derive_chain(b, s1, s2)


def derive_refute(b: ProofBuilder, i: int, j: int) -> int:
    """From step ``i``: a -> c and step ``j``: a -> ~c, derive ~a."""
    fi, fj = b.formula(i), b.formula(j)
    if not (
        isinstance(fi, Implies)
        and isinstance(fj, Implies)
        and fi.left == fj.left
        and fj.right == Not(fi.right)
    ):
        raise TransformError("refutation needs a -> c and a -> ~c")
    a, c = fi.left, fi.right
    s1 = b.add_axiom(phi3_instance(c, Not(a)))  # ~c -> (c -> ~a)
    s2 = derive_chain(b, j, s1)  # a -> (c -> ~a)
    s3 = b.add_axiom(phi1_instance(a, c, Not(a)))
    s4 = b.add_mp(s2, s3)  # (a -> c) -> (a -> ~a)
    s5 = b.add_mp(i, s4)  # a -> ~a
    s6 = derive_dnelim_imp(b, a)  # ~~a -> a
    s7 = derive_chain(b, s6, s5)  # ~~a -> ~a
    s8 = b.add_axiom(phi2_instance(Not(a)))
    return b.add_mp(s7, s8)  # ~a


def derive_dnelim(b: ProofBuilder, i: int) -> int:
    """From step ``i``: ~~A, derive A."""
    fi = b.formula(i)
    if not (isinstance(fi, Not) and isinstance(fi.body, Not)):
        raise TransformError("double-negation elimination needs ~~A")
    s1 = derive_dnelim_imp(b, fi.body.body)
    return b.add_mp(i, s1)


def derive_dnintro(b: ProofBuilder, i: int) -> int:
    """From step ``i``: A, derive ~~A."""
    a = b.formula(i)
    s1 = b.add_axiom(phi4_instance(a, Not(a)))
    s2 = b.add_mp(i, s1)  # ~a -> a
    s3 = derive_identity(b, Not(a))  # ~a -> ~a
    return derive_refute(b, s2, s3)  # ~~a


def derive_notimp_left(b: ProofBuilder, i: int) -> int:
    """From step ``i``: ~(A -> B), derive A."""
    fi = b.formula(i)
    if not (isinstance(fi, Not) and isinstance(fi.body, Implies)):
        raise TransformError("needs ~(A -> B)")
    a, c = fi.body.left, fi.body.right
    s1 = b.add_axiom(phi3_instance(fi.body, a))  # ~(A->B) -> ((A->B) -> A)
    s2 = b.add_mp(i, s1)
    s3 = b.add_axiom(phi3_instance(a, c))  # ~A -> (A -> B)
    s4 = derive_chain(b, s3, s2)  # ~A -> A
    s5 = b.add_axiom(phi2_instance(a))
    return b.add_mp(s4, s5)


def derive_notimp_right(b: ProofBuilder, i: int) -> int:
    """From step ``i``: ~(A -> B), derive ~B."""
    fi = b.formula(i)
    if not (isinstance(fi, Not) and isinstance(fi.body, Implies)):
        raise TransformError("needs ~(A -> B)")
    a, c = fi.body.left, fi.body.right
    s1 = b.add_axiom(phi3_instance(fi.body, Not(c)))  # ~(A->B) -> ((A->B) -> ~B)
    s2 = b.add_mp(i, s1)
    s3 = b.add_axiom(phi4_instance(c, a))  # B -> (A -> B)
    s4 = derive_chain(b, s3, s2)  # B -> ~B
    s5 = derive_dnelim_imp(b, c)  # ~~B -> B
    s6 = derive_chain(b, s5, s4)  # ~~B -> ~B
    s7 = b.add_axiom(phi2_instance(Not(c)))
    return b.add_mp(s6, s7)


def derive_notimp_intro(b: ProofBuilder, i: int, j: int) -> int:
    """From step ``i``: A and step ``j``: ~B, derive ~(A -> B)."""
    a, nb = b.formula(i), b.formula(j)
    if not isinstance(nb, Not):
        raise TransformError("second step must be a negation")
    c = nb.body
    imp = Implies(a, c)
    s1 = derive_identity(b, imp)
    s2 = b.add_axiom(phi1_instance(imp, a, c))
    s3 = b.add_mp(s1, s2)  # ((A->B) -> A) -> ((A->B) -> B)
    s4 = b.add_axiom(phi4_instance(a, imp))
    s5 = b.add_mp(i, s4)  # (A->B) -> A
    s6 = b.add_mp(s5, s3)  # (A->B) -> B
    s7 = b.add_axiom(phi4_instance(nb, imp))
    s8 = b.add_mp(j, s7)  # (A->B) -> ~B
    return derive_refute(b, s6, s8)


def derive_andel(b: ProofBuilder, i: int, which: int) -> int:
    """From step ``i``: A /\\ B, derive A (``which=1``) or B (``which=2``)."""
    fi = b.formula(i)
    if not isinstance(fi, And):
        raise TransformError("needs A /\\ B")
    inst = phi5_instance(fi.left, fi.right) if which == 1 else phi6_instance(fi.left, fi.right)
    return b.add_mp(i, b.add_axiom(inst))


def derive_andintro(b: ProofBuilder, i: int, j: int) -> int:
    """From steps ``i``: A and ``j``: B, derive A /\\ B."""
    a, c = b.formula(i), b.formula(j)
    s1 = b.add_axiom(phi7_instance(a, c))
    s2 = b.add_mp(i, s1)
    return b.add_mp(j, s2)


def derive_orin(b: ProofBuilder, i: int, other: Formula, side: str) -> int:
    """From step ``i``: A, derive A \\/ other (``side="left"``) or other \\/ A."""
    a = b.formula(i)
    if side == "left":
        inst = phi8_instance(a, other)
    elif side == "right":
        inst = phi9_instance(other, a)
    else:
        raise TransformError(f"bad side {side!r}")
    return b.add_mp(i, b.add_axiom(inst))


def derive_orelim(b: ProofBuilder, d: int, i: int, j: int) -> int:
    """From ``d``: A \\/ D, ``i``: A -> C, ``j``: D -> C, derive C."""
    fd, fi, fj = b.formula(d), b.formula(i), b.formula(j)
    if not (
        isinstance(fd, Or)
        and isinstance(fi, Implies)
        and isinstance(fj, Implies)
        and fi.left == fd.left
        and fj.left == fd.right
        and fi.right == fj.right
    ):
        raise TransformError("case split needs A \\/ D, A -> C, D -> C")
    s1 = b.add_axiom(phi10_instance(fd.left, fi.right, fd.right))
    s2 = b.add_mp(i, s1)
    s3 = b.add_mp(j, s2)
    return b.add_mp(d, s3)


def derive_notand(b: ProofBuilder, i: int, other: Formula, which: int) -> int:
    """From step ``i``: ~A, derive ~(A /\\ other) (``which=1``) or ~(other /\\ A)."""
    ni = b.formula(i)
    if not isinstance(ni, Not):
        raise TransformError("needs a negation")
    a = ni.body
    conj = And(a, other) if which == 1 else And(other, a)
    proj = (
        phi5_instance(a, other) if which == 1 else phi6_instance(other, a)
    )  # conj -> a
    s1 = b.add_axiom(proj)
    s2 = b.add_axiom(phi4_instance(ni, conj))
    s3 = b.add_mp(i, s2)  # conj -> ~a
    return derive_refute(b, s1, s3)


def derive_notor(b: ProofBuilder, i: int, j: int) -> int:
    """From steps ``i``: ~A and ``j``: ~B, derive ~(A \\/ B)."""
    na, nb = b.formula(i), b.formula(j)
    if not (isinstance(na, Not) and isinstance(nb, Not)):
        raise TransformError("needs two negations")
    a, c = na.body, nb.body
    s1 = derive_identity(b, a)  # A -> A
    s2 = b.add_axiom(phi3_instance(c, a))  # ~B -> (B -> A)
    s3 = b.add_mp(j, s2)  # B -> A
    s4 = b.add_axiom(phi10_instance(a, a, c))
    s5 = b.add_mp(s1, s4)
    s6 = b.add_mp(s3, s5)  # A \/ B -> A
    s7 = b.add_axiom(phi4_instance(na, Or(a, c)))
    s8 = b.add_mp(i, s7)  # A \/ B -> ~A
    return derive_refute(b, s6, s8)


def derive_imp_from_cons(b: ProofBuilder, i: int, antecedent: Formula) -> int:
    """From step ``i``: B, derive antecedent -> B."""
    c = b.formula(i)
    return b.add_mp(i, b.add_axiom(phi4_instance(c, antecedent)))


def derive_imp_from_neg(b: ProofBuilder, i: int, consequent: Formula) -> int:
    """From step ``i``: ~A, derive A -> consequent."""
    na = b.formula(i)
    if not isinstance(na, Not):
        raise TransformError("needs a negation")
    return b.add_mp(i, b.add_axiom(phi3_instance(na.body, consequent)))


def derive_explosion(b: ProofBuilder, i: int, j: int, goal: Formula) -> int:
    """From steps ``i``: F and ``j``: ~F, derive any ``goal``."""
    f, nf = b.formula(i), b.formula(j)
    if nf != Not(f):
        raise TransformError("explosion needs F and ~F")
    s1 = b.add_axiom(phi3_instance(f, goal))
    s2 = b.add_mp(j, s1)
    return b.add_mp(i, s2)


def conclude(b: ProofBuilder, idx: int) -> int:
    """Ensure the builder's final step states the formula at ``idx``.

    Step reuse can leave the intended conclusion in the middle of the list;
    when that happens, a short identity detour restates it at the end.
    """
    f = b.formula(idx)
    steps = b.proof().steps
    if steps and steps[-1].formula == f:
        return len(steps)
    ident = derive_identity(b, f)
    return b.restate(idx, ident)


# -- whole-proof transforms ---------------------------------------------


def axiom_labeler(axioms: Sequence[AxiomSetRecognizer]):
    """A builder ``label``: the first recognizer containing the formula names it."""

    def label(f: Formula) -> str | None:
        for r in axioms:
            if r.contains(f):
                return r.name
        return None

    return label


def splice(b: ProofBuilder, proof: Proof) -> int:
    """Replay ``proof``'s steps into ``b``; return the conclusion's new index.

    Hypothesis names cited by the proof must exist (with the same formula) in
    the builder's hypothesis list.
    """
    if not proof.steps:
        raise TransformError("cannot splice an empty proof")
    remap: dict[int, int] = {}
    by_name = dict(b.hypotheses)
    for step in proof.steps:
        j = step.just
        if isinstance(j, Hyp):
            if by_name.get(j.name) != step.formula:
                raise TransformError(f"hypothesis {j.name!r} missing from target builder")
            idx = b.add_hyp(j.name)
        elif isinstance(j, Ax):
            idx = b.add_axiom_named(step.formula, j.set_name)
        elif isinstance(j, Mp):
            idx = b.add_mp(remap[j.i], remap[j.j])
        elif isinstance(j, Gen):
            idx = b.add_gen(remap[j.i], j.var)
        else:  # pragma: no cover - justification variants are closed
            raise TransformError(f"unknown justification {j!r}")
        remap[step.index] = idx
    return remap[proof.steps[-1].index]


def deduction_transform(
    proof: Proof, name: str, axioms: Sequence[AxiomSetRecognizer]
) -> Proof:
    """Discharge hypothesis ``name`` = alpha: a proof of chi becomes one of alpha -> chi.

    The discharged hypothesis must be a sentence and the input proof must
    pass the checker.  Generalization steps over a variable free in alpha
    cannot be discharged and raise :class:`TransformError`.  Step count
    grows linearly (at most 3n + a constant for the identity template).
    """
    alpha = proof.hypothesis(name)
    if alpha is None:
        raise TransformError(f"no hypothesis named {name!r}")
    if not is_sentence(alpha):
        raise TransformError(
            f"hypothesis {name!r} has free variables; only sentences can be discharged"
        )
    result = check_proof(proof, tuple(axioms))
    if not result.ok:
        raise TransformError(
            f"input proof fails check at step {result.step}: {result.reason}"
        )
    out_hyps = tuple((n, f) for n, f in proof.hypotheses if n != name)
    b = ProofBuilder(out_hyps, label=axiom_labeler(axioms))
    imp: dict[int, int] = {}  # input index -> index of (alpha -> that step)

    def reemit_then_weaken(step_formula: Formula, add_original) -> int:
        base = add_original()
        s = b.add_axiom(phi4_instance(step_formula, alpha))
        return b.add_mp(base, s)

    for step in proof.steps:
        j = step.just
        if isinstance(j, Hyp) and j.name == name:
            imp[step.index] = derive_identity(b, alpha)
        elif isinstance(j, Hyp):
            imp[step.index] = reemit_then_weaken(step.formula, lambda: b.add_hyp(j.name))
        elif isinstance(j, Ax):
            imp[step.index] = reemit_then_weaken(
                step.formula, lambda: b.add_axiom_named(step.formula, j.set_name)
            )
        elif isinstance(j, Mp):
            minor = proof.steps[j.i - 1].formula
            s1 = b.add_axiom(phi1_instance(alpha, minor, step.formula))
            s2 = b.add_mp(imp[j.j], s1)
            imp[step.index] = b.add_mp(imp[j.i], s2)
        elif isinstance(j, Gen):
            if j.var in free_vars(alpha):
                raise TransformError(
                    f"cannot discharge: step {step.index} generalizes over x{j.var}, "
                    "free in the discharged hypothesis"
                )
            body = proof.steps[j.i - 1].formula
            s1 = b.add_gen(imp[j.i], j.var)  # (Ax)(alpha -> body)
            s2 = b.add_axiom(phi12_instance(j.var, alpha, body))
            imp[step.index] = b.add_mp(s1, s2)
        else:  # pragma: no cover - justification variants are closed
            raise TransformError(f"unknown justification {j!r}")
    conclude(b, imp[proof.steps[-1].index])
    return b.proof()


def _merge_hypotheses(p1: Proof, p2: Proof) -> tuple[tuple[str, Formula], ...]:
    merged = dict(p1.hypotheses)
    for n, f in p2.hypotheses:
        if n in merged and merged[n] != f:
            raise TransformError(f"hypothesis name {n!r} bound to two formulas")
        merged.setdefault(n, f)
    out = list(p1.hypotheses)
    seen = {n for n, _ in out}
    for n, f in p2.hypotheses:
        if n not in seen:
            out.append((n, f))
            seen.add(n)
    return tuple(out)


def reductio_transform(
    proof_pos: Proof,
    proof_neg: Proof,
    name: str,
    axioms: Sequence[AxiomSetRecognizer],
) -> Proof:
    """From proofs of beta and ~beta under hypothesis ``name`` = alpha, prove ~alpha."""
    beta = proof_pos.conclusion
    if proof_neg.conclusion != Not(beta):
        raise TransformError("second proof must conclude the negation of the first")
    d_pos = deduction_transform(proof_pos, name, axioms)
    d_neg = deduction_transform(proof_neg, name, axioms)
    b = ProofBuilder(_merge_hypotheses(d_pos, d_neg), label=axiom_labeler(axioms))
    i = splice(b, d_pos)  # alpha -> beta
    j = splice(b, d_neg)  # alpha -> ~beta
    conclude(b, derive_refute(b, i, j))
    return b.proof()


def explosion_transform(
    proof_pos: Proof,
    proof_neg: Proof,
    goal: Formula,
    axioms: Sequence[AxiomSetRecognizer],
) -> Proof:
    """From proofs of beta and ~beta (same hypotheses context), prove ``goal``."""
    beta = proof_pos.conclusion
    if proof_neg.conclusion != Not(beta):
        raise TransformError("second proof must conclude the negation of the first")
    for label, p in (("first", proof_pos), ("second", proof_neg)):
        result = check_proof(p, tuple(axioms))
        if not result.ok:
            raise TransformError(
                f"{label} input proof fails check at step {result.step}: {result.reason}"
            )
    b = ProofBuilder(
        _merge_hypotheses(proof_pos, proof_neg), label=axiom_labeler(axioms)
    )
    i = splice(b, proof_pos)
    j = splice(b, proof_neg)
    conclude(b, derive_explosion(b, i, j, goal))
    return b.proof()
