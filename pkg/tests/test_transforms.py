"""Derived-rule helpers and the hypothesis-discharging transforms."""

import random

import pytest

from proofbench.parser import parse
from proofbench.proofs import Proof, ProofBuilder, ProofStep, Mp, check_proof
from proofbench.schemata import PSI_AXIOMS, axiom_set, named_formula
from proofbench.syntax import And, Forall, Implies, Not, Or
from proofbench.transforms import (
    TransformError,
    axiom_labeler,
    conclude,
    deduction_transform,
    derive_andel,
    derive_andintro,
    derive_chain,
    derive_dnelim,
    derive_dnintro,
    derive_explosion,
    derive_identity,
    derive_imp_from_cons,
    derive_imp_from_neg,
    derive_notimp_left,
    derive_notimp_right,
    derive_orin,
    derive_refute,
    explosion_transform,
    phi4_instance,
    reductio_transform,
    splice,
)

from strategies import random_proof

L12 = (axiom_set("L12"),)
LBL = axiom_labeler(L12)
PSI1 = PSI_AXIOMS["psi1"]
PSI7 = PSI_AXIOMS["psi7"]
U27 = named_formula("u27")


def _fresh(hyps=()):
    b = ProofBuilder(tuple(hyps), label=LBL)
    for name, _ in hyps:
        b.add_hyp(name)
    return b


def _concludes(b, idx, expected):
    conclude(b, idx)
    p = b.proof()
    assert p.steps[-1].formula == expected
    assert check_proof(p, L12).ok
    return p


def test_derive_identity():
    b = _fresh()
    i = derive_identity(b, PSI7)
    _concludes(b, i, Implies(PSI7, PSI7))


def test_derive_double_negation():
    b = _fresh((("h", PSI7),))
    i = b.idx_of(PSI7)
    j = derive_dnintro(b, i)
    _concludes(b, j, Not(Not(PSI7)))
    b2 = _fresh((("h", Not(Not(PSI7))),))
    j2 = derive_dnelim(b2, b2.idx_of(Not(Not(PSI7))))
    _concludes(b2, j2, PSI7)


def test_derive_conjunction():
    b = _fresh((("a", PSI7), ("b", PSI1)))
    k = derive_andintro(b, b.idx_of(PSI7), b.idx_of(PSI1))
    _concludes(b, k, And(PSI7, PSI1))
    b2 = _fresh((("h", And(PSI7, PSI1)),))
    left = derive_andel(b2, b2.idx_of(And(PSI7, PSI1)), 1)
    assert b2.formula(left) == PSI7
    right = derive_andel(b2, b2.idx_of(And(PSI7, PSI1)), 2)
    _concludes(b2, right, PSI1)


def test_derive_disjunction_intro():
    b = _fresh((("h", PSI7),))
    i = derive_orin(b, b.idx_of(PSI7), PSI1, "right")
    assert b.formula(i) in (Or(PSI7, PSI1), Or(PSI1, PSI7))
    j = derive_orin(b, b.idx_of(PSI7), PSI1, "left")
    assert {b.formula(i), b.formula(j)} == {Or(PSI7, PSI1), Or(PSI1, PSI7)}
    assert check_proof(b.proof(), L12).ok


def test_derive_negated_implication_split():
    h = Not(Implies(PSI7, PSI1))
    b = _fresh((("h", h),))
    i = derive_notimp_left(b, b.idx_of(h))
    assert b.formula(i) == PSI7
    j = derive_notimp_right(b, b.idx_of(h))
    _concludes(b, j, Not(PSI1))


def test_derive_implication_introductions():
    b = _fresh((("h", PSI1),))
    i = derive_imp_from_cons(b, b.idx_of(PSI1), PSI7)
    _concludes(b, i, Implies(PSI7, PSI1))
    b2 = _fresh((("h", Not(PSI7)),))
    j = derive_imp_from_neg(b2, b2.idx_of(Not(PSI7)), PSI1)
    _concludes(b2, j, Implies(PSI7, PSI1))


def test_derive_chain():
    b = _fresh((("ab", Implies(PSI7, PSI1)), ("bc", Implies(PSI1, U27))))
    k = derive_chain(b, b.idx_of(Implies(PSI7, PSI1)), b.idx_of(Implies(PSI1, U27)))
    _concludes(b, k, Implies(PSI7, U27))


def test_derive_explosion_and_refute():
    b = _fresh((("p", PSI1), ("n", Not(PSI1))))
    g = derive_explosion(b, b.idx_of(PSI1), b.idx_of(Not(PSI1)), U27)
    _concludes(b, g, U27)
    b2 = _fresh((("pos", Implies(PSI7, PSI1)), ("neg", Implies(PSI7, Not(PSI1)))))
    k = derive_refute(
        b2, b2.idx_of(Implies(PSI7, PSI1)), b2.idx_of(Implies(PSI7, Not(PSI1)))
    )
    _concludes(b2, k, Not(PSI7))


def test_splice_reuses_whole_proofs():
    inner_b = _fresh((("h", PSI7),))
    derive_dnintro(inner_b, inner_b.idx_of(PSI7))
    inner = inner_b.proof()
    outer = _fresh((("h", PSI7),))
    idx = splice(outer, inner)
    assert outer.formula(idx) == Not(Not(PSI7))
    assert check_proof(outer.proof(), L12).ok


# ---------------------------------------------------------------------------
# deduction theorem


def hyp_proof() -> Proof:
    b = _fresh((("h", PSI7),))
    i = b.idx_of(PSI7)
    j = b.add_axiom(phi4_instance(PSI7, PSI1))
    b.add_mp(i, j)
    return b.proof()


def test_deduction_discharges_hypothesis():
    p = hyp_proof()  # {psi7} |- psi1 -> psi7
    out = deduction_transform(p, "h", L12)
    assert out.hypotheses == ()
    assert out.steps[-1].formula == Implies(PSI7, Implies(PSI1, PSI7))
    assert check_proof(out, L12).ok


def test_deduction_keeps_other_hypotheses():
    b = _fresh((("a", PSI7), ("b", PSI1)))
    derive_andintro(b, b.idx_of(PSI7), b.idx_of(PSI1))
    out = deduction_transform(b.proof(), "b", L12)
    assert out.hypotheses == (("a", PSI7),)
    assert out.steps[-1].formula == Implies(PSI1, And(PSI7, PSI1))
    assert check_proof(out, L12).ok


def test_deduction_handles_gen_steps():
    b = _fresh((("h", PSI7),))
    open_f = parse("x1 = x1")
    i = b.add_axiom(phi4_instance(open_f, open_f))
    b.add_gen(i, 1)
    out = deduction_transform(b.proof(), "h", L12)
    assert check_proof(out, L12).ok
    assert out.steps[-1].formula == Implies(
        PSI7, Forall(1, phi4_instance(open_f, open_f))
    )


def test_deduction_rejects_open_hypothesis():
    open_h = parse("x1 = x1")
    b = _fresh((("h", open_h),))
    with pytest.raises(TransformError):
        deduction_transform(b.proof(), "h", L12)


def test_deduction_rejects_unknown_name():
    with pytest.raises(TransformError):
        deduction_transform(hyp_proof(), "nope", L12)


def test_deduction_rejects_broken_proof():
    broken = Proof((("h", PSI7),), (ProofStep(1, PSI1, Mp(1, 1)),))
    with pytest.raises(TransformError):
        deduction_transform(broken, "h", L12)


def test_deduction_round_trip_random():
    rng = random.Random(4242)
    for _ in range(40):
        p = random_proof(rng)
        name = rng.choice([n for n, _ in p.hypotheses])
        alpha = dict(p.hypotheses)[name]
        out = deduction_transform(p, name, L12)
        assert check_proof(out, L12).ok
        assert out.steps[-1].formula == Implies(alpha, p.steps[-1].formula)
        assert dict(out.hypotheses) == {
            n: f for n, f in p.hypotheses if n != name
        }
        assert len(out.steps) <= 3 * len(p.steps) + 8


# ---------------------------------------------------------------------------
# reductio and explosion


def test_reductio():
    # from {alpha, p, n}: beta = psi1 (via p), ~beta (via n); discharge alpha
    pos_b = _fresh((("alpha", PSI7), ("p", PSI1)))
    pos = pos_b.proof()
    neg_b = _fresh((("alpha", PSI7), ("n", Not(PSI1))))
    neg = neg_b.proof()
    # align conclusions: pos ends on psi1? builder order: hyp alpha then p
    assert pos.steps[-1].formula == PSI1
    assert neg.steps[-1].formula == Not(PSI1)
    out = reductio_transform(pos, neg, "alpha", L12)
    assert out.steps[-1].formula == Not(PSI7)
    assert check_proof(out, L12).ok
    assert dict(out.hypotheses) == {"p": PSI1, "n": Not(PSI1)}


def test_reductio_rejects_mismatched_conclusions():
    pos = _fresh((("alpha", PSI7), ("p", PSI1))).proof()
    neg = _fresh((("alpha", PSI7), ("n", Not(U27)))).proof()
    with pytest.raises(TransformError):
        reductio_transform(pos, neg, "alpha", L12)


def test_explosion_transform():
    pos = _fresh((("p", PSI1),)).proof()
    neg = _fresh((("n", Not(PSI1)),)).proof()
    out = explosion_transform(pos, neg, U27, L12)
    assert out.steps[-1].formula == U27
    assert check_proof(out, L12).ok
    assert dict(out.hypotheses) == {"p": PSI1, "n": Not(PSI1)}


def test_explosion_rejects_broken_input():
    pos = Proof((("p", PSI1),), (ProofStep(1, PSI1, Mp(1, 1)),))
    neg = _fresh((("n", Not(PSI1)),)).proof()
    with pytest.raises(TransformError):
        explosion_transform(pos, neg, U27, L12)
