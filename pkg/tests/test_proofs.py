"""Kernel proof objects, the step checker, and proof-script serialization."""

import random

import pytest

from proofbench.parser import parse
from proofbench.proofs import (
    Ax,
    Hyp,
    Mp,
    Proof,
    ProofBuilder,
    ProofStep,
    ScriptError,
    check_proof,
    parse_proof_script,
    render_proof_script,
)
from proofbench.schemata import PSI_AXIOMS, axiom_set, named_formula
from proofbench.syntax import Forall, Implies
from proofbench.transforms import axiom_labeler, phi4_instance

from strategies import random_proof

L12 = (axiom_set("L12"),)
PSI1 = PSI_AXIOMS["psi1"]
PSI7 = PSI_AXIOMS["psi7"]


def simple_proof() -> Proof:
    """{psi7} |- psi1 -> psi7 via one phi4 instance and MP."""
    b = ProofBuilder((("h", PSI7),), label=axiom_labeler(L12))
    i = b.add_hyp("h")
    j = b.add_axiom(phi4_instance(PSI7, PSI1))
    b.add_mp(i, j)
    return b.proof()


def test_simple_proof_checks():
    p = simple_proof()
    r = check_proof(p, L12)
    assert r.ok and r.step is None and r.reason is None
    assert p.steps[-1].formula == Implies(PSI1, PSI7)


def test_check_is_pure():
    p = simple_proof()
    assert check_proof(p, L12) == check_proof(p, L12)


def test_unknown_hypothesis_rejected():
    p = Proof((), (ProofStep(1, PSI7, Hyp("nope")),))
    r = check_proof(p, L12)
    assert not r.ok and r.step == 1


def test_axiom_step_must_be_recognized():
    p = Proof((), (ProofStep(1, named_formula("u27"), Ax("L12")),))
    r = check_proof(p, L12)
    assert not r.ok and r.step == 1


def test_axiom_step_unknown_set_name():
    p = Proof((), (ProofStep(1, phi4_instance(PSI7, PSI1), Ax("NoSuchSet")),))
    r = check_proof(p, L12)
    assert not r.ok and r.step == 1


def test_mp_direction_checked():
    good = simple_proof()
    # swap the mp operands: step 1 is not (step 2 -> _)
    bad = Proof(good.hypotheses, good.steps[:-1] + (ProofStep(3, Implies(PSI1, PSI7), Mp(2, 1)),))
    r = check_proof(bad, L12)
    assert not r.ok and r.step == 3


def test_mp_formula_must_be_the_consequent():
    good = simple_proof()
    bad = Proof(good.hypotheses, good.steps[:-1] + (ProofStep(3, PSI7, Mp(1, 2)),))
    r = check_proof(bad, L12)
    assert not r.ok and r.step == 3


def test_forward_reference_rejected():
    p = Proof((), (ProofStep(1, PSI7, Mp(2, 3)),))
    assert not check_proof(p, L12).ok


def test_gen_step():
    open_f = parse("x1 = x1")
    b = ProofBuilder((), label=axiom_labeler(L12))
    # phi2-shaped instance over an open matrix, then generalize
    i = b.add_axiom(phi4_instance(open_f, open_f))
    b.add_gen(i, 2)
    p = b.proof()
    r = check_proof(p, L12)
    assert r.ok
    assert p.steps[-1].formula == Forall(2, phi4_instance(open_f, open_f))


def test_gen_over_free_hypothesis_variable_flagged_and_strict_rejected():
    h = parse("x1 = x1")
    b = ProofBuilder((("h", h),))
    i = b.add_hyp("h")
    b.add_gen(i, 1)
    p = b.proof()
    relaxed = check_proof(p, ())
    assert relaxed.ok and relaxed.warnings
    strict = check_proof(p, (), strict=True)
    assert not strict.ok and strict.step == 2


def test_gen_over_variable_not_free_in_hypotheses_is_clean():
    b = ProofBuilder((("h", PSI7),))
    i = b.add_hyp("h")
    b.add_gen(i, 1)
    r = check_proof(b.proof(), (), strict=True)
    assert r.ok and not r.warnings


def test_duplicate_formulas_permitted():
    b = ProofBuilder((("h", PSI7),), label=axiom_labeler(L12))
    i = b.add_hyp("h")
    j = b.add_axiom(phi4_instance(PSI7, PSI1))
    k = b.add_mp(i, j)
    b.restate(i, j)  # same formula appended again
    p = b.proof()
    assert p.steps[-1].formula == p.steps[k - 1].formula
    assert check_proof(p, L12).ok


def test_script_round_trip():
    p = simple_proof()
    text = render_proof_script(p)
    again = parse_proof_script(text)
    assert again == p
    assert check_proof(again, L12).ok


def test_script_round_trip_random():
    rng = random.Random(99)
    for _ in range(25):
        p = random_proof(rng, max_steps=12)
        assert parse_proof_script(render_proof_script(p)) == p


def test_script_comments_and_blanks_ignored():
    text = render_proof_script(simple_proof())
    noisy = "# leading comment\n\n" + text.replace("\n", "  # trail\n", 1)
    assert parse_proof_script(noisy) == simple_proof()


def test_script_errors_carry_line_numbers():
    with pytest.raises(ScriptError) as e:
        parse_proof_script("1. 0 = 0 ; axiom L12\nhyp h 0 = 0\n")
    assert e.value.line == 2
    with pytest.raises(ScriptError):
        parse_proof_script("1. 0 = 0 ; frobnicate\n")
    with pytest.raises(ScriptError):
        parse_proof_script("hyp h\n")
    with pytest.raises(ScriptError):
        parse_proof_script("1. ((( ; axiom L12\n")


def test_builder_formula_lookup():
    b = ProofBuilder((("h", PSI7),))
    i = b.add_hyp("h")
    assert b.formula(i) == PSI7
    assert b.idx_of(PSI7) == i
    assert b.idx_of(PSI1) is None
    with pytest.raises(KeyError):
        b.add_hyp("nope")
