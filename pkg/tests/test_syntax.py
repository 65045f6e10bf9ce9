"""Formula/term core: free variables, substitution, closure."""

import pytest
from hypothesis import given, settings

from proofbench.syntax import (
    App,
    Atom,
    CaptureError,
    Const,
    Exists,
    Forall,
    Implies,
    Not,
    Var,
    connective_depth,
    free_for,
    free_vars,
    is_sentence,
    subformulas,
    substitute,
    substitute_term,
    term_vars,
    universal_closure,
)

from strategies import formulas, terms

X1, X2, X3 = Var(1), Var(2), Var(3)
LT12 = Atom("<", (X1, X2))
EQ11 = Atom("=", (X1, X1))


def test_free_vars_ascending_and_deduplicated():
    f = Implies(Atom("<", (X2, X1)), Atom("=", (X2, X3)))
    assert free_vars(f) == (1, 2, 3)


def test_free_vars_respects_binders():
    assert free_vars(Forall(1, LT12)) == (2,)
    assert free_vars(Forall(2, Forall(1, LT12))) == ()
    assert free_vars(Exists(3, LT12)) == (1, 2)


def test_term_vars():
    assert term_vars(App("+", (X1, App("S", (X3,))))) == frozenset({1, 3})
    assert term_vars(Const("0")) == frozenset()


def test_is_sentence():
    assert is_sentence(Forall(1, EQ11))
    assert not is_sentence(EQ11)
    assert is_sentence(Atom("<", (Const("0"), Const("1"))))


def test_substitute_in_atom():
    got = substitute(LT12, 1, Const("0"))
    assert got == Atom("<", (Const("0"), X2))


def test_substitute_skips_bound_occurrences():
    f = Forall(1, LT12)
    assert substitute(f, 1, Const("0")) == f
    got = substitute(f, 2, Const("1"))
    assert got == Forall(1, Atom("<", (X1, Const("1"))))


def test_substitute_term():
    t = App("+", (X1, X2))
    assert substitute_term(t, 1, App("S", (X2,))) == App("+", (App("S", (X2,)), X2))


def test_capture_is_detected():
    # substituting x2 for x1 inside (Ax2) would capture
    f = Forall(2, LT12)
    assert not free_for(1, X2, f)
    with pytest.raises(CaptureError):
        substitute(f, 1, X2)
    assert substitute(f, 1, X2, check=False) is not None


def test_free_for_positive_cases():
    f = Forall(2, LT12)
    assert free_for(1, Const("0"), f)
    assert free_for(1, X3, f)
    assert free_for(1, X1, f)


def test_universal_closure_order_and_idempotence():
    f = Atom("<", (X3, X1))
    closed = universal_closure(f)
    assert closed == Forall(1, Forall(3, f))
    assert is_sentence(closed)
    assert universal_closure(closed) == closed


def test_subformulas_and_connective_depth():
    f = Implies(Not(EQ11), Forall(1, EQ11))
    subs = list(subformulas(f))
    assert f in subs
    assert Not(EQ11) in subs
    assert EQ11 in subs
    assert connective_depth(EQ11) == 0
    assert connective_depth(f) == 2


@settings(max_examples=150, deadline=None)
@given(formulas())
def test_identity_substitution_is_noop(f):
    for x in free_vars(f):
        assert substitute(f, x, Var(x)) == f


@settings(max_examples=150, deadline=None)
@given(formulas())
def test_universal_closure_always_closes(f):
    closed = universal_closure(f)
    assert free_vars(closed) == ()
    assert is_sentence(closed)


@settings(max_examples=150, deadline=None)
@given(formulas(), terms())
def test_substitute_removes_the_variable_when_free_for(f, t):
    for x in free_vars(f):
        if free_for(x, t, f) and x not in term_vars(t):
            assert x not in free_vars(substitute(f, x, t))


def test_bad_binder_rejected():
    with pytest.raises(ValueError):
        Forall(0, EQ11)
    with pytest.raises(ValueError):
        Forall(-2, EQ11)
