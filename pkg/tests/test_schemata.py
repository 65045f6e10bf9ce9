"""Axiom schemata, arithmetic axiom registries, named formulas, recognizers."""

import random

import pytest

from proofbench.parser import parse
from proofbench.schemata import (
    AXIOM_SET_NAMES,
    INDUCTION_ONE,
    INDUCTION_ZERO,
    NAMED_FORMULA_NAMES,
    PSI_AXIOMS,
    Q_AXIOMS,
    SCHEMATA,
    axiom_set,
    instantiate,
    is_logic_instance,
    match_schema,
    named_formula,
    recognize_induction,
)
from proofbench.syntax import (
    And,
    App,
    Atom,
    Const,
    Forall,
    Iff,
    Implies,
    Not,
    Var,
    is_sentence,
    universal_closure,
)
from proofbench.transforms import (
    phi1_instance,
    phi2_instance,
    phi3_instance,
    phi4_instance,
    phi5_instance,
    phi6_instance,
    phi7_instance,
    phi8_instance,
    phi9_instance,
    phi10_instance,
    phi11_instance,
    phi12_instance,
)

A = parse("1 < 1")
B = parse("0 = 1")
C = parse("(Ax1)(x1 = x1)")


def test_schema_registry_is_complete():
    assert list(SCHEMATA) == [f"phi{i}" for i in range(1, 13)]


@pytest.mark.parametrize(
    "maker,schema_id",
    [
        (lambda: phi1_instance(A, B, C), "phi1"),
        (lambda: phi2_instance(A), "phi2"),
        (lambda: phi3_instance(A, B), "phi3"),
        (lambda: phi4_instance(A, B), "phi4"),
        (lambda: phi5_instance(A, B), "phi5"),
        (lambda: phi6_instance(A, B), "phi6"),
        (lambda: phi7_instance(A, B), "phi7"),
        (lambda: phi8_instance(A, B), "phi8"),
        (lambda: phi9_instance(A, B), "phi9"),
        (lambda: phi10_instance(A, B, C), "phi10"),
    ],
)
def test_propositional_instances_match_and_reinstantiate(maker, schema_id):
    f = maker()
    binding = match_schema(f, SCHEMATA[schema_id])
    assert binding is not None
    assert instantiate(SCHEMATA[schema_id], binding) == f
    assert is_logic_instance(f)


def test_phi11_side_condition():
    open_f = parse("x1 < x2")
    inst = phi11_instance(1, open_f, Const("0"))
    assert inst == Implies(Forall(1, open_f), parse("0 < x2"))
    assert match_schema(inst, SCHEMATA["phi11"]) is not None

    # substituting x2 for x1 under (Ax2) would capture: side condition fails
    captures = Implies(
        Forall(1, Forall(2, parse("x1 < x2"))),
        Forall(2, parse("x2 < x2")),
    )
    assert match_schema(captures, SCHEMATA["phi11"]) is None


def test_phi12_side_condition():
    closed_left = parse("1 < 1")
    inst = phi12_instance(1, closed_left, parse("x1 = x1"))
    assert inst == Implies(
        Forall(1, Implies(closed_left, parse("x1 = x1"))),
        Implies(closed_left, Forall(1, parse("x1 = x1"))),
    )
    assert match_schema(inst, SCHEMATA["phi12"]) is not None

    # x1 free in the antecedent's left side: rejected
    bad = Implies(
        Forall(1, Implies(parse("x1 = x1"), parse("x1 < 1"))),
        Implies(parse("x1 = x1"), Forall(1, parse("x1 < 1"))),
    )
    assert match_schema(bad, SCHEMATA["phi12"]) is None


def test_phi11_instance_rejects_capture():
    with pytest.raises(Exception):
        phi11_instance(1, Forall(2, parse("x1 < x2")), Var(2))


def test_arithmetic_axioms_are_sentences():
    assert len(PSI_AXIOMS) == 12
    assert len(Q_AXIOMS) == 9
    for f in list(PSI_AXIOMS.values()) + list(Q_AXIOMS.values()):
        assert is_sentence(f)


def test_named_formula_registry():
    assert set(NAMED_FORMULA_NAMES) == {
        "o0",
        "u27",
        "o6",
        "alpha2x",
        "gamma2p",
        "gamma0p",
        "gamma0",
        "gamma4p",
        "xi",
    }
    u27 = named_formula("u27")
    o0 = named_formula("o0")
    g0p = named_formula("gamma0p")
    assert u27 == Not(parse("1 < 1"))
    assert o0 == Iff(PSI_AXIOMS["psi7"], Not(Not(PSI_AXIOMS["psi1"])))
    assert g0p == Implies(
        Implies(PSI_AXIOMS["psi7"], PSI_AXIOMS["psi1"]), PSI_AXIOMS["psi12"]
    )
    assert named_formula("gamma0") == Implies(u27, g0p)
    assert named_formula("gamma2p") == Implies(o0, u27)
    assert named_formula("gamma4p") == Implies(g0p, o0)
    assert named_formula("o6") == Implies(
        o0, Implies(PSI_AXIOMS["psi7"], PSI_AXIOMS["psi1"])
    )
    assert named_formula("xi") == Implies(
        PSI_AXIOMS["psi7"], Implies(PSI_AXIOMS["psi1"], PSI_AXIOMS["psi12"])
    )
    assert named_formula("alpha2x") == Implies(PSI_AXIOMS["psi1"], PSI_AXIOMS["psi7"])


def test_parameterized_named_formulas():
    d00 = named_formula("delta00", delta=PSI_AXIOMS["psi1"])
    assert d00 == Implies(PSI_AXIOMS["psi7"], PSI_AXIOMS["psi1"])
    b0 = named_formula("beta0", conjuncts=[PSI_AXIOMS["psi2"]])
    # fold-left conjunction over conjuncts + the three pinned axioms
    assert b0 == And(
        And(And(PSI_AXIOMS["psi2"], PSI_AXIOMS["psi1"]), PSI_AXIOMS["psi7"]),
        PSI_AXIOMS["psi12"],
    )
    b1 = named_formula("beta1", conjuncts=[PSI_AXIOMS["psi2"]])
    assert b1 == Implies(
        PSI_AXIOMS["psi1"],
        Implies(PSI_AXIOMS["psi7"], Implies(PSI_AXIOMS["psi12"], b0)),
    )
    with pytest.raises(Exception):
        named_formula("beta0")
    with pytest.raises(Exception):
        named_formula("delta00")
    with pytest.raises(Exception):
        named_formula("no-such-name")


PHI = Atom("<", (Const("0"), Var(1)))
BASE_ONE = parse("0 < 1")
STEP_ONE = Forall(1, Implies(PHI, Atom("<", (Const("0"), App("+", (Var(1), Const("1")))))))
INST_ONE = Implies(And(BASE_ONE, STEP_ONE), Forall(1, PHI))
BASE_ZERO = parse("0 < 0")
STEP_ZERO = Forall(1, Implies(PHI, Atom("<", (Const("0"), App("S", (Var(1),))))))
INST_ZERO = Implies(And(BASE_ZERO, STEP_ZERO), Forall(1, PHI))


def test_induction_recognizers_distinguish_flavors():
    assert recognize_induction(INST_ONE, INDUCTION_ONE) is not None
    assert recognize_induction(INST_ZERO, INDUCTION_ZERO) is not None
    # base and step of the wrong flavor are rejected
    assert recognize_induction(INST_ZERO, INDUCTION_ONE) is None
    assert recognize_induction(INST_ONE, INDUCTION_ZERO) is None


def test_axiom_set_names():
    assert AXIOM_SET_NAMES == (
        "L12",
        "L2r",
        "Xp",
        "Yp",
        "XpPrime",
        "YpPrime",
        "L11",
        "LT1",
        "PrefixedL2r",
        "NPsi3dot",
        "NPsi3ddot",
    )
    for name in AXIOM_SET_NAMES:
        assert axiom_set(name).name == name
    with pytest.raises(Exception):
        axiom_set("no-such-set")


def test_logic_sets():
    l12, l2r = axiom_set("L12"), axiom_set("L2r")
    inst = phi2_instance(parse("x1 < 1"))
    assert l12.contains(inst)
    assert l2r.contains(inst)
    closed = universal_closure(inst)
    assert not l12.contains(closed)  # bare instances only
    assert l2r.contains(closed)  # closures of instances as well
    assert not l12.contains(named_formula("u27"))
    assert not l2r.contains(parse("(Ax1)(x1 = x1)"))


def test_arithmetic_sets():
    xp, xpp = axiom_set("Xp"), axiom_set("XpPrime")
    for f in PSI_AXIOMS.values():
        assert xp.contains(f)
        assert not xpp.contains(f)
    for f in Q_AXIOMS.values():
        assert xpp.contains(f)
        assert not xp.contains(f)
    yp, ypp = axiom_set("Yp"), axiom_set("YpPrime")
    assert yp.contains(INST_ONE) and not yp.contains(INST_ZERO)
    assert ypp.contains(INST_ZERO) and not ypp.contains(INST_ONE)


def test_guarded_sets():
    # the guarded target ranges over closures of open logic instances
    # (a closure that is not itself a bare instance)
    target = universal_closure(phi4_instance(parse("x1 = x1"), parse("x1 < 1")))
    plain = parse("0 = 0")

    l11 = axiom_set("L11")
    guarded = Implies(
        PSI_AXIOMS["psi1"],
        Implies(PSI_AXIOMS["psi7"], Implies(PSI_AXIOMS["psi12"], target)),
    )
    assert l11.contains(guarded)
    assert l11.contains(phi2_instance(plain))  # logic rides along
    assert not l11.contains(target)
    assert not l11.contains(
        Implies(
            PSI_AXIOMS["psi1"],
            Implies(PSI_AXIOMS["psi7"], Implies(PSI_AXIOMS["psi12"], plain)),
        )
    )

    lt1 = axiom_set("LT1", beta0_conjuncts=[PSI_AXIOMS["psi2"]])
    b0 = named_formula("beta0", conjuncts=[PSI_AXIOMS["psi2"]])
    assert lt1.contains(Implies(b0, target))
    assert not lt1.contains(Implies(b0, plain))
    assert not lt1.contains(target)

    pre = axiom_set("PrefixedL2r")
    wrapped = Implies(
        PSI_AXIOMS["psi7"],
        Implies(
            named_formula("o0"),
            Implies(named_formula("u27"), Implies(Not(PSI_AXIOMS["psi1"]), target)),
        ),
    )
    assert pre.contains(wrapped)
    assert not pre.contains(target)


def test_finite_cores():
    dot = axiom_set("NPsi3dot")
    ddot = axiom_set("NPsi3ddot")
    o0, g0 = named_formula("o0"), named_formula("gamma0")
    assert Implies(o0, g0) in dot.finite_core
    assert named_formula("gamma2p") in dot.finite_core
    assert named_formula("gamma4p") in dot.finite_core
    assert len(dot.finite_core) == 3
    assert set(dot.finite_core) < set(ddot.finite_core)
    assert len(ddot.finite_core) == 4
    for f in dot.finite_core:
        assert dot.contains(f)


def test_random_schema_instances_round_trip():
    rng = random.Random(7)
    pool = [A, B, C, Not(A), Implies(A, B)]
    makers = [
        lambda r: phi1_instance(r.choice(pool), r.choice(pool), r.choice(pool)),
        lambda r: phi2_instance(r.choice(pool)),
        lambda r: phi5_instance(r.choice(pool), r.choice(pool)),
        lambda r: phi10_instance(r.choice(pool), r.choice(pool), r.choice(pool)),
    ]
    for _ in range(100):
        f = rng.choice(makers)(rng)
        assert is_logic_instance(f)
        assert any(
            match_schema(f, s) is not None for s in SCHEMATA.values()
        )
