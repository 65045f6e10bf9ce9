"""Built-in audit scripts: the transcribed derivation-chain claim library.

Each script replays the numbered steps of one result's derivation chain as
individual claims.  The chains existentially quantify two sentence
metavariables; scripts instantiate them with the standard defaults (the
designated absurdity for the antecedent sentence, the reflexivity axiom for
the discharged sentence) so every claim is concrete and checkable.

Context shorthand used below:

* ``base`` — prefixed logic plus the triple-prefixed closures plus the
  three-element bridge set, with the linking sentence as hypothesis.
* ``extended base`` — the same with the four-element bridge set (which adds
  the conjunction-target bridge).
* ``refuting`` / ``affirming`` context — base plus the negated (resp. plain)
  conditional between the seventh axiom and the discharged sentence.

Collapse assertions ("the context derives everything") appear as a pair of
claims: derivability of the designated absurdity target, and a contradiction
probe, matching the two consistency notions the engine implements.
"""

from __future__ import annotations

from .audit import AuditClaim
from .schemata import PSI_AXIOMS, Q_AXIOMS, named_formula
from .syntax import (
    And,
    App,
    Atom,
    Const,
    Forall,
    Formula,
    Implies,
    Not,
    Var,
    substitute,
    universal_closure,
)

BUILTIN_SCRIPT_IDS = (
    "lemma-4.1",
    "lemma-4.2",
    "lemma-4.3",
    "lemma-4.4",
    "theorem-4.1",
    "corollary-4.3",
    "corollary-4.4",
    "theorem-5.1",
    "theorem-5.2",
    "axiom-sanity",
)


def builtin_scripts() -> tuple[str, ...]:
    """The ids of the shipped audit scripts, in replay order."""
    return BUILTIN_SCRIPT_IDS


# -- shared formula material --------------------------------------------

_P1 = PSI_AXIOMS["psi1"]
_P7 = PSI_AXIOMS["psi7"]
_P12 = PSI_AXIOMS["psi12"]

_DOT_SETS = ("L11", "PrefixedL2r", "NPsi3dot")
_DDOT_SETS = ("L11", "PrefixedL2r", "NPsi3ddot")


def _named(name: str) -> Formula:
    return named_formula(name)


def _beta0() -> Formula:
    return named_formula("beta0", conjuncts=(PSI_AXIOMS["psi2"],))


def _beta1() -> Formula:
    return named_formula("beta1", conjuncts=(PSI_AXIOMS["psi2"],))


def _d00() -> Formula:
    return Implies(_P7, _P1)


def _alpha_imp_psi7() -> Formula:
    return Implies(_named("u27"), _P7)


def omega_sample() -> Formula:
    """A closed generalized tautology that is not itself a schema instance.

    The universal closure of the instance ``(x1=x1) -> (psi1 -> (x1=x1))``;
    the representative used whenever a chain step asserts that the whole
    family of such closures is derivable.
    """
    refl = _refl_matrix()
    return universal_closure(Implies(refl, Implies(_P1, refl)))


def _refl_matrix() -> Formula:
    return Atom("=", (Var(1), Var(1)))


def induction_sample(flavor: str) -> Formula:
    """An induction-schema instance with matrix ``x1 = x1``."""
    matrix = _refl_matrix()
    if flavor == "one":
        base = substitute(matrix, 1, Const("1"))
        step_term = App("+", (Var(1), Const("1")))
    elif flavor == "zero":
        base = substitute(matrix, 1, Const("0"))
        step_term = App("S", (Var(1),))
    else:
        raise ValueError(f"unknown induction flavor {flavor!r}")
    step = Forall(1, Implies(matrix, substitute(matrix, 1, step_term)))
    return Implies(And(base, step), Forall(1, matrix))


def prefixed_sample() -> Formula:
    """The seventh-axiom-prefixed closure representative for inclusion steps."""
    return Implies(
        _P7, Implies(_named("o0"), Implies(Not(_P1), omega_sample()))
    )


# -- hypothesis contexts -------------------------------------------------


def _hyps(*names: str) -> tuple[tuple[str, Formula], ...]:
    table: dict[str, Formula] = {
        "xi": _named("xi"),
        "alpha_imp_psi7": _alpha_imp_psi7(),
        "delta00": _d00(),
        "not_delta00": Not(_d00()),
        "beta1": _beta1(),
        "psi1": _P1,
        "psi7": _P7,
        "psi12": _P12,
    }
    return tuple((n, table[n]) for n in names)


_STAR_DOT = _hyps("not_delta00", "alpha_imp_psi7", "xi")  # refuting, three-bridge
_PLUS_DOT = _hyps("delta00", "alpha_imp_psi7", "xi")  # affirming, three-bridge
_BASE_DOT = _hyps("xi")
_STAR_DDOT = _STAR_DOT  # same hypotheses, four-bridge set
_PLUS_DDOT = _PLUS_DOT
_BASE_DDOT = _BASE_DOT


def _membership(
    cid: str,
    sets: tuple[str, ...],
    hyps: tuple[tuple[str, Formula], ...],
    goal: Formula,
    locus: str,
) -> AuditClaim:
    return AuditClaim(cid, "membership", sets, hyps, goal, locus)


def _collapse_pair(
    prefix: str,
    sets: tuple[str, ...],
    hyps: tuple[tuple[str, Formula], ...],
    locus: str,
) -> list[AuditClaim]:
    """The two-claim operationalization of a 'derives everything' step."""
    return [
        _membership(f"{prefix}-u27-target", sets, hyps, _named("u27"), locus),
        AuditClaim(f"{prefix}-collapse", "set-equality", sets, hyps, None, locus),
    ]


# -- the scripts ---------------------------------------------------------


def _lemma_41() -> list[AuditClaim]:
    g0p = _named("gamma0p")
    members_14 = [
        _P7,
        _named("gamma4p"),
        _named("gamma2p"),
        Implies(_named("o0"), _named("gamma0")),
        Implies(_P1, _P12),
        g0p,
        _named("o0"),
        _named("u27"),
        Implies(_P12, Implies(_P7, Not(_P1))),
        Implies(_P12, Not(_P1)),
        Not(_P1),
    ]
    claims = [
        _membership(
            f"s14-m{i:02d}", _DOT_SETS, _STAR_DOT, f, f"chain step (14), member {i}"
        )
        for i, f in enumerate(members_14, start=1)
    ]
    claims.append(
        _membership(
            "s15-l2r-sample",
            _DOT_SETS,
            _STAR_DOT,
            omega_sample(),
            "chain step (15): generalized-tautology family, representative member",
        )
    )
    for i, f in enumerate([_P7, _d00(), _P1, Not(_P1)], start=1):
        claims.append(
            _membership(
                f"s16-m{i:02d}", _DOT_SETS, _STAR_DOT, f, f"chain step (16), member {i}"
            )
        )
    claims.extend(
        _collapse_pair(
            "s17", _DOT_SETS, _STAR_DOT, "chain step (17): asserted collapse of the context"
        )
    )
    return claims


def _lemma_42() -> list[AuditClaim]:
    o0 = _named("o0")
    g0p = _named("gamma0p")
    members_15 = [
        Implies(o0, _named("gamma0")),
        _named("gamma2p"),
        _named("gamma4p"),
        Implies(_P1, Implies(_P7, _P12)),
        Implies(_P12, Implies(_P7, Not(_P1))),
        Implies(_P7, Not(_P1)),
        Implies(g0p, o0),
        Implies(_P7, Implies(Not(_P1), o0)),
        Implies(_P7, o0),
        Implies(o0, g0p),
        Implies(_P7, g0p),
        Implies(_P7, _named("u27")),
    ]
    claims = [
        _membership(
            f"s15-m{i:02d}", _DOT_SETS, _PLUS_DOT, f, f"chain step (15), member {i}"
        )
        for i, f in enumerate(members_15, start=1)
    ]
    claims.append(
        _membership(
            "s16-prefixed-sample",
            _DOT_SETS,
            _PLUS_DOT,
            prefixed_sample(),
            "chain step (16): prefixed-closure family, representative member",
        )
    )
    claims.append(
        _membership("s17-o6", _DOT_SETS, _PLUS_DOT, _named("o6"), "chain step (17)")
    )
    members_19 = [
        Implies(g0p, Implies(_P7, _P1)),
        _d00(),
        Implies(_P1, Not(_P7)),
        Not(_P7),
    ]
    claims.extend(
        _membership(
            f"s19-m{i:02d}", _DOT_SETS, _PLUS_DOT, f, f"chain step (19), member {i}"
        )
        for i, f in enumerate(members_19, start=1)
    )
    claims.append(
        _membership(
            "s21-not-psi7-base",
            _DOT_SETS,
            _BASE_DOT,
            Not(_P7),
            "chain step (21): the same negation claimed for the hypothesis-free base",
        )
    )
    return claims


def _lemma_43() -> list[AuditClaim]:
    members_13 = [
        _P7,
        _named("gamma4p"),
        _named("gamma2p"),
        Implies(_named("o0"), _named("gamma0")),
        Implies(_P1, _P12),
        _named("gamma0p"),
        _named("o0"),
        _named("u27"),
        _beta1(),
        Implies(_P1, _beta0()),
        Not(_beta0()),
        Not(_P1),
    ]
    claims = [
        _membership(
            f"s13-m{i:02d}", _DDOT_SETS, _STAR_DDOT, f, f"chain step (13), member {i}"
        )
        for i, f in enumerate(members_13, start=1)
    ]
    claims.append(
        _membership(
            "s14-l2r-sample",
            _DDOT_SETS,
            _STAR_DDOT,
            omega_sample(),
            "chain step (14): generalized-tautology family, representative member",
        )
    )
    for i, f in enumerate([_P7, _d00(), Not(_P1), _P1], start=1):
        claims.append(
            _membership(
                f"s15-m{i:02d}", _DDOT_SETS, _STAR_DDOT, f, f"chain step (15), member {i}"
            )
        )
    claims.extend(
        _collapse_pair(
            "s16",
            _DDOT_SETS,
            _STAR_DDOT,
            "chain step (16): asserted collapse of the context",
        )
    )
    return claims


def _lemma_44() -> list[AuditClaim]:
    o0 = _named("o0")
    g0p = _named("gamma0p")
    u27 = _named("u27")
    beta1 = _beta1()
    members_14 = [
        _named("gamma4p"),
        Implies(o0, _named("gamma0")),
        _named("gamma2p"),
        Implies(o0, Implies(u27, beta1)),
        Implies(o0, beta1),
        Implies(g0p, o0),
        Implies(g0p, beta1),
        beta1,
    ]
    claims = [
        _membership(
            f"s14-m{i:02d}", _DDOT_SETS, _PLUS_DDOT, f, f"chain step (14), member {i}"
        )
        for i, f in enumerate(members_14, start=1)
    ]
    members_15 = [
        _d00(),
        Implies(_P1, Implies(_P7, _P12)),
        beta1,
        Implies(And(And(_P12, _P7), _P1), _beta0()),
        Implies(_P12, Implies(_P7, Not(_P1))),
        Implies(_P7, Not(_P1)),
        _named("gamma4p"),
        Implies(o0, _named("gamma0")),
        _named("gamma2p"),
        Implies(o0, g0p),
        Implies(g0p, o0),
        Implies(g0p, u27),
        Implies(_P7, Implies(Not(_P1), o0)),
        Implies(_P7, o0),
        Implies(_P7, g0p),
        Implies(_P7, u27),
    ]
    claims.extend(
        _membership(
            f"s15-m{i:02d}", _DDOT_SETS, _PLUS_DDOT, f, f"chain step (15), member {i}"
        )
        for i, f in enumerate(members_15, start=1)
    )
    claims.append(
        _membership(
            "s16-prefixed-sample",
            _DDOT_SETS,
            _PLUS_DDOT,
            prefixed_sample(),
            "chain step (16): prefixed-closure family, representative member",
        )
    )
    claims.append(
        _membership("s17-o6", _DDOT_SETS, _PLUS_DDOT, _named("o6"), "chain step (17)")
    )
    members_19 = [
        Implies(g0p, Implies(_P7, _P1)),
        _d00(),
        Implies(_P1, Not(_P7)),
        Not(_P7),
    ]
    claims.extend(
        _membership(
            f"s19-m{i:02d}", _DDOT_SETS, _PLUS_DDOT, f, f"chain step (19), member {i}"
        )
        for i, f in enumerate(members_19, start=1)
    )
    claims.append(
        _membership(
            "s21-not-psi7-base",
            _DDOT_SETS,
            _BASE_DDOT,
            Not(_P7),
            "chain step (21): the same negation claimed for the hypothesis-free base",
        )
    )
    return claims


def _theorem_contexts(sets: tuple[str, ...], outer: tuple[str, ...]) -> list[AuditClaim]:
    """The shared shape of both consistency theorems' claim lists."""
    with_alpha = _hyps("alpha_imp_psi7", "xi")
    base = _hyps("xi")
    claims = [
        AuditClaim(
            "s1-consistency-hypothesis",
            "contradiction",
            outer,
            _hyps(*(("psi1", "psi7", "psi12") if "Xp" not in outer else ())),
            None,
            "step (1): the assumed inconsistency of the axiom pair under audit",
        )
    ]
    claims.extend(
        _collapse_pair(
            "s2", sets, with_alpha, "step (2): asserted collapse once the conditional is added"
        )
    )
    claims.append(
        _membership(
            "s4-not-alpha-imp-psi7",
            sets,
            base,
            Not(_alpha_imp_psi7()),
            "step (4): negated conditional claimed for the hypothesis-free base",
        )
    )
    claims.append(
        AuditClaim(
            "s6-alpha-both",
            "contradiction",
            sets,
            base,
            None,
            "step (6): the final in-and-out contradiction for the base context",
        )
    )
    return claims


def _theorem_41() -> list[AuditClaim]:
    return _theorem_contexts(_DOT_SETS, ("L2r",))


def _theorem_51() -> list[AuditClaim]:
    return _theorem_contexts(_DDOT_SETS, ("L2r", "Xp", "Yp"))


def _corollary_43() -> list[AuditClaim]:
    hyps = _hyps("beta1", "psi1", "psi7", "psi12")
    sets = ("LT1",)
    claims = [
        _membership(
            "beta0-member",
            sets,
            hyps,
            _beta0(),
            "the conjunction target unfolds from its guarded form",
        ),
        _membership(
            "conjunct-psi2",
            sets,
            hyps,
            PSI_AXIOMS["psi2"],
            "a single conjunct extracted from the conjunction target",
        ),
    ]
    claims.extend(
        _collapse_pair(
            "s-final",
            sets,
            hyps,
            "asserted collapse of the guarded-tautology context",
        )
    )
    return claims


def _corollary_44() -> list[AuditClaim]:
    return [
        _membership(
            "not-beta0",
            ("LT1",),
            (),
            Not(_beta0()),
            "negated conjunction target claimed for the bare guarded-tautology set",
        )
    ]


def _theorem_52() -> list[AuditClaim]:
    claims = [
        AuditClaim(
            "s1-consistency-hypothesis",
            "contradiction",
            ("L2r", "XpPrime", "YpPrime"),
            (),
            None,
            "step (1): the assumed inconsistency of the zero-based axiom pair",
        )
    ]
    for key in sorted(Q_AXIOMS, key=lambda k: int(k[1:])):
        claims.append(
            _membership(
                key,
                ("XpPrime",),
                (),
                Q_AXIOMS[key],
                f"axiom {key} is a member of its own set",
            )
        )
    claims.append(
        _membership(
            "q10-induction-sample",
            ("YpPrime",),
            (),
            induction_sample("zero"),
            "an induction instance is a member of the induction family",
        )
    )
    return claims


def _axiom_sanity() -> list[AuditClaim]:
    claims = []
    for key in sorted(PSI_AXIOMS, key=lambda k: int(k[3:])):
        claims.append(
            AuditClaim(
                key, "sanity", (), (), PSI_AXIOMS[key], f"numeric audit of {key}"
            )
        )
    for key in sorted(Q_AXIOMS, key=lambda k: int(k[1:])):
        claims.append(
            AuditClaim(key, "sanity", (), (), Q_AXIOMS[key], f"numeric audit of {key}")
        )
    claims.append(
        AuditClaim(
            "u27", "sanity", (), (), _named("u27"), "numeric audit of the absurdity target"
        )
    )
    claims.append(
        AuditClaim(
            "psi13-induction-sample",
            "sanity",
            (),
            (),
            induction_sample("one"),
            "numeric audit of a one-based induction instance",
        )
    )
    claims.append(
        AuditClaim(
            "q10-induction-sample",
            "sanity",
            (),
            (),
            induction_sample("zero"),
            "numeric audit of a zero-based induction instance",
        )
    )
    return claims


_BUILDERS = {
    "lemma-4.1": _lemma_41,
    "lemma-4.2": _lemma_42,
    "lemma-4.3": _lemma_43,
    "lemma-4.4": _lemma_44,
    "theorem-4.1": _theorem_41,
    "corollary-4.3": _corollary_43,
    "corollary-4.4": _corollary_44,
    "theorem-5.1": _theorem_51,
    "theorem-5.2": _theorem_52,
    "axiom-sanity": _axiom_sanity,
}


def builtin_claims(script_id: str) -> list[AuditClaim]:
    """The claim list for a built-in script id."""
    try:
        builder = _BUILDERS[script_id]
    except KeyError:
        raise ValueError(
            f"unknown builtin script {script_id!r}; known: {', '.join(BUILTIN_SCRIPT_IDS)}"
        ) from None
    return builder()
