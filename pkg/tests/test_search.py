"""Bounded backward search: positives, negatives, determinism, depths."""
from fractions import Fraction

import pytest

from symlog.formulas import (
    And, Atom, Eq, Exists, Forall, Imp, Member, Or, Outcome, Var, seq,
)
from symlog.kernel import check_proof, proof_equal
from symlog.search import search_proof

z, x = Var("z"), Var("x")
p, q = Atom("p", None, ()), Atom("q", None, ())
t1, t2 = Outcome("t1", Fraction(1, 2)), Outcome("t2", Fraction(1, 2))
dn, up = Outcome("down", Fraction(1, 2)), Outcome("up", Fraction(1, 2))


def A(t):
    return Atom("A", None, (t,))


def test_identity_goal(config, registry):
    out = search_proof(seq([p], [p]), config, registry, depth=2)
    assert out.found and out.depth == 1


def test_detachment_found(config, registry):
    out = search_proof(seq([Imp(p, q), p], [q]), config, registry, depth=4)
    assert out.found
    assert check_proof(out.proof, config, registry).ok


def test_reversal_nowhere(config, registry):
    out = search_proof(seq([Imp(p, q), q], [p]), config, registry, depth=8)
    assert not out.found
    assert out.status == "not-found"


def test_depth_cap_enforced(config, registry):
    with pytest.raises(ValueError):
        search_proof(seq([p], [p]), config, registry, depth=9, max_depth=8)


def test_deterministic(config, registry):
    goal = seq([Imp(p, q), p], [q])
    a = search_proof(goal, config, registry, depth=6)
    b = search_proof(goal, config, registry, depth=6)
    assert proof_equal(a.proof, b.proof)


def test_focus_dichotomy(config, registry):
    fa = Forall(x, "D", A(x))
    pos = search_proof(seq([And(A(t1), A(t2))], [fa]), config, registry,
                       depth=6)
    assert pos.found and pos.depth <= 6
    assert check_proof(pos.proof, config, registry).ok
    neg = search_proof(seq([And(A(dn), A(up))], [Forall(x, "Dplus", A(x))]),
                       config, registry, depth=8)
    assert not neg.found


def test_forall_entails_exists_on_focused(config, registry):
    for dom in ("D", "Ddown", "Dup"):
        goal = seq([Forall(x, dom, A(x))], [Exists(x, dom, A(x))])
        out = search_proof(goal, config, registry, depth=5)
        assert out.found, dom
        assert check_proof(out.proof, config, registry).ok


def test_membership_from_disjunction(config, registry):
    goal = seq([Or(Eq(z, t1), Eq(z, t2))], [Member(z, "D")])
    out = search_proof(goal, config, registry, depth=6)
    assert out.found
    assert check_proof(out.proof, config, registry).ok


def test_depth_exceeded_distinct_from_not_found(config, registry):
    # a provable goal searched under too small a bound reports the wall
    fa = Forall(x, "D", A(x))
    out = search_proof(seq([And(A(t1), A(t2))], [fa]), config, registry,
                       depth=3)
    assert not out.found
    assert out.status == "depth-exceeded"


def test_no_proof_of_the_absurd(config, registry):
    """The fully liberalized system with every stock license proves
    neither the empty sequent nor a bare atom at the bound."""
    for goal in (seq([], []), seq([], [p]), seq([q], [])):
        out = search_proof(goal, config, registry, depth=8)
        assert not out.found
