"""Random first-order domains and what focus buys you.

A domain lists outcome terms with exact rational probabilities.  When it
is *focused*, membership is exhausted by the entry equalities, the
substitution of entries for free variables becomes derivable, and the
quantified state formula is equivalent to a finite conjunction.  The
unfocused copies of the uniform domain refuse all of that: the same
conjunction-to-quantifier sequent that the search proves in six steps for
the focused domain is not found at depth eight for the phase domain.
"""
from symlog import (
    And, Atom, CalculusConfig, Exists, Forall, Var, search_proof, seq,
    standard_registry,
)
from symlog.scripts import print_proof, print_sequent

reg = standard_registry()
cfg = CalculusConfig(left_contexts=True, right_contexts=True,
                     weakening=True, cut=True,
                     substitution_domains=frozenset({"D"}))

x = Var("x")
A = lambda t: Atom("A", None, (t,))
t1, t2 = reg.get("D").entries
down, up = reg.get("Dplus").entries

print("== the focused two-entry domain ==")
goal = seq([And(A(t1), A(t2))], [Forall(x, "D", A(x))])
out = search_proof(goal, cfg, reg, depth=6)
print(print_sequent(goal))
print("->", out.status, f"at depth {out.depth}")
print(print_proof(out.proof))

print("\n== the same shape over the unfocused phase domain ==")
goal = seq([And(A(down), A(up))], [Forall(x, "Dplus", A(x))])
out = search_proof(goal, cfg, reg, depth=8)
print(print_sequent(goal))
print("->", out.status, f"(bound {out.depth})")

print("\n== the quantifier bridge needs only non-emptiness ==")
goal = seq([Forall(x, "D", A(x))], [Exists(x, "D", A(x))])
out = search_proof(goal, cfg, reg, depth=5)
print(print_sequent(goal), "->", out.status, f"at depth {out.depth}")
