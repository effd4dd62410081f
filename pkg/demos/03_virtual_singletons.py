"""Virtual singletons: sets that act like singletons without an element.

An unfocused domain equipped with d-axioms collapses the difference
between its universal and existential quantifiers, which is what makes
its quantified formulas insensitive to the direction of consequence.  The
price is a licensing discipline: granting both the d-axioms and the
substitution of entries lets the system *prove* the two entries equal.
The consistency guard demonstrates the collapse in a sandboxed mode and
certifies that either license alone is harmless.
"""
from symlog import (
    Atom, CalculusConfig, Eq, Var, check_proof, search_proof, seq,
    standard_registry,
)
from symlog.kernel import build_exists_to_forall, collapse_config
from symlog.rules import RuleContext
from symlog.scripts import print_proof, print_sequent

x = Var("x")
A = lambda t: Atom("A", None, (t,))

print("== with d-axioms, the existential already contains the universal ==")
reg = standard_registry()
cfg = CalculusConfig(True, True, True, True,
                     d_axiom_domains=frozenset({("V", "d")}))
proof = build_exists_to_forall(RuleContext(cfg, reg), "V", x, A(x))
print(print_proof(proof))
print("checker says:", check_proof(proof, cfg, reg).ok)

print("\n== both licenses at once prove the domain is a singleton ==")
demo = standard_registry(collapse_demo=True)
status, proofs = demo.consistency_guard("V")
print("guard:", status)
ccfg = collapse_config(demo, "V")
for p in proofs:
    print(" ", print_sequent(p.conclusion),
          "(checked)" if check_proof(p, ccfg, demo).ok else "(BROKEN)")

print("\n== either license alone cannot reach the entry equation ==")
v1, v2 = standard_registry().get("V").entries
goal = seq([], [Eq(v2, v1)])
only_dax = CalculusConfig(True, True, True, True,
                          d_axiom_domains=frozenset({("V", "d")}))
only_subst = CalculusConfig(True, True, True, True,
                            substitution_domains=frozenset({"V"}),
                            collapse_demo=True)
for name, c in (("d-axioms only", only_dax), ("substitution only", only_subst)):
    out = search_proof(goal, c, standard_registry(), depth=8)
    print(f"  {name}: {out.status} at depth 8")
