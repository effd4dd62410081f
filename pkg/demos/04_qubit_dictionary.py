"""The qubit dictionary: gates on states, dualities on formulas.

Measuring along the computational axis maps every single-qubit state to a
random first-order domain and hence to a quantified formula.  Under that
map, the bit-flip gate is the sharp duality and the phase-flip gate the
phase duality, cell by cell.  Measurement itself is substitution: both
balanced states collapse to the same mixed-state conjunction, losing the
phase modality and with it half of the duality structure.
"""
import math

from symlog import standard_registry
from symlog.qubits import (
    BASIS_STATES, Qubit, collapse, duality_correspondence, inner_product,
    measurement_domain, state_formula,
)
from symlog.scripts import print_formula

reg = standard_registry()

print("== states and their formulas ==")
for name, q in BASIS_STATES.items():
    rec = measurement_domain(q)
    print(f"  |{name}>  domain {rec.name:7}  state {print_formula(state_formula(q, reg))}")

print("\n== the commuting square, all eight cells ==")
rep = duality_correspondence(reg)
for cell, ok in rep["cells"].items():
    state, gate = cell.split(":")
    dual = "perp" if gate == "X" else "top"
    print(f"  {gate} on |{state}>  tracks  {dual}: {'ok' if ok else 'BROKEN'}")

print("\n== measurement forgets the phase ==")
plus, minus = BASIS_STATES["plus"], BASIS_STATES["minus"]
print("  collapse |plus>  =", print_formula(collapse(plus)))
print("  collapse |minus> =", print_formula(collapse(minus)))
print("  distinguishable before measurement:",
      abs(inner_product(plus, minus)) < 1e-12)

print("\n== phases are invisible to this measurement context ==")
q = Qubit(1 / math.sqrt(2), 1 / math.sqrt(2), math.pi / 3)
rec = measurement_domain(q)
print(f"  an intermediate phase lands in {rec.name}: unfocused, no duality")
