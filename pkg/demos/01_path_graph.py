"""The path graph, start to finish.

A path on n vertices has resistance n - 1 between its ends.  This demo runs
the Laplace expansion procedure on the reduced path Laplacian, prints the two
determinant identities it finds, eliminates them to a single annihilator and
checks that the recurrence reproduces the oracle determinants.
"""

from resrec import FamilySpec, eliminate, minimal_polynomial, oracle_sequence, run_procedure, y_to_X
from resrec.exactnum import poly_str
from resrec.stencil import seed_family

spec = FamilySpec(k=1, part="denominator")
system = run_procedure(seed_family(spec))

print("Identities found by the expansion procedure:")
for line in system.render():
    print("   ", line)

p_y = eliminate(system)
print("\nAnnihilator in the shift y:", poly_str(p_y, "y"))
print("As a characteristic polynomial:", poly_str(y_to_X(p_y), "X"))

seq = oracle_sequence(spec, 1, 12)
print("\nOracle determinants Det(L(1|1)):", seq.terms)
print("Minimal polynomial of those terms:", poly_str(minimal_polynomial(seq), "X"))
print("Every spanning-tree count is 1, so the tighter recurrence X - 1 already suffices.")
