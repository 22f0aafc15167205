"""Recurrences for the linear 3-tree.

Expanding the two Laplacian minors of the 3-tree closes after a few dozen
families.  Elimination gives a degree-20 annihilator shared by both parts;
the oracle terms then pin down the minimal polynomials, which must divide it.
"""

from resrec import FamilySpec, eliminate, minimal_polynomial, oracle_sequence, run_procedure, y_to_X
from resrec.exactnum import poly_divides, poly_str, squarefree_decomposition
from resrec.recsolve import failing_windows
from resrec.stencil import seed_family

for part, lo in (("denominator", 1), ("numerator", 0)):
    spec = FamilySpec(3, part)
    seed = seed_family(spec)
    system = run_procedure(seed)
    ann = y_to_X(eliminate(system))
    seq = oracle_sequence(spec, lo, 45)
    char = minimal_polynomial(seq.window(seed.min_size, 45))

    print(f"== {part}")
    print(f"families: {len(system.families)}, annihilator degree {len(ann) - 1}")
    print("annihilator factors:")
    for f, mult in squarefree_decomposition(ann):
        print(f"   ({poly_str(f, 'X')})^{mult}")
    print("minimal polynomial:", poly_str(char, "X"))
    print("divides the annihilator:", poly_divides(char, ann))
    print("windows where the recurrence fails:", failing_windows(char, seq))
    print(f"stencil min size of the seed family: {seed.min_size}\n")
