"""Closed forms and their roots.

The denominator recurrence has five simple roots; the numerator has repeated
ones, so its Binet form carries linear-in-n coefficients.  The weight on the
root 1 in the denominator form is a small rational, visible at 50 digits.
"""

import mpmath

from resrec import ResistanceModel
from resrec.binet import classify_roots, eval_binet

model = ResistanceModel(3, precision=50)

for name, part in (("denominator", model.den), ("numerator", model.num)):
    print(f"== {name} roots (value, multiplicity, |root|)")
    for r, m in part.binet.roots:
        print(f"   {mpmath.nstr(r, 12):>36}  x{m}  {mpmath.nstr(abs(r), 8)}")

form = model.den.binet
print("\nweight on the root 1:", mpmath.nstr(form.coeffs[form.root_index(1)][0].real, 30))
prof = classify_roots(model.num.binet)
print("dominant |r|:", mpmath.nstr(prof.magnitudes[prof.dominant], 10))
print("next largest |r| among numerator roots:", mpmath.nstr(prof.subdominant_magnitude, 10))

n = 30
print(f"\nBinet value at index {n}:", mpmath.nstr(eval_binet(model.den.binet, n), 40))
print("recurrence value:       ", model.den.term(n))
