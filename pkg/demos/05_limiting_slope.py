"""How fast does R(n+1) - R(n) settle at 1/14?

Exact differences are compared with the limit.  Because the next roots after
the dominant one form a complex pair, the error changes sign irregularly;
maxima over blocks of ten expose the geometric envelope instead.
"""

import mpmath

from resrec import verify_conjecture

rep = verify_conjecture(10, 80, precision=50)
for row in rep.rows[::10]:
    print(f"n = {row['n']:>2}   error = {float(row['error']): .3e}")

print("\nblock decay per step:", [round(d, 4) for d in rep.decay])
print("closed-form slope:", mpmath.nstr(rep.closed_form_slope, 40))
print("gap to 1/14:", mpmath.nstr(rep.closed_form_gap, 5))
print("|Delta(80) - 1/14| =", float(rep.final_error))
