"""End-to-end resistance, three ways.

Exact determinant ratios, the integer recurrences and the closed forms should
agree.  The recurrence route never builds a matrix, so it scales to sizes the
determinant route cannot touch.
"""

import time

import mpmath

from resrec import ResistanceModel, resistance_exact, resistance_recurrence

model = ResistanceModel(3, precision=50)
print(f"{'n':>3}  {'exact':>22}  {'recurrence agrees':>17}  {'Binet relative gap':>18}")
for n in (4, 5, 6, 10, 20, 40):
    res = model.result(n)
    print(f"{n:>3}  {str(res.exact):>22}  {str(res.exact == res.recurrence):>17}  "
          f"{mpmath.nstr(res.rel_gap, 3):>18}")

t = time.perf_counter()
r = resistance_recurrence(10_000)
print(f"\nR(10000) by recurrence: {float(r):.12f} ({time.perf_counter() - t:.2f} s)")
t = time.perf_counter()
resistance_exact(3, 300)
print(f"R(300) by determinants took {time.perf_counter() - t:.2f} s")
