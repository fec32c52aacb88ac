# Three expansions of P(x, y) = int_0^inf exp(-t^4 - x t^2) cos(y t) dt
# and how their errors behave as terms are added.

import numpy as np

from pearcey import eval_large_x, eval_large_xy, eval_small_x, oracle_value, relative_error

# small |x|: a Taylor series in x, convergent everywhere
x, y = 0.1 - 0.125j, -2
print("small-x at", (x, y))
for n in range(1, 7):
    res = eval_small_x(x, y, n)
    print(f"  {n} terms  rel err {relative_error(res.value, x, y):.3e}  estimate {res.error_estimate / abs(res.value):.3e}")

# large |x|: asymptotic, the error shrinks like |x|^-2 per term until the terms turn around
x, y = 20, 1
print("large-x at", (x, y))
for n in range(1, 9):
    res = eval_large_x(x, y, n)
    print(f"  {n} terms  rel err {relative_error(res.value, x, y):.3e}  estimate {res.error_estimate / abs(res.value):.3e}")

# large |x| and |y| together: expansion about the shifted saddle
x, y = 100, 20j
print("large-xy at", (x, y))
for n in range(1, 7):
    res = eval_large_xy(x, y, n)
    print(f"  {n} terms  rel err {relative_error(res.value, x, y):.3e}  estimate {res.error_estimate / abs(res.value):.3e}")

# the oracle itself, to 50 digits
print("P(20, 1) =", oracle_value(20, 1, 50))

# large-x error against |x| at fixed y / sqrt(x): two terms give slope -4 on a log-log plot
radii = np.geomspace(10, 1000, 5)
errs = []
for r in radii:
    x = complex(r)
    y = 0.5 * np.sqrt(r)
    errs.append(relative_error(eval_large_x(x, y, 2).value, x, y))
slope = np.polyfit(np.log(radii), np.log(errs), 1)[0]
print(f"large-x, 2 terms: log-log slope of rel err vs |x| = {slope:.2f}")
