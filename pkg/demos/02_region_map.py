# Which method the selector picks over the (|x|, |y|) plane, for real x and y.
# Printed as a character map: s small-x, c convergent series, x large-x,
# y large-xy, q quadrature fallback, ! overflow.
# Large real y makes P exponentially small next to the integrand, so the
# oracle fallback gets slow there; the grid stops at |y| = 12.

import numpy as np

from pearcey import PearceyOverflowError, evaluate

symbol = {"small_x": "s", "convergent_series": "c", "large_x": "x", "large_xy": "y", "quadrature": "q"}


def method_char(x, y):
    try:
        return symbol[str(evaluate(x, y).method)]
    except PearceyOverflowError:
        return "!"


xs = np.geomspace(0.1, 60, 20)
ys = np.geomspace(0.1, 12, 10)[::-1]

print(f"|y| down, |x| across from {xs[0]:.3g} to {xs[-1]:.3g}")
for y in ys:
    print(f"{y:8.3g} " + "".join(method_char(x, y) for x in xs), flush=True)

# the same |x| values on the ray arg x = 3pi/4, where large-x is just out of reach
print("arg x = 3pi/4, |y| = 1:", "".join(method_char(x, 1) for x in xs * np.exp(0.75j * np.pi)))
