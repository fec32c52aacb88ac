"""Reference relative-error tables for the three expansions, and their recomputation.

Each row lists the relative error of the expansion truncated after n + 1
terms, n = 0..5, against a high-precision value of P(x, y). Points given in
polar form are stored as 17-digit rectangular literals.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

from .large_x import eval_large_x
from .large_xy import eval_large_xy
from .reference import relative_error
from .results import EvalResult, MethodTag
from .small_x import eval_small_x

RATIO_TOL = 1.02
SMALL_ENTRY = 1e-10
SMALL_FACTOR = 3.0
FLOOR_ENTRY = 1e-13


@dataclass(frozen=True)
class TableRow:
    label: str
    x: complex
    y: complex
    expected: tuple[float, ...]
    # columns where only "computed <= FLOOR_ENTRY" is required
    floor_columns: tuple[int, ...] = ()


@dataclass(frozen=True)
class ErrorTable:
    number: int
    method: MethodTag
    rows: tuple[TableRow, ...]

    @property
    def evaluator(self) -> Callable[[complex, complex, int], EvalResult]:
        return _EVALUATORS[self.method]


@dataclass(frozen=True)
class CellResult:
    table: int
    label: str
    x: complex
    y: complex
    n: int
    computed: float
    expected: float
    rule: str
    passed: bool


_EVALUATORS = {
    MethodTag.SMALL_X: eval_small_x,
    MethodTag.LARGE_X: eval_large_x,
    MethodTag.LARGE_XY: eval_large_xy,
}

_R2 = 0.70710678118654752

TABLE_1 = ErrorTable(
    1,
    MethodTag.SMALL_X,
    (
        TableRow("(1, i)", 1 + 0j, 1j, (0.392107, 0.1672, 0.063132, 0.021281, 0.006514, 0.001836)),
        TableRow(
            "(e^{i pi/4}, 1)",
            complex(_R2, _R2),
            1 + 0j,
            (0.257819, 0.079558, 0.022810, 0.005967, 0.001428, 0.000314),
        ),
        TableRow("(-1/5, i)", -0.2 + 0j, 1j, (0.080452, 0.006563, 0.000477, 0.000031, 1.868e-6, 1.033e-7)),
        TableRow(
            "(1/10 - i/8, -2)",
            complex(0.1, -0.125),
            -2 + 0j,
            (0.004970, 0.002162, 0.000182, 0.000011, 5.876e-7, 2.719e-8),
        ),
        TableRow("(i/20, 2i)", 0.05j, 2j, (0.027790, 0.000675, 0.000013, 2.501e-7, 4.042e-9, 5.976e-11)),
    ),
)

TABLE_2 = ErrorTable(
    2,
    MethodTag.LARGE_X,
    (
        TableRow("(5, 2i)", 5 + 0j, 2j, (0.04689, 0.011308, 0.004835, 0.002943, 0.002317, 0.002233)),
        TableRow(
            "(10e^{i pi/4}, -1)",
            complex(7.0710678118654752, 7.0710678118654752),
            -1 + 0j,
            (0.006956, 0.000281, 0.000021, 2.441e-6, 3.675e-7, 6.934e-8),
        ),
        TableRow(
            "(5 + 10i, 1 - i)",
            5 + 10j,
            1 - 1j,
            (0.007110, 0.000291, 0.000022, 2.505e-6, 3.690e-7, 6.722e-8),
        ),
        TableRow("(20, 1)", 20 + 0j, 1 + 0j, (0.001766, 0.000018, 3.514e-7, 1.002e-8, 3.772e-10, 1.846e-11)),
        TableRow("(30i, -i)", 30j, -1j, (0.000837, 4.092e-6, 3.775e-8, 5.147e-10, 9.215e-12, 3.221e-13)),
        TableRow(
            "(100i, 2 - i)",
            100j,
            2 - 1j,
            (0.000078, 3.553e-8, 3.048e-11, 3.885e-14, 1.550e-16, 1.150e-16),
            floor_columns=(4, 5),
        ),
    ),
)

TABLE_3 = ErrorTable(
    3,
    MethodTag.LARGE_XY,
    (
        TableRow("(10, 3i)", 10 + 0j, 3j, (0.007738, 0.007732, 0.000532, 0.000353, 0.000071, 0.000031)),
        TableRow(
            "(20e^{5i pi/8}, 10)",
            complex(-7.6536686473017954, 18.477590650225735),
            10 + 0j,
            (0.002036, 0.002008, 0.000139, 0.000027, 5.602e-6, 7.790e-7),
        ),
        TableRow(
            "(50i, 20e^{i pi/4})",
            50j,
            complex(14.142135623730950, 14.142135623730950),
            (0.000295, 0.000185, 4.224e-6, 5.134e-7, 2.801e-8, 1.784e-9),
        ),
        TableRow("(100, 20i)", 100 + 0j, 20j, (0.000074, 0.000073, 1.820e-7, 3.237e-8, 2.616e-10, 2.618e-11)),
        TableRow("(200i, 5)", 200j, 5 + 0j, (0.000018, 0.000017, 2.062e-9, 2.051e-9, 4.274e-13, 4.228e-13)),
    ),
)

TABLES = {1: TABLE_1, 2: TABLE_2, 3: TABLE_3}


def cell_rule(expected: float, floor: bool) -> str:
    if floor:
        return f"<= {FLOOR_ENTRY:g}"
    if expected >= SMALL_ENTRY:
        return f"ratio within {RATIO_TOL}"
    return f"<= {SMALL_FACTOR:g}x"


def cell_passes(computed: float, expected: float, floor: bool = False) -> bool:
    """Acceptance rule for one table cell."""
    if floor:
        return computed <= FLOOR_ENTRY
    if expected >= SMALL_ENTRY:
        return expected / RATIO_TOL <= computed <= expected * RATIO_TOL
    return computed <= SMALL_FACTOR * expected


def reproduce_row(table: ErrorTable, row: TableRow, digits: int = 50) -> list[CellResult]:
    out = []
    for n, expected in enumerate(row.expected):
        approx = table.evaluator(row.x, row.y, n + 1).value
        computed = relative_error(approx, row.x, row.y, digits)
        floor = n in row.floor_columns
        out.append(
            CellResult(
                table=table.number,
                label=row.label,
                x=row.x,
                y=row.y,
                n=n,
                computed=computed,
                expected=expected,
                rule=cell_rule(expected, floor),
                passed=cell_passes(computed, expected, floor),
            )
        )
    return out


def reproduce_table(which: int, digits: int = 50) -> list[CellResult]:
    """Recompute every cell of a reference table against the oracle."""
    table = TABLES[which]
    cells = []
    for row in table.rows:
        cells.extend(reproduce_row(table, row, digits))
    return cells
