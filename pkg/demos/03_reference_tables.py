# Recompute the reference relative-error tables and list the cells that
# fall outside the acceptance tolerance.

from collections import Counter

from pearcey.tables import TABLES, reproduce_table

for which, table in TABLES.items():
    cells = reproduce_table(which, digits=50)
    verdicts = Counter(c.passed for c in cells)
    print(f"table {which} ({table.method}): {verdicts[True]}/{len(cells)} cells pass")
    for c in cells:
        if not c.passed:
            print(f"  {c.label:<22} n={c.n}  computed {c.computed:.4e}  expected {c.expected:.4e}  ratio {c.computed / c.expected:.3f}")
