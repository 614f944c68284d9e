#!/usr/bin/env python3
"""The quotient series for the in-between threshold k(y) = y/log y.

Sublinear thresholds pin the quotient to the reciprocal-sum constant and
linear ones give positive density; y/log y sits between the two regimes.
This emits the series x -> count/(x/log x) for x = 2..10^4 as CSV, ready
for any plotting tool:

    python demos/demo_figure_series.py > within_xlogy.csv
"""

import sys

from withinperfect import ThresholdSpec, series
from withinperfect.emit import series_csv

LIMIT = 10**4

result = series("2", ThresholdSpec.x_over_log(), list(range(2, LIMIT + 1)))
sys.stdout.write(series_csv(result))

head = [f"{x}:{q:.4f}" for x, _, q in result.rows()[:5]]
tail = [f"{x}:{q:.4f}" for x, _, q in result.rows()[-3:]]
sys.stderr.write(f"series head {head} ... tail {tail}\n")
