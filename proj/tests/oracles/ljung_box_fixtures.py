"""Regenerates tests/data/*_256.csv and prints reference Ljung-Box values.

Reference implementation: statsmodels.stats.diagnostic.acorr_ljungbox.
"""
import numpy as np
from pathlib import Path
from statsmodels.stats.diagnostic import acorr_ljungbox
from scipy import stats

data = Path(__file__).resolve().parent.parent / "data"
rng = np.random.default_rng(20081)

white = rng.standard_normal(256)
ar = np.empty(256)
eps = rng.standard_normal(256)
ar[0] = eps[0]
for t in range(1, 256):
    ar[t] = 0.9 * ar[t - 1] + eps[t]

for name, x in (("white_noise_256.csv", white), ("ar1_phi09_256.csv", ar)):
    np.savetxt(data / name, x, fmt="%.17g")
    lb = acorr_ljungbox(x, lags=[6], return_df=True)
    print(name, repr(float(lb["lb_stat"].iloc[0])), repr(float(lb["lb_pvalue"].iloc[0])))

for q, df in ((1.3862943611198906, 2), (3.8415, 1), (12.5916, 6), (0.5, 3), (30.0, 10)):
    print("chi2", q, df, repr(float(stats.chi2.sf(q, df))))
for a, df in ((0.025, 3), (0.025, 38), (0.005, 3), (0.05, 1), (0.001, 100)):
    print("t", a, df, repr(float(stats.t.isf(a, df))))
