# Regenerates tests/data/chi2_oracle.json from scipy. Not run by the build.
import json
import numpy as np
from scipy.stats import chi2, chi2_contingency

rng = np.random.default_rng(20240611)
cases = []
while len(cases) < 100:
    rows = 3 if len(cases) < 80 else 4
    t = rng.integers(0, 60, size=(rows, 2))
    if (t.sum(axis=0) == 0).any() or (t.sum(axis=1) == 0).any():
        continue
    stat, p, dof, _ = chi2_contingency(t, correction=False)
    n = t.sum()
    v = float(np.sqrt(stat / (n * (min(t.shape) - 1))))
    cases.append({"cells": t.tolist(), "chi_square": float(stat), "df": int(dof), "p_value": float(p), "cramers_v": v})

fixed = []
for t in ([[5, 5], [5, 5], [5, 5]], [[10, 0], [0, 10], [10, 0]], [[12, 30], [25, 20], [40, 9]], [[3, 7], [8, 2], [5, 5]],
          [[100, 200], [150, 150], [210, 90]]):
    a = np.array(t)
    stat, p, dof, _ = chi2_contingency(a, correction=False)
    fixed.append({"cells": t, "chi_square": float(stat), "df": int(dof), "p_value": float(p),
                  "cramers_v": float(np.sqrt(stat / a.sum()))})

quantiles = [{"p": p, "df": df, "x": float(chi2.ppf(p, df))} for p in (0.95, 0.99) for df in (1, 2, 3, 5)]
sf = [{"x": x, "df": df, "sf": float(chi2.sf(x, df))} for x in (0.1, 1.0, 5.0, 30.0, 80.0, 200.0) for df in (1, 2, 3)]

with open("tests/data/chi2_oracle.json", "w") as f:
    json.dump({"random": cases, "fixed": fixed, "quantiles": quantiles, "sf": sf}, f, indent=1)
    f.write("\n")
