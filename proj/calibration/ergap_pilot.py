# Independent Monte Carlo estimate of P(connected and lambda_2 > 0.5) for
# G(200, p) at p = 1.5 * ergap_threshold(200, 0, 1). numpy only.
import math
import sys

import numpy as np

n, samples = 200, int(sys.argv[1]) if len(sys.argv) > 1 else 2000
ln = math.log(n)
p = 1.5 * (ln + math.sqrt(ln) * math.log(ln)) / n
rng = np.random.default_rng(7)
ok = 0
for _ in range(samples):
    a = np.triu(rng.random((n, n)) < p, 1)
    a = (a | a.T).astype(float)
    deg = a.sum(1)
    if (deg == 0).any():
        continue
    s = 1 / np.sqrt(deg)
    lam = np.linalg.eigvalsh(np.eye(n) - s[:, None] * a * s[None, :])
    ok += lam[1] > 1e-8 and lam[1] > 0.5
print(f"p = {p:.6f}  samples = {samples}  fraction = {ok / samples:.4f}")
