"""
Midway histograms
=================

Averaging two histograms with modes at 40 and 200 gives a bimodal
histogram. Averaging their *pseudo-inverses* instead gives a single mode at
120: that is the midway histogram, the transport barycenter of the inputs.
"""

import numpy as np

from admire.histogram import CumulativeHistogram, midway_cumhist, pseudo_inverse_eval

rng = np.random.default_rng(0)
a = CumulativeHistogram.from_values(np.clip(rng.normal(40, 5, 5000), 0, 255).astype(int))
b = CumulativeHistogram.from_values(np.clip(rng.normal(200, 5, 5000), 0, 255).astype(int))

plain = 0.5 * (a.bins + b.bins)
mid = midway_cumhist([a, b], [0.5, 0.5])


def modes(bins):
    density = np.diff(bins, prepend=0)
    return np.flatnonzero(density > 0.5 * density.max())


print("plain average, high-density levels:", modes(plain))
print("midway, high-density levels:       ", modes(mid.bins))
print("median level of the midway:", pseudo_inverse_eval(mid, 0.5))

###############################################################################
# Midway of many perturbed copies of one histogram
# ------------------------------------------------
# Seen through random monotone contrast changes, one landscape yields many
# histograms. Their midway sits far closer to the truth than the worst of
# them (see the tests for the trend over many draws).

x = np.arange(256)
weights = np.convolve(rng.gamma(1, 1, 256), np.ones(15), "same")
vals = rng.choice(256, 4000, p=weights / weights.sum())
true = CumulativeHistogram.from_values(vals)
for m in (3, 9, 33, 129):
    hists = []
    for _ in range(m):
        g, o, c = rng.uniform(0.8, 1.2), rng.uniform(-20, 20), rng.uniform(-15, 15)
        phi = np.maximum.accumulate(np.clip(np.round(g * x + o + c * 4 * x * (255 - x) / 255**2), 0, 255))
        hists.append(CumulativeHistogram.from_values(phi.astype(int)[vals]))
    mid = midway_cumhist(hists, np.full(m, 1 / m), rounded=False)
    worst = max(np.linalg.norm(h.bins - true.bins) for h in hists)
    print(f"{m:4d} columns: |mid - true| = {np.linalg.norm(mid.bins - true.bins):.3f}   worst input = {worst:.3f}")
