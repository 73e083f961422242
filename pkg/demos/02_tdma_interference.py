"""
One learner against a fixed TDMA schedule
=========================================

Half of the frame (slots 0-9) belongs to a background TDMA user.  The
learner should settle on a cheap pattern living in slots 10-19.  An ALOHA
device spending the same average energy serves as the baseline.
"""

import numpy as np

from learn2mac import preset, run_paired

learn, base = run_paired(preset("tdma_static", seed=0))
tr = learn.trace()
dct = learn.dictionaries[0]

print("Learn2MAC running throughput:", round(tr.throughput(), 4))
print("          last 5000 frames  :", round(tr.window_throughput(5000), 4))
print("energy-matched ALOHA        :", round(base.traces[0].throughput(), 4), "with q =", round(base.traces[0].summary["q"], 4))

###############################################################################
# Which pattern won, and how fast did it win?

print("\nmodal pattern (last 5000):", tr.summary["modal_pattern"], "-> by index", tr.modal_index(5000))
print("hindsight best pattern    :", tr.summary["hindsight_best_pattern"])
for t in (1000, 5000, 10000, 20000, 30000):
    print(f"t={t:>6}  running thr={tr.running_throughput()[t - 1]:.3f}  "
          f"energy/frame={tr.energy[:t].mean():.2f}  avg regret={tr.cumulative_regret[t - 1] / t:.4f}")

###############################################################################
# The learner's expected energy falls as mass moves toward light patterns.

blocks = tr.energy.reshape(6, -1).mean(axis=1)
print("\nmean energy per 5000-frame block:", np.round(blocks, 2).tolist())
