"""
Periodic ALOHA background
=========================

The background user transmits in every slot with probability
0.25 + 0.15 sin(2 pi t / 2000), so the channel alternates between light
and heavy load.  The comparison again uses an energy-matched ALOHA device.
"""

import numpy as np

from learn2mac import preset, run_paired
from learn2mac.baselines import PeriodicAlohaParams, periodic_q

print("background q over one period:", np.round(periodic_q(np.arange(0, 2001, 250), PeriodicAlohaParams()), 3).tolist())

for seed in range(3):
    learn, base = run_paired(preset("dynamic_aloha", seed=seed))
    l, b = learn.trace(), base.traces[0]
    print(f"seed {seed}: Learn2MAC {l.throughput():.3f} (energy {l.mean_energy:.2f})  "
          f"ALOHA {b.throughput():.3f} (energy {b.mean_energy:.2f})")
