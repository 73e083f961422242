"""
Many learners sharing the channel
=================================

K devices all run Learn2MAC; the comparison arm has K ALOHA devices with
q = 0.2.  With N=20 and L=2 at most 10 devices can succeed per frame.

The full sweep (K=1..12, 5 seeds, 30000 frames) takes a few minutes; the
horizon is shortened here.  Use ``learn2mac sweep`` for the full run.
"""

from learn2mac import run_sweep

rows = run_sweep([1, 2, 4, 7, 10, 12], seeds=[0, 1], T=10000)
print(f"{'K':>3} {'protocol':>10} {'total thr':>10} {'std':>7}")
for r in rows:
    print(f"{r['K']:>3} {r['protocol']:>10} {r['mean']:>10.3f} {r['std']:>7.3f}")
