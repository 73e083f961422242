"""
How the learning rate shapes coordination
=========================================

With alpha = 0.001 the distributions are still spread out after 30000
frames when several learners compete.  Larger steps let devices lock onto
disjoint patterns much sooner.
"""

from dataclasses import replace

from learn2mac import Learn2MAC, preset, run_scenario

for alpha in (0.001, "auto", 0.01, 0.05):
    cfg = preset("saturation", k=7, seed=0)
    cfg = replace(cfg, devices=(Learn2MAC(d=100, eta=0.05, alpha=alpha),) * 7)
    res = run_scenario(cfg)
    print(f"alpha={alpha!s:>6}: whole-run total {res.system_latent_throughput:.2f}, "
          f"last 5000 frames {res.window_system_throughput(5000):.2f}")
