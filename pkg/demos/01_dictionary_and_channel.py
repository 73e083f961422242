"""
Pattern dictionaries and the collision channel
==============================================

A device never considers all 2^N transmission patterns.  It draws a small
random dictionary once, always keeping the silent pattern at index 0.
"""

import numpy as np

from learn2mac.medium import feedback_to_str, free_slots_for, resolve_frame
from learn2mac.patterns import DictionaryConfig, generate_dictionary, pattern_to_str

dct = generate_dictionary(DictionaryConfig(N=20, L=2, d=100, seed=7))
print("first patterns:")
for row in dct.to_strings()[:6]:
    print("  ", row)
print("weight histogram:", np.bincount(dct.weights, minlength=21).tolist())

###############################################################################
# Three devices share a frame, each playing one of the lightest patterns.
# Slots hit by two devices are lost for both.

light = np.argsort(dct.weights, kind="stable")[1:4]
profiles = [dct[i] for i in light]
res = resolve_frame(profiles)
print("\nplayed:")
for p in profiles:
    print("  ", pattern_to_str(p))
print("feedback:", feedback_to_str(res.feedback))
print("successes per device:", res.success_counts.tolist())

###############################################################################
# The broadcast feedback does not say *who* succeeded, but each device knows
# its own pattern, so it can tell which slots nobody else used.

for k, own in enumerate(profiles):
    print(f"device {k} sees free slots", pattern_to_str(free_slots_for(res.feedback, own)))
