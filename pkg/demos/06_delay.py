"""
Delay against network size
==========================

Per-emission delay should grow linearly with the number of arcs and stay
flat along the ranking.  The median of the least disturbed repetition is
used per size.
"""

import sys

from supportrank.profiling import format_summary, profile_delay, summarize

sizes = [200, 400, 800, 1600]
profiles = profile_delay(sizes, k=1000, repetitions=3, seed=0)
summary = summarize(profiles)
sys.stdout.write(format_summary(summary))

# a ratio near 2 per doubling means linear growth plus a small fixed cost
for n, g in zip(summary.sizes[1:], summary.growth):
    print(f"{n:5d} arcs: x{g:.2f} over the previous size")
