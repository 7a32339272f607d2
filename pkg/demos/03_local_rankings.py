"""
Local rankings
==============

Each trail contributes a small family of admissible 0/1 vectors: two for a
crown, one for an N-fence, m/2 for an M-fence with m arcs.  Sorting a family
by likelihood (ties broken lexicographically) gives the local ranking.
"""

from fractions import Fraction

from supportrank import TrailKind, ZigzagTrail, build_local_ranking
from supportrank.local_ranking import mfence_contributions

F = Fraction

# an M-fence on arcs 0..7; the family is 1(01)^p(10)^q1 with p + q = 3
fence = ZigzagTrail(tuple(range(8)), TrailKind.MFENCE, 0)
w = [F(1, 2), F(3, 4), F(1, 8), F(1), F(1, 2), F(5, 8), F(1, 4), F(1)]

# contributions in p order, each one swap away from the previous
for p, c in enumerate(mfence_contributions(fence, w)):
    print("p =", p, c)

# the ranking itself
for rank, e in enumerate(build_local_ranking(fence, w).entries, 1):
    print(rank, "".join(map(str, e.bits)), e.contribution)

# a crown has exactly two choices: alternate arcs one way or the other
crown = ZigzagTrail((0, 1, 2, 3), TrailKind.CROWN, 0)
print([(e.bits, e.contribution) for e in build_local_ranking(crown, [1, F(1, 2), 1, F(1, 2)]).entries])
