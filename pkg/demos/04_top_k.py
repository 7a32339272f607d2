"""
Ranking support trees
=====================

A support tree is a choice of one local rank per trail.  The enumerator
walks a spanning tree of the rank-vector lattice, keeping a heap of
candidates that grows by at most one per emitted tree, so the time between
consecutive outputs is linear in the network size.
"""

from supportrank import SupportTreeSpace, count_support_trees, top_k
from supportrank.fixtures import table1_fixture

net = table1_fixture()
print(count_support_trees(net), "support trees")

# the three crowns have second choices costing 1/4, 1/16 and 1/2
for tree in top_k(net, 8):
    print(tree.rank_vector[:3], tree.likelihood, len(tree.arc_set), "arcs")

# the same run with a trace of the candidate set and what each step added
space = SupportTreeSpace(net)
enum = space.enumerator(8, trace=True)
for _ in enum:
    pass


def short(tau):
    return None if tau is None else "".join(str(tau[i]) for i in space.free)


for step in enum.trace:
    q = sorted(short(t) for t in step.queue)
    print(step.j, q, short(step.emitted), short(step.child), short(step.sibling))

# the stream is lazy: taking three trees computes three trees
first = space.enumerator()
print([next(first).rank_vector[:3] for _ in range(3)], first.emitted)
