"""
Checking against brute force
============================

The oracle tests every subset of each trail's arcs against the three
admissibility conditions (forced arcs in, exactly one arc per shared head,
at least one arc per shared tail) and sorts the products.  On small
networks it must agree with the fast engine tree for tree.
"""

from supportrank import count_support_trees, generate_random, top_k
from supportrank.oracle import brute_force_top_k, check_admissible, direct_support_trees

net = generate_random(4, 3, seed=7)
n = count_support_trees(net)
print(net.num_arcs, "arcs,", n, "support trees")

fast = list(top_k(net, n))
slow = brute_force_top_k(net, n)
print("engine equals oracle:", fast == slow)

# filtering all 2^|A| subsets gives the same family as the per-trail product
if net.num_arcs <= 16:
    print("direct enumeration:", len(direct_support_trees(net)))

# an admissibility report names each broken condition
report = check_admissible(net, range(net.num_arcs))
print(sorted(report.violated_conditions))
for line in report.details[:3]:
    print(" ", line)
