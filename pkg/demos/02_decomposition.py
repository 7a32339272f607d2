"""
Zig-zag trails
==============

Every arc shares its head with at most one other arc and its tail with at
most one other arc.  Following those links alternately splits the arc set
into maximal zig-zag trails: crowns (closed) and M-, N- or W-fences (open).
A W-fence admits no support tree, so the network is tree-based exactly when
no trail is a W-fence.
"""

from supportrank import decompose, is_tree_based, parse_network
from supportrank.fixtures import table1_fixture, wfence_network

net = table1_fixture()
for z in decompose(net):
    print(z.trail_index, z.kind, [net.arc_label(a) for a in z.arcs])

print("tree-based:", is_tree_based(net))

# a 2-leaf cherry: the root arc is a one-arc N-fence, the two leaf arcs an M-fence
cherry = parse_network("rho a 1\na x 1\na y 1")
print([(str(z.kind), z.arcs) for z in decompose(cherry)])

# a network built around a W-fence
w = wfence_network(0)
dec = decompose(w)
print("tree-based:", dec.is_tree_based)
for z in dec.wfences:
    print("W-fence:", [w.arc_label(a) for a in z.arcs])
