"""
Reading and checking networks
=============================

A network is a plain list of weighted arcs, one ``tail head weight`` line
each.  Root and leaves are inferred from degrees.
"""

from supportrank import generate_random, parse_network, serialize, validate
from supportrank.network import parse_raw

# a root with a pendant arc, then a cherry
doc = """
rho a 1
a x 0.25
a y 3/4
"""
net = parse_network(doc)
print(net.num_vertices, "vertices,", net.num_arcs, "arcs")
print("root:", net.labels[net.root], " leaves:", [net.labels[v] for v in net.leaves])

# weights stay exact fractions, whatever literal was used
print(net.weights)

# validate lists every broken condition instead of stopping at the first
broken = "r1 a 1\nr2 a 1\na x 2\n"
for v in validate(parse_raw(broken)):
    print(v)

# random tree-based networks: a random tree plus extra arcs between subdivided tree arcs
g = generate_random(4, 2, seed=1)
print(serialize(g), end="")
assert serialize(g) == serialize(generate_random(4, 2, seed=1))  # same seed, same bytes
