"""
Linked triangles, combinatorially and geometrically
===================================================

A triangle in the plane z = 0 and a second triangle with one edge running down
the z-axis through the first.  The two form a Hopf link.
"""

from omlink import (PointConfiguration, chirotope_from_points, circuits_from_chirotope,
                    geometric_linked, linked_triangle_graph, piercing_edges, triangles_linked)

hopf = PointConfiguration(((1, 0, 0), (-1, 1, 0), (-1, -1, 0), (0, 0, 2), (0, 0, -2), (3, 1, 1)))
circuits = circuits_from_chirotope(chirotope_from_points(hopf))

# Which edges pierce triangle 123?  Read off the (3,2) circuits.
print("edges through {1,2,3}:", [sorted(e) for e in piercing_edges(circuits, (1, 2, 3))])
print("edges through {4,5,6}:", [sorted(e) for e in piercing_edges(circuits, (4, 5, 6))])

# Exactly one edge each way, so the pair is linked.
print("linked (circuits):", triangles_linked(circuits, (1, 2, 3), (4, 5, 6)))
print("linked (geometry):", geometric_linked(hopf.labelled((1, 2, 3)), hopf.labelled((4, 5, 6))))

# Every linked pair among the 20 triangles:
for t, adj in linked_triangle_graph(circuits).items():
    for u in adj:
        if t < u:
            print(t, "<->", u)
