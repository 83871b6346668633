"""
Three-component links in random straight-line embeddings of K9
==============================================================

Draw random integer points in general position and look for three disjoint
triangles where the middle one is linked with both of the others.
"""

from omlink import (chirotope_from_points, circuits_from_chirotope, find_triple_link,
                    geometric_linked, random_general_position)

for seed in range(5):
    config = random_general_position(9, seed)
    circuits = circuits_from_chirotope(chirotope_from_points(config))
    cert = find_triple_link(circuits)
    print(f"seed {seed}: middle {cert.middle}, left {cert.left}, right {cert.right}")
    print("   witnesses:", *map(str, cert.witnesses))

    # Check the certificate against the actual geometry.
    m = config.labelled(cert.middle.vertices)
    print("   geometric check:",
          geometric_linked(m, config.labelled(cert.left.vertices)),
          geometric_linked(m, config.labelled(cert.right.vertices)))

# Not every embedding needs the empty reorientation: the search works on any
# acyclic reorientation of the circuits.
from omlink import enumerate_reorientation_sets, cyclic_reorientation_sets

cands = enumerate_reorientation_sets(9)
cyclic = cyclic_reorientation_sets(circuits, cands)
print(len(cands), "reorientation sets,", len(cyclic), "cyclic,", len(cands) - len(cyclic), "acyclic")
missing = [a for a in cands if a not in cyclic and find_triple_link(circuits, a.mask) is None]
print("acyclic reorientations without a 3-link:", missing)
