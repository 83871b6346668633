"""
Chirotopes and circuits of a point configuration
=================================================

Five points: the corners of a tetrahedron and one point inside it.
"""

from omlink import (PointConfiguration, chirotope_from_points, circuits_from_chirotope,
                    classify_partition, orientation_det, radon_partition)
from itertools import combinations

config = PointConfiguration(((0, 0, 0), (6, 0, 0), (0, 6, 0), (0, 0, 6), (1, 1, 1)))

# One orientation determinant per 4-subset, in lexicographic order.
for quad in combinations(range(1, 6), 4):
    print(quad, orientation_det(*config.labelled(quad)))

# Their signs form the chirotope string.
chi = chirotope_from_points(config)
print("chirotope:", chi)

# The chirotope determines one circuit per 5-subset.  Here there is just one:
# point 5 on one side, the tetrahedron on the other -- a (4,1) partition.
circuits = circuits_from_chirotope(chi)
for c in circuits:
    print("circuit", c, "partition", classify_partition(c))

# The same circuit read off the geometry directly: the affine dependency
# among the five points, solved exactly.
affine = radon_partition(config.points)
print("radon:", affine.circuit, {k: str(v) for k, v in affine.coefficients.items()})
