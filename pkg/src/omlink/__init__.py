"""Linked triangles and three-component links in linear embeddings of
complete graphs, via uniform oriented matroids of rank 4."""

from .core import (
    AxiomReport,
    Chirotope,
    Circuit,
    CircuitSet,
    DomainError,
    FormatError,
    SignedSet,
    basis_rank,
    chi_eval,
    circuits_from_chirotope,
    classify_partition,
    is_acyclic,
    parse_chirotope,
    validate_circuit_axioms,
)
from .geometry import (
    AffineCircuit,
    DegeneracyError,
    GenerationError,
    PointConfiguration,
    chirotope_from_points,
    geometric_linked,
    linking_parity,
    orientation_det,
    radon_partition,
    random_general_position,
    segment_pierces_triangle,
)
from .linkage import (
    Triangle,
    TripleLinkCertificate,
    find_triple_link,
    linked_triangle_graph,
    piercing_edges,
    triangles_linked,
    verify_certificate,
)
from .reorient import (
    ReorientationSet,
    cyclic_reorientation_sets,
    enumerate_reorientation_sets,
    reorient_circuit_set,
    reorient_signed_set,
)

__version__ = "0.1.0"
