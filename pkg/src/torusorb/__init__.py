"""Torus orbifolds with two fixed points: classification data and graph
equivariant cohomology from an integer characteristic matrix."""

from .orbifold import (
    CharMatrix,
    ClassificationReport,
    SingularCharacteristic,
    Unsupported,
    classify,
    group_G,
    h3,
    integrality_constants,
    orbifold_graph,
    thom_class,
    validate,
)
from .graph_cohomology import (
    brute_force_basis,
    corollary_presentation,
    face_ring_relations,
    hilbert_of_presentation,
    presentation,
    verify,
)

__version__ = "0.1.0"
