"""Compact hyperbolic tetrahedra with non-obtuse dihedral angles.

Classify angle 6-tuples, build the realizing tetrahedron in the hyperboloid
model, and explore the (non-convex) region of realizable angles.
"""

from .builder import Tetrahedron, build, edge_lengths, export_off, measure
from .explore import SliceSpec, boundary_path, midpoint_counterexample, slice
from .gram import gram_from_angles, milnor_check, normals_from_gram
from .membership import DihedralAngles, Kind, Verdict, classify, face_angles, is_member

__all__ = [
    "DihedralAngles",
    "Kind",
    "SliceSpec",
    "Tetrahedron",
    "Verdict",
    "boundary_path",
    "build",
    "classify",
    "edge_lengths",
    "export_off",
    "face_angles",
    "gram_from_angles",
    "is_member",
    "measure",
    "midpoint_counterexample",
    "milnor_check",
    "normals_from_gram",
    "slice",
]
