"""Integer (Z-) colorings of closed braids, with tools for torus links T(pr, qr)."""
from .braid import BraidWord, Diagram, cable, close_braid, parse_braid, torus_braid
from .coloring import (
    Coloring,
    coloring_from_seed,
    coloring_lattice,
    is_z_colorable,
    link_determinant,
    mincol_search,
    palette,
)
from .errors import ZColorError
from .linalg import IntMatrix, kernel_basis, smith_normal_form
from .racks import RackOps, cyclic_rack, dihedral, znr
from .torus import TorusParams, classification_A, classification_A4, standard_diagram
from .verify import VerificationReport

__all__ = [
    "BraidWord", "Diagram", "cable", "close_braid", "parse_braid", "torus_braid",
    "Coloring", "coloring_from_seed", "coloring_lattice", "is_z_colorable",
    "link_determinant", "mincol_search", "palette", "ZColorError", "IntMatrix",
    "kernel_basis", "smith_normal_form", "RackOps", "cyclic_rack", "dihedral", "znr",
    "TorusParams", "classification_A", "classification_A4", "standard_diagram",
    "VerificationReport",
]
