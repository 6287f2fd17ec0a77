from warnings import filterwarnings

from .algebra import Poly, PolyRing
from .engine import DeltaPair, check, energy_density, variation_test
from .field import FieldCalculus, VectorFieldExpr
from .frame import FrameAlgebra, load_preset
from .util import ManifestError, PolyParseError, StructureError


filterwarnings("ignore", message=".*MPI")


__all__ = [
    "algebra",
    "case_studies",
    "cli",
    "engine",
    "field",
    "frame",
    "manifest",
    "report",
    "util",
    "DeltaPair",
    "FieldCalculus",
    "FrameAlgebra",
    "Poly",
    "PolyRing",
    "VectorFieldExpr",
    "check",
    "energy_density",
    "load_preset",
    "variation_test",
    "ManifestError",
    "PolyParseError",
    "StructureError",
]

__author__ = "The Sesquifield Project"
__copyright__ = "Copyright 2026-, The Sesquifield Project"
__credits__ = ["The Sesquifield Project"]
__license__ = "BSD"
__version__ = "2026.10.16"
__maintainer__ = "The Sesquifield Project"
__status__ = "alpha"
