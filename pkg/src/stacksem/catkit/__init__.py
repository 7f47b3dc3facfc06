from .base import CatError, DerivedOps, Subobject, enumerate_structures
from .finset import FINSET, FinMor, FinSetHandle
from .presheaf import FinCat, PresheafHandle, PshMor, PshObj, arrow_cat, empty_cat, point_cat, z2_cat
from .slices import SliceHandle, SlMor, SlObj
from .wellpointed import check_wellpointed, pointwise_epi, pointwise_iso, pointwise_mono

__all__ = [
    "CatError",
    "DerivedOps",
    "Subobject",
    "enumerate_structures",
    "FINSET",
    "FinMor",
    "FinSetHandle",
    "FinCat",
    "PresheafHandle",
    "PshMor",
    "PshObj",
    "arrow_cat",
    "empty_cat",
    "point_cat",
    "z2_cat",
    "SliceHandle",
    "SlMor",
    "SlObj",
    "check_wellpointed",
    "pointwise_epi",
    "pointwise_iso",
    "pointwise_mono",
]
