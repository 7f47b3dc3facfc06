from .classify import classify_delta0
from .formulas import (
    ONE,
    And,
    ArrParam,
    ArrVar,
    Bottom,
    CompArr,
    Eq,
    ExistsArr,
    ExistsObj,
    ForallArr,
    ForallObj,
    Formula,
    IdArr,
    Implies,
    LogicError,
    Not,
    ObjParam,
    ObjVar,
    OneObj,
    Or,
    Top,
    is_delta0,
    isomorph,
    map_terms,
    print_formula,
    pullback_formula,
    pullback_slice_mor,
    pullback_slice_obj,
    slice_formula,
    subst_arr,
    subst_obj,
    typecheck,
    unslice_formula,
)
from .internal import classify_internal, d0_to_internal, internal_to_d0
from .parser import parse, resolve

__all__ = [
    "classify_delta0",
    "classify_internal",
    "d0_to_internal",
    "internal_to_d0",
    "parse",
    "resolve",
    "ONE",
    "And",
    "ArrParam",
    "ArrVar",
    "Bottom",
    "CompArr",
    "Eq",
    "ExistsArr",
    "ExistsObj",
    "ForallArr",
    "ForallObj",
    "Formula",
    "IdArr",
    "Implies",
    "LogicError",
    "Not",
    "ObjParam",
    "ObjVar",
    "OneObj",
    "Or",
    "Top",
    "is_delta0",
    "isomorph",
    "map_terms",
    "print_formula",
    "pullback_formula",
    "pullback_slice_mor",
    "pullback_slice_obj",
    "slice_formula",
    "subst_arr",
    "subst_obj",
    "typecheck",
    "unslice_formula",
]
