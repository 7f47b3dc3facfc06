"""The dependently-typed first-order language of categories.

Terms and formulas are immutable trees.  Object terms are the constant 1,
object variables, or object parameters; arrow terms are arrow variables,
arrow parameters, identities and composites.  The only atomic formula is an
equality of parallel arrow terms; there is no equality of objects, so
non-invariant statements are unrepresentable by construction.

A sentence "over U" carries its parameters as objects and morphisms of the
slice over U; substituting quantified variables during evaluation embeds the
chosen parameter values directly into the tree, which keeps formulas hashable
and memoization sound.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional


class LogicError(Exception):
    def __init__(self, message: str, pos: Optional[int] = None):
        super().__init__(message if pos is None else f"{message} (at position {pos})")
        self.message = message
        self.pos = pos


# ---------------------------------------------------------------- object terms


class ObjTerm:
    pass


@dataclass(frozen=True)
class OneObj(ObjTerm):
    def __repr__(self):
        return "1"


@dataclass(frozen=True)
class ObjVar(ObjTerm):
    name: str

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class ObjParam(ObjTerm):
    name: str
    value: Any = None

    def __repr__(self):
        return self.name


ONE = OneObj()


def obj_term_eq(a: ObjTerm, b: ObjTerm) -> bool:
    """Equality of object terms; parameters compare by value, not print name."""
    if isinstance(a, OneObj) and isinstance(b, OneObj):
        return True
    if isinstance(a, ObjVar) and isinstance(b, ObjVar):
        return a.name == b.name
    if isinstance(a, ObjParam) and isinstance(b, ObjParam):
        return a.value == b.value
    return False


# ---------------------------------------------------------------- arrow terms


class ArrTerm:
    pass


@dataclass(frozen=True)
class ArrVar(ArrTerm):
    name: str

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class ArrParam(ArrTerm):
    name: str
    value: Any = None
    dom: Optional[ObjTerm] = None
    cod: Optional[ObjTerm] = None

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class IdArr(ArrTerm):
    obj: ObjTerm

    def __repr__(self):
        return f"id[{self.obj!r}]"


@dataclass(frozen=True)
class CompArr(ArrTerm):
    after: ArrTerm
    first: ArrTerm

    def __repr__(self):
        return f"({self.after!r} o {self.first!r})"


# ------------------------------------------------------------------- formulas


class Formula:
    pass


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True)
class Eq(Formula):
    lhs: ArrTerm
    rhs: ArrTerm


@dataclass(frozen=True)
class And(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Or(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Implies(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class ExistsObj(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class ForallObj(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class ExistsArr(Formula):
    var: str
    dom: ObjTerm
    cod: ObjTerm
    body: Formula


@dataclass(frozen=True)
class ForallArr(Formula):
    var: str
    dom: ObjTerm
    cod: ObjTerm
    body: Formula


TOP = Top()
BOTTOM = Bottom()


# -------------------------------------------------------------------- typing


def term_type(t: ArrTerm, env: dict) -> tuple:
    """(dom, cod) of an arrow term; env maps arrow-variable names to types."""
    if isinstance(t, ArrVar):
        if t.name not in env:
            raise LogicError(f"unbound arrow variable {t.name!r}")
        return env[t.name]
    if isinstance(t, ArrParam):
        if t.dom is None or t.cod is None:
            raise LogicError(f"unresolved arrow parameter {t.name!r}")
        return (t.dom, t.cod)
    if isinstance(t, IdArr):
        return (t.obj, t.obj)
    if isinstance(t, CompArr):
        d1, c1 = term_type(t.first, env)
        d2, c2 = term_type(t.after, env)
        if not obj_term_eq(c1, d2):
            raise LogicError(f"composition type mismatch in {t!r}")
        return (d1, c2)
    raise LogicError(f"not an arrow term: {t!r}")


def check_obj_term(t: ObjTerm, obj_vars: set):
    if isinstance(t, ObjVar) and t.name not in obj_vars:
        raise LogicError(f"unbound object variable {t.name!r}")
    if isinstance(t, ObjParam) and t.value is None:
        raise LogicError(f"unresolved object parameter {t.name!r}")


def typecheck(phi: Formula, arr_env: Optional[dict] = None, obj_vars: Optional[set] = None):
    """Raise LogicError unless phi is well-typed in the given variable scope."""
    arr_env = dict(arr_env or {})
    obj_vars = set(obj_vars or ())
    if isinstance(phi, (Top, Bottom)):
        return
    if isinstance(phi, Eq):
        d1, c1 = term_type(phi.lhs, arr_env)
        d2, c2 = term_type(phi.rhs, arr_env)
        for t in (d1, c1, d2, c2):
            check_obj_term(t, obj_vars)
        if not (obj_term_eq(d1, d2) and obj_term_eq(c1, c2)):
            raise LogicError(f"equality between non-parallel arrows: {phi.lhs!r} = {phi.rhs!r}")
        return
    if isinstance(phi, (And, Or, Implies)):
        typecheck(phi.lhs, arr_env, obj_vars)
        typecheck(phi.rhs, arr_env, obj_vars)
        return
    if isinstance(phi, Not):
        typecheck(phi.body, arr_env, obj_vars)
        return
    if isinstance(phi, (ExistsObj, ForallObj)):
        typecheck(phi.body, arr_env, obj_vars | {phi.var})
        return
    if isinstance(phi, (ExistsArr, ForallArr)):
        check_obj_term(phi.dom, obj_vars)
        check_obj_term(phi.cod, obj_vars)
        new_env = dict(arr_env)
        new_env[phi.var] = (phi.dom, phi.cod)
        typecheck(phi.body, new_env, obj_vars)
        return
    raise LogicError(f"not a formula: {phi!r}")


# ------------------------------------------------------------------ traversal


def map_terms(phi: Formula, f_obj, f_arr) -> Formula:
    """Rebuild phi applying f_obj to object terms and f_arr to arrow leaves."""

    def on_obj(t: ObjTerm) -> ObjTerm:
        return f_obj(t)

    def on_arr(t: ArrTerm) -> ArrTerm:
        if isinstance(t, (ArrVar, ArrParam)):
            return f_arr(t)
        if isinstance(t, IdArr):
            return IdArr(on_obj(t.obj))
        if isinstance(t, CompArr):
            return CompArr(on_arr(t.after), on_arr(t.first))
        raise LogicError(f"bad arrow term {t!r}")

    if isinstance(phi, (Top, Bottom)):
        return phi
    if isinstance(phi, Eq):
        return Eq(on_arr(phi.lhs), on_arr(phi.rhs))
    if isinstance(phi, And):
        return And(map_terms(phi.lhs, f_obj, f_arr), map_terms(phi.rhs, f_obj, f_arr))
    if isinstance(phi, Or):
        return Or(map_terms(phi.lhs, f_obj, f_arr), map_terms(phi.rhs, f_obj, f_arr))
    if isinstance(phi, Implies):
        return Implies(map_terms(phi.lhs, f_obj, f_arr), map_terms(phi.rhs, f_obj, f_arr))
    if isinstance(phi, Not):
        return Not(map_terms(phi.body, f_obj, f_arr))
    if isinstance(phi, ExistsObj):
        return ExistsObj(phi.var, map_terms(phi.body, f_obj, f_arr))
    if isinstance(phi, ForallObj):
        return ForallObj(phi.var, map_terms(phi.body, f_obj, f_arr))
    if isinstance(phi, ExistsArr):
        return ExistsArr(phi.var, f_obj(phi.dom), f_obj(phi.cod), map_terms(phi.body, f_obj, f_arr))
    if isinstance(phi, ForallArr):
        return ForallArr(phi.var, f_obj(phi.dom), f_obj(phi.cod), map_terms(phi.body, f_obj, f_arr))
    raise LogicError(f"not a formula: {phi!r}")


def subst_obj(phi: Formula, name: str, value) -> Formula:
    """Replace the object variable by a parameter carrying the value."""

    def on_obj(t):
        if isinstance(t, ObjVar) and t.name == name:
            return ObjParam(name, value)
        return t

    return map_terms(phi, on_obj, lambda t: t)


def subst_arr(phi: Formula, name: str, value, dom: ObjTerm, cod: ObjTerm) -> Formula:
    """Replace the arrow variable by a parameter carrying the value."""

    def on_arr(t):
        if isinstance(t, ArrVar) and t.name == name:
            return ArrParam(name, value, dom, cod)
        return t

    return map_terms(phi, lambda t: t, on_arr)


def obj_params(phi: Formula) -> dict:
    out = {}

    def on_obj(t):
        if isinstance(t, ObjParam):
            out[t.name] = t.value
        return t

    def on_arr(t):
        if isinstance(t, ArrParam):
            if t.dom is not None:
                on_obj(t.dom)
            if t.cod is not None:
                on_obj(t.cod)
        return t

    map_terms(phi, on_obj, on_arr)
    return out


# ---------------------------------------------------------------- delta0 test


def is_delta0(phi: Formula) -> bool:
    """True iff every variable is an arrow variable with domain 1, every atom
    compares arrows out of 1, and every quantifier binds such a variable."""

    def go(phi, env):
        if isinstance(phi, (Top, Bottom)):
            return True
        if isinstance(phi, Eq):
            try:
                d1, _ = term_type(phi.lhs, env)
                d2, _ = term_type(phi.rhs, env)
            except LogicError:
                return False
            return isinstance(d1, OneObj) and isinstance(d2, OneObj)
        if isinstance(phi, (And, Or, Implies)):
            return go(phi.lhs, env) and go(phi.rhs, env)
        if isinstance(phi, Not):
            return go(phi.body, env)
        if isinstance(phi, (ExistsObj, ForallObj)):
            return False
        if isinstance(phi, (ExistsArr, ForallArr)):
            if not isinstance(phi.dom, OneObj):
                return False
            return go(phi.body, {**env, phi.var: (phi.dom, phi.cod)})
        return False

    return go(phi, {})


# ------------------------------------------------------- parameter transport


def pullback_slice_obj(h, p, x):
    from ..catkit.slices import SlObj

    apex, pr1, pr2 = h.pullback(x.anchor, p)
    return SlObj(apex, pr2)


def pullback_slice_mor(h, p, j):
    from ..catkit.slices import SlMor

    dom_v = pullback_slice_obj(h, p, j.dom)
    cod_v = pullback_slice_obj(h, p, j.cod)
    _, d1, d2 = h.pullback(j.dom.anchor, p)
    base = h.into_pullback(j.cod.anchor, p, h.compose(j.base, d1), d2)
    return SlMor(dom_v, cod_v, base)


def pullback_formula(h, p, phi: Formula) -> Formula:
    """Base change: replace every parameter of the sentence over U by its
    canonical pullback along p: V -> U."""

    def on_obj(t):
        if isinstance(t, ObjParam):
            return ObjParam(t.name, pullback_slice_obj(h, p, t.value))
        return t

    def on_arr(t):
        if isinstance(t, ArrParam):
            return ArrParam(
                t.name,
                pullback_slice_mor(h, p, t.value),
                on_obj(t.dom) if t.dom is not None else None,
                on_obj(t.cod) if t.cod is not None else None,
            )
        return t

    return map_terms(phi, on_obj, on_arr)


def isomorph(h_slice, phi: Formula, isos: dict) -> Formula:
    """Conjugate the parameters of phi along one iso per object parameter.

    isos maps object-parameter names to slice isomorphisms A -> A'; arrow
    parameters j: A -> B become iso_B o j o iso_A^{-1}.  Parameters not named
    keep the identity iso.
    """
    for name, iso in isos.items():
        if not h_slice.is_iso(iso):
            raise LogicError(f"isomorph: supplied morphism for {name!r} is not an isomorphism")

    def iso_for(t: ObjTerm):
        if isinstance(t, ObjParam) and t.name in isos:
            return isos[t.name]
        if isinstance(t, ObjParam):
            return h_slice.identity(t.value)
        return None

    def on_obj(t):
        if isinstance(t, ObjParam) and t.name in isos:
            return ObjParam(t.name, h_slice.cod(isos[t.name]))
        return t

    def on_arr(t):
        if isinstance(t, ArrParam):
            i_dom = iso_for(t.dom)
            i_cod = iso_for(t.cod)
            val = t.value
            if i_dom is not None:
                val = h_slice.compose(val, h_slice.inverse(i_dom))
            if i_cod is not None:
                val = h_slice.compose(i_cod, val)
            return ArrParam(t.name, val, on_obj(t.dom), on_obj(t.cod))
        return t

    return map_terms(phi, on_obj, on_arr)


def unslice_formula(h, phi: Formula) -> Formula:
    """Turn a sentence over the terminal object into a plain sentence in h:
    parameters lose their (unique) anchors."""

    def on_obj(t):
        if isinstance(t, ObjParam):
            return ObjParam(t.name, t.value.apex)
        return t

    def on_arr(t):
        if isinstance(t, ArrParam):
            return ArrParam(t.name, t.value.base, on_obj(t.dom), on_obj(t.cod))
        return t

    return map_terms(phi, on_obj, on_arr)


def slice_formula(h, p, phi: Formula) -> Formula:
    """Transport a sentence over V in h to a sentence over (V, p) in h/U,
    along the equivalence h/V = (h/U)/(V,p); p: V -> U."""
    from ..catkit.slices import SliceHandle, SlMor, SlObj

    outer = SliceHandle(h, h.cod(p))
    v_obj = SlObj(h.dom(p), p)

    def wrap_obj(x):
        apex = SlObj(x.apex, h.compose(p, x.anchor))
        return SlObj(apex, SlMor(apex, v_obj, x.anchor))

    def wrap_mor(j):
        d = wrap_obj(j.dom)
        c = wrap_obj(j.cod)
        return SlMor(d, c, SlMor(d.apex, c.apex, j.base))

    def on_obj(t):
        if isinstance(t, ObjParam):
            return ObjParam(t.name, wrap_obj(t.value))
        return t

    def on_arr(t):
        if isinstance(t, ArrParam):
            return ArrParam(t.name, wrap_mor(t.value), on_obj(t.dom), on_obj(t.cod))
        return t

    return map_terms(phi, on_obj, on_arr)


# ------------------------------------------------------------------- printing


_PREC_OR = 1
_PREC_AND = 2
_PREC_NOT = 3


def print_formula(phi: Formula) -> str:
    return _pf(phi)


def _paren(s: str, need: bool) -> str:
    return f"({s})" if need else s


def _pt_obj(t: ObjTerm) -> str:
    if isinstance(t, OneObj):
        return "1"
    return t.name


def _pt_arr(t: ArrTerm, left_of_comp=False) -> str:
    if isinstance(t, (ArrVar, ArrParam)):
        return t.name
    if isinstance(t, IdArr):
        return f"id[{_pt_obj(t.obj)}]"
    if isinstance(t, CompArr):
        head = _pt_arr(t.after)
        if isinstance(t.after, CompArr):
            head = f"({head})"
        return f"{head} o {_pt_arr(t.first)}"
    raise LogicError(f"bad arrow term {t!r}")


def _pf(phi: Formula, prec: int = 0) -> str:
    if isinstance(phi, Top):
        return "true"
    if isinstance(phi, Bottom):
        return "false"
    if isinstance(phi, Eq):
        return f"{_pt_arr(phi.lhs)} = {_pt_arr(phi.rhs)}"
    if isinstance(phi, Not):
        return _paren(f"not {_pf(phi.body, _PREC_NOT)}", prec > _PREC_NOT)
    if isinstance(phi, And):
        s = f"{_pf(phi.lhs, _PREC_AND)} and {_pf(phi.rhs, _PREC_AND + 1)}"
        return _paren(s, prec > _PREC_AND)
    if isinstance(phi, Or):
        s = f"{_pf(phi.lhs, _PREC_OR)} or {_pf(phi.rhs, _PREC_OR + 1)}"
        return _paren(s, prec > _PREC_OR)
    if isinstance(phi, Implies):
        s = f"{_pf(phi.lhs, 1)} => {_pf(phi.rhs, 0)}"
        return _paren(s, prec > 0)
    if isinstance(phi, ExistsObj):
        return _paren(f"exists {phi.var}. {_pf(phi.body)}", prec > 0)
    if isinstance(phi, ForallObj):
        return _paren(f"forall {phi.var}. {_pf(phi.body)}", prec > 0)
    if isinstance(phi, ExistsArr):
        s = f"exists {phi.var}: {_pt_obj(phi.dom)} -> {_pt_obj(phi.cod)}. {_pf(phi.body)}"
        return _paren(s, prec > 0)
    if isinstance(phi, ForallArr):
        s = f"forall {phi.var}: {_pt_obj(phi.dom)} -> {_pt_obj(phi.cod)}. {_pf(phi.body)}"
        return _paren(s, prec > 0)
    raise LogicError(f"not a formula: {phi!r}")
