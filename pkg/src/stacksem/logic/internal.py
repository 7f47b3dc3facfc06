"""The usual internal first-order language, and its delta0 correspondence.

The internal language has typed element variables, constants (sections),
function symbols of arity one or two, and relation symbols; the delta0
fragment of the language of categories translates back and forth:

  * a unary application chain corresponds to a composite arrow term;
  * a relation atom R(x, y) becomes "exists z in R. (p1 z = x and p2 z = y)";
  * a binary application f(t1, t2) introduces a fresh element z of the domain
    product pinned by projection equations.

The chosen products and projections become parameters of the translated
formula, as they must.  "Provably equivalent" is realized operationally:
both directions produce formulas with identical classifying subobjects on
every tested instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from ..catkit.base import Subobject
from ..catkit.slices import SlMor, SlObj
from .classify import _Ctx, _U_VAR, resolve_obj
from .formulas import (
    ONE,
    And,
    ArrParam,
    ArrTerm,
    ArrVar,
    Bottom,
    CompArr,
    Eq,
    ExistsArr,
    ForallArr,
    Formula,
    IdArr,
    Implies,
    LogicError,
    Not,
    ObjParam,
    Or,
    Top,
)

# ------------------------------------------------------------------ term ast


@dataclass(frozen=True)
class IVar:
    name: str


@dataclass(frozen=True)
class IConst:
    """A section of an anchored object, as a nullary term."""

    name: str
    value: Any  # slice morphism out of the slice terminal


@dataclass(frozen=True)
class IFuncSym:
    """A function symbol with anchored factor and result types.

    base: a base-category morphism; for arity 1 from the factor apex, for
    arity 2 from the canonical base product of the two factor apexes.
    """

    name: str
    base: Any
    factors: tuple
    result: Any


@dataclass(frozen=True)
class IRelSym:
    name: str
    sub: Subobject  # of the canonical base product of the factor apexes
    factors: tuple


@dataclass(frozen=True)
class IApp:
    sym: IFuncSym
    args: tuple


# --------------------------------------------------------------- formula ast


@dataclass(frozen=True)
class IEq:
    lhs: Any
    rhs: Any


@dataclass(frozen=True)
class IRel:
    sym: IRelSym
    args: tuple


@dataclass(frozen=True)
class ITop:
    pass


@dataclass(frozen=True)
class IBottom:
    pass


@dataclass(frozen=True)
class IAnd:
    lhs: Any
    rhs: Any


@dataclass(frozen=True)
class IOr:
    lhs: Any
    rhs: Any


@dataclass(frozen=True)
class IImplies:
    lhs: Any
    rhs: Any


@dataclass(frozen=True)
class INot:
    body: Any


@dataclass(frozen=True)
class IExists:
    var: str
    vtype: Any  # slice object
    body: Any


@dataclass(frozen=True)
class IForall:
    var: str
    vtype: Any
    body: Any


# ------------------------------------------------------- direct semantics


def _denote_iterm(ctx: _Ctx, t):
    h = ctx.handle
    if isinstance(t, IVar):
        return ctx.proj(t.name)
    if isinstance(t, IConst):
        return h.compose(t.value.base, ctx.proj(_U_VAR))
    if isinstance(t, IApp):
        if len(t.args) == 1:
            return h.compose(t.sym.base, _denote_iterm(ctx, t.args[0]))
        if len(t.args) == 2:
            d1 = _denote_iterm(ctx, t.args[0])
            d2 = _denote_iterm(ctx, t.args[1])
            return h.compose(t.sym.base, h.pair_morphism(d1, d2))
        raise LogicError("function symbols of arity > 2 are not supported")
    raise LogicError(f"bad internal term {t!r}")


def _interpret_internal(ctx: _Ctx, psi) -> Subobject:
    h = ctx.handle
    if isinstance(psi, ITop):
        return h.top(ctx.product)
    if isinstance(psi, IBottom):
        return h.bottom(ctx.product)
    if isinstance(psi, IEq):
        return h.equalizer_sub(_denote_iterm(ctx, psi.lhs), _denote_iterm(ctx, psi.rhs))
    if isinstance(psi, IRel):
        if len(psi.args) != 2:
            raise LogicError("relation symbols of arity != 2 are not supported")
        m = h.pair_morphism(_denote_iterm(ctx, psi.args[0]), _denote_iterm(ctx, psi.args[1]))
        return h.pullback_sub(m, psi.sym.sub)
    if isinstance(psi, IAnd):
        return h.sub_intersect(_interpret_internal(ctx, psi.lhs), _interpret_internal(ctx, psi.rhs))
    if isinstance(psi, IOr):
        return h.sub_union(_interpret_internal(ctx, psi.lhs), _interpret_internal(ctx, psi.rhs))
    if isinstance(psi, IImplies):
        return h.heyting_sub(_interpret_internal(ctx, psi.lhs), _interpret_internal(ctx, psi.rhs))
    if isinstance(psi, INot):
        return h.heyting_sub(_interpret_internal(ctx, psi.body), h.bottom(ctx.product))
    if isinstance(psi, (IExists, IForall)):
        bound = psi.vtype
        ctx2 = ctx.extend(psi.var, bound.apex)
        _, p1, _ = h.product(ctx.product, bound.apex)
        guard = h.equalizer_sub(h.compose(bound.anchor, ctx2.projections[-1]), ctx2.proj(_U_VAR))
        body = _interpret_internal(ctx2, psi.body)
        if isinstance(psi, IExists):
            return h.image_sub(p1, h.sub_intersect(guard, body))
        return h.dual_image(p1, h.heyting_sub(guard, body))
    raise LogicError(f"bad internal formula {psi!r}")


def classify_internal(h, u, psi) -> Subobject:
    """Classifying subobject of an internal sentence over u, interpreted
    directly (not via the delta0 translation)."""
    ctx = _Ctx(h, [(_U_VAR, u)], u, [h.identity(u)])
    return _interpret_internal(ctx, psi)


# ----------------------------------------------------- delta0 -> internal


def _head_list(t: ArrTerm):
    if isinstance(t, CompArr):
        return _head_list(t.after) + _head_list(t.first)
    return [t]


def _spine(t: ArrTerm):
    """Flatten composition: t = h1 o ... o hk o leaf, leaf of domain 1."""
    seq = _head_list(t)
    return seq[:-1], seq[-1]


def d0_to_internal(phi: Formula, handle):
    """Translate a delta0 sentence over U into the internal language.

    handle is the slice handle the parameters live in.
    """

    def term(t: ArrTerm):
        heads, leaf = _spine(t)
        if isinstance(leaf, ArrVar):
            out = IVar(leaf.name)
        elif isinstance(leaf, ArrParam):
            out = IConst(leaf.name, leaf.value)
        elif isinstance(leaf, IdArr):
            out = IConst("id1", handle.identity(handle.terminal()))
        else:
            raise LogicError(f"bad delta0 term leaf {leaf!r}")
        for head in reversed(heads):
            if isinstance(head, IdArr):
                continue
            if not isinstance(head, ArrParam):
                raise LogicError(f"variable used in applied position: {head!r}")
            dom = resolve_obj(handle, head.dom) or handle.terminal()
            cod = resolve_obj(handle, head.cod) or handle.terminal()
            sym = IFuncSym(head.name, head.value.base, (dom,), cod)
            out = IApp(sym, (out,))
        return out

    def go(phi):
        if isinstance(phi, Top):
            return ITop()
        if isinstance(phi, Bottom):
            return IBottom()
        if isinstance(phi, Eq):
            return IEq(term(phi.lhs), term(phi.rhs))
        if isinstance(phi, And):
            return IAnd(go(phi.lhs), go(phi.rhs))
        if isinstance(phi, Or):
            return IOr(go(phi.lhs), go(phi.rhs))
        if isinstance(phi, Implies):
            return IImplies(go(phi.lhs), go(phi.rhs))
        if isinstance(phi, Not):
            return INot(go(phi.body))
        if isinstance(phi, ExistsArr):
            return IExists(phi.var, resolve_obj(handle, phi.cod), go(phi.body))
        if isinstance(phi, ForallArr):
            return IForall(phi.var, resolve_obj(handle, phi.cod), go(phi.body))
        raise LogicError(f"not a delta0 formula: {phi!r}")

    return go(phi)


# ----------------------------------------------------- internal -> delta0


def internal_to_d0(psi, handle) -> Formula:
    """Translate an internal sentence over U back to a delta0 category formula.

    handle is the slice handle.  Every binary application and relation atom
    introduces a fresh bounded variable with projection side conditions.
    """
    base = handle.parent
    counter = [0]

    def fresh():
        counter[0] += 1
        return f"_z{counter[0]}"

    def obj_of(name, x):
        return ObjParam(name, x)

    def product_params(symname, x1: SlObj, x2: SlObj):
        """Base product of the factor apexes, anchored through the first
        factor, with its projections as slice morphisms."""
        prod, p1, p2 = base.product(x1.apex, x2.apex)
        w = SlObj(prod, base.compose(x1.anchor, p1))
        return w, SlMor(w, x1, p1), SlMor(w, x2, p2)

    def term(t, binds, conds):
        if isinstance(t, IVar):
            return ArrVar(t.name)
        if isinstance(t, IConst):
            return ArrParam(
                t.name, t.value, ONE, obj_of(f"_c_{t.name}", handle.cod(t.value))
            )
        if isinstance(t, IApp) and len(t.args) == 1:
            sym = t.sym
            inner = term(t.args[0], binds, conds)
            val = SlMor(sym.factors[0], sym.result, sym.base)
            return CompArr(
                ArrParam(
                    sym.name,
                    val,
                    obj_of(f"_d_{sym.name}", sym.factors[0]),
                    obj_of(f"_c_{sym.name}", sym.result),
                ),
                inner,
            )
        if isinstance(t, IApp) and len(t.args) == 2:
            x1, x2 = t.sym.factors
            w, pr1, pr2 = product_params(t.sym.name, x1, x2)
            wterm = obj_of(f"_w_{t.sym.name}", w)
            t1 = term(t.args[0], binds, conds)
            t2 = term(t.args[1], binds, conds)
            z = fresh()
            binds.append((z, wterm))
            conds.append(
                Eq(CompArr(ArrParam(f"_p1_{t.sym.name}", pr1, wterm, obj_of(f"_x1_{t.sym.name}", x1)), ArrVar(z)), t1)
            )
            conds.append(
                Eq(CompArr(ArrParam(f"_p2_{t.sym.name}", pr2, wterm, obj_of(f"_x2_{t.sym.name}", x2)), ArrVar(z)), t2)
            )
            fval = SlMor(w, t.sym.result, t.sym.base)
            return CompArr(
                ArrParam(t.sym.name, fval, wterm, obj_of(f"_c_{t.sym.name}", t.sym.result)),
                ArrVar(z),
            )
        raise LogicError(f"bad internal term {t!r}")

    def wrap(binds, conds, atom: Formula) -> Formula:
        out = atom
        for c in reversed(conds):
            out = And(c, out)
        for z, wterm in reversed(binds):
            out = ExistsArr(z, ONE, wterm, out)
        return out

    def go(psi) -> Formula:
        if isinstance(psi, ITop):
            return Top()
        if isinstance(psi, IBottom):
            return Bottom()
        if isinstance(psi, IEq):
            binds, conds = [], []
            lhs = term(psi.lhs, binds, conds)
            rhs = term(psi.rhs, binds, conds)
            return wrap(binds, conds, Eq(lhs, rhs))
        if isinstance(psi, IRel):
            binds, conds = [], []
            args = [term(a, binds, conds) for a in psi.args]
            x1, x2 = psi.sym.factors
            r0, incl = base.sub_to_obj(psi.sym.sub)
            prod, p1, p2 = base.product(x1.apex, x2.apex)
            q1_base = base.compose(p1, incl)
            q2_base = base.compose(p2, incl)
            robj = SlObj(r0, base.compose(x1.anchor, q1_base))
            rterm = obj_of(f"_r_{psi.sym.name}", robj)
            q1 = SlMor(robj, x1, q1_base)
            q2 = SlMor(robj, x2, q2_base)
            z = fresh()
            atom = And(
                Eq(CompArr(ArrParam(f"_p1_{psi.sym.name}", q1, rterm, obj_of(f"_x1_{psi.sym.name}", x1)), ArrVar(z)), args[0]),
                Eq(CompArr(ArrParam(f"_p2_{psi.sym.name}", q2, rterm, obj_of(f"_x2_{psi.sym.name}", x2)), ArrVar(z)), args[1]),
            )
            return wrap(binds + [(z, rterm)], conds, atom)
        if isinstance(psi, IAnd):
            return And(go(psi.lhs), go(psi.rhs))
        if isinstance(psi, IOr):
            return Or(go(psi.lhs), go(psi.rhs))
        if isinstance(psi, IImplies):
            return Implies(go(psi.lhs), go(psi.rhs))
        if isinstance(psi, INot):
            return Not(go(psi.body))
        if isinstance(psi, IExists):
            return ExistsArr(psi.var, ONE, obj_of(f"_ty_{psi.var}", psi.vtype), go(psi.body))
        if isinstance(psi, IForall):
            return ForallArr(psi.var, ONE, obj_of(f"_ty_{psi.var}", psi.vtype), go(psi.body))
        raise LogicError(f"bad internal formula {psi!r}")

    return go(psi)
