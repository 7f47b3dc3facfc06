"""Classifying subobjects for delta0 sentences.

A delta0 sentence over U is turned into a formula with one free element
variable ranging over U: each bounded quantifier over sections of an anchored
object (X, f) becomes a quantifier over elements of X guarded by the fiber
condition f(x) = u.  The guarded formula is then interpreted by structural
induction using the handle's subobject lattice: intersections, unions,
Heyting implications, images along projections for "exists" and dual images
for "forall".  The result is the subobject of U through which p: V -> U
factors exactly when V forces the pulled-back sentence.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..catkit.base import CatError, Subobject
from .formulas import (
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
    ObjTerm,
    OneObj,
    Or,
    Top,
    is_delta0,
)


@dataclass
class _Ctx:
    """Element-variable context: a left-nested product with projections.

    vars[0] is the distinguished element of U.  product is the apex object;
    projections[i]: product -> object of vars[i].
    """

    handle: object
    vars: list
    product: object
    projections: list

    def extend(self, name: str, obj):
        h = self.handle
        prod, p1, p2 = h.product(self.product, obj)
        projs = [h.compose(pr, p1) for pr in self.projections] + [p2]
        return _Ctx(h, self.vars + [(name, obj)], prod, projs)

    def proj(self, name: str):
        for i, (n, _) in enumerate(self.vars):
            if n == name:
                return self.projections[i]
        raise LogicError(f"unbound variable {name!r} in context")


_U_VAR = " u"  # cannot collide with parsed identifiers


def resolve_obj(h, t: ObjTerm):
    """The anchored object denoted by an object term of a sentence over U."""
    if isinstance(t, OneObj):
        return None  # the slice terminal; resolved contextually
    if isinstance(t, ObjParam):
        if t.value is None:
            raise LogicError(f"unresolved object parameter {t.name!r}")
        return t.value
    raise LogicError(f"object term {t!r} is not closed")


def _denote_head(ctx: _Ctx, t: ArrTerm):
    """Base morphism of a variable-free arrow term (used after composition)."""
    h = ctx.handle
    if isinstance(t, ArrParam):
        return t.value.base
    if isinstance(t, IdArr):
        x = resolve_obj(h, t.obj)
        if x is None:
            return h.identity(ctx.vars[0][1])
        return h.identity(x.apex)
    if isinstance(t, CompArr):
        return h.compose(_denote_head(ctx, t.after), _denote_head(ctx, t.first))
    raise CatError(f"variable in applied position is unsupported: {t!r}")


def _denote(ctx: _Ctx, t: ArrTerm):
    """Morphism ctx.product -> apex(cod t) denoting a delta0 term (dom = 1)."""
    h = ctx.handle
    if isinstance(t, ArrVar):
        return ctx.proj(t.name)
    if isinstance(t, ArrParam):
        # a section U -> X, applied to the distinguished element
        return h.compose(t.value.base, ctx.proj(_U_VAR))
    if isinstance(t, IdArr):
        return ctx.proj(_U_VAR)
    if isinstance(t, CompArr):
        return h.compose(_denote_head(ctx, t.after), _denote(ctx, t.first))
    raise LogicError(f"bad arrow term {t!r}")


def _interpret(ctx: _Ctx, phi: Formula) -> Subobject:
    h = ctx.handle
    if isinstance(phi, Top):
        return h.top(ctx.product)
    if isinstance(phi, Bottom):
        return h.bottom(ctx.product)
    if isinstance(phi, Eq):
        return h.equalizer_sub(_denote(ctx, phi.lhs), _denote(ctx, phi.rhs))
    if isinstance(phi, And):
        return h.sub_intersect(_interpret(ctx, phi.lhs), _interpret(ctx, phi.rhs))
    if isinstance(phi, Or):
        return h.sub_union(_interpret(ctx, phi.lhs), _interpret(ctx, phi.rhs))
    if isinstance(phi, Implies):
        return h.heyting_sub(_interpret(ctx, phi.lhs), _interpret(ctx, phi.rhs))
    if isinstance(phi, Not):
        return h.heyting_sub(_interpret(ctx, phi.body), h.bottom(ctx.product))
    if isinstance(phi, (ExistsArr, ForallArr)):
        bound = resolve_obj(h, phi.cod)
        if bound is None:
            raise LogicError("quantifier over sections of 1 is degenerate; use the term id[1]")
        ctx2 = ctx.extend(phi.var, bound.apex)
        _, p1, p2 = h.product(ctx.product, bound.apex)
        guard = h.equalizer_sub(
            h.compose(bound.anchor, ctx2.projections[-1]),
            ctx2.proj(_U_VAR),
        )
        body = _interpret(ctx2, phi.body)
        if isinstance(phi, ExistsArr):
            return h.image_sub(p1, h.sub_intersect(guard, body))
        return h.dual_image(p1, h.heyting_sub(guard, body))
    raise LogicError(f"formula {phi!r} is not delta0")


def classify_delta0(h, u, phi: Formula) -> Subobject:
    """The classifying subobject of a delta0 sentence over u in the handle h.

    For every p: V -> u, V forces the pullback of phi iff p factors through
    the returned subobject; that factorization property is the tested
    contract (and is exercised exhaustively by the acceptance suite).
    """
    if not is_delta0(phi):
        raise LogicError("classify_delta0: sentence is not delta0")
    ctx = _Ctx(h, [(_U_VAR, u)], u, [h.identity(u)])
    return _interpret(ctx, phi)
