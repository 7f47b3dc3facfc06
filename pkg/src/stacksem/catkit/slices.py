"""Slice categories h/U, with all structure computed by delegation.

Unions, intersections, images, dual images, regular epis and quotients in h/U
are created in h, so every lattice- and factorization-level operation simply
unwraps to the base handle.  Exponentials use the base dependent product along
the anchor; power objects are carved out of U x P(apex) by an internal
"members lie in the right fiber" condition built from base lattice operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .base import CatError, DerivedOps, Subobject


@dataclass(frozen=True)
class SlObj:
    """An object of h/U: an apex of h with its anchor morphism into U."""

    apex: Any
    anchor: Any


@dataclass(frozen=True)
class SlMor:
    dom: SlObj
    cod: SlObj
    base: Any


class SliceHandle(DerivedOps):
    def __init__(self, parent, u):
        self.parent = parent
        self.u = u
        self.key = ("slice", parent.key, u)

    # -- wrapping helpers --

    def make_obj(self, apex, anchor) -> SlObj:
        if self.parent.dom(anchor) != apex or self.parent.cod(anchor) != self.u:
            raise CatError("slice object: anchor must map the apex into the base object")
        return SlObj(apex, anchor)

    def make_mor(self, dom: SlObj, cod: SlObj, base) -> SlMor:
        if self.parent.compose(cod.anchor, base) != dom.anchor:
            raise CatError("slice morphism: triangle does not commute")
        return SlMor(dom, cod, base)

    def base_sub(self, s: Subobject) -> Subobject:
        return Subobject(s.target.apex, s.mask)

    def wrap_sub(self, target: SlObj, s: Subobject) -> Subobject:
        return Subobject(target, s.mask)

    # -- objects --

    def terminal(self) -> SlObj:
        return SlObj(self.u, self.parent.identity(self.u))

    def initial(self) -> SlObj:
        z = self.parent.initial()
        maps = self.parent.morphisms(z, self.u)
        return SlObj(z, maps[0])

    def is_initial(self, x: SlObj) -> bool:
        return self.parent.is_initial(x.apex)

    def obj_size(self, x: SlObj) -> int:
        return self.parent.obj_size(x.apex)

    def objects_upto(self, max_size: int):
        out = []
        for v in self.parent.objects_upto(max_size):
            for f in self.parent.morphisms(v, self.u):
                out.append(SlObj(v, f))
        return out

    def cover_objects_upto(self, max_size: int):
        out = []
        for v in self.parent.cover_objects_upto(max_size):
            for f in self.parent.morphisms(v, self.u):
                out.append(SlObj(v, f))
        return out

    # -- morphisms --

    def identity(self, x: SlObj) -> SlMor:
        return SlMor(x, x, self.parent.identity(x.apex))

    def compose(self, g: SlMor, f: SlMor) -> SlMor:
        if f.cod != g.dom:
            raise CatError("compose: middle object mismatch")
        return SlMor(f.dom, g.cod, self.parent.compose(g.base, f.base))

    def dom(self, f: SlMor):
        return f.dom

    def cod(self, f: SlMor):
        return f.cod

    def morphisms(self, a: SlObj, b: SlObj):
        out = []
        for g in self.parent.morphisms(a.apex, b.apex):
            if self.parent.compose(b.anchor, g) == a.anchor:
                out.append(SlMor(a, b, g))
        return out

    def terminal_map(self, x: SlObj) -> SlMor:
        return SlMor(x, self.terminal(), x.anchor)

    def is_mono(self, f: SlMor) -> bool:
        return self.parent.is_mono(f.base)

    def is_epi(self, f: SlMor) -> bool:
        return self.parent.is_epi(f.base)

    def is_iso(self, f: SlMor) -> bool:
        return self.parent.is_iso(f.base)

    # -- limits and colimits --

    def pullback(self, f: SlMor, g: SlMor):
        if f.cod != g.cod:
            raise CatError("pullback: codomain mismatch")
        p, p1, p2 = self.parent.pullback(f.base, g.base)
        anchor = self.parent.compose(f.dom.anchor, p1)
        pobj = SlObj(p, anchor)
        return pobj, SlMor(pobj, f.dom, p1), SlMor(pobj, g.dom, p2)

    def into_pullback(self, f: SlMor, g: SlMor, u: SlMor, v: SlMor) -> SlMor:
        base = self.parent.into_pullback(f.base, g.base, u.base, v.base)
        pobj, _, _ = self.pullback(f, g)
        return SlMor(u.dom, pobj, base)

    def coproduct(self, a: SlObj, b: SlObj):
        s, i1, i2 = self.parent.coproduct(a.apex, b.apex)
        anchor = self.parent.copair(a.anchor, b.anchor)
        sobj = SlObj(s, anchor)
        return sobj, SlMor(a, sobj, i1), SlMor(b, sobj, i2)

    def copair(self, f: SlMor, g: SlMor) -> SlMor:
        if f.cod != g.cod:
            raise CatError("copair: codomain mismatch")
        sobj, _, _ = self.coproduct(f.dom, g.dom)
        return SlMor(sobj, f.cod, self.parent.copair(f.base, g.base))

    # -- subobject lattice (created in the base) --

    def top(self, x: SlObj) -> Subobject:
        return self.wrap_sub(x, self.parent.top(x.apex))

    def bottom(self, x: SlObj) -> Subobject:
        return self.wrap_sub(x, self.parent.bottom(x.apex))

    def sub_union(self, s: Subobject, t: Subobject) -> Subobject:
        if s.target != t.target:
            raise CatError("union: target mismatch")
        return self.wrap_sub(s.target, self.parent.sub_union(self.base_sub(s), self.base_sub(t)))

    def sub_intersect(self, s: Subobject, t: Subobject) -> Subobject:
        if s.target != t.target:
            raise CatError("intersect: target mismatch")
        return self.wrap_sub(
            s.target, self.parent.sub_intersect(self.base_sub(s), self.base_sub(t))
        )

    def heyting_sub(self, s: Subobject, t: Subobject) -> Subobject:
        if s.target != t.target:
            raise CatError("heyting: target mismatch")
        return self.wrap_sub(s.target, self.parent.heyting_sub(self.base_sub(s), self.base_sub(t)))

    def pullback_sub(self, f: SlMor, s: Subobject) -> Subobject:
        if f.cod != s.target:
            raise CatError("pullback_sub: target mismatch")
        return self.wrap_sub(f.dom, self.parent.pullback_sub(f.base, self.base_sub(s)))

    def image_sub(self, f: SlMor, s: Subobject) -> Subobject:
        if f.dom != s.target:
            raise CatError("image_sub: source mismatch")
        return self.wrap_sub(f.cod, self.parent.image_sub(f.base, self.base_sub(s)))

    def dual_image(self, f: SlMor, s: Subobject) -> Subobject:
        if f.dom != s.target:
            raise CatError("dual_image: source mismatch")
        return self.wrap_sub(f.cod, self.parent.dual_image(f.base, self.base_sub(s)))

    def equalizer_sub(self, f: SlMor, g: SlMor) -> Subobject:
        return self.wrap_sub(f.dom, self.parent.equalizer_sub(f.base, g.base))

    def subobjects(self, x: SlObj):
        return [self.wrap_sub(x, s) for s in self.parent.subobjects(x.apex)]

    def sub_to_obj(self, s: Subobject):
        sub, incl = self.parent.sub_to_obj(self.base_sub(s))
        anchor = self.parent.compose(s.target.anchor, incl)
        sobj = SlObj(sub, anchor)
        return sobj, SlMor(sobj, s.target, incl)

    def factor_through(self, s: Subobject, f: SlMor) -> SlMor:
        sobj, _ = self.sub_to_obj(s)
        return SlMor(f.dom, sobj, self.parent.factor_through(self.base_sub(s), f.base))

    def factor_through_epi(self, e: SlMor, f: SlMor) -> SlMor:
        return SlMor(e.cod, f.cod, self.parent.factor_through_epi(e.base, f.base))

    # -- quotients --

    def quotient_by_equiv(self, r: Subobject, x: SlObj):
        """Quotient by an equivalence relation given on the slice product x*x."""
        prod, p1, p2 = self.product(x, x)
        if r.target != prod:
            raise CatError("relation must live on the canonical slice product")
        if not self.is_equivalence_relation(r, x):
            raise CatError("not an equivalence relation")
        # embed the fibered relation into the base product and quotient there
        m = self.parent.pair_morphism(p1.base, p2.base)
        r_base = self.parent.image_sub(m, Subobject(prod.apex, r.mask))
        qobj_base, q_base = self.parent.quotient_by_equiv(r_base, x.apex)
        anchor = self.parent.factor_through_epi(q_base, x.anchor)
        qobj = SlObj(qobj_base, anchor)
        return qobj, SlMor(x, qobj, q_base)

    # -- exponentials via the base dependent product --

    def exponential(self, a: SlObj, b: SlObj):
        pb, pr1, pr2 = self.parent.pullback(a.anchor, b.anchor)
        w, wmap, counit = self.parent.pi_f(a.anchor, pr1)
        eobj = SlObj(w, wmap)
        prod_e_a, _, _ = self.pullback(self.terminal_map(eobj), self.terminal_map(a))
        ev_base = self.parent.compose(pr2, counit)
        ev = SlMor(prod_e_a, b, ev_base)
        return eobj, ev

    def pi_f(self, f: SlMor, g: SlMor):
        w, wmap, counit = self.parent.pi_f(f.base, g.base)
        anchor = self.parent.compose(f.cod.anchor, wmap)
        wobj = SlObj(w, anchor)
        wmor = SlMor(wobj, f.cod, wmap)
        pobj, q1, q2 = self.pullback(wmor, f)
        eps = SlMor(pobj, g.dom, counit)
        return wobj, wmor, eps

    # -- power objects --

    def power_object(self, a: SlObj):
        par = self.parent
        apex = a.apex
        pa, mem = par.power_object(apex)
        upobj, pu, pp = par.product(self.u, pa)
        tobj, ta, tup = par.product(apex, upobj)
        into_apa = par.pair_morphism(ta, par.compose(pp, tup))
        m_mask = par.pullback_sub(into_apa, mem)
        e_mask = par.equalizer_sub(par.compose(a.anchor, ta), par.compose(pu, tup))
        fiber_ok = par.dual_image(tup, par.heyting_sub(m_mask, e_mask))
        w0, m0 = par.sub_to_obj(fiber_ok)
        pobj = SlObj(w0, par.compose(pu, m0))
        sprod, s1, s2 = self.pullback(self.terminal_map(a), self.terminal_map(pobj))
        phi = par.pair_morphism(s1.base, par.compose(par.compose(pp, m0), s2.base))
        mem_mask = par.pullback_sub(phi, mem)
        return pobj, Subobject(sprod, mem_mask.mask)

    def power_transpose(self, s: Subobject, z: SlObj, a: SlObj) -> SlMor:
        par = self.parent
        pa, mem = par.power_object(a.apex)
        sprod, s1, s2 = self.pullback(self.terminal_map(z), self.terminal_map(a))
        if s.target != sprod:
            raise CatError("power_transpose: relation must live on the slice product")
        m_embed = par.pair_morphism(s1.base, s2.base)
        s_base = par.image_sub(m_embed, Subobject(sprod.apex, s.mask))
        chi = par.power_transpose(s_base, z.apex, a.apex)
        upobj, pu, pp = par.product(self.u, pa)
        tobj, ta, tup = par.product(a.apex, upobj)
        into_apa = par.pair_morphism(ta, par.compose(pp, tup))
        m_mask = par.pullback_sub(into_apa, mem)
        e_mask = par.equalizer_sub(par.compose(a.anchor, ta), par.compose(pu, tup))
        fiber_ok = par.dual_image(tup, par.heyting_sub(m_mask, e_mask))
        psi = par.pair_morphism(z.anchor, chi)
        w0_map = par.factor_through(fiber_ok, psi)
        pobj, _ = self.power_object(a)
        return SlMor(z, pobj, w0_map)
