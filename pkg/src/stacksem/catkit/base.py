"""Shared machinery for the concrete category kernels.

Every handle kind (finite sets, finite presheaves, slices) implements the same
primitive surface: composition, canonical pullbacks and coproducts, the
subobject lattice with images and dual images, quotients of equivalence
relations, exponentials and power objects, and deterministic enumeration.
Canonicity is the load-bearing property: every construction picks one
representative (lexicographic element order for pullbacks, least-representative
quotients, sorted subset order for power objects) so that repeated runs are
bit-for-bit reproducible.

`DerivedOps` builds the operations that are the same formula in every instance
(products, image factorization, kernel pairs, Heyting negation, enumeration of
epis onto a target) out of those primitives.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Iterator


class CatError(Exception):
    """Structural misuse: type mismatch, target mismatch, failed precondition."""


@dataclass(frozen=True)
class Subobject:
    """Canonical monomorphism into ``target``, represented by a membership mask.

    The mask layout is instance-specific (frozenset of ints for finite sets,
    a tuple of frozensets for presheaves, the underlying base mask for
    slices).  Two subobjects of the same target are equal iff their masks are.
    """

    target: Any
    mask: Any

    def __repr__(self):
        return f"Sub({self.target!r}, {self.mask!r})"


def check_same_target(a: Subobject, b: Subobject):
    if a.target != b.target:
        raise CatError(f"subobject target mismatch: {a.target!r} vs {b.target!r}")


class DerivedOps:
    """Operations derivable from the primitive handle surface.

    Subclasses provide: terminal, initial, is_initial, obj_size, objects_upto,
    cover_objects_upto, identity, compose, morphisms, dom, cod, is_mono,
    is_epi, is_iso, pullback, into_pullback, coproduct, copair, equalizer_sub,
    subobjects, top, bottom, sub_union, sub_intersect, heyting_sub,
    pullback_sub, image_sub, dual_image, sub_to_obj, factor_through,
    factor_through_epi, quotient_by_equiv, exponential, power_object,
    power_transpose, pi_f.
    """

    key: tuple

    # -- products (pullback over the terminal object) --

    def product(self, a, b):
        """Canonical binary product with projections."""
        ta = self.terminal_map(a)
        tb = self.terminal_map(b)
        return self.pullback(ta, tb)

    def terminal_map(self, x):
        """The unique map x -> 1."""
        t = self.terminal()
        maps = self.morphisms(x, t)
        if len(maps) != 1:
            raise CatError(f"terminal object is not terminal at {x!r}")
        return maps[0]

    def pair_morphism(self, u, v):
        """Tupling <u, v> into the canonical product of the codomains."""
        a, b = self.cod(u), self.cod(v)
        return self.into_pullback(self.terminal_map(a), self.terminal_map(b), u, v)

    def global_elements(self, x):
        return self.morphisms(self.terminal(), x)

    # -- subobject helpers --

    def sub_eq(self, s: Subobject, t: Subobject) -> bool:
        check_same_target(s, t)
        return s.mask == t.mask

    def sub_leq(self, s: Subobject, t: Subobject) -> bool:
        check_same_target(s, t)
        return self.sub_eq(self.sub_intersect(s, t), s)

    def sub_neg(self, s: Subobject) -> Subobject:
        """Heyting negation: s => bottom."""
        return self.heyting_sub(s, self.bottom(s.target))

    def factors_through_sub(self, p, s: Subobject) -> bool:
        """Whether p: V -> X factors through the canonical mono of s."""
        if self.cod(p) != s.target:
            raise CatError("factors_through_sub: codomain/target mismatch")
        back = self.pullback_sub(p, s)
        return self.sub_eq(back, self.top(self.dom(p)))

    def diagonal_sub(self, x) -> Subobject:
        """The diagonal of x as a subobject of the canonical product x*x."""
        i = self.identity(x)
        d = self.pair_morphism(i, i)
        return self.image_sub(d, self.top(x))

    def kernel_pair_sub(self, f) -> Subobject:
        """Kernel pair of f as a subobject of the canonical product dom*dom."""
        _, p1, p2 = self.pullback(f, f)
        m = self.pair_morphism(p1, p2)
        return self.image_sub(m, self.top(self.dom(m)))

    # -- image factorization --

    def image_factor(self, f):
        """Factor f as (regular epi, canonical mono subobject of cod)."""
        s = self.image_sub(f, self.top(self.dom(f)))
        e = self.factor_through(s, f)
        return e, s

    def inclusion_of(self, s: Subobject):
        """The canonical mono underlying the subobject as a morphism."""
        _, m = self.sub_to_obj(s)
        return m

    # -- quotient helpers --

    def is_equivalence_relation(self, r: Subobject, x) -> bool:
        """r is a subobject of the canonical product x*x; check refl/sym/trans."""
        prod, p1, p2 = self.product(x, x)
        if r.target != prod:
            raise CatError("relation must live on the canonical product")
        if not self.sub_leq(self.diagonal_sub(x), r):
            return False
        swap = self.pair_morphism(p2, p1)
        if not self.sub_eq(self.pullback_sub(swap, r), r):
            return False
        # transitivity: the composite relation r;r is contained in r
        (r1, m1) = self.sub_to_obj(r)
        (r2, m2) = self.sub_to_obj(r)
        a1 = self.compose(p1, m1)
        b1 = self.compose(p2, m1)
        a2 = self.compose(p1, m2)
        b2 = self.compose(p2, m2)
        _, q1, q2 = self.pullback(b1, a2)
        comp = self.pair_morphism(self.compose(a1, q1), self.compose(b2, q2))
        return self.sub_leq(self.image_sub(comp, self.top(self.dom(comp))), r)

    # -- enumeration --

    def regular_epis_onto(self, u, max_size: int, covers_only: bool = True):
        """All regular epis V ->> u with obj_size(V) <= max_size.

        Deterministic: identity cover first, then by domain size and data.
        """
        out = [(u, self.identity(u))]
        pool = self.cover_objects_upto(max_size) if covers_only else self.objects_upto(max_size)
        for v in pool:
            for p in self.morphisms(v, u):
                if v == u and p == self.identity(u):
                    continue
                if self.is_epi(p):
                    out.append((v, p))
        return out

    def morphisms_into(self, u, max_size: int, covers_only: bool = False):
        """All pairs (V, p: V -> u) with obj_size(V) <= max_size."""
        pool = self.cover_objects_upto(max_size) if covers_only else self.objects_upto(max_size)
        out = []
        for v in pool:
            for p in self.morphisms(v, u):
                out.append((v, p))
        return out

    def cover_objects_upto(self, max_size: int):
        return self.objects_upto(max_size)

    def slice(self, u):
        from .slices import SliceHandle

        return SliceHandle(self, u)

    # -- inverse of an isomorphism --

    def inverse(self, f):
        if not self.is_iso(f):
            raise CatError("inverse of a non-isomorphism")
        for g in self.morphisms(self.cod(f), self.dom(f)):
            if self.compose(g, f) == self.identity(self.dom(f)) and self.compose(
                f, g
            ) == self.identity(self.cod(f)):
                return g
        raise CatError("isomorphism with no inverse found (broken instance)")


def enumerate_structures(handle, what: str, bound: int = 4, a=None, b=None) -> Iterator:
    """Uniform enumeration front end.

    what: 'objects' | 'morphisms' | 'regular_epis' | 'subobjects' | 'global_elements'
    """
    if what == "objects":
        yield from handle.objects_upto(bound)
    elif what == "morphisms":
        yield from handle.morphisms(a, b)
    elif what == "regular_epis":
        yield from handle.regular_epis_onto(a, bound, covers_only=False)
    elif what == "subobjects":
        yield from handle.subobjects(a)
    elif what == "global_elements":
        yield from handle.global_elements(a)
    else:
        raise CatError(f"unknown enumeration kind {what!r}")
