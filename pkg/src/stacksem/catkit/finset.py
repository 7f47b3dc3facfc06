"""Skeletal finite sets.

Objects are cardinalities; the elements of the object ``n`` are 0..n-1.  All
constructions pick the lexicographically least representative so results are
reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .base import CatError, DerivedOps, Subobject


@dataclass(frozen=True)
class FinMor:
    dom: int
    cod: int
    table: tuple

    def __call__(self, x: int) -> int:
        return self.table[x]

    def __repr__(self):
        return f"FinMor({self.dom}->{self.cod}, {list(self.table)})"


def _subsets_in_order(n: int):
    """All subsets of 0..n-1, sorted by (size, elements): the canonical order."""
    out = []
    for k in range(n + 1):
        for comb in itertools.combinations(range(n), k):
            out.append(frozenset(comb))
    return out


class FinSetHandle(DerivedOps):
    """The category of finite sets, skeletal and fully enumerable."""

    key = ("finset",)

    # -- objects --

    def terminal(self):
        return 1

    def initial(self):
        return 0

    def is_initial(self, x) -> bool:
        return x == 0

    def obj_size(self, x) -> int:
        return x

    def objects_upto(self, max_size: int):
        return list(range(max_size + 1))

    # -- morphisms --

    def identity(self, x) -> FinMor:
        return FinMor(x, x, tuple(range(x)))

    def compose(self, g: FinMor, f: FinMor) -> FinMor:
        if f.cod != g.dom:
            raise CatError(f"compose: cod {f.cod} != dom {g.dom}")
        return FinMor(f.dom, g.cod, tuple(g.table[v] for v in f.table))

    def dom(self, f: FinMor):
        return f.dom

    def cod(self, f: FinMor):
        return f.cod

    def morphisms(self, a, b):
        if a == 0:
            return [FinMor(0, b, ())]
        return [FinMor(a, b, t) for t in itertools.product(range(b), repeat=a)]

    def is_mono(self, f: FinMor) -> bool:
        return len(set(f.table)) == len(f.table)

    def is_epi(self, f: FinMor) -> bool:
        return set(f.table) == set(range(f.cod))

    def is_iso(self, f: FinMor) -> bool:
        return self.is_mono(f) and self.is_epi(f)

    # -- limits and colimits --

    def pullback_elements(self, f: FinMor, g: FinMor):
        if f.cod != g.cod:
            raise CatError("pullback: codomain mismatch")
        return [(a, b) for a in range(f.dom) for b in range(g.dom) if f(a) == g(b)]

    def pullback(self, f: FinMor, g: FinMor):
        elems = self.pullback_elements(f, g)
        p = len(elems)
        p1 = FinMor(p, f.dom, tuple(a for a, _ in elems))
        p2 = FinMor(p, g.dom, tuple(b for _, b in elems))
        return p, p1, p2

    def into_pullback(self, f: FinMor, g: FinMor, u: FinMor, v: FinMor) -> FinMor:
        if u.dom != v.dom:
            raise CatError("into_pullback: domain mismatch")
        if self.compose(f, u) != self.compose(g, v):
            raise CatError("into_pullback: square does not commute")
        index = {pair: i for i, pair in enumerate(self.pullback_elements(f, g))}
        table = tuple(index[(u(z), v(z))] for z in range(u.dom))
        return FinMor(u.dom, len(index), table)

    def coproduct(self, a, b):
        i1 = FinMor(a, a + b, tuple(range(a)))
        i2 = FinMor(b, a + b, tuple(range(a, a + b)))
        return a + b, i1, i2

    def copair(self, f: FinMor, g: FinMor) -> FinMor:
        if f.cod != g.cod:
            raise CatError("copair: codomain mismatch")
        return FinMor(f.dom + g.dom, f.cod, f.table + g.table)

    # -- subobject lattice --

    def top(self, x) -> Subobject:
        return Subobject(x, frozenset(range(x)))

    def bottom(self, x) -> Subobject:
        return Subobject(x, frozenset())

    def sub_union(self, s: Subobject, t: Subobject) -> Subobject:
        if s.target != t.target:
            raise CatError("union: target mismatch")
        return Subobject(s.target, s.mask | t.mask)

    def sub_intersect(self, s: Subobject, t: Subobject) -> Subobject:
        if s.target != t.target:
            raise CatError("intersect: target mismatch")
        return Subobject(s.target, s.mask & t.mask)

    def heyting_sub(self, s: Subobject, t: Subobject) -> Subobject:
        if s.target != t.target:
            raise CatError("heyting: target mismatch")
        x = s.target
        return Subobject(x, frozenset(e for e in range(x) if e not in s.mask or e in t.mask))

    def pullback_sub(self, f: FinMor, s: Subobject) -> Subobject:
        if f.cod != s.target:
            raise CatError("pullback_sub: target mismatch")
        return Subobject(f.dom, frozenset(x for x in range(f.dom) if f(x) in s.mask))

    def image_sub(self, f: FinMor, s: Subobject) -> Subobject:
        if f.dom != s.target:
            raise CatError("image_sub: source mismatch")
        return Subobject(f.cod, frozenset(f(x) for x in s.mask))

    def dual_image(self, f: FinMor, s: Subobject) -> Subobject:
        """The largest T <= cod(f) with f*T <= s."""
        if f.dom != s.target:
            raise CatError("dual_image: source mismatch")
        ok = []
        for y in range(f.cod):
            if all(x in s.mask for x in range(f.dom) if f(x) == y):
                ok.append(y)
        return Subobject(f.cod, frozenset(ok))

    def equalizer_sub(self, f: FinMor, g: FinMor) -> Subobject:
        if f.dom != g.dom or f.cod != g.cod:
            raise CatError("equalizer: not parallel")
        return Subobject(f.dom, frozenset(x for x in range(f.dom) if f(x) == g(x)))

    def subobjects(self, x):
        return [Subobject(x, m) for m in _subsets_in_order(x)]

    def sub_to_obj(self, s: Subobject):
        elems = sorted(s.mask)
        return len(elems), FinMor(len(elems), s.target, tuple(elems))

    def factor_through(self, s: Subobject, f: FinMor) -> FinMor:
        """Factor f: Z -> X through the canonical mono of s (must land in mask)."""
        elems = sorted(s.mask)
        index = {e: i for i, e in enumerate(elems)}
        try:
            table = tuple(index[f(z)] for z in range(f.dom))
        except KeyError:
            raise CatError("factor_through: morphism does not land in the subobject")
        return FinMor(f.dom, len(elems), table)

    def factor_through_epi(self, e: FinMor, f: FinMor) -> FinMor:
        """Factor f: X -> Z through the epi e: X -> Q (f constant on fibers)."""
        table = [None] * e.cod
        for x in range(e.dom):
            q = e(x)
            if table[q] is None:
                table[q] = f(x)
            elif table[q] != f(x):
                raise CatError("factor_through_epi: not constant on fibers")
        if any(v is None for v in table):
            raise CatError("factor_through_epi: map not epi")
        return FinMor(e.cod, f.cod, tuple(table))

    # -- quotients --

    def quotient_by_equiv(self, r: Subobject, x=None):
        """Quotient by an equivalence relation on x given as a subobject of x*x.

        Classes are indexed by least representative; the returned map is a
        regular epi whose kernel pair is exactly r.
        """
        if x is None:
            prod = r.target
            x = int(round(prod**0.5))
            if x * x != prod:
                raise CatError("cannot infer base object from relation target")
        prod, p1, p2 = self.product(x, x)
        if r.target != prod:
            raise CatError("relation must be a subobject of the canonical product x*x")
        if not self.is_equivalence_relation(r, x):
            raise CatError("not an equivalence relation")
        pairs = self.pullback_elements(self.terminal_map(x), self.terminal_map(x))
        related = {pairs[i] for i in r.mask}
        reps = []
        cls = {}
        for e in range(x):
            for rep in reps:
                if (rep, e) in related:
                    cls[e] = cls[rep]
                    break
            else:
                cls[e] = len(reps)
                reps.append(e)
        q = FinMor(x, len(reps), tuple(cls[e] for e in range(x)))
        return len(reps), q

    # -- exponentials, power objects, dependent products --

    def exponential(self, a, b):
        """b^a with its evaluation map out of the canonical product (b^a)*a."""
        tables = list(itertools.product(range(b), repeat=a))
        e = len(tables)
        pairs = self.pullback_elements(self.terminal_map(e), self.terminal_map(a))
        ev = FinMor(len(pairs), b, tuple(tables[i][x] for (i, x) in pairs))
        return e, ev

    def transpose(self, f: FinMor, z, a, b) -> FinMor:
        """Currying: turn f: z*a -> b into z -> b^a (canonical products)."""
        e, _ = self.exponential(a, b)
        tables = {t: i for i, t in enumerate(itertools.product(range(b), repeat=a))}
        pairs = self.pullback_elements(self.terminal_map(z), self.terminal_map(a))
        index = {p: i for i, p in enumerate(pairs)}
        out = tuple(tables[tuple(f(index[(zz, x)]) for x in range(a))] for zz in range(z))
        return FinMor(z, e, out)

    def power_object(self, a):
        """All subsets of a in canonical (size, elements) order, with membership."""
        subs = _subsets_in_order(a)
        pa = len(subs)
        pairs = self.pullback_elements(self.terminal_map(a), self.terminal_map(pa))
        mem = frozenset(i for i, (x, s) in enumerate(pairs) if x in subs[s])
        prod, _, _ = self.product(a, pa)
        return pa, Subobject(prod, mem)

    def power_subsets(self, a):
        return _subsets_in_order(a)

    def power_transpose(self, s: Subobject, z, a) -> FinMor:
        """Classify s <= z*a as a map z -> P(a)."""
        subs = {m: i for i, m in enumerate(_subsets_in_order(a))}
        pairs = self.pullback_elements(self.terminal_map(z), self.terminal_map(a))
        table = []
        for zz in range(z):
            fiber = frozenset(x for i, (z2, x) in enumerate(pairs) if z2 == zz and i in s.mask)
            table.append(subs[fiber])
        return FinMor(z, len(subs), tuple(table))

    def pi_f(self, f: FinMor, g: FinMor):
        """Dependent product along f: X -> Y of g: Z -> X.

        Elements of the result are (y, section of g over the fiber of y);
        returns (W, w: W -> Y, counit: pullback(w, f) -> Z).
        """
        if g.cod != f.dom:
            raise CatError("pi_f: g must land in dom(f)")
        elems = []
        for y in range(f.cod):
            fiber = [x for x in range(f.dom) if f(x) == y]
            choices = [[z for z in range(g.dom) if g(z) == x] for x in fiber]
            for sec in itertools.product(*choices):
                elems.append((y, tuple(fiber), sec))
        w = FinMor(len(elems), f.cod, tuple(y for y, _, _ in elems))
        pairs = self.pullback_elements(w, f)
        counit_table = []
        for i, x in pairs:
            y, fiber, sec = elems[i]
            counit_table.append(sec[fiber.index(x)])
        counit = FinMor(len(pairs), g.dom, tuple(counit_table))
        return len(elems), w, counit


FINSET = FinSetHandle()
