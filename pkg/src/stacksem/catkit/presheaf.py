"""Functor categories C -> FinSet for a finite index category C.

The index category is given by a full presentation (all morphisms plus a total
composition table) and validated on construction.  Functors and natural
transformations are stored as explicit tables.  Exponentials, power objects
and dependent products are computed by exhaustive enumeration of compatible
families; sizes are tiny, and the universal properties are re-verified by
exhaustion in the test suite.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .base import CatError, DerivedOps, Subobject


@dataclass(frozen=True)
class FinCat:
    """Presentation of a finite category.

    objects: tuple of object ids.
    morphisms: tuple of (id, dom, cod).
    composition: tuple of (g, f, g_after_f) covering every composable pair.
    identities: tuple of (obj, id_morphism) for every object.
    """

    name: str
    objects: tuple
    morphisms: tuple
    composition: tuple
    identities: tuple

    def __post_init__(self):
        object.__setattr__(self, "_obj_index", {o: i for i, o in enumerate(self.objects)})
        object.__setattr__(self, "_mor_index", {m[0]: i for i, m in enumerate(self.morphisms)})
        object.__setattr__(self, "_comp", {(g, f): gf for g, f, gf in self.composition})
        object.__setattr__(self, "_id_of", dict(self.identities))
        self.validate()

    @property
    def key(self):
        return ("fincat", self.name, self.objects, self.morphisms, self.composition)

    def obj_index(self, o):
        return self._obj_index[o]

    def mor_index(self, m):
        return self._mor_index[m]

    def mor(self, m):
        return self.morphisms[self._mor_index[m]]

    def dom(self, m):
        return self.mor(m)[1]

    def cod(self, m):
        return self.mor(m)[2]

    def id_of(self, o):
        return self._id_of[o]

    def hom(self, c, d):
        return [m for m, d0, c0 in self.morphisms if d0 == c and c0 == d]

    def compose(self, g, f):
        """g after f; both are morphism ids."""
        if self.cod(f) != self.dom(g):
            raise CatError(f"index category: cannot compose {g} after {f}")
        return self._comp[(g, f)]

    def validate(self):
        for o in self.objects:
            i = self._id_of.get(o)
            if i is None or self.dom(i) != o or self.cod(i) != o:
                raise CatError(f"index category: bad identity for {o!r}")
        for m, d, c in self.morphisms:
            if d not in self._obj_index or c not in self._obj_index:
                raise CatError(f"index category: dangling endpoint on {m!r}")
            if self._comp.get((m, self._id_of[d])) != m or self._comp.get((self._id_of[c], m)) != m:
                raise CatError(f"index category: identity law fails at {m!r}")
        for g, f, gf in self.composition:
            if self.cod(f) != self.dom(g) or self.dom(gf) != self.dom(f) or self.cod(gf) != self.cod(g):
                raise CatError(f"index category: ill-typed composite {g}o{f}={gf}")
        for f, fd, fc in self.morphisms:
            for g, gd, gc in self.morphisms:
                if fc != gd:
                    continue
                if (g, f) not in self._comp:
                    raise CatError(f"index category: missing composite {g}o{f}")
        for f, fd, fc in self.morphisms:
            for g, gd, gc in self.morphisms:
                if fc != gd:
                    continue
                for h, hd, hc in self.morphisms:
                    if gc != hd:
                        continue
                    if self._comp[(h, self._comp[(g, f)])] != self._comp[(self._comp[(h, g)], f)]:
                        raise CatError(f"index category: associativity fails at {h},{g},{f}")


def point_cat() -> FinCat:
    return FinCat("point", ("*",), (("i", "*", "*"),), (("i", "i", "i"),), (("*", "i"),))


def z2_cat() -> FinCat:
    return FinCat(
        "z2",
        ("*",),
        (("i", "*", "*"), ("s", "*", "*")),
        (("i", "i", "i"), ("i", "s", "s"), ("s", "i", "s"), ("s", "s", "i")),
        (("*", "i"),),
    )


def arrow_cat() -> FinCat:
    return FinCat(
        "arrow",
        ("0", "1"),
        (("i0", "0", "0"), ("i1", "1", "1"), ("a", "0", "1")),
        (
            ("i0", "i0", "i0"),
            ("i1", "i1", "i1"),
            ("a", "i0", "a"),
            ("i1", "a", "a"),
        ),
        (("0", "i0"), ("1", "i1")),
    )


def empty_cat() -> FinCat:
    return FinCat("empty", (), (), (), ())


@dataclass(frozen=True)
class PshObj:
    """A functor C -> FinSet: per-object sizes, per-morphism action tables."""

    sizes: tuple
    actions: tuple

    def size(self, cat: FinCat, c) -> int:
        return self.sizes[cat.obj_index(c)]

    def act(self, cat: FinCat, m):
        return self.actions[cat.mor_index(m)]


@dataclass(frozen=True)
class PshMor:
    dom: PshObj
    cod: PshObj
    components: tuple

    def comp_at(self, cat: FinCat, c):
        return self.components[cat.obj_index(c)]


class PresheafHandle(DerivedOps):
    """Covariant functors from a finite index category into finite sets."""

    def __init__(self, cat: FinCat):
        self.cat = cat
        self.key = ("presheaf", cat.key)

    # -- construction helpers --

    def make_obj(self, sizes, actions) -> PshObj:
        obj = PshObj(tuple(sizes), tuple(tuple(t) for t in actions))
        self.validate_obj(obj)
        return obj

    def validate_obj(self, obj: PshObj):
        cat = self.cat
        if len(obj.sizes) != len(cat.objects) or len(obj.actions) != len(cat.morphisms):
            raise CatError("functor tables have the wrong shape")
        for mi, (m, d, c) in enumerate(cat.morphisms):
            t = obj.actions[mi]
            if len(t) != obj.sizes[cat.obj_index(d)]:
                raise CatError(f"action table for {m} has wrong length")
            if any(not 0 <= v < obj.sizes[cat.obj_index(c)] for v in t):
                raise CatError(f"action table for {m} out of range")
        for o in cat.objects:
            if obj.act(cat, cat.id_of(o)) != tuple(range(obj.size(cat, o))):
                raise CatError("functor does not preserve identities")
        for g, f, gf in cat.composition:
            tf, tg, tgf = obj.act(cat, f), obj.act(cat, g), obj.act(cat, gf)
            if tuple(tg[v] for v in tf) != tgf:
                raise CatError(f"functor does not preserve {g}o{f}")

    def validate_mor(self, f: PshMor):
        cat = self.cat
        for mi, (m, d, c) in enumerate(cat.morphisms):
            fd = f.comp_at(cat, d)
            fc = f.comp_at(cat, c)
            for x in range(f.dom.size(cat, d)):
                if fc[f.dom.act(cat, m)[x]] != f.cod.act(cat, m)[fd[x]]:
                    raise CatError(f"naturality fails at {m}")

    # -- objects --

    def terminal(self) -> PshObj:
        cat = self.cat
        return PshObj(tuple(1 for _ in cat.objects), tuple((0,) for _ in cat.morphisms))

    def initial(self) -> PshObj:
        cat = self.cat
        return PshObj(tuple(0 for _ in cat.objects), tuple(() for _ in cat.morphisms))

    def is_initial(self, x: PshObj) -> bool:
        return all(s == 0 for s in x.sizes)

    def obj_size(self, x: PshObj) -> int:
        return sum(x.sizes)

    def objects_upto(self, max_size: int):
        """All functors of total size <= max_size, sizes then tables, lex order."""
        cat = self.cat
        out = []
        nobj = len(cat.objects)
        if nobj == 0:
            return [PshObj((), ())]
        id_ids = {cat.id_of(o) for o in cat.objects}
        for sizes in itertools.product(range(max_size + 1), repeat=nobj):
            if sum(sizes) > max_size:
                continue
            nonid = [
                (mi, m, d, c)
                for mi, (m, d, c) in enumerate(cat.morphisms)
                if m not in id_ids
            ]
            table_choices = []
            for mi, m, d, c in nonid:
                nd = sizes[cat.obj_index(d)]
                nc = sizes[cat.obj_index(c)]
                if nd > 0 and nc == 0:
                    table_choices = None
                    break
                table_choices.append(list(itertools.product(range(nc), repeat=nd)))
            if table_choices is None:
                continue
            for combo in itertools.product(*table_choices):
                actions = [None] * len(cat.morphisms)
                for o in cat.objects:
                    actions[cat.mor_index(cat.id_of(o))] = tuple(range(sizes[cat.obj_index(o)]))
                for (mi, m, d, c), t in zip(nonid, combo):
                    actions[mi] = t
                obj = PshObj(tuple(sizes), tuple(actions))
                if self._functorial(obj):
                    out.append(obj)
        return out

    def _functorial(self, obj: PshObj) -> bool:
        cat = self.cat
        for g, f, gf in cat.composition:
            tf, tg, tgf = obj.act(cat, f), obj.act(cat, g), obj.act(cat, gf)
            if tuple(tg[v] for v in tf) != tgf:
                return False
        return True

    def representable(self, c) -> PshObj:
        """The covariant hom functor out of c."""
        cat = self.cat
        homs = {d: cat.hom(c, d) for d in cat.objects}
        sizes = tuple(len(homs[d]) for d in cat.objects)
        actions = []
        for m, d, e in cat.morphisms:
            src = homs[d]
            tgt = {h: i for i, h in enumerate(homs[e])}
            actions.append(tuple(tgt[cat.compose(m, h)] for h in src))
        return PshObj(sizes, tuple(actions))

    def cover_objects_upto(self, max_size: int):
        """Finite coproducts of representables with total size <= max_size."""
        cat = self.cat
        reprs = [(c, self.representable(c)) for c in cat.objects]
        out = [self.initial()]
        frontier = [self.initial()]
        while frontier:
            nxt = []
            for obj in frontier:
                for _, r in reprs:
                    s, _, _ = self.coproduct(obj, r)
                    if self.obj_size(s) <= max_size and s not in out:
                        out.append(s)
                        nxt.append(s)
            frontier = nxt
        return sorted(out, key=lambda o: (self.obj_size(o), o.sizes, o.actions))

    # -- morphisms --

    def identity(self, x: PshObj) -> PshMor:
        return PshMor(x, x, tuple(tuple(range(s)) for s in x.sizes))

    def compose(self, g: PshMor, f: PshMor) -> PshMor:
        if f.cod != g.dom:
            raise CatError("compose: middle object mismatch")
        comps = tuple(
            tuple(gc[v] for v in fc) for fc, gc in zip(f.components, g.components)
        )
        return PshMor(f.dom, g.cod, comps)

    def dom(self, f: PshMor):
        return f.dom

    def cod(self, f: PshMor):
        return f.cod

    def morphisms(self, a: PshObj, b: PshObj):
        cat = self.cat
        per_obj = []
        for oi, _ in enumerate(cat.objects):
            per_obj.append(list(itertools.product(range(b.sizes[oi]), repeat=a.sizes[oi])))
        out = []
        for combo in itertools.product(*per_obj):
            f = PshMor(a, b, tuple(combo))
            if self._natural(f):
                out.append(f)
        return out

    def _natural(self, f: PshMor) -> bool:
        cat = self.cat
        for m, d, c in cat.morphisms:
            fd = f.comp_at(cat, d)
            fc = f.comp_at(cat, c)
            ad = f.dom.act(cat, m)
            ac = f.cod.act(cat, m)
            for x in range(f.dom.size(cat, d)):
                if fc[ad[x]] != ac[fd[x]]:
                    return False
        return True

    def is_mono(self, f: PshMor) -> bool:
        return all(len(set(c)) == len(c) for c in f.components)

    def is_epi(self, f: PshMor) -> bool:
        return all(set(c) == set(range(n)) for c, n in zip(f.components, f.cod.sizes))

    def is_iso(self, f: PshMor) -> bool:
        return self.is_mono(f) and self.is_epi(f)

    # -- limits and colimits (componentwise, with canonical pair order) --

    def pullback_elements(self, f: PshMor, g: PshMor):
        if f.cod != g.cod:
            raise CatError("pullback: codomain mismatch")
        out = []
        for oi, _ in enumerate(self.cat.objects):
            fc, gc = f.components[oi], g.components[oi]
            out.append([(a, b) for a in range(len(fc)) for b in range(len(gc)) if fc[a] == gc[b]])
        return out

    def pullback(self, f: PshMor, g: PshMor):
        cat = self.cat
        elems = self.pullback_elements(f, g)
        index = [{p: i for i, p in enumerate(comp)} for comp in elems]
        sizes = tuple(len(comp) for comp in elems)
        actions = []
        for m, d, c in cat.morphisms:
            di, ci = cat.obj_index(d), cat.obj_index(c)
            fa = f.dom.act(cat, m)
            ga = g.dom.act(cat, m)
            actions.append(tuple(index[ci][(fa[a], ga[b])] for (a, b) in elems[di]))
        p = PshObj(sizes, tuple(actions))
        p1 = PshMor(p, f.dom, tuple(tuple(a for a, _ in comp) for comp in elems))
        p2 = PshMor(p, g.dom, tuple(tuple(b for _, b in comp) for comp in elems))
        return p, p1, p2

    def into_pullback(self, f: PshMor, g: PshMor, u: PshMor, v: PshMor) -> PshMor:
        if u.dom != v.dom:
            raise CatError("into_pullback: domain mismatch")
        if self.compose(f, u) != self.compose(g, v):
            raise CatError("into_pullback: square does not commute")
        p, _, _ = self.pullback(f, g)
        elems = self.pullback_elements(f, g)
        index = [{pair: i for i, pair in enumerate(comp)} for comp in elems]
        comps = []
        for oi, _ in enumerate(self.cat.objects):
            comps.append(
                tuple(index[oi][(u.components[oi][z], v.components[oi][z])] for z in range(u.dom.sizes[oi]))
            )
        return PshMor(u.dom, p, tuple(comps))

    def coproduct(self, a: PshObj, b: PshObj):
        cat = self.cat
        sizes = tuple(sa + sb for sa, sb in zip(a.sizes, b.sizes))
        actions = []
        for mi, (m, d, c) in enumerate(cat.morphisms):
            di, ci = cat.obj_index(d), cat.obj_index(c)
            ta, tb = a.actions[mi], b.actions[mi]
            actions.append(tuple(ta) + tuple(v + a.sizes[ci] for v in tb))
        s = PshObj(sizes, tuple(actions))
        i1 = PshMor(a, s, tuple(tuple(range(sa)) for sa in a.sizes))
        i2 = PshMor(b, s, tuple(tuple(range(sa, sa + sb)) for sa, sb in zip(a.sizes, b.sizes)))
        return s, i1, i2

    def copair(self, f: PshMor, g: PshMor) -> PshMor:
        if f.cod != g.cod:
            raise CatError("copair: codomain mismatch")
        s, _, _ = self.coproduct(f.dom, g.dom)
        comps = tuple(cf + cg for cf, cg in zip(f.components, g.components))
        return PshMor(s, f.cod, comps)

    # -- subobject lattice --

    def top(self, x: PshObj) -> Subobject:
        return Subobject(x, tuple(frozenset(range(s)) for s in x.sizes))

    def bottom(self, x: PshObj) -> Subobject:
        return Subobject(x, tuple(frozenset() for _ in x.sizes))

    def sub_union(self, s: Subobject, t: Subobject) -> Subobject:
        if s.target != t.target:
            raise CatError("union: target mismatch")
        return Subobject(s.target, tuple(a | b for a, b in zip(s.mask, t.mask)))

    def sub_intersect(self, s: Subobject, t: Subobject) -> Subobject:
        if s.target != t.target:
            raise CatError("intersect: target mismatch")
        return Subobject(s.target, tuple(a & b for a, b in zip(s.mask, t.mask)))

    def heyting_sub(self, s: Subobject, t: Subobject) -> Subobject:
        """Stage-wise Heyting implication: x at c is in (s => t) iff every
        restriction of x along m: c -> d lands in t_d whenever it lands in s_d."""
        if s.target != t.target:
            raise CatError("heyting: target mismatch")
        cat = self.cat
        x = s.target
        mask = []
        for ci, c in enumerate(cat.objects):
            ok = set()
            for e in range(x.sizes[ci]):
                good = True
                for m, d0, c0 in cat.morphisms:
                    if d0 != c:
                        continue
                    di = cat.obj_index(c0)
                    img = x.act(cat, m)[e]
                    if img in s.mask[di] and img not in t.mask[di]:
                        good = False
                        break
                if good:
                    ok.add(e)
            mask.append(frozenset(ok))
        return Subobject(x, tuple(mask))

    def pullback_sub(self, f: PshMor, s: Subobject) -> Subobject:
        if f.cod != s.target:
            raise CatError("pullback_sub: target mismatch")
        mask = tuple(
            frozenset(x for x in range(f.dom.sizes[oi]) if f.components[oi][x] in s.mask[oi])
            for oi in range(len(f.dom.sizes))
        )
        return Subobject(f.dom, mask)

    def image_sub(self, f: PshMor, s: Subobject) -> Subobject:
        if f.dom != s.target:
            raise CatError("image_sub: source mismatch")
        mask = tuple(
            frozenset(f.components[oi][x] for x in s.mask[oi]) for oi in range(len(f.dom.sizes))
        )
        return Subobject(f.cod, mask)

    def dual_image(self, f: PshMor, s: Subobject) -> Subobject:
        """Largest T <= cod(f) with f*T <= s, by the stage-wise formula:
        y at c is in T iff for every m: c -> d, every x in the fiber of the
        restricted y lies in s_d."""
        if f.dom != s.target:
            raise CatError("dual_image: source mismatch")
        cat = self.cat
        y_obj = f.cod
        mask = []
        for ci, c in enumerate(cat.objects):
            ok = set()
            for y in range(y_obj.sizes[ci]):
                good = True
                for m, d0, c0 in cat.morphisms:
                    if d0 != c:
                        continue
                    di = cat.obj_index(c0)
                    ry = y_obj.act(cat, m)[y]
                    for x in range(f.dom.sizes[di]):
                        if f.components[di][x] == ry and x not in s.mask[di]:
                            good = False
                            break
                    if not good:
                        break
                if good:
                    ok.add(y)
            mask.append(frozenset(ok))
        return Subobject(y_obj, tuple(mask))

    def equalizer_sub(self, f: PshMor, g: PshMor) -> Subobject:
        if f.dom != g.dom or f.cod != g.cod:
            raise CatError("equalizer: not parallel")
        mask = tuple(
            frozenset(x for x in range(f.dom.sizes[oi]) if f.components[oi][x] == g.components[oi][x])
            for oi in range(len(f.dom.sizes))
        )
        return Subobject(f.dom, mask)

    def subobjects(self, x: PshObj):
        cat = self.cat
        per_obj = []
        for s in x.sizes:
            subs = []
            for k in range(s + 1):
                subs.extend(frozenset(c) for c in itertools.combinations(range(s), k))
            per_obj.append(subs)
        out = []
        for combo in itertools.product(*per_obj):
            if self._closed(x, combo):
                out.append(Subobject(x, tuple(combo)))
        out.sort(key=lambda s: (sum(len(m) for m in s.mask), tuple(tuple(sorted(m)) for m in s.mask)))
        return out

    def _closed(self, x: PshObj, mask) -> bool:
        cat = self.cat
        for m, d, c in cat.morphisms:
            di, ci = cat.obj_index(d), cat.obj_index(c)
            t = x.act(cat, m)
            if any(t[e] not in mask[ci] for e in mask[di]):
                return False
        return True

    def sub_to_obj(self, s: Subobject):
        cat = self.cat
        x = s.target
        elems = [sorted(m) for m in s.mask]
        index = [{e: i for i, e in enumerate(comp)} for comp in elems]
        sizes = tuple(len(comp) for comp in elems)
        actions = []
        for m, d, c in cat.morphisms:
            di, ci = cat.obj_index(d), cat.obj_index(c)
            t = x.act(cat, m)
            actions.append(tuple(index[ci][t[e]] for e in elems[di]))
        sub = PshObj(sizes, tuple(actions))
        incl = PshMor(sub, x, tuple(tuple(comp) for comp in elems))
        return sub, incl

    def factor_through(self, s: Subobject, f: PshMor) -> PshMor:
        sub, _ = self.sub_to_obj(s)
        index = [{e: i for i, e in enumerate(sorted(m))} for m in s.mask]
        comps = []
        for oi in range(len(self.cat.objects)):
            try:
                comps.append(tuple(index[oi][v] for v in f.components[oi]))
            except KeyError:
                raise CatError("factor_through: morphism does not land in the subobject")
        return PshMor(f.dom, sub, tuple(comps))

    def factor_through_epi(self, e: PshMor, f: PshMor) -> PshMor:
        comps = []
        for oi in range(len(self.cat.objects)):
            table = [None] * e.cod.sizes[oi]
            for x in range(e.dom.sizes[oi]):
                q = e.components[oi][x]
                v = f.components[oi][x]
                if table[q] is None:
                    table[q] = v
                elif table[q] != v:
                    raise CatError("factor_through_epi: not constant on fibers")
            if any(v is None for v in table):
                raise CatError("factor_through_epi: map not epi")
            comps.append(tuple(table))
        return PshMor(e.cod, f.cod, tuple(comps))

    # -- quotients --

    def quotient_by_equiv(self, r: Subobject, x: PshObj):
        cat = self.cat
        prod, _, _ = self.product(x, x)
        if r.target != prod:
            raise CatError("relation must be a subobject of the canonical product x*x")
        if not self.is_equivalence_relation(r, x):
            raise CatError("not an equivalence relation")
        elems = self.pullback_elements(self.terminal_map(x), self.terminal_map(x))
        comps = []
        for oi in range(len(cat.objects)):
            related = {elems[oi][i] for i in r.mask[oi]}
            reps = []
            cls = {}
            for e in range(x.sizes[oi]):
                for rep in reps:
                    if (rep, e) in related:
                        cls[e] = cls[rep]
                        break
                else:
                    cls[e] = len(reps)
                    reps.append(e)
            comps.append(tuple(cls[e] for e in range(x.sizes[oi])))
        sizes = tuple(max(c) + 1 if c else 0 for c in comps)
        actions = []
        for m, d, c in cat.morphisms:
            di, ci = cat.obj_index(d), cat.obj_index(c)
            t = x.act(cat, m)
            table = [None] * sizes[di]
            for e in range(x.sizes[di]):
                q = comps[di][e]
                v = comps[ci][t[e]]
                if table[q] is None:
                    table[q] = v
                elif table[q] != v:
                    raise CatError("quotient: relation is not a congruence for the actions")
            actions.append(tuple(table))
        qobj = PshObj(sizes, tuple(actions))
        q = PshMor(x, qobj, tuple(comps))
        return qobj, q

    # -- exponentials --

    def _exp_index(self, c, f_obj: PshObj):
        """Flattened domain of a natural family out of c: all (m: c->d, x in F(d))."""
        cat = self.cat
        idx = []
        for d in cat.objects:
            for m in cat.hom(c, d):
                for x in range(f_obj.size(cat, d)):
                    idx.append((d, m, x))
        return idx

    def _exp_families(self, c, f_obj: PshObj, g_obj: PshObj):
        """All natural families (hom(c,-) x F) => G, each a value tuple over _exp_index."""
        cat = self.cat
        idx = self._exp_index(c, f_obj)
        pos = {k: i for i, k in enumerate(idx)}
        choices = [range(g_obj.size(cat, d)) for (d, m, x) in idx]
        out = []
        for vals in itertools.product(*choices):
            ok = True
            for i, (d, m, x) in enumerate(idx):
                for n, nd, nc in cat.morphisms:
                    if nd != d:
                        continue
                    j = pos[(nc, cat.compose(n, m), f_obj.act(cat, n)[x])]
                    if vals[j] != g_obj.act(cat, n)[vals[i]]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                out.append(vals)
        return idx, out

    def exponential(self, a: PshObj, b: PshObj):
        """b^a with evaluation out of the canonical product (b^a)*a."""
        cat = self.cat
        data = {c: self._exp_families(c, a, b) for c in cat.objects}
        sizes = tuple(len(data[c][1]) for c in cat.objects)
        fam_index = {c: {f: i for i, f in enumerate(data[c][1])} for c in cat.objects}
        actions = []
        for m, d, c in cat.morphisms:
            idx_d, fams_d = data[d]
            idx_c, fams_c = data[c]
            pos_d = {k: i for i, k in enumerate(idx_d)}
            table = []
            for fam in fams_d:
                new = tuple(fam[pos_d[(dd, cat.compose(mm, m), x)]] for (dd, mm, x) in idx_c)
                table.append(fam_index[c][new])
            actions.append(tuple(table))
        e = PshObj(sizes, tuple(actions))
        prod, p1, p2 = self.product(e, a)
        elems = self.pullback_elements(self.terminal_map(e), self.terminal_map(a))
        comps = []
        for ci, c in enumerate(cat.objects):
            idx_c, fams_c = data[c]
            pos_c = {k: i for i, k in enumerate(idx_c)}
            table = []
            for (fe, x) in elems[ci]:
                table.append(fams_c[fe][pos_c[(c, cat.id_of(c), x)]])
            comps.append(tuple(table))
        ev = PshMor(prod, b, tuple(comps))
        return e, ev

    def transpose(self, f: PshMor, z: PshObj, a: PshObj, b: PshObj) -> PshMor:
        """Currying: f: z*a -> b into z -> b^a."""
        cat = self.cat
        e, _ = self.exponential(a, b)
        data = {c: self._exp_families(c, a, b) for c in cat.objects}
        elems = self.pullback_elements(self.terminal_map(z), self.terminal_map(a))
        pair_index = [{p: i for i, p in enumerate(comp)} for comp in elems]
        comps = []
        for ci, c in enumerate(cat.objects):
            idx_c, fams_c = data[c]
            fam_pos = {fam: i for i, fam in enumerate(fams_c)}
            table = []
            for zz in range(z.sizes[ci]):
                vals = []
                for (d, m, x) in idx_c:
                    di = cat.obj_index(d)
                    zd = z.act(cat, m)[zz]
                    vals.append(f.components[di][pair_index[di][(zd, x)]])
                table.append(fam_pos[tuple(vals)])
            comps.append(tuple(table))
        return PshMor(z, e, tuple(comps))

    # -- power objects --

    def _pow_index(self, c, f_obj: PshObj):
        return self._exp_index(c, f_obj)

    def _pow_subfunctors(self, c, f_obj: PshObj):
        """All subfunctors of hom(c,-) x F, as frozensets of _pow_index entries."""
        cat = self.cat
        idx = self._pow_index(c, f_obj)
        out = []
        for bits in itertools.product((0, 1), repeat=len(idx)):
            s = frozenset(k for k, b in zip(idx, bits) if b)
            closed = True
            for (d, m, x) in s:
                for n, nd, nc in cat.morphisms:
                    if nd != d:
                        continue
                    if (nc, cat.compose(n, m), f_obj.act(cat, n)[x]) not in s:
                        closed = False
                        break
                if not closed:
                    break
            if closed:
                out.append(s)
        out.sort(key=lambda s: (len(s), tuple(sorted((d, m, x) for (d, m, x) in s))))
        return idx, out

    def power_object(self, a: PshObj):
        cat = self.cat
        data = {c: self._pow_subfunctors(c, a) for c in cat.objects}
        sizes = tuple(len(data[c][1]) for c in cat.objects)
        sub_index = {c: {s: i for i, s in enumerate(data[c][1])} for c in cat.objects}
        actions = []
        for m, d, c in cat.morphisms:
            _, subs_d = data[d]
            table = []
            for s in subs_d:
                moved = frozenset(
                    (dd, mm, x)
                    for (dd, mm, x) in self._pow_index(c, a)
                    if (dd, cat.compose(mm, m), x) in s
                )
                table.append(sub_index[c][moved])
            actions.append(tuple(table))
        pa = PshObj(sizes, tuple(actions))
        prod, _, _ = self.product(a, pa)
        elems = self.pullback_elements(self.terminal_map(a), self.terminal_map(pa))
        mask = []
        for ci, c in enumerate(cat.objects):
            _, subs_c = data[c]
            mask.append(
                frozenset(
                    i
                    for i, (x, si) in enumerate(elems[ci])
                    if (c, cat.id_of(c), x) in subs_c[si]
                )
            )
        return pa, Subobject(prod, tuple(mask))

    def power_transpose(self, s: Subobject, z: PshObj, a: PshObj) -> PshMor:
        """Classify s <= z*a as a map z -> P(a)."""
        cat = self.cat
        pa, _ = self.power_object(a)
        data = {c: self._pow_subfunctors(c, a) for c in cat.objects}
        elems = self.pullback_elements(self.terminal_map(z), self.terminal_map(a))
        pair_index = [{p: i for i, p in enumerate(comp)} for comp in elems]
        comps = []
        for ci, c in enumerate(cat.objects):
            _, subs_c = data[c]
            sub_pos = {sub: i for i, sub in enumerate(subs_c)}
            table = []
            for zz in range(z.sizes[ci]):
                collected = set()
                for (d, m, x) in self._pow_index(c, a):
                    di = cat.obj_index(d)
                    zd = z.act(cat, m)[zz]
                    if pair_index[di][(zd, x)] in s.mask[di]:
                        collected.add((d, m, x))
                table.append(sub_pos[frozenset(collected)])
            comps.append(tuple(table))
        return PshMor(z, pa, tuple(comps))

    # -- dependent products --

    def pi_f(self, f: PshMor, g: PshMor):
        """Dependent product along f: X -> Y of g: Z -> X, by the end formula.

        An element over y in Y(c) is a compatible family s(m: c->d, x in X(d)
        with f(x) = Y(m)(y)) in Z(d) with g(s(m,x)) = x; compatibility means
        s commutes with restriction.  Returns (W, w: W -> Y, counit) where the
        counit goes from the apex of pullback(w, f) to Z.
        """
        if g.cod != f.dom:
            raise CatError("pi_f: g must land in dom(f)")
        cat = self.cat
        x_obj, y_obj, z_obj = f.dom, f.cod, g.dom
        per_c = {}
        for c in cat.objects:
            ci = cat.obj_index(c)
            elems = []
            for y in range(y_obj.sizes[ci]):
                idx = []
                for d in cat.objects:
                    di = cat.obj_index(d)
                    for m in cat.hom(c, d):
                        ry = y_obj.act(cat, m)[y]
                        for x in range(x_obj.sizes[di]):
                            if f.components[di][x] == ry:
                                idx.append((d, m, x))
                pos = {k: i for i, k in enumerate(idx)}
                choices = [
                    [z for z in range(z_obj.sizes[cat.obj_index(d)]) if g.components[cat.obj_index(d)][z] == x]
                    for (d, m, x) in idx
                ]
                for vals in itertools.product(*choices):
                    ok = True
                    for i, (d, m, x) in enumerate(idx):
                        for n, nd, nc in cat.morphisms:
                            if nd != d:
                                continue
                            j = pos[(nc, cat.compose(n, m), x_obj.act(cat, n)[x])]
                            if vals[j] != z_obj.act(cat, n)[vals[i]]:
                                ok = False
                                break
                        if not ok:
                            break
                    if ok:
                        elems.append((y, tuple(idx), vals))
            per_c[c] = elems
        sizes = tuple(len(per_c[c]) for c in cat.objects)
        elem_index = {c: {e: i for i, e in enumerate(per_c[c])} for c in cat.objects}
        actions = []
        for m, d, c in cat.morphisms:
            table = []
            for (y, idx, vals) in per_c[d]:
                pos = {k: i for i, k in enumerate(idx)}
                ry = y_obj.act(cat, m)[y]
                new_idx = []
                ci2 = cat.obj_index(c)
                for dd in cat.objects:
                    ddi = cat.obj_index(dd)
                    for mm in cat.hom(c, dd):
                        ryy = y_obj.act(cat, mm)[ry]
                        for x in range(x_obj.sizes[ddi]):
                            if f.components[ddi][x] == ryy:
                                new_idx.append((dd, mm, x))
                new_vals = tuple(vals[pos[(dd, cat.compose(mm, m), x)]] for (dd, mm, x) in new_idx)
                table.append(elem_index[c][(ry, tuple(new_idx), new_vals)])
            actions.append(tuple(table))
        w_obj = PshObj(sizes, tuple(actions))
        w = PshMor(
            w_obj,
            y_obj,
            tuple(tuple(y for (y, _, _) in per_c[c]) for c in cat.objects),
        )
        elems_pb = self.pullback_elements(w, f)
        comps = []
        for ci, c in enumerate(cat.objects):
            table = []
            for (wi, x) in elems_pb[ci]:
                y, idx, vals = per_c[c][wi]
                table.append(vals[idx.index((c, cat.id_of(c), x))])
            comps.append(tuple(table))
        counit = PshMor(self.pullback(w, f)[0], z_obj, tuple(comps))
        return w_obj, w, counit
