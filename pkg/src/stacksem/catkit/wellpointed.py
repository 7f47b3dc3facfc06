"""Exhaustive well-pointedness checks for a handle at a size bound.

Four clauses are tested: 1 is a strong generator, 1 is projective, 1 is
indecomposable, 1 is nonempty.  Each clause is either verified at the bound or
refuted with an explicit witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional


@dataclass
class ClauseReport:
    name: str
    verified: bool
    bound: int
    witness: Optional[Any] = None

    def to_json(self):
        return {
            "clause": self.name,
            "verified": self.verified,
            "bound": self.bound,
            "witness": repr(self.witness) if self.witness is not None else None,
        }


@dataclass
class WellPointedReport:
    strong_generator: ClauseReport
    projective: ClauseReport
    indecomposable: ClauseReport
    nonempty: ClauseReport

    def all_verified(self) -> bool:
        return all(
            c.verified
            for c in (self.strong_generator, self.projective, self.indecomposable, self.nonempty)
        )

    def to_json(self):
        return {
            "strong_generator": self.strong_generator.to_json(),
            "projective": self.projective.to_json(),
            "indecomposable": self.indecomposable.to_json(),
            "nonempty": self.nonempty.to_json(),
            "all_verified": self.all_verified(),
        }


def check_wellpointed(h, bound: int) -> WellPointedReport:
    term = h.terminal()

    # strong generator: a mono through which every global element factors is iso
    sg = ClauseReport("strong_generator", True, bound)
    for x in h.objects_upto(bound):
        pts = h.global_elements(x)
        for s in h.subobjects(x):
            if h.sub_eq(s, h.top(x)):
                continue
            if all(h.factors_through_sub(p, s) for p in pts):
                sg = ClauseReport("strong_generator", False, bound, witness=(x, s))
                break
        if not sg.verified:
            break

    # projective: every regular epi onto 1 splits
    pr = ClauseReport("projective", True, bound)
    for x in h.objects_upto(bound):
        for p in h.morphisms(x, term):
            if not h.is_epi(p):
                continue
            if not any(
                h.compose(p, s) == h.identity(term) for s in h.global_elements(x)
            ):
                pr = ClauseReport("projective", False, bound, witness=(x, p))
                break
        if not pr.verified:
            break

    # indecomposable: 1 = A u B forces A or B to be all of 1
    ind = ClauseReport("indecomposable", True, bound)
    subs = h.subobjects(term)
    for a in subs:
        for b in subs:
            if not h.sub_eq(h.sub_union(a, b), h.top(term)):
                continue
            if not (h.sub_eq(a, h.top(term)) or h.sub_eq(b, h.top(term))):
                ind = ClauseReport("indecomposable", False, bound, witness=(a, b))
                break
        if not ind.verified:
            break

    # nonempty: there is no map 1 -> 0
    maps = h.morphisms(term, h.initial())
    ne = ClauseReport("nonempty", not maps, bound, witness=maps[0] if maps else None)

    return WellPointedReport(sg, pr, ind, ne)


def pointwise_mono(h, f) -> bool:
    """Every global element of cod factors through f in at most one way."""
    for y in h.global_elements(h.cod(f)):
        lifts = [x for x in h.global_elements(h.dom(f)) if h.compose(f, x) == y]
        if len(lifts) > 1:
            return False
    return True


def pointwise_epi(h, f) -> bool:
    """Every global element of cod factors through f."""
    return all(
        any(h.compose(f, x) == y for x in h.global_elements(h.dom(f)))
        for y in h.global_elements(h.cod(f))
    )


def pointwise_iso(h, f) -> bool:
    """Every global element of cod factors through f uniquely."""
    for y in h.global_elements(h.cod(f)):
        lifts = [x for x in h.global_elements(h.dom(f)) if h.compose(f, x) == y]
        if len(lifts) != 1:
            return False
    return True
