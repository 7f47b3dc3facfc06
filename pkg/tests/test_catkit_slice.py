import pytest

from stacksem.catkit import FINSET, CatError, FinMor, PresheafHandle, Subobject, z2_cat

h = FINSET
sl3 = h.slice(3)


def anchored(apex, table):
    return sl3.make_obj(apex, FinMor(apex, 3, tuple(table)))


def test_slice_terminal_is_identity():
    t = sl3.terminal()
    assert t.apex == 3 and t.anchor == h.identity(3)
    for x in sl3.objects_upto(2):
        assert len(sl3.morphisms(x, t)) == 1


def test_slice_over_terminal_matches_base():
    sl1 = h.slice(1)
    # objects of FinSet/1 correspond to objects of FinSet, structure preserved
    a = sl1.make_obj(2, h.terminal_map(2))
    b = sl1.make_obj(3, h.terminal_map(3))
    assert len(sl1.morphisms(a, b)) == len(h.morphisms(2, 3))
    p, _, _ = sl1.product(a, b)
    assert p.apex == 6
    e, ev = sl1.exponential(a, b)
    assert e.apex == 9


def test_slice_pullback_created_in_base():
    a = anchored(2, [0, 1])
    b = anchored(2, [0, 0])
    c = anchored(3, [0, 1, 2])
    fa = sl3.morphisms(a, c)
    for f in fa:
        for g in sl3.morphisms(b, c):
            p, p1, p2 = sl3.pullback(f, g)
            bp, bp1, bp2 = h.pullback(f.base, g.base)
            assert p.apex == bp and p1.base == bp1 and p2.base == bp2


def test_slice_image_and_epi_created_in_base():
    a = anchored(3, [0, 0, 1])
    b = anchored(2, [0, 1])
    for f in sl3.morphisms(a, b):
        e, s = sl3.image_factor(f)
        be, bs = h.image_factor(f.base)
        assert s.mask == bs.mask
        assert sl3.is_epi(e) == h.is_epi(be)


def test_slice_union_created_in_base():
    a = anchored(3, [0, 1, 2])
    s = Subobject(a, frozenset({0}))
    t = Subobject(a, frozenset({2}))
    assert sl3.sub_union(s, t).mask == frozenset({0, 2})


def test_slice_quotient_kernel_pair():
    a = anchored(4, [0, 0, 1, 1])
    prod, p1, p2 = sl3.product(a, a)
    # relation merging the two elements of the fiber over 0
    pairs = h.pullback_elements(FinMor(4, 3, (0, 0, 1, 1)), FinMor(4, 3, (0, 0, 1, 1)))
    mask = frozenset(i for i, (x, y) in enumerate(pairs) if x == y or {x, y} == {0, 1})
    r = Subobject(prod, mask)
    q, qm = sl3.quotient_by_equiv(r, a)
    assert q.apex == 3
    assert sl3.is_epi(qm)
    assert sl3.kernel_pair_sub(qm) == r


def test_slice_exponential_fiberwise():
    # over U=3: fibers of a are (2,1,0); fibers of b are (1,2,0)
    a = anchored(3, [0, 0, 1])
    b = anchored(3, [0, 1, 1])
    e, ev = sl3.exponential(a, b)
    # fiberwise function spaces: 1^2=1 over 0, 2^1=2 over 1, 0^0=1 over 2
    fibers = [sum(1 for v in e.anchor.table if v == u) for u in range(3)]
    assert fibers == [1, 2, 1]
    # universal property, counted, on anchored test objects
    for zt in ([0, 1, 2], [0, 0, 2], [1, 1, 1]):
        z = anchored(3, zt)
        prod, pz, pa = sl3.product(z, a)
        curried = set()
        for m in sl3.morphisms(prod, b):
            matches = [
                t
                for t in sl3.morphisms(z, e)
                if sl3.compose(ev, sl3.pair_morphism(sl3.compose(t, pz), pa)) == m
            ]
            assert len(matches) == 1
            curried.add(matches[0])
        assert len(curried) == len(sl3.morphisms(z, e))


def test_slice_power_object_fiberwise():
    a = anchored(3, [0, 0, 1])
    pa, mem = sl3.power_object(a)
    # fiberwise power sets: 2^2=4 over 0, 2^1=2 over 1, 2^0=1 over 2
    fibers = [sum(1 for v in pa.anchor.table if v == u) for u in range(3)]
    assert fibers == [4, 2, 1]


def test_slice_power_object_universal_property():
    a = anchored(2, [0, 1])
    pa, mem = sl3.power_object(a)
    for zt in ([0, 1], [2, 2], [0, 0]):
        z = anchored(2, zt)
        prod, pz, pa_proj = sl3.product(z, a)
        chis = set()
        for s in sl3.subobjects(prod):
            chi = sl3.power_transpose(s, z, a)
            psi = sl3.pair_morphism(pa_proj, sl3.compose(chi, pz))
            assert sl3.pullback_sub(psi, mem).mask == s.mask
            chis.add(chi)
        assert len(chis) == len(sl3.morphisms(z, pa))


def test_slice_of_presheaf_power_object():
    z2 = PresheafHandle(z2_cat())
    f = z2.make_obj((2,), [(0, 1), (1, 0)])
    slz = z2.slice(f)
    t = slz.terminal()
    pa, mem = slz.power_object(t)
    # P(1) over F: subobjects of the fiber...: must at least have global truth values
    assert slz.obj_size(pa) >= 2
    # transpose round trip on the terminal relation
    prod, _, _ = slz.product(t, t)
    for s in slz.subobjects(prod):
        chi = slz.power_transpose(s, t, t)
        assert slz.cod(chi) == pa


def test_slice_wrong_anchor_rejected():
    with pytest.raises(CatError):
        sl3.make_obj(2, FinMor(2, 2, (0, 1)))
    a = anchored(2, [0, 1])
    b = anchored(2, [0, 0])
    with pytest.raises(CatError):
        sl3.make_mor(a, b, h.identity(2))
