import itertools

import pytest
from hypothesis import given, settings, strategies as st

from stacksem.catkit import FINSET, CatError, FinMor, Subobject, enumerate_structures

h = FINSET


def all_maps_upto(n):
    for a in range(n + 1):
        for b in range(n + 1):
            yield from h.morphisms(a, b)


def test_compose_table():
    f = FinMor(2, 1, (0, 0))
    g = FinMor(1, 2, (1,))
    assert h.compose(g, f) == FinMor(2, 2, (1, 1))


def test_identity_laws_and_involution():
    f = FinMor(2, 3, (2, 0))
    assert h.compose(h.identity(3), f) == f
    assert h.compose(f, h.identity(2)) == f
    swap = FinMor(2, 2, (1, 0))
    assert h.compose(swap, swap) == h.identity(2)


def test_associativity_exhaustive_small():
    for f in all_maps_upto(2):
        for g in h.morphisms(f.cod, 2):
            for k in h.morphisms(2, 2):
                assert h.compose(k, h.compose(g, f)) == h.compose(h.compose(k, g), f)


def test_compose_type_mismatch():
    with pytest.raises(CatError):
        h.compose(FinMor(3, 1, (0, 0, 0)), FinMor(1, 2, (0,)))


def test_terminal():
    assert h.terminal() == 1
    for x in range(5):
        assert len(h.morphisms(x, 1)) == 1


def test_pullback_over_terminal_is_product():
    f = h.morphisms(2, 1)[0]
    g = h.morphisms(3, 1)[0]
    p, p1, p2 = h.pullback(f, g)
    assert p == 6
    assert h.compose(f, p1) == h.compose(g, p2)


def test_pullback_of_identity():
    i = h.identity(3)
    p, p1, p2 = h.pullback(i, i)
    assert p == 3
    assert p1 == h.identity(3) and p2 == h.identity(3)


def test_pullback_disjoint_points():
    x0 = FinMor(1, 2, (0,))
    x1 = FinMor(1, 2, (1,))
    p, _, _ = h.pullback(x0, x1)
    assert p == 0


def test_pullback_universal_property_exhaustive():
    f = FinMor(2, 2, (0, 1))
    g = FinMor(3, 2, (0, 0, 1))
    p, p1, p2 = h.pullback(f, g)
    for z in range(3):
        for u in h.morphisms(z, 2):
            for v in h.morphisms(z, 3):
                if h.compose(f, u) != h.compose(g, v):
                    continue
                w = h.into_pullback(f, g, u, v)
                assert h.compose(p1, w) == u and h.compose(p2, w) == v
                others = [
                    m
                    for m in h.morphisms(z, p)
                    if h.compose(p1, m) == u and h.compose(p2, m) == v
                ]
                assert others == [w]


def test_image_factor_examples():
    const = FinMor(3, 2, (0, 0, 0))
    e, s = h.image_factor(const)
    assert s.mask == frozenset({0})
    assert h.is_epi(e)

    ident = h.identity(3)
    _, s2 = h.image_factor(ident)
    assert s2 == h.top(3)

    surj = FinMor(3, 2, (0, 1, 0))
    _, s3 = h.image_factor(surj)
    assert s3 == h.top(2)
    m = h.inclusion_of(s3)
    assert h.is_iso(m)


def test_image_factorization_orthogonal_exhaustive():
    # any competing epi-mono factorization admits a unique comparison iso
    for f in all_maps_upto(3):
        e0, s0 = h.image_factor(f)
        m0 = h.inclusion_of(s0)
        assert h.compose(m0, e0) == f
        for i in range(4):
            for e in h.morphisms(f.dom, i):
                if not h.is_epi(e):
                    continue
                # mono part determined on the image by f
                table = [None] * i
                ok = True
                for x in range(f.dom):
                    if table[e(x)] is None:
                        table[e(x)] = f(x)
                    elif table[e(x)] != f(x):
                        ok = False
                        break
                if not ok or any(v is None for v in table):
                    continue
                m = FinMor(i, f.cod, tuple(table))
                if not h.is_mono(m):
                    continue
                isos = [
                    j
                    for j in h.morphisms(i, h.dom(m0))
                    if h.is_iso(j) and h.compose(m0, j) == m and h.compose(j, e) == e0
                ]
                assert len(isos) == 1


def dual_image_oracle(f, s):
    """Brute force: the largest T with f*T <= s."""
    best = frozenset()
    for k in range(f.cod + 1):
        for comb in itertools.combinations(range(f.cod), k):
            t = frozenset(comb)
            if frozenset(x for x in range(f.dom) if f(x) in t) <= s.mask and len(t) > len(best):
                best = t
    return Subobject(f.cod, best)


def test_dual_image_examples_against_oracle():
    f = h.morphisms(2, 1)[0]
    s = Subobject(2, frozenset({0}))
    assert h.dual_image(f, s) == dual_image_oracle(f, s)
    assert h.dual_image(f, s).mask == frozenset()
    assert h.dual_image(f, h.top(2)) == h.top(1)


def test_dual_image_adjunction_exhaustive_small():
    for f in all_maps_upto(3):
        subs_x = h.subobjects(f.dom)
        subs_y = h.subobjects(f.cod)
        for s in subs_x:
            d = h.dual_image(f, s)
            for t in subs_y:
                assert h.sub_leq(h.pullback_sub(f, t), s) == h.sub_leq(t, d)


def test_sub_lattice_units():
    s = Subobject(3, frozenset({1}))
    assert h.sub_union(s, h.bottom(3)) == s
    assert h.sub_intersect(s, h.top(3)) == s


def test_coproduct():
    c, i1, i2 = h.coproduct(2, 3)
    assert c == 5
    assert h.is_mono(i1) and h.is_mono(i2)
    im1 = h.image_sub(i1, h.top(2))
    im2 = h.image_sub(i2, h.top(3))
    assert h.sub_intersect(im1, im2).mask == frozenset()
    x, j1, j2 = h.coproduct(4, 0)
    assert x == 4 and h.is_iso(j1)


def test_coproduct_pullback_stable_small():
    for a in range(3):
        for b in range(3):
            c, i1, i2 = h.coproduct(a, b)
            for z in range(4):
                for g in h.morphisms(z, c):
                    p1, _, q1 = h.pullback(i1, g)
                    p2, _, q2 = h.pullback(i2, g)
                    # fibered pieces partition z
                    assert p1 + p2 == z
                    m1 = h.image_sub(q1, h.top(p1))
                    m2 = h.image_sub(q2, h.top(p2))
                    assert h.sub_union(m1, m2) == h.top(z)
                    assert h.sub_intersect(m1, m2).mask == frozenset()


def partitions(n):
    if n == 0:
        yield []
        return
    for rest in partitions(n - 1):
        for i, block in enumerate(rest):
            yield rest[:i] + [block + [n - 1]] + rest[i + 1 :]
        yield rest + [[n - 1]]


def relation_from_partition(x, blocks):
    pairs = h.pullback_elements(h.terminal_map(x), h.terminal_map(x))
    related = set()
    for block in blocks:
        for a in block:
            for b in block:
                related.add((a, b))
    prod, _, _ = h.product(x, x)
    return Subobject(prod, frozenset(i for i, p in enumerate(pairs) if p in related))


def test_quotient_examples():
    r = relation_from_partition(3, [[0], [1], [2]])
    q, qm = h.quotient_by_equiv(r, 3)
    assert q == 3 and h.is_iso(qm)

    r = relation_from_partition(4, [[0, 1, 2, 3]])
    q, qm = h.quotient_by_equiv(r, 4)
    assert q == 1

    r = relation_from_partition(4, [[0, 2], [1, 3]])
    q, qm = h.quotient_by_equiv(r, 4)
    assert q == 2


def test_quotient_kernel_pair_exhaustive():
    for x in range(5):
        for blocks in partitions(x):
            r = relation_from_partition(x, blocks)
            _, qm = h.quotient_by_equiv(r, x)
            assert h.is_epi(qm)
            assert h.kernel_pair_sub(qm) == r


def test_quotient_rejects_non_equivalence():
    prod, _, _ = h.product(2, 2)
    r = Subobject(prod, frozenset({1}))  # only (0,1): not reflexive
    with pytest.raises(CatError):
        h.quotient_by_equiv(r, 2)


def test_exponential_finset():
    e, ev = h.exponential(3, 2)
    assert e == 8
    x, _ = h.exponential(1, 3)
    assert x == 3
    # universal property by exhaustion: currying is a bijection
    for z in range(3):
        maps = []
        prod, _, _ = h.product(z, 3)
        for f in h.morphisms(prod, 2):
            t = h.transpose(f, z, 3, 2)
            # ev o (t x id) == f
            pz1, pz2 = h.pullback(h.terminal_map(z), h.terminal_map(3))[1:]
            tx = h.pair_morphism(h.compose(t, pz1), pz2)
            assert h.compose(ev, tx) == f
            maps.append(t)
        assert len(set(maps)) == len(maps)
        assert len(maps) == len(h.morphisms(z, 8))


def test_power_object():
    pa, mem = h.power_object(2)
    assert pa == 4
    p0, _ = h.power_object(0)
    assert p0 == 1
    # universal property by exhaustion on z, a <= 2
    for z in range(3):
        for a in range(3):
            pao, memo = h.power_object(a)
            prod, pz, pa_ = h.product(z, a)
            seen = set()
            for s in h.subobjects(prod):
                chi = h.power_transpose(s, z, a)
                psi = h.pair_morphism(pa_, h.compose(chi, pz))
                assert h.pullback_sub(psi, memo) == s
                matches = [
                    c
                    for c in h.morphisms(z, pao)
                    if h.pullback_sub(h.pair_morphism(pa_, h.compose(c, pz)), memo) == s
                ]
                assert matches == [chi]
                seen.add(chi)
            assert len(seen) == len(h.morphisms(z, pao))


def test_pi_f_fiberwise_sections():
    f = FinMor(3, 2, (0, 0, 1))
    g = FinMor(4, 3, (0, 0, 1, 2))
    w, wm, counit = h.pi_f(f, g)
    # fiber over 0 = {0,1}: sections pick a preimage under g for each: 2*1; fiber over 1 = {2}: 1
    assert w == 3
    assert wm.table == (0, 0, 1)
    # counit is a map over X: g o counit = projection to X
    p, q1, q2 = h.pullback(wm, f)
    assert h.compose(g, counit) == q2


def test_enumerate_structures():
    assert len(list(enumerate_structures(h, "global_elements", a=3))) == 3
    epis = [(v, p) for v, p in enumerate_structures(h, "regular_epis", bound=2, a=1)]
    # oracle: all functions onto 1 with domain <= 2, filtered to surjections
    oracle = [(v, p) for v in range(3) for p in h.morphisms(v, 1) if h.is_epi(p)]
    assert sorted(v for v, _ in epis) == sorted(v for v, _ in oracle) == [1, 2]
    assert epis[0] == (1, h.identity(1))  # identity cover first
    objs = list(enumerate_structures(h, "objects", bound=3))
    assert objs == [0, 1, 2, 3]
    subs = list(enumerate_structures(h, "subobjects", a=2))
    assert len(subs) == 4


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.data())
def test_heyting_adjunction_property(x, y, data):
    # s & t <= u iff t <= (s => u), on random masks
    mask = lambda n: frozenset(data.draw(st.sets(st.integers(0, max(n - 1, 0)), max_size=n)))
    if x == 0:
        return
    s = Subobject(x, frozenset(m for m in mask(x) if m < x))
    t = Subobject(x, frozenset(m for m in mask(x) if m < x))
    u = Subobject(x, frozenset(m for m in mask(x) if m < x))
    imp = h.heyting_sub(s, u)
    assert h.sub_leq(h.sub_intersect(s, t), u) == h.sub_leq(t, imp)
