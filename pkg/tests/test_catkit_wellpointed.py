from stacksem.catkit import (
    FINSET,
    PresheafHandle,
    check_wellpointed,
    empty_cat,
    pointwise_epi,
    pointwise_iso,
    pointwise_mono,
    z2_cat,
)

h = FINSET
z2 = PresheafHandle(z2_cat())


def test_finset_all_clauses_verified():
    for bound in (2, 3, 4):
        rep = check_wellpointed(h, bound)
        assert rep.all_verified(), rep.to_json()


def test_z2_strong_generator_refuted():
    rep = check_wellpointed(z2, 4)
    assert not rep.strong_generator.verified
    x, s = rep.strong_generator.witness
    # the first witness found is the empty subobject of the free orbit
    assert x.sizes == (2,) and x.actions[1] == (1, 0)
    assert all(len(m) == 0 for m in s.mask)
    assert not rep.projective.verified
    assert rep.indecomposable.verified
    assert rep.nonempty.verified


def test_empty_index_category_nonempty_refuted():
    e = PresheafHandle(empty_cat())
    rep = check_wellpointed(e, 2)
    # in the trivial presheaf category 1 = 0, so a map 1 -> 0 exists
    assert not rep.nonempty.verified


def test_pointwise_characterizations_finset_exhaustive():
    # on finite sets, mono/epi/iso coincide with their global-element forms
    for a in range(5):
        for b in range(5):
            for f in h.morphisms(a, b):
                assert pointwise_mono(h, f) == h.is_mono(f)
                assert pointwise_epi(h, f) == h.is_epi(f)
                assert pointwise_iso(h, f) == h.is_iso(f)


def test_pointwise_characterizations_fail_off_finset():
    f = z2.make_obj((2,), [(0, 1), (1, 0)])
    zero_to_f = z2.morphisms(z2.initial(), f)[0]
    # point-bijective but not iso: the strong-generator failure witness
    assert pointwise_iso(z2, zero_to_f)
    assert not z2.is_iso(zero_to_f)
