import itertools

import pytest

from stacksem.catkit import FINSET, FinMor, PresheafHandle, Subobject, z2_cat
from stacksem.catkit.slices import SlMor, SlObj
from stacksem.logic import (
    LogicError,
    classify_delta0,
    classify_internal,
    d0_to_internal,
    internal_to_d0,
    is_delta0,
    isomorph,
    parse,
    print_formula,
    pullback_formula,
    resolve,
)
from stacksem.logic.internal import IApp, IEq, IFuncSym, IRel, IRelSym, IVar

h = FINSET


def over(u):
    return h.slice(u)


def anchored(apex, u):
    return SlObj(apex, h.terminal_map(apex) if u == 1 else None)


def test_parse_roundtrip_canonical():
    texts = [
        "forall X. exists x: 1 -> X. true",
        "f = g",
        "not f = g => false or true",
        "forall x, y: 1 -> X. x = y",
        "f o g o h = id[1]",
    ]
    for t in texts:
        phi = parse(t)
        assert parse(print_formula(phi)) == phi


def test_object_equality_unrepresentable():
    with pytest.raises(LogicError):
        parse("exists X. X = X")
    sl = over(1)
    two = SlObj(2, h.terminal_map(2))
    with pytest.raises(LogicError):
        resolve(parse("X = Y"), objects={"X": two, "Y": two}, handle=sl)


def test_resolve_typing_error_nonparallel():
    sl = over(1)
    two = SlObj(2, h.terminal_map(2))
    three = SlObj(3, h.terminal_map(3))
    f = SlMor(three, two, FinMor(3, 2, (0, 1, 0)))
    g = SlMor(two, three, FinMor(2, 3, (0, 1)))
    with pytest.raises(LogicError):
        resolve(parse("f = g"), arrows={"f": f, "g": g}, handle=sl)


def std_params(u=1):
    sl = over(u)
    two = SlObj(2, h.morphisms(2, u)[0] if u == 1 else None) if u == 1 else None
    two = SlObj(2, h.terminal_map(2))
    three = SlObj(3, h.terminal_map(3))
    f = SlMor(three, two, FinMor(3, 2, (0, 1, 0)))
    g = SlMor(three, two, FinMor(3, 2, (0, 0, 0)))
    return sl, {"Two": two, "Three": three}, {"f": f, "g": g}


def d0_sentence(text, u=1):
    sl, objs, arrs = std_params(u)
    return resolve(parse(text), objects=objs, arrows=arrs, handle=sl)


def external_eval_at_1(phi):
    """Independent oracle: direct evaluation of a delta0 sentence over 1 in
    finite sets, quantifying over actual elements."""
    from stacksem.logic.formulas import (
        And,
        ArrParam,
        ArrVar,
        Bottom,
        CompArr,
        Eq,
        ExistsArr,
        ForallArr,
        IdArr,
        Implies,
        Not,
        ObjParam,
        Or,
        Top,
    )

    def ev_term(t, env):
        if isinstance(t, ArrVar):
            return env[t.name]
        if isinstance(t, ArrParam):
            return t.value.base.table[0]
        if isinstance(t, IdArr):
            return 0
        if isinstance(t, CompArr):
            arg = ev_term(t.first, env)
            return head_apply(t.after, arg, env)
        raise AssertionError(t)

    def head_apply(t, x, env):
        if isinstance(t, ArrParam):
            return t.value.base.table[x]
        if isinstance(t, IdArr):
            return x
        if isinstance(t, CompArr):
            return head_apply(t.after, head_apply(t.first, x, env), env)
        raise AssertionError(t)

    def go(phi, env):
        if isinstance(phi, Top):
            return True
        if isinstance(phi, Bottom):
            return False
        if isinstance(phi, Eq):
            return ev_term(phi.lhs, env) == ev_term(phi.rhs, env)
        if isinstance(phi, And):
            return go(phi.lhs, env) and go(phi.rhs, env)
        if isinstance(phi, Or):
            return go(phi.lhs, env) or go(phi.rhs, env)
        if isinstance(phi, Implies):
            return (not go(phi.lhs, env)) or go(phi.rhs, env)
        if isinstance(phi, Not):
            return not go(phi.body, env)
        if isinstance(phi, ExistsArr):
            n = phi.cod.value.apex
            return any(go(phi.body, {**env, phi.var: k}) for k in range(n))
        if isinstance(phi, ForallArr):
            n = phi.cod.value.apex
            return all(go(phi.body, {**env, phi.var: k}) for k in range(n))
        raise AssertionError(phi)

    return go(phi, {})


def test_classify_top_bottom():
    phi = d0_sentence("true")
    assert classify_delta0(h, 1, phi) == h.top(1)
    assert classify_delta0(h, 1, d0_sentence("false")) == h.bottom(1)


def test_classify_surjectivity_sentence():
    phi = d0_sentence("forall y: 1 -> Two. exists x: 1 -> Three. f x = y")
    assert classify_delta0(h, 1, phi) == h.top(1)
    psi = d0_sentence("forall y: 1 -> Two. exists x: 1 -> Three. g x = y")
    assert classify_delta0(h, 1, psi) == h.bottom(1)


D0_CORPUS = [
    "true",
    "false",
    "forall y: 1 -> Two. exists x: 1 -> Three. f x = y",
    "forall x: 1 -> Three. f x = g x",
    "exists x: 1 -> Three. f x = g x",
    "forall x: 1 -> Three. (f x = g x) => false",
    "(exists x: 1 -> Three. f x = g x) or (forall y: 1 -> Two. exists x: 1 -> Three. f x = y)",
    "not (forall x, y: 1 -> Three. x = y)",
    "forall x: 1 -> Two. exists y: 1 -> Two. x = y",
]


def test_classify_matches_external_evaluation_at_1():
    for text in D0_CORPUS:
        phi = d0_sentence(text)
        assert is_delta0(phi)
        got = classify_delta0(h, 1, phi) == h.top(1)
        want = external_eval_at_1(phi)
        assert got == want, text


def test_classify_naturality_under_pullback():
    u = 2
    sl = over(u)
    x = SlObj(4, FinMor(4, 2, (0, 0, 1, 1)))
    sec = SlMor(sl.terminal(), x, FinMor(2, 4, (1, 2)))
    phi = resolve(
        parse("exists x: 1 -> X. x = s"), objects={"X": x}, arrows={"s": sec}, handle=sl
    )
    s_u = classify_delta0(h, u, phi)
    for v in range(4):
        for p in h.morphisms(v, u):
            lhs = classify_delta0(h, v, pullback_formula(h, p, phi))
            rhs = h.pullback_sub(p, s_u)
            assert lhs == rhs


def test_classification_isomorphism_invariant():
    sl, objs, arrs = std_params()
    phi = d0_sentence("forall y: 1 -> Two. exists x: 1 -> Three. f x = y")
    # nontrivial isos: swap on Two, a 3-cycle on Three
    iso2 = SlMor(objs["Two"], objs["Two"], FinMor(2, 2, (1, 0)))
    iso3 = SlMor(objs["Three"], objs["Three"], FinMor(3, 3, (1, 2, 0)))
    phi2 = isomorph(sl, phi, {"Two": iso2, "Three": iso3})
    assert classify_delta0(h, 1, phi2) == classify_delta0(h, 1, phi)
    # identity isos leave the formula unchanged
    ids = {"Two": sl.identity(objs["Two"]), "Three": sl.identity(objs["Three"])}
    assert isomorph(sl, phi, ids) == phi


def test_isomorph_rejects_non_iso():
    sl, objs, arrs = std_params()
    phi = d0_sentence("forall x: 1 -> Three. f x = g x")
    bad = SlMor(objs["Three"], objs["Three"], FinMor(3, 3, (0, 0, 0)))
    with pytest.raises(LogicError):
        isomorph(sl, phi, {"Three": bad})


def test_delta0_flags():
    assert is_delta0(d0_sentence("forall x: 1 -> Three. f x = g x"))
    assert not is_delta0(parse("exists X. true"))
    sl, objs, arrs = std_params()
    phi = resolve(
        parse("forall s: Three -> Two. s = s"),
        objects=objs,
        arrows=arrs,
        handle=sl,
    )
    assert not is_delta0(phi)


def test_d0_internal_roundtrip_classification_invariant():
    sl, objs, arrs = std_params()
    for text in D0_CORPUS:
        phi = d0_sentence(text)
        psi = d0_to_internal(phi, sl)
        assert classify_internal(h, 1, psi) == classify_delta0(h, 1, phi), text
        back = internal_to_d0(psi, sl)
        assert is_delta0(back)
        assert classify_delta0(h, 1, back) == classify_delta0(h, 1, phi), text


def test_relation_atom_translation_shape_and_semantics():
    from stacksem.logic.formulas import And as FAnd, CompArr, Eq as FEq, ExistsArr

    sl, objs, arrs = std_params()
    three = objs["Three"]
    prod, _, _ = h.product(3, 3)
    # the graph of g as a relation
    gmor = arrs["g"].base
    pairs = h.pullback_elements(h.terminal_map(3), h.terminal_map(3))
    rel = Subobject(prod, frozenset(i for i, (a, b) in enumerate(pairs) if a == b))
    sym = IRelSym("diag", rel, (three, three))
    psi = IForall = None
    from stacksem.logic.internal import IExists as IEx, IForall as IFa

    psi = IFa("x", three, IRel(sym, (IVar("x"), IVar("x"))))
    d0 = internal_to_d0(psi, sl)
    assert is_delta0(d0)
    # shape: forall x. exists z in R. (p1 z = x and p2 z = x)
    assert isinstance(d0.body, ExistsArr)
    assert isinstance(d0.body.body, FAnd)
    # semantics: the diagonal relation holds of every (x, x)
    assert classify_delta0(h, 1, d0) == h.top(1)
    assert classify_internal(h, 1, psi) == h.top(1)


def test_binary_function_symbol_translation():
    from stacksem.logic.internal import IForall as IFa

    sl, objs, arrs = std_params()
    two = objs["Two"]
    # binary "or" on the booleans 2 x 2 -> 2 as a base table on the canonical product
    prod, p1, p2 = h.product(2, 2)
    table = tuple(
        1 if (a == 1 or b == 1) else 0 for (a, b) in h.pullback_elements(h.terminal_map(2), h.terminal_map(2))
    )
    orsym = IFuncSym("bor", FinMor(4, 2, table), (two, two), two)
    psi = IFa("x", two, IEq(IApp(orsym, (IVar("x"), IVar("x"))), IVar("x")))
    assert classify_internal(h, 1, psi) == h.top(1)  # idempotence of or
    d0 = internal_to_d0(psi, sl)
    assert is_delta0(d0)
    # the fresh variable and its two projection side conditions appear
    from stacksem.logic.formulas import ExistsArr

    assert isinstance(d0.body, ExistsArr)
    assert classify_delta0(h, 1, d0) == h.top(1)


def test_classify_requires_delta0():
    with pytest.raises(LogicError):
        classify_delta0(h, 1, parse("exists X. true"))


def test_classify_on_z2_local_existence():
    z2 = PresheafHandle(z2_cat())
    slz = z2.slice(z2.terminal())
    forb = z2.make_obj((2,), [(0, 1), (1, 0)])
    fobj = SlObj(forb, z2.terminal_map(forb))
    phi = resolve(parse("exists x: 1 -> F. true"), objects={"F": fobj}, handle=slz)
    # no global section exists, but the free orbit covers 1: locally there is one
    assert classify_delta0(z2, z2.terminal(), phi) == z2.top(z2.terminal())
