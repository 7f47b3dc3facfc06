"""Concrete grammar for the language of categories.

    formula    := ("forall" | "exists") binders "." formula | implication
    binders    := NAMES [":" objterm "->" objterm]      (object / arrow binder)
    implication:= disjunction ["=>" formula]
    disjunction:= conjunction ("or" conjunction)*
    conjunction:= negation ("and" negation)*
    negation   := "not" negation | atom
    atom       := "true" | "false" | term "=" term | "(" formula ")"
    term       := primary (["o"] primary)*              (composition, right assoc)
    primary    := "id" "[" objterm "]" | IDENT | "(" term ")"
    objterm    := "1" | IDENT

Application by juxtaposition is composition: "p x" is p o x.  Unresolved
identifiers become parameter references; resolve() binds them to the objects
and morphisms of a handle.  There is no equality of objects: an identifier
that denotes an object can never appear beside "=".
"""

from __future__ import annotations

import re

from .formulas import (
    ONE,
    And,
    ArrParam,
    ArrVar,
    Bottom,
    CompArr,
    Eq,
    ExistsArr,
    ExistsObj,
    ForallArr,
    ForallObj,
    Formula,
    IdArr,
    Implies,
    LogicError,
    Not,
    ObjParam,
    ObjTerm,
    ObjVar,
    Or,
    Top,
    map_terms,
    typecheck,
)

_KEYWORDS = {"forall", "exists", "true", "false", "and", "or", "not", "id", "o"}

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<arrow>->)|(?P<implies>=>)|(?P<eq>=)|(?P<punct>[().,:\[\]])"
    r"|(?P<one>1)|(?P<ident>[A-Za-z_][A-Za-z0-9_']*))"
)


def tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise LogicError(f"unexpected character {stripped[0]!r}", pos)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


class Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.obj_vars: list = []
        self.arr_vars: list = []

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind, value=None):
        k, v, p = self.next()
        if k != kind or (value is not None and v != value):
            raise LogicError(f"expected {value or kind}, found {v or k!r}", p)
        return v, p

    def at_ident(self, word=None):
        k, v, _ = self.peek()
        return k == "ident" and (word is None or v == word)

    # ---- formulas ----

    def parse_formula(self) -> Formula:
        if self.at_ident("forall") or self.at_ident("exists"):
            _, quant, qpos = self.next()
            names = [self.parse_binder_name()]
            while self.peek()[:2] == ("punct", ","):
                self.next()
                names.append(self.parse_binder_name())
            if self.peek()[:2] == ("punct", ":"):
                self.next()
                dom = self.parse_objterm()
                self.expect("arrow")
                cod = self.parse_objterm()
                self.expect("punct", ".")
                for n in names:
                    self.arr_vars.append(n)
                body = self.parse_formula()
                for n in reversed(names):
                    self.arr_vars.remove(n)
                    cls = ForallArr if quant == "forall" else ExistsArr
                    body = cls(n, dom, cod, body)
                return body
            self.expect("punct", ".")
            for n in names:
                self.obj_vars.append(n)
            body = self.parse_formula()
            for n in reversed(names):
                self.obj_vars.remove(n)
                cls = ForallObj if quant == "forall" else ExistsObj
                body = cls(n, body)
            return body
        return self.parse_implication()

    def parse_binder_name(self) -> str:
        k, v, p = self.next()
        if k != "ident" or v in _KEYWORDS:
            raise LogicError(f"expected a variable name, found {v!r}", p)
        if v in self.obj_vars or v in self.arr_vars:
            raise LogicError(f"variable {v!r} shadows an enclosing binder", p)
        return v

    def parse_implication(self) -> Formula:
        lhs = self.parse_disjunction()
        if self.peek()[0] == "implies":
            self.next()
            return Implies(lhs, self.parse_formula_after_implies())
        return lhs

    def parse_formula_after_implies(self) -> Formula:
        # right-assoc; quantifiers may follow =>
        return self.parse_formula()

    def parse_disjunction(self) -> Formula:
        out = self.parse_conjunction()
        while self.at_ident("or"):
            self.next()
            out = Or(out, self.parse_conjunction())
        return out

    def parse_conjunction(self) -> Formula:
        out = self.parse_negation()
        while self.at_ident("and"):
            self.next()
            out = And(out, self.parse_negation())
        return out

    def parse_negation(self) -> Formula:
        if self.at_ident("not"):
            self.next()
            return Not(self.parse_negation())
        return self.parse_atom()

    def parse_atom(self) -> Formula:
        k, v, p = self.peek()
        if k == "ident" and v == "true":
            self.next()
            return Top()
        if k == "ident" and v == "false":
            self.next()
            return Bottom()
        if k == "punct" and v == "(":
            # could be a parenthesized formula or a parenthesized term
            save = self.i
            try:
                self.next()
                phi = self.parse_formula()
                self.expect("punct", ")")
                if self.peek()[0] == "eq":
                    raise LogicError("parenthesized formula before '='", p)
                return phi
            except LogicError:
                self.i = save
        lhs = self.parse_term()
        _, ep = self.expect("eq")
        rhs = self.parse_term()
        return Eq(lhs, rhs)

    # ---- terms ----

    def parse_term(self):
        parts = [self.parse_primary()]
        while True:
            k, v, _ = self.peek()
            if k == "ident" and v == "o":
                self.next()
                parts.append(self.parse_primary())
            elif (k == "ident" and v not in _KEYWORDS) or (k == "punct" and v == "(") or (
                k == "ident" and v == "id"
            ):
                parts.append(self.parse_primary())
            else:
                break
        out = parts[-1]
        for t in reversed(parts[:-1]):
            out = CompArr(t, out)
        return out

    def parse_primary(self):
        k, v, p = self.next()
        if k == "ident" and v == "id":
            self.expect("punct", "[")
            obj = self.parse_objterm()
            self.expect("punct", "]")
            return IdArr(obj)
        if k == "punct" and v == "(":
            t = self.parse_term()
            self.expect("punct", ")")
            return t
        if k == "ident" and v not in _KEYWORDS:
            if v in self.obj_vars:
                raise LogicError(
                    f"object variable {v!r} used as an arrow; objects cannot be compared or composed",
                    p,
                )
            if v in self.arr_vars:
                return ArrVar(v)
            return ArrParam(v)
        raise LogicError(f"expected a term, found {v or k!r}", p)

    def parse_objterm(self) -> ObjTerm:
        k, v, p = self.next()
        if k == "one":
            return ONE
        if k == "ident" and v not in _KEYWORDS:
            if v in self.arr_vars:
                raise LogicError(f"arrow variable {v!r} used as an object", p)
            if v in self.obj_vars:
                return ObjVar(v)
            return ObjParam(v)
        raise LogicError(f"expected an object term, found {v or k!r}", p)


def parse(text: str) -> Formula:
    p = Parser(text)
    phi = p.parse_formula()
    k, v, pos = p.peek()
    if k != "eof":
        raise LogicError(f"trailing input {v!r}", pos)
    return phi


def resolve(phi: Formula, objects: dict = None, arrows: dict = None, handle=None) -> Formula:
    """Bind parameter references to concrete objects and morphisms.

    objects/arrows map names to handle values (slice values for sentences
    over an object).  When a handle is given, arrow parameters get their
    dom/cod object terms from it and the result is typechecked.
    """
    objects = objects or {}
    arrows = arrows or {}

    def obj_term_for(value):
        for name, v in objects.items():
            if v == value:
                return ObjParam(name, v)
        if handle is not None and value == handle.terminal():
            return ONE
        return ObjParam(f"_obj{len(objects)}", value)

    def on_obj(t):
        if isinstance(t, ObjParam) and t.value is None:
            if t.name not in objects:
                raise LogicError(f"unknown object parameter {t.name!r}")
            return ObjParam(t.name, objects[t.name])
        return t

    def on_arr(t):
        if isinstance(t, ArrParam) and t.value is None:
            if t.name not in arrows:
                if t.name in objects:
                    raise LogicError(
                        f"{t.name!r} names an object; objects cannot appear in equations"
                    )
                raise LogicError(f"unknown arrow parameter {t.name!r}")
            val = arrows[t.name]
            if handle is not None:
                return ArrParam(t.name, val, obj_term_for(handle.dom(val)), obj_term_for(handle.cod(val)))
            return ArrParam(t.name, val, t.dom, t.cod)
        return t

    out = map_terms(phi, on_obj, on_arr)
    if handle is not None:
        typecheck(out)
    return out
