"""The lambda-calculus grammar, built twice over shared Term values.

Terms are Adt-encoded: ``Var(name)``, ``Abs(binder, body)``,
``App(fun, arg)``.  The surface syntax is exactly::

    term ::= ident | "λ" ident "." term | "(" term " " term ")"
    ident ::= letter alphanumeric*        (ASCII only)

λ is U+03BB with no ASCII alias, and no whitespace is admitted anywhere
except the single mandatory space separating the two halves of an
application.  Alternatives are tried in the order Var, Abs, App, which
matters because choice is left biased.

Identifiers live as Text inside terms but as lists of characters inside
the grammar machinery, so both grammars convert at the boundary.

One asymmetry between the engines is worth knowing about.  In the
cassette grammar the application lead attaches outside the parentheses
(`app_l >> parens(...)`), since leads and literals all live on one
stack.  In the stacked grammar the lead is applied inside
(`parens(app_l.ap(term)...)`) so that its two components are consumed
directly by the sub-term actions; hoisting it out would separate the
lead from its components under the indexed typing discipline, so that
phrasing is not used here even though this dynamic engine would run it.
"""

from __future__ import annotations

import json
from typing import Optional

from . import stacked as st
from . import tier2 as t2
from .values import (
    Adt, Char, ContractViolation, Iso, List, Text, Value, adt_prism,
    value_from_json, value_to_json,
)

LAMBDA = "λ"


def var(name: str) -> Value:
    return Adt("Var", (Text(name),))


def abs_(binder: str, body: Value) -> Value:
    return Adt("Abs", (Text(binder), body))


def app(fun: Value, arg: Value) -> Value:
    return Adt("App", (fun, arg))


def is_term(v: Value) -> bool:
    """Shape check: the Var/Abs/App encoding with Text identifiers."""
    if not isinstance(v, Adt):
        return False
    if v.tag == "Var":
        return len(v.args) == 1 and isinstance(v.args[0], Text)
    if v.tag == "Abs":
        return (len(v.args) == 2 and isinstance(v.args[0], Text)
                and is_term(v.args[1]))
    if v.tag == "App":
        return len(v.args) == 2 and is_term(v.args[0]) and is_term(v.args[1])
    return False


def _is_letter(c: str) -> bool:
    return c.isascii() and c.isalpha()


def _is_alnum(c: str) -> bool:
    return c.isascii() and c.isalnum()


def _unpack(v: Value) -> Value:
    if not isinstance(v, Text):
        raise ContractViolation(f"identifier wants a Text, got {v!r}")
    return List(tuple(Char(c) for c in v.s))


def _pack(v: Value) -> Value:
    assert isinstance(v, List)
    return Text("".join(c.c for c in v.items))


# ---------------------------------------------------------------------------
# Cassette grammar


_TERM2 = None


def term_cassette() -> t2.Descriptor2:
    """The grammar as a tier-2 descriptor.  Built once, shared freely."""
    global _TERM2
    if _TERM2 is None:
        letter = t2.satisfy(_is_letter, "letter")
        alnum = t2.satisfy(_is_alnum, "alphanumeric")
        ident = t2.iso_lift(Iso("ident", _unpack, _pack)) \
            >> t2.cons_lead() >> letter + t2.many(alnum)
        var_l = t2.prism_lead(adt_prism("Var", 1))
        abs_l = t2.prism_lead(adt_prism("Abs", 2))
        app_l = t2.prism_lead(adt_prism("App", 2))
        sep = t2.lit(" ")

        def parens(p):
            return t2.lit("(") + p + t2.lit(")")

        term = t2.defer(lambda:
                        var_l >> ident
                        | abs_l >> t2.lit(LAMBDA) + ident + t2.lit(".") + term
                        | app_l >> parens(term + sep + term))
        _TERM2 = term
    return _TERM2


# ---------------------------------------------------------------------------
# Stacked grammar


_TERM3 = None


def term_stacked() -> st.Choice:
    """The same language as a stacked choice action."""
    global _TERM3
    if _TERM3 is None:
        letter = st.alt_satisfy(_is_letter, "letter")
        alnum = st.alt_satisfy(_is_alnum, "alphanumeric")
        to_chars = st.alt_stack_guard(
            lambda fl, k: st.consume(lambda v: st.supply(k, _unpack(v))),
            lambda fl: st.consume(lambda w: st.supply(fl, _pack(w))))
        ident = to_chars.right(
            st.alt_cons_lead().ap(letter).ap(st.alt_many(alnum)).map(_pack))
        var_l = st.alt_prism_lead(adt_prism("Var", 1))
        abs_l = st.alt_prism_lead(adt_prism("Abs", 2))
        app_l = st.alt_prism_lead(adt_prism("App", 2))
        sep = st.alt_lit(" ")

        def parens(p):
            return st.alt_lit("(").right(p).left(st.alt_lit(")"))

        term = st.alt_defer(lambda:
                            var_l.ap(ident)
                            | abs_l.left(st.alt_lit(LAMBDA)).ap(ident)
                                   .left(st.alt_lit(".")).ap(term)
                            | parens(app_l.ap(term).left(sep).ap(term)))
        _TERM3 = term
    return _TERM3


# ---------------------------------------------------------------------------
# Entry points over both engines


ENGINES = ("cassette", "stacked")


def parse_term(text: str, engine: str = "cassette") -> Optional[Value]:
    if engine == "stacked":
        return st.parse(term_stacked(), text)
    return t2.parse(term_cassette(), text)


def pretty_term(term: Value, engine: str = "cassette") -> Optional[str]:
    if engine == "stacked":
        return st.pretty(term_stacked(), term)
    return t2.pretty(term_cassette(), term)


def term_to_json(term: Value) -> str:
    return value_to_json(term)


def term_from_json(s: str) -> Optional[Value]:
    v = value_from_json(s)
    if v is None or not is_term(v):
        return None
    return v
