"""Universal runtime values, stacks, isomorphisms and prisms.

Every engine in this package moves the same dynamically-typed `Value`
data through a persistent `Stack`.  Sum types are encoded uniformly as
`Adt(tag, args)` and taken apart / rebuilt with `Prism` objects.
"""

from __future__ import annotations

import json
from typing import Callable, Iterable, Optional, Sequence


class ContractViolation(Exception):
    """Terminal misuse of a descriptor or stack.  Never caught by choice."""


# ---------------------------------------------------------------------------
# Values


class Value:
    __slots__ = ()


class Unit(Value):
    __slots__ = ()

    def __eq__(self, other):
        return isinstance(other, Unit)

    def __hash__(self):
        return hash(Unit)

    def __repr__(self):
        return "Unit"


class Bool(Value):
    __slots__ = ("flag",)

    def __init__(self, flag: bool):
        self.flag = bool(flag)

    def __eq__(self, other):
        return isinstance(other, Bool) and self.flag == other.flag

    def __hash__(self):
        return hash(("Bool", self.flag))

    def __repr__(self):
        return f"Bool({self.flag})"


class Int(Value):
    __slots__ = ("n",)

    def __init__(self, n: int):
        self.n = int(n)

    def __eq__(self, other):
        return isinstance(other, Int) and self.n == other.n

    def __hash__(self):
        return hash(("Int", self.n))

    def __repr__(self):
        return f"Int({self.n})"


class Char(Value):
    __slots__ = ("c",)

    def __init__(self, c: str):
        if len(c) != 1:
            raise ContractViolation(f"Char wants a single scalar, got {c!r}")
        self.c = c

    def __eq__(self, other):
        return isinstance(other, Char) and self.c == other.c

    def __hash__(self):
        return hash(("Char", self.c))

    def __repr__(self):
        return f"Char({self.c!r})"


class Text(Value):
    __slots__ = ("s",)

    def __init__(self, s: str):
        self.s = s

    def __eq__(self, other):
        return isinstance(other, Text) and self.s == other.s

    def __hash__(self):
        return hash(("Text", self.s))

    def __repr__(self):
        return f"Text({self.s!r})"


class List(Value):
    __slots__ = ("items",)

    def __init__(self, items: Iterable[Value] = ()):
        self.items = tuple(items)

    def __eq__(self, other):
        return isinstance(other, List) and self.items == other.items

    def __hash__(self):
        return hash(("List", self.items))

    def __repr__(self):
        return "List[" + ", ".join(map(repr, self.items)) + "]"


class Pair(Value):
    __slots__ = ("first", "second")

    def __init__(self, first: Value, second: Value):
        self.first = first
        self.second = second

    def __eq__(self, other):
        return (isinstance(other, Pair)
                and self.first == other.first and self.second == other.second)

    def __hash__(self):
        return hash(("Pair", self.first, self.second))

    def __repr__(self):
        return f"Pair({self.first!r}, {self.second!r})"


class Adt(Value):
    __slots__ = ("tag", "args")

    def __init__(self, tag: str, args: Iterable[Value] = ()):
        self.tag = tag
        self.args = tuple(args)

    def __eq__(self, other):
        return (isinstance(other, Adt)
                and self.tag == other.tag and self.args == other.args)

    def __hash__(self):
        return hash(("Adt", self.tag, self.args))

    def __repr__(self):
        return f"Adt({self.tag!r}" + "".join(f", {a!r}" for a in self.args) + ")"


# ---------------------------------------------------------------------------
# Stacks


class Val:
    """Stack entry holding one finished value."""

    __slots__ = ("value",)

    def __init__(self, value: Value):
        self.value = value

    def __eq__(self, other):
        return isinstance(other, Val) and self.value == other.value

    def __repr__(self):
        return f"Val({self.value!r})"


class Pending:
    """Stack entry for a value under construction by a lead-out.

    Collects `arity` component values; the moment the last one arrives
    the entry is replaced by `build(components)`.
    """

    __slots__ = ("tag", "arity", "got", "build")

    def __init__(self, tag: str, arity: int, got: tuple,
                 build: Callable[[tuple], Value]):
        self.tag = tag
        self.arity = arity
        self.got = got
        self.build = build

    def __eq__(self, other):
        return (isinstance(other, Pending) and self.tag == other.tag
                and self.arity == other.arity and self.got == other.got)

    def __repr__(self):
        return f"Pending({self.tag!r}, {len(self.got)}/{self.arity})"


class Stack:
    """Persistent stack, top first.  Push and pop share structure."""

    __slots__ = ("entry", "rest", "size")

    def __init__(self, entry=None, rest=None, size=0):
        self.entry = entry
        self.rest = rest
        self.size = size

    def is_empty(self) -> bool:
        return self.size == 0

    def push_entry(self, entry) -> "Stack":
        return Stack(entry, self, self.size + 1)

    def pop_entry(self):
        if self.size == 0:
            raise ContractViolation("stack underflow")
        return self.entry, self.rest

    def push(self, v: Value) -> "Stack":
        """Push a finished value without touching pending frames."""
        return self.push_entry(Val(v))

    def pop(self):
        """Pop a finished value; pending frames on top are misuse."""
        entry, rest = self.pop_entry()
        if not isinstance(entry, Val):
            raise ContractViolation(f"popped unfinished frame {entry!r}")
        return entry.value, rest

    def open_frame(self, tag: str, arity: int,
                   build: Callable[[tuple], Value]) -> "Stack":
        """Start collecting `arity` values for a constructor application."""
        if arity == 0:
            return self.deliver(build(()))
        return self.push_entry(Pending(tag, arity, (), build))

    def deliver(self, v: Value) -> "Stack":
        """Push a value, feeding and reducing pending frames innermost first."""
        stack = self
        while True:
            if stack.size and isinstance(stack.entry, Pending):
                p = stack.entry
                got = p.got + (v,)
                if len(got) < p.arity:
                    return stack.rest.push_entry(Pending(p.tag, p.arity, got, p.build))
                v = p.build(got)
                stack = stack.rest
            else:
                return stack.push_entry(Val(v))

    def entries(self) -> tuple:
        """All entries, top first."""
        out = []
        s = self
        while s.size:
            out.append(s.entry)
            s = s.rest
        return tuple(out)

    def values(self) -> tuple:
        """All values, top first.  Pending frames are a violation."""
        out = []
        for entry in self.entries():
            if not isinstance(entry, Val):
                raise ContractViolation(f"unfinished frame left on stack: {entry!r}")
            out.append(entry.value)
        return tuple(out)

    def __eq__(self, other):
        return isinstance(other, Stack) and self.entries() == other.entries()

    def __repr__(self):
        return "Stack[" + ", ".join(map(repr, self.entries())) + "]"


EMPTY_STACK = Stack()


def stack_of(values: Sequence[Value]) -> Stack:
    """Build a stack with values[0] on top."""
    s = EMPTY_STACK
    for v in reversed(values):
        s = s.push(v)
    return s


# ---------------------------------------------------------------------------
# Isomorphisms


class Iso:
    """A named pair of mutually inverse value maps.

    `to` is applied when printing (outer form to inner form), `from_`
    when parsing (inner form back to outer form).
    """

    __slots__ = ("name", "to", "from_")

    def __init__(self, name: str, to: Callable[[Value], Value],
                 from_: Callable[[Value], Value]):
        self.name = name
        self.to = to
        self.from_ = from_

    def __repr__(self):
        return f"Iso({self.name})"


def pair_iso() -> Iso:
    """Witness of currying: Pair(a, b) against its two-component view."""
    def split(v: Value) -> Value:
        if not isinstance(v, Pair):
            raise ContractViolation(f"pair_iso.to wants a Pair, got {v!r}")
        return List((v.first, v.second))

    def join(v: Value) -> Value:
        if not isinstance(v, List) or len(v.items) != 2:
            raise ContractViolation(f"pair_iso.from_ wants two components, got {v!r}")
        return Pair(v.items[0], v.items[1])

    return Iso("pair", split, join)


def identity_iso() -> Iso:
    return Iso("id", lambda v: v, lambda v: v)


# ---------------------------------------------------------------------------
# Prisms


class Prism:
    """One constructor of a sum type: total `review`, partial `preview`."""

    __slots__ = ("tag", "arity", "_preview", "_review")

    def __init__(self, tag: str, arity: int, preview, review):
        self.tag = tag
        self.arity = arity
        self._preview = preview
        self._review = review

    def preview(self, v: Value) -> Optional[tuple]:
        """Components of v if it matches this constructor, else None."""
        return self._preview(v)

    def review(self, components: Sequence[Value]) -> Value:
        """Rebuild the value from exactly `arity` components."""
        components = tuple(components)
        if len(components) != self.arity:
            raise ContractViolation(
                f"prism {self.tag} wants {self.arity} components, got {len(components)}")
        return self._review(components)

    def __repr__(self):
        return f"Prism({self.tag}/{self.arity})"


def adt_prism(tag: str, arity: int) -> Prism:
    """Prism for the `Adt(tag, ...)` constructor of the given arity."""
    if arity < 0:
        raise ContractViolation("prism arity must be non-negative")

    def preview(v):
        if isinstance(v, Adt) and v.tag == tag and len(v.args) == arity:
            return v.args
        return None

    return Prism(tag, arity, preview, lambda xs: Adt(tag, xs))


def cons_prism() -> Prism:
    """Head/tail view of a non-empty List."""
    def preview(v):
        if isinstance(v, List) and v.items:
            return (v.items[0], List(v.items[1:]))
        return None

    def review(xs):
        head, tail = xs
        if not isinstance(tail, List):
            raise ContractViolation(f"cons wants a List tail, got {tail!r}")
        return List((head,) + tail.items)

    return Prism("cons", 2, preview, review)


def nil_prism() -> Prism:
    """The empty List, with no components."""
    def preview(v):
        if isinstance(v, List) and not v.items:
            return ()
        return None

    return Prism("nil", 0, preview, lambda xs: List(()))


def const_prism(tag: str, value: Value) -> Prism:
    """Match one specific value, exposing a single Unit component."""
    def preview(v):
        return (Unit(),) if v == value else None

    return Prism(tag, 1, preview, lambda xs: value)


# ---------------------------------------------------------------------------
# JSON encoding
#
# Unit -> null, Bool -> true/false, Int -> number, Text -> string,
# Char -> {"char": "c"}, List -> array, Pair -> {"pair": [x, y]},
# Adt  -> {"<tag>": [args...]}, collapsed to {"<tag>": arg} for a single
# argument whose encoding is not itself an array.  The keys "char" and
# "pair" are reserved and unavailable as Adt tags.

_RESERVED_TAGS = ("char", "pair")


def _encode(v: Value):
    if isinstance(v, Unit):
        return None
    if isinstance(v, Bool):
        return v.flag
    if isinstance(v, Int):
        return v.n
    if isinstance(v, Char):
        return {"char": v.c}
    if isinstance(v, Text):
        return v.s
    if isinstance(v, List):
        return [_encode(x) for x in v.items]
    if isinstance(v, Pair):
        return {"pair": [_encode(v.first), _encode(v.second)]}
    if isinstance(v, Adt):
        if v.tag in _RESERVED_TAGS:
            raise ContractViolation(f"Adt tag {v.tag!r} is reserved by the JSON encoding")
        args = [_encode(a) for a in v.args]
        if len(args) == 1 and not isinstance(args[0], list):
            return {v.tag: args[0]}
        return {v.tag: args}
    raise ContractViolation(f"not a Value: {v!r}")


def _decode(x) -> Value:
    if x is None:
        return Unit()
    if isinstance(x, bool):
        return Bool(x)
    if isinstance(x, int):
        return Int(x)
    if isinstance(x, str):
        return Text(x)
    if isinstance(x, list):
        return List(tuple(_decode(e) for e in x))
    if isinstance(x, dict) and len(x) == 1:
        [(key, payload)] = x.items()
        if key == "char":
            if isinstance(payload, str) and len(payload) == 1:
                return Char(payload)
            raise ValueError("char wants a one-character string")
        if key == "pair":
            if isinstance(payload, list) and len(payload) == 2:
                return Pair(_decode(payload[0]), _decode(payload[1]))
            raise ValueError("pair wants two elements")
        if isinstance(payload, list):
            return Adt(key, tuple(_decode(e) for e in payload))
        return Adt(key, (_decode(payload),))
    raise ValueError(f"no Value reading for {x!r}")


def value_to_json(v: Value) -> str:
    return json.dumps(_encode(v), separators=(",", ":"), ensure_ascii=False)


def value_from_json(s: str) -> Optional[Value]:
    try:
        return _decode(json.loads(s))
    except (ValueError, RecursionError):
        return None
