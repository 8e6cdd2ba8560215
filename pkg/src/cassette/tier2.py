"""Format descriptors with failure and choice.

A `Descriptor2` still pairs a print side with a parse side over one
value stack, but every mismatch now flows to a failure continuation
instead of blowing up, and `choice` composes descriptors vertically.
That is enough to express full context-free grammars: leads lift prisms
onto the stack, `many`/`some` iterate, and `defer` ties recursive knots.

The engine is a defunctionalized form of the two-continuation string
transformers: instead of threading hand-written restoring continuations
it snapshots (remaining program, input position or emitted length,
stack) at every choice point and rewinds on failure, which restores
exactly the state those restoring continuations would rebuild.  Choice
is unlimited backtracking; a failure after a choice succeeded still
rewinds into the untried branch.

Failure is recoverable and silent; stack type errors are descriptor
misuse and raise `ContractViolation` through any amount of choice.
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence

from .values import (
    Char, ContractViolation, Int, Iso, List, Pair, Prism, Unit, Value,
    cons_prism, nil_prism, stack_of,
)


def _is_ascii_digit(c: str) -> bool:
    return "0" <= c <= "9"


class Descriptor2:
    """A print/parse pair with failure and choice.

    `a + b` splices (run a, then b); `a | b` tries a, falling back to b;
    `a >> b` is a synonym for `a + b`, read "lead into".
    """

    __slots__ = ()

    def __add__(self, other: "Descriptor2") -> "Descriptor2":
        return compose(self, other)

    def __rshift__(self, other: "Descriptor2") -> "Descriptor2":
        return compose(self, other)

    def __or__(self, other: "Descriptor2") -> "Descriptor2":
        return choice(self, other)


class _Seq(Descriptor2):
    __slots__ = ("items",)

    def __init__(self, items: tuple):
        self.items = items


class _Alt(Descriptor2):
    __slots__ = ("left", "right")

    def __init__(self, left: Descriptor2, right: Descriptor2):
        self.left = left
        self.right = right


class _Fail(Descriptor2):
    __slots__ = ()


class _Satisfy(Descriptor2):
    __slots__ = ("pred", "label")

    def __init__(self, pred: Callable[[str], bool], label: str):
        self.pred = pred
        self.label = label


class _Lit(Descriptor2):
    __slots__ = ("text", "unit")

    def __init__(self, text: str, unit: bool):
        self.text = text
        self.unit = unit


class _IsoLift(Descriptor2):
    __slots__ = ("iso",)

    def __init__(self, iso: Iso):
        self.iso = iso


class _PrismLead(Descriptor2):
    __slots__ = ("prism",)

    def __init__(self, prism: Prism):
        self.prism = prism


class _PairLead(Descriptor2):
    __slots__ = ()


class _Defer(Descriptor2):
    __slots__ = ("thunk", "built")

    def __init__(self, thunk: Callable[[], Descriptor2]):
        self.thunk = thunk
        self.built = None

    def force(self) -> Descriptor2:
        # Construction is pure, so a racing first use is harmless.
        if self.built is None:
            self.built = self.thunk()
        return self.built


# ---------------------------------------------------------------------------
# Constructors


def identity() -> Descriptor2:
    return _Seq(())


def compose(*descriptors: Descriptor2) -> Descriptor2:
    """Splice descriptors left to right.  Deferred parts stay deferred."""
    items = []
    for d in descriptors:
        if isinstance(d, _Seq):
            items.extend(d.items)
        else:
            items.append(d)
    return _Seq(tuple(items))


def choice(a: Descriptor2, b: Descriptor2) -> Descriptor2:
    """Try a; on any later failure before the next choice point, try b."""
    return _Alt(a, b)


def fail() -> Descriptor2:
    """Always fails; the unit of choice."""
    return _Fail()


def optional(p: Descriptor2) -> Descriptor2:
    """Apply a descriptor if it matches, otherwise do nothing."""
    return p | identity()


def satisfy(pred: Callable[[str], bool], label: str = "satisfy") -> Descriptor2:
    return _Satisfy(pred, label)


def char() -> Descriptor2:
    return satisfy(lambda c: True, "char")


def digit() -> Descriptor2:
    from .tier1 import digit_iso
    return iso_lift(digit_iso()) + satisfy(_is_ascii_digit, "digit")


def lit(text: str) -> Descriptor2:
    return _Lit(text, unit=False)


def lit_unit(text: str) -> Descriptor2:
    """Like `lit`, but also consumes/produces one Unit value, so that
    leads of constant constructors have something to hand over."""
    return _Lit(text, unit=True)


def iso_lift(iso: Iso) -> Descriptor2:
    return _IsoLift(iso)


def prism_lead(prism: Prism) -> Descriptor2:
    """Lift a prism: print deconstructs (and may fail), parse rebuilds."""
    return _PrismLead(prism)


def pair_lead() -> Descriptor2:
    return _PairLead()


def cons_lead() -> Descriptor2:
    return prism_lead(cons_prism())


def nil_lead() -> Descriptor2:
    return prism_lead(nil_prism())


def defer(thunk: Callable[[], Descriptor2]) -> Descriptor2:
    """Delay construction until first use; this is how grammars recurse."""
    return _Defer(thunk)


def many(p: Descriptor2) -> Descriptor2:
    """Zero or more p, collected into a List.  Greedy, backtrackable.

    p must consume input when it succeeds, or parsing will not
    terminate; recursion must stay behind at least one consuming
    descriptor (no left recursion).
    """
    d = defer(lambda: (cons_lead() + p + d) | nil_lead())
    return d


def some(p: Descriptor2) -> Descriptor2:
    """One or more p, collected into a List."""
    return cons_lead() + p + many(p)


def int_text_iso() -> Iso:
    """An Int against the List of its decimal digit characters."""
    def to(v: Value) -> Value:
        if not isinstance(v, Int):
            raise ContractViolation(f"integer wants an Int, got {v!r}")
        return List(tuple(Char(c) for c in str(v.n)))

    def from_(v: Value) -> Value:
        assert isinstance(v, List)
        return Int(int("".join(c.c for c in v.items)))

    return Iso("int", to, from_)


def integer() -> Descriptor2:
    """A maximal non-empty digit run as a non-negative Int."""
    return iso_lift(int_text_iso()) + some(satisfy(_is_ascii_digit, "digit"))


# ---------------------------------------------------------------------------
# The machine
#
# The remaining program is a cons list of nodes; a choice point snapshots
# (program, position-or-emitted-length, stack) so failure can rewind.


def run_parse(d: Descriptor2, text: str,
              seed: Sequence[Value] = ()) -> Optional[tuple]:
    """Parse a prefix of `text`; (end position, final stack) or None."""
    work = (d, None)
    pos = 0
    stack = stack_of(seed)
    alts = []
    while True:
        if work is None:
            return pos, stack
        node, rest = work
        work = rest
        if isinstance(node, _Seq):
            for item in reversed(node.items):
                work = (item, work)
            continue
        if isinstance(node, _Alt):
            alts.append(((node.right, work), pos, stack))
            work = (node.left, work)
            continue
        if isinstance(node, _Defer):
            work = (node.force(), work)
            continue
        if isinstance(node, _Satisfy):
            if pos < len(text) and node.pred(text[pos]):
                stack = stack.deliver(Char(text[pos]))
                pos += 1
                continue
        elif isinstance(node, _Lit):
            if text.startswith(node.text, pos):
                pos += len(node.text)
                if node.unit:
                    stack = stack.deliver(Unit())
                continue
        elif isinstance(node, _IsoLift):
            iso = node.iso
            stack = stack.open_frame(iso.name, 1, lambda xs, iso=iso: iso.from_(xs[0]))
            continue
        elif isinstance(node, _PrismLead):
            p = node.prism
            stack = stack.open_frame(p.tag, p.arity, p.review)
            continue
        elif isinstance(node, _PairLead):
            stack = stack.open_frame("pair", 2, lambda xs: Pair(xs[0], xs[1]))
            continue
        elif not isinstance(node, _Fail):
            raise ContractViolation(f"not a descriptor: {node!r}")
        # failure: rewind to the newest choice point
        if not alts:
            return None
        work, pos, stack = alts.pop()


def run_print(d: Descriptor2, seed: Sequence[Value] = ()) -> Optional[tuple]:
    """Print from a seeded stack; (emitted text, final stack) or None."""
    work = (d, None)
    chunks = []
    stack = stack_of(seed)
    alts = []
    while True:
        if work is None:
            return "".join(chunks), stack
        node, rest = work
        work = rest
        if isinstance(node, _Seq):
            for item in reversed(node.items):
                work = (item, work)
            continue
        if isinstance(node, _Alt):
            alts.append(((node.right, work), len(chunks), stack))
            work = (node.left, work)
            continue
        if isinstance(node, _Defer):
            work = (node.force(), work)
            continue
        if isinstance(node, _Satisfy):
            v, popped = stack.pop()
            if not isinstance(v, Char):
                raise ContractViolation(f"{node.label} wants a Char, got {v!r}")
            if node.pred(v.c):
                stack = popped
                chunks.append(v.c)
                continue
        elif isinstance(node, _Lit):
            if node.unit:
                v, stack = stack.pop()
                if not isinstance(v, Unit):
                    raise ContractViolation(f"lit_unit wants a Unit, got {v!r}")
            chunks.append(node.text)
            continue
        elif isinstance(node, _IsoLift):
            v, stack = stack.pop()
            stack = stack.push(node.iso.to(v))
            continue
        elif isinstance(node, _PrismLead):
            v, popped = stack.pop()
            components = node.prism.preview(v)
            if components is not None:
                stack = popped
                for c in reversed(components):
                    stack = stack.push(c)
                continue
        elif isinstance(node, _PairLead):
            v, stack = stack.pop()
            if not isinstance(v, Pair):
                raise ContractViolation(f"pair lead wants a Pair, got {v!r}")
            stack = stack.push(v.second).push(v.first)
            continue
        elif not isinstance(node, _Fail):
            raise ContractViolation(f"not a descriptor: {node!r}")
        if not alts:
            return None
        work, n, stack = alts.pop()
        del chunks[n:]


def parse(d: Descriptor2, text: str) -> Optional[Value]:
    """Parse one value.  Trailing unconsumed input is ignored."""
    result = run_parse(d, text)
    if result is None:
        return None
    _, stack = result
    values = stack.values()
    if len(values) != 1:
        raise ContractViolation(
            f"descriptor is not unary: parse left {len(values)} values")
    return values[0]


def pretty(d: Descriptor2, v: Value) -> Optional[str]:
    """Print one value to its canonical text."""
    result = run_print(d, [v])
    if result is None:
        return None
    text, stack = result
    if not stack.is_empty():
        raise ContractViolation(
            f"descriptor is not unary: print left {stack.size} values")
    return text
