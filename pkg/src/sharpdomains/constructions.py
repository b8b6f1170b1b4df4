"""Basis combinators: products, liftings of sets and step functions.

The exponential E^D is presented through its compact elements, finite
bounded sets of single-step functions ⟨a ⇒ b⟩. Step functions are kept in a
canonical form (only the points where the function jumps) so that equality
of compacts is syntactic.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Callable, Iterable, Optional, Union

from . import _enum
from .basis import BasisDescriptor
from .errors import InvariantViolation, ParseError, PreconditionViolation

__all__ = [
    "Bottom", "Eta", "BOTTOM", "Lifted", "lift_compacts", "lift_map",
    "StepFunction", "Unbounded", "step_normalize", "step_eval", "step_leq",
    "exponential_basis", "product_basis", "single_step",
]


# -- lifting ---------------------------------------------------------------

@dataclass(frozen=True)
class Bottom:
    def __repr__(self):
        return "_|_"


@dataclass(frozen=True)
class Eta:
    value: Any

    def __repr__(self):
        return f"eta({self.value})"


BOTTOM = Bottom()
Lifted = Union[Bottom, Eta]


def _lift_key(c):
    return (0,) if isinstance(c, Bottom) else (1, c.value)


def _lift_prec(a, b) -> bool:
    return isinstance(a, Bottom) or a == b


def _lift_join(items):
    top = BOTTOM
    for c in items:
        if isinstance(c, Eta):
            if isinstance(top, Eta) and top != c:
                return None
            top = c
    return top


_ETA_RE = re.compile(r"eta\((-?\d+)\)$")


def _lift_parse(text: str):
    text = text.strip()
    if text in ("_|_", "bot", "⊥"):
        return BOTTOM
    m = _ETA_RE.match(text)
    if not m:
        raise ParseError("expected _|_ or eta(n)", text, 0)
    return Eta(int(m.group(1)))


def lift_compacts(size: Optional[int] = None) -> BasisDescriptor:
    """Compacts of L(X) for X = {0..size-1}, or X = ℕ when size is None."""
    if size is None:
        name = "L(N)"

        def enum(n):
            return BOTTOM if n == 0 else Eta(n - 1)
    else:
        if size < 0:
            raise PreconditionViolation("carrier size must be a natural number")
        name = f"L({size})"

        def enum(n):
            k = n % (size + 1)
            return BOTTOM if k == 0 else Eta(k - 1)

    return BasisDescriptor(
        name=name,
        prec=_lift_prec,
        reflexive=True,
        enumerate=enum,
        interpolant=lambda a, b: b,
        refinable=lambda a, b: _lift_join((a, b)) is not None,
        is_bottom=lambda c: isinstance(c, Bottom),
        show=repr,
        parse=_lift_parse,
        join=_lift_join,
        sort_key=_lift_key,
    )


def lift_map(f: Callable[[Any], Any]) -> Callable[[Lifted], Lifted]:
    """The strict extension L(f)."""
    def lifted(c):
        return BOTTOM if isinstance(c, Bottom) else Eta(f(c.value))
    return lifted


# -- step functions --------------------------------------------------------

@dataclass(frozen=True)
class StepFunction:
    """Canonical finite set of single steps ⟨a ⇒ b⟩, sorted."""
    pairs: tuple = ()

    def __repr__(self):
        return "{" + ", ".join(f"{a!r}=>{b!r}" for a, b in self.pairs) + "}"


@dataclass(frozen=True)
class Unbounded:
    """The listed steps have bounded arguments but unbounded values."""
    conflict: tuple


def single_step(a, b) -> StepFunction:
    return StepFunction(((a, b),))


def _key(basis: BasisDescriptor):
    return basis.sort_key if basis.sort_key is not None else basis.show


def _is_bottom(be: BasisDescriptor, b) -> bool:
    if be.is_bottom is not None:
        return be.is_bottom(b)
    return be.prec(b, be.join(()))


def step_normalize(pairs: Iterable, bd: BasisDescriptor,
                   be: BasisDescriptor) -> Union[StepFunction, Unbounded]:
    """Canonical form of the join of the given single steps.

    Argument sets are closed under existing pairwise joins in D; the value at
    each closure point is the E-join of the steps below it. Only jump points
    (value not already reached strictly below) are kept.
    """
    steps = [(a, b) for a, b in pairs if not _is_bottom(be, b)]
    points = []
    for a, _ in steps:
        if a not in points:
            points.append(a)
    grown = True
    while grown:
        grown = False
        for p, q in combinations(list(points), 2):
            j = bd.join((p, q))
            if j is not None and j not in points:
                points.append(j)
                grown = True

    kd, ke = _key(bd), _key(be)
    points.sort(key=kd)

    def canonical(items):
        return tuple(sorted(set(items), key=lambda ab: (kd(ab[0]), ke(ab[1]))))

    value = {}
    for u in points:
        below = [(a, b) for a, b in steps if bd.prec(a, u)]
        v = be.join(tuple(b for _, b in below))
        if v is None:
            return Unbounded(canonical(below))
        value[u] = v

    out = []
    for u in points:
        lower = [value[w] for w in points if w != u and bd.prec(w, u)]
        base = be.join(tuple(lower))
        if base is None:
            raise InvariantViolation("values below a point are unbounded")
        if not be.prec(value[u], base):
            out.append((u, value[u]))
    return StepFunction(canonical(out))


def step_eval(T: StepFunction, a, bd: BasisDescriptor, be: BasisDescriptor):
    """(⊔T)(a): the join of the b_i with a_i ⊑ a."""
    v = be.join(tuple(b for ai, b in T.pairs if bd.prec(ai, a)))
    if v is None:
        raise InvariantViolation(f"step function {T!r} is not bounded at {a!r}")
    return v


def step_leq(S: StepFunction, T: StepFunction, bd: BasisDescriptor,
             be: BasisDescriptor) -> bool:
    """S ⊑ T, decided step by step: ⟨a ⇒ b⟩ ⊑ ⊔T iff b ⊑ (⊔T)(a)."""
    return all(be.prec(b, step_eval(T, a, bd, be)) for a, b in S.pairs)


_STEP_RE = re.compile(r"\s*(.+?)\s*=>\s*(.+?)\s*$")


def exponential_basis(bd: BasisDescriptor, be: BasisDescriptor) -> BasisDescriptor:
    """Compact basis of E^D for algebraic D and bounded-complete algebraic E.

    Both factors must be reflexive and supply join hooks (the D hook decides
    boundedness of argument sets).
    """
    if not bd.reflexive or not be.reflexive:
        raise PreconditionViolation("exponential needs reflexive (algebraic) factors")
    if be.join is None or bd.join is None:
        raise PreconditionViolation("exponential needs join hooks on both factors")
    empty = StepFunction()
    values: list = []   # non-bottom E compacts in enumeration order
    scan = [0]

    def normalize(pairs):
        return step_normalize(pairs, bd, be)

    def value(j):
        # Finite E runs out of fresh values; the scan is capped and cycles.
        while len(values) <= j and scan[0] < 64 * (j + 1):
            c = be.enumerate(scan[0])
            scan[0] += 1
            if not _is_bottom(be, c) and c not in values:
                values.append(c)
        if not values:
            return be.enumerate(0)
        return values[j % len(values)]

    def enum(n):
        # n codes a partial map from D-compacts: entry c at position i adds
        # the step d_i => (c-1)-th non-bottom value, c = 0 skips d_i.
        steps = []
        for i, c in enumerate(_enum.nat_sequence(n)):
            if c:
                steps.append((bd.enumerate(i), value(c - 1)))
        s = normalize(steps)
        return empty if isinstance(s, Unbounded) else s

    def join(items):
        s = normalize([p for T in items for p in T.pairs])
        return None if isinstance(s, Unbounded) else s

    def parse(text: str):
        body = text.strip()
        if not (body.startswith("{") and body.endswith("}")):
            raise ParseError("step function must be braced", text, 0)
        inner = body[1:-1].strip()
        steps = []
        if inner:
            for part in inner.split(","):
                m = _STEP_RE.match(part)
                if not m:
                    raise ParseError("expected a=>b", text, text.find(part))
                steps.append((bd.parse(m.group(1)), be.parse(m.group(2))))
        s = normalize(steps)
        if isinstance(s, Unbounded):
            raise ParseError("unbounded step function", text, 0)
        return s

    kd, ke = _key(bd), _key(be)
    return BasisDescriptor(
        name=f"{be.name}^{bd.name}",
        prec=lambda S, T: step_leq(S, T, bd, be),
        reflexive=True,
        enumerate=enum,
        interpolant=lambda S, T: T,
        refinable=lambda S, T: join((S, T)) is not None,
        is_bottom=lambda S: not S.pairs,
        show=repr,
        parse=parse if bd.parse and be.parse else None,
        join=join,
        sort_key=lambda S: (len(S.pairs), tuple((kd(a), ke(b)) for a, b in S.pairs)),
    )


# -- products --------------------------------------------------------------

def product_basis(bd: BasisDescriptor, be: BasisDescriptor) -> BasisDescriptor:
    """B_D × B_E with everything componentwise."""
    both = lambda f, g: f is not None and g is not None  # noqa: E731

    refinable = None
    if both(bd.refinable, be.refinable):
        refinable = lambda x, y: bd.refinable(x[0], y[0]) and be.refinable(x[1], y[1])  # noqa: E731
    is_bottom = None
    if both(bd.is_bottom, be.is_bottom):
        is_bottom = lambda x: bd.is_bottom(x[0]) and be.is_bottom(x[1])  # noqa: E731
    join = None
    if both(bd.join, be.join) and bd.reflexive and be.reflexive:
        def join(items):
            items = tuple(items)
            l = bd.join(tuple(x[0] for x in items))
            r = be.join(tuple(x[1] for x in items))
            return None if l is None or r is None else (l, r)

    def side_chain(basis):
        if basis.reflexive:
            return lambda b, n: b
        return basis.principal_chain

    principal_chain = None
    lc, rc = side_chain(bd), side_chain(be)
    if not (bd.reflexive and be.reflexive) and lc is not None and rc is not None:
        principal_chain = lambda x, n: (lc(x[0], n), rc(x[1], n))  # noqa: E731

    sort_key = None
    if both(bd.sort_key, be.sort_key):
        sort_key = lambda x: (bd.sort_key(x[0]), be.sort_key(x[1]))  # noqa: E731

    def enum(n):
        i, j = _enum.unpair(n)
        return bd.enumerate(i), be.enumerate(j)

    return BasisDescriptor(
        name=f"{bd.name}x{be.name}",
        prec=lambda x, y: bd.prec(x[0], y[0]) and be.prec(x[1], y[1]),
        reflexive=bd.reflexive and be.reflexive,
        enumerate=enum,
        interpolant=lambda x, y: (bd.interpolant(x[0], y[0]), be.interpolant(x[1], y[1])),
        refinable=refinable,
        is_bottom=is_bottom,
        show=lambda x: f"<{bd.show(x[0])}, {be.show(x[1])}>",
        join=join,
        principal_chain=principal_chain,
        sort_key=sort_key,
    )
