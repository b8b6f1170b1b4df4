"""Abstract bases (B, ≺) with decidable relations.

A :class:`BasisDescriptor` is the presentation every other module consumes:
a decidable relation ``prec``, a surjective enumerator fixing the canonical
search order, a closed-form interpolant and optional capabilities
(refinability, bottom detection, finite joins of compacts).

Decidability of ``prec`` is the (δ≪) condition; when ``reflexive`` is set,
≺ is the order on compact elements and the same decider gives (δ⊑).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterable, Optional

from .errors import CapabilityMissing, PreconditionViolation


@dataclass(frozen=True)
class BasisDescriptor:
    name: str
    prec: Callable[[Any, Any], bool]
    reflexive: bool
    enumerate: Callable[[int], Any]
    interpolant: Callable[[Any, Any], Any]
    refinable: Optional[Callable[[Any, Any], bool]] = None
    is_bottom: Optional[Callable[[Any], bool]] = None
    show: Callable[[Any], str] = repr
    parse: Optional[Callable[[str], Any]] = None
    # Join of a finite set of compacts, or None when the set is unbounded.
    join: Optional[Callable[[Iterable[Any]], Any]] = None
    # Closed-form cofinal chain of ↓b for irreflexive bases: (b, n) -> element.
    principal_chain: Optional[Callable[[Any, int], Any]] = None
    # prec is a strict total order (needed by sup_linear).
    linear: bool = False
    sort_key: Optional[Callable[[Any], Any]] = None

    def __repr__(self):
        return f"BasisDescriptor({self.name})"


@dataclass(frozen=True)
class Violation:
    kind: str
    elements: tuple

    def __str__(self):
        return f"{self.kind}: {', '.join(map(str, self.elements))}"


def prec(basis: BasisDescriptor, a, b) -> bool:
    return bool(basis.prec(a, b))


def interpolate(basis: BasisDescriptor, a, b):
    """Return c with a ≺ c ≺ b."""
    if not basis.prec(a, b):
        raise PreconditionViolation(
            f"interpolate needs {basis.show(a)} ≺ {basis.show(b)} in {basis.name}")
    return basis.interpolant(a, b)


def refinable(basis: BasisDescriptor, a, b) -> bool:
    """Whether some z has a ≺ z and b ≺ z."""
    if basis.refinable is None:
        raise CapabilityMissing(f"{basis.name} has no refinability decider")
    return bool(basis.refinable(a, b))


def is_bottom(basis: BasisDescriptor, b) -> bool:
    if basis.is_bottom is None:
        raise CapabilityMissing(f"{basis.name} does not decide bottom (δ⊥)")
    return bool(basis.is_bottom(b))


def element_at(basis: BasisDescriptor, n: int):
    """The n-th basis element in the canonical enumeration."""
    if n < 0:
        raise PreconditionViolation("enumeration index must be a natural number")
    return basis.enumerate(n)


def join_compacts(basis: BasisDescriptor, items: Iterable):
    """Join of finitely many compacts, or None when they have no upper bound."""
    if basis.join is None:
        raise CapabilityMissing(f"{basis.name} has no join hook")
    return basis.join(tuple(items))


def search_interpolant(basis: BasisDescriptor, a, b, bound: int):
    """Enumeration-order search for some c with a ≺ c ≺ b; None past ``bound``."""
    for n in range(bound + 1):
        c = basis.enumerate(n)
        if basis.prec(a, c) and basis.prec(c, b):
            return c
    return None


def validate_basis(basis: BasisDescriptor, sample_size: int,
                   search_bound: int = 0) -> list[Violation]:
    """Spot-check the abstract-basis axioms on the first ``sample_size`` elements.

    Checks transitivity, reflexivity (when flagged), the supplied interpolant,
    symmetry and soundness of refinability, and agreement of the join hook
    with ``prec``. Violations are returned, never raised.
    """
    xs = []
    seen = set()
    for n in range(sample_size):
        x = basis.enumerate(n)
        if x not in seen:
            seen.add(x)
            xs.append(x)
    m = len(xs)
    rel = [[bool(basis.prec(a, b)) for b in xs] for a in xs]
    out: list[Violation] = []

    for i in range(m):
        if basis.reflexive and not rel[i][i]:
            out.append(Violation("reflexivity", (basis.show(xs[i]),)))
        succ = [j for j in range(m) if rel[i][j]]
        for j in succ:
            for k in range(m):
                if rel[j][k] and not rel[i][k]:
                    out.append(Violation(
                        "transitivity",
                        (basis.show(xs[i]), basis.show(xs[j]), basis.show(xs[k]))))
            c = basis.interpolant(xs[i], xs[j])
            if not (basis.prec(xs[i], c) and basis.prec(c, xs[j])):
                found = search_interpolant(basis, xs[i], xs[j], search_bound)
                out.append(Violation(
                    "interpolant",
                    (basis.show(xs[i]), basis.show(xs[j]), basis.show(c),
                     "search:" + ("none" if found is None else basis.show(found)))))

    if basis.refinable is not None:
        for i in range(m):
            for j in range(i, m):
                r = bool(basis.refinable(xs[i], xs[j]))
                if r != bool(basis.refinable(xs[j], xs[i])):
                    out.append(Violation("refinable-symmetry",
                                         (basis.show(xs[i]), basis.show(xs[j]))))
                if not r:
                    for k in range(m):
                        if rel[i][k] and rel[j][k]:
                            out.append(Violation(
                                "refinable-soundness",
                                (basis.show(xs[i]), basis.show(xs[j]), basis.show(xs[k]))))
                            break

    if basis.join is not None and basis.reflexive:
        for i in range(m):
            for j in range(i, m):
                u = basis.join((xs[i], xs[j]))
                if u is None:
                    if any(rel[i][k] and rel[j][k] for k in range(m)):
                        out.append(Violation("join-missed-bound",
                                             (basis.show(xs[i]), basis.show(xs[j]))))
                    continue
                if not (basis.prec(xs[i], u) and basis.prec(xs[j], u)):
                    out.append(Violation("join-not-upper",
                                         (basis.show(xs[i]), basis.show(xs[j]))))
                for k in range(m):
                    if rel[i][k] and rel[j][k] and not basis.prec(u, xs[k]):
                        out.append(Violation("join-not-least",
                                             (basis.show(xs[i]), basis.show(xs[j]),
                                              basis.show(xs[k]))))
                        break
    return out
