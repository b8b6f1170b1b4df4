"""Elements of the rounded ideal completion Idl(B, ≺) as approximant chains.

An element is presented by a ≺-increasing chain ``chain(0) ≺ chain(1) ≺ ...``;
the ideal it denotes is ⋃ₙ {a | a ≺ chain(n)}. Chains carry positive
information only: membership is semidecidable, never refutable. Refutation
needs a :class:`NegativeOracle` attached to the element.

Searches take a ``fuel`` budget counting chain indices inspected (indices
0..fuel inclusive). Exhausting fuel yields ``None``, the honest "unknown".
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Any, Callable, Optional, Sequence, Union

from .basis import BasisDescriptor
from .errors import CapabilityMissing, ConstructionError, PreconditionViolation


@dataclass(frozen=True)
class NotMember:
    """Certified non-membership; ``evidence`` is plain replayable data."""
    evidence: Any


@dataclass(frozen=True)
class IsMember:
    pass


IS_MEMBER = IsMember()

Verdict = Union[NotMember, IsMember, None]


@dataclass(frozen=True)
class NegativeOracle:
    """``refute_member(b, fuel)`` answers NotMember, IS_MEMBER or None (unknown).

    A total oracle never answers None. Oracles must be pure.
    """
    refute_member: Callable[[Any, int], Verdict]
    total: bool = False

    @classmethod
    def from_decider(cls, decide: Callable[[Any], bool],
                     explain: Callable[[Any], Any] = lambda b: b) -> "NegativeOracle":
        def refute(b, fuel):
            return IS_MEMBER if decide(b) else NotMember(explain(b))
        return cls(refute, total=True)


@dataclass(frozen=True, eq=False)
class IdealElement:
    basis: BasisDescriptor
    chain: Callable[[int], Any]
    negative: Optional[NegativeOracle] = None
    sharp: Any = None          # separation.SharpOracle
    strongmax: Any = None      # separation.StrongMaxOracle
    label: str = ""

    def __repr__(self):
        return f"IdealElement({self.label or '?'} in {self.basis.name})"

    def prefix(self, n: int) -> list:
        return [self.chain(k) for k in range(n)]


@dataclass(frozen=True)
class Refutation:
    """``element`` = chain_x(chain_index) lies in x (found by member at
    ``member_index``) and the other side's oracle refutes it with ``evidence``."""
    element: Any
    chain_index: int
    member_index: int
    evidence: Any


def iterated_chain(first, step: Callable[[Any], Any]) -> Callable[[int], Any]:
    """Memoised chain n ↦ stepⁿ(first). The cache is observationally pure."""
    cache = [first]
    lock = threading.Lock()

    def chain(n: int):
        with lock:
            while len(cache) <= n:
                cache.append(step(cache[-1]))
            return cache[n]
    chain.memoized = True
    return chain


def memo_chain(chain: Callable[[int], Any]) -> Callable[[int], Any]:
    """Cache a pure chain; prefixes are computed once."""
    cache: list = []
    lock = threading.Lock()

    def cached(n: int):
        with lock:
            while len(cache) <= n:
                cache.append(chain(len(cache)))
            return cache[n]
    cached.memoized = True
    return cached


def principal(basis: BasisDescriptor, b, bound: int = 1024) -> IdealElement:
    """The element ↓b = {a | a ≺ b}.

    Reflexive bases use the constant chain. Irreflexive bases use the basis'
    closed-form principal chain when supplied; otherwise a starting a ≺ b is
    found by enumeration and pushed towards b by repeated interpolation.
    """
    if basis.reflexive:
        return IdealElement(basis, lambda n: b, label=f"↓{basis.show(b)}")
    if basis.principal_chain is not None:
        hook = basis.principal_chain
        return IdealElement(basis, lambda n: hook(b, n), label=f"↓{basis.show(b)}")
    for n in range(bound + 1):
        a = basis.enumerate(n)
        if basis.prec(a, b):
            break
    else:
        raise ConstructionError(
            f"no approximant of {basis.show(b)} within {bound} enumerated elements")
    chain = iterated_chain(a, lambda c: basis.interpolant(c, b))
    return IdealElement(basis, chain, label=f"↓{basis.show(b)}")


def member(x: IdealElement, b, fuel: int) -> Optional[int]:
    """Least n ≤ fuel with b ≺ chain(n), or None."""
    prec = x.basis.prec
    for n in range(fuel + 1):
        if prec(b, x.chain(n)):
            return n
    return None


def way_below_principal(a, x: IdealElement, fuel: int) -> Optional[int]:
    """Semidecide ↓a ≪ x; for rounded ideals this is exactly a ∈ x."""
    return member(x, a, fuel)


def _member_index(x: IdealElement, k: int) -> int:
    idx = member(x, x.chain(k), k + 1)
    if idx is None:  # chain not ≺-increasing
        raise ConstructionError(f"{x!r}: chain({k}) is not below chain({k + 1})")
    return idx


def below_check(x: IdealElement, y: IdealElement, fuel: int) -> Optional[Refutation]:
    """Search x's chain for an approximant that y's oracle refutes.

    A result certifies x ⋢ y. None is not evidence of x ⊑ y.
    """
    if y.negative is None:
        raise CapabilityMissing(f"{y!r} carries no negative information")
    refute = y.negative.refute_member
    if y.negative.total:
        candidates = ((k, fuel) for k in range(fuel + 1))
    else:
        # Diagonal (chain index, oracle fuel) keeps answers monotone in fuel.
        candidates = ((k, s - k) for s in range(fuel + 1) for k in range(s + 1))
    for k, f in candidates:
        b = x.chain(k)
        verdict = refute(b, f)
        if isinstance(verdict, NotMember):
            return Refutation(b, k, _member_index(x, k), verdict.evidence)
    return None


def sup_linear(xs: Union[Sequence[IdealElement], Callable[[int], IdealElement]],
               basis: Optional[BasisDescriptor] = None) -> IdealElement:
    """Supremum (union) of a countable family over a linearly ordered basis.

    ``xs`` is a finite sequence or a function i ↦ x_i. chain(n) interpolates
    strictly above max{chain_{x_i}(n) | i ≤ n}, towards the next approximant
    of the element attaining that max.
    """
    if callable(xs) and not isinstance(xs, Sequence):
        family, count = xs, None
    else:
        seq = list(xs)
        if not seq:
            raise PreconditionViolation("sup_linear needs an inhabited family")
        family, count = seq.__getitem__, len(seq)
    if basis is None:
        basis = family(0).basis
    if not basis.linear:
        raise CapabilityMissing(f"{basis.name} is not linearly ordered")

    def chain(n: int):
        top = n if count is None else min(n, count - 1)
        best_i, best = 0, family(0).chain(n)
        for i in range(1, top + 1):
            c = family(i).chain(n)
            if basis.prec(best, c):
                best_i, best = i, c
        return basis.interpolant(best, family(best_i).chain(n + 1))

    return IdealElement(basis, chain, label="sup")


def check_chain(x: IdealElement, n: int = 100) -> list[int]:
    """Indices k < n where chain(k) ≺ chain(k+1) fails."""
    return [k for k in range(n) if not x.basis.prec(x.chain(k), x.chain(k + 1))]
