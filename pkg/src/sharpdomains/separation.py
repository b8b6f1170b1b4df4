"""Apartness, sharpness and strong maximality as procedures.

Negative information is attached to elements as oracles; the searches here
combine it with chain membership to produce checkable witnesses:

* x ⋢ y is witnessed by an approximant b of x that y's negative oracle
  refutes; x # y when either direction is witnessed.
* A sharp element answers, for every a ≺ b, "a is in x" or "↓b ⋢ x"
  (with an explicit refuted approximant a′ ≺ b).
* A strongly maximal element answers, for every u ≺ v, "u is in x" or
  "↓v and x are Hausdorff separated" (with a non-refinable pair).

Witnesses are plain data and every ``verify_*`` function replays them
against member, the negative oracles and ``refinable``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Callable, Optional, Union

from . import _enum
from .basis import BasisDescriptor, refinable
from .errors import (CapabilityMissing, ConstructionError, FuelExhausted,
                     PreconditionViolation, ValidationError)
from .ideal import (IS_MEMBER, IdealElement, NegativeOracle, NotMember,
                    below_check, member, memo_chain, principal)

__all__ = [
    "Below", "NotAbove", "WayBelow", "Separated", "SharpOracle", "StrongMaxOracle",
    "Direction", "ApartnessWitness", "HausdorffWitness", "CotransitiveChoice",
    "SmythReport", "not_below", "apart", "positive", "sharp_split",
    "decided_element", "sharp_from_decider", "sharp_principal",
    "cotransitive_select", "hausdorff_separate", "strongmax_split",
    "derived_sharp_split", "smyth_check", "check_oracles", "verify_apartness",
    "verify_hausdorff", "verify_positive", "verify_split",
]


@dataclass(frozen=True)
class Below:
    pass


@dataclass(frozen=True)
class NotAbove:
    """``evidence`` is a basis element a′ ≺ b with a′ not in x."""
    evidence: Any


@dataclass(frozen=True)
class WayBelow:
    pass


@dataclass(frozen=True)
class HausdorffWitness:
    """``a`` approximates the left element, ``b`` the right one, and no basis
    element lies strictly above both."""
    a: Any
    b: Any
    a_index: int
    b_index: int
    refinable_checked: bool = True


@dataclass(frozen=True)
class Separated:
    """Separates ↓v (side ``a``) from the probed element (side ``b``)."""
    witness: HausdorffWitness


SharpAnswer = Union[Below, NotAbove]
StrongMaxAnswer = Union[WayBelow, Separated]


@dataclass(frozen=True)
class SharpOracle:
    split: Callable[[Any, Any], SharpAnswer]


@dataclass(frozen=True)
class StrongMaxOracle:
    split: Callable[[Any, Any], StrongMaxAnswer]


class Direction(enum.Enum):
    LEFT_NOT_BELOW_RIGHT = "left-not-below-right"
    RIGHT_NOT_BELOW_LEFT = "right-not-below-left"

    def flipped(self) -> "Direction":
        if self is Direction.LEFT_NOT_BELOW_RIGHT:
            return Direction.RIGHT_NOT_BELOW_LEFT
        return Direction.LEFT_NOT_BELOW_RIGHT


@dataclass(frozen=True)
class ApartnessWitness:
    direction: Direction
    element: Any
    member_index: int
    evidence: Any


@dataclass(frozen=True)
class SplitEvidence:
    """Non-membership certified by a sharp split rather than a negative oracle."""
    u: Any
    v: Any
    refuted: Any


@dataclass(frozen=True)
class CotransitiveChoice:
    branch: str          # "xz" or "yz"
    witness: ApartnessWitness


@dataclass(frozen=True)
class SmythReport:
    passed: bool
    branch: Optional[str] = None
    index: Optional[int] = None
    diagnostics: str = ""


def _require_negative(x: IdealElement):
    if x.negative is None:
        raise CapabilityMissing(f"{x!r} carries no negative information")


def _require_prec(basis: BasisDescriptor, a, b):
    if not basis.prec(a, b):
        raise PreconditionViolation(
            f"expected {basis.show(a)} ≺ {basis.show(b)} in {basis.name}")


# -- apartness -------------------------------------------------------------

def not_below(x: IdealElement, y: IdealElement, fuel: int):
    """Witness x ⋢ y: the first approximant of x (k ascending) that y refutes."""
    _require_negative(y)
    return below_check(x, y, fuel)


def apart(x: IdealElement, y: IdealElement, fuel: int) -> Optional[ApartnessWitness]:
    """Dovetail x ⋢ y and y ⋢ x, left step first at each chain index."""
    if x.negative is None and y.negative is None:
        raise CapabilityMissing("apart needs negative information on at least one side")
    steps = []
    if y.negative is not None:
        steps.append((x, y, Direction.LEFT_NOT_BELOW_RIGHT))
    if x.negative is not None:
        steps.append((y, x, Direction.RIGHT_NOT_BELOW_LEFT))
    partial = any(not other.negative.total for _, other, _ in steps)
    for s in range(fuel + 1):
        # Total oracles: plain index walk. Partial ones: diagonal over
        # (chain index, oracle fuel) so answers stay monotone in fuel.
        pairs = [(s, fuel)] if not partial else [(k, s - k) for k in range(s + 1)]
        for k, f in pairs:
            for inside, other, direction in steps:
                b = inside.chain(k)
                verdict = other.negative.refute_member(b, f)
                if isinstance(verdict, NotMember):
                    idx = member(inside, b, k + 1)
                    return ApartnessWitness(direction, b, idx, verdict.evidence)
    return None


def positive(x: IdealElement, fuel: int) -> Optional[ApartnessWitness]:
    """Witness x # ⊥ by a non-bottom approximant of x."""
    basis = x.basis
    if basis.is_bottom is None:
        raise CapabilityMissing(f"{basis.name} does not decide bottom (δ⊥)")
    for k in range(fuel + 1):
        b = x.chain(k)
        if not basis.is_bottom(b):
            return ApartnessWitness(Direction.LEFT_NOT_BELOW_RIGHT, b,
                                    member(x, b, k + 1), "not-bottom")
    return None


def _refutes(y: IdealElement, b, evidence, fuel: int) -> bool:
    if isinstance(evidence, SplitEvidence):
        if y.sharp is None or evidence.refuted != b:
            return False
        return y.sharp.split(evidence.u, evidence.v) == NotAbove(b)
    if y.negative is None:
        return False
    verdict = y.negative.refute_member(b, fuel)
    return isinstance(verdict, NotMember) and verdict.evidence == evidence


def verify_apartness(x: IdealElement, y: IdealElement, w: ApartnessWitness,
                     fuel: int = 256) -> bool:
    """Replay member on the inside and the refutation on the outside."""
    inside, outside = (x, y) if w.direction is Direction.LEFT_NOT_BELOW_RIGHT else (y, x)
    if member(inside, w.element, w.member_index) is None:
        return False
    return _refutes(outside, w.element, w.evidence, fuel)


def verify_positive(x: IdealElement, w: ApartnessWitness) -> bool:
    return (member(x, w.element, w.member_index) is not None
            and not x.basis.is_bottom(w.element))


# -- sharpness ---------------------------------------------------------------

def sharp_split(x: IdealElement, a, b) -> SharpAnswer:
    """For a ≺ b: Below (a is an approximant of x) or NotAbove (↓b ⋢ x)."""
    if x.sharp is None:
        raise CapabilityMissing(f"{x!r} carries no sharpness oracle")
    _require_prec(x.basis, a, b)
    return x.sharp.split(a, b)


def verify_split(x: IdealElement, a, b, answer: SharpAnswer, fuel: int = 256) -> bool:
    """Below replays as membership; NotAbove needs a′ ≺ b and a refuted a′."""
    if isinstance(answer, Below):
        return member(x, a, fuel) is not None
    e = answer.evidence
    if not x.basis.prec(e, b):
        return False
    if x.negative is not None:
        return isinstance(x.negative.refute_member(e, fuel), NotMember)
    return member(x, e, fuel) is None


def decided_element(basis: BasisDescriptor, chain: Callable[[int], Any],
                    decide: Callable[[Any], bool], *,
                    explain: Callable[[Any], Any] = lambda b: b,
                    strongmax: Optional[StrongMaxOracle] = None,
                    label: str = "", sample: int = 32,
                    check: bool = True) -> IdealElement:
    """Element with decidable membership: total negative oracle plus the
    split "Below if a is a member, else NotAbove(a)".

    ``check`` samples the decider against the chain and raises
    ValidationError on contradiction.
    """
    negative = NegativeOracle.from_decider(decide, explain)
    if not getattr(chain, "memoized", False):
        chain = memo_chain(chain)

    def split(a, b):
        return Below() if decide(a) else NotAbove(a)

    x = IdealElement(basis, chain, negative, SharpOracle(split), strongmax, label)
    if check:
        check_oracles(x, sample)
    return x


def sharp_from_decider(basis: BasisDescriptor, chain: Callable[[int], Any],
                       decide: Callable[[Any], bool], **kwargs) -> IdealElement:
    """Algebraic case: decidable c ⊑ x for every compact c makes x sharp."""
    if not basis.reflexive:
        raise PreconditionViolation(
            f"sharp_from_decider needs a reflexive (algebraic) basis, got {basis.name}")
    return decided_element(basis, chain, decide, **kwargs)


def sharp_principal(basis: BasisDescriptor, b) -> IdealElement:
    """↓b with its sharpness oracle: decidable ≺ decides membership in ↓b."""
    p = principal(basis, b)
    return decided_element(basis, p.chain, lambda a: basis.prec(a, b),
                           label=p.label, check=False)


def cotransitive_select(x: IdealElement, y: IdealElement, w: ApartnessWitness,
                        z: IdealElement, fuel: int) -> CotransitiveChoice:
    """From x # y and sharp z, produce a witness for x # z or for y # z.

    With u the approximant in w (u on the inside, refuted on the outside),
    interpolate u ≺ v inside, then split z on (u, v): Below puts u in z, so
    z ⋢ outside; NotAbove refutes some a′ ≺ v in z, so inside ⋢ z.
    """
    if z.sharp is None:
        raise CapabilityMissing(f"{z!r} is not equipped as a sharp element")
    basis = x.basis
    left = w.direction is Direction.LEFT_NOT_BELOW_RIGHT
    inside = x if left else y
    u = w.element
    m = member(inside, u, max(fuel, w.member_index))
    if m is None:
        raise FuelExhausted("witness approximant not confirmed in the inside chain")
    v = basis.interpolant(u, inside.chain(m))
    if member(inside, v, fuel) is None:
        raise FuelExhausted("interpolant not confirmed in the inside chain")

    answer = z.sharp.split(u, v)
    if isinstance(answer, Below):
        # z ⋢ outside, witnessed by u.
        idx = member(z, u, fuel)
        if idx is None:
            raise FuelExhausted("approximant of the sharp element not reached within fuel")
        outside_branch = "yz" if left else "xz"
        # In the pair (outside, z) the refuted side is z: right not below left.
        wz = ApartnessWitness(Direction.RIGHT_NOT_BELOW_LEFT, u, idx, w.evidence)
        return CotransitiveChoice(outside_branch, wz)

    a2 = answer.evidence
    idx = member(inside, a2, fuel)
    if idx is None:
        raise FuelExhausted("refuted approximant not confirmed in the inside chain")
    if z.negative is not None:
        verdict = z.negative.refute_member(a2, fuel)
        if not isinstance(verdict, NotMember):
            raise ValidationError("sharp split and negative oracle of z disagree")
        evidence = verdict.evidence
    else:
        evidence = SplitEvidence(u, v, a2)
    inside_branch = "xz" if left else "yz"
    return CotransitiveChoice(
        inside_branch, ApartnessWitness(Direction.LEFT_NOT_BELOW_RIGHT, a2, idx, evidence))


# -- Hausdorff separation and strong maximality ---------------------------

def hausdorff_separate(x: IdealElement, y: IdealElement,
                       fuel: int) -> Optional[HausdorffWitness]:
    """First non-refinable pair (chain_x(i), chain_y(j)) in diagonal order."""
    if x.basis.refinable is None:
        raise CapabilityMissing(f"{x.basis.name} has no refinability decider")
    ref = x.basis.refinable
    for i, j in _enum.diagonal(fuel):
        a, b = x.chain(i), y.chain(j)
        if not ref(a, b):
            return HausdorffWitness(a, b, member(x, a, i + 1), member(y, b, j + 1))
    return None


def verify_hausdorff(x: IdealElement, y: IdealElement, w: HausdorffWitness) -> bool:
    return (member(x, w.a, w.a_index) is not None
            and member(y, w.b, w.b_index) is not None
            and not refinable(x.basis, w.a, w.b))


def strongmax_split(x: IdealElement, u, v) -> StrongMaxAnswer:
    """For u ≺ v: WayBelow (u is an approximant of x) or Separated(↓v, x)."""
    if x.strongmax is None:
        raise CapabilityMissing(f"{x!r} carries no strong-maximality oracle")
    _require_prec(x.basis, u, v)
    return x.strongmax.split(u, v)


def derived_sharp_split(x: IdealElement, a, b) -> SharpAnswer:
    """Sharp split obtained from the strong-maximality oracle.

    Hausdorff separation of ↓b and x refutes the ↓b-side approximant in x.
    """
    answer = strongmax_split(x, a, b)
    if isinstance(answer, WayBelow):
        return Below()
    return NotAbove(answer.witness.a)


def smyth_check(x: IdealElement, u, v, fuel: int) -> SmythReport:
    """Search d = chain_x(k) with u ≺ d, or a non-refinable pair drawn from
    the approximants of ↓v and ↓d."""
    if x.strongmax is None:
        raise CapabilityMissing(f"{x!r} carries no strong-maximality oracle")
    basis = x.basis
    _require_prec(basis, u, v)
    pv = principal(basis, v)
    for k in range(fuel + 1):
        d = x.chain(k)
        if basis.prec(u, d):
            return SmythReport(True, "way-below", k)
        pd = principal(basis, d)
        for i, j in _enum.diagonal(k):
            if not basis.refinable(pv.chain(i), pd.chain(j)):
                return SmythReport(True, "separated", k,
                                   f"{basis.show(pv.chain(i))} vs {basis.show(pd.chain(j))}")
    return SmythReport(False, diagnostics=f"no approximant within fuel {fuel}")


# -- construction-time consistency sampling -------------------------------

def check_oracles(x: IdealElement, sample: int = 32) -> None:
    """Sample every attached oracle against the chain and each other.

    Uses the first ``sample`` chain elements and enumerated basis elements;
    raises ValidationError on the first contradiction.
    """
    basis = x.basis
    fuel = 4 * sample
    for k in range(sample):
        if not basis.prec(x.chain(k), x.chain(k + 1)):
            raise ValidationError(f"{x!r}: chain({k}) is not below chain({k + 1})")
    neg = x.negative
    if neg is not None:
        for k in range(sample):
            if isinstance(neg.refute_member(x.chain(k), fuel), NotMember):
                raise ValidationError(f"{x!r}: oracle refutes chain({k})")
    grid = [basis.enumerate(n) for n in range(sample)]
    if neg is not None and neg.total:
        for b in grid:
            verdict = neg.refute_member(b, fuel)
            found = _reaches(x, b, fuel)
            if verdict is IS_MEMBER and not found:
                raise ValidationError(
                    f"{x!r}: oracle accepts {basis.show(b)} but the chain never reaches it")
            if isinstance(verdict, NotMember) and found:
                raise ValidationError(
                    f"{x!r}: oracle refutes {basis.show(b)} which the chain contains")
    if x.sharp is None and x.strongmax is None:
        return
    for a in grid:
        for b in grid:
            if not basis.prec(a, b):
                continue
            if x.sharp is not None:
                answer = x.sharp.split(a, b)
                if not _split_consistent(x, a, b, answer, fuel):
                    raise ValidationError(
                        f"{x!r}: sharp split on ({basis.show(a)}, {basis.show(b)}) contradicts")
            if x.strongmax is not None:
                answer = x.strongmax.split(a, b)
                if isinstance(answer, WayBelow):
                    ok = _accepts(x, a, fuel)
                else:
                    ok = verify_hausdorff(principal(basis, b), x, answer.witness)
                if not ok:
                    raise ValidationError(
                        f"{x!r}: strongmax split on ({basis.show(a)}, {basis.show(b)}) contradicts")


def _reaches(x: IdealElement, b, fuel: int) -> bool:
    # Same answer as member(x, b, fuel) on a ≺-increasing chain, by
    # transitivity, at the cost of one comparison.
    return bool(x.basis.prec(b, x.chain(fuel)))


def _accepts(x: IdealElement, a, fuel: int) -> bool:
    if x.negative is not None and x.negative.total:
        return x.negative.refute_member(a, fuel) is IS_MEMBER
    return _reaches(x, a, fuel)


def _split_consistent(x, a, b, answer, fuel) -> bool:
    if isinstance(answer, Below):
        return _accepts(x, a, fuel)
    e = answer.evidence
    if not x.basis.prec(e, b):
        return False
    if x.negative is not None and x.negative.total:
        return isinstance(x.negative.refute_member(e, fuel), NotMember)
    return not _reaches(x, e, fuel)
