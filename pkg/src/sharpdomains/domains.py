"""Concrete domains: Cantor and Baire, partial Dedekind reals, lower reals and
the embedding of binary sequences into L(2)^L(ℕ).

Each ``embed_*`` function returns an :class:`IdealElement` carrying a chain
together with the oracles that make it sharp (and strongly maximal where
that holds). All arithmetic is exact over :class:`fractions.Fraction`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Optional, Sequence

from . import _enum
from .basis import BasisDescriptor
from .constructions import (BOTTOM, Bottom, Eta, StepFunction, exponential_basis,
                            lift_compacts, step_leq)
from .errors import (InvariantViolation, ParseError, PreconditionViolation,
                     ValidationError)
from .ideal import IS_MEMBER, IdealElement, iterated_chain, member, principal
from .separation import (Below, HausdorffWitness, Separated, StrongMaxOracle,
                         WayBelow, decided_element, not_below,
                         sharp_from_decider)

__all__ = [
    "SequenceGenerator", "RationalLocator", "cantor_basis", "baire_basis",
    "dedekind_basis", "lower_basis", "embed_seq", "embed_located",
    "embed_rational", "embed_sqrt", "rational_locator", "sqrt_locator",
    "validate_locator", "lower_from_locator", "upper_complement", "InU",
    "locator_roundtrip", "epsilon_basis", "epsilon_embed", "nonmax_witness",
    "NonMaxReport", "baire_phi", "standard_grid", "stock_bases", "show_rational",
    "parse_rational", "cantor_word",
]

SEARCH_CAP = 4096


def show_rational(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError("malformed rational", text, 0) from None


# -- finite and infinite sequences -----------------------------------------

def _is_prefix(s, t) -> bool:
    return len(s) <= len(t) and t[:len(s)] == s


def _seq_join(items):
    top = ()
    for s in items:
        if _is_prefix(top, s):
            top = s
        elif not _is_prefix(s, top):
            return None
    return top


def _sequence_basis(name, enum, show, parse) -> BasisDescriptor:
    return BasisDescriptor(
        name=name,
        prec=_is_prefix,
        reflexive=True,
        enumerate=enum,
        interpolant=lambda s, t: t,
        refinable=lambda s, t: _is_prefix(s, t) or _is_prefix(t, s),
        is_bottom=lambda s: len(s) == 0,
        show=show,
        parse=parse,
        join=_seq_join,
        sort_key=lambda s: (len(s), s),
    )


def cantor_word(text: str) -> tuple:
    """Binary word from its digit string, e.g. "0110"."""
    text = text.strip()
    for i, ch in enumerate(text):
        if ch not in "01":
            raise ParseError("binary digit expected", text, i)
    return tuple(int(ch) for ch in text)


def _parse_baire(text: str) -> tuple:
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ParseError("expected [n,...]", text, 0)
    inner = body[1:-1].strip()
    if not inner:
        return ()
    try:
        return tuple(int(t) for t in inner.split(","))
    except ValueError:
        raise ParseError("natural number expected", text, 1) from None


@lru_cache(maxsize=None)
def cantor_basis() -> BasisDescriptor:
    return _sequence_basis("cantor", lambda n: _enum.word(n, 2),
                           lambda s: "".join(map(str, s)), cantor_word)


@lru_cache(maxsize=None)
def baire_basis() -> BasisDescriptor:
    return _sequence_basis("baire", _enum.nat_sequence,
                           lambda s: "[" + ",".join(map(str, s)) + "]", _parse_baire)


@dataclass(frozen=True)
class SequenceGenerator:
    """An infinite sequence n ↦ at(n) over {0..alphabet-1}, or ℕ if None."""
    at: Callable[[int], int]
    alphabet: Optional[int] = 2
    label: str = ""

    @classmethod
    def periodic(cls, prefix: Sequence[int], cycle: Sequence[int],
                 alphabet: Optional[int] = 2, label: str = "") -> "SequenceGenerator":
        """prefix followed by cycle repeated forever."""
        prefix, cycle = tuple(prefix), tuple(cycle)
        if not cycle:
            raise PreconditionViolation("periodic part must be non-empty")
        if alphabet is not None and any(not 0 <= v < alphabet for v in prefix + cycle):
            raise PreconditionViolation(f"value outside alphabet of size {alphabet}")

        def at(n):
            if n < len(prefix):
                return prefix[n]
            return cycle[(n - len(prefix)) % len(cycle)]
        if not label:
            label = (f"prefix({''.join(map(str, prefix))})+" if prefix else "") + \
                f"repeat({''.join(map(str, cycle))})"
        return cls(at, alphabet, label)

    def prefix(self, n: int) -> tuple:
        return tuple(self.at(k) for k in range(n))


def _first_difference(s, g: SequenceGenerator) -> Optional[int]:
    for i, v in enumerate(s):
        if v != g.at(i):
            return i
    return None


def embed_seq(g: SequenceGenerator, check: bool = True) -> IdealElement:
    """ι(α) in the Cantor (alphabet 2) or Baire (alphabet None) domain."""
    if g.alphabet == 2:
        basis = cantor_basis()
    elif g.alphabet is None:
        basis = baire_basis()
    else:
        raise PreconditionViolation("sequence domains use alphabet 2 or ℕ")

    def decide(s) -> bool:
        return _first_difference(s, g) is None

    def explain(s):
        i = _first_difference(s, g)
        return ("differs-at", i, g.at(i))

    def split(u, v):
        if decide(u):
            return WayBelow()
        # ↓v and ι(α) live in the disjoint opens above u and above ᾱ_{len u}.
        return Separated(HausdorffWitness(u, g.prefix(len(u)), 0, len(u)))

    return decided_element(basis, g.prefix, decide, explain=explain,
                           strongmax=StrongMaxOracle(split),
                           label=g.label or "seq", check=check)


def baire_phi(phi: Callable[[int], int], label: str = "x_phi",
              check: bool = True) -> IdealElement:
    """The Baire element {σ | σ empty, or σ constantly k for k least with φ(k) = 1}."""
    def least(bound: int) -> Optional[int]:
        for m in range(bound):
            if phi(m) == 1:
                return m
        return None

    def chain(n):
        k = least(n)
        return () if k is None else (k,) * n

    def decide(s) -> bool:
        if not s:
            return True
        k = s[0]
        return all(v == k for v in s) and phi(k) == 1 and least(k) is None

    return sharp_from_decider(baire_basis(), chain, decide, label=label, check=check)


# -- rationals: Dedekind and lower bases ----------------------------------

def _show_interval(x) -> str:
    return f"({show_rational(x[0])},{show_rational(x[1])})"


def _parse_interval(text: str):
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")) or body.count(",") != 1:
        raise ParseError("expected (p,q)", text, 0)
    left, right = body[1:-1].split(",")
    p, q = parse_rational(left), parse_rational(right)
    if not p < q:
        raise ParseError("interval needs p < q", text, 0)
    return p, q


def _dedekind_enum(n: int):
    i, j = _enum.unpair(n)
    p = _enum.rational(i)
    return p, p + _enum.positive_rational(j + 1)


def _half_power(n: int) -> Fraction:
    return Fraction(1, 1 << n)


@lru_cache(maxsize=None)
def dedekind_basis() -> BasisDescriptor:
    return BasisDescriptor(
        name="dedekind",
        prec=lambda x, y: x[0] < y[0] and y[1] < x[1],
        reflexive=False,
        enumerate=_dedekind_enum,
        interpolant=lambda x, y: ((x[0] + y[0]) / 2, (y[1] + x[1]) / 2),
        refinable=lambda x, y: max(x[0], y[0]) < min(x[1], y[1]),
        show=_show_interval,
        parse=_parse_interval,
        principal_chain=lambda y, n: (y[0] - _half_power(n), y[1] + _half_power(n)),
        sort_key=lambda x: x,
    )


@lru_cache(maxsize=None)
def lower_basis() -> BasisDescriptor:
    return BasisDescriptor(
        name="lower",
        prec=lambda p, q: p < q,
        reflexive=False,
        enumerate=_enum.rational,
        interpolant=lambda p, q: (p + q) / 2,
        refinable=lambda p, q: True,
        show=show_rational,
        parse=parse_rational,
        principal_chain=lambda q, n: q - _half_power(n),
        linear=True,
        sort_key=lambda p: p,
    )


@dataclass(frozen=True)
class RationalLocator:
    """Decisions p < x and x < q, with stored bounds lower < x < upper."""
    below: Callable[[Fraction], bool]
    above: Callable[[Fraction], bool]
    lower_bound: Fraction
    upper_bound: Fraction
    label: str = ""
    _cache: dict = field(default_factory=dict, compare=False, repr=False)


def rational_locator(r) -> RationalLocator:
    r = Fraction(r)
    return RationalLocator(lambda p: p < r, lambda q: r < q, r - 1, r + 1,
                           f"rat({show_rational(r)})")


def sqrt_locator(r) -> RationalLocator:
    """√r for rational r ≥ 0, by comparing squares."""
    r = Fraction(r)
    if r < 0:
        raise PreconditionViolation("sqrt needs a non-negative rational")
    return RationalLocator(lambda p: p < 0 or p * p < r,
                           lambda q: q > 0 and q * q > r,
                           Fraction(-1), r + 1, f"sqrt({show_rational(r)})")


@lru_cache(maxsize=None)
def standard_grid() -> tuple:
    """All rationals p/q with q ≤ 16 and |p/q| ≤ 8, ascending."""
    values = {Fraction(p, q) for q in range(1, 17) for p in range(-8 * q, 8 * q + 1)}
    return tuple(sorted(values))


def validate_locator(loc: RationalLocator, grid: Sequence[Fraction] = None) -> list:
    """Sampled checks of boundedness, transitivity, locatedness, roundedness."""
    grid = standard_grid() if grid is None else tuple(sorted(grid))
    out = []
    if not loc.below(loc.lower_bound):
        out.append(f"lower bound {show_rational(loc.lower_bound)} is not below")
    if not loc.above(loc.upper_bound):
        out.append(f"upper bound {show_rational(loc.upper_bound)} is not above")
    lows = [p for p in grid if loc.below(p)]
    highs = [q for q in grid if loc.above(q)]
    if lows and highs and max(lows) >= min(highs):
        out.append(f"transitivity: {show_rational(max(lows))} below and "
                   f"{show_rational(min(highs))} above")
    not_low = [p for p in grid if not loc.below(p)]
    not_high = [q for q in grid if not loc.above(q)]
    if not_low and not_high and min(not_low) < max(not_high):
        out.append(f"locatedness: neither {show_rational(min(not_low))} below nor "
                   f"{show_rational(max(not_high))} above")
    for p in lows:
        if not any(loc.below(p + _half_power(k)) for k in range(33)):
            out.append(f"roundedness: nothing below above {show_rational(p)}")
            break
    for q in highs:
        if not any(loc.above(q - _half_power(k)) for k in range(33)):
            out.append(f"roundedness: nothing above under {show_rational(q)}")
            break
    return out


def _bisection_step(loc: RationalLocator, x):
    """Shrink (p, q) around the located point, strictly on both ends.

    When the point sits in the outer quarter next to one end, that end is
    pulled in geometrically until it is on the right side again; the other
    end then jumps to the last rejected probe, so the interval keeps tracking
    the point instead of hugging it from one side.
    """
    p, q = x
    w = q - p
    a, m, b = p + w / 4, p + w / 2, q - w / 4
    lo, hi = loc.below(a), loc.above(b)
    if lo and hi:
        return a, b
    if lo:
        for j in range(3, SEARCH_CAP):
            step = w * _half_power(j)
            if loc.above(q - step):
                # q - 2·step was rejected, so the point is ≥ it.
                p2 = max(m, q - 3 * step)
                if loc.below(p2):
                    return p2, q - step
                break
    elif hi:
        for j in range(3, SEARCH_CAP):
            step = w * _half_power(j)
            if loc.below(p + step):
                q2 = min(m, p + 3 * step)
                if loc.above(q2):
                    return p + step, q2
                break
    raise ValidationError(f"locator {loc.label or '?'} is not located near {_show_interval(x)}")


def _located_chain(loc: RationalLocator):
    key = "chain"
    if key not in loc._cache:
        loc._cache[key] = iterated_chain((Fraction(loc.lower_bound), Fraction(loc.upper_bound)),
                                         lambda x: _bisection_step(loc, x))
    return loc._cache[key]


def _check_locator(loc: RationalLocator):
    problems = validate_locator(loc)
    if problems:
        raise ValidationError(f"locator {loc.label or '?'}: " + "; ".join(problems))


def embed_located(loc: RationalLocator, check: bool = True) -> IdealElement:
    """ι(L, U) = {(p, q) | p < x < q} in the partial Dedekind reals."""
    if check:
        _check_locator(loc)
    basis = dedekind_basis()
    chain = _located_chain(loc)

    def decide(x) -> bool:
        return loc.below(x[0]) and loc.above(x[1])

    def explain(x):
        if not loc.below(x[0]):
            return ("not-below", x[0])
        return ("not-above", x[1])

    def first_chain(pred):
        for k in range(SEARCH_CAP):
            if pred(chain(k)):
                return k
        raise InvariantViolation(f"chain of {loc.label or '?'} does not converge")

    def split(u, v):
        p, q = u
        r, s = v
        if not loc.below(p):
            # x ≤ p < r: an approximant lying left of r separates.
            k = first_chain(lambda c: c[1] < r)
            c = chain(k)
            r2 = (c[1] + r) / 2
            a = (r2, s + (r - r2))
        elif loc.above(q):
            return WayBelow()
        else:
            # s < q ≤ x: an approximant lying right of s separates.
            k = first_chain(lambda c: c[0] > s)
            c = chain(k)
            s2 = (s + c[0]) / 2
            a = (r - (s2 - s), s2)
        ai = member(principal(basis, v), a, SEARCH_CAP)
        return Separated(HausdorffWitness(a, c, ai, k + 1))

    return decided_element(basis, chain, decide, explain=explain,
                           strongmax=StrongMaxOracle(split),
                           label=loc.label or "located", check=check)


def embed_rational(r) -> IdealElement:
    return embed_located(rational_locator(r))


def embed_sqrt(r) -> IdealElement:
    return embed_located(sqrt_locator(r))


def lower_from_locator(loc: RationalLocator, check: bool = True) -> IdealElement:
    """The lower real L = {p | p < x} with its locatedness-based split."""
    if check:
        _check_locator(loc)
    basis = lower_basis()
    dchain = _located_chain(loc)
    return decided_element(basis, lambda n: dchain(n)[0], loc.below,
                           explain=lambda p: ("not-below", p),
                           label=loc.label or "lower", check=check)


@dataclass(frozen=True)
class InU:
    """s < q and s ∉ L, so q lies in the upper complement."""
    s: Fraction
    index: int


def upper_complement(x: IdealElement, q, search_bound: int) -> Optional[InU]:
    """Search the rational enumeration for s < q with s refuted in x."""
    if x.negative is None or not x.negative.total:
        raise PreconditionViolation("upper_complement needs a total membership decision")
    q = Fraction(q)
    for n in range(search_bound + 1):
        s = _enum.rational(n)
        if s < q and x.negative.refute_member(s, 0) is not IS_MEMBER:
            return InU(s, n)
    return None


@dataclass(frozen=True)
class RoundtripMismatch:
    p: Fraction
    q: Fraction
    answer: str


def locator_roundtrip(loc: RationalLocator, grid: Sequence[tuple]) -> list:
    """Rebuild a locator from the lower real's split and compare with ``loc``.

    For each p < q in ``grid``: Below must agree with loc.below(p) and
    NotAbove with loc.above(q).
    """
    x = lower_from_locator(loc, check=False)
    out = []
    for p, q in grid:
        p, q = Fraction(p), Fraction(q)
        if not p < q:
            continue
        try:
            answer = x.sharp.split(p, q)
        except ValidationError as exc:
            out.append(RoundtripMismatch(p, q, f"error: {exc}"))
            continue
        if isinstance(answer, Below):
            if not loc.below(p):
                out.append(RoundtripMismatch(p, q, "below"))
        elif not loc.above(q):
            out.append(RoundtripMismatch(p, q, "not-above"))
    return out


# -- the ε embedding into L(2)^L(ℕ) ----------------------------------------

@lru_cache(maxsize=None)
def epsilon_basis() -> BasisDescriptor:
    return exponential_basis(lift_compacts(None), lift_compacts(2))


def _eps_chain(g: SequenceGenerator):
    def chain(n):
        return StepFunction(tuple((Eta(k), Eta(g.at(k))) for k in range(n)))
    return chain


def epsilon_embed(g: SequenceGenerator, check: bool = True) -> IdealElement:
    """ε(α): the strict map ⊥ ↦ ⊥, η(n) ↦ η(α(n)), as a sharp element."""
    if g.alphabet != 2:
        raise PreconditionViolation("ε is defined on binary sequences")

    def bad_step(S):
        for a, b in S.pairs:
            if isinstance(a, Bottom) or b != Eta(g.at(a.value)):
                return (a, b)
        return None

    return decided_element(epsilon_basis(), _eps_chain(g),
                           lambda S: bad_step(S) is None,
                           explain=lambda S: ("step", bad_step(S)),
                           label=f"eps:{g.label}", check=check)


@dataclass(frozen=True)
class NonMaxReport:
    x: IdealElement
    y: IdealElement
    witness: Any            # Refutation for y ⋢ x
    x_below_y: bool         # every sampled chain element of x is below y's


def nonmax_witness(i: int, depth: int = 32, fuel: int = 128) -> NonMaxReport:
    """ε(n ↦ i) lies strictly below the non-strict constant map with value η(i)."""
    if i not in (0, 1):
        raise PreconditionViolation("i must be 0 or 1")
    basis = epsilon_basis()
    x = epsilon_embed(SequenceGenerator.periodic((), (i,), 2, f"repeat({i})"))
    top = StepFunction(((BOTTOM, Eta(i)),))

    def bad_step(S):
        for a, b in S.pairs:
            if b != Eta(i):
                return (a, b)
        return None

    y = decided_element(basis, lambda n: top, lambda S: bad_step(S) is None,
                        explain=lambda S: ("step", bad_step(S)),
                        label=f"const({i})")
    bd, be = lift_compacts(None), lift_compacts(2)
    ok = all(step_leq(x.chain(k), top, bd, be) for k in range(depth))
    return NonMaxReport(x, y, not_below(y, x, fuel), ok)


# -- stock bases -------------------------------------------------------------

def stock_bases() -> dict:
    """The six bases shipped with the package, by name."""
    return {
        "cantor": cantor_basis(),
        "baire": baire_basis(),
        "dedekind": dedekind_basis(),
        "lower": lower_basis(),
        "lift": lift_compacts(None),
        "exponential": epsilon_basis(),
    }
