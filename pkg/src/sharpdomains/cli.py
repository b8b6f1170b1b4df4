"""Command-line front end: fuel-bounded queries with JSON witnesses.

    sharpdomains apart dede:rat(0) dede:rat(1) --fuel 64 --verify
    sharpdomains sharp-probe lower:sqrt(2) 1 2
    sharpdomains strongmax-probe dede:sqrt(2) "(1,2)" "(5/4,3/2)"

Exit status: 0 when a witness is produced, 1 for an honest unknown,
2 on errors (parse errors, missing capabilities, failed verification).
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

from .basis import validate_basis
from .constructions import Bottom, Eta, StepFunction
from .domains import (SequenceGenerator, embed_located, embed_seq, epsilon_embed,
                      lower_from_locator, parse_rational, rational_locator,
                      show_rational, sqrt_locator, stock_bases)
from .errors import DomainError, ParseError
from .ideal import IdealElement, member, principal
from .separation import (Below, Direction, WayBelow, apart, hausdorff_separate,
                         positive, sharp_split, strongmax_split, verify_apartness,
                         verify_hausdorff, verify_positive, verify_split)

DEFAULT_FUEL = 256

COMMANDS = {
    # name: (element count, atom count)
    "apart": (2, 0),
    "member": (1, 1),
    "sharp-probe": (1, 2),
    "strongmax-probe": (1, 2),
    "positive": (1, 0),
    "hausdorff": (2, 0),
}

_SPEC_RE = re.compile(r"([a-z]+):(.*)$")
_SEQ_RE = re.compile(r"(?:prefix\(([^()]*)\)\+)?repeat\(([^()]*)\)$")
_REAL_RE = re.compile(r"(rat|sqrt)\(([^()]*)\)$")


@dataclass(frozen=True)
class QuerySpec:
    command: str
    elements: tuple = ()
    atoms: tuple = ()
    fuel: int = DEFAULT_FUEL
    verify: bool = False
    basis_name: Optional[str] = None
    sample: int = 100


# -- element grammar -------------------------------------------------------

def _digits(text: str, offset: int, src: str) -> tuple:
    for i, ch in enumerate(text):
        if ch not in "01":
            raise ParseError("binary digit expected", src, offset + i)
    return tuple(int(ch) for ch in text)


def _naturals(text: str, offset: int, src: str) -> tuple:
    out = []
    pos = offset
    for part in text.split(",") if text else []:
        if not part.strip().isdigit():
            raise ParseError("natural number expected", src, pos)
        out.append(int(part))
        pos += len(part) + 1
    return tuple(out)


def domain_of(text: str) -> str:
    m = _SPEC_RE.match(text)
    if not m:
        raise ParseError("expected domain:body", text, 0)
    return m.group(1)


def parse_element(text: str) -> IdealElement:
    """Build an element from ``domain:body`` (see the module docstring)."""
    domain = domain_of(text)
    body = text[len(domain) + 1:]
    start = len(domain) + 1
    if domain in ("cantor", "baire", "eps"):
        m = _SEQ_RE.match(body)
        if not m:
            raise ParseError("expected repeat(...) or prefix(...)+repeat(...)", text, start)
        read = _naturals if domain == "baire" else _digits
        pre = read(m.group(1) or "", start + 7, text)
        cyc = read(m.group(2), start + body.index("repeat(") + 7, text)
        if not cyc:
            raise ParseError("empty repeat", text, start + body.index("repeat("))
        g = SequenceGenerator.periodic(pre, cyc, None if domain == "baire" else 2,
                                       label=body)
        return epsilon_embed(g) if domain == "eps" else embed_seq(g)
    if domain in ("dede", "lower"):
        m = _REAL_RE.match(body)
        if not m:
            raise ParseError("expected rat(q) or sqrt(q)", text, start)
        try:
            r = Fraction(m.group(2).strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError("malformed rational", text, start + len(m.group(1)) + 1) from None
        if m.group(1) == "sqrt" and r < 0:
            raise ParseError("sqrt of a negative rational", text, start + 5)
        loc = rational_locator(r) if m.group(1) == "rat" else sqrt_locator(r)
        return embed_located(loc) if domain == "dede" else lower_from_locator(loc)
    raise ParseError(f"unknown domain {domain!r}", text, 0)


def parse_atom(x: IdealElement, text: str):
    if x.basis.parse is None:
        raise ParseError(f"{x.basis.name} has no atom syntax", text, 0)
    return x.basis.parse(text)


# -- argv ----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--fuel", type=int, default=DEFAULT_FUEL)
    common.add_argument("--verify", action="store_true")
    common.add_argument("--json", action="store_true", default=True,
                        help="JSON output (the only format; accepted for clarity)")
    parser = _Parser(prog="sharpdomains", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (n_el, n_at) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common])
        p.add_argument("elements", nargs=n_el)
        if n_at:
            p.add_argument("atoms", nargs=n_at)
    p = sub.add_parser("validate-basis", parents=[common])
    p.add_argument("basis_name", choices=sorted(stock_bases()))
    p.add_argument("--sample", type=int, default=100)
    return parser


def parse_spec(argv: list) -> QuerySpec:
    ns = _build_parser().parse_args(argv)
    if ns.fuel < 0:
        raise ParseError("fuel must be a natural number", str(ns.fuel), 0)
    elements = tuple(getattr(ns, "elements", ()))
    for text in elements:
        domain_of(text)
    if len(elements) == 2 and domain_of(elements[0]) != domain_of(elements[1]):
        joined = " ".join(elements)
        raise ParseError("mixed domains", joined, len(elements[0]) + 1)
    return QuerySpec(ns.command, elements, tuple(getattr(ns, "atoms", ())), ns.fuel,
                     ns.verify, getattr(ns, "basis_name", None),
                     getattr(ns, "sample", 100))


# -- serialisation -----------------------------------------------------------

def to_json(value: Any, show=None) -> Any:
    """Plain JSON data for evidence: rationals as "p/q", tuples as lists."""
    if isinstance(value, Fraction):
        return show_rational(value)
    if isinstance(value, (Bottom, Eta, StepFunction)):
        return repr(value)
    if isinstance(value, tuple):
        return [to_json(v) for v in value]
    if isinstance(value, (str, int, bool)) or value is None:
        return value
    return repr(value)


def _witness_record(x: IdealElement, direction: str, element, index, evidence=None) -> dict:
    rec = {"direction": direction, "basis_element": x.basis.show(element),
           "member_index": index}
    if evidence is not None:
        rec["evidence_element"] = to_json(evidence)
    return rec


# -- execution ---------------------------------------------------------------

def run(q: QuerySpec) -> tuple[dict, int]:
    """Execute a query; returns (JSON object, exit status)."""
    out: dict = {"command": q.command}
    try:
        if q.command == "validate-basis":
            basis = stock_bases()[q.basis_name]
            violations = validate_basis(basis, q.sample)
            out.update(status="ok" if not violations else "violations",
                       basis=basis.name, sample=q.sample,
                       violations=[str(v) for v in violations])
            return out, 0 if not violations else 1
        xs = [parse_element(t) for t in q.elements]
        atoms = [parse_atom(xs[0], t) for t in q.atoms]
        result = _dispatch(q, xs, atoms)
    except DomainError as exc:
        out.update(status="error", error=type(exc).__name__, message=str(exc))
        return out, 2
    if result is None:
        out.update(status="unknown", fuel_used=q.fuel)
        return out, 1
    record, fuel_used, ok = result
    out.update(status="witness", fuel_used=fuel_used, witness=record)
    if q.verify:
        out["verified"] = ok
        if not ok:
            out["status"] = "error"
            out["message"] = "witness failed replay"
            return out, 2
    return out, 0


def _dispatch(q: QuerySpec, xs: list, atoms: list):
    fuel = q.fuel
    x = xs[0]
    if q.command == "apart":
        y = xs[1]
        w = apart(x, y, fuel)
        if w is None:
            return None
        direction = ("left-not-below-right"
                     if w.direction is Direction.LEFT_NOT_BELOW_RIGHT else "right-not-below-left")
        inside = x if w.direction is Direction.LEFT_NOT_BELOW_RIGHT else y
        return (_witness_record(inside, direction, w.element, w.member_index, w.evidence),
                w.member_index, q.verify and verify_apartness(x, y, w))
    if q.command == "hausdorff":
        y = xs[1]
        w = hausdorff_separate(x, y, fuel)
        if w is None:
            return None
        rec = {"direction": "separated", "basis_element": x.basis.show(w.a),
               "member_index": w.a_index, "evidence_element": x.basis.show(w.b),
               "evidence_index": w.b_index}
        return rec, max(w.a_index, w.b_index), q.verify and verify_hausdorff(x, y, w)
    if q.command == "positive":
        w = positive(x, fuel)
        if w is None:
            return None
        return (_witness_record(x, "positive", w.element, w.member_index, w.evidence),
                w.member_index, q.verify and verify_positive(x, w))
    if q.command == "member":
        b = atoms[0]
        idx = member(x, b, fuel)
        if idx is None:
            return None
        return (_witness_record(x, "member", b, idx), idx,
                q.verify and member(x, b, idx) == idx)
    if q.command == "sharp-probe":
        a, b = atoms
        answer = sharp_split(x, a, b)
        ok = q.verify and verify_split(x, a, b, answer, fuel)
        if isinstance(answer, Below):
            idx = member(x, a, fuel)
            return _witness_record(x, "below", a, idx), idx if idx is not None else fuel, ok
        rec = _witness_record(x, "not-above", answer.evidence, None,
                              x.basis.show(answer.evidence))
        if x.negative is not None:
            rec["evidence_element"] = to_json(x.negative.refute_member(answer.evidence, fuel).evidence)
        return rec, 0, ok
    if q.command == "strongmax-probe":
        u, v = atoms
        answer = strongmax_split(x, u, v)
        if isinstance(answer, WayBelow):
            idx = member(x, u, fuel)
            ok = q.verify and idx is not None
            return _witness_record(x, "way-below", u, idx), idx if idx is not None else fuel, ok
        w = answer.witness
        rec = {"direction": "separated", "basis_element": x.basis.show(w.a),
               "member_index": w.a_index, "evidence_element": x.basis.show(w.b),
               "evidence_index": w.b_index}
        return rec, w.b_index, q.verify and verify_hausdorff(principal(x.basis, v), x, w)
    raise ParseError(f"unknown command {q.command!r}")


def render(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=True)


def main(argv: Optional[list] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        q = parse_spec(argv)
    except ParseError as exc:
        print(render({"command": argv[0] if argv else None, "status": "error",
                      "error": "ParseError", "message": str(exc)}))
        return 2
    obj, code = run(q)
    print(render(obj))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
