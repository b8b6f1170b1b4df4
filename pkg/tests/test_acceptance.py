"""Acceptance suite: ten end-to-end criteria, one pass/fail line each.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are repeated in
the terminal summary) or directly with ``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import itertools
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from corpus import (binary_generators, cantor_corpus, dedekind_corpus,
                    dedekind_locators, flipped_at, is_prefix, same_values, words)
from sharpdomains.basis import validate_basis
from sharpdomains.constructions import (BOTTOM, Bottom, Eta, StepFunction, Unbounded,
                                        lift_compacts, step_eval, step_leq,
                                        step_normalize)
from sharpdomains.domains import (RationalLocator, dedekind_basis, embed_seq,
                                  epsilon_embed, locator_roundtrip, lower_basis,
                                  nonmax_witness, rational_locator, sqrt_locator,
                                  standard_grid, stock_bases)
from sharpdomains.ideal import member, principal, way_below_principal
from sharpdomains.separation import (Below, Direction, NotAbove, WayBelow, apart,
                                     cotransitive_select, derived_sharp_split,
                                     not_below, smyth_check, strongmax_split,
                                     verify_apartness, verify_hausdorff, verify_split)

RESULTS: dict = {}


def report(n: int, ok: bool, detail: str) -> None:
    line = f"[acceptance {n:2d}] {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line)


# -- 1 ---------------------------------------------------------------------

def _grid_points(rng) -> list:
    grid = standard_grid()
    close = [Fraction(1, 16), Fraction(1, 15), Fraction(-1, 16), Fraction(-1, 15),
             Fraction(8), Fraction(127, 16), Fraction(-8), Fraction(-127, 16), Fraction(0)]
    pts = set(close)
    while len(pts) < 32:
        pts.add(rng.choice(grid))
    return sorted(pts)


def _grid_intervals(rng) -> list:
    grid = standard_grid()
    nested = [(Fraction(0), Fraction(1)), (Fraction(1, 16), Fraction(15, 16)),
              (Fraction(1, 15), Fraction(14, 15)), (Fraction(1, 16), Fraction(1)),
              (Fraction(0), Fraction(15, 16)), (Fraction(-8), Fraction(8)),
              (Fraction(-127, 16), Fraction(127, 16)), (Fraction(1, 15), Fraction(15, 16))]
    ivs = set(nested)
    while len(ivs) < 32:
        p, q = sorted(rng.sample(grid, 2))
        ivs.add((p, q))
    return sorted(ivs)


def criterion_1():
    rng = random.Random(1)
    t0 = time.perf_counter()
    bad, total = 0, 0
    lower = lower_basis()
    pts = _grid_points(rng)
    for a, b in itertools.product(pts, pts):
        yes = way_below_principal(a, principal(lower, b), 64) is not None
        bad += yes != (a < b)
        total += 1
    dede = dedekind_basis()
    ivs = _grid_intervals(rng)
    for u, v in itertools.product(ivs, ivs):
        yes = way_below_principal(u, principal(dede, v), 64) is not None
        bad += yes != (u[0] < v[0] and v[1] < u[1])
        total += 1
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and elapsed < 5
    return ok, f"way-below on grid: {total} pairs, {bad} disagreements, {elapsed:.2f}s"


# -- 2 ---------------------------------------------------------------------

def criterion_2():
    t0 = time.perf_counter()
    bad, queries, separated = 0, 0, 0
    cantor = stock_bases()["cantor"]
    for g in binary_generators(50):
        x = embed_seq(g)
        for s in words(6):
            for a in (0, 1):
                v = s + (a,)
                answer = strongmax_split(x, s, v)
                queries += 1
                if isinstance(answer, WayBelow):
                    bad += not is_prefix(s, g.prefix(len(s)))
                    bad += member(x, s, len(s)) is None
                else:
                    separated += 1
                    bad += is_prefix(s, g.prefix(len(s)))
                    w = answer.witness
                    bad += not verify_hausdorff(principal(cantor, v), x, w)
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and elapsed < 10
    return ok, (f"strongmax on 50 generators: {queries} splits, {separated} separated, "
                f"{bad} failures, {elapsed:.2f}s")


# -- 3 ---------------------------------------------------------------------

def criterion_3():
    gens = binary_generators(32, seed=3)
    false_witnesses, misses = 0, 0
    for k in range(32):
        g = gens[k]
        h = flipped_at(g, k)
        for embed in (embed_seq, epsilon_embed):
            x, y = embed(g), embed(h)
            w = apart(x, y, k + 2)
            if w is None:
                misses += 1
                continue
            false_witnesses += not verify_apartness(x, y, w)
            # Independent check: the witness distinguishes g from h.
            seqs = (g, h) if w.direction is Direction.LEFT_NOT_BELOW_RIGHT else (h, g)
            if embed is embed_seq:
                false_witnesses += not (is_prefix(w.element, seqs[0].prefix(len(w.element)))
                                        and not is_prefix(w.element,
                                                          seqs[1].prefix(len(w.element))))
            else:
                pairs = w.element.pairs
                false_witnesses += not all(b == Eta(seqs[0].at(a.value)) for a, b in pairs)
                false_witnesses += all(b == Eta(seqs[1].at(a.value)) for a, b in pairs)
    unknown_fail = 0
    for g in gens[:8]:
        for embed in (embed_seq, epsilon_embed):
            w = apart(embed(g), embed(same_values(g)), 64)
            unknown_fail += w is not None
    ok = false_witnesses == 0 and misses == 0 and unknown_fail == 0
    return ok, (f"apartness k=0..31 in Cantor and eps-image: {misses} misses, "
                f"{false_witnesses} false witnesses, {unknown_fail} spurious on identical")


# -- 4 ---------------------------------------------------------------------

def _brute_eval(S, d):
    vals = {b for a, b in S.pairs if isinstance(a, Bottom) or a == d}
    return None if not vals else vals.pop() if len(vals) == 1 else "conflict"


def _brute_leq_value(u, v) -> bool:
    return u is None or u == v


def exhaustive_step_functions(max_pairs: int = 3) -> list:
    L2 = lift_compacts(2)
    compacts = [BOTTOM, Eta(0), Eta(1)]
    steps = [(a, b) for a in compacts for b in (Eta(0), Eta(1))]
    found = set()
    for r in range(max_pairs + 1):
        for combo in itertools.combinations(steps, r):
            s = step_normalize(combo, L2, L2)
            if not isinstance(s, Unbounded):
                found.add(s)
    return sorted(found, key=repr)


def criterion_4():
    t0 = time.perf_counter()
    L2 = lift_compacts(2)
    corpus = exhaustive_step_functions()
    compacts = [BOTTOM, Eta(0), Eta(1)]
    bad = 0
    for S, T in itertools.product(corpus, corpus):
        brute = all(_brute_leq_value(_brute_eval(S, d), _brute_eval(T, d)) for d in compacts)
        bad += step_leq(S, T, L2, L2) != brute
    leq = {(S, T): step_leq(S, T, L2, L2) for S in corpus for T in corpus}
    bad += sum(not leq[S, S] for S in corpus)
    bad += sum(1 for S, T in leq if leq[S, T] and leq[T, S] and S != T)
    bad += sum(1 for S, T, U in itertools.product(corpus, repeat=3)
               if leq[S, T] and leq[T, U] and not leq[S, U])
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and elapsed < 5
    return ok, (f"step_leq vs pointwise over L(2)^L(2): {len(corpus)} step functions, "
                f"{bad} failures, {elapsed:.2f}s")


# -- 5 ---------------------------------------------------------------------

def roundtrip_grid() -> list:
    """Neighbouring and random ordered pairs from the standard grid."""
    grid = standard_grid()
    rng = random.Random(5)
    pairs = [(grid[i], grid[j]) for i in range(len(grid))
             for j in range(i + 1, min(i + 9, len(grid)))]
    pairs += [tuple(sorted(rng.sample(grid, 2))) for _ in range(4000)]
    return pairs


def criterion_5():
    grid = roundtrip_grid()
    locs = [rational_locator(r) for r in (0, 1, Fraction(3, 2), 2, Fraction(-7, 3))]
    locs.append(sqrt_locator(2))
    mismatches = {loc.label: len(locator_roundtrip(loc, grid)) for loc in locs}
    corrupted = RationalLocator(lambda p: p < 2, lambda q: q > 3, Fraction(1), Fraction(4),
                                "corrupted")
    control = len(locator_roundtrip(corrupted, grid))
    ok = all(v == 0 for v in mismatches.values()) and control >= 1
    return ok, (f"locator roundtrip on {len(grid)} grid pairs: mismatches {mismatches}, "
                f"corrupted control {control}")


# -- 6 ---------------------------------------------------------------------

def criterion_6():
    rng = random.Random(6)
    pools = [cantor_corpus(50), dedekind_corpus()]
    done, failures, attempts = 0, 0, 0
    while done < 100 and attempts < 1000:
        attempts += 1
        pool = pools[done % 2]
        x, y, z = rng.sample(pool, 3)
        w = apart(x, y, 64)
        if w is None:
            continue
        choice = cotransitive_select(x, y, w, z, 256)
        other = x if choice.branch == "xz" else y
        failures += not verify_apartness(other, z, choice.witness)
        done += 1
    ok = done == 100 and failures == 0
    return ok, f"cotransitive selection: {done} triples, {failures} failed replays"


# -- 7 ---------------------------------------------------------------------

def _cantor_pairs() -> list:
    return [(s, t) for t in words(6) for s in words(6) if is_prefix(s, t)]


def _dedekind_pairs(limit: int = 1000) -> list:
    pts = sorted({Fraction(p, q) for q in (1, 2, 4) for p in range(-12, 13)
                  if abs(Fraction(p, q)) <= 3})
    ivs = [(p, q) for p, q in itertools.combinations(pts, 2)]
    prec = dedekind_basis().prec
    pairs = [(u, v) for u in ivs for v in ivs if prec(u, v)]
    return random.Random(7).sample(pairs, min(limit, len(pairs)))


def _agree(x, a, b) -> bool:
    derived = derived_sharp_split(x, a, b)
    attached = x.sharp.split(a, b)
    return (type(derived) is type(attached)
            and verify_split(x, a, b, derived) and verify_split(x, a, b, attached))


def criterion_7():
    bad, queries, elements = 0, 0, 0
    cpairs = _cantor_pairs()
    for x in cantor_corpus(50):
        elements += 1
        for a, b in cpairs:
            bad += not _agree(x, a, b)
            queries += 1
    dpairs = _dedekind_pairs()
    for x in dedekind_corpus():
        elements += 1
        for a, b in dpairs:
            bad += not _agree(x, a, b)
            queries += 1
    return bad == 0, (f"derived vs attached sharp split: {elements} elements, "
                      f"{queries} queries, {bad} disagreements")


# -- 8 ---------------------------------------------------------------------

def criterion_8():
    details, ok = [], True
    for i in (0, 1):
        r = nonmax_witness(i)
        expected = StepFunction(((BOTTOM, Eta(i)),))
        w = r.witness
        good = (w is not None and w.element == expected
                and member(r.y, w.element, w.member_index) is not None
                and r.x.negative.refute_member(w.element, 0).evidence == w.evidence
                and not_below(r.x, r.y, 128) is None and r.x_below_y)
        ok &= good
        details.append(f"i={i}:{'ok' if good else 'bad'}")
    return ok, "non-maximality in L(2)^L(N): " + ", ".join(details)


# -- 9 ---------------------------------------------------------------------

def criterion_9():
    violations = {name: len(validate_basis(b, 100)) for name, b in stock_bases().items()}
    rng = random.Random(9)
    corpus = cantor_corpus(50)
    fails = 0
    for _ in range(50):
        x = rng.choice(corpus)
        u = tuple(rng.randrange(2) for _ in range(rng.randrange(5)))
        v = u + tuple(rng.randrange(2) for _ in range(rng.randrange(3)))
        fails += not smyth_check(x, u, v, 64).passed
    ok = all(v == 0 for v in violations.values()) and fails == 0
    return ok, f"basis axioms {violations}; smyth probes 50, {fails} failed"


# -- 10 --------------------------------------------------------------------

CLI_EXAMPLES = [
    ["apart", "dede:rat(0)", "dede:rat(1)", "--fuel", "64"],
    ["apart", "cantor:repeat(0)", "cantor:repeat(0)"],
    ["apart", "cantor:repeat(01)", "cantor:prefix(0110)+repeat(1)"],
    ["apart", "eps:repeat(01)", "eps:repeat(0)"],
    ["apart", "baire:repeat(3,1,4)", "baire:repeat(3,1,5)"],
    ["apart", "dede:rat(0)", "cantor:repeat(0)"],
    ["member", "dede:sqrt(2)", "(1,3/2)"],
    ["member", "cantor:repeat(01)", "0101"],
    ["sharp-probe", "lower:sqrt(2)", "1", "2"],
    ["sharp-probe", "lower:rat(2)", "2", "3"],
    ["sharp-probe", "cantor:repeat(01)", "00", "000"],
    ["strongmax-probe", "dede:sqrt(2)", "(1,2)", "(5/4,3/2)"],
    ["strongmax-probe", "dede:rat(1)", "(2,3)", "(9/4,11/4)"],
    ["strongmax-probe", "cantor:repeat(01)", "1", "10"],
    ["positive", "eps:repeat(01)"],
    ["positive", "cantor:repeat(1)"],
    ["hausdorff", "dede:rat(0)", "dede:rat(1)"],
    ["hausdorff", "cantor:repeat(0)", "cantor:repeat(1)"],
    ["validate-basis", "exponential"],
]


def _cli(args: list) -> subprocess.CompletedProcess:
    env = dict(os.environ, PYTHONHASHSEED="random")
    return subprocess.run([sys.executable, "-m", "sharpdomains", *args],
                          capture_output=True, env=env, timeout=120)


def criterion_10():
    import json
    unstable, unverified = [], []
    for args in CLI_EXAMPLES:
        a, b = _cli(args + ["--verify"]), _cli(args + ["--verify"])
        if a.stdout != b.stdout or a.returncode != b.returncode:
            unstable.append(" ".join(args))
        obj = json.loads(a.stdout)
        if obj.get("status") == "witness" and obj.get("verified") is not True:
            unverified.append(" ".join(args))
    ok = not unstable and not unverified
    return ok, (f"CLI: {len(CLI_EXAMPLES)} invocations, unstable {unstable or 'none'}, "
                f"unverified {unverified or 'none'}")


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 11)}


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_acceptance(n):
    ok, detail = CRITERIA[n]()
    report(n, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for n, fn in CRITERIA.items():
        ok, detail = fn()
        report(n, ok, detail)
        failed += not ok
    sys.exit(1 if failed else 0)
