"""Acceptance suite: one test per criterion, one printed verdict line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the verdicts.
"""

import json
import random
import time
from fractions import Fraction

import pytest

from isoloop import (
    BraidWord,
    Clustering,
    apply_generator,
    apply_to_letters,
    apply_word,
    canonical_class,
    carry,
    certify,
    coarsen,
    diameter,
    extract_word,
    gen_cascade,
    gen_rotation,
    gen_translation,
    refine_check,
    round_loop,
    round_polyline,
    stretch_profile,
    subdivide,
    transport,
    validate_config,
)
from isoloop.cli import main as cli_main
from isoloop.geomoracle import carry_factor


def _verdict(number, ok, text):
    print(f"ACCEPTANCE {number} {'PASS' if ok else 'FAIL'}: {text}")
    assert ok, text


def collinear(n):
    return validate_config([(i, 0) for i in range(1, n + 1)])


def test_criterion_1_counterexample_reproduction(tmp_path):
    """Certified bound is exactly 1 - 1/n and clears 1 - 1/(n-1), n = 3..12."""
    out = tmp_path / "paper.json"
    t0 = time.monotonic()
    code = cli_main(["paper", "--n", "3..12", "--out", str(out)])
    elapsed = time.monotonic() - t0
    rows = json.loads(out.read_text())
    ok = code == 0 and len(rows) == 10
    for row in rows:
        n = row["n"]
        ok = ok and row["pass"]
        ok = ok and Fraction(row["certified_exact"]) == 1 - Fraction(1, n)
        ok = ok and Fraction(row["certified_exact"]) >= 1 - Fraction(1, n - 1)
    ok = ok and elapsed < 10.0
    _verdict(
        1, ok, f"cascade n=3..12 certified 1-1/n exactly, in {elapsed:.2f}s (< 10 s)"
    )


def test_criterion_2_oracle_equivalence(oracle_suite):
    """200 random braid motions: carried polyline class == algebraic class."""
    cases = oracle_suite["cases"]
    mismatches = [c for c in cases if c["oracle"] != c["algebra"]]
    ok = len(cases) == 200 and not mismatches and oracle_suite["elapsed"] < 60.0
    _verdict(
        2,
        ok,
        f"{len(cases)} cases, {len(mismatches)} mismatches, "
        f"{oracle_suite['elapsed']:.1f}s (< 60 s)",
    )


def test_criterion_3_lift_uniqueness_shadow():
    """Transport agrees at all shared sample times under refinement 2 and 3."""
    ok = True
    for n in range(3, 9):
        traj = gen_cascade(n, 16)
        c0 = round_loop(1, 2, n)
        for factor in (2, 3):
            ok = ok and refine_check(traj, c0, factor)
    for cfg, center in [
        (collinear(4), (Fraction(5, 2), 0)),
        (validate_config([(0, 0), (1, 1), (2, Fraction(-1, 2))]), (1, 0)),
    ]:
        traj = gen_rotation(cfg, center, 1, steps=16)
        c0 = canonical_class(cfg.n, [1, -2])
        for factor in (2, 3):
            ok = ok and refine_check(traj, c0, factor)
    _verdict(3, ok, "refine_check factors 2,3 on cascades n=3..8 and rotations")


def test_criterion_4_braid_group_axioms():
    """Exact identities of the induced automorphisms."""
    ok = True
    for n in range(2, 7):
        gens = [(j,) for j in range(1, n + 1)]
        for i in range(1, n):
            for g in gens:
                ok = ok and apply_to_letters(g, (i, -i), n) == g
                ok = ok and apply_to_letters(g, (-i, i), n) == g
        for i in range(1, n - 1):
            for g in gens:
                lhs = apply_to_letters(g, (i, i + 1, i), n)
                rhs = apply_to_letters(g, (i + 1, i, i + 1), n)
                ok = ok and lhs == rhs
        for i in range(1, n):
            for j in range(i + 2, n):
                for g in gens:
                    ok = ok and apply_to_letters(g, (i, j), n) == apply_to_letters(
                        g, (j, i), n
                    )
    rng = random.Random(4242)
    for _ in range(100):
        n = rng.randint(3, 6)
        c = canonical_class(
            n, [rng.choice([1, -1]) * rng.randint(1, n) for _ in range(rng.randint(0, 10))]
        )
        i = rng.randint(1, n - 2)
        ok = ok and apply_generator(apply_generator(c, i, 1), i, -1) == c
        ok = ok and apply_word(c, BraidWord(n, (i, i + 1, i))) == apply_word(
            c, BraidWord(n, (i + 1, i, i + 1))
        )
        if n >= 4:
            ok = ok and apply_word(c, BraidWord(n, (1, 3))) == apply_word(
                c, BraidWord(n, (3, 1))
            )
    _verdict(4, ok, "inverses, braid relations, distant commutation all exact")


def test_criterion_5_full_twist_invariance():
    """2 pi rotation of collinear points: length n(n-1), identity on classes."""
    rng = random.Random(55)
    ok = True
    for n in range(2, 7):
        cfg = collinear(n)
        traj = gen_rotation(cfg, (Fraction(n + 1, 2), 0), 1, steps=16)
        word, _ = extract_word(traj)
        ok = ok and len(word) == n * (n - 1) and word.is_pure()
        for _ in range(20):
            c = canonical_class(
                n,
                [rng.choice([1, -1]) * rng.randint(1, n) for _ in range(rng.randint(0, 8))],
            )
            record = transport(traj, c)
            ok = ok and record.final_class == c
            ok = ok and record.entries[0].certificate == record.entries[-1].certificate
    _verdict(5, ok, "full twists have length n(n-1) and act trivially, certs equal")


def test_criterion_6_certificate_soundness(oracle_suite):
    """Oracle polylines are at least as wide as their class certificates."""
    ok = True
    checked = 0
    for case in oracle_suite["cases"]:
        bound = float(certify(case["oracle"], case["config"]).diam_lb)
        ok = ok and diameter(case["polyline"]) >= bound - 1e-6
        checked += 1
    for n in (3, 4):
        traj = gen_cascade(n, 64)
        fine = subdivide(traj, carry_factor(traj))
        loop = round_polyline(fine.initial(), 1, 2)
        carried = carry(loop, fine)
        final = transport(traj, round_loop(1, 2, n)).final_class
        bound = float(certify(final, fine.final()).diam_lb)
        ok = ok and bound == float(1 - Fraction(1, n))
        ok = ok and diameter(carried) >= bound - 1e-6
        checked += 1
    _verdict(6, ok, f"diameter >= certified bound - 1e-6 for {checked} polylines")


def test_criterion_7_coarsen_naturality():
    """Intra-block motion is invisible after cluster collapse."""
    rng = random.Random(777)
    ok = True
    for _ in range(50):
        n = rng.randint(3, 6)
        cuts = sorted(rng.sample(range(1, n), rng.randint(0, n - 2)))
        blocks = []
        lo = 1
        for cut in cuts:
            blocks.append((lo, cut))
            lo = cut + 1
        blocks.append((lo, n))
        cl = Clustering(tuple(blocks))
        z_word = [
            rng.choice([1, -1]) * rng.randint(1, cl.k) for _ in range(rng.randint(1, 4))
        ]
        letters = []
        for z in z_word:
            b_lo, b_hi = cl.blocks[abs(z) - 1]
            seq = list(range(b_lo, b_hi + 1))
            letters.extend(seq if z > 0 else [-g for g in reversed(seq)])
        c = canonical_class(n, letters)
        intra = [
            i
            for (b_lo, b_hi) in cl.blocks
            for i in range(b_lo, b_hi)
        ]
        if intra:
            braid = BraidWord(
                n, tuple(rng.choice([1, -1]) * rng.choice(intra) for _ in range(6))
            )
        else:
            braid = BraidWord(n, ())
        ok = ok and coarsen(apply_word(c, braid), cl) == coarsen(c, cl)
    for n, blocks in [(3, ((1, 2), (3, 3))), (5, ((1, 2), (3, 5))), (4, ((1, 4),))]:
        cl = Clustering(blocks)
        for b, (lo, hi) in enumerate(cl.blocks, start=1):
            ok = ok and coarsen(round_loop(lo, hi, n), cl).word == (b,)
    _verdict(7, ok, "coarsen(apply_word) == coarsen for 50 intra-block words")


def test_criterion_8_non_stretch_shadow():
    """Translations leave the stretch profile exactly constant.

    This checks only finite sampled shadows; the uniform statement over all
    configurations and scales is a theorem, not a computation.
    """
    rng = random.Random(31)
    ok = True
    for _ in range(10):
        n = rng.randint(2, 5)
        pts = set()
        while len(pts) < n:
            pts.add((Fraction(rng.randint(-9, 9), 3), Fraction(rng.randint(-9, 9), 4)))
        cfg = validate_config(sorted(pts))
        if not cfg.has_distinct_x():
            continue
        offset = (Fraction(rng.randint(-5, 5), 7), Fraction(rng.randint(-5, 5), 3))
        traj = gen_translation(cfg, offset, steps=6)
        c = canonical_class(
            n, [rng.choice([1, -1]) * rng.randint(1, n) for _ in range(6)]
        )
        record = transport(traj, c)
        series, peak = stretch_profile(record)
        ok = ok and len(series) == len(record.entries)
        ok = ok and len({d for _, d in series}) == 1
        ok = ok and record.final_class == c
        ok = ok and peak == series[0][1]
    _verdict(8, ok, "translation profiles exactly constant (finite shadow only)")
