import random
from fractions import Fraction

import pytest

from isoloop import (
    BraidWord,
    apply_word,
    canonical_class,
    cascade_experiment,
    certify,
    gen_cascade,
    gen_rotation,
    gen_translation,
    refine_check,
    round_loop,
    stretch_profile,
    transport,
    validate_config,
)


def collinear(n):
    return validate_config([(i, 0) for i in range(1, n + 1)])


class TestTransport:
    def test_constant_trajectory(self):
        cfg = collinear(3)
        traj = gen_translation(cfg, (0, 0), steps=5)
        c0 = canonical_class(3, [1, -3])
        record = transport(traj, c0)
        assert all(e.loop_class == c0 for e in record.entries)
        assert record.peak == certify(c0, cfg).diam_lb

    def test_entry_zero_holds_initial_state(self):
        traj = gen_cascade(3, 16)
        c0 = round_loop(1, 2, 3)
        record = transport(traj, c0)
        first = record.entries[0]
        assert first.time == 0
        assert first.loop_class == c0
        assert first.prefix_len == 0
        assert first.config.points == traj.initial().points

    def test_cascade3_final_class_and_peak(self):
        record = transport(gen_cascade(3, 16), round_loop(1, 2, 3))
        assert record.final_class == canonical_class(3, [1, 2, 3, 2, -3, -2])
        assert record.peak >= Fraction(2, 3)

    def test_prefix_consistency(self):
        traj = gen_cascade(4, 16)
        c0 = round_loop(1, 2, 4)
        record = transport(traj, c0)
        for entry in record.entries:
            prefix = BraidWord(4, record.word.letters[: entry.prefix_len])
            assert apply_word(c0, prefix) == entry.loop_class

    def test_full_turn_rotation_identity(self):
        traj = gen_rotation(collinear(3), (2, 0), 1, steps=16)
        for raw in ([1, -3], [2, 2, -1], [1, 2]):
            c0 = canonical_class(3, raw)
            record = transport(traj, c0)
            assert record.final_class == c0
            first, last = record.entries[0], record.entries[-1]
            assert first.certificate == last.certificate

    def test_pure_braid_winding_invariance(self):
        for traj in (gen_cascade(5, 16), gen_rotation(collinear(4), (2, 0), 1, 16)):
            c0 = round_loop(1, 2, traj.n)
            record = transport(traj, c0)
            assert record.word.is_pure()
            assert record.final_class.winding() == _sorted_winding(c0, record)

    def test_chart_skipped_entries(self):
        # Orbit quarter-points tie the mover's x with its center's: the
        # chart is undefined there and no certificate is interpolated.
        record = transport(gen_cascade(2, 16), round_loop(1, 2, 2))
        skipped = [e for e in record.entries if e.chart_skipped]
        assert skipped
        series, _ = stretch_profile(record)
        assert len(series) == len(record.entries) - len(skipped)


def _sorted_winding(c0, record):
    # A pure braid returns every puncture to its slot, so the winding vector
    # is reproduced without permutation.
    return c0.winding()


class TestStretchProfile:
    def test_constant_series_for_constant_trajectory(self):
        cfg = collinear(3)
        record = transport(gen_translation(cfg, (0, 0), steps=4), round_loop(1, 3, 3))
        series, peak = stretch_profile(record)
        assert len({d for _, d in series}) == 1
        assert peak == 2

    def test_translation_series_exactly_constant(self):
        cfg = validate_config([(0, 0), (Fraction(1, 3), 1), (2, 0)])
        record = transport(
            gen_translation(cfg, (Fraction(5, 7), Fraction(-2, 3)), steps=6),
            canonical_class(3, [1, 3]),
        )
        series, _ = stretch_profile(record)
        values = {d for _, d in series}
        assert len(values) == 1

    def test_cascade_peak_nondecreasing_and_reaches_bound(self):
        record = transport(gen_cascade(3, 16), round_loop(1, 2, 3))
        series, peak = stretch_profile(record)
        running = []
        cur = Fraction(0)
        for _, d in series:
            cur = max(cur, d)
            running.append(cur)
        assert running == sorted(running)
        assert series[-1][1] == Fraction(2, 3)
        assert peak >= Fraction(2, 3)


class TestRefineCheck:
    @pytest.mark.parametrize("factor", [2, 3])
    def test_cascade(self, factor):
        traj = gen_cascade(4, 16)
        assert refine_check(traj, round_loop(1, 2, 4), factor)

    @pytest.mark.parametrize("factor", [2, 3])
    def test_rotation(self, factor):
        traj = gen_rotation(collinear(3), (2, 0), 1, steps=16)
        assert refine_check(traj, canonical_class(3, [1, -2]), factor)

    def test_constant(self):
        traj = gen_translation(collinear(3), (0, 0), steps=3)
        assert refine_check(traj, round_loop(1, 2, 3), 5)

    def test_factor_validation(self):
        with pytest.raises(ValueError):
            refine_check(gen_cascade(3, 16), round_loop(1, 2, 3), 1)


class TestCascadeExperiment:
    def test_n3(self):
        report = cascade_experiment(3)
        assert report["certified_exact"] == "2/3"
        assert report["paper_bound_exact"] == "1/2"
        assert report["pass"] is True

    def test_n4(self):
        report = cascade_experiment(4)
        assert report["certified_exact"] == "3/4"
        assert report["paper_bound_exact"] == "2/3"
        assert report["pass"] is True

    def test_n2_rejected(self):
        with pytest.raises(ValueError):
            cascade_experiment(2)

    def test_monotone_crossed_growth(self):
        # After the k-th twist the crossed set has absorbed puncture k+1.
        n = 12
        traj = gen_cascade(n, 16)
        record = transport(traj, round_loop(1, 2, n))
        at_window_end = {}
        for entry in record.entries:
            for k in range(n, 1, -1):
                if entry.time == Fraction(1, k - 1):
                    at_window_end[k] = entry.loop_class.crossed()
        previous = set()
        for k in range(n, 1, -1):
            crossed = at_window_end[k]
            assert crossed >= previous
            assert (n - k + 2) in crossed
            previous = crossed
