from fractions import Fraction

import pytest

from isoloop import (
    AmbiguousStep,
    BraidWord,
    Collision,
    apply_to_letters,
    extract_detailed,
    extract_word,
    gen_cascade,
    gen_rotation,
    gen_translation,
    make_trajectory,
    subdivide,
    validate_config,
)
from isoloop.configspace import Config


def collinear(n):
    return validate_config([(i, 0) for i in range(1, n + 1)])


def test_constant_trajectory_empty_word():
    traj = gen_translation(validate_config([(0, 0), (1, 1)]), (0, 0), steps=5)
    word, margins = extract_word(traj)
    assert word.letters == ()
    assert margins.valid


def test_cascade_two_points_is_sigma_squared():
    word, _ = extract_word(gen_cascade(2, 16))
    assert word.letters == (1, 1)


def test_cascade_minimum_sampling():
    word, _ = extract_word(gen_cascade(2, 8))
    assert word.letters == (1, 1)


@pytest.mark.parametrize("n", [3, 4, 5, 8, 12])
def test_cascade_word_is_chain_of_squares(n):
    # One counterclockwise orbit per window, leftmost pair first.
    word, _ = extract_word(gen_cascade(n, 16))
    expected = tuple(s for i in range(1, n) for s in (i, i))
    assert word.letters == expected


def test_translation_no_events():
    cfg = collinear(4)
    word, _ = extract_word(gen_translation(cfg, (Fraction(3, 7), -2), steps=6))
    assert word.letters == ()


class TestFullTwist:
    def test_three_collinear_points(self):
        # A full turn about the centroid reverses the x-order twice; each
        # reversal is one half-twist, read as the staircase word.
        traj = gen_rotation(collinear(3), (2, 0), 1, steps=16)
        word, _ = extract_word(traj)
        assert word.letters == (1, 2, 1, 1, 2, 1)
        assert word.is_pure()

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_length_n_n_minus_1(self, n):
        cfg = collinear(n)
        traj = gen_rotation(cfg, (Fraction(n + 1, 2), 0), 1, steps=16)
        word, _ = extract_word(traj)
        assert len(word) == n * (n - 1)
        assert all(s > 0 for s in word.letters)
        assert word.is_pure()

    def test_acts_as_conjugation_by_boundary(self):
        traj = gen_rotation(collinear(3), (2, 0), 1, steps=16)
        word, _ = extract_word(traj)
        for j in (1, 2, 3):
            image = apply_to_letters((j,), word.letters, 3)
            assert image == (1, 2, 3, j, -3, -2, -1) or list(image) == _reduced(
                [1, 2, 3, j, -3, -2, -1]
            )


def _reduced(letters):
    from isoloop.kernels import free_reduce

    return free_reduce(letters)


def test_determinism():
    traj = gen_cascade(4, 16)
    a = extract_word(traj)[0]
    b = extract_word(traj)[0]
    assert a == b


def test_events_carry_step_and_time():
    detail = extract_detailed(gen_cascade(2, 8))
    assert len(detail.events) == 2
    for event in detail.events:
        assert 0 <= event.t_local <= 1
        assert event.slot == 1
        assert event.sign == 1
    assert sum(detail.step_letter_counts) == 2


def test_pure_braid_detection():
    for traj in (gen_cascade(5, 16), gen_rotation(collinear(4), (2, 0), 1, 16)):
        word, _ = extract_word(traj)
        assert traj.is_closed()
        assert word.is_pure()


class TestSubdivide:
    def test_constant_subdivision(self):
        traj = gen_translation(validate_config([(0, 0), (1, 0)]), (0, 0), steps=3)
        fine = subdivide(traj, 4)
        assert fine.steps == 12
        assert all(c.points == traj.initial().points for _, c in fine.samples)

    def test_factor_one_rejected(self):
        with pytest.raises(ValueError):
            subdivide(gen_cascade(2, 8), 1)

    def test_originals_preserved_exactly(self):
        traj = gen_cascade(3, 8)
        fine = subdivide(traj, 3)
        times = set(fine.times)
        for t, cfg in traj.samples:
            assert t in times
        assert fine.initial().points == traj.initial().points

    def test_extraction_stable_under_refinement(self):
        # Steps are linear interpolations, so refining them cannot create or
        # move crossings: the word is literally identical.
        traj = gen_cascade(3, 16)
        base, _ = extract_word(traj)
        for factor in (2, 3):
            fine, _ = extract_word(subdivide(traj, factor))
            assert fine == base

    def test_rotation_word_stable_under_refinement(self):
        traj = gen_rotation(collinear(3), (2, 0), 1, steps=16)
        base, _ = extract_word(traj)
        fine, _ = extract_word(subdivide(traj, 2))
        assert fine == base


def _two_sample(points_a, points_b):
    return make_trajectory(
        [(0, Config(tuple(points_a))), (1, Config(tuple(points_b)))]
    )


def _pts(*pairs):
    return [(Fraction(x), Fraction(y)) for x, y in pairs]


class TestDegenerateSteps:
    def test_simultaneous_full_reversal_uniform_sign(self):
        # Three x-lines concurring at one point with coherent below/above
        # pattern: the staircase half-twist.
        traj = _two_sample(
            _pts((0, 0), (1, Fraction(1, 10)), (2, Fraction(2, 10))),
            _pts((2, 0), (1, Fraction(1, 10)), (0, Fraction(2, 10))),
        )
        word, _ = extract_word(traj)
        assert word.letters == (1, 2, 1)

    def test_simultaneous_mixed_signs_ambiguous(self):
        traj = _two_sample(
            _pts((0, Fraction(1, 10)), (1, 0), (2, Fraction(2, 10))),
            _pts((2, Fraction(1, 10)), (1, 0), (0, Fraction(2, 10))),
        )
        with pytest.raises(AmbiguousStep):
            extract_word(traj)

    def test_identical_x_motion_swap_is_ambiguous(self):
        samples = [
            (0, Config(tuple(_pts((0, 0), (1, 1))))),
            (Fraction(1, 2), Config(tuple(_pts((2, 0), (2, 1))))),
            (1, Config(tuple(_pts((2, 1), (2, 0))))),
        ]
        traj = make_trajectory(samples)
        with pytest.raises(AmbiguousStep):
            extract_word(traj)

    def test_interpolated_collision(self):
        traj = _two_sample(_pts((0, 0), (1, 0)), _pts((1, 0), (0, 0)))
        with pytest.raises(Collision):
            extract_word(traj)


def test_braidword_parse_format():
    w = BraidWord.parse(3, "1 1 2 2")
    assert w.letters == (1, 1, 2, 2)
    assert w.format() == "1 1 2 2"
    assert BraidWord(3, (1, -2)).inverse().letters == (2, -1)
    with pytest.raises(ValueError):
        BraidWord(3, (3,))
