import random
import time

import pytest

from isoloop import (
    apply_word,
    carry,
    extract_word,
    round_loop,
    round_polyline,
    twist_trajectory,
    word_from_polyline,
)


@pytest.fixture(scope="session")
def oracle_suite():
    """200 randomized braid motions with carried-polyline results.

    Shared between the oracle-equivalence and certificate-soundness
    acceptance criteria so the carries run once.
    """
    rng = random.Random(20250810)
    cases = []
    t0 = time.monotonic()
    for _ in range(200):
        n = rng.randint(2, 5)
        length = rng.randint(1, 8)
        letters = [rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(length)]
        j = rng.randint(1, n)
        k = rng.randint(j, n)
        traj = twist_trajectory(n, letters, steps_per_twist=8)
        word, _ = extract_word(traj)
        assert list(word.letters) == letters
        loop = round_polyline(traj.initial(), j, k)
        start = word_from_polyline(loop, traj.initial())
        assert start == round_loop(j, k, n)
        carried = carry(loop, traj)
        final_config = traj.final()
        cases.append(
            {
                "n": n,
                "letters": letters,
                "algebra": apply_word(start, word),
                "oracle": word_from_polyline(carried, final_config),
                "polyline": carried,
                "config": final_config,
            }
        )
    elapsed = time.monotonic() - t0
    return {"cases": cases, "elapsed": elapsed}
