"""Multi-round sessions with per-round random substreams."""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace

import numpy as np

from iaqc.analysis.stats import aggregate
from iaqc.errors import check_range
from iaqc.protocol.engine import run_round
from iaqc.protocol.models import AnglePolicy

logger = logging.getLogger(__name__)


def round_rng(seed, index):
    """Generator for round ``index`` of the session seeded with ``seed``."""
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(int(index),)))


def derive_seed(seed, index):
    """A child seed for nested sessions (e.g. one per sweep point)."""
    state = np.random.SeedSequence(int(seed), spawn_key=(int(index),)).generate_state(2, dtype=np.uint64)
    return int(state[0])


def _round_config(template, policy, random_bits, rng):
    cfg = template
    if policy == AnglePolicy.FRESH:
        angle_set = template.angle_set
        cfg = cfg.with_angles(angle_set.draw(rng), angle_set.draw(rng))
    if random_bits:
        cfg = replace(cfg, bit=int(rng.integers(2)))
    return cfg


def run_session_rounds(template, n_rounds, angle_policy, seed, threads=1, random_bits=False):
    """Run n independent rounds and return their transcripts in round order.

    Round i draws its angles (and bit, when ``random_bits``) and all of its
    randomness from the substream (seed, i), so the result does not depend
    on the number of threads.
    """
    check_range('rounds', n_rounds, 1, None)
    check_range('threads', threads, 1, None)
    template.validate()
    policy = AnglePolicy(angle_policy)

    def one(index):
        rng = round_rng(seed, index)
        return run_round(_round_config(template, policy, random_bits, rng), rng)

    if threads == 1:
        transcripts = [one(i) for i in range(n_rounds)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            transcripts = list(executor.map(one, range(n_rounds)))

    logger.info(f"Session finished: {n_rounds} {template.variant.value} rounds, "
                f"policy={policy.value}, seed={seed}")
    return transcripts


def run_session(template, n_rounds, angle_policy=AnglePolicy.FIXED, seed=0, threads=1, random_bits=False):
    """Run a session and aggregate it into SessionStats."""
    transcripts = run_session_rounds(template, n_rounds, angle_policy, seed, threads, random_bits)
    return aggregate(transcripts)
