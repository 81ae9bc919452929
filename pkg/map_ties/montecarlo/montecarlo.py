#!usr/bin/env
#Sampling estimates of a_n, b_n and delta_n for blocklengths past the
#exhaustive limit. Each sample sends c_i with i drawn from the prior, flips
#every bit with probability p and labels the output with the exact rank
#comparison used by classify, so only the sampling is random.
#
#Samples are drawn in blocks of BLOCK_SAMPLES. Block b uses its own Philox
#stream keyed by (seed, b), so estimates depend on the seed and the sample
#count only, never on the number of workers.
#
#  Typical usage example:
#  >>> est = mt.estimate_metrics(mt.example_one(), samples=10**5, seed=1)
#  >>> est.a.samples, est.a.seed
#  (100000, 1)
#


import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple
import numpy as np
from scipy.stats import binomtest
from map_ties.extra import CheckReport, MapTiesError, word_to_str
from map_ties.model.model import Instance
from map_ties.classify.classify import classify, metrics, regions, score_words


LOGGER = logging.getLogger(__name__)

BLOCK_SAMPLES = 2**14
WORD_BITS = 64
CONFIDENCE = 0.95



#==================================================
#Estimate
#==================================================
@dataclass(frozen=True)
class Estimate:
    """A Bernoulli mean estimate

    Attributes
    ----------
    metric : `str`
        'a', 'b' or 'delta' \n
    point : `float`
        Fraction of samples with the event \n
    stderr : `float`
        sqrt(point * (1 - point) / samples) \n
    samples : `int`
        Number of samples \n
    seed : `int`
        The seed the samples were drawn with \n
    ci_low : `float`
        Lower end of the exact (Clopper-Pearson) 95% interval \n
    ci_high : `float`
        Upper end of the interval \n
    """

    metric: str
    point: float
    stderr: float
    samples: int
    seed: int
    ci_low: float
    ci_high: float

    def to_json(self) -> dict:
        return {"metric": self.metric, "point": self.point, "stderr": self.stderr, "samples": self.samples,
                "seed": self.seed, "ci_low": self.ci_low, "ci_high": self.ci_high}


class MetricEstimates(NamedTuple):
    """Estimates of (a_n, b_n, delta_n)"""

    a: Estimate
    b: Estimate
    delta: Estimate


def make_estimate(metric: str, hits: int, samples: int, seed: int) -> Estimate:
    """Point, standard error and exact interval of hits out of samples"""

    point = hits / samples
    ci = binomtest(int(hits), int(samples)).proportion_ci(confidence_level=CONFIDENCE, method="exact")
    return Estimate(metric=metric, point=point, stderr=math.sqrt(point * (1 - point) / samples),
                    samples=samples, seed=seed, ci_low=float(ci.low), ci_high=float(ci.high))



#==================================================
#sampling
#==================================================
def block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, block])))


def _check(inst: Instance, samples: int, seed: int):
    if samples < 1:
        raise MapTiesError("samples must be positive")
    if not 0 <= seed < 2**64:
        raise MapTiesError(f"seed {seed} is not a 64-bit unsigned integer")
    if inst.n > WORD_BITS:
        raise MapTiesError(f"n = {inst.n} exceeds the {WORD_BITS}-bit words used for sampling")


def sample_block(inst: Instance, size: int, rng: np.random.Generator) -> tuple:
    """Returns (sent, y): 0-based codeword indices and channel outputs as uint64"""

    prior = np.array([float(w) for w in inst.prior])
    sent = rng.choice(inst.M, size=size, p=prior / prior.sum())
    flips = rng.random((size, inst.n)) < float(inst.p)
    powers = np.left_shift(np.uint64(1), np.arange(inst.n - 1, -1, -1, dtype=np.uint64))
    noise = (flips.astype(np.uint64) * powers).sum(axis=1, dtype=np.uint64)
    codewords = np.array(inst.codewords, dtype=np.uint64)
    return sent, codewords[sent] ^ noise


def _blocks(samples: int, block=BLOCK_SAMPLES):
    for index, start in enumerate(range(0, samples, block)):
        yield index, min(block, samples - start)


def _count_block(inst: Instance, seed: int, index: int, size: int) -> np.ndarray:
    sent, y = sample_block(inst, size, block_rng(seed, index))
    _, score = score_words(inst, y)
    tie, error = regions(score)
    cols = np.arange(size)
    wrong = np.argmax(score, axis=0) != sent
    return np.array([wrong.sum(), error[sent, cols].sum(), tie[sent, cols].sum()], dtype=np.int64)



#==================================================
#estimate_metrics
#==================================================
def estimate_metrics(inst: Instance, samples: int, seed=0, workers=1) -> MetricEstimates:
    """Monte Carlo estimates of a_n, b_n and delta_n

    Notes
    -----
    A sample counts toward a_n when the sent index is not the least index
    maximizing the joint weight, toward b_n when the output lies in N_i and
    toward delta_n when it lies in T_i. Works at any n up to 64 bits.

    Parameters
    ----------
    inst : `Instance`
        The instance \n
    samples : `int`
        Number of samples, at least 1 \n
    seed : `int`
        64-bit unsigned seed. Default is 0 \n
    workers : `int`
        Threads drawing blocks. Default is 1 \n

    Returns
    -------
    MetricEstimates
        Named tuple (a, b, delta) of Estimate \n

    Examples
    --------
    >>> est = mt.estimate_metrics(mt.repetition_two(), samples=1, seed=3)
    >>> est.a.point in (0.0, 1.0)
    True
    """

    _check(inst, samples, seed)
    blocks = list(_blocks(samples))
    LOGGER.debug("drawing %d sample(s) in %d block(s) with %d worker(s)", samples, len(blocks), workers)
    count = lambda item: _count_block(inst, seed, *item)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(count, blocks))
    else:
        counts = [count(item) for item in blocks]
    wrong, error, tie = (int(v) for v in sum(counts))
    LOGGER.info("%d sample(s): %d decoding error(s), %d tie-free error(s), %d tie(s)", samples, wrong, error, tie)
    return MetricEstimates(a=make_estimate("a", wrong, samples, seed),
                           b=make_estimate("b", error, samples, seed),
                           delta=make_estimate("delta", tie, samples, seed))


def estimates_to_json(estimates: MetricEstimates) -> list:
    return [e.to_json() for e in estimates]



#==================================================
#agreement checks
#==================================================
def check_agreement(inst: Instance, estimates: MetricEstimates, exact=None, width=4) -> CheckReport:
    """Each estimate lies within width standard errors of the exact value

    A zero standard error requires the estimate to equal the exact value.
    """

    report = CheckReport("montecarlo.agreement", checked=3)
    exact = exact if exact is not None else metrics(inst)
    for estimate, value in zip(estimates, exact):
        if abs(estimate.point - float(value)) > width * estimate.stderr:
            report.fail(f"{estimate.metric} estimate {estimate.point:.6g} is more than {width} standard "
                        f"errors from {value}", stderr=estimate.stderr)
    return report


def check_labels(inst: Instance, samples=1000, seed=0) -> CheckReport:
    """Sampled outputs carry the labels classify gives the same words"""

    _check(inst, samples, seed)
    report = CheckReport("montecarlo.labels", checked=samples)
    classification = classify(inst)
    for index, size in _blocks(samples):
        sent, y = sample_block(inst, size, block_rng(seed, index))
        _, score = score_words(inst, y)
        tie, error = regions(score)
        cols = np.arange(size)
        for i in range(inst.M):
            rows = sent == i
            in_tie = np.isin(y[rows], classification.ties[i])
            in_error = np.isin(y[rows], classification.errors[i])
            bad = (in_tie != tie[i, cols[rows]]) | (in_error != error[i, cols[rows]])
            for word in y[rows][bad][:1]:
                report.fail("sampled label differs from the exhaustive one", i=i + 1, y=word_to_str(word, inst.n))
    return report
