#!usr/bin/env
#Exhaustive classification of channel outputs under MAP decoding.
#For every output y and codeword index i, y is a tie for i (T_i) when
#P(c_i, y) equals the largest P(c_r, y) over r != i, a tie-free error (N_i)
#when it is strictly smaller, and correct otherwise. The minimal error
#probability a_n, the tie-free error probability b_n and the tie probability
#delta_n follow exactly, and b_n <= a_n <= (1 + 2qn) b_n is checked.
#
#Joint weights only take the M*(n+1) values prior_i * p^n * q^(n-d), so every
#comparison is done on integer ranks of those exact values, and all sums come
#from integer histograms over (i, d). Outputs are scanned in blocks that can
#run on several threads; the histograms merge in block order.
#
#  Typical usage example:
#  >>> m = mt.metrics(mt.example_one())
#  >>> m.a, m.b, m.delta
#  (Fraction(9, 25), Fraction(49, 225), Fraction(176, 675))
#


import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple
import numpy as np
from map_ties.extra import Violation, popcount, render_table, word_to_str
from map_ties.model.model import Instance, as_word, check_index, joint_weight, weight_table


LOGGER = logging.getLogger(__name__)

CHUNK_WORDS = 2**16



#==================================================
#rank tables
#==================================================
@dataclass(frozen=True)
class RankTable:
    """Exact joint weights of an instance and their dense ranks

    Attributes
    ----------
    weights : `list`
        W[i-1][d], the joint weight of c_i and any output at distance d \n
    values : `tuple`
        The distinct joint weights in ascending order \n
    rank : `numpy.ndarray`
        rank[i-1, d] = position of W[i-1][d] in values; equal weights share a rank \n
    rank_q2 : `numpy.ndarray`
        Rank of q^2 * W[i-1][d], or -1 when no joint weight takes that value \n
    """

    weights: list
    values: tuple
    rank: np.ndarray
    rank_q2: np.ndarray
    lookup: dict = field(repr=False)


@lru_cache(maxsize=32)
def rank_table(inst: Instance) -> RankTable:
    W = weight_table(inst)
    values = tuple(sorted({w for row in W for w in row}))
    lookup = {v: r for r, v in enumerate(values)}
    rank = np.array([[lookup[w] for w in row] for row in W], dtype=np.int64)
    q2 = inst.q**2
    rank_q2 = np.array([[lookup.get(w * q2, -1) for w in row] for row in W], dtype=np.int64)
    return RankTable(weights=W, values=values, rank=rank, rank_q2=rank_q2, lookup=lookup)


def word_blocks(n: int, chunk=CHUNK_WORDS):
    """Consecutive ranges of the 2^n output words, as uint64 arrays"""

    total = 1 << n
    for start in range(0, total, chunk):
        yield np.arange(start, min(start + chunk, total), dtype=np.uint64)


def score_words(inst: Instance, words: np.ndarray):
    """Returns distances and weight ranks of every codeword against a block of words

    Both arrays have shape (M, len(words)); column y holds d(c_r, y) and the
    rank of P(c_r, y) for r = 1..M.
    """

    table = rank_table(inst)
    codewords = np.array(inst.codewords, dtype=np.uint64)
    dist = popcount(words[None, :] ^ codewords[:, None])
    score = table.rank[np.arange(inst.M)[:, None], dist]
    return dist, score


def regions(score: np.ndarray):
    """Tie and error masks of shape (M, L) from a block of ranks"""

    top = score.max(axis=0)
    at_top = score == top
    shared = at_top.sum(axis=0) >= 2
    return at_top & shared, score < top



#==================================================
#scan
#==================================================
@dataclass
class _Tally:
    tie: np.ndarray
    error: np.ndarray
    win: np.ndarray
    tie_words: list = None
    error_words: list = None


def _scan_block(inst: Instance, words: np.ndarray, collect: bool) -> _Tally:
    M, width = inst.M, inst.n + 1
    dist, score = score_words(inst, words)
    tie, error = regions(score)
    cell = np.arange(M)[:, None] * width + dist
    size = M * width
    tally = _Tally(
        tie=np.bincount(cell[tie], minlength=size).reshape(M, width),
        error=np.bincount(cell[error], minlength=size).reshape(M, width),
        win=np.bincount(cell[np.argmax(score, axis=0), np.arange(len(words))], minlength=size).reshape(M, width))
    if collect:
        tally.tie_words = [words[tie[r]] for r in range(M)]
        tally.error_words = [words[error[r]] for r in range(M)]
    return tally


def scan(inst: Instance, collect=False, workers=1, chunk=CHUNK_WORDS) -> _Tally:
    """Visit all 2^n outputs and return the merged histograms

    Notes
    -----
    Histograms count outputs by (codeword, distance) in the tie region, the
    error region and the decision region of the least-index MAP decoder.
    Blocks are merged in ascending order, so the result and any collected
    word lists do not depend on the number of workers.
    """

    inst.check_enumerable()
    blocks = word_blocks(inst.n, chunk)
    LOGGER.debug("scanning 2^%d outputs in blocks of %d with %d worker(s)", inst.n, chunk, workers)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            tallies = list(pool.map(lambda words: _scan_block(inst, words, collect), blocks))
    else:
        tallies = [_scan_block(inst, words, collect) for words in blocks]

    merged = _Tally(
        tie=sum(t.tie for t in tallies),
        error=sum(t.error for t in tallies),
        win=sum(t.win for t in tallies))
    if collect:
        merged.tie_words = [np.concatenate([t.tie_words[r] for t in tallies]) for r in range(inst.M)]
        merged.error_words = [np.concatenate([t.error_words[r] for t in tallies]) for r in range(inst.M)]
    LOGGER.debug("scanned %d block(s)", len(tallies))
    return merged


def histogram_mass(inst: Instance, counts: np.ndarray) -> list:
    """Exact probability mass per codeword of a (M, n+1) count histogram"""

    W = rank_table(inst).weights
    return [sum((int(c) * W[r][d] for d, c in enumerate(counts[r]) if c), Fraction(0)) for r in range(inst.M)]



#==================================================
#Metrics
#==================================================
class Metrics(NamedTuple):
    """The exact error, tie-free error and tie probabilities"""

    a: Fraction
    b: Fraction
    delta: Fraction


def _metrics_from(inst: Instance, tally: _Tally) -> Metrics:
    correct = sum(histogram_mass(inst, tally.win), Fraction(0))
    b = sum(histogram_mass(inst, tally.error), Fraction(0))
    delta = sum(histogram_mass(inst, tally.tie), Fraction(0))
    return Metrics(a=1 - correct, b=b, delta=delta)


def metrics(inst: Instance, workers=1) -> Metrics:
    """Returns (a_n, b_n, delta_n) exactly

    Notes
    -----
    a_n = 1 - sum over y of max_i P(c_i, y), the error probability of any
    MAP decoder. b_n = sum_i P(c_i, N_i) and delta_n = sum_i P(c_i, T_i).

    Parameters
    ----------
    inst : `Instance`
        The instance, n within its enumeration limit \n
    workers : `int`
        Threads used for the scan. Default is 1 \n

    Returns
    -------
    Metrics
        Named tuple (a, b, delta) of Fractions \n

    Examples
    --------
    >>> mt.metrics(mt.repetition_two())
    Metrics(a=Fraction(1, 4), b=Fraction(1, 16), delta=Fraction(3, 8))
    """

    return _metrics_from(inst, scan(inst, collect=False, workers=workers))



#==================================================
#Classification
#==================================================
@dataclass(frozen=True)
class Classification:
    """Tie and tie-free error regions of every codeword with the metrics

    Attributes
    ----------
    instance : `Instance`
        The classified instance \n
    ties : `tuple`
        Sorted word arrays, ties[i-1] = T_i \n
    errors : `tuple`
        Sorted word arrays, errors[i-1] = N_i \n
    metrics : `Metrics`
        (a_n, b_n, delta_n) \n
    tie_mass : `tuple`
        P(c_i, T_i) per codeword \n
    error_mass : `tuple`
        P(c_i, N_i) per codeword \n
    """

    instance: Instance
    ties: tuple
    errors: tuple
    metrics: Metrics
    tie_mass: tuple
    error_mass: tuple

    def tie_set(self, i: int) -> list:
        check_index(self.instance, i)
        return [int(y) for y in self.ties[i - 1]]

    def error_set(self, i: int) -> list:
        check_index(self.instance, i)
        return [int(y) for y in self.errors[i - 1]]

    def correct_set(self, i: int) -> list:
        check_index(self.instance, i)
        taken = np.union1d(self.ties[i - 1], self.errors[i - 1])
        everything = np.arange(1 << self.instance.n, dtype=np.uint64)
        return [int(y) for y in np.setdiff1d(everything, taken, assume_unique=True)]

    @property
    def tie_free(self) -> bool:
        return self.metrics.delta == 0


def classify(inst: Instance, workers=1) -> Classification:
    """Returns the tie and error regions of every codeword and the metrics

    >>> c = mt.classify(mt.example_one())
    >>> [mt.word_to_str(y, 4) for y in c.tie_set(1)]
    ['0101', '0110', '0111', '1101', '1110', '1111']
    """

    tally = scan(inst, collect=True, workers=workers)
    LOGGER.info("classified 2^%d outputs for %d codewords", inst.n, inst.M)
    return Classification(
        instance=inst,
        ties=tuple(tally.tie_words),
        errors=tuple(tally.error_words),
        metrics=_metrics_from(inst, tally),
        tie_mass=tuple(histogram_mass(inst, tally.tie)),
        error_mass=tuple(histogram_mass(inst, tally.error)))


def tie_set(inst: Instance, i: int, workers=1) -> list:
    """Returns T_i, the outputs whose weight for c_i ties the best other codeword"""

    check_index(inst, i)
    return classify(inst, workers=workers).tie_set(i)


def error_set(inst: Instance, i: int, workers=1) -> list:
    """Returns N_i, the outputs some other codeword strictly beats c_i on"""

    check_index(inst, i)
    return classify(inst, workers=workers).error_set(i)



#==================================================
#tie_indices
#==================================================
def tie_indices(inst: Instance, i: int, y) -> list:
    """Returns I_i(y), the other codewords tying c_i at the maximum for y

    Notes
    -----
    The set is empty exactly when y is not in T_i. This works on a single
    word, so it is available at any blocklength.

    Parameters
    ----------
    inst : `Instance`
        The instance \n
    i : `int`
        1-based codeword index \n
    y : `int`
        Output word, integer or bit string \n

    Returns
    -------
    list
        Ascending 1-based indices \n

    Examples
    --------
    >>> mt.tie_indices(mt.example_one(), 1, "0111")
    [2, 3]
    """

    check_index(inst, i)
    y = as_word(inst, y)
    values = [joint_weight(inst, r, y) for r in range(1, inst.M + 1)]
    mine = values[i - 1]
    if mine < max(values):
        return []
    return [h for h in range(1, inst.M + 1) if h != i and values[h - 1] == mine]


def map_decode(inst: Instance, y) -> int:
    """Returns the least index maximizing P(c_i, y)

    >>> mt.map_decode(mt.example_one(), "0111")
    1
    """

    y = as_word(inst, y)
    values = [joint_weight(inst, r, y) for r in range(1, inst.M + 1)]
    return values.index(max(values)) + 1



#==================================================
#verify_theorem
#==================================================
@dataclass(frozen=True)
class BoundReport:
    """The sandwich and the linear bounds between a_n, b_n and delta_n

    Attributes
    ----------
    metrics : `Metrics`
        (a_n, b_n, delta_n) \n
    q : `Fraction`
        The likelihood ratio of the channel \n
    n : `int`
        The blocklength \n
    uniform : `bool`
        Whether the prior is uniform, which enables the 1 + qn check \n
    violations : `list`
        Failed bounds \n
    """

    metrics: Metrics
    q: Fraction
    n: int
    uniform: bool
    sandwich_ok: bool
    delta_ok: bool
    theorem_ok: bool
    uniform_ok: bool
    violations: list = field(default_factory=list)

    @property
    def tie_free(self) -> bool:
        return self.metrics.delta == 0

    @property
    def bound_ok(self) -> tuple:
        return (self.sandwich_ok, self.theorem_ok)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def ratio_a_b(self):
        return self.metrics.a / self.metrics.b if self.metrics.b else None

    @property
    def ratio_delta_b(self):
        return self.metrics.delta / self.metrics.b if self.metrics.b else None

    def to_json(self) -> dict:
        a, b, delta = self.metrics
        optional = lambda x: None if x is None else str(x)
        return {
            "a": str(a), "b": str(b), "delta": str(delta), "q": str(self.q), "n": self.n,
            "tie_free": self.tie_free, "uniform": self.uniform,
            "sandwich_ok": self.sandwich_ok, "delta_ok": self.delta_ok,
            "theorem_ok": self.theorem_ok, "uniform_ok": self.uniform_ok,
            "bound_ok": all(self.bound_ok) and self.delta_ok and self.uniform_ok,
            "ratio_a_b": optional(self.ratio_a_b), "ratio_delta_b": optional(self.ratio_delta_b),
            "bound_2qn": str(2 * self.q * self.n), "bound_1_2qn": str(1 + 2 * self.q * self.n),
            "violations": [v.to_json() for v in self.violations],
        }


def verify_theorem(inst: Instance, m=None, workers=1) -> BoundReport:
    """Check b_n <= a_n <= b_n + delta_n, delta_n <= 2qn b_n and a_n <= (1+2qn) b_n

    Notes
    -----
    Under a uniform prior a_n <= (1+qn) b_n is checked as well. A failed
    bound is recorded as a Violation; none is expected on any instance.

    Parameters
    ----------
    inst : `Instance`
        The instance \n
    m : `Metrics`
        Metrics already computed for inst. Default computes them \n
    workers : `int`
        Threads for the scan. Default is 1 \n

    Returns
    -------
    BoundReport
        Each bound with the exact ratios \n

    Examples
    --------
    >>> report = mt.verify_theorem(mt.example_one())
    >>> report.passed, report.ratio_delta_b
    (True, Fraction(176, 147))
    """

    a, b, delta = m if m is not None else metrics(inst, workers=workers)
    qn = inst.q * inst.n
    uniform = inst.is_uniform
    sandwich_ok = b <= a <= b + delta
    delta_ok = delta <= 2 * qn * b
    theorem_ok = a <= (1 + 2 * qn) * b
    uniform_ok = (a <= (1 + qn) * b) if uniform else True

    witness = {"a": str(a), "b": str(b), "delta": str(delta), "q": str(inst.q), "n": inst.n}
    violations = []
    if not sandwich_ok:
        violations.append(Violation("classify.sandwich", "b_n <= a_n <= b_n + delta_n fails", witness))
    if not delta_ok:
        violations.append(Violation("classify.delta_bound", "delta_n <= 2qn b_n fails", witness))
    if not theorem_ok:
        violations.append(Violation("classify.theorem", "a_n <= (1 + 2qn) b_n fails", witness))
    if not uniform_ok:
        violations.append(Violation("classify.uniform_theorem", "a_n <= (1 + qn) b_n fails under a uniform prior", witness))
    for v in violations:
        LOGGER.warning("bound violated: %s (%s)", v.property, v.detail)
    return BoundReport(
        metrics=Metrics(a, b, delta), q=inst.q, n=inst.n, uniform=uniform,
        sandwich_ok=sandwich_ok, delta_ok=delta_ok, theorem_ok=theorem_ok, uniform_ok=uniform_ok,
        violations=violations)



#==================================================
#classification_table
#==================================================
def distance_offsets(inst: Instance) -> list:
    """Exponent shifts for the distance columns, or zeros

    When every prior weight is c*q^e with one shared coefficient c, the
    prior of codeword r is proportional to q^(e_r), so comparing
    d(c_r, y) - e_r across r is comparing joint weights.
    """

    if all(w.is_monomial() for w in inst.weights):
        coefficients = {next(iter(w.terms.values())) for w in inst.weights}
        if len(coefficients) == 1:
            return [next(iter(w.terms)) for w in inst.weights]
    return [0] * inst.M


def classification_rows(inst: Instance, i=None) -> tuple:
    """Returns (headers, rows): one row per output with distances, tags and I_i(y)

    Notes
    -----
    Tags are TIE for y in T_i, ERR for y in N_i and OK otherwise. Passing i
    keeps only that codeword's tag and tie index columns.
    """

    inst.check_enumerable()
    indices = list(range(1, inst.M + 1)) if i is None else [i]
    for r in indices:
        check_index(inst, r)
    offsets = distance_offsets(inst)
    headers = ["y"]
    for word, e in zip(inst.words, offsets):
        headers.append(f"d({word},y)" + (f"-{e}" if e > 0 else f"+{-e}" if e < 0 else ""))
    headers += [f"tag_{r}" for r in indices] + [f"I_{r}(y)" for r in indices]

    rows = []
    for words in word_blocks(inst.n):
        dist, score = score_words(inst, words)
        tie, error = regions(score)
        top = score.max(axis=0)
        for col, y in enumerate(words):
            row = [word_to_str(int(y), inst.n)]
            row += [int(dist[r, col]) - offsets[r] for r in range(inst.M)]
            row += ["TIE" if tie[r - 1, col] else "ERR" if error[r - 1, col] else "OK" for r in indices]
            for r in indices:
                if tie[r - 1, col]:
                    row.append([h + 1 for h in range(inst.M) if h != r - 1 and score[h, col] == top[col]])
                else:
                    row.append([])
            rows.append(row)
    return headers, rows


def classification_table(inst: Instance, i=None, fmt="md") -> str:
    """Membership matrix of all outputs, one row per output word"""

    headers, rows = classification_rows(inst, i=i)
    return render_table(headers, rows, fmt=fmt)


def bound_table(report: BoundReport, fmt="md") -> str:
    """The analyze summary: metrics, ratios and the bound checks"""

    data = report.to_json()
    keys = ["n", "q", "a", "b", "delta", "ratio_a_b", "ratio_delta_b", "bound_2qn",
            "sandwich_ok", "delta_ok", "theorem_ok", "uniform_ok", "tie_free"]
    rows = [[key, "-" if data[key] is None else str(data[key]).lower() if isinstance(data[key], bool) else data[key]]
            for key in keys]
    return render_table(["quantity", "value"], rows, fmt=fmt)
