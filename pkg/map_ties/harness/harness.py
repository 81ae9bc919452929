#!usr/bin/env
#Seeded random instances and the full property suite.
#run_suite classifies an instance, builds every partition, runs every check
#and compares the optimized constructions with a slow oracle that evaluates
#each membership predicate word by word straight from the definitions.
#run_fuzz does this over a reproducible corpus; every trial draws from its
#own Philox stream keyed by (seed, trial), so a trial can be replayed alone.
#
#  Typical usage example:
#  >>> report = mt.run_fuzz(mt.FuzzConfig(seed=7, trials=50))
#  >>> report.passed
#  True
#


import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
import numpy as np
from scipy.special import comb
from map_ties.extra import CheckReport, MapTiesError, word_to_str
from map_ties.model.model import (ENUMERATION_LIMIT, Instance, build_instance, instance_to_json, joint_weight,
    restricted_distance)
from map_ties.weights.weights import LaurentWeight
from map_ties.classify.classify import classification_rows, classify, map_decode, tie_indices, verify_theorem
from map_ties.partitions.partitions import (bound_chain, check_prop1, check_prop2, check_uniform,
    partition_reports, tie_partitions)


LOGGER = logging.getLogger(__name__)

DEFAULT_P_POOL = (Fraction(1, 3), Fraction(1, 4), Fraction(2, 5), Fraction(1, 5), Fraction(1, 10))
WEIGHT_STYLES = ("rational", "laurent", "mixed")
ORACLE_LIMIT = 12



#==================================================
#FuzzConfig
#==================================================
@dataclass(frozen=True)
class FuzzConfig:
    """Settings of a fuzz corpus

    Attributes
    ----------
    seed : `int`
        Corpus seed, 0 <= seed < 2^64 \n
    trials : `int`
        Number of instances \n
    max_n : `int`
        Largest blocklength, at most 12 \n
    max_m : `int`
        Largest number of codewords, at most 8 \n
    p_pool : `tuple`
        Crossover probabilities to draw from \n
    weight_style : `str`
        'rational', 'laurent' or 'mixed' (a coin flip per trial) \n
    uniform_share : `Fraction`
        Probability that a trial uses the uniform prior \n
    """

    seed: int = 0
    trials: int = 1000
    max_n: int = 8
    max_m: int = 6
    p_pool: tuple = DEFAULT_P_POOL
    weight_style: str = "mixed"
    uniform_share: Fraction = Fraction(1, 4)

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise MapTiesError(f"seed {self.seed} is not a 64-bit unsigned integer")
        if self.trials < 1:
            raise MapTiesError("trials must be positive")
        if not 2 <= self.max_n <= 12:
            raise MapTiesError(f"max_n = {self.max_n} must lie in [2, 12]")
        if not 2 <= self.max_m <= 8:
            raise MapTiesError(f"max_m = {self.max_m} must lie in [2, 8]")
        if not self.p_pool or any(not 0 < Fraction(p) < Fraction(1, 2) for p in self.p_pool):
            raise MapTiesError("p_pool needs rationals in (0, 1/2)")
        if self.weight_style not in WEIGHT_STYLES:
            raise MapTiesError(f"weight_style must be one of {', '.join(WEIGHT_STYLES)}")
        if not 0 <= self.uniform_share <= 1:
            raise MapTiesError("uniform_share must lie in [0, 1]")



#==================================================
#random_instance
#==================================================
def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """The counter-based generator of one trial"""

    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, trial])))


def random_instance(cfg: FuzzConfig, trial: int) -> Instance:
    """Returns the instance of one trial, a pure function of (cfg, trial)

    Notes
    -----
    n is uniform on [2, max_n] and M on [2, min(max_m, 2^n)]; the codewords
    are distinct and drawn without replacement. Weights are small rationals
    a/b with a in [1, 9] and b in [1, 4], or monomials q^e with e in
    [-3, 3], or all equal for a uniform_share of the trials.

    Parameters
    ----------
    cfg : `FuzzConfig`
        The corpus settings \n
    trial : `int`
        Trial number, 0 <= trial < cfg.trials \n

    Returns
    -------
    Instance
        A validated instance \n

    Examples
    --------
    >>> cfg = mt.FuzzConfig(seed=7)
    >>> mt.random_instance(cfg, 0) == mt.random_instance(cfg, 0)
    True
    """

    if not 0 <= trial < cfg.trials:
        raise IndexError(f"trial {trial} outside [0, {cfg.trials - 1}]")
    rng = trial_rng(cfg.seed, trial)
    n = int(rng.integers(2, cfg.max_n + 1))
    M = int(rng.integers(2, min(cfg.max_m, 2**n) + 1))
    codewords = [word_to_str(int(c), n) for c in rng.choice(2**n, size=M, replace=False)]

    style = cfg.weight_style
    if style == "mixed":
        style = WEIGHT_STYLES[int(rng.integers(2))]
    uniform = rng.random() < float(cfg.uniform_share)
    if uniform:
        weights = ["1"] * M
    elif style == "rational":
        weights = [f"{a}/{b}" for a, b in zip(rng.integers(1, 10, size=M), rng.integers(1, 5, size=M))]
    else:
        weights = [f"q^{e}" for e in rng.integers(-3, 4, size=M)]
    p = cfg.p_pool[int(rng.integers(len(cfg.p_pool)))]
    return build_instance(codewords, weights, p=p, limit=max(cfg.max_n, ENUMERATION_LIMIT))



#==================================================
#oracle
#==================================================
class Oracle:
    """Literal word by word evaluation of every definition

    Nothing is shared with the optimized engine beyond joint_weight and
    restricted_distance. Meant for n up to ORACLE_LIMIT.
    """

    def __init__(self, inst: Instance):
        self.inst = inst
        self.n, self.M = inst.n, inst.M
        self.words = list(range(2**inst.n))
        self.indices = list(range(1, inst.M + 1))
        self.P = {(i, y): joint_weight(inst, i, y) for i in self.indices for y in self.words}
        self.full = 2**inst.n - 1

    def c(self, i: int) -> int:
        return self.inst.codewords[i - 1]

    def S(self, i: int, j: int) -> int:
        return self.c(i) ^ self.c(j)

    def best_other(self, i: int, y: int):
        return max(self.P[r, y] for r in self.indices if r != i)

    def ties(self, i: int) -> list:
        return [y for y in self.words if self.P[i, y] == self.best_other(i, y)]

    def errors(self, i: int) -> list:
        return [y for y in self.words if self.P[i, y] < self.best_other(i, y)]

    def tie_indices(self, i: int, y: int) -> list:
        best = self.best_other(i, y)
        return [h for h in self.indices if h != i and self.P[i, y] == self.P[h, y] == best]

    def families(self, i: int) -> tuple:
        tie = {j: [] for j in self.indices if j != i}
        remainder = {j: [] for j in self.indices if j != i}
        error = {j: [] for j in self.indices if j != i}
        q2 = self.inst.q**2
        for y in self.ties(i):
            tying = self.tie_indices(i, y)
            close = [r for r in tying
                     if restricted_distance(self.c(i), y, self.S(i, r)) < bin(self.S(i, r)).count("1")]
            if close:
                tie[min(close)].append(y)
            else:
                remainder[min(tying)].append(y)
        for y in self.errors(i):
            for j in error:
                if self.P[j, y] == q2 * self.P[i, y] and all(
                        self.P[j, y] != self.P[r, y] for r in range(1, j) if r != i):
                    error[j].append(y)
        return tie, remainder, error

    def cells(self, i: int, j: int) -> list:
        others = [r for r in self.indices if r not in (i, j)]
        cells = []
        for m in range(1, 2**(self.M - 2) + 1):
            cell = self.S(i, j)
            for pos, r in enumerate(others):
                lam = ((m - 1) >> pos) & 1
                cell &= self.S(i, r) if lam else self.full ^ self.S(i, r)
            cells.append(cell)
        return cells

    def levels(self, i: int, j: int, tie: list, error: list) -> list:
        cells = self.cells(i, j)
        union = [0]
        for cell in cells:
            union.append(union[-1] | cell)
        size = [bin(u).count("1") for u in union]
        ell = bin(self.S(i, j)).count("1")
        out = []
        for k in range(ell):
            if k < ell - 1:
                eta = min(m for m in range(1, len(cells) + 1) if k < size[m] - 1)
            else:
                eta = min(m for m in range(1, len(cells) + 1) if k == size[m] - 1)
            prev, cur = union[eta - 1], union[eta]
            d = lambda y, S: restricted_distance(self.c(i), y, S)
            tie_k = [y for y in tie if size[eta - 1] - 1 <= d(y, prev) and d(y, cur) == k]
            error_k = [w for w in error if size[eta - 1] == d(w, prev) and d(w, cur) == k + 1]
            outside = self.full ^ cur
            atoms = []
            left = list(tie_k)
            while left:
                u = left[0]
                members = [y for y in tie_k if restricted_distance(u, y, outside) == 0]
                partners = [w for w in error_k if restricted_distance(u, w, outside) == 0]
                atoms.append((u, members, partners))
                left = [y for y in left if y not in members]
            out.append((tie_k, error_k, atoms))
        return out

    def metrics(self) -> tuple:
        """(a, b, delta) summed output by output"""
        correct = b = delta = Fraction(0)
        for y in self.words:
            column = [self.P[i, y] for i in self.indices]
            correct += max(column)
            for i in self.indices:
                best = self.best_other(i, y)
                if self.P[i, y] == best:
                    delta += self.P[i, y]
                elif self.P[i, y] < best:
                    b += self.P[i, y]
        return 1 - correct, b, delta



#==================================================
#suite checks
#==================================================
def _as_list(words) -> list:
    return [int(y) for y in words]


def check_oracle(inst: Instance, classification, families: list, reports: list) -> CheckReport:
    """The engine and the literal oracle agree set for set"""

    report = CheckReport("harness.oracle")
    oracle = Oracle(inst)
    name = lambda y: word_to_str(y, inst.n)
    for i in oracle.indices:
        report.checked += 1
        if _as_list(classification.ties[i - 1]) != oracle.ties(i):
            report.fail("T_i differs", i=i)
        if _as_list(classification.errors[i - 1]) != oracle.errors(i):
            report.fail("N_i differs", i=i)

    headers, rows = classification_rows(inst)
    for row in rows:
        y = int(row[0], 2)
        for i in oracle.indices:
            if row[1 + inst.M + inst.M + i - 1] != oracle.tie_indices(i, y):
                report.fail("I_i(y) differs", i=i, y=row[0])

    by_pair = {(r.i, r.j): r for r in reports}
    for family in families:
        i = family.i
        tie, remainder, error = oracle.families(i)
        for j in tie:
            report.checked += 1
            witness = {"i": i, "j": j}
            if _as_list(family.tie[j]) != tie[j]:
                report.fail("T_{j|i} differs", **witness)
            if _as_list(family.remainder[j]) != remainder[j]:
                report.fail("T~_{j|i} differs", **witness)
            if _as_list(family.error[j]) != error[j]:
                report.fail("N_{j|i} differs", **witness)
            pair = by_pair[i, j]
            literal = oracle.levels(i, j, tie[j], error[j])
            engine_atoms = {parts.k: parts for parts in pair.atoms}
            for k, (tie_k, error_k, atoms) in enumerate(literal):
                if _as_list(pair.levels.tie_levels[k]) != tie_k:
                    report.fail("T_{j|i}(k) differs", k=k, **witness)
                if _as_list(pair.levels.error_levels[k]) != error_k:
                    report.fail("N_{j|i}(k) differs", k=k, **witness)
                parts = engine_atoms.get(k)
                mine = [] if parts is None else [(a.u, list(a.tie_words), list(a.error_words)) for a in parts.atoms]
                if mine != atoms:
                    report.fail("atoms differ", k=k, **witness)

    a, b, delta = oracle.metrics()
    if (a, b, delta) != tuple(classification.metrics):
        report.fail(f"output by output metrics ({a}, {b}, {delta}) differ from {tuple(map(str, classification.metrics))}")
    return report


def check_regions(inst: Instance, classification) -> CheckReport:
    """T_i, N_i and the correct region are disjoint and cover all outputs"""

    report = CheckReport("classify.regions")
    total = 2**inst.n
    for i in range(1, inst.M + 1):
        report.checked += 1
        ties, errors = classification.ties[i - 1], classification.errors[i - 1]
        if np.intersect1d(ties, errors).size:
            report.fail("T_i and N_i intersect", i=i)
        if len(ties) + len(errors) + len(classification.correct_set(i)) != total:
            report.fail("regions do not cover the output space", i=i)
    return report


def check_reciprocity(inst: Instance, families: list) -> CheckReport:
    """h in I_i(y) implies i in I_h(y) with equal joint weights"""

    report = CheckReport("classify.reciprocity")
    for family in families:
        i = family.i
        for words in list(family.tie.values()) + list(family.remainder.values()):
            for y in _as_list(words):
                for h in tie_indices(inst, i, y):
                    report.checked += 1
                    if i not in tie_indices(inst, h, y) or joint_weight(inst, i, y) != joint_weight(inst, h, y):
                        report.fail("tie is not reciprocal", i=i, h=h, y=word_to_str(y, inst.n))
    return report


def check_metric_identities(inst: Instance, classification) -> CheckReport:
    """b_n and delta_n as sums of the per codeword masses"""

    report = CheckReport("classify.metric_identities", checked=1)
    a, b, delta = classification.metrics
    if sum(classification.error_mass) != b:
        report.fail("sum of P(c_i, N_i) differs from b_n")
    if sum(classification.tie_mass) != delta:
        report.fail("sum of P(c_i, T_i) differs from delta_n")
    return report


def check_probability_laws(inst: Instance) -> CheckReport:
    """Joint weights sum to one and scale by q per unit of distance"""

    report = CheckReport("model.probability_laws", checked=1)
    total = Fraction(0)
    for i in range(1, inst.M + 1):
        weights = [joint_weight(inst, i, _at_distance(inst, i, d)) for d in range(inst.n + 1)]
        total += sum(comb(inst.n, d, exact=True) * w for d, w in enumerate(weights))
        for d, (near, far) in enumerate(zip(weights, weights[1:])):
            if near != inst.q * far:
                report.fail("likelihood ratio of adjacent distances is not q", i=i, d=d)
    if total != 1:
        report.fail(f"joint weights sum to {total}")
    return report


def _at_distance(inst: Instance, i: int, d: int) -> int:
    return inst.codewords[i - 1] ^ ((1 << d) - 1)


def check_argmax_invariance(inst: Instance) -> CheckReport:
    """MAP decisions do not move when every prior weight is scaled by one rational"""

    report = CheckReport("classify.argmax_invariance", checked=1)
    scaled = build_instance(inst.words, [w * LaurentWeight.constant(3) for w in inst.weights], p=inst.p, limit=inst.limit)
    for y in range(2**inst.n):
        if map_decode(inst, y) != map_decode(scaled, y):
            report.fail("scaling the prior changed the decision", y=word_to_str(y, inst.n))
            break
    return report



#==================================================
#run_suite
#==================================================
@dataclass
class SuiteReport:
    """Every property of one instance

    Attributes
    ----------
    instance : `Instance`
        The instance \n
    checks : `list`
        One CheckReport per property, in a fixed order \n
    bounds : `BoundReport`
        The bound check with exact ratios \n
    chain : `ChainReport`
        The chain of bounds on delta_n / b_n \n
    """

    instance: Instance
    checks: list
    bounds: object
    chain: object

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def violations(self) -> list:
        return [v for c in self.checks for v in c.violations]

    @property
    def failed_properties(self) -> list:
        return sorted({v.property for v in self.violations})

    def reproducers(self) -> list:
        """Instance file plus failing property name, one per failed property"""
        echo = instance_to_json(self.instance)
        return [dict(echo, property=name) for name in self.failed_properties]

    def to_json(self) -> dict:
        return {"instance": instance_to_json(self.instance), "passed": self.passed,
                "bounds": self.bounds.to_json(), "chain": self.chain.to_json(),
                "checks": [c.to_json() for c in self.checks]}


def _merge(checks: list) -> list:
    merged = {}
    for check in checks:
        target = merged.setdefault(check.property, CheckReport(check.property))
        target.checked += check.checked
        target.violations.extend(check.violations)
    return list(merged.values())


def run_suite(inst: Instance, workers=1, oracle=None) -> SuiteReport:
    """Run every property check on one instance

    Notes
    -----
    Covers the bounds, the region and probability laws, the refinement,
    the partition propositions, the atom counts and ratios, the flip
    construction, the chain of bounds and, for n up to ORACLE_LIMIT,
    agreement with the literal oracle. Checks with nothing to examine
    pass vacuously and report checked = 0.

    Parameters
    ----------
    inst : `Instance`
        The instance, n within its enumeration limit \n
    workers : `int`
        Threads for the output scan. Default is 1 \n
    oracle : `bool`
        Force the oracle on or off. Default runs it for n <= ORACLE_LIMIT \n

    Returns
    -------
    SuiteReport
        Pass or fail per property \n

    Examples
    --------
    >>> mt.run_suite(mt.example_one()).passed
    True
    """

    inst.check_enumerable()
    oracle = inst.n <= ORACLE_LIMIT if oracle is None else oracle
    classification = classify(inst, workers=workers)
    bounds = verify_theorem(inst, m=classification.metrics)
    families = tie_partitions(inst)
    reports = partition_reports(inst, families=families)
    chain = bound_chain(inst, families=families, reports=reports, m=classification.metrics)

    checks = [CheckReport("classify.bounds", checked=1, violations=list(bounds.violations)),
              check_regions(inst, classification),
              check_metric_identities(inst, classification),
              check_reciprocity(inst, families),
              check_probability_laws(inst),
              check_prop1(inst, families=families, classification=classification),
              check_prop2(inst, families=families),
              check_uniform(inst, families=families)]
    checks += _merge([c for r in reports for c in r.checks])
    checks.append(chain.check)
    if oracle:
        checks.append(check_argmax_invariance(inst))
        checks.append(check_oracle(inst, classification, families, reports))
    else:
        LOGGER.info("n = %d above the oracle limit %d, oracle skipped", inst.n, ORACLE_LIMIT)

    report = SuiteReport(instance=inst, checks=checks, bounds=bounds, chain=chain)
    for name in report.failed_properties:
        LOGGER.warning("property %s failed", name)
    return report



#==================================================
#run_fuzz
#==================================================
@dataclass
class FuzzReport:
    """Summary of a fuzz corpus; only failing trials keep their reproducers"""

    config: FuzzConfig
    trials: int = 0
    uniform_trials: int = 0
    tie_free_trials: int = 0
    checked: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"seed": self.config.seed, "trials": self.trials, "uniform_trials": self.uniform_trials,
                "tie_free_trials": self.tie_free_trials, "passed": self.passed,
                "checked": dict(sorted(self.checked.items())), "failures": self.failures}


def run_fuzz(cfg: FuzzConfig, workers=1, dump=None) -> FuzzReport:
    """Run the suite over cfg.trials random instances

    Parameters
    ----------
    cfg : `FuzzConfig`
        The corpus settings \n
    workers : `int`
        Trials run concurrently. Default is 1 \n
    dump : `str`
        Directory for reproducer files '<trial>-<property>.json'. Default writes none \n

    Returns
    -------
    FuzzReport
        Counts per property and the failing trials, in trial order \n
    """

    def one(trial):
        inst = random_instance(cfg, trial)
        return trial, run_suite(inst)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = pool.map(one, range(cfg.trials))
            return _collect(cfg, results, dump)
    return _collect(cfg, map(one, range(cfg.trials)), dump)


def _collect(cfg: FuzzConfig, results, dump) -> FuzzReport:
    report = FuzzReport(config=cfg)
    if dump:
        os.makedirs(dump, exist_ok=True)
    for trial, suite in results:
        report.trials += 1
        report.uniform_trials += suite.instance.is_uniform
        report.tie_free_trials += suite.bounds.tie_free
        for check in suite.checks:
            report.checked[check.property] = report.checked.get(check.property, 0) + check.checked
        for reproducer in suite.reproducers():
            report.failures.append(dict(reproducer, trial=trial))
            if dump:
                path = os.path.join(dump, f"{trial}-{reproducer['property']}.json")
                with open(path, "w") as fh:
                    json.dump(reproducer, fh, indent=2)
                    fh.write("\n")
                LOGGER.warning("trial %d failed %s, reproducer written to %s", trial, reproducer["property"], path)
        if report.trials % 100 == 0:
            LOGGER.info("%d of %d trials done, %d failure(s)", report.trials, cfg.trials, len(report.failures))
    return report
