#!usr/bin/env
#Problem instances and the primitive quantities of the analysis.
#An instance is a binary block code of M distinct n-bit codewords, a positive
#prior over the codewords and a binary symmetric channel with rational
#crossover p < 1/2. Everything built on top only needs the restricted Hamming
#distance and the joint weight P(c_i, y) = prior_i * p^n * q^(n - d(c_i, y)).
#
#  Typical usage example:
#  Build a four codeword instance with priors expressed in q
#  >>> inst = mt.build_instance(["0000", "0101", "0110", "0111"], ["q^2", "1", "1", "q^-2"], p="1/3")
#  >>> inst.prior
#  (Fraction(16, 25), Fraction(4, 25), Fraction(4, 25), Fraction(1, 25))
#  >>> mt.joint_weight(inst, 1, "0111")
#  Fraction(32, 2025)
#


import json
import logging
import numbers
from dataclasses import dataclass, field
from fractions import Fraction
from map_ties.extra import InstanceError, EnumerationLimitError, str_to_word, word_to_str
from map_ties.weights.weights import as_weight, eval_weight, format_weight, parse_rational


LOGGER = logging.getLogger(__name__)

ENUMERATION_LIMIT = 24



#==================================================
#Instance
#==================================================
@dataclass(frozen=True)
class Instance:
    """A validated code, prior and channel

    Attributes
    ----------
    n : `int`
        The blocklength \n
    codewords : `tuple`
        The codewords c_1..c_M as integers, position 1 most significant \n
    weights : `tuple`
        The prior weights as given, one LaurentWeight per codeword \n
    prior : `tuple`
        The normalized prior, exact Fractions summing to one \n
    p : `Fraction`
        The crossover probability, 0 < p < 1/2 \n
    q : `Fraction`
        The likelihood ratio (1-p)/p, always above one \n
    limit : `int`
        Largest n accepted by the exhaustive operations \n
    """

    n: int
    codewords: tuple
    weights: tuple
    prior: tuple
    p: Fraction
    q: Fraction
    limit: int = field(default=ENUMERATION_LIMIT, compare=False)

    @property
    def M(self) -> int:
        return len(self.codewords)

    @property
    def words(self) -> list:
        """Codewords as bit strings"""
        return [word_to_str(c, self.n) for c in self.codewords]

    @property
    def is_uniform(self) -> bool:
        return len(set(self.prior)) == 1

    def codeword(self, i: int) -> int:
        check_index(self, i)
        return self.codewords[i - 1]

    def check_enumerable(self):
        """Raise EnumerationLimitError when 2^n outputs are too many to visit"""
        if self.n > self.limit:
            raise EnumerationLimitError(
                f"n = {self.n} exceeds the enumeration limit {self.limit}; raise it with --limit or use montecarlo")

    def with_limit(self, limit: int) -> "Instance":
        return Instance(self.n, self.codewords, self.weights, self.prior, self.p, self.q, limit)


def check_index(inst: Instance, i: int):
    if isinstance(i, bool) or not isinstance(i, numbers.Integral) or not 1 <= i <= inst.M:
        raise IndexError(f"codeword index {i!r} outside [1, {inst.M}]")



#==================================================
#build_instance
#==================================================
def build_instance(codewords: list, weights=None, p=Fraction(1, 4), limit=ENUMERATION_LIMIT) -> Instance:
    """Returns a validated instance

    Notes
    -----
    Weights are evaluated at q = (1-p)/p and normalized by their sum. They
    may be weight expressions, rationals or LaurentWeight objects. Leaving
    them out gives the uniform prior. The enumeration limit is only
    enforced by the exhaustive operations, so an instance above it can
    still be sampled.

    Parameters
    ----------
    codewords : `list`
        Bit strings of a common length n, leftmost character is position 1 \n
    weights : `list`
        One prior weight per codeword. Default is uniform \n
    p : `Fraction`
        The crossover probability as a rational or 'a/b' text. Default is 1/4 \n
    limit : `int`
        The enumeration limit carried by the instance. Default is 24 \n

    Returns
    -------
    Instance
        The validated instance \n

    Raises
    ------
    InstanceError
        Naming the violated invariant \n

    Examples
    --------
    >>> inst = mt.build_instance(["00", "11"], p="1/4")
    >>> inst.prior, inst.q
    ((Fraction(1, 2), Fraction(1, 2)), Fraction(3, 1))
    """

    codewords = list(codewords)
    if len(codewords) < 2:
        raise InstanceError("an instance needs at least two codewords")
    if any(not isinstance(c, str) for c in codewords):
        raise InstanceError("codewords must be given as bit strings")
    n = len(codewords[0])
    if n < 1 or any(len(c) != n for c in codewords):
        raise InstanceError("codewords must share one length n >= 1")
    encoded = tuple(str_to_word(c) for c in codewords)
    seen = {}
    for index, word in enumerate(encoded, start=1):
        if word in seen:
            raise InstanceError(f"duplicate codeword {codewords[index - 1]} at indices {seen[word]} and {index}")
        seen[word] = index

    if weights is None:
        weights = [1] * len(codewords)
    weights = list(weights)
    if len(weights) != len(codewords):
        raise InstanceError(f"{len(weights)} prior weights given for {len(codewords)} codewords")
    weights = tuple(as_weight(w, nonzero=True) for w in weights)

    p = parse_rational(p)
    if not 0 < p < Fraction(1, 2):
        raise InstanceError(f"p = {p} must lie in (0, 1/2)")
    q = (1 - p) / p

    values = [eval_weight(w, q) for w in weights]
    for index, value in enumerate(values, start=1):
        if value <= 0:
            raise InstanceError(f"prior weight of codeword {index} must be positive, evaluates to {value} at q = {q}")
    total = sum(values)
    prior = tuple(value / total for value in values)

    LOGGER.debug("built instance n=%d M=%d p=%s", n, len(encoded), p)
    return Instance(n=n, codewords=encoded, weights=weights, prior=prior, p=p, q=q, limit=int(limit))



#==================================================
#restricted_distance
#==================================================
def restricted_distance(x, y, S=None) -> int:
    """Returns the number of positions of S where x and y differ

    Notes
    -----
    Words and index sets share one encoding: an integer whose bit
    1 << (n-k) stands for position k. S = None means every position and
    S = 0 is the empty set, which always gives 0.

    Parameters
    ----------
    x : `int`
        First word \n
    y : `int`
        Second word \n
    S : `int`
        Index set as a bit mask. Default is all positions \n

    Returns
    -------
    int
        d(x, y | S) \n

    Examples
    --------
    >>> mt.restricted_distance(0b0101, 0b0111)
    1
    >>> mt.restricted_distance(0b00000, 0b01111, S=0b01111)
    4
    """

    diff = int(x) ^ int(y)
    if S is not None:
        diff &= int(S)
    return bin(diff).count("1")



#==================================================
#joint_weight
#==================================================
def joint_weight(inst: Instance, i: int, y) -> Fraction:
    """Returns P(c_i, y) = prior_i * p^n * q^(n - d(c_i, y)) exactly

    Parameters
    ----------
    inst : `Instance`
        The instance \n
    i : `int`
        1-based codeword index \n
    y : `int`
        Output word, as an integer or a bit string \n

    Returns
    -------
    Fraction
        The joint probability of sending c_i and receiving y \n

    Examples
    --------
    >>> mt.joint_weight(mt.repetition_two(), 1, "11")
    Fraction(1, 32)
    """

    check_index(inst, i)
    y = as_word(inst, y)
    d = restricted_distance(inst.codewords[i - 1], y)
    return inst.prior[i - 1] * inst.p**inst.n * inst.q**(inst.n - d)


def weight_table(inst: Instance) -> list:
    """Joint weights by codeword and distance, W[i-1][d] = P(c_i, y) for d(c_i, y) = d"""

    base = inst.p**inst.n
    return [[prior * base * inst.q**(inst.n - d) for d in range(inst.n + 1)] for prior in inst.prior]


def as_word(inst: Instance, y) -> int:
    """Integer form of an output word given as an integer or a bit string"""

    if isinstance(y, str):
        if len(y) != inst.n:
            raise InstanceError(f"word {y!r} does not have length n = {inst.n}")
        return str_to_word(y)
    y = int(y)
    if not 0 <= y < 1 << inst.n:
        raise InstanceError(f"word {y} is not an {inst.n}-bit word")
    return y



#==================================================
#instance files
#==================================================
def instance_to_json(inst: Instance) -> dict:
    """The instance file form: n, codewords, prior_weights and p"""

    return {
        "n": inst.n,
        "codewords": inst.words,
        "prior_weights": [format_weight(w) for w in inst.weights],
        "p": str(inst.p),
    }


def instance_from_json(data: dict, limit=ENUMERATION_LIMIT) -> Instance:
    """Build an instance from the parsed instance file form"""

    if not isinstance(data, dict):
        raise InstanceError("an instance file holds a JSON object")
    missing = [key for key in ("codewords", "p") if key not in data]
    if missing:
        raise InstanceError(f"instance file lacks {', '.join(missing)}")
    codewords = data["codewords"]
    if not isinstance(codewords, list):
        raise InstanceError("codewords must be a list of bit strings")
    inst = build_instance(codewords, data.get("prior_weights"), data["p"], limit=limit)
    if "n" in data and data["n"] != inst.n:
        raise InstanceError(f"n = {data['n']} does not match codeword length {inst.n}")
    return inst


def load_instance(path, limit=ENUMERATION_LIMIT) -> Instance:
    """Read an instance file"""

    with open(path, "r") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as err:
            raise InstanceError(f"{path} is not valid JSON: {err}") from err
    LOGGER.info("loaded instance from %s", path)
    return instance_from_json(data, limit=limit)


def dump_instance(inst: Instance, path):
    """Write an instance file"""

    with open(path, "w") as fh:
        json.dump(instance_to_json(inst), fh, indent=2)
        fh.write("\n")
