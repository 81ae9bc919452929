#!usr/bin/env
#Partitions of the tie regions and the matching subsets of the error regions.
#For a codeword index i, the tie region T_i is split by the tying codeword j
#into T_{j|i} (y still differs from c_j somewhere c_i and c_j differ) and the
#remainder family, and N_i holds the disjoint sets N_{j|i} of outputs where c_j
#beats c_i by exactly a factor q^2. For a pair (i, j), the differ set S_{i,j}
#is refined by the other codewords, T_{j|i} is cut into levels k and each level
#into atoms sharing the bits of a representative outside a window of S_{i,j}.
#Every construction comes with an executable check of its defining property.
#
#Every codeword other than c_1 is handled by translating the code by c_i: all
#words are XORed with c_i, which keeps every distance and joint weight, so the
#construction for the all-zero codeword applies. Codeword indices keep their
#original order.
#
#  Typical usage example:
#  >>> part = mt.refine(mt.refinement_example(), 1, 3)
#  >>> [mt.mask_to_indices(part.cell(m), 5) for m in range(1, 5)]
#  [[4], [], [3], [2, 5]]
#


import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
import numpy as np
from scipy.special import comb
from map_ties.extra import CheckReport, MapTiesError, Violation, mask_to_indices, popcount, word_to_str
from map_ties.model.model import Instance, check_index, joint_weight, restricted_distance
from map_ties.classify.classify import (CHUNK_WORDS, classify, metrics, rank_table, regions, score_words,
    tie_indices, word_blocks)


LOGGER = logging.getLogger(__name__)



#==================================================
#differ_set
#==================================================
@dataclass(frozen=True)
class DifferSet:
    """The positions where c_i and c_j differ

    Attributes
    ----------
    i : `int`
        First codeword index \n
    j : `int`
        Second codeword index \n
    n : `int`
        The blocklength \n
    mask : `int`
        S_{i,j} as a bit mask \n
    """

    i: int
    j: int
    n: int
    mask: int

    @property
    def size(self) -> int:
        return bin(self.mask).count("1")

    @property
    def indices(self) -> list:
        return mask_to_indices(self.mask, self.n)


def _check_pair(inst: Instance, i: int, j: int):
    check_index(inst, i)
    check_index(inst, j)
    if i == j:
        raise MapTiesError(f"a pair of distinct codeword indices is needed, got i = j = {i}")


def differ_set(inst: Instance, i: int, j: int) -> DifferSet:
    """Returns S_{i,j}, the positions where c_i and c_j differ

    >>> s = mt.differ_set(mt.refinement_example(), 1, 3)
    >>> s.indices, s.size
    ([2, 3, 4, 5], 4)
    """

    _check_pair(inst, i, j)
    return DifferSet(i=i, j=j, n=inst.n, mask=inst.codewords[i - 1] ^ inst.codewords[j - 1])



#==================================================
#refine
#==================================================
@dataclass(frozen=True)
class Window:
    """The index window S^(eta_k - 1) inside S^(eta_k) used for level k"""

    k: int
    eta: int
    prev_mask: int
    mask: int
    prev_size: int
    size: int

    @property
    def cell(self) -> int:
        return self.mask ^ self.prev_mask


@dataclass(frozen=True)
class RefinedPartition:
    """The cells of S_{i,j} cut by membership in the other differ sets

    Notes
    -----
    Cell m collects the positions of S_{i,j} that lie in S_{i,r} exactly
    for the r with lambda_r = 1, where m - 1 = sum of lambda_r * 2^pos(r)
    and pos numbers [M] without i and j in ascending order. Only nonempty
    cells are stored; the others keep their index and are empty.

    Attributes
    ----------
    differ : `DifferSet`
        S_{i,j} \n
    others : `tuple`
        Indices r other than i and j, r at bit position others.index(r) \n
    cell_count : `int`
        2^(M-2) \n
    cells : `dict`
        Nonempty cells as bit masks keyed by their index m, ascending \n
    """

    differ: DifferSet
    others: tuple
    cell_count: int
    cells: dict

    @property
    def i(self) -> int:
        return self.differ.i

    @property
    def j(self) -> int:
        return self.differ.j

    @property
    def length(self) -> int:
        return self.differ.size

    def _check_m(self, m: int, lowest: int):
        if not lowest <= m <= self.cell_count:
            raise IndexError(f"cell index {m} outside [{lowest}, {self.cell_count}]")

    def cell(self, m: int) -> int:
        self._check_m(m, 1)
        return self.cells.get(m, 0)

    def pattern(self, m: int) -> dict:
        """lambda_r for every other codeword r of cell m"""
        self._check_m(m, 1)
        return {r: ((m - 1) >> pos) & 1 for pos, r in enumerate(self.others)}

    def cumulative(self, m: int) -> int:
        """The union of cells 1..m as a bit mask, 0 for m = 0"""
        self._check_m(m, 0)
        mask = 0
        for index, cell in self.cells.items():
            if index <= m:
                mask |= cell
        return mask

    def cumulative_size(self, m: int) -> int:
        return bin(self.cumulative(m)).count("1")

    def eta(self, k: int) -> int:
        """The cell index eta_k of level k

        For k < l - 1 it is the least m whose union exceeds k + 1 positions,
        for k = l - 1 the least m whose union is all of S_{i,j}.
        """
        if not 0 <= k < self.length:
            raise IndexError(f"level {k} outside [0, {self.length - 1}]")
        size = 0
        for m, cell in self.cells.items():
            size += bin(cell).count("1")
            if (k < self.length - 1 and size > k + 1) or size == self.length:
                return m
        raise AssertionError("cells do not cover the differ set")

    @property
    def etas(self) -> tuple:
        return tuple(self.eta(k) for k in range(self.length))

    def window(self, k: int) -> Window:
        m = self.eta(k)
        prev_mask, mask = self.cumulative(m - 1), self.cumulative(m)
        return Window(k=k, eta=m, prev_mask=prev_mask, mask=mask,
                      prev_size=bin(prev_mask).count("1"), size=bin(mask).count("1"))


def refine(inst: Instance, i: int, j: int) -> RefinedPartition:
    """Returns the refinement of S_{i,j} by the other M - 2 differ sets

    Parameters
    ----------
    inst : `Instance`
        The instance \n
    i : `int`
        Index of the reference codeword \n
    j : `int`
        Index of the tying codeword, j != i \n

    Returns
    -------
    RefinedPartition
        The 2^(M-2) cells, their running unions and the level map eta \n

    Examples
    --------
    >>> part = mt.refine(mt.example_one(), 2, 1)
    >>> [mt.mask_to_indices(part.cell(m), 4) for m in range(1, 5)], part.etas
    ([[2], [4], [], []], (2, 2))
    """

    differ = differ_set(inst, i, j)
    others = tuple(r for r in range(1, inst.M + 1) if r not in (i, j))
    ci = inst.codewords[i - 1]
    support = [ci ^ inst.codewords[r - 1] for r in others]
    cells = {}
    for position in differ.indices:
        bit = 1 << (inst.n - position)
        m = 1 + sum(1 << pos for pos, s in enumerate(support) if s & bit)
        cells[m] = cells.get(m, 0) | bit
    return RefinedPartition(differ=differ, others=others, cell_count=1 << len(others),
                            cells=dict(sorted(cells.items())))



#==================================================
#tie_partition
#==================================================
@dataclass(frozen=True)
class TiePartition:
    """The families T_{j|i}, remainder T~_{j|i} and N_{j|i} for one i

    Attributes
    ----------
    instance : `Instance`
        The instance \n
    i : `int`
        The reference codeword index \n
    tie : `dict`
        j -> sorted word array of T_{j|i} \n
    remainder : `dict`
        j -> sorted word array of T~_{j|i} \n
    error : `dict`
        j -> sorted word array of N_{j|i} \n
    """

    instance: Instance
    i: int
    tie: dict
    remainder: dict
    error: dict

    def tie_family(self, j: int) -> list:
        return [int(y) for y in self.tie[j]]

    def remainder_family(self, j: int) -> list:
        return [int(y) for y in self.remainder[j]]

    def error_family(self, j: int) -> list:
        return [int(y) for y in self.error[j]]

    def mass(self, family: dict, j: int) -> Fraction:
        return word_mass(self.instance, self.i, family[j])


def word_mass(inst: Instance, i: int, words) -> Fraction:
    """P(c_i, A) for a set of words A"""

    words = np.asarray(words, dtype=np.uint64)
    if not len(words):
        return Fraction(0)
    counts = np.bincount(popcount(words ^ np.uint64(inst.codewords[i - 1])), minlength=inst.n + 1)
    W = rank_table(inst).weights[i - 1]
    return sum((int(c) * W[d] for d, c in enumerate(counts) if c), Fraction(0))


def _family_block(inst: Instance, words: np.ndarray, indices: list) -> dict:
    M = inst.M
    table = rank_table(inst)
    codewords = np.array(inst.codewords, dtype=np.uint64)
    dist, score = score_words(inst, words)
    tie, error = regions(score)
    top = score.max(axis=0)
    out = {}
    for i in indices:
        row = i - 1
        other = (np.arange(M) != row)[:, None]
        at_top = (score == top) & other
        support = codewords ^ codewords[row]
        sizes = popcount(support)
        translated = words ^ codewords[row]
        close = popcount(translated[None, :] & support[:, None]) < sizes[:, None]
        candidate = at_top & close
        has_candidate = candidate.any(axis=0)
        j_tie = np.argmax(candidate, axis=0)
        j_rest = np.argmax(at_top, axis=0)
        in_tie = tie[row] & has_candidate
        in_rest = tie[row] & ~has_candidate

        target = table.rank_q2[row, dist[row]]
        match = (score == target[None, :]) & other & (target >= 0)[None, :]
        j_error = np.argmax(match, axis=0)
        in_error = error[row] & match.any(axis=0)

        out[i] = {
            "tie": {j: words[in_tie & (j_tie == j - 1)] for j in range(1, M + 1) if j != i},
            "remainder": {j: words[in_rest & (j_rest == j - 1)] for j in range(1, M + 1) if j != i},
            "error": {j: words[in_error & (j_error == j - 1)] for j in range(1, M + 1) if j != i},
        }
    return out


def tie_partitions(inst: Instance, indices=None, chunk=CHUNK_WORDS) -> list:
    """Returns the TiePartition of every requested codeword index, in one scan"""

    inst.check_enumerable()
    indices = list(range(1, inst.M + 1)) if indices is None else list(indices)
    for i in indices:
        check_index(inst, i)
    blocks = [_family_block(inst, words, indices) for words in word_blocks(inst.n, chunk)]
    families = []
    for i in indices:
        merged = {kind: {j: np.concatenate([b[i][kind][j] for b in blocks])
                         for j in range(1, inst.M + 1) if j != i}
                  for kind in ("tie", "remainder", "error")}
        families.append(TiePartition(instance=inst, i=i, **merged))
    LOGGER.debug("built tie families for %d codeword(s)", len(indices))
    return families


def tie_partition(inst: Instance, i: int) -> TiePartition:
    """Returns the families T_{j|i}, T~_{j|i} and N_{j|i} over j != i

    Notes
    -----
    y in T_i joins T_{j|i} for the least j tying c_i on y such that y still
    differs from c_j somewhere in S_{i,j}; when every tying codeword agrees
    with y on its whole differ set, y joins T~_{j|i} for the least tying j.
    y in N_i joins N_{j|i} when P(c_j, y) = q^2 P(c_i, y) and no r < j other
    than i has P(c_r, y) = P(c_j, y).

    Parameters
    ----------
    inst : `Instance`
        The instance \n
    i : `int`
        The reference codeword index \n

    Returns
    -------
    TiePartition
        The three families of i \n

    Examples
    --------
    >>> fam = mt.tie_partition(mt.example_one(), 1)
    >>> [mt.word_to_str(y, 4) for y in fam.remainder_family(3)]
    ['0110', '1110']
    """

    return tie_partitions(inst, [i])[0]



#==================================================
#level_partition
#==================================================
@dataclass(frozen=True)
class LevelPartition:
    """The levels T_{j|i}(k) and N_{j|i}(k), k = 0 .. l_{i,j} - 1"""

    instance: Instance
    refinement: RefinedPartition
    windows: tuple
    tie_levels: tuple
    error_levels: tuple

    @property
    def i(self) -> int:
        return self.refinement.i

    @property
    def j(self) -> int:
        return self.refinement.j

    def tie_level(self, k: int) -> list:
        return [int(y) for y in self.tie_levels[k]]

    def error_level(self, k: int) -> list:
        return [int(y) for y in self.error_levels[k]]


def _window_counts(inst: Instance, i: int, words: np.ndarray, window: Window):
    translated = words ^ np.uint64(inst.codewords[i - 1])
    return popcount(translated & np.uint64(window.prev_mask)), popcount(translated & np.uint64(window.mask))


def level_partition(inst: Instance, i: int, j: int, family=None) -> LevelPartition:
    """Returns the levels of T_{j|i} and N_{j|i}

    Notes
    -----
    With a = d(c_i, y | S^(eta_k - 1)) and b = d(c_i, y | S^(eta_k)), a word
    of T_{j|i} is in level k when a >= l^(eta_k - 1) - 1 and b = k, and a
    word of N_{j|i} is in level k when a = l^(eta_k - 1) and b = k + 1.

    Parameters
    ----------
    inst : `Instance`
        The instance \n
    i : `int`
        Reference codeword index \n
    j : `int`
        Tying codeword index \n
    family : `TiePartition`
        The families of i if already built. Default builds them \n

    Returns
    -------
    LevelPartition
        Word arrays per level, empty when T_{j|i} is \n
    """

    part = refine(inst, i, j)
    family = family if family is not None else tie_partition(inst, i)
    tie_words, error_words = family.tie[j], family.error[j]
    windows, tie_levels, error_levels = [], [], []
    for k in range(part.length):
        window = part.window(k)
        a, b = _window_counts(inst, i, tie_words, window)
        tie_levels.append(tie_words[(a >= window.prev_size - 1) & (b == k)])
        a, b = _window_counts(inst, i, error_words, window)
        error_levels.append(error_words[(a == window.prev_size) & (b == k + 1)])
        windows.append(window)
    return LevelPartition(instance=inst, refinement=part, windows=tuple(windows),
                          tie_levels=tuple(tie_levels), error_levels=tuple(error_levels))



#==================================================
#atom_partition
#==================================================
@dataclass(frozen=True)
class Atom:
    """A representative u with T_{j|i}(u;k) and N_{j|i}(u;k)"""

    u: int
    tie_words: tuple
    error_words: tuple
    tie_mass: Fraction
    error_mass: Fraction

    @property
    def ratio(self):
        return self.tie_mass / self.error_mass if self.error_mass else None


@dataclass(frozen=True)
class AtomPartition:
    """The atoms of one level"""

    instance: Instance
    i: int
    j: int
    window: Window
    atoms: tuple

    @property
    def k(self) -> int:
        return self.window.k

    @property
    def representatives(self) -> list:
        return [atom.u for atom in self.atoms]


def atom_partition(inst: Instance, i: int, j: int, k: int, levels=None) -> AtomPartition:
    """Returns the representatives of level k with their atoms

    Notes
    -----
    Words of T_{j|i}(k) are swept in ascending order; the first word not yet
    assigned becomes a representative u and takes every level member equal
    to u outside S^(eta_k). N_{j|i}(u;k) holds the members of N_{j|i}(k)
    equal to u outside S^(eta_k).

    Parameters
    ----------
    inst : `Instance`
        The instance \n
    i : `int`
        Reference codeword index \n
    j : `int`
        Tying codeword index \n
    k : `int`
        The level, 0 <= k < l_{i,j} \n
    levels : `LevelPartition`
        The levels of (i, j) if already built. Default builds them \n

    Returns
    -------
    AtomPartition
        Atoms in ascending order of their representative \n

    Examples
    --------
    >>> atoms = mt.atom_partition(mt.example_one(), 2, 1, 0)
    >>> [mt.word_to_str(u, 4) for u in atoms.representatives]
    ['0101', '0111', '1101', '1111']
    """

    levels = levels if levels is not None else level_partition(inst, i, j)
    if not 0 <= k < len(levels.windows):
        raise IndexError(f"level {k} outside [0, {len(levels.windows) - 1}]")
    window = levels.windows[k]
    outside = np.uint64(((1 << inst.n) - 1) ^ window.mask)
    tie_words, error_words = levels.tie_levels[k], levels.error_levels[k]
    tie_keys, error_keys = tie_words & outside, error_words & outside
    _, first = np.unique(tie_keys, return_index=True)
    atoms = []
    for start in np.sort(first):
        key = tie_keys[start]
        members, partners = tie_words[tie_keys == key], error_words[error_keys == key]
        atoms.append(Atom(u=int(tie_words[start]),
                          tie_words=tuple(int(y) for y in members),
                          error_words=tuple(int(w) for w in partners),
                          tie_mass=word_mass(inst, i, members),
                          error_mass=word_mass(inst, i, partners)))
    return AtomPartition(instance=inst, i=i, j=j, window=window, atoms=tuple(atoms))



#==================================================
#structural checks
#==================================================
def _words(inst: Instance, words) -> list:
    return [word_to_str(int(y), inst.n) for y in words]


def check_prop1(inst: Instance, families=None, classification=None) -> CheckReport:
    """The T and T~ families partition T_i and the N families are disjoint in N_i"""

    report = CheckReport("partitions.prop1")
    classification = classification if classification is not None else classify(inst)
    families = families if families is not None else tie_partitions(inst)
    for family in families:
        i = family.i
        report.checked += 1
        pieces = [family.tie[j] for j in family.tie] + [family.remainder[j] for j in family.remainder]
        joined = np.sort(np.concatenate(pieces))
        if len(np.unique(joined)) != len(joined):
            report.fail("T and T~ families overlap", i=i)
        if not np.array_equal(joined, np.sort(classification.ties[i - 1])):
            report.fail("T and T~ families do not cover T_i", i=i)
        errors = np.concatenate([family.error[j] for j in family.error])
        if len(np.unique(errors)) != len(errors):
            report.fail("N families overlap", i=i)
        if not np.isin(errors, classification.errors[i - 1]).all():
            report.fail("N families leave N_i", i=i)
    return report


def check_refinement(inst: Instance, part: RefinedPartition) -> CheckReport:
    """Cells are disjoint, cover S_{i,j}, agree with every lambda_r and give valid eta_k"""

    report = CheckReport("partitions.refinement")
    i, j = part.i, part.j
    witness = {"i": i, "j": j}
    report.checked += 1
    union = 0
    for m, cell in part.cells.items():
        if cell & union:
            report.fail("cells overlap", m=m, **witness)
        union |= cell
        size = bin(cell).count("1")
        for r, lam in part.pattern(m).items():
            d = restricted_distance(inst.codewords[i - 1], inst.codewords[r - 1], cell)
            if d != (size if lam else 0):
                report.fail("cell distance disagrees with lambda_r", m=m, r=r, **witness)
    if union != part.differ.mask:
        report.fail("cells do not cover S_{i,j}", **witness)
    sizes = [0] + [part.cumulative_size(m) for m in part.cells] + [part.cumulative_size(part.cell_count)]
    if sizes[-1] != part.length or sizes != sorted(sizes):
        report.fail("running union sizes are not monotone from 0 to l_{i,j}", **witness)
    for k in range(part.length):
        w = part.window(k)
        if k < part.length - 1 and not w.prev_size - 1 <= k < w.size - 1:
            report.fail("eta_k misses l^(eta_k - 1) - 1 <= k < l^(eta_k) - 1", k=k, **witness)
        if k == part.length - 1 and w.size != part.length:
            report.fail("eta_k of the last level does not reach l_{i,j}", k=k, **witness)
    return report


def check_prop3(inst: Instance, levels: LevelPartition, family: TiePartition) -> CheckReport:
    """Levels partition T_{j|i}; N levels are disjoint subsets of N_{j|i}"""

    report = CheckReport("partitions.prop3")
    i, j = levels.i, levels.j
    if not len(family.tie[j]):
        return report
    report.checked += 1
    joined = np.sort(np.concatenate(levels.tie_levels))
    if len(np.unique(joined)) != len(joined) or not np.array_equal(joined, np.sort(family.tie[j])):
        report.fail("levels do not partition T_{j|i}", i=i, j=j)
    errors = np.concatenate(levels.error_levels)
    if len(np.unique(errors)) != len(errors) or not np.isin(errors, family.error[j]).all():
        report.fail("N levels are not disjoint subsets of N_{j|i}", i=i, j=j)
    return report


def check_prop4(inst: Instance, levels: LevelPartition, atom_parts: list) -> tuple:
    """Atoms partition their level, N atoms are nonempty, disjoint and of binomial size

    Returns the atom partition report and the N atom cardinality report.
    """

    report = CheckReport("partitions.prop4")
    sizes = CheckReport("partitions.n_atom_size")
    i, j = levels.i, levels.j
    for parts in atom_parts:
        k, window = parts.k, parts.window
        level = levels.tie_levels[k]
        if not len(level):
            continue
        report.checked += 1
        covered = sorted(y for atom in parts.atoms for y in atom.tie_words)
        if covered != sorted(int(y) for y in level):
            report.fail("atoms do not partition T_{j|i}(k)", i=i, j=j, k=k)
        partners = [w for atom in parts.atoms for w in atom.error_words]
        if len(set(partners)) != len(partners) or not set(partners) <= {int(w) for w in levels.error_levels[k]}:
            report.fail("N atoms are not disjoint subsets of N_{j|i}(k)", i=i, j=j, k=k)
        expected = int(comb(window.size - window.prev_size, k + 1 - window.prev_size, exact=True))
        for atom in parts.atoms:
            sizes.checked += 1
            if not atom.error_words:
                report.fail("empty N atom", i=i, j=j, k=k, u=word_to_str(atom.u, inst.n))
            if len(atom.error_words) != expected:
                sizes.fail(f"|N(u;k)| = {len(atom.error_words)}, expected {expected}",
                           i=i, j=j, k=k, u=word_to_str(atom.u, inst.n))
    return report, sizes


def _prop9_atoms(inst: Instance, parts: AtomPartition, report: CheckReport):
    for atom in parts.atoms:
        report.checked += 1
        witness = {"i": parts.i, "j": parts.j, "k": parts.k, "u": word_to_str(atom.u, inst.n)}
        if not atom.error_mass:
            report.fail("N atom carries no probability", **witness)
            continue
        ratio = Fraction(len(atom.tie_words), len(atom.error_words))
        if atom.ratio != inst.q * ratio:
            report.fail(f"atom ratio {atom.ratio} differs from q|T|/|N| = {inst.q * ratio}", **witness)
        if ratio > inst.n:
            report.fail(f"|T|/|N| = {ratio} exceeds n", **witness)
        if atom.ratio > inst.q * inst.n:
            report.fail(f"atom ratio {atom.ratio} exceeds qn", **witness)


def check_prop9(inst: Instance, reports=None) -> CheckReport:
    """Every atom ratio equals q|T(u;k)|/|N(u;k)| and stays below qn

    >>> mt.check_prop9(mt.example_one()).passed
    True
    """

    report = CheckReport("partitions.prop9")
    reports = reports if reports is not None else partition_reports(inst, run_checks=False)
    for pair in reports:
        for parts in pair.atoms:
            _prop9_atoms(inst, parts, report)
    return report



#==================================================
#check_appendixB
#==================================================
def check_appendixB(inst: Instance, i: int, j: int, k: int, u, atoms=None) -> CheckReport:
    """Every word meeting the window conditions of u is in N_{j|i}, and the flip of u is too

    Notes
    -----
    The candidates w agree with u outside S^(eta_k), have every position of
    S^(eta_k - 1) flipped from c_i and exactly k + 1 positions of the window
    S^(eta_k) flipped. Each must be in N_i with P(c_j, w) = q^2 P(c_i, w)
    and P(c_r, w) != P(c_j, w) for r < j other than i, and together they
    must form N_{j|i}(u;k). The word v is u with one position flipped: the
    first position of the new cell agreeing with c_i when u already differs
    from c_i on all of S^(eta_k - 1), otherwise the single position of
    S^(eta_k - 1) where u agrees with c_i. v must be in N_{j|i}(u;k) with
    P(c_i, v) = P(c_i, u)/q and P(c_j, v) = q P(c_j, u).

    Parameters
    ----------
    inst : `Instance`
        The instance \n
    i : `int`
        Reference codeword index \n
    j : `int`
        Tying codeword index \n
    k : `int`
        The level of u \n
    u : `int`
        A word of T_{j|i}(k), integer or bit string \n
    atoms : `AtomPartition`
        The atoms of level k if already built. Default builds them \n

    Returns
    -------
    CheckReport
        Violations carry the offending w or v \n
    """

    report = CheckReport("partitions.appendixB")
    parts = atoms if atoms is not None else atom_partition(inst, i, j, k)
    u = int(u, 2) if isinstance(u, str) else int(u)
    window = parts.window
    atom = next((a for a in parts.atoms if u in a.tie_words), None)
    base = {"i": i, "j": j, "k": k, "u": word_to_str(u, inst.n)}
    if atom is None:
        report.fail("u is not in T_{j|i}(k)", **base)
        return report

    ci, cj = inst.codewords[i - 1], inst.codewords[j - 1]
    full = (1 << inst.n) - 1
    translated = u ^ ci
    fixed = (translated & (full ^ window.mask)) | window.prev_mask
    cell_bits = [1 << (inst.n - p) for p in mask_to_indices(window.cell, inst.n)]
    need = k + 1 - window.prev_size
    candidates = []
    if 0 <= need <= len(cell_bits):
        for chosen in itertools.combinations(cell_bits, need):
            candidates.append(ci ^ fixed ^ sum(chosen))
    candidates.sort()

    for w in candidates:
        report.checked += 1
        values = [joint_weight(inst, r, w) for r in range(1, inst.M + 1)]
        witness = dict(base, w=word_to_str(w, inst.n))
        if not values[i - 1] < max(v for r, v in enumerate(values, 1) if r != i):
            report.fail("candidate w is not in N_i", **witness)
        if values[j - 1] != inst.q**2 * values[i - 1]:
            report.fail("candidate w misses P(c_j, w) = q^2 P(c_i, w)", **witness)
        if any(values[r - 1] == values[j - 1] for r in range(1, j) if r != i):
            report.fail("candidate w ties an earlier codeword at P(c_j, w)", **witness)
    if candidates != sorted(atom.error_words):
        report.fail("candidates differ from N_{j|i}(u;k)", **base)

    report.checked += 1
    a = bin(translated & window.prev_mask).count("1")
    if a == window.prev_size:
        zeros = [bit for bit in cell_bits if not translated & bit]
        if not zeros:
            report.fail("no position of the new cell left to flip", **base)
            return report
        flip = zeros[0]
    elif a == window.prev_size - 1:
        flip = window.prev_mask & ~translated
    else:
        report.fail(f"d(c_i, u | S^(eta_k - 1)) = {a} outside the two window cases", **base)
        return report
    v = u ^ flip
    witness = dict(base, v=word_to_str(v, inst.n))
    if v not in atom.error_words:
        report.fail("flipped word v is not in N_{j|i}(u;k)", **witness)
    if joint_weight(inst, i, v) * inst.q != joint_weight(inst, i, u):
        report.fail("P(c_i, v) != P(c_i, u)/q", **witness)
    if joint_weight(inst, j, v) != joint_weight(inst, j, u) * inst.q:
        report.fail("P(c_j, v) != q P(c_j, u)", **witness)
    if restricted_distance(ci, v) != restricted_distance(ci, u) + 1:
        report.fail("d(c_i, v) != d(c_i, u) + 1", **witness)
    if restricted_distance(cj, v) != restricted_distance(cj, u) - 1:
        report.fail("d(c_j, v) != d(c_j, u) - 1", **witness)
    return report



#==================================================
#check_prop2
#==================================================
def check_prop2(inst: Instance, families=None) -> CheckReport:
    """Remainder words sit in a T family of every codeword they tie, exactly once

    Notes
    -----
    For y in T~_{j|i} and every h in I_i(y), y must lie in T_{l|h} for some
    l in I_h(y), with P(c_i, y) = P(c_h, y). Each remainder word must occur
    in one remainder set only, and the remainder mass summed over all (i, j)
    may not exceed the T family mass.

    Examples
    --------
    >>> mt.check_prop2(mt.example_one()).passed
    True
    """

    report = CheckReport("partitions.prop2")
    families = families if families is not None else tie_partitions(inst)
    owner = [{int(y): j for j, words in family.tie.items() for y in words} for family in families]
    seen = {}
    for family in families:
        for words in family.remainder.values():
            for y in words:
                seen[int(y)] = seen.get(int(y), 0) + 1

    for family in families:
        i = family.i
        for j, words in family.remainder.items():
            for y in (int(y) for y in words):
                report.checked += 1
                witness = {"i": i, "j": j, "y": word_to_str(y, inst.n)}
                for h in tie_indices(inst, i, y):
                    l = owner[h - 1].get(y)
                    if l is None or l not in tie_indices(inst, h, y):
                        report.fail("remainder word is in no T_{l|h} with l in I_h(y)", h=h, **witness)
                    if joint_weight(inst, i, y) != joint_weight(inst, h, y):
                        report.fail("P(c_i, y) != P(c_h, y)", h=h, **witness)
                if seen[y] != 1:
                    report.violations.append(Violation("partitions.exactly_once",
                        f"remainder word occurs {seen[y]} times", witness))

    remainder = sum((family.mass(family.remainder, j) for family in families for j in family.remainder), Fraction(0))
    tie = sum((family.mass(family.tie, j) for family in families for j in family.tie), Fraction(0))
    if remainder > tie:
        report.violations.append(Violation("partitions.ineq28",
            f"remainder mass {remainder} exceeds T family mass {tie}", {}))
    return report


def check_uniform(inst: Instance, families=None) -> CheckReport:
    """Under a uniform prior no remainder word exists and T_{j|i} takes the least tying j"""

    report = CheckReport("partitions.uniform")
    if not inst.is_uniform:
        return report
    families = families if families is not None else tie_partitions(inst)
    for family in families:
        i = family.i
        for j in family.tie:
            report.checked += 1
            if len(family.remainder[j]):
                report.fail("nonempty remainder set under a uniform prior", i=i, j=j,
                            y=word_to_str(int(family.remainder[j][0]), inst.n))
            words = family.tie[j]
            if not len(words):
                continue
            _, score = score_words(inst, words)
            top = score.max(axis=0)
            others = (np.arange(inst.M) != i - 1)[:, None]
            least = np.argmax((score == top) & others, axis=0) + 1
            if not (least == j).all():
                report.fail("T_{j|i} is not the least tying index", i=i, j=j)
    return report



#==================================================
#partition_report
#==================================================
@dataclass(frozen=True)
class PartitionReport:
    """All constructions and checks for one pair (i, j)

    Attributes
    ----------
    family : `TiePartition`
        The families of i \n
    levels : `LevelPartition`
        Levels of T_{j|i} and N_{j|i} with the refinement \n
    atoms : `tuple`
        AtomPartition of every nonempty level \n
    checks : `tuple`
        CheckReports on the refinement, levels and atoms of the pair \n
    """

    instance: Instance
    family: TiePartition
    levels: LevelPartition
    atoms: tuple
    checks: tuple = field(default=())

    @property
    def i(self) -> int:
        return self.levels.i

    @property
    def j(self) -> int:
        return self.levels.j

    @property
    def refinement(self) -> RefinedPartition:
        return self.levels.refinement

    @property
    def differ(self) -> DifferSet:
        return self.refinement.differ

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def partition_report(inst: Instance, i: int, j: int, family=None, run_checks=True) -> PartitionReport:
    """Returns the refinement, levels and atoms of (i, j) with their checks"""

    _check_pair(inst, i, j)
    family = family if family is not None else tie_partition(inst, i)
    levels = level_partition(inst, i, j, family=family)
    atoms = tuple(atom_partition(inst, i, j, k, levels=levels)
                  for k in range(len(levels.windows)) if len(levels.tie_levels[k]))
    checks = ()
    if run_checks:
        prop4, sizes = check_prop4(inst, levels, atoms)
        prop9 = CheckReport("partitions.prop9")
        flips = CheckReport("partitions.appendixB")
        for parts in atoms:
            _prop9_atoms(inst, parts, prop9)
            for atom in parts.atoms:
                single = check_appendixB(inst, i, j, parts.k, atom.u, atoms=parts)
                flips.checked += single.checked
                flips.violations.extend(single.violations)
        checks = (check_refinement(inst, levels.refinement), check_prop3(inst, levels, family),
                  prop4, sizes, prop9, flips)
        for check in checks:
            for v in check.violations:
                LOGGER.warning("%s violated for (i, j) = (%d, %d): %s", v.property, i, j, v.detail)
    return PartitionReport(instance=inst, family=family, levels=levels, atoms=atoms, checks=checks)


def partition_reports(inst: Instance, families=None, run_checks=True) -> list:
    """PartitionReport of every ordered pair, in (i, j) order"""

    families = families if families is not None else tie_partitions(inst)
    return [partition_report(inst, family.i, j, family=family, run_checks=run_checks)
            for family in families for j in range(1, inst.M + 1) if j != family.i]



#==================================================
#bound_chain
#==================================================
@dataclass(frozen=True)
class ChainReport:
    """Successive upper bounds on delta_n / b_n, ending at 2qn

    Attributes
    ----------
    links : `tuple`
        (name, value) pairs in chain order, values exact \n
    vacuous : `bool`
        True when delta_n = 0 and no link is evaluated \n
    """

    links: tuple
    vacuous: bool
    check: CheckReport

    @property
    def passed(self) -> bool:
        return self.check.passed

    def to_json(self) -> dict:
        return {"vacuous": self.vacuous, "links": [{"link": name, "value": str(value)} for name, value in self.links],
                "passed": self.passed, "violations": [v.to_json() for v in self.check.violations]}


def bound_chain(inst: Instance, families=None, reports=None, m=None) -> ChainReport:
    """Returns the chain of bounds from delta_n / b_n up to 2qn

    Notes
    -----
    The links are the ratio itself, the family sums with the remainder
    sets, twice the T family sums over all N families, the same restricted
    to nonempty T_{j|i}, and twice the largest family, level and atom
    ratios. Each link must be at least the previous one and the last one
    at most 2qn. Under a uniform prior delta_n / b_n <= qn is checked too.

    Examples
    --------
    >>> chain = mt.bound_chain(mt.example_one())
    >>> chain.passed, chain.links[-1]
    (True, ('2qn', Fraction(16, 1)))
    """

    check = CheckReport("partitions.bound_chain")
    a, b, delta = m if m is not None else metrics(inst)
    if delta == 0:
        return ChainReport(links=(), vacuous=True, check=check)
    families = families if families is not None else tie_partitions(inst)
    reports = reports if reports is not None else partition_reports(inst, families=families, run_checks=False)

    mass = lambda family, kind, j: family.mass(getattr(family, kind), j)
    tie_sum = sum((mass(f, "tie", j) for f in families for j in f.tie), Fraction(0))
    rest_sum = sum((mass(f, "remainder", j) for f in families for j in f.remainder), Fraction(0))
    error_sum = sum((mass(f, "error", j) for f in families for j in f.error), Fraction(0))
    live = [(f, j) for f in families for j in f.tie if len(f.tie[j])]
    live_error = sum((mass(f, "error", j) for f, j in live), Fraction(0))

    def ratio(top, bottom, name):
        if not bottom:
            check.fail(f"zero denominator in link {name}")
            return None
        return top / bottom

    links = [("delta/b", ratio(delta, b, "delta/b")),
             ("family sums", ratio(tie_sum + rest_sum, error_sum, "family sums")),
             ("2 T sums", ratio(2 * tie_sum, error_sum, "2 T sums")),
             ("2 T sums, nonempty T", ratio(2 * tie_sum, live_error, "2 T sums, nonempty T"))]
    families_max = [ratio(mass(f, "tie", j), mass(f, "error", j), f"family ({f.i}, {j})") for f, j in live]
    levels_max = [ratio(word_mass(inst, r.i, t), word_mass(inst, r.i, e), f"level ({r.i}, {r.j}, {k})")
                  for r in reports for k, (t, e) in enumerate(zip(r.levels.tie_levels, r.levels.error_levels)) if len(t)]
    atoms_max = [atom.ratio for r in reports for parts in r.atoms for atom in parts.atoms]
    for name, values in (("2 max family", families_max), ("2 max level", levels_max), ("2 max atom", atoms_max)):
        if any(v is None for v in values) or not values:
            check.fail(f"link {name} has no finite ratio")
            links.append((name, None))
        else:
            links.append((name, 2 * max(values)))
    links.append(("2qn", 2 * inst.q * inst.n))

    check.checked = len(links)
    values = [(name, value) for name, value in links if value is not None]
    for (prev_name, prev), (name, value) in zip(values, values[1:]):
        if value < prev:
            check.fail(f"link {name} = {value} is below {prev_name} = {prev}")
    if inst.is_uniform and delta > inst.q * inst.n * b:
        check.fail(f"delta/b = {delta / b} exceeds qn under a uniform prior")
    for v in check.violations:
        LOGGER.warning("bound chain: %s", v.detail)
    return ChainReport(links=tuple(links), vacuous=False, check=check)



#==================================================
#tables
#==================================================
def family_rows(inst: Instance, families: list, j=None) -> tuple:
    """Rows of T_{j|i}, T~_{j|i} and N_{j|i} per pair"""

    headers = ["i", "j", "T_{j|i}", "T~_{j|i}", "N_{j|i}"]
    rows = []
    for family in families:
        for other in family.tie:
            if j is not None and other != j:
                continue
            rows.append([family.i, other, _words(inst, family.tie[other]),
                         _words(inst, family.remainder[other]), _words(inst, family.error[other])])
    return headers, rows


def region_rows(inst: Instance, classification, indices) -> tuple:
    headers = ["i", "T_i", "N_i"]
    rows = [[i, _words(inst, classification.ties[i - 1]), _words(inst, classification.errors[i - 1])]
            for i in indices]
    return headers, rows


def level_rows(report: PartitionReport) -> tuple:
    inst = report.instance
    headers = ["k", "eta_k", "window", "T_{j|i}(k)", "N_{j|i}(k)"]
    rows = [[w.k, w.eta, mask_to_indices(w.mask, inst.n), _words(inst, t), _words(inst, e)]
            for w, t, e in zip(report.levels.windows, report.levels.tie_levels, report.levels.error_levels)]
    return headers, rows


def atom_rows(report: PartitionReport) -> tuple:
    inst = report.instance
    headers = ["k", "u", "T(u;k)", "N(u;k)", "ratio"]
    rows = [[parts.k, word_to_str(atom.u, inst.n), _words(inst, atom.tie_words), _words(inst, atom.error_words),
             atom.ratio if atom.ratio is not None else "-"]
            for parts in report.atoms for atom in parts.atoms]
    return headers, rows


def cell_rows(report: PartitionReport) -> tuple:
    inst = report.instance
    part = report.refinement
    headers = ["m", "lambda", "S^(m)", "l^(m)"]
    rows = [[m, "".join(str(part.pattern(m)[r]) for r in reversed(part.others)) or "-",
             mask_to_indices(part.cell(m), inst.n), part.cumulative_size(m)]
            for m in (range(1, part.cell_count + 1) if part.cell_count <= 64 else part.cells)]
    return headers, rows
