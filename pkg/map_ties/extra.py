#!usr/bin/env
###
#Extra functions shared by every module: bit words, index sets, error types,
#check reports and table rendering
###
#Words are integers with position 1 as the most significant of the n bits, so
#ascending integer order is the lexicographic order of the printed bit strings.

import csv
import io
import json
from dataclasses import dataclass, field
import numpy as np



_BYTE_WEIGHTS = np.array([bin(b).count("1") for b in range(256)], dtype=np.int64)



#==================================================
#errors
#==================================================
class MapTiesError(ValueError):
    """Base class for input and validation errors"""


class WeightSyntaxError(MapTiesError):
    """A weight expression that does not follow the grammar

    Attributes
    ----------
    position : `int`
        0-based character offset of the offending token \n
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class InstanceError(MapTiesError):
    """A violated instance invariant"""


class EnumerationLimitError(MapTiesError):
    """Blocklength above the exhaustive enumeration limit"""



#==================================================
#violation
#==================================================
@dataclass(frozen=True)
class Violation:
    """One failed property check

    Attributes
    ----------
    property : `str`
        Dotted property identifier, e.g. ``partitions.prop1`` \n
    detail : `str`
        What failed \n
    witness : `dict`
        Indices and words locating the failure, words as bit strings \n
    """

    property: str
    detail: str
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"property": self.property, "detail": self.detail, "witness": dict(self.witness)}



#==================================================
#check report
#==================================================
@dataclass
class CheckReport:
    """Outcome of one property check over an instance

    Attributes
    ----------
    property : `str`
        Dotted property identifier \n
    checked : `int`
        Number of cases examined, 0 means the check was vacuous \n
    violations : `list`
        Failed cases \n
    """

    property: str
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def vacuous(self) -> bool:
        return self.checked == 0

    def fail(self, detail: str, **witness):
        self.violations.append(Violation(self.property, detail, witness))

    def to_json(self) -> dict:
        return {"property": self.property, "checked": self.checked, "passed": self.passed,
                "vacuous": self.vacuous, "violations": [v.to_json() for v in self.violations]}



#==================================================
#popcount
#==================================================
def popcount(words) -> np.ndarray:
    """Returns the number of ones of every entry of an integer array

    Notes
    -----
    Entries must be nonnegative and below 2**64. The result has the shape
    of the input and dtype int64.

    Parameters
    ----------
    words : `array_like`
        Integer encoded words \n

    Returns
    -------
    numpy.ndarray
        The Hamming weight of every entry \n

    Examples
    --------
    >>> popcount([0, 5, 255])
    array([0, 2, 8])
    """

    arr = np.asarray(words)
    flat = np.ascontiguousarray(arr.reshape(-1), dtype=np.uint64)
    counts = _BYTE_WEIGHTS[flat.view(np.uint8)].reshape(-1, 8).sum(axis=1)
    return counts.reshape(arr.shape)



#==================================================
#word conversions
#==================================================
def word_to_str(word: int, n: int) -> str:
    """Bit string of an n-bit word, position 1 leftmost

    >>> word_to_str(5, 4)
    '0101'
    """

    return format(int(word), f"0{n}b")


def str_to_word(text: str) -> int:
    """Integer encoding of a bit string over {0,1}

    >>> str_to_word('0111')
    7
    """

    if not text or any(ch not in "01" for ch in text):
        raise InstanceError(f"codeword {text!r} is not a nonempty string over {{0,1}}")
    return int(text, 2)



#==================================================
#index sets
#==================================================
def index_mask(indices, n: int) -> int:
    """Bit mask of a subset of [n] given as 1-based positions

    >>> index_mask([2, 4], 4)
    5
    """

    mask = 0
    for k in indices:
        if not 1 <= k <= n:
            raise IndexError(f"position {k} outside [1, {n}]")
        mask |= 1 << (n - k)
    return mask


def mask_to_indices(mask: int, n: int) -> list:
    """1-based positions present in a bit mask, ascending

    >>> mask_to_indices(5, 4)
    [2, 4]
    """

    return [k for k in range(1, n + 1) if (mask >> (n - k)) & 1]


def format_index_set(indices) -> str:
    """Print a set of indices the way the tables do, ``{2,3}`` or ``∅``"""

    indices = list(indices)
    if not indices:
        return "∅"
    return "{" + ",".join(str(k) for k in indices) + "}"



#==================================================
#render_table
#==================================================
def format_cell(value, fmt: str):
    """Text of one table cell; lists print as sets, empty lists as ∅ (blank in csv)"""

    if isinstance(value, (list, tuple)):
        if fmt == "csv" and not value:
            return ""
        return format_index_set(value)
    return str(value)


def render_table(headers: list, rows: list, fmt="md") -> str:
    """Returns a table as markdown, csv or a json list of row objects

    Parameters
    ----------
    headers : `list`
        Column names \n
    rows : `list`
        One list of cell values per row. Fractions print exactly as a/b \n
    fmt : `str`
        'md', 'csv' or 'json'. Default is 'md' \n

    Returns
    -------
    str
        The rendered table, without a trailing newline \n
    """

    if fmt == "json":
        return json.dumps(table_records(headers, rows), indent=2)
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(headers)
        for row in rows:
            writer.writerow([format_cell(v, fmt) for v in row])
        return buffer.getvalue().rstrip("\n")
    if fmt != "md":
        raise MapTiesError(f"unknown table format {fmt!r}")
    lines = ["| " + " | ".join(headers) + " |", "|" + "|".join("---" for _ in headers) + "|"]
    for row in rows:
        lines.append("| " + " | ".join(format_cell(v, fmt) for v in row) + " |")
    return "\n".join(lines)


def _jsonable(value):
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, np.integer):
        return int(value)
    return str(value)


def table_records(headers: list, rows: list) -> list:
    """Rows as JSON ready objects keyed by header"""

    return [dict(zip(headers, (_jsonable(v) for v in row))) for row in rows]
