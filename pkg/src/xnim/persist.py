"""Table files and text exports.

The binary table format is fixed and platform-independent:

    offset  size  field
    0       8     magic "XNIMTBL1"
    8       1     format version (currently 1)
    9       1     game family (0 nim, 1 moore, 2 exact)
    10      1     n (number of piles)
    11      1     k
    12      1     flags, bit 0 = remoteness present
    13      4     bound, little-endian
    17      8     position count, little-endian
    25      ...   outcome bitmap, rank r at byte r//8 bit r%8, P = 1
    ...     ...   if flagged: count 2-byte little-endian remoteness values

Count is redundant with bound (it must equal C(bound+n, n)) and is
validated on read, as is the exact file length.  Text exports cover
position records as JSON lines, the class-count series as CSV, and the
exceptional graph as DOT.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

from .classify import (
    CLASS_NAMES,
    GOOD,
    REG_EXCEPTIONAL,
    REG_REGULAR,
    Classification,
    ExceptionalGraph,
)
from .analysis import ClassCountSeries
from .errors import CorruptTableError, UnsupportedVersionError
from .rules import exact, moore, nim
from .solver import SolveTable, binom_table, positions_of_ranks

MAGIC = b"XNIMTBL1"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<8sBBBBBIQ")
_FAMILY_CODES = {"nim": 0, "moore": 1, "exact": 2}
_FAMILY_NAMES = {v: k for k, v in _FAMILY_CODES.items()}


def write_table(table: SolveTable, path) -> None:
    """Write a solved table; byte-identical for identical inputs."""
    rule = table.rule
    flags = 1 if table.has_remoteness() else 0
    header = _HEADER.pack(
        MAGIC, FORMAT_VERSION, _FAMILY_CODES[rule.family], rule.n, rule.k,
        flags, table.bound, table.count,
    )
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(np.packbits(table.outcomes, bitorder="little").tobytes())
        if flags & 1:
            fh.write(table.remoteness.astype("<u2").tobytes())


def read_table(path) -> SolveTable:
    """Read a table file, validating magic, version, and exact length."""
    data = Path(path).read_bytes()
    if len(data) < _HEADER.size:
        raise CorruptTableError(f"{path}: {len(data)} bytes is shorter than a header")
    magic, version, fam, n, k, flags, bound, count = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise CorruptTableError(f"{path}: bad magic {magic!r}")
    if version != FORMAT_VERSION:
        raise UnsupportedVersionError(
            f"{path}: format version {version}, supported {FORMAT_VERSION}"
        )
    if fam not in _FAMILY_NAMES:
        raise CorruptTableError(f"{path}: unknown game family code {fam}")
    try:
        rule = {"nim": lambda: nim(n), "moore": lambda: moore(n, k),
                "exact": lambda: exact(n, k)}[_FAMILY_NAMES[fam]]()
    except ValueError as e:
        raise CorruptTableError(f"{path}: invalid rule in header: {e}") from e
    if rule.family == "nim" and k != 1:
        raise CorruptTableError(f"{path}: nim header carries k={k}")

    binom = binom_table(bound, n)
    expected_count = int(binom[bound + n, n])
    if count != expected_count:
        raise CorruptTableError(
            f"{path}: header count {count}, bound {bound} implies {expected_count}"
        )
    bitmap_len = (count + 7) // 8
    expected_len = _HEADER.size + bitmap_len + (2 * count if flags & 1 else 0)
    if len(data) != expected_len:
        raise CorruptTableError(
            f"{path}: length {len(data)}, header implies {expected_len}"
        )

    off = _HEADER.size
    bitmap = np.frombuffer(data, dtype=np.uint8, count=bitmap_len, offset=off)
    outcomes = np.unpackbits(bitmap, count=count, bitorder="little")
    remoteness = None
    if flags & 1:
        remoteness = np.frombuffer(
            data, dtype="<u2", count=count, offset=off + bitmap_len
        ).astype(np.uint16)
    return SolveTable(rule=rule, bound=bound, outcomes=outcomes, remoteness=remoteness)


_REG_NAMES = {REG_REGULAR: "regular", REG_EXCEPTIONAL: "exceptional"}


def export_jsonl(cls: Classification, path, which: str = "all",
                 lex: bool = False) -> int:
    """Write one JSON object per position; returns the number of lines.

    ``which`` is "all" or "exceptional".  Records come in rank order
    unless ``lex`` asks for lexicographic pile order (handy when
    diffing against hand-written lists).
    """
    if which == "all":
        ranks = np.arange(cls.count, dtype=np.int64)
    elif which == "exceptional":
        ranks = cls.exceptional_ranks()
    else:
        raise ValueError(f"unknown filter {which!r}")

    n, bound = cls.rule.n, cls.bound
    rows = positions_of_ranks(ranks, n, bound)
    if lex and len(rows):
        order = np.lexsort(tuple(rows[:, j] for j in range(n - 1, -1, -1)))
        rows, ranks = rows[order], ranks[order]

    et, mt = cls.exact_table, cls.moore_table
    with_rem = et.has_remoteness() and mt.has_remoteness()
    binom = binom_table(bound, n)
    written = 0
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for row, rank in zip(rows.tolist(), ranks.tolist()):
            pair = int(cls.pair_class[rank])
            rec = {
                "pos": [int(v) for v in row],
                "outcome": "P" if et.outcomes[rank] else "N",
                "moore": "N" if pair & 1 else "P",
                "class": CLASS_NAMES[pair],
                "quality": "good" if cls.quality[rank] == GOOD else "bad",
                "regularity": _REG_NAMES.get(int(cls.regularity[rank])),
                "remoteness": None,
                "remoteness_reduced": None,
            }
            if with_rem:
                red_rank = rank - int(binom[row[-1] + n - 1, n])
                rec["remoteness"] = int(et.remoteness[rank])
                rec["remoteness_reduced"] = int(mt.remoteness[red_rank])
            fh.write(json.dumps(rec, separators=(", ", ": ")))
            fh.write("\n")
            written += 1
    return written


def _fmt_ratio(v: float) -> str:
    if np.isnan(v):
        return "nan"
    if np.isposinf(v):
        return "inf"
    if np.isneginf(v):
        return "-inf"
    if v == int(v):
        return str(int(v))
    return repr(float(v))


def export_csv_series(series: ClassCountSeries, path) -> int:
    """CSV of the class counts per stone total, with ratio columns.

    Returns the number of data rows written.
    """
    r1 = series.ratio_pp_pn()
    r2 = series.ratio_unbalanced()
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("stones,pp,pn,np,nn,ratio_pp_pn,ratio_mixed\n")
        for s, row in enumerate(series.counts):
            pp, pn, np_, nn = (int(v) for v in row)
            fh.write(
                f"{s},{pp},{pn},{np_},{nn},{_fmt_ratio(r1[s])},{_fmt_ratio(r2[s])}\n"
            )
    return len(series.counts)


def export_dot(graph: ExceptionalGraph, path, include_isolated: bool = True) -> None:
    """Graphviz digraph of the exceptional positions and their moves."""
    if include_isolated:
        keep = list(range(len(graph.nodes)))
    else:
        iso = graph.isolated()
        keep = [i for i in range(len(graph.nodes)) if not iso[i]]

    def nid(i: int) -> str:
        return "-".join(str(v) for v in graph.nodes[i])

    lines = [
        f"// exceptional move graph: bound={graph.bound}"
        f" nodes={len(keep)} edges={len(graph.edges)}"
    ]
    if not keep:
        lines.append("digraph exceptional {}")
    else:
        lines.append("digraph exceptional {")
        for i in keep:
            lines.append(
                f'  "{nid(i)}" [outcome={graph.outcomes[i]} class={graph.classes[i]}];'
            )
        for s, t in graph.edges:
            lines.append(f'  "{nid(s)}" -> "{nid(t)}";')
        lines.append("}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
