"""
On-disk cache for partition tables.

Layout (all integers little-endian):

    b"PTAB"                      magic
    uint32                       format version
    uint64                       max_n
    repeat max_n + 1 times:
        uint32                   byte length L of p(i)
        L bytes                  magnitude of p(i)

Loading verifies magic, version and length, then spot-checks Euler's
recurrence at a seeded sample of indices.
"""

import logging
import random
import struct
from pathlib import Path
from typing import List, Optional, Union

from .engine import (
    DEFAULT_TABLE_BUDGET,
    PartitionTable,
    build_partition_table,
    pentagonal_recurrence_holds,
)

logger = logging.getLogger("krank.table_cache")

MAGIC = b"PTAB"
FORMAT_VERSION = 1
DEFAULT_SPOT_CHECKS = 16
DEFAULT_SPOT_SEED = 0

_HEADER = struct.Struct("<4sIQ")
_LENGTH = struct.Struct("<I")


class TableCacheError(Exception):
    """Base class for table cache failures."""

    pass


class CorruptTableError(TableCacheError):
    """Raised when a cache file has a bad header or wrong length."""

    pass


class RecurrenceMismatchError(TableCacheError):
    """Raised when a cached value fails the pentagonal recurrence spot-check."""

    pass


def encode_table(table: PartitionTable) -> bytes:
    """Serialize a table to the PTAB byte layout."""
    chunks = [_HEADER.pack(MAGIC, FORMAT_VERSION, table.max_n)]
    for value in table.values:
        raw = value.to_bytes(max(1, (value.bit_length() + 7) // 8), "little")
        chunks.append(_LENGTH.pack(len(raw)))
        chunks.append(raw)
    return b"".join(chunks)


def decode_table(data: bytes) -> PartitionTable:
    """
    Parse the PTAB byte layout without verifying values.

    Raises:
        CorruptTableError: On bad magic, unknown version, truncation or trailing bytes
    """
    if len(data) < _HEADER.size:
        raise CorruptTableError("File shorter than the PTAB header")
    magic, version, max_n = _HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise CorruptTableError(f"Bad magic {magic!r}, expected {MAGIC!r}")
    if version != FORMAT_VERSION:
        raise CorruptTableError(f"Unsupported table format version {version}")

    values: List[int] = []
    offset = _HEADER.size
    for i in range(max_n + 1):
        if offset + _LENGTH.size > len(data):
            raise CorruptTableError(f"Truncated before length of p({i})")
        (length,) = _LENGTH.unpack_from(data, offset)
        offset += _LENGTH.size
        if offset + length > len(data):
            raise CorruptTableError(f"Truncated inside p({i})")
        values.append(int.from_bytes(data[offset : offset + length], "little"))
        offset += length
    if offset != len(data):
        raise CorruptTableError(f"{len(data) - offset} trailing bytes after p({max_n})")
    return PartitionTable(max_n=max_n, values=tuple(values))


def spot_check_indices(max_n: int, count: int, seed: int) -> List[int]:
    """Deterministic sample of indices in 1..max_n checked on load."""
    population = range(1, max_n + 1)
    return sorted(random.Random(seed).sample(population, min(count, len(population))))


def save_table(table: PartitionTable, path: Union[str, Path]) -> None:
    """Write a table to path in the PTAB format."""
    path = Path(path).expanduser()
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(encode_table(table))
    logger.info(f"Saved partition table up to {table.max_n} to {path}")


def load_table(
    path: Union[str, Path],
    spot_checks: int = DEFAULT_SPOT_CHECKS,
    seed: int = DEFAULT_SPOT_SEED,
) -> PartitionTable:
    """
    Read a PTAB file and spot-check it.

    Raises:
        CorruptTableError: On a malformed file
        RecurrenceMismatchError: If p(0) != 1 or a sampled index fails the recurrence
    """
    path = Path(path).expanduser()
    try:
        data = path.read_bytes()
    except IOError as e:
        raise TableCacheError(f"Error reading {path}: {e}")

    table = decode_table(data)
    if table.values[0] != 1:
        raise RecurrenceMismatchError(f"p(0) = {table.values[0]} in {path}")
    for i in spot_check_indices(table.max_n, spot_checks, seed):
        if not pentagonal_recurrence_holds(table.values, i):
            raise RecurrenceMismatchError(f"p({i}) fails the recurrence in {path}")
    logger.info(f"Loaded partition table up to {table.max_n} from {path}")
    return table


def load_or_build_table(
    max_n: int,
    cache_path: Optional[Union[str, Path]] = None,
    budget: int = DEFAULT_TABLE_BUDGET,
) -> PartitionTable:
    """
    Return a table reaching at least max_n, reusing cache_path when it is big enough.

    A missing or too-small cache is rebuilt and rewritten.
    """
    if cache_path is not None and Path(cache_path).expanduser().exists():
        table = load_table(cache_path)
        if table.max_n >= max_n:
            return table
        logger.warning(
            f"Cached table reaches {table.max_n} < {max_n}, rebuilding"
        )
    table = build_partition_table(max_n, budget=budget)
    if cache_path is not None:
        save_table(table, cache_path)
    return table
