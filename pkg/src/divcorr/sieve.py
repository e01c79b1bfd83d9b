"""Sieved tables over [1, N]: smallest prime factor, d(n), and d(n(n+v)).

Builders are numpy-vectorised and chunked, so a segment-by-segment build
yields byte-identical arrays to a monolithic one; tables are immutable after
construction and safe to share.  An optional binary dump/load round-trips
any table through a little-endian on-disk format with a CRC-32 trailer.
"""

from __future__ import annotations

import os
import struct
import zlib
from dataclasses import dataclass
from math import isqrt

import numpy as np

from divcorr.arith import factorize, trial_factorize
from divcorr.errors import RangeError, ResourceError

DEFAULT_SEGMENT_SIZE = 1 << 22
DEFAULT_MEMORY_CAP = 2 << 30  # bytes
MEMCAP_ENV = "DIVCORR_MEMCAP"


def resolve_memory_cap(explicit: int | None = None) -> int:
    """Memory budget in bytes: explicit argument, else DIVCORR_MEMCAP, else 2 GiB."""
    if explicit is not None:
        return explicit
    env = os.environ.get(MEMCAP_ENV)
    if env:
        return int(env)
    return DEFAULT_MEMORY_CAP


def _charge(nbytes: int, cap: int | None) -> None:
    # Approximate high-water estimate for the allocations a builder makes.
    budget = resolve_memory_cap(cap)
    if nbytes > budget:
        raise ResourceError(
            f"allocation of ~{nbytes} bytes exceeds memory cap {budget}"
        )


@dataclass(frozen=True)
class SpfTable:
    """spf[n] = smallest prime factor of n for 2 <= n <= limit; spf[1] = 1."""

    limit: int
    spf: np.ndarray


@dataclass(frozen=True)
class DivisorTable:
    """values[n] = d(n) for 1 <= n <= limit (uint32); slot 0 is 0."""

    limit: int
    values: np.ndarray


@dataclass(frozen=True)
class ShiftedProductTable:
    """values[n] = d(n(n+shift)) for 1 <= n <= limit (uint32); slot 0 is 0."""

    limit: int
    shift: int
    values: np.ndarray


def _base_primes(n: int) -> np.ndarray:
    """Primes <= n by a plain boolean sieve."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    mask = np.ones(n + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, isqrt(n) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.nonzero(mask)[0]


def build_spf(
    limit: int,
    *,
    memory_cap: int | None = None,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
) -> SpfTable:
    """Smallest-prime-factor table over [1, limit].

    Args:
        limit: inclusive upper bound, must satisfy 1 <= limit < 2^31.
        memory_cap: byte budget; DIVCORR_MEMCAP or 2 GiB when None.
        segment_size: entries marked per chunk.

    Returns:
        SpfTable with spf[1] = 1 and spf[p] = p on primes.
    """
    if limit < 1:
        raise RangeError("limit must be >= 1")
    if limit >= 1 << 31:
        raise RangeError("limit must fit in int32")
    _charge((limit + 1) * 4 + isqrt(limit) * 2, memory_cap)
    spf = np.zeros(limit + 1, dtype=np.int32)
    primes = [int(p) for p in _base_primes(isqrt(limit))]
    for lo in range(0, limit + 1, segment_size):
        hi = min(lo + segment_size - 1, limit)
        seg = spf[lo : hi + 1]
        for p in primes:
            if p * p > hi:
                break
            start = max(p * p, (lo + p - 1) // p * p)
            if start > hi:
                continue
            sl = seg[start - lo :: p]
            sl[sl == 0] = p
        # untouched entries are prime; this also leaves spf[0] = 0, spf[1] = 1
        unmarked = np.nonzero(seg == 0)[0]
        seg[unmarked] = unmarked + lo
    return SpfTable(limit, spf)


def build_divisor_table(
    limit: int,
    *,
    memory_cap: int | None = None,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
) -> DivisorTable:
    """Divisor-count table d(1..limit).

    Every divisor pair (i, n/i) with i <= sqrt(n) contributes two counts
    (one when i*i = n), added as strided slice updates, so the whole build is
    a few thousand vector operations rather than a per-element loop.

    Args:
        limit: inclusive upper bound.
        memory_cap: byte budget; DIVCORR_MEMCAP or 2 GiB when None.
        segment_size: table entries per chunk.

    Returns:
        DivisorTable of uint32 counts.
    """
    if limit < 1:
        raise RangeError("limit must be >= 1")
    _charge((limit + 1) * 4, memory_cap)
    d = np.zeros(limit + 1, dtype=np.uint32)
    for lo in range(0, limit + 1, segment_size):
        hi = min(lo + segment_size - 1, limit)
        seg = d[lo : hi + 1]
        for i in range(1, isqrt(hi) + 1):
            sq = i * i
            if lo <= sq <= hi:
                seg[sq - lo] += 1
            start = max(sq + i, (lo + i - 1) // i * i)
            if start <= hi:
                seg[start - lo :: i] += 2
    d[0] = 0
    return DivisorTable(limit, d)


def _valuations(p: int, n: int) -> np.ndarray:
    """v_p(m) for m in [0, n] as uint8."""
    val = np.zeros(n + 1, dtype=np.uint8)
    pk = p
    while pk <= n:
        val[pk::pk] += 1
        pk *= p
    return val


def shifted_product_values(
    dtab: DivisorTable,
    limit: int,
    shift: int,
    *,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
) -> np.ndarray:
    """d(n(n+shift)) for n in [1, limit] from a d-table covering limit+shift.

    A prime shared by n and n+shift necessarily divides the shift, so with
    a = v_p(n), b = v_p(n+shift) over primes p | shift:

        d(n(n+shift)) = d(n) d(n+shift) * prod_p (a+b+1) / ((a+1)(b+1))

    and the divisions are exact.  This is the bulk equivalent of merging the
    two factorisations; shifted_product_divisor_count is the per-n reference.
    """
    need = limit + shift
    if dtab.limit < need:
        raise RangeError(f"divisor table limit {dtab.limit} < {need}")
    d = dtab.values
    pdivs = [p for p, _ in trial_factorize(shift).entries]
    vals = {p: _valuations(p, need) for p in pdivs}
    out = np.zeros(limit + 1, dtype=np.uint32)
    for lo in range(1, limit + 1, segment_size):
        hi = min(lo + segment_size - 1, limit)
        left = d[lo : hi + 1].astype(np.int64)
        right = d[lo + shift : hi + shift + 1].astype(np.int64)
        corr = np.ones(hi - lo + 1, dtype=np.int64)
        for p in pdivs:
            a = vals[p][lo : hi + 1].astype(np.int64)
            b = vals[p][lo + shift : hi + shift + 1].astype(np.int64)
            left //= a + 1
            right //= b + 1
            corr *= a + b + 1
        prod = left * right * corr
        if int(prod.max(initial=0)) >= 1 << 32:
            raise OverflowError("d(n(n+shift)) exceeds uint32")
        out[lo : hi + 1] = prod
    return out


def build_shifted_product_table(
    limit: int,
    shift: int,
    *,
    divisor_table: DivisorTable | None = None,
    memory_cap: int | None = None,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
) -> ShiftedProductTable:
    """Table of d(n(n+shift)) for n in [1, limit].

    Args:
        limit: inclusive bound on n.
        shift: the shift v >= 1.
        divisor_table: optional prebuilt d-table; must cover limit+shift,
            otherwise one is built internally.
        memory_cap: byte budget; DIVCORR_MEMCAP or 2 GiB when None.
        segment_size: table entries per chunk.

    Returns:
        ShiftedProductTable of uint32 counts.
    """
    if limit < 1 or shift < 1:
        raise RangeError("limit and shift must be >= 1")
    need = limit + shift
    _charge((need + 1) * 4 + (limit + 1) * 4 + 4 * 8 * min(segment_size, limit), memory_cap)
    if divisor_table is None:
        divisor_table = build_divisor_table(
            need, memory_cap=memory_cap, segment_size=segment_size
        )
    elif divisor_table.limit < need:
        raise RangeError(f"divisor table limit {divisor_table.limit} < {need}")
    vals = shifted_product_values(
        divisor_table, limit, shift, segment_size=segment_size
    )
    return ShiftedProductTable(limit, shift, vals)


def shifted_product_divisor_count(n: int, shift: int, spf: SpfTable) -> int:
    """d(n(n+shift)) via the merged factorisations of n and n+shift."""
    merged = dict(factorize(n, spf).entries)
    for p, e in factorize(n + shift, spf).entries:
        merged[p] = merged.get(p, 0) + e
    out = 1
    for e in merged.values():
        out *= e + 1
    return out


# ---------------------------------------------------------------------------
# binary dump / load
# ---------------------------------------------------------------------------

_MAGIC = b"DCOR"
_VERSION = 1
_HEADER = struct.Struct("<4sIBBBBQQ")  # magic, version, kind, width, has_shift, pad, limit, shift
_KIND_SPF, _KIND_DIVISOR, _KIND_SHIFTED = 1, 2, 3
_DTYPES = {_KIND_SPF: "<i4", _KIND_DIVISOR: "<u4", _KIND_SHIFTED: "<u4"}

Table = SpfTable | DivisorTable | ShiftedProductTable


def dump_table(table: Table, path: str | os.PathLike) -> None:
    """Write a table: header, little-endian payload, CRC-32 trailer."""
    if isinstance(table, SpfTable):
        kind, shift, arr = _KIND_SPF, 0, table.spf
    elif isinstance(table, DivisorTable):
        kind, shift, arr = _KIND_DIVISOR, 0, table.values
    elif isinstance(table, ShiftedProductTable):
        kind, shift, arr = _KIND_SHIFTED, table.shift, table.values
    else:
        raise TypeError(f"not a table: {type(table).__name__}")
    payload = np.ascontiguousarray(arr).astype(_DTYPES[kind], copy=False).tobytes()
    header = _HEADER.pack(
        _MAGIC, _VERSION, kind, 4, 1 if kind == _KIND_SHIFTED else 0, 0,
        table.limit, shift,
    )
    crc = zlib.crc32(payload, zlib.crc32(header))
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(payload)
        fh.write(struct.pack("<I", crc))


def load_table(path: str | os.PathLike) -> Table:
    """Read a table written by dump_table, verifying magic, version and CRC."""
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < _HEADER.size + 4:
        raise ValueError("table file truncated")
    header, payload, trailer = (
        blob[: _HEADER.size],
        blob[_HEADER.size : -4],
        blob[-4:],
    )
    magic, version, kind, width, has_shift, _, limit, shift = _HEADER.unpack(header)
    if magic != _MAGIC:
        raise ValueError("bad magic; not a table file")
    if version != _VERSION:
        raise ValueError(f"unsupported table version {version}")
    if kind not in _DTYPES or width != 4:
        raise ValueError("unknown table kind or element width")
    (crc,) = struct.unpack("<I", trailer)
    if zlib.crc32(payload, zlib.crc32(header)) != crc:
        raise ValueError("CRC mismatch; table file corrupt")
    if len(payload) != (limit + 1) * width:
        raise ValueError("payload length disagrees with header")
    arr = np.frombuffer(payload, dtype=_DTYPES[kind]).astype(
        np.int32 if kind == _KIND_SPF else np.uint32, copy=True
    )
    if kind == _KIND_SPF:
        return SpfTable(limit, arr)
    if kind == _KIND_DIVISOR:
        return DivisorTable(limit, arr)
    if not has_shift:
        raise ValueError("shifted table missing its shift")
    return ShiftedProductTable(limit, shift, arr)
