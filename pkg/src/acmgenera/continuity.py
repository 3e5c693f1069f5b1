"""Certain genera by degree recursion, and the continuity thresholds m_d.

Shifting the genera of a smaller degree ``j`` up by ``C(d-j,2)`` lands inside
the genera of degree ``d``, so a large "certain" subset of the genera can be
accumulated bottom-up with shifted bitmask unions and no enumeration at all.
The threshold ``m_d`` is the largest value such that 0..m_d is guaranteed
covered by that recursion.
"""
from __future__ import annotations

import threading
from math import comb
from pathlib import Path
from typing import Iterator, Optional


class GenusSet:
    """Genus values of one degree, a dense bitmask over [0, C(d-1,2)]."""

    __slots__ = ("d", "bits")

    def __init__(self, d: int, bits: int = 0):
        self.d = d
        self.bits = bits & self.universe_mask(d)

    @staticmethod
    def universe_mask(d: int) -> int:
        return (1 << (comb(d - 1, 2) + 1)) - 1

    @classmethod
    def from_values(cls, d: int, values) -> "GenusSet":
        bits = 0
        for v in values:
            bits |= 1 << v
        return cls(d, bits)

    def __contains__(self, value: int) -> bool:
        return value >= 0 and (self.bits >> value) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        bits, value = self.bits, 0
        while bits:
            if bits & 1:
                yield value
            bits >>= 1
            value += 1

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __eq__(self, other) -> bool:
        return isinstance(other, GenusSet) and (self.d, self.bits) == (other.d, other.bits)

    def __repr__(self) -> str:
        return f"GenusSet(d={self.d}, n={len(self)})"

    def add(self, value: int):
        if not 0 <= value <= comb(self.d - 1, 2):
            raise ValueError(f"genus {value} outside [0, C({self.d}-1,2)]")
        self.bits |= 1 << value

    def to_list(self) -> list[int]:
        return list(self)

    def to_hex(self) -> str:
        return format(self.bits, "x")

    @classmethod
    def from_hex(cls, d: int, text: str) -> "GenusSet":
        return cls(d, int(text, 16))

    def copy(self) -> "GenusSet":
        return GenusSet(self.d, self.bits)


_mask_cache: list[int] = [0, 1]  # _mask_cache[m] = certain-genera bits for degree m
_mask_lock = threading.Lock()
_TRIANGLE = [k * (k - 1) // 2 for k in range(256)]


def _triangle(k: int) -> int:
    while k >= len(_TRIANGLE):
        n = len(_TRIANGLE)
        _TRIANGLE.append(n * (n - 1) // 2)
    return _TRIANGLE[k]


def _certain_masks(d: int) -> list[int]:
    with _mask_lock:
        cache = _mask_cache
        _triangle(d)
        tri = _TRIANGLE
        for m in range(len(cache), d + 1):
            acc = 0
            for i in range(1, m):
                acc |= cache[i] << tri[m - i]
            cache.append(acc & ((1 << (tri[m - 1] + 1)) - 1))
        return cache[: d + 1]


def certain_genera(d: int) -> GenusSet:
    """Genera of degree ``d`` certified by the shifted-union recursion alone."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    return GenusSet(d, _certain_masks(d)[d])


def m_sequence(dmax: int) -> list[int]:
    """The thresholds ``[m_1, ..., m_dmax]``.

    The enabling test ``C(k,2) - 1 <= M`` is made against the running
    maximum, so a shift length k can become usable after a smaller k has
    already raised M within the same degree.  This reading is forced: the
    frozen-threshold variant diverges from the recursion's actual coverage
    (first at degree 8, where it yields 6 instead of 7).
    """
    if dmax < 1:
        raise ValueError("dmax must be >= 1")
    ms = [0]  # m_1
    for d in range(2, dmax + 1):
        m = ms[-1]
        for k in range(2, d):
            if comb(k, 2) - 1 <= m:
                m = max(m, ms[d - k - 1] + comb(k, 2))
        ms.append(m)
    return ms


def continuity_prefix(d: int) -> GenusSet:
    """The guaranteed prefix {0, ..., m_d} of the genera of degree ``d``."""
    md = m_sequence(d)[-1]
    return GenusSet(d, (1 << (md + 1)) - 1)


def clear_continuity_caches():
    with _mask_lock:
        del _mask_cache[2:]


# ---------------------------------------------------------------------------
# advisory on-disk cache: one line per degree, "d <d> m <m_d> genera <hex>"


def save_cache(path, dmax: int):
    """Write the certain-genera records for degrees 1..dmax."""
    masks = _certain_masks(dmax)
    ms = m_sequence(dmax)
    lines = [
        f"d {m} m {ms[m - 1]} genera {format(masks[m], 'x')}" for m in range(1, dmax + 1)
    ]
    Path(path).write_text("\n".join(lines) + "\n")


def load_cache(path) -> dict[int, GenusSet]:
    """Read back cache records, silently dropping malformed or stale ones.

    A record is kept only if it parses, stays inside its degree's universe,
    matches the independently recomputed m threshold, and covers the whole
    prefix 0..m_d.  Anything else is recomputed by the caller.
    """
    try:
        text = Path(path).read_text()
    except OSError:
        return {}
    records: dict[int, GenusSet] = {}
    degrees: list[int] = []
    parsed: dict[int, tuple[int, int]] = {}
    for line in text.splitlines():
        parts = line.split()
        if len(parts) != 6 or parts[0] != "d" or parts[2] != "m" or parts[4] != "genera":
            continue
        try:
            d = int(parts[1])
            m = int(parts[3])
            bits = int(parts[5], 16)
        except ValueError:
            continue
        if d < 1 or bits < 0 or bits != bits & GenusSet.universe_mask(d):
            continue
        parsed[d] = (m, bits)
        degrees.append(d)
    if not parsed:
        return {}
    ms = m_sequence(max(degrees))
    for d, (m, bits) in parsed.items():
        if m != ms[d - 1]:
            continue  # stale
        if bits & ((1 << (m + 1)) - 1) != (1 << (m + 1)) - 1:
            continue  # prefix 0..m_d must be covered
        records[d] = GenusSet(d, bits)
    return records


def warm_from_cache(path: Optional[str]) -> bool:
    """Seed the in-memory recursion with a consistent prefix of cache records.

    Records are only usable if they form an unbroken chain 1..k that also
    satisfies the monotone-inclusion property of the recursion; the first
    inconsistency stops the seeding.  Returns True if anything was adopted.
    """
    if not path:
        return False
    records = load_cache(path)
    adopted = []
    prev_bits = None
    for d in range(1, len(records) + 2):
        if d not in records:
            break
        bits = records[d].bits
        if prev_bits is not None and prev_bits & bits != prev_bits:
            break
        adopted.append(bits)
        prev_bits = bits
    if len(adopted) < 3:
        return False
    with _mask_lock:
        if len(adopted) > len(_mask_cache) - 1:
            del _mask_cache[1:]
            _mask_cache.extend(adopted)
    return True
