"""Genus ranges by length, their extremes, and closed-form gap certificates.

For a degree ``d`` the genus of an aCM curve lies in ``[0, C(d-1,2)]``.
Restricting the h-vector length to ``s`` confines it further to the
``(d, s)``-range ``[C(s-1,2), max_genus(d, s)]``.  The maximum is computed by
an exact one-unit-per-step recursion in the multiplicity; for
``s >= d//2 + 1`` it collapses to the closed form ``C(s-1,2) + C(d-s,2)``.

Two closed-form rules certify gaps without any search: the integers strictly
between a range and the next one when those are separated, and the top few
values of a range ("holes") when they fall below the next range's minimum.
"""
from __future__ import annotations

import threading
import warnings
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .errors import EmptyFamilyError
from .macaulay import binomial, genus, macaulay_bound


def min_genus(s: int) -> int:
    """Smallest genus over all multiplicities for h-vectors of length ``s``."""
    if s < 1:
        raise ValueError("length must be >= 1")
    return binomial(s - 1, 2)


def min_oseq(d: int, s: int) -> tuple[int, ...]:
    """The genus-minimal O-sequence of multiplicity ``d`` and length ``s``."""
    if d < s:
        raise EmptyFamilyError(f"no O-sequence has multiplicity {d} and length {s}")
    if d == s:
        return (1,) * s
    if s == 1:
        raise EmptyFamilyError(f"no O-sequence of length 1 has multiplicity {d}")
    return (1, d - s + 1) + (1,) * (s - 2)


_max_cache: dict[tuple[int, int], tuple[int, ...]] = {}
_max_lock = threading.Lock()


def max_oseq(d: int, s: int) -> tuple[int, ...]:
    """The genus-maximal O-sequence of multiplicity ``d`` and length ``s``.

    Built one multiplicity at a time from ``(1^s)``: each step increments the
    entry at the highest index that keeps the sequence admissible (position 1
    is always legal).
    """
    if s < 2:
        if s == 1 and d == 1:
            return (1,)
        raise EmptyFamilyError(f"no O-sequence of length {s} has multiplicity {d}")
    if d < s:
        raise EmptyFamilyError(f"no O-sequence has multiplicity {d} and length {s}")
    with _max_lock:
        h = list(_max_cache.get((s, s), (1,) * s))
        start = s
        for m in range(d, s, -1):
            if (s, m) in _max_cache:
                h = list(_max_cache[(s, m)])
                start = m
                break
        for m in range(start + 1, d + 1):
            for i in range(s - 1, 0, -1):
                if i == 1 or h[i] + 1 <= macaulay_bound(h[i - 1], i - 1):
                    h[i] += 1
                    break
            _max_cache[(s, m)] = tuple(h)
        _max_cache.setdefault((s, s), (1,) * s)
        return tuple(h)


def max_genus(d: int, s: int) -> int:
    """Largest genus attained by an O-sequence of multiplicity ``d``, length ``s``."""
    return genus(max_oseq(d, s))


def closed_max_genus(d: int, s: int) -> int:
    """Closed form C(s-1,2) + C(d-s,2) of the maximal genus; valid for s >= d//2 + 1."""
    if s < d // 2 + 1:
        raise ValueError(f"closed form needs s >= d//2 + 1, got (d={d}, s={s})")
    return binomial(s - 1, 2) + binomial(d - s, 2)


def closed_max_oseq(d: int, s: int) -> tuple[int, ...]:
    """Closed form (1, 2^(d-s), 1^(2s-d-1)) of the maximal O-sequence; s >= d//2 + 1."""
    if s < d // 2 + 1:
        raise ValueError(f"closed form needs s >= d//2 + 1, got (d={d}, s={s})")
    return (1,) + (2,) * (d - s) + (1,) * (2 * s - d - 1)


@dataclass(frozen=True)
class GenusRange:
    """One (d, s)-range with its extreme genera and their witnesses."""

    d: int
    s: int
    min_genus: int
    max_genus: int
    min_witness: tuple[int, ...]
    max_witness: tuple[int, ...]
    separated: bool  # gap of width > 1 between this range and the next one up


def is_separated(d: int, s: int) -> bool:
    """True when every integer between range ``s`` and range ``s+1`` is a gap.

    Evaluated exactly: the real-root condition on ``s`` is squared and
    cleared of denominators, so no floating point is involved.
    """
    if not 2 <= s <= d - 1:
        return False
    return (2 * d + 1 - 2 * s) ** 2 < 8 * d - 15


def separated_after(d: int) -> set[int]:
    """All lengths ``s`` whose range is separated from the range of ``s+1``."""
    if d <= 2:
        raise ValueError("separated ranges are only defined for d > 2")
    return {s for s in range(2, d) if is_separated(d, s)}


def genus_range(d: int, s: int) -> GenusRange:
    top = max_oseq(d, s)
    return GenusRange(d, s, min_genus(s), genus(top), min_oseq(d, s), top, is_separated(d, s))


def range_table(d: int) -> list[GenusRange]:
    """The ranges for every length ``s = 2 .. d`` (plus ``s = 1`` when d = 1)."""
    if d == 1:
        return [GenusRange(1, 1, 0, 0, (1,), (1,), False)]
    return [genus_range(d, s) for s in range(2, d + 1)]


def holes(d: int, s: int) -> list[int]:
    """The guaranteed unattained values just below the top of the (d, s)-range.

    Valid for ``7 <= d//2 + 1 <= s <= d - 4``; outside that window the
    statement is silent, so an empty list is returned with a warning.
    """
    if not (7 <= d // 2 + 1 <= s <= d - 4):
        warnings.warn(
            f"hole rule does not apply for (d={d}, s={s}); returning no holes",
            stacklevel=2,
        )
        return []
    top = closed_max_genus(d, s)
    return [top - i for i in range(d - s - 3, 0, -1)]


class GapCertificate(NamedTuple):
    """Why one integer cannot be the genus of an aCM curve of degree ``d``.

    ``reason`` is ``"between-ranges"`` or ``"hole-always-gap"`` for the two
    closed-form rules (reproducible from formulas alone) and ``"searched"``
    for values ruled out by exhausting the relevant search trees.
    """

    value: int
    reason: str
    s: Optional[int] = None
    i: Optional[int] = None


def certified_gaps(d: int) -> list[GapCertificate]:
    """All gaps certified by closed formulas, deduplicated and sorted.

    Combines the separated-range rule with the hole values that fall
    strictly below the next range's minimum.  The separated lengths form an
    upward-closed tail of 2..d-1, so the between-range intervals are also
    exactly the integers covered by no range at all; the per-degree
    invariant tests recompute that complement from the exact range endpoints
    and check it stays inside this certificate set.
    """
    if d <= 2:
        return []
    by_value: dict[int, GapCertificate] = {}

    for s in sorted(separated_after(d)):
        top = closed_max_genus(d, s)  # separated lengths satisfy s >= d//2 + 1
        for value in range(top + 1, min_genus(s + 1)):
            by_value.setdefault(value, GapCertificate(value, "between-ranges", s=s))

    if d // 2 + 1 >= 7:
        for s in range(d // 2 + 1, d - 3):
            top = closed_max_genus(d, s)
            for i in range(1, d - s - 2):
                if s - 1 - binomial(d - s, 2) + i > 0:
                    by_value.setdefault(top - i, GapCertificate(top - i, "hole-always-gap", s=s, i=i))

    return [by_value[v] for v in sorted(by_value)]


def range_complement(d: int) -> list[int]:
    """Integers of [0, C(d-1,2)] inside no (d, s)-range, from exact endpoints.

    Diagnostic counterpart of the closed-form between-range certificates.
    """
    uncovered: list[int] = []
    reach = -1
    for lo, hi in sorted((row.min_genus, row.max_genus) for row in range_table(d)):
        if lo > reach + 1:
            uncovered.extend(range(reach + 1, lo))
        reach = max(reach, hi)
    uncovered.extend(range(reach + 1, binomial(d - 1, 2) + 1))
    return uncovered


def clear_range_caches():
    with _max_lock:
        _max_cache.clear()
