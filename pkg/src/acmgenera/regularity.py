"""Minimal Castelnuovo-Mumford regularity of a curve with Cohen-Macaulay postulation.

For an aCM curve the regularity equals the length of its h-vector, which is
the postulation regularity plus 2.  The minimum over all curves of degree
``d`` and genus ``g`` is therefore the shortest length of an O-sequence with
that multiplicity and genus, found by scanning the lengths upward with the
pruned genus search.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import UnattainableGenusError
from .ranges import max_genus, min_genus
from .search import genus_search
from .trees import TreeFamily


@dataclass(frozen=True)
class RegularityAnswer:
    d: int
    g: int
    min_regularity: int  # length of the shortest witness
    witness: tuple[int, ...]
    postulation_regularity: int  # min_regularity - 2


def min_acm_regularity(d: int, g: int) -> RegularityAnswer:
    """Smallest Castelnuovo-Mumford regularity over aCM curves of degree d, genus g.

    Raises :class:`UnattainableGenusError` with kind ``"out-of-range"`` when
    ``g`` exceeds C(d-1,2) and kind ``"gap"`` when ``g`` lies in the range
    but is not an aCM genus of degree ``d``.
    """
    if d < 1 or g < 0:
        raise ValueError("need d >= 1 and g >= 0")
    if g > comb(d - 1, 2):
        raise UnattainableGenusError(
            f"genus {g} exceeds C({d}-1, 2) = {comb(d - 1, 2)}", kind="out-of-range"
        )
    if d == 1:
        return RegularityAnswer(1, 0, 1, (1,), -1)
    for s in range(2, d + 1):
        if min_genus(s) > g:
            break
        if g > max_genus(d, s):
            continue
        witness = genus_search(g, TreeFamily.fixed_both(d, s))
        if witness is not None:
            return RegularityAnswer(d, g, s, witness, s - 2)
    raise UnattainableGenusError(
        f"genus {g} is a gap for degree {d}: no O-sequence attains it", kind="gap"
    )
