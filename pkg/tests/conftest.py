"""Shared brute-force oracles for the test suite.

These deliberately avoid the library's DP machinery: every subsequence
is enumerated through subset bitmasks, so any agreement with the fast
paths is meaningful.
"""

from __future__ import annotations

from itertools import combinations_with_replacement

from zerosum.groups import AbelianGroup, Element, ZSequence, element_add


def brute_sigma(seq: ZSequence) -> dict[Element, int]:
    """Sum -> minimal realising length, over all nonempty subsequences.

    Walks every subset bitmask, reusing the sum of the mask with its
    lowest bit removed; no sharing with the library's staged tables.
    """
    group = seq.group
    out: dict[Element, int] = {}
    entries = seq.entries
    by_mask = [group.identity] * (1 << len(entries))
    for mask in range(1, 1 << len(entries)):
        low = mask & -mask
        acc = element_add(group, by_mask[mask ^ low], entries[low.bit_length() - 1])
        by_mask[mask] = acc
        k = mask.bit_count()
        if acc not in out or out[acc] > k:
            out[acc] = k
    return out


def brute_mz(seq: ZSequence) -> int | None:
    """Minimal nonempty zero-sum length, or None when zero-sum-free."""
    sig = brute_sigma(seq)
    return sig.get(seq.group.identity)


def all_multisets(group: AbelianGroup, length: int, nonzero: bool = False):
    """Every multiset of the given length over the group, as tuples."""
    pool = [g for g in group.elements() if not (nonzero and g == group.identity)]
    yield from combinations_with_replacement(pool, length)


def brute_davenport(group: AbelianGroup) -> int:
    """1 + the longest zero-sum-free multiset, by direct enumeration."""
    best = 0
    length = 1
    while True:
        hits = (
            combo
            for combo in all_multisets(group, length, nonzero=True)
            if brute_mz(ZSequence.from_iterable(group, combo)) is None
        )
        if next(hits, None) is None:
            break
        best = length
        length += 1
    return best + 1
