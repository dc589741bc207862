"""Canonical enumeration helpers.

All deterministic tie-breaking in the library flows through these
functions: elements carry the enumeration order they were constructed
with, subsets are ranked by (size, lexicographic index tuple), and the
bitmask helpers let hot loops run on ints while the public API speaks
frozensets.
"""

from itertools import combinations


def bits(mask):
    """Indices of the set bits of ``mask``, ascending."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def mask_of(items, index):
    m = 0
    for x in items:
        m |= 1 << index[x]
    return m


def unmask(mask, universe):
    return frozenset(universe[i] for i in bits(mask))


def set_key(s, index):
    """Canonical sort key of a subset: size first, then index tuple."""
    idx = sorted(index[x] for x in s)
    return (len(idx), tuple(idx))


def sorted_sets(sets, index):
    return tuple(sorted(sets, key=lambda s: set_key(s, index)))


def iter_subset_masks(n):
    """All subsets of ``range(n)`` as masks, by (size, lexicographic)."""
    for size in range(n + 1):
        for combo in combinations(range(n), size):
            m = 0
            for i in combo:
                m |= 1 << i
            yield m


def iter_submasks(mask):
    """All submasks of ``mask`` including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def iter_subsets(universe):
    """All subsets of an ordered universe as frozensets, canonical order."""
    n = len(universe)
    for m in iter_subset_masks(n):
        yield unmask(m, universe)
