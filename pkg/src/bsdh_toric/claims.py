"""Published classifications of a few small toric limits.

Each entry pins a word in a named root system together with what the
literature asserts about it. Claims are matched by Bott matrix, so a word
that produces the same pairing data in another root system (for example
type A of higher rank) is checked against the same claim.
"""

from . import bott_fan, root_data

# (family, rank, word, {property: claimed value})
PUBLISHED = [
    ("B", 2, (1, 2), {"condition_I": True}),
    ("B", 2, (2, 1), {"condition_I": False, "condition_II": True}),
    ("G2", 2, (2, 1), {"condition_I": True}),
    ("G2", 2, (1, 2), {"condition_I": False, "condition_II": False}),
    ("A", 3, (1, 3, 1), {"condition_I": False, "condition_II": True}),
    ("A", 3, (1, 1), {"condition_I": False, "fano": False}),
    ("A", 3, (1, 2, 1), {"fano": False, "weak_fano": True}),
    ("B", 2, (1, 2, 1), {"weak_fano": False}),
]


def _key(M):
    return tuple(tuple(row[j] for j in range(i + 1, M.r)) for i, row in enumerate(M.entries))


_INDEX = None


def lookup(M: bott_fan.BottMatrix):
    """Return ``[(description, {property: value}), ...]`` for claims matching M."""
    global _INDEX
    if _INDEX is None:
        _INDEX = {}
        for family, rank, word, props in PUBLISHED:
            gcm = root_data.builtin_cartan(family, rank)
            desc = f"{family}{rank} word {list(word)}"
            _INDEX.setdefault(_key(bott_fan.bott_matrix(gcm, word)), []).append((desc, props))
    return _INDEX.get(_key(M), [])
