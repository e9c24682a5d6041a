"""Deterministic base-2 Sobol sequence.

Direction numbers come from the published Joe & Kuo "new-joe-kuo-6" table
(primitive polynomial plus initial m values per dimension, here up to 64
dimensions).  Points are generated in Gray-code order at 30-bit resolution,
which reproduces the standard unscrambled sequence bit for bit.  Index 0 is
the all-zeros point; callers that need space-filling samples skip it.
"""

from __future__ import annotations

import numpy as np

BITS = 30
MAX_DIMENSION = 64
MAX_INDEX = 2**BITS

# (polynomial, initial m values) per dimension.  The polynomial is encoded
# with leading and trailing coefficient bits, e.g. x^3 + x + 1 -> 0b1011.
# Dimension 1 is the van der Corput sequence (all m_i = 1).
_JOE_KUO: tuple[tuple[int, tuple[int, ...]], ...] = (
    (1, (1,)),
    (3, (1,)),
    (7, (1, 3)),
    (11, (1, 3, 1)),
    (13, (1, 1, 1)),
    (19, (1, 1, 3, 3)),
    (25, (1, 3, 5, 13)),
    (37, (1, 1, 5, 5, 17)),
    (41, (1, 1, 5, 5, 5)),
    (47, (1, 1, 7, 11, 19)),
    (55, (1, 1, 5, 1, 1)),
    (59, (1, 1, 1, 3, 11)),
    (61, (1, 3, 5, 5, 31)),
    (67, (1, 3, 3, 9, 7, 49)),
    (91, (1, 1, 1, 15, 21, 21)),
    (97, (1, 3, 1, 13, 27, 49)),
    (103, (1, 1, 1, 15, 7, 5)),
    (109, (1, 3, 1, 15, 13, 25)),
    (115, (1, 1, 5, 5, 19, 61)),
    (131, (1, 3, 7, 11, 23, 15, 103)),
    (137, (1, 3, 7, 13, 13, 15, 69)),
    (143, (1, 1, 3, 13, 7, 35, 63)),
    (145, (1, 3, 5, 9, 1, 25, 53)),
    (157, (1, 3, 1, 13, 9, 35, 107)),
    (167, (1, 3, 1, 5, 27, 61, 31)),
    (171, (1, 1, 5, 11, 19, 41, 61)),
    (185, (1, 3, 5, 3, 3, 13, 69)),
    (191, (1, 1, 7, 13, 1, 19, 1)),
    (193, (1, 3, 7, 5, 13, 19, 59)),
    (203, (1, 1, 3, 9, 25, 29, 41)),
    (211, (1, 3, 5, 13, 23, 1, 55)),
    (213, (1, 3, 7, 3, 13, 59, 17)),
    (229, (1, 3, 1, 3, 5, 53, 69)),
    (239, (1, 1, 5, 5, 23, 33, 13)),
    (241, (1, 1, 7, 7, 1, 61, 123)),
    (247, (1, 1, 7, 9, 13, 61, 49)),
    (253, (1, 3, 3, 5, 3, 55, 33)),
    (285, (1, 3, 1, 15, 31, 13, 49, 245)),
    (299, (1, 3, 5, 15, 31, 59, 63, 97)),
    (301, (1, 3, 1, 11, 11, 11, 77, 249)),
    (333, (1, 3, 1, 11, 27, 43, 71, 9)),
    (351, (1, 1, 7, 15, 21, 11, 81, 45)),
    (355, (1, 3, 7, 3, 25, 31, 65, 79)),
    (357, (1, 3, 1, 1, 19, 11, 3, 205)),
    (361, (1, 1, 5, 9, 19, 21, 29, 157)),
    (369, (1, 3, 7, 11, 1, 33, 89, 185)),
    (391, (1, 3, 3, 3, 15, 9, 79, 71)),
    (397, (1, 3, 7, 11, 15, 39, 119, 27)),
    (425, (1, 1, 3, 1, 11, 31, 97, 225)),
    (451, (1, 1, 1, 3, 23, 43, 57, 177)),
    (463, (1, 3, 7, 7, 17, 17, 37, 71)),
    (487, (1, 3, 1, 5, 27, 63, 123, 213)),
    (501, (1, 1, 3, 5, 11, 43, 53, 133)),
    (529, (1, 3, 5, 5, 29, 17, 47, 173, 479)),
    (539, (1, 3, 3, 11, 3, 1, 109, 9, 69)),
    (545, (1, 1, 1, 5, 17, 39, 23, 5, 343)),
    (557, (1, 3, 1, 5, 25, 15, 31, 103, 499)),
    (563, (1, 1, 1, 11, 11, 17, 63, 105, 183)),
    (601, (1, 1, 5, 11, 9, 29, 97, 231, 363)),
    (607, (1, 1, 5, 15, 19, 45, 41, 7, 383)),
    (617, (1, 3, 7, 7, 31, 19, 83, 137, 221)),
    (623, (1, 1, 1, 3, 23, 15, 111, 223, 83)),
    (631, (1, 1, 5, 13, 31, 15, 55, 25, 161)),
    (637, (1, 1, 3, 13, 25, 47, 39, 87, 257)),
)


def _direction_integers(dim: int) -> np.ndarray:
    """Direction numbers for dims 0..dim-1, left-aligned to BITS bits."""
    v = np.zeros((dim, BITS), dtype=np.int64)
    for d in range(dim):
        if d == 0:
            m = [1] * BITS
        else:
            poly, m_init = _JOE_KUO[d]
            s = poly.bit_length() - 1
            m = list(m_init[:s])
            while len(m) < BITS:
                j = len(m)
                new = m[j - s] ^ (m[j - s] << s)
                for k in range(1, s):
                    if (poly >> (s - k)) & 1:
                        new ^= m[j - k] << k
                m.append(new)
        for i in range(BITS):
            v[d, i] = m[i] << (BITS - 1 - i)
    return v


class SobolSequence:
    """Random-access generator over the unscrambled sequence.

    The same dimension always yields the same coordinates, so disjoint
    streams are made by reading disjoint index ranges.
    """

    def __init__(self, dim: int):
        if not 1 <= dim <= MAX_DIMENSION:
            raise ValueError(f"dimension must be in [1, {MAX_DIMENSION}], got {dim}")
        self.dim = dim
        self._v = _direction_integers(dim)

    def points(self, n: int, start: int = 0) -> np.ndarray:
        """Points at indices start..start+n-1, shape (n, dim), values in [0, 1)."""
        if n < 0 or start < 0 or start + n > MAX_INDEX:
            raise ValueError(f"index range [{start}, {start + n}) out of bounds")
        idx = np.arange(start, start + n, dtype=np.int64)
        gray = idx ^ (idx >> 1)
        acc = np.zeros((n, self.dim), dtype=np.int64)
        for bit in range(BITS):
            mask = (gray >> bit) & 1
            if mask.any():
                acc ^= mask[:, None] * self._v[:, bit][None, :]
        return acc / float(MAX_INDEX)
