"""Numpy implementations of the hot loops used by the random-mosaic code.

Same signatures and results as the compiled ``_ckernels`` module.
"""

import numpy as np

SHIFT_RADIX = 5  # shifts after re-anchoring lie in [-2, 2]


def encode(base, shift):
    """Pack (point id, lattice shift) pairs into single integers.

    The packed order is the lexicographic order on (id, sz, sy, sx), which is
    preserved by translating every shift by the same vector.
    """
    s = shift + 2
    return base * 125 + s[..., 0] + 5 * s[..., 1] + 25 * s[..., 2]


def canonical_simplices(base, shift):
    """Translation-canonical form of periodic simplices.

    base: (T, k) int64 point ids; shift: (T, k, 3) int64 lattice shifts.
    The anchor of a simplex is its vertex with the smallest packed code.
    Returns the sorted packed codes after translating the anchor to shift 0,
    and a mask of rows whose anchor already has shift 0.
    """
    base = np.asarray(base, dtype=np.int64)
    shift = np.asarray(shift, dtype=np.int64)
    raw = encode(base, shift)
    a = np.argmin(raw, axis=1)
    rows = np.arange(base.shape[0])
    anchor_shift = shift[rows, a]
    keep = ~np.any(anchor_shift != 0, axis=1)
    codes = encode(base, shift - anchor_shift[:, None, :])
    codes.sort(axis=1)
    return codes, keep


def insphere_count(centers, r2, points, rel_tol):
    """For each sphere, count points strictly inside |p - c|^2 < r2 (1 - rel_tol)."""
    centers = np.asarray(centers, dtype=np.float64)
    points = np.asarray(points, dtype=np.float64)
    r2 = np.asarray(r2, dtype=np.float64) * (1.0 - rel_tol)
    out = np.zeros(len(centers), dtype=np.int64)
    step = max(1, 2_000_000 // max(1, len(points)))
    for s in range(0, len(centers), step):
        c = centers[s:s + step]
        d2 = ((points[None, :, :] - c[:, None, :]) ** 2).sum(axis=2)
        out[s:s + step] = (d2 < r2[s:s + step, None]).sum(axis=1)
    return out
