"""Packed bit-row helpers for dense adjacency storage.

Rows are numpy uint64 arrays; bit ``i`` of a row lives in word ``i >> 6`` at
position ``i & 63`` (little-endian within each word, matching
``np.unpackbits(..., bitorder="little")`` on the uint8 view).
"""

import numpy as np

WORD = 64

_U1 = np.uint64(1)
_U63 = np.uint64(63)


def nwords(nbits: int) -> int:
    return (nbits + WORD - 1) // WORD


def zero_rows(nrows: int, nbits: int) -> np.ndarray:
    return np.zeros((nrows, nwords(nbits)), dtype=np.uint64)


def mask_from_indices(nbits: int, idx) -> np.ndarray:
    """One packed row with exactly the bits in ``idx`` set."""
    mask = np.zeros(nwords(nbits), dtype=np.uint64)
    idx = np.asarray(idx, dtype=np.int64)
    if idx.size:
        np.bitwise_or.at(mask, idx >> 6, _U1 << (idx.astype(np.uint64) & _U63))
    return mask


def range_mask(nbits: int, lo: int, hi: int) -> np.ndarray:
    """Packed row with bits lo..hi-1 set."""
    mask = np.zeros(nwords(nbits), dtype=np.uint64)
    if hi <= lo:
        return mask
    wlo, whi = lo >> 6, (hi - 1) >> 6
    mask[wlo : whi + 1] = ~np.uint64(0)
    mask[wlo] &= ~np.uint64(0) << np.uint64(lo & 63)
    tail = hi & 63
    if tail:
        mask[whi] &= ~np.uint64(0) >> np.uint64(64 - tail)
    return mask


def test_bit(row: np.ndarray, i: int) -> bool:
    return bool((row[i >> 6] >> np.uint64(i & 63)) & _U1)


def set_bit(row: np.ndarray, i: int) -> None:
    row[i >> 6] |= _U1 << np.uint64(i & 63)


def clear_bit(row: np.ndarray, i: int) -> None:
    row[i >> 6] &= ~(_U1 << np.uint64(i & 63))


def clear_diagonal(rows: np.ndarray, idx) -> None:
    """Clear bit v of row v for every v in idx (in place)."""
    idx = np.asarray(idx, dtype=np.int64)
    rows[idx, idx >> 6] &= ~(_U1 << (idx.astype(np.uint64) & _U63))


def popcount_rows(rows: np.ndarray) -> np.ndarray:
    """Number of set bits per row."""
    return np.bitwise_count(rows).sum(axis=-1, dtype=np.int64)


def popcount(row: np.ndarray) -> int:
    return int(np.bitwise_count(row).sum(dtype=np.int64))


def unpack(rows: np.ndarray, nbits: int) -> np.ndarray:
    """Packed rows to a boolean matrix (or a single row to a boolean vector)."""
    single = rows.ndim == 1
    mat = rows[None, :] if single else rows
    bits = np.unpackbits(mat.view(np.uint8), axis=1, bitorder="little")[:, :nbits]
    bits = bits.astype(bool)
    return bits[0] if single else bits


def pack(matrix: np.ndarray) -> np.ndarray:
    """Boolean matrix to packed rows (columns padded to a word multiple)."""
    matrix = np.asarray(matrix, dtype=bool)
    nbits = matrix.shape[1]
    pad = nwords(nbits) * 8  # bytes per row after packing
    packed = np.packbits(matrix, axis=1, bitorder="little")
    if packed.shape[1] < pad:
        packed = np.pad(packed, ((0, 0), (0, pad - packed.shape[1])))
    return packed.view(np.uint64)


def indices(row: np.ndarray, nbits: int) -> np.ndarray:
    """Sorted positions of the set bits of one packed row."""
    return np.nonzero(unpack(row, nbits))[0]
