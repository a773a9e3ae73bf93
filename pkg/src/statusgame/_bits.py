"""Packed-bitset helpers shared by the ledger update and the graph metrics."""

import numba
import numpy as np


@numba.njit(cache=True)
def popcount(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (x * np.uint64(0x0101010101010101)) >> np.uint64(56)


def bitsets(adjacency: np.ndarray) -> np.ndarray:
    """Row i packed little-endian into uint64 words: bit j set iff a_ij."""
    adj = np.asarray(adjacency, dtype=bool)
    n = len(adj)
    words = max(1, (n + 63) // 64)
    padded = np.zeros((n, words * 64), dtype=bool)
    padded[:, :n] = adj
    return np.packbits(padded, axis=1, bitorder="little").view(np.uint64).reshape(n, words)
