"""Explicit linear-map composition of the block recursion (test oracle)."""

import numpy as np


def composed_covariance(gen, n_blocks):
    """Covariance of the stacked output ``[h_1; ...; h_K]`` under unit white input.

    Each block is written as ``h_k = sum_j M_kj u_j`` and ``Cov = M M^H``.
    """
    n = gen.block_len
    m = np.zeros((n_blocks * n, n_blocks * n), dtype=complex)
    m[:n, :n] = gen.lower1
    for k in range(1, n_blocks):
        rows = slice(k * n, (k + 1) * n)
        prev = slice((k - 1) * n, k * n)
        m[rows, : k * n] = gen.transition @ m[prev, : k * n]
        m[rows, k * n : (k + 1) * n] = gen.lower3
    return m @ m.conj().T
