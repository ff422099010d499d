"""Counter-based random numbers for order-independent parallel simulation.

Every uniform consumed anywhere in the package is a pure function of
(master_seed, path_index, draw_index), built from the SplitMix64 finalizer
over two Weyl sequences with distinct odd strides.  Path i therefore owns a
deterministic stream that can be generated in any order, in any chunking,
on any worker, and the ensemble output never depends on scheduling.

The generator is fixed per release; bit-exact streams are promised for a
given version of this module, not across versions.
"""
from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1

# Weyl strides: golden-ratio stride for path keys, a second odd constant for
# the per-path draw counter so the two levels never share an orbit.
KEY_STRIDE = 0x9E3779B97F4A7C15
DRAW_STRIDE = 0xD1B54A32D192ED03

_U64_KEY_STRIDE = np.uint64(KEY_STRIDE)
_U64_DRAW_STRIDE = np.uint64(DRAW_STRIDE)
_TO_UNIT = 2.0 ** -53


def mix64(z: int) -> int:
    """SplitMix64 finalizer: a 64-bit bijection with strong avalanche."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def path_key(master_seed: int, path_index: int) -> int:
    """Deterministic 64-bit key for one simulation path."""
    if path_index < 0:
        raise ValueError("path_index must be nonnegative")
    return mix64(master_seed + (path_index + 1) * KEY_STRIDE)


def uniform_draw(key: int, draw_index: int) -> float:
    """The draw_index-th uniform in [0,1) of the stream owned by key.

    draw_index is 1-based: draw j decides step j of a path.
    """
    z = mix64(key + draw_index * DRAW_STRIDE)
    return (z >> 11) * _TO_UNIT


def path_keys(master_seed: int, start: int, count: int) -> np.ndarray:
    """Vector of path keys for path indices start..start+count-1."""
    idx = np.arange(start + 1, start + 1 + count, dtype=np.uint64)
    z = np.uint64(master_seed & MASK64) + idx * _U64_KEY_STRIDE
    return _mix64_vec(z)


def uniform_block(keys: np.ndarray, first_draw: int, count: int) -> np.ndarray:
    """Uniforms for draws first_draw..first_draw+count-1 of several paths.

    Returns shape (count, len(keys)); row r column i equals
    uniform_draw(keys[i], first_draw + r) bit for bit.
    """
    draws = np.arange(first_draw, first_draw + count, dtype=np.uint64)
    z = keys[np.newaxis, :] + draws[:, np.newaxis] * _U64_DRAW_STRIDE
    z = _mix64_vec(z)
    return (z >> np.uint64(11)).astype(np.float64) * _TO_UNIT


def _mix64_vec(z: np.ndarray) -> np.ndarray:
    # mutates z in place; both callers hand over freshly built temporaries
    z ^= z >> np.uint64(30)
    z *= np.uint64(0xBF58476D1CE4E5B9)
    z ^= z >> np.uint64(27)
    z *= np.uint64(0x94D049BB133111EB)
    z ^= z >> np.uint64(31)
    return z
