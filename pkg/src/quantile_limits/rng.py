"""Counter-based 64-bit pseudo-random generator (SplitMix64).

All randomness in this package flows through SplitMix64 with the standard
increment 0x9E3779B97F4A7C15 and finalizer constants 0xBF58476D1CE4E5B9 /
0x94D049BB133111EB.  Because the SplitMix64 state after ``i`` steps is
``seed + i * INCREMENT (mod 2**64)``, the i-th output is a pure function of
``(seed, i)``; streams are therefore random-access, trivially vectorizable,
and identical on every platform.  Reference outputs for seed 1234567:
6457827717110365317, 3203168211198807973, 9817491932198370423.

Uniform doubles are built from the top 53 bits of an output word as
``(word >> 11 + 0.5) * 2**-53``, which lies strictly inside (0, 1).
"""

import numpy as np

MASK64 = (1 << 64) - 1
INCREMENT = 0x9E3779B97F4A7C15

_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB


def mix64(x: int) -> int:
    """SplitMix64 finalizer: bijective avalanche mix of a 64-bit word."""
    z = x & MASK64
    z = ((z ^ (z >> 30)) * _MUL1) & MASK64
    z = ((z ^ (z >> 27)) * _MUL2) & MASK64
    return (z ^ (z >> 31)) & MASK64


def stream_word(seed: int, index: int) -> int:
    """The index-th (0-based) raw output of the SplitMix64 stream for seed."""
    return mix64(seed + (index + 1) * INCREMENT)


def derive_seed(master_seed: int, rep_index: int) -> int:
    """Stateless per-replication seed: mix of (master_seed, rep_index).

    Distinct replication indices give distinct 64-bit seeds (the counter map
    is injective mod 2**64 and the finalizer is a bijection), so replications
    may run in any order, or concurrently, without stream reuse.
    """
    if rep_index < 0:
        raise ValueError("rep_index must be >= 0")
    return stream_word(master_seed & MASK64, rep_index)


def _mix64_array(z: np.ndarray) -> np.ndarray:
    # uint64 arithmetic wraps mod 2**64, which is exactly what SplitMix64 needs
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MUL1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MUL2)
    return z ^ (z >> np.uint64(31))


def stream_words(seed: int, n: int, start: int = 0) -> np.ndarray:
    """Raw outputs ``start .. start+n-1`` of the stream, as a uint64 array."""
    counters = np.arange(start + 1, start + n + 1, dtype=np.uint64)
    counters = counters * np.uint64(INCREMENT) + np.uint64(seed & MASK64)
    return _mix64_array(counters)


def uniforms(seed: int, n: int, start: int = 0) -> np.ndarray:
    """n uniform draws in the open interval (0, 1), offset by ``start``.

    Draw i equals ``to_unit(stream_word(seed, start + i))``; generating a
    stream in slices yields the same values as one shot.
    """
    words = stream_words(seed, n, start)
    return ((words >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53


def to_unit(word: int) -> float:
    """Map one 64-bit word to the same (0, 1) double `uniforms` produces."""
    return ((word >> 11) + 0.5) * 2.0**-53


def uniform_matrix(seeds: np.ndarray, n: int, start: int = 0) -> np.ndarray:
    """Row r holds ``uniforms(seeds[r], n, start)``; one stream per seed."""
    seeds = np.asarray(seeds, dtype=np.uint64)
    counters = np.arange(start + 1, start + n + 1, dtype=np.uint64)
    words = _mix64_array(counters[None, :] * np.uint64(INCREMENT) + seeds[:, None])
    return ((words >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53
