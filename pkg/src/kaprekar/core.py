"""Digit arithmetic and the Kaprekar step for D digits in base B.

Scalar functions work on Python ints and are exact for any admissible
``Params``. The ``*_array`` helpers evaluate the same quantities for every
state at once and back the dynamics index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DomainError

UINT64_MAX = 2**64 - 1


@dataclass(frozen=True)
class Params:
    base: int = 10
    digits: int = 4

    def __post_init__(self):
        if int(self.base) != self.base or self.base < 2:
            raise ConfigurationError(f"base must be an integer >= 2, got {self.base!r}")
        if int(self.digits) != self.digits or self.digits < 2:
            raise ConfigurationError(f"digits must be an integer >= 2, got {self.digits!r}")
        if self.base**self.digits > UINT64_MAX:
            raise ConfigurationError(
                f"base**digits = {self.base}**{self.digits} exceeds the 64-bit state capacity"
            )

    @property
    def n_values(self) -> int:
        """Size of the raw state space, base**digits (repdigits included)."""
        return self.base**self.digits

    @property
    def n_states(self) -> int:
        """|S_D|: states with at least two distinct digits."""
        return self.base**self.digits - self.base

    def fmt(self, value: int) -> str:
        """Zero-padded digit string, for tables and debugging."""
        return digit_string(digits_of(value, self), self.base)


_DIGIT_CHARS = "0123456789abcdefghijklmnopqrstuvwxyz"


def digit_string(digits, base: int) -> str:
    """'0495'-style text; dot-separated decimal digits when base > 36."""
    if base <= len(_DIGIT_CHARS):
        return "".join(_DIGIT_CHARS[d] for d in digits)
    return ".".join(str(d) for d in digits)


def _check_value(value: int, params: Params) -> int:
    value = int(value)
    if not 0 <= value < params.n_values:
        raise DomainError(
            f"state {value} outside [0, {params.n_values}) for base={params.base}, digits={params.digits}"
        )
    return value


def digits_of(value: int, params: Params) -> tuple[int, ...]:
    """Digits of ``value``, most significant first, left-padded with zeros to D."""
    value = _check_value(value, params)
    b = params.base
    out = [0] * params.digits
    for i in range(params.digits - 1, -1, -1):
        value, out[i] = divmod(value, b)
    return tuple(out)


def value_of(digits, params: Params) -> int:
    v = 0
    for d in digits:
        v = v * params.base + d
    return v


def _digit_counts(value: int, params: Params) -> list[int]:
    counts = [0] * params.base
    for d in digits_of(value, params):
        counts[d] += 1
    return counts


def desc_asc(value: int, params: Params) -> tuple[int, int]:
    """Integers formed from the digits sorted non-increasing and non-decreasing.

    Counting sort over the digit alphabet. Leading zeros of the ascending
    arrangement vanish numerically (100 -> asc 1 for D=3).
    """
    counts = _digit_counts(value, params)
    b = params.base
    asc = 0
    for d in range(b):
        for _ in range(counts[d]):
            asc = asc * b + d
    desc = 0
    for d in range(b - 1, -1, -1):
        for _ in range(counts[d]):
            desc = desc * b + d
    return desc, asc


def kaprekar_step(value: int, params: Params) -> int:
    desc, asc = desc_asc(value, params)
    return desc - asc


def is_trivial(value: int, params: Params) -> bool:
    """True for repdigits (including 0), which map to 0 and are excluded from S_D."""
    ds = digits_of(value, params)
    return all(d == ds[0] for d in ds)


# ---------------------------------------------------------------------------
# whole-state-space versions


def digit_matrix(params: Params, values=None) -> np.ndarray:
    """(n, D) array of digits, most significant first, by repeated division.

    ``values`` defaults to every state 0 .. base**D - 1.
    """
    if values is None:
        values = np.arange(params.n_values, dtype=np.uint64)
    v = np.asarray(values, dtype=np.uint64).copy()
    dtype = np.uint8 if params.base <= 256 else np.uint64
    out = np.empty((v.shape[0], params.digits), dtype=dtype)
    b = np.uint64(params.base)
    for i in range(params.digits - 1, -1, -1):
        out[:, i] = v % b
        v //= b
    return out


def _place_values(params: Params) -> np.ndarray:
    return np.array(
        [params.base ** (params.digits - 1 - i) for i in range(params.digits)], dtype=np.uint64
    )


def desc_asc_array(sorted_ascending: np.ndarray, params: Params) -> tuple[np.ndarray, np.ndarray]:
    """desc/asc values from a row-wise ascending digit matrix."""
    pv = _place_values(params)
    s = sorted_ascending.astype(np.uint64)
    asc = s @ pv
    desc = s[:, ::-1] @ pv
    return desc, asc


def successor_array(params: Params, sorted_ascending: np.ndarray | None = None) -> np.ndarray:
    """succ[x] = K(x) for every x < base**D."""
    if sorted_ascending is None:
        sorted_ascending = np.sort(digit_matrix(params), axis=1)
    desc, asc = desc_asc_array(sorted_ascending, params)
    return desc - asc


def trivial_mask(sorted_ascending: np.ndarray) -> np.ndarray:
    return sorted_ascending[:, 0] == sorted_ascending[:, -1]
