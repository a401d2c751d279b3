"""JSON encoding helpers for report documents.

Complex matrices are encoded as nested [re, im] pairs; all floats are
rounded to 12 significant digits so emitted reports diff stably.
"""

from __future__ import annotations

import math

import numpy as np


def round_sig(x: float, sig: int = 12) -> float:
    if x is None or not math.isfinite(x):
        return x
    return float(f"{x:.{sig}g}")


def matrix_to_json(m: np.ndarray, sig: int = 12) -> list:
    return [
        [[round_sig(float(z.real), sig), round_sig(float(z.imag), sig)] for z in row]
        for row in np.asarray(m, dtype=np.complex128)
    ]


def matrix_from_json(data) -> np.ndarray:
    return np.array(
        [[complex(re, im) for re, im in row] for row in data], dtype=np.complex128
    )
