import numpy as np
from sklearn.utils import check_array

from .exceptions import InputError


def check_values(X, name="X"):
    """Return ``X`` as a finite 1-D float array.

    Accepts a flat sequence or a single-column 2-D array, the two shapes a
    survey column usually arrives in.
    """
    arr = check_array(
        X,
        ensure_2d=False,
        dtype=np.float64,
        ensure_all_finite=True,
        input_name=name,
    )
    if arr.ndim == 2:
        if arr.shape[1] != 1:
            raise InputError(f"{name} must have exactly one column, got {arr.shape[1]}")
        arr = arr[:, 0]
    return arr
