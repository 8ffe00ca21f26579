import numpy as np


def apply_matrix(tensor: np.ndarray, matrix: np.ndarray, axes) -> np.ndarray:
    """Contract a 2^k x 2^k matrix into k axes of size 2 of `tensor`.

    `tensor` has shape (2, 2, ..., 2, *batch). The first entry of `axes` is the most
    significant bit of the matrix' row/column index. All other axes are left in place,
    so a single gate costs O(size of tensor) instead of building the full operator.
    """
    k = len(axes)
    m = np.asarray(matrix).reshape((2,) * (2 * k))
    out = np.tensordot(m, tensor, axes=(list(range(k, 2 * k)), list(axes)))
    return np.moveaxis(out, list(range(k)), list(axes))
