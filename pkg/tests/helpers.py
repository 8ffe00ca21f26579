import numpy as np


def near_equal(a, b, tol):
    return np.allclose(a, b, rtol=0.0, atol=tol)


def assert_state_equal(a, b, tol, up_to_phase=False):
    """Compare two amplitude vectors (or StateVectors) entry by entry."""
    a = np.asarray(getattr(a, "amplitudes", a))
    b = np.asarray(getattr(b, "amplitudes", b))
    if up_to_phase:
        k = np.argmax(np.abs(b))
        if abs(a[k]) > 0.0:
            a = a * (b[k] / a[k]) / abs(b[k] / a[k])
    err = np.max(np.abs(a - b))
    assert err < tol, (
        "States don't coincide.\n"
        + f"Expected:  {np.array2string(b, precision=6)}\n"
        + f"Computed:  {np.array2string(a, precision=6)}\n\n"
        + f"max error: {err:.16e}"
    )


def assert_density_valid(rho, tol=1.0e-10):
    m = rho.entries
    assert np.max(np.abs(m - m.conj().T)) < tol
    assert abs(np.trace(m) - 1.0) < tol
    assert np.min(np.linalg.eigvalsh((m + m.conj().T) / 2)) >= -1.0e-9
