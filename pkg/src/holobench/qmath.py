"""Small dense complex linear algebra for qubit and qutrit propagators.

States are 1-d complex numpy arrays, operators are 2x2 or 3x3 complex arrays.
Units follow hbar = 1, so a Hamiltonian carries angular frequency and
``expm_unitary(H, t)`` returns ``exp(-i H t)``.

Two independent routes to the propagator are provided:

* :func:`expm_unitary` -- spectral decomposition.  The 2x2 case uses the
  closed Pauli form; the 3x3 case extracts eigenvalues from the characteristic
  cubic with the trigonometric formula, then refines them by Rayleigh quotients.
* :func:`expm_series` -- scaling and squaring of a truncated Taylor series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

HERMITIAN_TOL = 1e-12
NORM_TOL = 1e-12
UNITARY_TOL = 1e-10
DEGENERACY_GAP = 1e-9

_ANGLE_SLACK = 1e-12


class ValidationError(ValueError):
    """Input violates a documented precondition."""


class NumericInvariantError(ArithmeticError):
    """A computed result breaks a numerical invariant (e.g. unitarity)."""


@dataclass(frozen=True)
class BlochAngles:
    """Polar angle ``alpha`` in [0, pi] and azimuth ``beta`` in [0, 2 pi)."""

    alpha: float
    beta: float

    def __post_init__(self):
        a, b = float(self.alpha), float(self.beta)
        if not (math.isfinite(a) and math.isfinite(b)):
            raise ValidationError(f"Bloch angles must be finite, got ({a}, {b})")
        if not -_ANGLE_SLACK <= a <= math.pi + _ANGLE_SLACK:
            raise ValidationError(f"alpha={a} outside [0, pi]")
        if not -_ANGLE_SLACK <= b < 2 * math.pi:
            raise ValidationError(f"beta={b} outside [0, 2 pi)")
        object.__setattr__(self, "alpha", min(max(a, 0.0), math.pi))
        object.__setattr__(self, "beta", max(b, 0.0))


def check_hermitian(H) -> np.ndarray:
    """Return ``H`` as a complex array, raising if it is not Hermitian.

    The tolerance is ``HERMITIAN_TOL`` relative to the largest entry (absolute
    below unit scale).  The error message names the worst offending pair.
    """
    H = np.asarray(H, dtype=complex)
    if H.shape not in ((2, 2), (3, 3)):
        raise ValidationError(f"expected a 2x2 or 3x3 matrix, got shape {H.shape}")
    if not np.all(np.isfinite(H)):
        raise ValidationError("matrix has non-finite entries")
    dev = np.abs(H - H.conj().T)
    i, j = np.unravel_index(np.argmax(dev), dev.shape)
    tol = HERMITIAN_TOL * max(1.0, float(np.max(np.abs(H))))
    if dev[i, j] > tol:
        raise ValidationError(
            f"matrix is not Hermitian: |H[{i},{j}] - conj(H[{j},{i}])| = {dev[i, j]:.3e}"
        )
    return H


def _check_duration(t) -> float:
    t = float(t)
    if not math.isfinite(t) or t < 0:
        raise ValidationError(f"duration must be finite and >= 0, got {t}")
    return t


def unitarity_defect(M) -> float:
    """Largest absolute entry of ``M^dagger M - I``."""
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {M.shape}")
    return float(np.max(np.abs(M.conj().T @ M - np.eye(M.shape[0]))))


def _ensure_unitary(U: np.ndarray, route: str) -> np.ndarray:
    defect = unitarity_defect(U)
    if defect > UNITARY_TOL:
        raise NumericInvariantError(f"unitarity violated by {route}: defect {defect:.3e}")
    return U


# -- 2x2 closed form ---------------------------------------------------------


def _expm_2x2(H: np.ndarray, t: float) -> np.ndarray:
    # H = h0 I + hx X + hy Y + hz Z with eigenvalues h0 +- |h|
    h0 = 0.5 * (H[0, 0].real + H[1, 1].real)
    hz = 0.5 * (H[0, 0].real - H[1, 1].real)
    hx = H[0, 1].real
    hy = -H[0, 1].imag
    r = math.sqrt(hx * hx + hy * hy + hz * hz)
    c = math.cos(r * t)
    s_over_r = t * float(np.sinc(r * t / math.pi))  # sin(r t) / r, finite at r = 0
    U = np.array(
        [
            [c - 1j * s_over_r * hz, -1j * s_over_r * (hx - 1j * hy)],
            [-1j * s_over_r * (hx + 1j * hy), c + 1j * s_over_r * hz],
        ]
    )
    return np.exp(-1j * h0 * t) * U


# -- 3x3 eigensolver ---------------------------------------------------------


def _det3(M: np.ndarray) -> complex:
    return (
        M[0, 0] * (M[1, 1] * M[2, 2] - M[1, 2] * M[2, 1])
        - M[0, 1] * (M[1, 0] * M[2, 2] - M[1, 2] * M[2, 0])
        + M[0, 2] * (M[1, 0] * M[2, 1] - M[1, 1] * M[2, 0])
    )


def _cubic_eigenvalues(H: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian 3x3 via the trigonometric cubic root."""
    q = np.trace(H).real / 3.0
    B = H - q * np.eye(3)
    p = math.sqrt(float(np.sum(np.abs(B) ** 2)) / 6.0)
    if p == 0.0:
        return np.full(3, q)
    r = min(1.0, max(-1.0, _det3(B / p).real / 2.0))
    angle = math.acos(r) / 3.0
    hi = q + 2.0 * p * math.cos(angle)
    lo = q + 2.0 * p * math.cos(angle + 2.0 * math.pi / 3.0)
    return np.array([lo, 3.0 * q - lo - hi, hi])


def _null_vector(M: np.ndarray) -> np.ndarray:
    # For a rank-2 matrix the bilinear cross product of two rows spans the kernel.
    scale = float(np.max(np.abs(M)))
    if scale > 0.0:
        M = M / scale
    candidates = [np.cross(M[0], M[1]), np.cross(M[0], M[2]), np.cross(M[1], M[2])]
    v = max(candidates, key=lambda c: float(np.vdot(c, c).real))
    n = np.linalg.norm(v)
    if n == 0.0:
        return np.array([1.0, 0.0, 0.0], dtype=complex)
    return v / n


def _eigh_2x2(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a, d, c = h[0, 0].real, h[1, 1].real, h[0, 1]
    mean, half = 0.5 * (a + d), 0.5 * (a - d)
    r = math.hypot(half, abs(c))
    if r == 0.0:
        return np.array([mean, mean]), np.eye(2, dtype=complex)
    # eigenvector for mean + r, in whichever algebraic form avoids cancellation
    if half >= 0:
        top = np.array([half + r, np.conj(c)])
    else:
        top = np.array([c, r - half])
    top = top / math.hypot(abs(top[0]), abs(top[1]))
    bottom = np.array([-np.conj(top[1]), np.conj(top[0])])
    return np.array([mean - r, mean + r]), np.column_stack([bottom, top])


def eigh3(H) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a 3x3 Hermitian matrix without LAPACK.

    The eigenvalue best separated from the other two is located on the
    characteristic cubic, its eigenvector is taken from a row cross product and
    refined once by its Rayleigh quotient.  The remaining pair is diagonalised
    exactly inside the orthogonal complement, so the returned eigenvectors are
    orthonormal even when that pair is close.

    Returns
    -------
    w : (3,) float array, ascending
    V : (3, 3) complex array whose columns are eigenvectors
    """
    H = check_hermitian(H)
    if H.shape != (3, 3):
        raise ValidationError("eigh3 expects a 3x3 matrix")
    lam = _cubic_eigenvalues(H)
    iso = lam[0] if lam[1] - lam[0] >= lam[2] - lam[1] else lam[2]

    v = _null_vector(H - iso * np.eye(3))
    iso = np.vdot(v, H @ v).real
    v = _null_vector(H - iso * np.eye(3))

    k = int(np.argmin(np.abs(v)))
    u = np.zeros(3, dtype=complex)
    u[k] = 1.0
    u = u - v * np.conj(v[k])
    u /= np.linalg.norm(u)
    w = np.conj(np.cross(v, u))
    w /= np.linalg.norm(w)

    P = np.column_stack([u, w])
    _, small = _eigh_2x2(P.conj().T @ H @ P)
    V = np.column_stack([v, P @ small])
    vals = np.einsum("ik,ij,jk->k", V.conj(), H, V).real
    order = np.argsort(vals)
    return vals[order], V[:, order]


def expm_unitary(H, t: float) -> np.ndarray:
    """``exp(-i H t)`` by spectral decomposition.

    Near-degenerate 3x3 spectra (gap below ``DEGENERACY_GAP`` relative to the
    matrix scale) are delegated to :func:`expm_series`.
    """
    H = check_hermitian(H)
    t = _check_duration(t)
    if H.shape == (2, 2):
        return _ensure_unitary(_expm_2x2(H, t), "expm_unitary")
    w, V = eigh3(H)
    scale = max(1.0, float(np.max(np.abs(w))))
    if np.min(np.diff(w)) < DEGENERACY_GAP * scale:
        return expm_series(H, t)
    U = (V * np.exp(-1j * w * t)) @ V.conj().T
    return _ensure_unitary(U, "expm_unitary")


def expm_series(H, t: float) -> np.ndarray:
    """``exp(-i H t)`` by scaling and squaring a truncated Taylor series."""
    H = check_hermitian(H)
    t = _check_duration(t)
    A = -1j * t * H
    norm = float(np.max(np.sum(np.abs(A), axis=1)))
    squarings = max(0, math.ceil(math.log2(norm / 0.25))) if norm > 0 else 0
    A = A / 2.0**squarings
    n = H.shape[0]
    term = np.eye(n, dtype=complex)
    total = term.copy()
    for k in range(1, 40):
        term = term @ A / k
        total = total + term
        if np.max(np.abs(term)) < 1e-18:
            break
    for _ in range(squarings):
        total = total @ total
    return _ensure_unitary(total, "expm_series")


# -- states ------------------------------------------------------------------


def bloch_states(alpha, beta) -> np.ndarray:
    """Vectorised ``cos(a/2)|0> + sin(a/2) e^{i b}|1>``; shape ``(..., 2)``."""
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    return np.stack(
        np.broadcast_arrays(np.cos(alpha / 2) + 0j, np.sin(alpha / 2) * np.exp(1j * beta)),
        axis=-1,
    )


def state_from_bloch(b: BlochAngles) -> np.ndarray:
    if not isinstance(b, BlochAngles):
        b = BlochAngles(*b)
    return bloch_states(b.alpha, b.beta)


def _check_state(s, name: str) -> np.ndarray:
    s = np.asarray(s, dtype=complex)
    if s.ndim != 1 or s.shape[0] not in (2, 3):
        raise ValidationError(f"{name} must be a dim-2 or dim-3 vector, got shape {s.shape}")
    err = abs(np.linalg.norm(s) - 1.0)
    if err > 1e-10:
        raise ValidationError(f"{name} is not normalised (|norm - 1| = {err:.3e})")
    return s


def fidelity(desired, actual) -> float:
    """Overlap probability ``|<desired|actual>|^2``."""
    desired = _check_state(desired, "desired")
    actual = _check_state(actual, "actual")
    if desired.shape != actual.shape:
        raise ValidationError(f"dimension mismatch: {desired.shape[0]} vs {actual.shape[0]}")
    return min(1.0, abs(np.vdot(desired, actual)) ** 2)


def embed_qubit(s) -> np.ndarray:
    """Append a zero auxiliary amplitude to a qubit state."""
    s = np.asarray(s, dtype=complex)
    if s.shape[-1] != 2:
        raise ValidationError(f"expected a qubit state, got trailing dim {s.shape[-1]}")
    return np.concatenate([s, np.zeros(s.shape[:-1] + (1,), dtype=complex)], axis=-1)
