"""Hermitian matrix functions, Cholesky factors and checked inverses."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

__all__ = [
    "NotPositiveDefiniteError",
    "SingularMatrixError",
    "IllConditionedWarning",
    "HermitianFactor",
    "hermitian_factor",
    "hermitian_sqrt",
    "hermitian_inv_sqrt",
    "cholesky_upper",
    "checked_inverse",
]

PSD_CLAMP = 1e-10
HERMITIAN_TOL = 1e-12
PD_FLOOR = 1e-14
COND_WARN = 1e12


class NotPositiveDefiniteError(np.linalg.LinAlgError):
    """Raised when a matrix expected to be PD/PSD is not."""


class SingularMatrixError(np.linalg.LinAlgError):
    pass


class IllConditionedWarning(RuntimeWarning):
    pass


@dataclass(frozen=True)
class HermitianFactor:
    """Eigendecomposition ``A = V diag(w) V^H`` with ``w`` descending."""

    source: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T

    def apply(self, fn) -> np.ndarray:
        """Matrix function ``V diag(fn(w)) V^H``."""
        v = self.eigenvectors
        return (v * fn(self.eigenvalues)) @ v.conj().T


def _check_square(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def hermitian_factor(a) -> HermitianFactor:
    a = _check_square(a)
    scale = np.linalg.norm(a, 2) if a.size else 0.0
    skew = np.linalg.norm(a - a.conj().T, 2) if a.size else 0.0
    if skew > HERMITIAN_TOL * max(scale, np.finfo(float).tiny):
        raise ValueError(f"matrix is not Hermitian (skew norm {skew:.3e}, norm {scale:.3e})")
    herm = 0.5 * (a + a.conj().T)
    w, v = np.linalg.eigh(herm)
    # eigh returns ascending; stable reverse keeps ties in original order
    order = np.argsort(-w, kind="stable")
    return HermitianFactor(a, w[order], v[:, order])


def hermitian_sqrt(a) -> np.ndarray:
    """Unique PSD square root ``S`` with ``S S^H = A``.

    Eigenvalues down to ``-1e-10 * ||A||`` are clamped to zero; anything more
    negative raises :class:`NotPositiveDefiniteError`.
    """
    fac = hermitian_factor(a)
    w = fac.eigenvalues
    scale = max(abs(w[0]), abs(w[-1])) if w.size else 0.0
    if w.size and w[-1] < -PSD_CLAMP * scale:
        raise NotPositiveDefiniteError(
            f"matrix is not PSD: eigenvalue {w[-1]:.6e} below clamp {-PSD_CLAMP * scale:.3e}"
        )
    return fac.apply(lambda lam: np.sqrt(np.clip(lam, 0.0, None)))


def hermitian_inv_sqrt(a) -> np.ndarray:
    """Hermitian ``W = A^{-1/2}`` so that ``W A W^H = I``."""
    fac = hermitian_factor(a)
    w = fac.eigenvalues
    if not w.size:
        return np.zeros_like(np.asarray(a))
    if w[-1] <= PD_FLOOR * abs(w[0]):
        raise NotPositiveDefiniteError(
            f"matrix is singular or not PD: smallest eigenvalue {w[-1]:.6e}, largest {w[0]:.6e}"
        )
    return fac.apply(lambda lam: 1.0 / np.sqrt(lam))


def cholesky_upper(a) -> np.ndarray:
    """Upper-triangular ``U`` with ``U^H U = A`` and real positive diagonal."""
    a = _check_square(a)
    complex_input = np.iscomplexobj(a)
    potrf = sla.lapack.zpotrf if complex_input else sla.lapack.dpotrf
    u, info = potrf(np.array(a, dtype=complex if complex_input else float), lower=0, clean=1)
    if info > 0:
        raise NotPositiveDefiniteError(f"Cholesky failed: leading minor {info} (pivot index {info - 1}) not PD")
    if info < 0:
        raise ValueError(f"illegal argument {-info} passed to potrf")
    return u


def checked_inverse(a, *, label: str = "", rtol: float = 1e-10) -> np.ndarray:
    """Inverse by partial-pivot LU with a residual check.

    Warns with :class:`IllConditionedWarning` when the condition number
    exceeds 1e12; ``label`` (usually the frequency) is carried into messages.
    """
    a = _check_square(a)
    n = a.shape[0]
    where = f" at {label}" if label else ""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", sla.LinAlgWarning)
        try:
            lu, piv = sla.lu_factor(a, check_finite=True)
        except (ValueError, np.linalg.LinAlgError) as exc:
            raise SingularMatrixError(f"cannot factor matrix{where}: {exc}") from exc
        if np.any(np.diag(lu) == 0):
            raise SingularMatrixError(f"matrix is singular{where}")
        inv = sla.lu_solve((lu, piv), np.eye(n, dtype=np.result_type(a, float)))
    cond = np.linalg.norm(a, 1) * np.linalg.norm(inv, 1)
    if not np.isfinite(cond):
        raise SingularMatrixError(f"matrix is singular{where}")
    if cond > COND_WARN:
        warnings.warn(f"coupling matrix condition number {cond:.3e}{where}", IllConditionedWarning, stacklevel=2)
    resid = np.linalg.norm(a @ inv - np.eye(n)) / np.sqrt(n)
    if resid > max(rtol, 10 * np.finfo(float).eps * cond):
        raise SingularMatrixError(f"inverse residual {resid:.3e} too large{where} (cond {cond:.3e})")
    return inv
