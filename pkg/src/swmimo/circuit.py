"""Circuit-theoretic array model: impedances, coupling matrices, phase and scale.

Elements are canonical minimum scattering antennas bounded by a Chu sphere.
Self impedance uses the lowest-order Chu equivalent circuit; mutual
impedance is supplied by a pluggable :class:`ImpedanceModel`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Protocol

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT
from scipy.linalg import toeplitz

from .geometry import UlaConfig
from .numerics import checked_inverse

__all__ = [
    "ImpedanceModel",
    "ChuCmsModel",
    "ImpedanceSet",
    "REGIMES",
    "chu_self_impedance",
    "cms_mutual_impedance",
    "dipole_mutual_impedance",
    "regime_model",
    "array_impedance_matrix",
    "coupling_matrix_rx",
    "coupling_matrix_tx",
    "chu_phase",
    "alpha_scale",
    "passivity_margin",
    "build_impedance_set",
]

REGIMES = ("tight", "weak", "decoupled")


def chu_self_impedance(f: float, radius: float, r_rad: float = 1.0) -> complex:
    """Input impedance of the Chu TM01 equivalent circuit.

    Series capacitor ``C = a/(c R)`` feeding a shunt ``L = a R / c`` parallel
    to the radiation resistance ``R``. The real part is
    ``R (ka)^2 / (1 + (ka)^2)``.
    """
    if not (f > 0 and radius > 0 and r_rad > 0):
        raise ValueError("frequency, radius and radiation resistance must be positive")
    w = 2 * math.pi * f
    cap = radius / (SPEED_OF_LIGHT * r_rad)
    ind = radius * r_rad / SPEED_OF_LIGHT
    jwl = 1j * w * ind
    return 1.0 / (1j * w * cap) + jwl * r_rad / (r_rad + jwl)


def cms_mutual_impedance(f: float, distance: float, self_re: float) -> complex:
    """Default CMS coupling kernel ``self_re * (sinc(kd) + j cos(kd)/(kd))``."""
    if not distance > 0:
        raise ValueError("distance must be positive; use chu_self_impedance for the self term")
    kd = 2 * math.pi * f * distance / SPEED_OF_LIGHT
    return self_re * (math.sin(kd) / kd + 1j * math.cos(kd) / kd)


def dipole_mutual_impedance(f: float, distance: float, self_re: float) -> complex:
    """Colinear short-dipole coupling normalized to the element resistance.

    ``-3 self_re e^{-jx} (1/x^2 - j/x^3)`` with ``x = kd``. The real part
    ``3 self_re (sin x/x^3 - cos x/x^2)`` tends to ``self_re`` as ``x -> 0``;
    the reactive part grows like ``1/x^3``.
    """
    if not distance > 0:
        raise ValueError("distance must be positive; use chu_self_impedance for the self term")
    x = 2 * math.pi * f * distance / SPEED_OF_LIGHT
    if x < 1e-3:
        # series form of the real part; direct evaluation cancels catastrophically
        re = 1.0 - x * x / 10.0 + x**4 / 280.0
    else:
        re = 3.0 * (math.sin(x) / x**3 - math.cos(x) / x**2)
    im = 3.0 * (math.sin(x) / x**2 + math.cos(x) / x**3)
    return self_re * complex(re, im)


class ImpedanceModel(Protocol):
    radius: float

    def self_impedance(self, f: float) -> complex: ...

    def mutual_impedance(self, f: float, distance: float) -> complex: ...


@dataclass(frozen=True)
class ChuCmsModel:
    """Chu self impedance with a scaled mutual-coupling kernel.

    ``mutual_scale = 0`` gives the decoupled (conventional array) model.
    """

    radius: float
    r_rad: float = 1.0
    mutual_scale: float = 1.0
    kernel: Callable[[float, float, float], complex] = cms_mutual_impedance

    def self_impedance(self, f: float) -> complex:
        return chu_self_impedance(f, self.radius, self.r_rad)

    def mutual_impedance(self, f: float, distance: float) -> complex:
        if self.mutual_scale == 0:
            if not distance > 0:
                raise ValueError("distance must be positive")
            return 0j
        return self.mutual_scale * self.kernel(f, distance, self.self_impedance(f).real)


KERNELS = {"cms": cms_mutual_impedance, "dipole": dipole_mutual_impedance}


def regime_model(
    regime: str,
    spacing: float,
    *,
    r_rad: float = 1.0,
    radius: float | None = None,
    kernel: str | Callable = "cms",
) -> ChuCmsModel:
    """Impedance model for a named coupling regime.

    ``tight``: touching spheres, ``a = spacing/2``. ``weak``: ``a = spacing/20``
    with mutual terms scaled by ``(a / (spacing/2))**3``. ``decoupled``: the
    tight element with all mutual terms removed. ``radius`` overrides ``a``.
    """
    fn = KERNELS[kernel] if isinstance(kernel, str) else kernel
    if regime == "tight":
        a = spacing / 2 if radius is None else radius
        return ChuCmsModel(a, r_rad, 1.0, fn)
    if regime == "weak":
        a = spacing / 20 if radius is None else radius
        return ChuCmsModel(a, r_rad, (a / (spacing / 2)) ** 3, fn)
    if regime == "decoupled":
        a = spacing / 2 if radius is None else radius
        return ChuCmsModel(a, r_rad, 0.0, fn)
    raise ValueError(f"unknown coupling regime {regime!r}; expected one of {REGIMES}")


def array_impedance_matrix(array: UlaConfig, f: float, model: ImpedanceModel) -> np.ndarray:
    """Symmetric Toeplitz impedance matrix of a ULA at frequency ``f``."""
    first = np.empty(array.n_elements, dtype=complex)
    first[0] = model.self_impedance(f)
    for lag in range(1, array.n_elements):
        first[lag] = model.mutual_impedance(f, lag * array.spacing)
    # r=first explicitly: the default would conjugate and give a Hermitian matrix
    return toeplitz(first, first)


def coupling_matrix_rx(z_r, r_in: float, *, label: str = "") -> np.ndarray:
    """``P = (Z_R + R_in I)^{-1}``."""
    z_r = np.asarray(z_r)
    return checked_inverse(z_r + r_in * np.eye(z_r.shape[0]), label=label)


def coupling_matrix_tx(z_t, r: float, *, label: str = "") -> np.ndarray:
    """``Q = (Z_T + R I)^{-1}``."""
    z_t = np.asarray(z_t)
    return checked_inverse(z_t + r * np.eye(z_t.shape[0]), label=label)


def chu_phase(f: float, radius_t: float, radius_r: float) -> float:
    """Phase of the Chu circuit pair, in (0, pi]."""
    if f < 0:
        raise ValueError("frequency must be non-negative")
    k = 2 * math.pi * f / SPEED_OF_LIGHT
    return math.pi - math.atan(k * radius_t) - math.atan(k * radius_r)


def alpha_scale(r_in: float, lna_gain: float, z1_re: float, z2_re: float, phi: float) -> complex:
    if z1_re < 0 or z2_re < 0:
        raise ValueError("self resistances must be non-negative")
    return lna_gain * r_in * math.sqrt(z1_re * z2_re) * complex(math.cos(phi), math.sin(phi))


def passivity_margin(z) -> float:
    """Smallest eigenvalue of ``Re{Z}`` relative to its spectral norm."""
    re = np.real(np.asarray(z))
    re = 0.5 * (re + re.T)
    w = np.linalg.eigvalsh(re)
    norm = max(abs(w[0]), abs(w[-1]))
    return float(w[0] / norm) if norm > 0 else 0.0


@dataclass(frozen=True)
class ImpedanceSet:
    """Circuit quantities of a transmit/receive array pair at one frequency."""

    f: float
    z_t: np.ndarray
    z_r: np.ndarray
    p: np.ndarray
    q: np.ndarray
    phi: float
    z1_re: float
    z2_re: float
    alpha: complex


def build_impedance_set(
    f: float,
    tx: UlaConfig,
    rx: UlaConfig,
    tx_model: ImpedanceModel,
    rx_model: ImpedanceModel,
    *,
    r: float = 1.0,
    r_in: float = 1.0,
    lna_gain: float = 10.0,
) -> ImpedanceSet:
    label = f"f={f:.6g} Hz"
    z_t = array_impedance_matrix(tx, f, tx_model)
    z_r = array_impedance_matrix(rx, f, rx_model)
    p = coupling_matrix_rx(z_r, r_in, label=label)
    q = coupling_matrix_tx(z_t, r, label=label)
    phi = chu_phase(f, tx_model.radius, rx_model.radius)
    z1_re = float(z_t[0, 0].real)
    z2_re = float(z_r[0, 0].real)
    return ImpedanceSet(f, z_t, z_r, p, q, phi, z1_re, z2_re, alpha_scale(r_in, lna_gain, z1_re, z2_re, phi))
