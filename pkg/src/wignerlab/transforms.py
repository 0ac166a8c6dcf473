"""Stieltjes transforms of spectra and of the semicircle law.

Convention: m(z) = integral of (lambda - z)^{-1} dF(lambda) for Im z > 0,
so every transform here maps the upper half plane to itself (Herglotz).
With the Cauchy kernel the density estimate and Im m(x + ih)/pi are the
same closed form, which cauchy_kernel_identity_check verifies pointwise.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .eigen import Spectrum
from .errors import DomainError
from .estimators import get_kernel, kde_at


def _check_upper_half(z: complex) -> complex:
    z = complex(z)
    if not z.imag > 0.0:
        raise DomainError(f"evaluation point must satisfy Im z > 0, got {z}")
    return z


def stieltjes_esd(spec: Spectrum, z: complex) -> complex:
    """(1/p) * sum 1/(mu_i - z) for Im z > 0."""
    z = _check_upper_half(z)
    if len(spec) == 0:
        raise DomainError("spectrum is empty")
    return complex(np.mean(1.0 / (spec.eigenvalues - z)))


def stieltjes_semicircle(z: complex) -> complex:
    """The semicircle transform s(z) = (-z + sqrt(z^2 - 4))/2, branch with
    Im s > 0; the root of s^2 + z s + 1 = 0 in the upper half plane."""
    z = _check_upper_half(z)
    root = cmath.sqrt(z * z - 4.0)
    s = 0.5 * (-z + root)
    if s.imag <= 0.0:
        s = 0.5 * (-z - root)
    return s


@dataclass(frozen=True)
class IdentityCheck:
    kde_value: float
    transform_value: float
    abs_difference: float


def cauchy_kernel_identity_check(spec: Spectrum, h: float, x: float) -> IdentityCheck:
    """Cauchy-kernel density estimate vs Im m(x + ih)/pi at one point.

    Both are exact closed forms of the same sum, so the difference is
    pure floating-point noise (well under 1e-12).
    """
    if not h > 0.0:
        raise DomainError(f"bandwidth h must be positive, got {h}")
    kde_value = kde_at(spec, get_kernel("cauchy"), h, float(x))
    transform_value = stieltjes_esd(spec, complex(x, h)).imag / math.pi
    return IdentityCheck(kde_value, transform_value, abs(kde_value - transform_value))
