"""Operating wave, array geometry, and element directivity patterns."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

SPEED_OF_LIGHT = 299_792_458.0
"""Free-space speed of light [m/s]."""


@dataclass(frozen=True)
class Wave:
    """Monochromatic free-space wave: frequency [Hz], wavelength [m], wavenumber [rad/m]."""

    frequency: float
    wavelength: float
    wavenumber: float


def wave_from_frequency(frequency: float) -> Wave:
    """Build a :class:`Wave` from its frequency in hertz."""
    if not frequency > 0.0:
        raise ValueError(f"frequency must be positive, got {frequency!r}")
    wavelength = SPEED_OF_LIGHT / frequency
    return Wave(
        frequency=float(frequency),
        wavelength=wavelength,
        wavenumber=2.0 * math.pi / wavelength,
    )


class ElementPattern(enum.Enum):
    """Element directivity variant, applied as a real amplitude factor per element."""

    ISOTROPIC = "isotropic"
    VERTICAL_DIPOLE = "vertical-dipole"
    HORIZONTAL_DIPOLE = "horizontal-dipole"
    PATCH = "patch"


@dataclass(frozen=True)
class ArraySpec:
    """Uniform linear array along the x axis, centered on the origin."""

    wave: Wave
    num_elements: int
    spacing: float
    pattern: ElementPattern = ElementPattern.ISOTROPIC

    def __post_init__(self) -> None:
        if not isinstance(self.num_elements, (int, np.integer)) or self.num_elements < 1:
            raise ValueError(f"num_elements must be a positive integer, got {self.num_elements!r}")
        if not self.spacing > 0.0:
            raise ValueError(f"spacing must be positive, got {self.spacing!r}")

    @property
    def aperture(self) -> float:
        """Physical aperture length N*d [m]."""
        return self.num_elements * self.spacing


@dataclass(frozen=True)
class FocusScenario:
    """Transmit array focused toward a parallel receive strip at height z0.

    The receive strip is sampled like a second centered uniform array; its
    element count and spacing default to the transmit values when omitted.
    """

    tx: ArraySpec
    focal_distance: float
    rx_num: int | None = None
    rx_spacing: float | None = None

    def __post_init__(self) -> None:
        if not self.focal_distance > 0.0:
            raise ValueError(f"focal_distance must be positive, got {self.focal_distance!r}")
        if self.rx_num is None:
            object.__setattr__(self, "rx_num", self.tx.num_elements)
        if self.rx_spacing is None:
            object.__setattr__(self, "rx_spacing", self.tx.spacing)
        if not isinstance(self.rx_num, (int, np.integer)) or self.rx_num < 1:
            raise ValueError(f"rx_num must be a positive integer, got {self.rx_num!r}")
        if not self.rx_spacing > 0.0:
            raise ValueError(f"rx_spacing must be positive, got {self.rx_spacing!r}")

    @property
    def strip_extent(self) -> float:
        """Receive strip length rx_num * rx_spacing [m]."""
        return self.rx_num * self.rx_spacing


def centered_positions(num: int, spacing: float) -> np.ndarray:
    """Positions x_n = (n - (N+1)/2) * d for n = 1..N, symmetric about the origin."""
    n = np.arange(1, num + 1, dtype=float)
    return (n - 0.5 * (num + 1)) * spacing


def element_positions(spec: ArraySpec) -> np.ndarray:
    """Element x coordinates of the array in meters."""
    return centered_positions(spec.num_elements, spec.spacing)


def pattern_factor(pattern, x_source, x_field, z, wave: Wave | None = None):
    """Directivity amplitude of an element at ``x_source`` seen from ``(x_field, z)``.

    Isotropic and vertical-dipole variants radiate uniformly in the array
    plane and return 1. Horizontal-dipole and patch variants share the
    broadside cos^2(theta) = z^2 / (z^2 + dx^2) roll-off. The ``wave``
    argument is accepted for interface stability; the current variants are
    frequency independent.

    Inputs broadcast; scalar inputs return a float.
    """
    dx = np.asarray(x_field, dtype=float) - np.asarray(x_source, dtype=float)
    zz = np.asarray(z, dtype=float)
    if np.any(zz <= 0.0):
        raise ValueError("field height z must be positive")
    cos2 = zz * zz / (zz * zz + dx * dx)
    if pattern in (ElementPattern.ISOTROPIC, ElementPattern.VERTICAL_DIPOLE):
        out = np.ones_like(cos2)
    elif pattern in (ElementPattern.HORIZONTAL_DIPOLE, ElementPattern.PATCH):
        out = cos2
    else:
        raise ValueError(f"unknown element pattern {pattern!r}")
    if out.ndim == 0:
        return float(out)
    return out
