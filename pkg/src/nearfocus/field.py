"""Scalar free-space propagation, conjugate-phase excitation, and channel assembly."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import (
    ArraySpec,
    FocusScenario,
    Wave,
    centered_positions,
    element_positions,
    pattern_factor,
)

MIN_DISTANCE_FRACTION = 0.01
"""Evaluation guard: distances below this fraction of a wavelength are rejected."""


class SingularDistanceError(ValueError):
    """A source-to-field distance fell below the evaluation guard."""


def _check_distances(r: np.ndarray, wave: Wave, context: str) -> None:
    guard = MIN_DISTANCE_FRACTION * wave.wavelength
    if np.any(r < guard):
        idx = np.unravel_index(int(np.argmin(r)), r.shape)
        raise SingularDistanceError(
            f"{context}: distance {float(r[idx]):.6e} m at index {tuple(int(i) for i in idx)} "
            f"is below the evaluation guard {guard:.6e} m"
        )


def greens(r, wave: Wave):
    """Scalar free-space Green's function exp(-j k r) / (4 pi r).

    Parameters
    ----------
    r : float or ndarray
        Source-to-field distance(s) in meters. Must stay at or above the
        singularity guard of one hundredth of a wavelength.
    wave : Wave
        Operating wave supplying the wavenumber.

    Returns
    -------
    complex or ndarray
        Field contribution per unit excitation.
    """
    rr = np.asarray(r, dtype=float)
    _check_distances(rr, wave, "greens")
    out = np.exp(-1j * wave.wavenumber * rr) / (4.0 * np.pi * rr)
    if out.ndim == 0:
        return complex(out)
    return out


def conjugate_excitation(tx: ArraySpec, focus_x: float, focus_z: float) -> np.ndarray:
    """Unit-magnitude weights that phase-align every element at the focal point.

    Each weight is exp(+j k r_n) with r_n the exact element-to-focus distance,
    so the propagation phase exp(-j k r_n) cancels at (focus_x, focus_z).
    """
    if not focus_z > 0.0:
        raise ValueError(f"focus_z must be positive, got {focus_z!r}")
    xn = element_positions(tx)
    r = np.hypot(focus_x - xn, focus_z)
    return np.exp(1j * tx.wave.wavenumber * r)


def field_at(tx: ArraySpec, excitation: np.ndarray, x, z):
    """Total complex field radiated by the excited array at (x, z).

    Parameters
    ----------
    tx : ArraySpec
        Transmit array.
    excitation : ndarray
        Complex weight per element, shape (num_elements,).
    x, z : float or ndarray
        Field point coordinates in meters; broadcast against each other.
        Heights must be positive.

    Returns
    -------
    complex or ndarray
        Sum over elements of pattern-weighted Green's terms. The summation
        order over elements is fixed, so results are reproducible regardless
        of how field points are batched.
    """
    exc = np.asarray(excitation, dtype=complex)
    if exc.shape != (tx.num_elements,):
        raise ValueError(
            f"excitation has shape {exc.shape}, expected ({tx.num_elements},)"
        )
    xb, zb = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(z, dtype=float))
    if np.any(zb <= 0.0):
        raise ValueError("field height z must be positive")
    xn = element_positions(tx)
    r = np.hypot(xb[..., None] - xn, zb[..., None])
    _check_distances(r, tx.wave, "field_at")
    pf = pattern_factor(tx.pattern, xn, xb[..., None], zb[..., None], tx.wave)
    terms = exc * pf * np.exp(-1j * tx.wave.wavenumber * r) / (4.0 * np.pi * r)
    total = np.sum(terms, axis=-1)
    if total.ndim == 0:
        return complex(total)
    return total


@dataclass(frozen=True)
class ChannelMatrix:
    """Complex gains between every transmit element and receive strip sample."""

    entries: np.ndarray
    rx_positions: np.ndarray
    tx_positions: np.ndarray
    z0: float

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape


def channel_matrix(scenario: FocusScenario) -> ChannelMatrix:
    """Assemble the rx-by-tx channel matrix for a focusing scenario.

    Entry (m, n) is the pattern-weighted Green's gain from transmit element n
    to receive sample m on the strip at height z0.
    """
    tx = scenario.tx
    tx_x = element_positions(tx)
    rx_x = centered_positions(scenario.rx_num, scenario.rx_spacing)
    z0 = scenario.focal_distance
    r = np.hypot(rx_x[:, None] - tx_x[None, :], z0)
    _check_distances(r, tx.wave, "channel_matrix")
    pf = pattern_factor(tx.pattern, tx_x[None, :], rx_x[:, None], z0, tx.wave)
    entries = pf * np.exp(-1j * tx.wave.wavenumber * r) / (4.0 * np.pi * r)
    return ChannelMatrix(entries=entries, rx_positions=rx_x, tx_positions=tx_x, z0=z0)
