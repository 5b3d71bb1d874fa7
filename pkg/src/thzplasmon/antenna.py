"""Plasmonic dipole resonance prediction and figure-of-merit trends.

A graphene dipole resonates where half a guided plasmon wavelength fits the
radiating length: Re q(f) * (alpha * L) = pi, with a configurable end
correction alpha (default 1).  The gap is treated as feed region and is not
part of the resonant length.  The efficiency proxy below orders designs by
normalized propagation length only; it is not an absolute radiation
efficiency.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .conductivity import GrapheneSheet
from .constants import C0
from .modesolver import (DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE,
                         ModeSolution, ModeSolverError, find_mode)
from .stacks import LayeredStack, graphene_on_substrate

DEFAULT_BAND_HZ = (0.1e12, 10e12)
_RESONANCE_GATE = 1e-9  # |Re q * alpha L - pi| at the returned frequency


class NoResonanceInBandError(RuntimeError):
    """The half-wavelength condition has no solution in the search band."""


@dataclass(frozen=True)
class DipoleGeometry:
    """Planar dipole: width, total length (both arms plus gap), feed gap,
    substrate permittivity and end-correction factor."""

    width_m: float
    total_length_m: float
    gap_m: float
    substrate_permittivity: float
    end_correction: float = 1.0

    def __post_init__(self):
        if self.width_m <= 0.0:
            raise ValueError("width_m must be > 0")
        if not 0.0 < self.gap_m < self.total_length_m:
            raise ValueError("gap_m must satisfy 0 < gap < total_length")
        if self.substrate_permittivity < 1.0:
            raise ValueError("substrate_permittivity must be >= 1")
        if not 0.5 <= self.end_correction <= 1.5:
            raise ValueError("end_correction must lie in [0.5, 1.5]")


@dataclass(frozen=True)
class ResonancePrediction:
    resonance_frequency_hz: float
    mode: ModeSolution
    metal_reference_hz: float
    miniaturization_factor: float
    efficiency_proxy: float

    def __post_init__(self):
        if self.resonance_frequency_hz <= 0.0:
            raise ValueError("resonance_frequency_hz must be > 0")
        if self.miniaturization_factor <= 0.0:
            raise ValueError("miniaturization_factor must be > 0")


def resonant_length(stack: LayeredStack, frequency_hz: float, *,
                    tolerance: float = DEFAULT_TOLERANCE,
                    max_iterations: int = DEFAULT_MAX_ITERATIONS) -> float:
    """Half the guided wavelength of the fundamental mode: pi / Re q."""
    mode = find_mode(stack, 2.0 * math.pi * frequency_hz,
                     tolerance=tolerance, max_iterations=max_iterations)
    return mode.guided_wavelength_m / 2.0


def metal_dipole_resonance(total_length_m: float,
                           substrate_permittivity: float) -> float:
    """Half-wave resonance (Hz) of a perfect-conductor dipole of the same
    length, with the half-space average eps_eff = (eps_r + 1) / 2."""
    if total_length_m <= 0.0:
        raise ValueError("total_length_m must be > 0")
    eps_eff = 0.5 * (substrate_permittivity + 1.0)
    return C0 / (2.0 * total_length_m * math.sqrt(eps_eff))


def efficiency_proxy(mode: ModeSolution) -> float:
    """Ordering-only surrogate in (0, 1): FOM / (FOM + 1) with
    FOM = propagation length / guided wavelength.  Strictly increasing in
    the normalized propagation length; never an absolute efficiency."""
    fom = mode.normalized_propagation_length
    return 1.0 - 1.0 / (1.0 + fom)


def miniaturization_factor(prediction: ResonancePrediction) -> float:
    """How far below the equal-length metal dipole this design resonates."""
    return prediction.metal_reference_hz / prediction.resonance_frequency_hz


def resonance_frequency(dipole: DipoleGeometry, sheet: GrapheneSheet, *,
                        band_hz: tuple[float, float] = DEFAULT_BAND_HZ,
                        scan_points: int = 48,
                        tolerance: float = DEFAULT_TOLERANCE,
                        max_iterations: int = DEFAULT_MAX_ITERATIONS
                        ) -> ResonancePrediction:
    """Smallest in-band frequency where the dipole is half a guided
    wavelength long, for the sheet on a semi-infinite substrate under vacuum.

    g(f) = Re q(f) * alpha * L - pi increases with frequency, so the first
    sign change of a band scan brackets the root; it is then refined until
    |g| < 1e-9.  Band edges where no bound mode exists are reported in the
    error when no bracket is found.
    """
    lo, hi = band_hz
    if not 0.0 < lo < hi:
        raise ValueError("band_hz must satisfy 0 < lo < hi")
    stack = graphene_on_substrate(sheet, dipole.substrate_permittivity)
    length = dipole.end_correction * dipole.total_length_m
    cache: dict[float, complex] = {}

    def solve(f_hz: float) -> ModeSolution:
        guess = None
        if cache:
            nearest = min(cache, key=lambda fk: abs(fk - f_hz))
            # scale to the new light cone so the seed stays a bound guess
            guess = cache[nearest] * (f_hz / nearest)
        try:
            mode = find_mode(stack, 2.0 * math.pi * f_hz, guess,
                             tolerance=tolerance, max_iterations=max_iterations)
        except ModeSolverError:
            if guess is None:
                raise
            mode = find_mode(stack, 2.0 * math.pi * f_hz,
                             tolerance=tolerance, max_iterations=max_iterations)
        cache[f_hz] = mode.wavevector
        return mode

    def gap(f_hz: float) -> float:
        return solve(f_hz).wavevector.real * length - math.pi

    ratio = (hi / lo) ** (1.0 / (scan_points - 1))
    grid = [lo * ratio**i for i in range(scan_points)]
    grid[-1] = hi
    values: list[float | None] = []
    statuses: list[str] = []
    for f in grid:
        try:
            values.append(gap(f))
            statuses.append("ok")
        except ModeSolverError as err:
            values.append(None)
            statuses.append(str(err))

    bracket = None
    for i in range(scan_points - 1):
        g1, g2 = values[i], values[i + 1]
        if g1 is not None and g2 is not None and g1 < 0.0 <= g2:
            bracket = (grid[i], grid[i + 1])
            break
    if bracket is None:
        edges = (f"low edge {grid[0]:.3e} Hz: {statuses[0]}; "
                 f"high edge {grid[-1]:.3e} Hz: {statuses[-1]}")
        raise NoResonanceInBandError(
            f"no half-wavelength resonance in [{lo:.3e}, {hi:.3e}] Hz ({edges})")

    f_res = brentq(gap, bracket[0], bracket[1], xtol=1e-3, rtol=8.9e-16)
    residual = gap(f_res)
    if abs(residual) > _RESONANCE_GATE:
        raise NoResonanceInBandError(
            f"bracketing stalled at |g| = {abs(residual):.3e} > {_RESONANCE_GATE:.0e}")
    mode = solve(f_res)
    f_metal = metal_dipole_resonance(dipole.total_length_m,
                                     dipole.substrate_permittivity)
    return ResonancePrediction(
        resonance_frequency_hz=f_res,
        mode=mode,
        metal_reference_hz=f_metal,
        miniaturization_factor=f_metal / f_res,
        efficiency_proxy=efficiency_proxy(mode),
    )
