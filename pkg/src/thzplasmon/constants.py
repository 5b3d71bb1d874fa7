"""Physical constants used throughout the toolkit (CODATA, via scipy)."""
from __future__ import annotations

import math
from dataclasses import dataclass

import scipy.constants as _sc


@dataclass(frozen=True)
class PhysicalConstants:
    """SI constants bundle. All values strictly positive; the free-space
    impedance must be consistent with c0 and eps0 to 1e-12 relative."""

    electron_charge: float = _sc.e                  # C
    reduced_planck: float = _sc.hbar                # J s
    boltzmann: float = _sc.k                        # J/K
    vacuum_permittivity: float = _sc.epsilon_0      # F/m
    light_speed: float = _sc.c                      # m/s
    free_space_impedance: float = math.sqrt(_sc.mu_0 / _sc.epsilon_0)  # ohm

    def __post_init__(self):
        for name in ("electron_charge", "reduced_planck", "boltzmann",
                     "vacuum_permittivity", "light_speed", "free_space_impedance"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be strictly positive")
        # eta0 = 1/(eps0 c0) up to the rounding of the tabulated constants
        alt = 1.0 / (self.vacuum_permittivity * self.light_speed)
        if abs(self.free_space_impedance - alt) > 1e-12 * self.free_space_impedance:
            raise ValueError("free_space_impedance inconsistent with eps0 and c0")


CODATA = PhysicalConstants()

E_CHARGE = CODATA.electron_charge
HBAR = CODATA.reduced_planck
K_BOLTZMANN = CODATA.boltzmann
EPS0 = CODATA.vacuum_permittivity
C0 = CODATA.light_speed
ETA0 = CODATA.free_space_impedance
