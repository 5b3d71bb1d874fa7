"""Transverse-magnetic surface-plasmon mode solver for layered graphene stacks.

The mode condition is assembled in the dimensionless in-plane variable
x = q / k0.  Tangential-field admittances y = H_y / (i w eps0 E_x) * k0 are
propagated from both semi-infinite claddings to a reference interface; a
guided mode makes the admittances match across the sheet current there:

    D(x) = y_below(x) - y_above(x) + i sigma / (eps0 c0) = 0.

For a single sheet between two half-spaces this reduces exactly to

    D(x) = eps1 / k1 + eps2 / k2 + i sigma / (eps0 c0),
    k_i = sqrt(x^2 - eps_i),  Re k_i >= 0,

i.e. the classical thin-sheet plasmon condition normalized by k0.  Layer
propagation uses decaying exponentials only (phase factors exp(-2 k d k0)
with |.| <= 1), so thick layers cannot overflow.

Root finding runs on the pole-free bilinear numerator of D rather than on D
itself: when a sheet sits near a node of the tangential electric field
(buried-sheet stacks), both one-sided admittances diverge at the mode and
the zero of D collides with a pole.  The bilinear form has the same zeros
off the branch cuts and stays finite.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .conductivity import intraband_conductivity
from .constants import C0, EPS0
from .stacks import LayeredStack

DEFAULT_TOLERANCE = 1e-12      # relative step |dq|/|q| at convergence
DEFAULT_MAX_ITERATIONS = 100
RESIDUAL_GATE = 1e-10          # |D| relative to its largest term, at a root

_BRANCH_CUT_GUARD = 1e-12     # |x^2 - eps| below this flags branch-cut proximity


class ModeSolverError(RuntimeError):
    """Base class for mode-solver failures."""


class ConvergenceError(ModeSolverError):
    """The iteration did not converge to a root of the mode condition."""


class NonBoundModeError(ModeSolverError):
    """A root was found but it does not decay into both claddings."""


class BranchCutProximityError(ModeSolverError):
    """The requested wavevector is too close to a branch point of the
    dispersion function."""


@dataclass(frozen=True)
class ModeSolution:
    """A converged bound TM mode at one frequency.

    ``residual`` is |D| relative to the largest term of the mode condition.
    """

    angular_frequency: float
    wavevector: complex            # in-plane q, rad/m, Im q > 0
    residual: float

    def __post_init__(self):
        if self.angular_frequency <= 0.0:
            raise ValueError("angular_frequency must be > 0")
        if self.wavevector.imag <= 0.0:
            raise ValueError("wavevector must have Im q > 0 (decaying mode)")

    @property
    def frequency_hz(self) -> float:
        return self.angular_frequency / (2.0 * math.pi)

    @property
    def k0(self) -> float:
        return self.angular_frequency / C0

    @property
    def effective_index(self) -> float:
        return self.wavevector.real / self.k0

    @property
    def guided_wavelength_m(self) -> float:
        return 2.0 * math.pi / self.wavevector.real

    @property
    def propagation_length_m(self) -> float:
        return 1.0 / (2.0 * self.wavevector.imag)

    @property
    def normalized_propagation_length(self) -> float:
        return self.propagation_length_m / self.guided_wavelength_m


@dataclass(frozen=True)
class TracePoint:
    """One entry of a dispersion trace: a solution or a failure record."""

    frequency_hz: float
    solution: ModeSolution | None
    status: str  # "ok" or "failed:<reason>"

    @property
    def ok(self) -> bool:
        return self.solution is not None


@dataclass(frozen=True)
class StackMetricsRow:
    chemical_potential_ev: float
    effective_index: float | None
    normalized_propagation_length: float | None
    resonant_length_m: float | None
    status: str


def _transverse_decay(x_sq: complex, eps: float) -> complex:
    # branch Re k >= 0: decaying solutions in the claddings
    k = cmath.sqrt(x_sq - eps)
    if k.real < 0.0:
        k = -k
    return k


def _sheet_terms(stack: LayeredStack, angular_frequency: float) -> dict[int, complex]:
    # i sigma k0 / (w eps0) = i sigma / (eps0 c0), dimensionless
    return {
        i: 1j * intraband_conductivity(sheet, angular_frequency) / (EPS0 * C0)
        for i, sheet in stack.sheets.items()
    }


def _admittance_pairs(stack: LayeredStack, x: complex, angular_frequency: float,
                      sheet_terms: dict[int, complex], ref: int):
    """Homogeneous (numerator, denominator) pairs of the looking-down
    admittance just below interface ``ref`` and the looking-up admittance
    just above it.  Pairs are renormalized each step by their largest
    modulus to avoid over/underflow; ratios are unchanged."""
    layers = stack.layers
    n = len(layers)
    k0 = angular_frequency / C0
    x_sq = x * x

    eps_bot = layers[-1].relative_permittivity
    a, b = complex(eps_bot), _transverse_decay(x_sq, eps_bot)
    for i in range(n - 2, ref, -1):
        term = sheet_terms.get(i)
        if term is not None:
            a = a + term * b
        layer = layers[i]
        eps_i = layer.relative_permittivity
        k_i = _transverse_decay(x_sq, eps_i)
        p = a * k_i - eps_i * b
        s = a * k_i + eps_i * b
        t = cmath.exp(-2.0 * k_i * k0 * layer.thickness_m)
        a, b = eps_i * (s + p * t), k_i * (s - p * t)
        m = max(abs(a), abs(b))
        if m > 0.0:
            a, b = a / m, b / m
    below = (a, b)

    eps_top = layers[0].relative_permittivity
    a, b = complex(-eps_top), _transverse_decay(x_sq, eps_top)
    for i in range(0, ref):
        term = sheet_terms.get(i)
        if term is not None:
            a = a - term * b
        layer = layers[i + 1]
        eps_i = layer.relative_permittivity
        k_i = _transverse_decay(x_sq, eps_i)
        p = a * k_i - eps_i * b
        s = a * k_i + eps_i * b
        t = cmath.exp(-2.0 * k_i * k0 * layer.thickness_m)
        a, b = eps_i * (s * t + p), k_i * (s * t - p)
        m = max(abs(a), abs(b))
        if m > 0.0:
            a, b = a / m, b / m
    above = (a, b)
    return below, above


def _mode_function(stack: LayeredStack, x: complex, angular_frequency: float,
                   sheet_terms: dict[int, complex], ref: int):
    """Pole-free bilinear form of the mode condition and its term scale."""
    (ab, bb), (at, bt) = _admittance_pairs(stack, x, angular_frequency,
                                           sheet_terms, ref)
    term = sheet_terms.get(ref, 0j)
    below = ab * bt
    above = at * bb
    sheet = term * bb * bt
    value = below - above + sheet
    scale = max(abs(below), abs(above), abs(sheet))
    return value, scale, bb * bt


def dispersion_residual(stack: LayeredStack, wavevector: complex,
                        angular_frequency: float) -> complex:
    """Admittance mismatch D at (q, w); D = 0 exactly at guided modes.

    Dimensionless: the two-half-space case evaluates to
    eps1/k1 + eps2/k2 + i sigma/(eps0 c0) with k_i = sqrt((q/k0)^2 - eps_i).
    """
    if angular_frequency <= 0.0:
        raise ValueError("angular_frequency must be > 0")
    k0 = angular_frequency / C0
    x = wavevector / k0
    x_sq = x * x
    for layer in stack.layers:
        if abs(x_sq - layer.relative_permittivity) < _BRANCH_CUT_GUARD:
            raise BranchCutProximityError(
                f"q too close to the eps_r = {layer.relative_permittivity} branch point")
    sheet_terms = _sheet_terms(stack, angular_frequency)
    ref = stack.top_sheet_interface
    value, _, denom = _mode_function(stack, x, angular_frequency, sheet_terms, ref)
    return value / denom


def residual_scale(stack: LayeredStack, wavevector: complex,
                   angular_frequency: float) -> float:
    """Magnitude of the largest term of the mode condition at (q, w); the
    reference scale against which |dispersion_residual| is judged."""
    k0 = angular_frequency / C0
    sheet_terms = _sheet_terms(stack, angular_frequency)
    ref = stack.top_sheet_interface
    (ab, bb), (at, bt) = _admittance_pairs(stack, wavevector / k0,
                                           angular_frequency, sheet_terms, ref)
    term = sheet_terms.get(ref, 0j)
    candidates = [abs(term)]
    if bb != 0.0:
        candidates.append(abs(ab / bb))
    if bt != 0.0:
        candidates.append(abs(at / bt))
    return max(candidates)


def quasi_static_wavevector(stack: LayeredStack,
                            angular_frequency: float) -> complex:
    """Closed-form large-q estimate of the plasmon wavevector (rad/m), used
    as the default root-finder seed:  q0 = i (eps_top + eps_bot) w eps0 / sigma."""
    sheet = stack.sheets[stack.top_sheet_interface]
    sigma = intraband_conductivity(sheet, angular_frequency)
    eps_sum = (stack.layers[0].relative_permittivity
               + stack.layers[-1].relative_permittivity)
    return 1j * eps_sum * angular_frequency * EPS0 / sigma


def _muller_polish(fn, seed: complex, tolerance: float, max_iterations: int):
    """Muller iteration followed by a finite-difference Newton polish.

    Returns the refined root or None.  The derivative-free start tolerates
    seeds next to branch cuts, where Newton from a poor seed would jump.
    """
    xs = [seed * (1.0 + 1e-3), seed * (1.0 - 1e-3 + 1e-3j), seed]
    try:
        fs = [fn(x) for x in xs]
    except (OverflowError, ZeroDivisionError):
        return None
    if not all(cmath.isfinite(f) for f in fs):
        return None
    scale0 = abs(seed)
    for _ in range(max_iterations):
        dx10 = xs[1] - xs[0]
        dx21 = xs[2] - xs[1]
        if dx10 == 0 or dx21 == 0:
            break
        q = dx21 / dx10
        a = q * fs[2] - q * (1.0 + q) * fs[1] + q * q * fs[0]
        b = (2.0 * q + 1.0) * fs[2] - (1.0 + q) ** 2 * fs[1] + q * q * fs[0]
        c = (1.0 + q) * fs[2]
        disc = cmath.sqrt(b * b - 4.0 * a * c)
        den = b + disc if abs(b + disc) >= abs(b - disc) else b - disc
        if den == 0:
            x_new = xs[2] * (1.0 + 1e-6)
        else:
            x_new = xs[2] - dx21 * (2.0 * c / den)
        if not cmath.isfinite(x_new) or abs(x_new) > 1e6 * (scale0 + 1.0):
            return None
        try:
            f_new = fn(x_new)
        except (OverflowError, ZeroDivisionError):
            return None
        if not cmath.isfinite(f_new):
            # back off toward the last good point
            x_new = 0.5 * (x_new + xs[2])
            try:
                f_new = fn(x_new)
            except (OverflowError, ZeroDivisionError):
                return None
            if not cmath.isfinite(f_new):
                return None
        xs = [xs[1], xs[2], x_new]
        fs = [fs[1], fs[2], f_new]
        if abs(xs[2] - xs[1]) < tolerance * abs(xs[2]):
            break
    else:
        return None
    # Newton polish with central differences
    x = xs[2]
    for _ in range(10):
        h = 1e-7 * abs(x)
        if h == 0.0:
            break
        try:
            deriv = (fn(x + h) - fn(x - h)) / (2.0 * h)
            if deriv == 0:
                break
            step = fn(x) / deriv
        except (OverflowError, ZeroDivisionError):
            break
        if not cmath.isfinite(step):
            break
        x = x - step
        if abs(step) < 0.1 * tolerance * abs(x):
            break
    return x


def _classify_root(stack: LayeredStack, x: complex) -> str | None:
    """None if x = q/k0 is a bound mode, else a reason string."""
    n_clad = stack.max_cladding_index
    if x.real <= n_clad:
        return (f"not bound: Re q = {x.real:.6g} k0 does not exceed the "
                f"cladding index {n_clad:.6g}")
    if x.imag <= 0.0:
        return f"not bound: Im q = {x.imag:.3g} k0 is not positive"
    x_sq = x * x
    for layer in (stack.layers[0], stack.layers[-1]):
        if _transverse_decay(x_sq, layer.relative_permittivity).real <= 0.0:
            return "leaky: no decay into a cladding"
    return None


def _scan_seeds(fn_rel, lo: float, hi: float, count: int,
                imag_frac: float = 1e-4) -> list[complex]:
    """Local minima of the relative mode function along a near-real segment."""
    if hi <= lo or count < 3:
        return []
    step = (hi - lo) / (count - 1)
    pts = [lo + i * step for i in range(count)]
    vals = []
    for p in pts:
        z = complex(p, imag_frac * p)
        try:
            vals.append(fn_rel(z))
        except (OverflowError, ZeroDivisionError):
            vals.append(math.inf)
    seeds = []
    for i in range(1, count - 1):
        if vals[i] < vals[i - 1] and vals[i] < vals[i + 1] and math.isfinite(vals[i]):
            seeds.append((vals[i], complex(pts[i], imag_frac * pts[i])))
    seeds.sort(key=lambda item: item[0])
    return [z for _, z in seeds[:6]]


def find_mode(stack: LayeredStack, angular_frequency: float,
              initial_guess: complex | None = None, *,
              tolerance: float = DEFAULT_TOLERANCE,
              max_iterations: int = DEFAULT_MAX_ITERATIONS) -> ModeSolution:
    """Fundamental bound TM mode of the stack at one angular frequency.

    Without a guess, candidate seeds are the quasi-static estimate plus
    deterministic scans of the mode function (the dielectric-guided band
    between the cladding and the densest layer, then a coarse wider sweep);
    of all converged bound roots, the one with smallest Re q is returned.
    With a guess, only that seed is iterated (continuation use).
    """
    if angular_frequency <= 0.0:
        raise ValueError("angular_frequency must be > 0")
    k0 = angular_frequency / C0
    sheet_terms = _sheet_terms(stack, angular_frequency)
    ref = stack.top_sheet_interface

    def fn(x: complex) -> complex:
        return _mode_function(stack, x, angular_frequency, sheet_terms, ref)[0]

    def fn_rel(x: complex) -> float:
        value, scale, _ = _mode_function(stack, x, angular_frequency,
                                         sheet_terms, ref)
        return abs(value) / scale if scale > 0.0 else math.inf

    n_clad = stack.max_cladding_index
    if initial_guess is not None:
        seeds = [initial_guess / k0]
    else:
        seeds = [quasi_static_wavevector(stack, angular_frequency) / k0]
        # weakly confined modes hug the cladding light line; a geometric
        # offset ladder reaches them when the quasi-static seed is far off
        seeds += [n_clad * (1.0 + d + 0.5j * d)
                  for d in (1e-4, 1e-3, 3e-3, 0.01, 0.03, 0.1, 0.3, 1.0, 3.0)]
        n_max = stack.max_layer_index
        if n_max > n_clad:
            # dielectric-guided band: sharp minima live here for hybrid stacks
            seeds += _scan_seeds(fn_rel, n_clad * 1.000001, n_max + 1.0, 200)
        if len(stack.layers) > 2:
            hi = max(2.0 * abs(seeds[0]), n_max + 2.0, 50.0)
            seeds += _scan_seeds(fn_rel, n_max + 1.0, hi, 48)

    # a single sheet between two half-spaces has exactly one bound TM root,
    # so the first bound hit is the fundamental and the search can stop
    single_root = len(stack.layers) == 2 and initial_guess is None
    bound: list[tuple[complex, float]] = []
    unbound_reason: str | None = None
    converged_any = False
    for seed in seeds:
        root = _muller_polish(fn, seed, tolerance, max_iterations)
        if root is None:
            continue
        rel = fn_rel(root)
        if not rel < RESIDUAL_GATE:
            continue
        converged_any = True
        reason = _classify_root(stack, root)
        if reason is not None:
            unbound_reason = reason
            continue
        if not any(abs(root - r) < 1e-8 * abs(r) for r, _ in bound):
            bound.append((root, rel))
            if single_root:
                break

    if not bound:
        if converged_any and unbound_reason is not None:
            raise NonBoundModeError(unbound_reason)
        raise ConvergenceError(
            f"no root of the mode condition converged within {max_iterations} "
            f"iterations at f = {angular_frequency / (2 * math.pi):.4g} Hz")
    x, rel = min(bound, key=lambda item: item[0].real)
    return ModeSolution(angular_frequency, x * k0, rel)


def trace_dispersion(stack: LayeredStack, frequencies_hz,
                     *, tolerance: float = DEFAULT_TOLERANCE,
                     max_iterations: int = DEFAULT_MAX_ITERATIONS) -> list[TracePoint]:
    """Solve the stack across a frequency grid with continuation.

    The first point starts from the default seeds; each later point starts
    from the last converged root.  Failures are recorded per point and do
    not abort the trace.
    """
    freqs = [float(f) for f in frequencies_hz]
    if not freqs:
        raise ValueError("frequency grid must not be empty")
    if any(f2 <= f1 for f1, f2 in zip(freqs, freqs[1:])):
        raise ValueError("frequency grid must be strictly increasing")
    points: list[TracePoint] = []
    guess_index: complex | None = None  # previous root as effective index
    for f in freqs:
        # scale the previous root to the new light cone so the seed stays in
        # the bound region (q/k0 would otherwise drop below the claddings)
        guess = guess_index * (2.0 * math.pi * f / C0) if guess_index else None
        try:
            solution = find_mode(stack, 2.0 * math.pi * f, guess,
                                 tolerance=tolerance, max_iterations=max_iterations)
            guess_index = solution.wavevector / solution.k0
            points.append(TracePoint(f, solution, "ok"))
        except ModeSolverError as err:
            points.append(TracePoint(f, None, f"failed:{err}"))
    return points


def stack_metrics_sweep(stack: LayeredStack, frequency_hz: float,
                        chemical_potentials_ev, *,
                        tolerance: float = DEFAULT_TOLERANCE,
                        max_iterations: int = DEFAULT_MAX_ITERATIONS
                        ) -> list[StackMetricsRow]:
    """Fundamental-mode figures of merit versus sheet chemical potential.

    Every sheet of the stack is retuned to each grid value; rows report the
    effective index, the propagation length per guided wavelength and the
    half-wavelength resonant length.  Solver failures are recorded in-row.
    """
    omega = 2.0 * math.pi * frequency_hz
    rows: list[StackMetricsRow] = []
    for ef in chemical_potentials_ev:
        swept = stack.with_chemical_potential(float(ef))
        try:
            mode = find_mode(swept, omega, tolerance=tolerance,
                             max_iterations=max_iterations)
        except ModeSolverError as err:
            rows.append(StackMetricsRow(float(ef), None, None, None,
                                        f"failed:{err}"))
            continue
        rows.append(StackMetricsRow(
            float(ef),
            mode.effective_index,
            mode.normalized_propagation_length,
            mode.guided_wavelength_m / 2.0,
            "ok",
        ))
    return rows
