"""Photon-frequency spectra, decoherence parameters, and retardation sweeps.

A birefringent element of retardation x (optical path-length difference, in
meters) multiplies the polarization coherences of a photon by the decoherence
parameter kappa(x) = integral f(omega) exp(i x omega / c) domega over its
frequency density f. Single and multi-Gaussian densities have closed forms;
arbitrary sampled densities are integrated by the trapezoid rule. A
polarization exchange (sigma_x) inserted at some retardation flips the sign
of subsequent phase accrual, so later retardation unwinds earlier dephasing
and produces correlation echoes.

Sweep points are mutually independent pure computations; they are evaluated
in x order here, but any evaluation order yields the same output.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .correlations import CorrelationSet, correlations_from_spectrum
from .errors import (
    CrossingNotFoundError,
    InvalidKappaError,
    NormalizationError,
    ScheduleError,
    UnderResolvedGridError,
)
from .qstate import eigenvalues_sorted

SPEED_OF_LIGHT = 299_792_458.0  # m/s

#: default reporting wavelength, 0.78 um
LAMBDA0 = 0.78e-6

#: minimum samples per oscillation period required of a sampled spectrum
MIN_SAMPLES_PER_PERIOD = 8


def angular_frequency(wavelength: float) -> float:
    """Angular frequency 2 pi c / wavelength (rad/s) for a wavelength in meters."""
    return 2.0 * math.pi * SPEED_OF_LIGHT / wavelength


def sigma_from_fwhm(fwhm_wavelength: float, reference_wavelength: float) -> float:
    """Spectral width (rad/s) for a wavelength FWHM mapped linearly to frequency.

    The width entering exp[-(x/c)^2 sigma^2 / 16] is identified with
    2 pi c dlambda / lambda0^2, the frequency interval spanned by the
    wavelength FWHM at the reference wavelength.
    """
    return 2.0 * math.pi * SPEED_OF_LIGHT * fwhm_wavelength / reference_wavelength**2


@dataclass(frozen=True)
class GaussianComponent:
    """One Gaussian piece of a frequency density: weight, center and width in rad/s."""

    amplitude: float
    center: float
    width: float

    def __post_init__(self):
        if self.amplitude <= 0.0:
            raise ValueError(f"amplitude must be positive, got {self.amplitude}")
        if self.width <= 0.0:
            raise ValueError(f"width must be positive, got {self.width}")


def kappa_gaussian(x: float, sigma: float, omega0: float) -> complex:
    """Decoherence parameter of a single Gaussian density.

    exp[-(x/c)^2 sigma^2 / 16 + i (x/c) omega0]; the modulus is monotone
    non-increasing in the retardation x.
    """
    u = x / SPEED_OF_LIGHT
    return cmath.exp(complex(-(u * sigma) ** 2 / 16.0, u * omega0))


def kappa_multi_gaussian(x: float, components) -> complex:
    """Weighted sum of single-Gaussian decoherence parameters.

    Raises NormalizationError unless the amplitudes sum to 1 within 1e-9.
    """
    comps = tuple(components)
    total = sum(c.amplitude for c in comps)
    if abs(total - 1.0) > 1e-9:
        raise NormalizationError(f"component amplitudes sum to {total}, not 1")
    return sum(c.amplitude * kappa_gaussian(x, c.width, c.center) for c in comps)


@dataclass(frozen=True)
class SingleGaussian:
    """Gaussian frequency density with width sigma and center omega0 (rad/s)."""

    sigma: float
    omega0: float

    def kappa(self, x: float) -> complex:
        return kappa_gaussian(x, self.sigma, self.omega0)


@dataclass(frozen=True)
class MultiGaussian:
    """Discrete frequency density: a normalized sum of Gaussian components."""

    components: tuple[GaussianComponent, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        total = sum(c.amplitude for c in comps)
        if abs(total - 1.0) > 1e-9:
            raise NormalizationError(f"component amplitudes sum to {total}, not 1")

    def kappa(self, x: float) -> complex:
        return kappa_multi_gaussian(x, self.components)


@dataclass(frozen=True, eq=False)
class SampledSpectrum:
    """Frequency density on a strictly increasing omega grid (rad/s).

    The trapezoid-rule norm must be 1 within 1e-6; densities must be
    nonnegative.
    """

    omega: np.ndarray
    density: np.ndarray

    def __post_init__(self):
        omega = np.asarray(self.omega, dtype=float)
        density = np.asarray(self.density, dtype=float)
        if omega.ndim != 1 or omega.shape != density.shape or omega.size < 2:
            raise ValueError("omega and density must be matching 1-d arrays")
        if np.any(np.diff(omega) <= 0.0):
            raise ValueError("omega grid must be strictly increasing")
        if density.min() < 0.0:
            raise ValueError(f"negative density {density.min()}")
        norm = float(np.trapezoid(density, omega))
        if abs(norm - 1.0) > 1e-6:
            raise NormalizationError(f"density integrates to {norm}, not 1")
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "density", density)

    def kappa(self, x: float) -> complex:
        return kappa_numeric(x, self)


def kappa_numeric(x: float, spectrum: SampledSpectrum) -> complex:
    """Trapezoid-rule decoherence parameter of a sampled frequency density.

    Requires at least MIN_SAMPLES_PER_PERIOD grid points per oscillation
    period 2 pi c / x across the support, else UnderResolvedGridError.
    """
    omega = spectrum.omega
    if x != 0.0:
        period = 2.0 * math.pi * SPEED_OF_LIGHT / abs(x)
        max_spacing = float(np.max(np.diff(omega)))
        if max_spacing > period / MIN_SAMPLES_PER_PERIOD:
            raise UnderResolvedGridError(
                f"grid spacing {max_spacing:.3e} rad/s exceeds "
                f"{period / MIN_SAMPLES_PER_PERIOD:.3e} (period/{MIN_SAMPLES_PER_PERIOD}) at x = {x:.3e} m"
            )
    phase = np.exp(1j * (x / SPEED_OF_LIGHT) * omega)
    return complex(np.trapezoid(spectrum.density * phase, omega))


def effective_retardation(x: float, sigma_x_points) -> float:
    """Net signed phase-accrual length after the polarization-exchange schedule.

    Accrual starts at +1 per unit retardation from zero; every exchange point
    at or below x flips the sign of subsequent accrual. With one exchange at
    x_s the result is x below x_s and 2 x_s - x beyond it.
    """
    pts = tuple(float(p) for p in sigma_x_points)
    if any(p < 0.0 for p in pts) or any(b <= a for a, b in zip(pts, pts[1:])):
        raise ScheduleError(f"exchange points must be nonnegative and strictly increasing: {pts}")
    if x < 0.0:
        raise ValueError(f"retardation must be nonnegative, got {x}")
    net = 0.0
    prev = 0.0
    sign = 1.0
    for p in pts:
        if p > x:
            break
        net += sign * (p - prev)
        prev = p
        sign = -sign
    return net + sign * (x - prev)


def _kappa_at(spectrum, x_signed: float) -> complex:
    """kappa at a signed retardation: evaluated at |x| with the phase sign carried."""
    k = spectrum.kappa(abs(x_signed))
    return k.conjugate() if x_signed < 0.0 else k


def evolve_state(kappa_a: complex, kappa_b: complex) -> np.ndarray:
    """Density matrix of the dephased two-photon state in the canonical basis.

    Starting from the maximally entangled state (|HH>+|HV>+|VH>-|VV>)/2, the
    coherences pick up kappa_a and kappa_b factors from the two arms. The
    eigenvalues depend only on the moduli of the two parameters.
    """
    ka, kb = complex(kappa_a), complex(kappa_b)
    for name, k in (("kappa_a", ka), ("kappa_b", kb)):
        if abs(k) > 1.0 + 1e-9:
            raise InvalidKappaError(f"|{name}| = {abs(k)} exceeds 1")
    kac, kbc = ka.conjugate(), kb.conjugate()
    return 0.25 * np.array(
        [
            [1.0, kbc, kac, -kac * kbc],
            [kb, 1.0, kac * kb, -kac],
            [ka, ka * kbc, 1.0, -kbc],
            [-ka * kb, -ka, -kb, 1.0],
        ],
        dtype=complex,
    )


@dataclass(frozen=True)
class DephasingPoint:
    """Arm retardations (meters) and the resulting decoherence parameters."""

    x_a: float
    x_b: float
    kappa_a: complex
    kappa_b: complex

    def __post_init__(self):
        for name, k in (("kappa_a", self.kappa_a), ("kappa_b", self.kappa_b)):
            if abs(k) > 1.0 + 1e-9:
                raise InvalidKappaError(f"|{name}| = {abs(k)} exceeds 1")


@dataclass(frozen=True)
class SweepConfig:
    """Retardation sweep: fixed arm-a retardation, arm-b spectrum swept to x_b_max.

    All lengths in meters. echo_points lists the arm-b retardations at which a
    polarization exchange is applied, strictly increasing.
    """

    x_a: float
    spectrum_a: object
    spectrum_b: object
    x_b_max: float
    step: float
    echo_points: tuple[float, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.step <= 0.0:
            raise ValueError(f"step must be positive, got {self.step}")
        if self.x_b_max < 0.0:
            raise ValueError(f"x_b_max must be nonnegative, got {self.x_b_max}")
        if self.x_a < 0.0:
            raise ValueError(f"x_a must be nonnegative, got {self.x_a}")
        object.__setattr__(self, "echo_points", tuple(float(p) for p in self.echo_points))


@dataclass(frozen=True, eq=False)
class SweepPoint:
    """One sweep sample: retardation, decoherence parameters, spectrum, correlations."""

    x_b: float
    point: DephasingPoint
    lambdas: np.ndarray
    correlations: CorrelationSet


def sweep(config: SweepConfig) -> list[SweepPoint]:
    """Evaluate the dephasing dynamics over the arm-b retardation grid.

    For each x_b from 0 to x_b_max in steps of `step`: apply the echo
    schedule, compute kappa_b from the arm-b spectrum at the effective
    retardation, build the evolved density matrix, diagonalize it, and
    evaluate all correlation measures on the spectrum. kappa_a is fixed by
    the arm-a spectrum at x_a. Output is ordered by x_b.
    """
    # validates the schedule once up front
    effective_retardation(0.0, config.echo_points)
    kappa_a = _kappa_at(config.spectrum_a, config.x_a)
    n_steps = int(math.floor(config.x_b_max / config.step + 1e-9))
    points = []
    for i in range(n_steps + 1):
        x_b = i * config.step
        x_eff = effective_retardation(x_b, config.echo_points)
        kappa_b = _kappa_at(config.spectrum_b, x_eff)
        lambdas = eigenvalues_sorted(evolve_state(kappa_a, kappa_b))
        points.append(
            SweepPoint(
                x_b=x_b,
                point=DephasingPoint(x_a=config.x_a, x_b=x_b, kappa_a=kappa_a, kappa_b=kappa_b),
                lambdas=lambdas,
                correlations=correlations_from_spectrum(lambdas),
            )
        )
    return points


def find_crossing(x, y, level: float, *, rising: bool | None = None,
                  start: float | None = None, which: str = "first") -> float:
    """Interpolated x where the series y crosses `level`.

    rising=True keeps upward crossings only, rising=False downward only,
    None keeps both. `start` discards crossings at x below it; `which`
    selects the "first" or "last" match. Raises CrossingNotFoundError when
    no sample pair brackets the level.
    """
    if which not in ("first", "last"):
        raise ValueError(f"which must be 'first' or 'last', got {which!r}")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("x and y must be matching 1-d arrays")
    matches = []
    for i in range(x.size - 1):
        y0, y1 = y[i], y[i + 1]
        if y0 == y1:
            continue
        up = y0 < level <= y1
        down = y0 > level >= y1
        if rising is True and not up:
            continue
        if rising is False and not down:
            continue
        if rising is None and not (up or down):
            continue
        xc = x[i] + (level - y0) * (x[i + 1] - x[i]) / (y1 - y0)
        if start is not None and xc < start:
            continue
        matches.append(float(xc))
    if not matches:
        raise CrossingNotFoundError(f"series never crosses {level}")
    return matches[0] if which == "first" else matches[-1]
