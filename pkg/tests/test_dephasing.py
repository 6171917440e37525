import math

import numpy as np
import pytest

from belldyn.dephasing import (
    LAMBDA0,
    SPEED_OF_LIGHT,
    GaussianComponent,
    MultiGaussian,
    SampledSpectrum,
    SingleGaussian,
    SweepConfig,
    angular_frequency,
    effective_retardation,
    evolve_state,
    find_crossing,
    kappa_gaussian,
    kappa_multi_gaussian,
    kappa_numeric,
    sigma_from_fwhm,
    sweep,
)
from belldyn.correlations import bell_eigenvalues_from_kappas
from belldyn.errors import (
    CrossingNotFoundError,
    InvalidKappaError,
    NormalizationError,
    ScheduleError,
    UnderResolvedGridError,
)
from belldyn.qstate import eigenvalues_sorted, validate_state

LAM0 = LAMBDA0
SIGMA_3NM = sigma_from_fwhm(3e-9, 780e-9)
OMEGA_780 = angular_frequency(780e-9)

FP_COMPONENTS = tuple(
    GaussianComponent(w, angular_frequency(c * 1e-9), sigma_from_fwhm(f * 1e-9, 780e-9))
    for w, c, f in ((0.37, 778.853, 0.85), (0.44, 780.160, 0.85), (0.19, 781.459, 0.85))
)


def gaussian_density(omega, sigma, omega0):
    return (2.0 / (math.sqrt(math.pi) * sigma)) * np.exp(-4.0 * (omega - omega0) ** 2 / sigma**2)


def quadrature_kappa(x, sigma, omega0, n=20001, half_width=5.0):
    """Independent trapezoid evaluation of the decoherence integral."""
    omega = np.linspace(omega0 - half_width * sigma, omega0 + half_width * sigma, n)
    f = gaussian_density(omega, sigma, omega0)
    return np.trapezoid(f * np.exp(1j * (x / SPEED_OF_LIGHT) * omega), omega)


def test_kappa_gaussian_at_zero():
    assert kappa_gaussian(0.0, SIGMA_3NM, OMEGA_780) == 1.0 + 0.0j


def test_kappa_gaussian_half_exponent():
    # (x/c)^2 sigma^2 / 16 = 1/2 at x = c and sigma = sqrt(8)
    k = kappa_gaussian(SPEED_OF_LIGHT, math.sqrt(8.0), 0.0)
    assert k == pytest.approx(math.exp(-0.5), abs=1e-12)


def test_kappa_gaussian_matches_quadrature():
    rng = np.random.default_rng(30)
    for _ in range(12):
        x = rng.uniform(0.0, 250.0) * LAM0
        closed = kappa_gaussian(x, SIGMA_3NM, OMEGA_780)
        numeric = quadrature_kappa(x, SIGMA_3NM, OMEGA_780)
        assert abs(closed - numeric) < 1e-6


def test_kappa_gaussian_filter_calibration():
    # 3 nm filter at 117 lambda0 of retardation
    k = kappa_gaussian(117 * LAM0, SIGMA_3NM, OMEGA_780)
    assert abs(k) == pytest.approx(0.607, abs=0.010)


def test_kappa_gaussian_modulus_monotone():
    xs = np.linspace(0.0, 400.0, 200) * LAM0
    mods = [abs(kappa_gaussian(x, SIGMA_3NM, OMEGA_780)) for x in xs]
    assert np.all(np.diff(mods) <= 0.0)


def test_kappa_multi_gaussian_at_zero():
    assert kappa_multi_gaussian(0.0, FP_COMPONENTS) == 1.0 + 0.0j


def test_kappa_multi_gaussian_single_component_reduction():
    comp = GaussianComponent(1.0, OMEGA_780, SIGMA_3NM)
    for x in (0.0, 40 * LAM0, 333 * LAM0):
        assert kappa_multi_gaussian(x, [comp]) == kappa_gaussian(x, SIGMA_3NM, OMEGA_780)


def test_kappa_multi_gaussian_normalization_error():
    bad = (
        GaussianComponent(0.5, OMEGA_780, SIGMA_3NM),
        GaussianComponent(0.4, OMEGA_780 * 1.001, SIGMA_3NM),
    )
    with pytest.raises(NormalizationError):
        kappa_multi_gaussian(10 * LAM0, bad)
    with pytest.raises(NormalizationError):
        MultiGaussian(bad)


def test_kappa_multi_gaussian_revival_magnitude():
    xs = np.arange(400.0, 700.0, 0.5) * LAM0
    mods = [abs(kappa_multi_gaussian(x, FP_COMPONENTS)) for x in xs]
    assert max(mods) == pytest.approx(0.385, abs=0.02)


def test_kappa_modulus_bounded():
    xs = np.linspace(0.0, 800.0, 1500) * LAM0
    for x in xs[::50]:
        assert abs(kappa_multi_gaussian(x, FP_COMPONENTS)) <= 1.0 + 1e-12


def _sampled_gaussian(n=6001, half_width=4.0):
    omega = np.linspace(
        OMEGA_780 - half_width * SIGMA_3NM, OMEGA_780 + half_width * SIGMA_3NM, n
    )
    density = gaussian_density(omega, SIGMA_3NM, OMEGA_780)
    density = density / np.trapezoid(density, omega)
    return SampledSpectrum(omega=omega, density=density)


def test_kappa_numeric_at_zero():
    spectrum = _sampled_gaussian()
    assert abs(kappa_numeric(0.0, spectrum) - 1.0) < 1e-6


def test_kappa_numeric_matches_closed_form():
    spectrum = _sampled_gaussian(n=8001)
    rng = np.random.default_rng(31)
    for _ in range(20):
        x = rng.uniform(0.0, 300.0) * LAM0
        assert abs(kappa_numeric(x, spectrum) - kappa_gaussian(x, SIGMA_3NM, OMEGA_780)) < 1e-4


def test_kappa_numeric_matches_multi_gaussian():
    lo = angular_frequency(783e-9)
    hi = angular_frequency(777e-9)
    omega = np.linspace(lo, hi, 12001)
    density = sum(
        c.amplitude * gaussian_density(omega, c.width, c.center) for c in FP_COMPONENTS
    )
    density = density / np.trapezoid(density, omega)
    spectrum = SampledSpectrum(omega=omega, density=density)
    rng = np.random.default_rng(32)
    for _ in range(10):
        x = rng.uniform(0.0, 300.0) * LAM0
        assert abs(kappa_numeric(x, spectrum) - kappa_multi_gaussian(x, FP_COMPONENTS)) < 1e-4


def test_kappa_numeric_under_resolved():
    spectrum = _sampled_gaussian(n=40)
    with pytest.raises(UnderResolvedGridError):
        kappa_numeric(500 * LAM0, spectrum)


def test_sampled_spectrum_validation():
    omega = np.linspace(1.0, 2.0, 50)
    with pytest.raises(NormalizationError):
        SampledSpectrum(omega=omega, density=np.full(50, 0.5))
    with pytest.raises(ValueError):
        SampledSpectrum(omega=omega[::-1], density=np.full(50, 1.0))
    with pytest.raises(ValueError):
        SampledSpectrum(omega=omega, density=np.linspace(-0.1, 2.1, 50))


def test_effective_retardation_no_exchange():
    assert effective_retardation(5.0, ()) == 5.0


def test_effective_retardation_single_exchange():
    xs = 200 * LAM0
    assert effective_retardation(400 * LAM0, (xs,)) == pytest.approx(0.0, abs=1e-20)
    assert effective_retardation(300 * LAM0, (xs,)) == pytest.approx(100 * LAM0, rel=1e-12)
    assert effective_retardation(150 * LAM0, (xs,)) == pytest.approx(150 * LAM0, rel=1e-12)
    assert effective_retardation(500 * LAM0, (xs,)) == pytest.approx(-100 * LAM0, rel=1e-12)


def test_effective_retardation_two_exchanges():
    # sign flips at 1.0 and 3.0: accrue +1, -2, then +1 per unit
    assert effective_retardation(4.0, (1.0, 3.0)) == pytest.approx(0.0, abs=1e-15)
    assert effective_retardation(3.0, (1.0, 3.0)) == pytest.approx(-1.0, rel=1e-12)
    assert effective_retardation(6.0, (1.0, 3.0)) == pytest.approx(2.0, rel=1e-12)


def test_effective_retardation_schedule_errors():
    with pytest.raises(ScheduleError):
        effective_retardation(1.0, (2.0, 2.0))
    with pytest.raises(ScheduleError):
        effective_retardation(1.0, (-1.0, 2.0))


def test_evolve_state_pure_endpoint():
    psi = 0.5 * np.array([1.0, 1.0, 1.0, -1.0], dtype=complex)
    np.testing.assert_allclose(evolve_state(1.0, 1.0), np.outer(psi, psi.conj()), atol=1e-15)


def test_evolve_state_fully_dephased():
    np.testing.assert_allclose(evolve_state(0.0, 0.0), np.eye(4) / 4.0, atol=1e-15)


def test_evolve_state_partial():
    lams = eigenvalues_sorted(evolve_state(0.607, 0.385))
    np.testing.assert_allclose(
        lams, [0.55642375, 0.24707625, 0.13607625, 0.06042375], atol=1e-12
    )


def test_evolve_state_is_valid_state_for_complex_kappas():
    rng = np.random.default_rng(33)
    for _ in range(20):
        ka = rng.uniform(0, 1) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        kb = rng.uniform(0, 1) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        validate_state(evolve_state(ka, kb))


def test_evolve_state_eigenvalues_ignore_phases():
    rng = np.random.default_rng(34)
    for _ in range(25):
        ka, kb = rng.uniform(0, 1, size=2)
        pa, pb = rng.uniform(0, 2 * np.pi, size=2)
        lams = eigenvalues_sorted(evolve_state(ka * np.exp(1j * pa), kb * np.exp(1j * pb)))
        np.testing.assert_allclose(lams, bell_eigenvalues_from_kappas(ka, kb), atol=1e-10)


def test_evolve_state_rejects_large_kappa():
    with pytest.raises(InvalidKappaError):
        evolve_state(1.2, 0.5)


def _fig_sweep_config(echo=(), x_max=800.0, step=2.0, fwhm_b_nm=0.85):
    comps = tuple(
        GaussianComponent(w, angular_frequency(c * 1e-9), sigma_from_fwhm(fwhm_b_nm * 1e-9, 780e-9))
        for w, c in ((0.37, 778.853), (0.44, 780.160), (0.19, 781.459))
    )
    return SweepConfig(
        x_a=117 * LAM0,
        spectrum_a=SingleGaussian(SIGMA_3NM, OMEGA_780),
        spectrum_b=MultiGaussian(comps),
        x_b_max=x_max * LAM0,
        step=step * LAM0,
        echo_points=tuple(p * LAM0 for p in echo),
    )


def test_sweep_constant_when_arm_b_untouched():
    # an essentially monochromatic arm-b spectrum keeps |kappa_b| at 1
    config = SweepConfig(
        x_a=117 * LAM0,
        spectrum_a=SingleGaussian(SIGMA_3NM, OMEGA_780),
        spectrum_b=SingleGaussian(1.0, OMEGA_780),
        x_b_max=100 * LAM0,
        step=10 * LAM0,
    )
    points = sweep(config)
    first = points[0].correlations
    for pt in points:
        assert abs(pt.point.kappa_b) == pytest.approx(1.0, abs=1e-15)
        assert pt.correlations.quantum == pytest.approx(first.quantum, abs=1e-12)
        assert pt.correlations.classical == pytest.approx(first.classical, abs=1e-12)


def test_sweep_single_point_when_step_exceeds_range():
    points = sweep(_fig_sweep_config(x_max=10.0, step=40.0))
    assert len(points) == 1
    assert points[0].x_b == 0.0
    assert abs(points[0].point.kappa_b) == pytest.approx(1.0, abs=1e-15)


def test_sweep_grid_and_ordering():
    points = sweep(_fig_sweep_config(x_max=20.0, step=5.0))
    xs = [pt.x_b / LAM0 for pt in points]
    np.testing.assert_allclose(xs, [0.0, 5.0, 10.0, 15.0, 20.0], rtol=1e-12)


def test_sweep_total_equals_sum_of_parts():
    for pt in sweep(_fig_sweep_config(x_max=300.0, step=10.0)):
        corr = pt.correlations
        assert corr.total == pytest.approx(corr.quantum + corr.classical, abs=1e-9)


def test_sweep_is_deterministic():
    a = sweep(_fig_sweep_config(x_max=100.0, step=10.0))
    b = sweep(_fig_sweep_config(x_max=100.0, step=10.0))
    for pa, pb in zip(a, b):
        assert pa.point.kappa_b == pb.point.kappa_b
        assert pa.correlations == pb.correlations


def test_sweep_echo_symmetry_and_exact_revival():
    points = sweep(_fig_sweep_config(echo=(200.0,), x_max=400.0, step=2.0))
    center = 100  # index of the exchange point at 200 lambda0
    first = points[0].correlations
    revived = points[2 * center].correlations
    assert revived.total == pytest.approx(first.total, abs=1e-12)
    assert revived.classical == pytest.approx(first.classical, abs=1e-12)
    assert revived.quantum == pytest.approx(first.quantum, abs=1e-12)
    assert revived.ree == pytest.approx(first.ree, abs=1e-12)
    for d in range(1, center + 1):
        left = points[center - d].correlations
        right = points[center + d].correlations
        assert right.total == pytest.approx(left.total, abs=1e-9)
        assert right.classical == pytest.approx(left.classical, abs=1e-9)
        assert right.quantum == pytest.approx(left.quantum, abs=1e-9)
        assert right.ree == pytest.approx(left.ree, abs=1e-9)


def test_sweep_markovian_case_never_revives():
    # a single-Gaussian arm-b spectrum gives strictly decaying |kappa_b|,
    # so the quantum branch is monotone after the transition
    config = SweepConfig(
        x_a=117 * LAM0,
        spectrum_a=SingleGaussian(SIGMA_3NM, OMEGA_780),
        spectrum_b=SingleGaussian(sigma_from_fwhm(0.85e-9, 780e-9), OMEGA_780),
        x_b_max=900 * LAM0,
        step=5 * LAM0,
    )
    points = sweep(config)
    kb = np.array([abs(pt.point.kappa_b) for pt in points])
    ka = abs(points[0].point.kappa_a)
    assert np.all(np.diff(kb) < 0.0)
    after = kb < ka
    q = np.array([pt.correlations.quantum for pt in points])
    assert np.all(np.diff(q[after]) <= 1e-15)


def test_sweep_rejects_bad_schedule():
    config = _fig_sweep_config(echo=(100.0, 100.0), x_max=50.0, step=10.0)
    with pytest.raises(ScheduleError):
        sweep(config)


def test_find_crossing_linear_interpolation():
    x = np.array([0.0, 1.0, 2.0, 3.0])
    y = np.array([0.0, 1.0, 2.0, 3.0])
    assert find_crossing(x, y, 1.5) == pytest.approx(1.5, abs=1e-12)


def test_find_crossing_direction_filters():
    x = np.arange(5.0)
    y = np.array([0.0, 2.0, 0.0, 2.0, 0.0])
    assert find_crossing(x, y, 1.0, rising=True) == pytest.approx(0.5)
    assert find_crossing(x, y, 1.0, rising=False) == pytest.approx(1.5)
    assert find_crossing(x, y, 1.0, rising=True, which="last") == pytest.approx(2.5)


def test_find_crossing_start_filter():
    x = np.arange(5.0)
    y = np.array([0.0, 2.0, 0.0, 2.0, 0.0])
    assert find_crossing(x, y, 1.0, rising=True, start=1.0) == pytest.approx(2.5)


def test_find_crossing_level_touch_counts_once():
    x = np.arange(4.0)
    y = np.array([2.0, 1.0, 0.0, 0.0])
    assert find_crossing(x, y, 0.0, rising=False) == pytest.approx(2.0)


def test_find_crossing_not_found():
    x = np.arange(4.0)
    y = np.ones(4)
    with pytest.raises(CrossingNotFoundError):
        find_crossing(x, y, 2.0)
