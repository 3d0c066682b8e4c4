"""HE11 propagation constant and the scalar parameters derived from it.

Lengths are in micrometers throughout; wavenumbers in inverse micrometers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import integrate, optimize, special

from .errors import DomainError, InvalidSpecError, NoRootError, SingularityError
from .specfun import K_MIN_ARG

#: First zero of J0; single-mode cutoff of the V number.
V_CUTOFF = 2.405
#: Upper bound on q*a for which an evanescent-wave trap can balance the centrifugal force.
TRAP_QA_MAX = 0.93

SCAN_SAMPLES = 2000
SCAN_EDGE = 1e-9
LIGHT_LINE_SAMPLES = 200
J1_POLE_TOL = 1e-13
RESIDUAL_TOL = 1e-10
#: Radial extent, in core radii, of the cross-section integral normalization.
INTEGRAL_EXTENT = 25.0


@dataclass(frozen=True)
class FiberSpec:
    """Step-index fiber: core radius and wavelength in micrometers, core/clad indices."""

    core_radius_a: float
    wavelength_lambda: float
    n1: float
    n2: float = 1.0

    def __post_init__(self):
        vals = (self.core_radius_a, self.wavelength_lambda, self.n1, self.n2)
        if not all(math.isfinite(v) for v in vals):
            raise InvalidSpecError(f"non-finite fiber parameter in {vals}")
        if self.core_radius_a <= 0:
            raise InvalidSpecError(f"core radius must be > 0, got {self.core_radius_a}")
        if self.wavelength_lambda <= 0:
            raise InvalidSpecError(f"wavelength must be > 0, got {self.wavelength_lambda}")
        if self.n2 < 1:
            raise InvalidSpecError(f"cladding index must be >= 1, got {self.n2}")
        if self.n1 <= self.n2:
            raise InvalidSpecError(f"need n1 > n2, got n1={self.n1}, n2={self.n2}")

    @property
    def k(self) -> float:
        return 2 * math.pi / self.wavelength_lambda

    def as_dict(self) -> dict:
        return {
            "core_radius_um": self.core_radius_a,
            "wavelength_um": self.wavelength_lambda,
            "n1": self.n1,
            "n2": self.n2,
        }


@dataclass(frozen=True)
class ModeSolution:
    spec: FiberSpec
    beta: float
    h: float
    q: float
    s: float
    V: float
    residual: float

    @property
    def penetration_length_Lambda(self) -> float:
        return 1.0 / self.q

    @property
    def ha(self) -> float:
        return self.h * self.spec.core_radius_a

    @property
    def qa(self) -> float:
        return self.q * self.spec.core_radius_a

    @property
    def beta_a(self) -> float:
        return self.beta * self.spec.core_radius_a

    @property
    def single_mode(self) -> bool:
        return self.V < V_CUTOFF

    @property
    def trap_condition(self) -> bool:
        return self.qa < TRAP_QA_MAX

    def scalars(self) -> dict:
        a = self.spec.core_radius_a
        return {
            "k_per_um": self.spec.k,
            "beta_per_um": self.beta,
            "h_per_um": self.h,
            "q_per_um": self.q,
            "ha": self.ha,
            "qa": self.qa,
            "beta_a": self.beta_a,
            "s": self.s,
            "V": self.V,
            "penetration_length_um": self.penetration_length_Lambda,
            "penetration_length_over_a": self.penetration_length_Lambda / a,
            "residual": self.residual,
            "single_mode": self.single_mode,
            "trap_condition": self.trap_condition,
        }


class Normalization(str, Enum):
    UNIT_AMPLITUDE = "unit_amplitude"
    UNIT_PEAK = "unit_peak"
    UNIT_CROSS_SECTION_INTEGRAL = "unit_cross_section_integral"


class Polarization(str, Enum):
    QUASILINEAR = "quasilinear"
    ROTATING = "rotating"


@dataclass(frozen=True)
class ModeShape:
    """Intensity shape coefficients of the HE11 mode for a given amplitude A."""

    u: float
    w: float
    f: float
    f_p: float
    g_in: float
    g_out: float
    amplitude_A: float
    normalization: Normalization = Normalization.UNIT_AMPLITUDE


def v_number(spec: FiberSpec) -> float:
    return spec.k * spec.core_radius_a * math.sqrt(spec.n1**2 - spec.n2**2)


def single_mode_max_radius_ratio(n1: float, n2: float) -> float:
    """Largest a/lambda that keeps V below the single-mode cutoff."""
    if not (math.isfinite(n1) and math.isfinite(n2)) or n1 <= n2:
        raise InvalidSpecError(f"need n1 > n2, got n1={n1}, n2={n2}")
    return V_CUTOFF / (2 * math.pi * math.sqrt(n1**2 - n2**2))


def _transverse(beta, spec: FiberSpec):
    k = spec.k
    h = np.sqrt((spec.n1 * k) ** 2 - beta**2)
    q = np.sqrt(beta**2 - (spec.n2 * k) ** 2)
    return h, q


def _residual_terms(beta, spec: FiberSpec):
    """LHS - RHS of the HE eigenvalue equation (minus-root branch), plus J1(ha).

    Unchecked and vectorized; callers handle the guided window and poles.

    The direct right-hand side is P - R with P, R both of order 1/(qa)^2, so
    near the light line it cancels catastrophically. Multiplying through by
    (P + R) gives the identical value P - R = (P^2 - R^2)/(P + R) where
    P^2 - R^2 collapses to a sum of positive terms.
    """
    n1, n2, a = spec.n1, spec.n2, spec.core_radius_a
    h, q = _transverse(beta, spec)
    ha, qa = h * a, q * a
    j1 = special.j1(ha)
    c1 = (n1**2 + n2**2) / (2 * n1**2)
    c2 = (n1**2 - n2**2) / (2 * n1**2)
    m = n2**2 / n1**2
    U = 1.0 / qa**2
    W = 1.0 / ha**2
    # -K1'(qa)/(qa K1(qa)) = rho + U, with rho = K0/(qa K1)
    rho = special.k0(qa) / (qa * special.k1(qa))
    b2 = beta**2 / (n1**2 * spec.k**2)
    P = c1 * (U + rho) + W
    R = np.sqrt((c2 * (U + rho)) ** 2 + b2 * (U + W) ** 2)
    rhs = rho * (m * (2 * U + rho) + 2 * c1 * W) / (P + R)
    lhs = special.j0(ha) / (ha * j1)
    return lhs - rhs, j1


def _guided_window(spec: FiberSpec):
    k = spec.k
    lo = spec.n2 * k * (1 + SCAN_EDGE)
    # keep q*a inside the K-function domain
    lo = max(lo, math.sqrt((spec.n2 * k) ** 2 + (2 * K_MIN_ARG / spec.core_radius_a) ** 2))
    hi = spec.n1 * k * (1 - SCAN_EDGE)
    return lo, hi


def eigenvalue_residual(beta: float, spec: FiberSpec) -> float:
    """Residual of the HE11 eigenvalue equation at propagation constant ``beta``.

    Defined strictly inside the guided window n2*k < beta < n1*k. Raises
    SingularityError on a pole of J0/J1 (|J1(ha)| < 1e-13).
    """
    k = spec.k
    if not (spec.n2 * k < beta < spec.n1 * k):
        raise DomainError(
            f"beta={beta!r} outside guided window ({spec.n2 * k}, {spec.n1 * k})"
        )
    h, q = _transverse(beta, spec)
    if q * spec.core_radius_a < K_MIN_ARG:
        raise DomainError("beta too close to the cladding light line")
    with np.errstate(divide="ignore", invalid="ignore"):
        res, j1 = _residual_terms(float(beta), spec)
    if abs(j1) < J1_POLE_TOL:
        raise SingularityError(f"J1(ha) vanishes at ha={h * spec.core_radius_a}")
    return float(res)


def _scan_grid(spec: FiberSpec):
    """Uniform beta samples over the guided window, plus log-spaced samples in
    q*a down to the K-domain floor, where very thin fibers put their root."""
    lo, hi = _guided_window(spec)
    uniform = np.linspace(lo, hi, SCAN_SAMPLES)
    n2k, a = spec.n2 * spec.k, spec.core_radius_a
    qa_first = math.sqrt(max(uniform[1] ** 2 - n2k**2, 0.0)) * a
    qa_floor = 2 * K_MIN_ARG
    if qa_first <= qa_floor:
        return uniform
    qa = np.geomspace(qa_floor, qa_first, LIGHT_LINE_SAMPLES)
    near = np.sqrt(n2k**2 + (qa / a) ** 2)
    near = near[(near > lo) & (near < uniform[1])]
    return np.concatenate([[lo], near, uniform[1:]])


def _bracket(spec: FiberSpec):
    betas = _scan_grid(spec)
    with np.errstate(divide="ignore", invalid="ignore"):
        res, j1 = _residual_terms(betas, spec)
    sign = np.sign(res)
    ok = np.isfinite(res)
    # walk down from the top: HE11 has the largest beta
    for i in range(len(betas) - 2, -1, -1):
        if not (ok[i] and ok[i + 1]):
            continue
        if sign[i + 1] == 0:
            return betas[i + 1], betas[i + 1]
        if sign[i] != sign[i + 1] and np.sign(j1[i]) == np.sign(j1[i + 1]):
            return betas[i], betas[i + 1]
    raise NoRootError(
        f"no HE11 root found in guided window for {spec} "
        f"(root may lie below q*a = {2 * K_MIN_ARG:g}, V = {v_number(spec):.4g})"
    )


def _s_parameter(h: float, q: float, a: float) -> float:
    ha, qa = h * a, q * a
    j1p = special.j0(ha) - special.j1(ha) / ha
    k1p = -special.k0(qa) - special.k1(qa) / qa
    num = 1.0 / qa**2 + 1.0 / ha**2
    den = j1p / (ha * special.j1(ha)) + k1p / (qa * special.k1(qa))
    return float(num / den)


def solve_fundamental(spec: FiberSpec) -> ModeSolution:
    """Solve for the HE11 propagation constant and derived mode parameters."""
    lo, hi = _bracket(spec)
    f = lambda b: float(_residual_terms(b, spec)[0])
    # bisect to full double precision; a 1e-12 width leaves residuals near 1e-10
    if lo == hi:
        beta = lo
    else:
        beta = optimize.bisect(f, lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=200)
    res = eigenvalue_residual(beta, spec)
    if not abs(res) < RESIDUAL_TOL:
        raise NoRootError(f"refined root has residual {res:.3e}; bracket straddled a pole?")
    h, q = _transverse(beta, spec)
    return ModeSolution(
        spec=spec,
        beta=float(beta),
        h=float(h),
        q=float(q),
        s=_s_parameter(float(h), float(q), spec.core_radius_a),
        V=v_number(spec),
        residual=res,
    )


def _shape_coefficients(sol: ModeSolution, amplitude: float, normalization) -> ModeShape:
    s, a = sol.s, sol.spec.core_radius_a
    den = sol.beta**2 * (1 - s) ** 2
    u = 2 * sol.h**2 / den
    w = 2 * sol.q**2 / den
    ratio = (1 + s) / (1 - s)
    a2 = abs(amplitude) ** 2
    jk = special.j1(sol.h * a) / special.k1(sol.q * a)
    return ModeShape(
        u=u,
        w=w,
        f=ratio**2,
        f_p=2 * ratio,
        g_in=a2 / (2 * u),
        g_out=float(a2 * jk**2 / (2 * w)),
        amplitude_A=amplitude,
        normalization=Normalization(normalization),
    )


def _peak_intensity(shape: ModeShape, sol: ModeSolution, polarization: Polarization) -> float:
    # Quasi-linear: I = P(r) + Q(r) cos 2(phi - phi0), so max over phi is P + |Q|.
    # Rotating: I = 2 P(r).
    from .field_model import intensity_parts

    a = sol.spec.core_radius_a

    def peak(r):
        p, qq = intensity_parts(shape, sol, r)
        return p + np.abs(qq) if polarization is Polarization.QUASILINEAR else 2 * p

    r_in = np.linspace(0.0, a, 4001)
    r_in[-1] = np.nextafter(a, 0.0)
    r_out = a * np.geomspace(1.0, INTEGRAL_EXTENT, 4001)
    best = -np.inf
    for rs, lo_lim, hi_lim in ((r_in, 0.0, r_in[-1]), (r_out, a, INTEGRAL_EXTENT * a)):
        vals = peak(rs)
        i = int(np.argmax(vals))
        best = max(best, float(vals[i]))
        lo, hi = rs[max(i - 1, 0)], rs[min(i + 1, len(rs) - 1)]
        lo, hi = max(lo, lo_lim), min(hi, hi_lim)
        if hi > lo:
            opt = optimize.minimize_scalar(
                lambda x: -float(peak(np.array([x]))[0]),
                bounds=(lo, hi),
                method="bounded",
                options={"xatol": 1e-12 * a},
            )
            best = max(best, -float(opt.fun))
    return best


def _cross_section_integral(shape: ModeShape, sol: ModeSolution, polarization: Polarization) -> float:
    """Integral of |E|^2 over the disk r <= 25a by 2-D adaptive quadrature."""
    from .field_model import intensity_parts

    a = sol.spec.core_radius_a

    def integrand(phi, r):
        p, qq = intensity_parts(shape, sol, np.array([r]))
        if polarization is Polarization.ROTATING:
            return 2 * r * float(p[0])
        return r * float(p[0] + qq[0] * np.cos(2 * phi))

    total = 0.0
    for r0, r1 in ((0.0, a), (a, INTEGRAL_EXTENT * a)):
        val, _ = integrate.dblquad(
            integrand, r0, r1, 0.0, 2 * np.pi, epsabs=0.0, epsrel=1e-10
        )
        total += val
    return total


def mode_shape(
    spec: FiberSpec,
    sol: ModeSolution,
    normalization: Normalization | str = Normalization.UNIT_AMPLITUDE,
    polarization: Polarization | str = Polarization.QUASILINEAR,
) -> ModeShape:
    """Intensity shape coefficients with the amplitude A fixed by ``normalization``.

    ``unit_peak`` scales max |E|^2 over the cross-section to 1 and
    ``unit_cross_section_integral`` scales the integral of |E|^2 over
    r <= 25a to 1; both refer to the given polarization class.
    """
    if sol.spec != spec:
        raise DomainError("mode solution was computed for a different fiber")
    normalization = Normalization(normalization)
    polarization = Polarization(polarization)
    unit = _shape_coefficients(sol, 1.0, normalization)
    if normalization is Normalization.UNIT_AMPLITUDE:
        return unit
    if normalization is Normalization.UNIT_PEAK:
        scale = _peak_intensity(unit, sol, polarization)
    else:
        scale = _cross_section_integral(unit, sol, polarization)
    return _shape_coefficients(sol, 1.0 / math.sqrt(scale), normalization)
