"""Electric field, intensities and polarization metrics of the HE11 mode.

Every function broadcasts over array-valued ``r`` and ``phi`` (lengths in
micrometers, angles in radians). Fields are evaluated at z = 0, t = 0: the
common factor exp(i(wt - beta z)) is a global phase, exposed through the
optional ``phase`` argument for callers that need the time/space dependence.

Branch convention: r < a uses the core expressions, r >= a the cladding ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import special

from .errors import DomainError, SingularityError
from .mode_solver import ModeShape, ModeSolution, Polarization

#: Real parts below this are treated as exact zeros of the transverse field.
ZERO_FIELD = 1e-300


class Sense(str, Enum):
    """Circulation sense of the rotating mode; clockwise takes the upper sign."""

    CLOCKWISE = "clockwise"
    COUNTERCLOCKWISE = "counterclockwise"

    @property
    def sign(self) -> int:
        return 1 if self is Sense.CLOCKWISE else -1


@dataclass(frozen=True)
class FieldVector:
    Ex: np.ndarray
    Ey: np.ndarray
    Ez: np.ndarray
    Er: np.ndarray
    Ephi: np.ndarray
    r: np.ndarray
    phi: np.ndarray

    def intensity(self):
        return abs(self.Ex) ** 2 + abs(self.Ey) ** 2 + abs(self.Ez) ** 2


@dataclass(frozen=True)
class PolarizationSample:
    """Orientation angle ``theta`` and ellipticity ``epsilon``; NaN marks a missing value."""

    theta: np.ndarray
    epsilon: np.ndarray
    r: np.ndarray
    phi: np.ndarray


def _check_r(r):
    r = np.asarray(r, dtype=float)
    if np.any(~(r >= 0)):
        raise DomainError("radial coordinate must be finite and >= 0")
    return r


def _scalarize(x):
    return x[()] if isinstance(x, np.ndarray) and x.ndim == 0 else x


def _matching(sol: ModeSolution) -> float:
    a = sol.spec.core_radius_a
    return float(special.j1(sol.h * a) / special.k1(sol.q * a))


def _radial_profiles(shape: ModeShape, sol: ModeSolution, r, outside: bool):
    """(T0, T2, Fz, prefactor) of one branch.

    The transverse fields are ``-i * pref * [(1-s) T0 +/- (1+s) T2]`` with the
    angular factors applied by the caller; ``Fz`` is the real z profile.
    """
    A, s, beta = shape.amplitude_A, sol.s, sol.beta
    if outside:
        c = _matching(sol)
        x = sol.q * r
        return special.k0(x), special.kn(2, x), A * c * special.k1(x), A * beta * c / (2 * sol.q)
    x = sol.h * r
    return special.j0(x), special.jv(2, x), A * special.j1(x), A * beta / (2 * sol.h)


def _quasilinear_branch(shape, sol, r, phi, phi0, outside):
    s = sol.s
    T0, T2, Fz, pref = _radial_profiles(shape, sol, r, outside)
    c2 = (1 + s) * T2 * (1.0 if outside else -1.0)
    c0 = (1 - s) * T0
    Ex = -1j * pref * (c0 * np.cos(phi0) + c2 * np.cos(2 * phi - phi0))
    Ey = -1j * pref * (c0 * np.sin(phi0) + c2 * np.sin(2 * phi - phi0))
    Ez = Fz * np.cos(phi - phi0) + 0j
    return Ex, Ey, Ez


def _rotating_radial(shape, sol, r, outside):
    """Radial functions F_r, F_phi, F_z of one branch."""
    s = sol.s
    T0, T2, Fz, pref = _radial_profiles(shape, sol, r, outside)
    sgn = 1.0 if outside else -1.0
    Fr = -1j * pref * ((1 - s) * T0 + sgn * (1 + s) * T2)
    Fphi = pref * ((1 - s) * T0 - sgn * (1 + s) * T2) + 0j
    return Fr, Fphi, Fz + 0j


def _rotating_branch(shape, sol, r, phi, sense: Sense, outside):
    m = sense.sign
    Fr, Fphi, Fz = _rotating_radial(shape, sol, r, outside)
    e = np.exp(1j * m * phi)
    Er, Ephi, Ez = Fr * e, m * Fphi * e, Fz * e
    c, sn = np.cos(phi), np.sin(phi)
    return Er * c - Ephi * sn, Er * sn + Ephi * c, Ez, Er, Ephi


def _split(r, phi, a, fn):
    """Evaluate ``fn(r_sub, phi_sub, outside)`` per branch and reassemble."""
    r, phi = np.broadcast_arrays(r, np.asarray(phi, dtype=float))
    inside = r < a
    parts_in = fn(r[inside], phi[inside], False)
    parts_out = fn(r[~inside], phi[~inside], True)
    out = []
    for pi, po in zip(parts_in, parts_out):
        arr = np.empty(r.shape, dtype=complex)
        arr[inside] = pi
        arr[~inside] = po
        out.append(arr)
    return r, phi, out


def _to_cylindrical(Ex, Ey, phi):
    c, sn = np.cos(phi), np.sin(phi)
    return Ex * c + Ey * sn, -Ex * sn + Ey * c


def _vector(Ex, Ey, Ez, Er, Ephi, r, phi, phase):
    g = np.exp(1j * phase) if phase else 1.0
    return FieldVector(
        *(_scalarize(np.asarray(v * g)) for v in (Ex, Ey, Ez, Er, Ephi)),
        r=_scalarize(np.asarray(r)),
        phi=_scalarize(np.asarray(phi)),
    )


def field_quasilinear(shape: ModeShape, sol: ModeSolution, r, phi, phi0=0.0, phase=0.0) -> FieldVector:
    """Field of the quasi-linearly polarized mode; ``phi0`` sets the polarization axis."""
    r = _check_r(r)
    r, phi, (Ex, Ey, Ez) = _split(
        r, phi, sol.spec.core_radius_a,
        lambda rr, pp, out: _quasilinear_branch(shape, sol, rr, pp, phi0, out),
    )
    Er, Ephi = _to_cylindrical(Ex, Ey, phi)
    return _vector(Ex, Ey, Ez, Er, Ephi, r, phi, phase)


def field_rotating(shape: ModeShape, sol: ModeSolution, r, phi, sense=Sense.CLOCKWISE, phase=0.0) -> FieldVector:
    """Field of the rotating-polarization mode carrying exp(+/- i phi)."""
    sense = Sense(sense)
    r = _check_r(r)
    r, phi, (Ex, Ey, Ez, Er, Ephi) = _split(
        r, phi, sol.spec.core_radius_a,
        lambda rr, pp, out: _rotating_branch(shape, sol, rr, pp, sense, out),
    )
    return _vector(Ex, Ey, Ez, Er, Ephi, r, phi, phase)


def intensity_parts(shape: ModeShape, sol: ModeSolution, r):
    """Split the quasi-linear |E|^2 as ``iso + aniso * cos 2(phi - phi0)``."""
    r = _check_r(r)
    a = sol.spec.core_radius_a
    iso = np.empty(r.shape)
    aniso = np.empty(r.shape)
    inside = r < a
    x = sol.h * r[inside]
    J0, J1, J2 = special.j0(x), special.j1(x), special.jv(2, x)
    iso[inside] = shape.g_in * (J0**2 + shape.u * J1**2 + shape.f * J2**2)
    aniso[inside] = shape.g_in * (shape.u * J1**2 - shape.f_p * J0 * J2)
    x = sol.q * r[~inside]
    K0, K1, K2 = special.k0(x), special.k1(x), special.kn(2, x)
    iso[~inside] = shape.g_out * (K0**2 + shape.w * K1**2 + shape.f * K2**2)
    aniso[~inside] = shape.g_out * (shape.w * K1**2 + shape.f_p * K0 * K2)
    return iso, aniso


def intensity_quasilinear(shape: ModeShape, sol: ModeSolution, r, phi, phi0=0.0):
    iso, aniso = intensity_parts(shape, sol, r)
    return _scalarize(iso + aniso * np.cos(2 * (np.asarray(phi, dtype=float) - phi0)))


def intensity_rotating(shape: ModeShape, sol: ModeSolution, r):
    iso, _ = intensity_parts(shape, sol, r)
    return _scalarize(2 * iso)


def intensity_lp01(shape: ModeShape, sol: ModeSolution, r, polarization=Polarization.QUASILINEAR):
    """LP01 reference: g_in J0^2(hr) in the core, g_out K0^2(qr) outside; doubled when rotating."""
    polarization = Polarization(polarization)
    r = _check_r(r)
    inside = r < sol.spec.core_radius_a
    out = np.empty(r.shape)
    out[inside] = shape.g_in * special.j0(sol.h * r[inside]) ** 2
    out[~inside] = shape.g_out * special.k0(sol.q * r[~inside]) ** 2
    if polarization is Polarization.ROTATING:
        out *= 2
    return _scalarize(out)


def _fold_half_turn(theta):
    theta = np.where(theta > np.pi / 2, theta - np.pi, theta)
    return np.where(theta <= -np.pi / 2, theta + np.pi, theta)


def transverse_orientation(Ex, Ey):
    """arctan(Re Ey / Re Ex) of the real field at the instant its transverse part peaks.

    The quasi-linear mode's Ex and Ey share one phase; it is removed before
    taking real parts (at z = t = 0 both are purely imaginary). Returns NaN
    where both real parts vanish.
    """
    Ex, Ey = np.asarray(Ex, dtype=complex), np.asarray(Ey, dtype=complex)
    psi = 0.5 * np.angle(Ex * Ex + Ey * Ey)
    rot = np.exp(-1j * psi)
    X, Y = (Ex * rot).real, (Ey * rot).real
    theta = _fold_half_turn(np.arctan2(Y, X))
    missing = (np.abs(X) < ZERO_FIELD) & (np.abs(Y) < ZERO_FIELD)
    return np.where(missing, np.nan, theta)


def orbit_orientation(Ex, Ey):
    """Major-axis orientation of the transverse polarization ellipse, in (-pi/2, pi/2]."""
    Ex, Ey = np.asarray(Ex, dtype=complex), np.asarray(Ey, dtype=complex)
    s1 = np.abs(Ex) ** 2 - np.abs(Ey) ** 2
    s2 = 2 * (Ex * np.conj(Ey)).real
    return _fold_half_turn(0.5 * np.arctan2(s2, s1))


def orientation_angle(shape: ModeShape, sol: ModeSolution, r, phi, phi0=0.0) -> PolarizationSample:
    """Orientation of the (linearly polarized) transverse field of the quasi-linear mode.

    ``epsilon`` is NaN: the metric applies to the rotating mode only.
    """
    fv = field_quasilinear(shape, sol, r, phi, phi0)
    theta = transverse_orientation(fv.Ex, fv.Ey)
    return PolarizationSample(
        theta=_scalarize(theta),
        epsilon=_scalarize(np.full(np.shape(theta), np.nan)),
        r=fv.r,
        phi=fv.phi,
    )


def ellipticity_rotating(shape: ModeShape, sol: ModeSolution, r, phi=0.0, sense=Sense.CLOCKWISE) -> PolarizationSample:
    """Ellipticity ||E_r| - |E_phi|| / (|E_r| + |E_phi|) of the rotating mode's orbit.

    ``theta`` is the orientation of the orbit's major axis at ``phi``.
    """
    fv = field_rotating(shape, sol, r, phi, sense)
    ar, ap = np.abs(fv.Er), np.abs(fv.Ephi)
    eps = np.abs(ar - ap) / (ar + ap)
    theta = orbit_orientation(fv.Ex, fv.Ey)
    return PolarizationSample(theta=_scalarize(theta), epsilon=_scalarize(eps), r=fv.r, phi=fv.phi)


def boundary_fields(shape: ModeShape, sol: ModeSolution, phi, phi0_or_sense=0.0):
    """One-sided limits (core side, cladding side) of the field at r = a.

    A float selects the quasi-linear mode with that phi0; a ``Sense`` (or its
    string value) selects the rotating mode.
    """
    a = sol.spec.core_radius_a
    r = np.full(np.shape(phi), a, dtype=float)
    phi = np.asarray(phi, dtype=float)
    out = []
    for outside in (False, True):
        if isinstance(phi0_or_sense, (str, Sense)):
            Ex, Ey, Ez, Er, Ephi = _rotating_branch(shape, sol, r, phi, Sense(phi0_or_sense), outside)
        else:
            Ex, Ey, Ez = _quasilinear_branch(shape, sol, r, phi, float(phi0_or_sense), outside)
            Er, Ephi = _to_cylindrical(Ex, Ey, phi)
        out.append(_vector(Ex, Ey, Ez, Er, Ephi, r, phi, 0.0))
    return tuple(out)


def boundary_jump(shape: ModeShape, sol: ModeSolution, phi, phi0_or_sense=0.0):
    """|E_r(a+)| / |E_r(a-)|; equals (n1/n2)^2 for a solved mode.

    Raises SingularityError where the core-side radial field vanishes.
    """
    fin, fout = boundary_fields(shape, sol, phi, phi0_or_sense)
    er_in = np.abs(fin.Er)
    scale = np.sqrt(fin.intensity())
    if np.any(er_in <= 1e-12 * scale):
        raise SingularityError("radial field vanishes on the core side; jump ratio undefined")
    return _scalarize(np.asarray(np.abs(fout.Er) / er_in))
