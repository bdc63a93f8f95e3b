import logging

import numpy as np
from scipy.special import spherical_jn

from polder.errors import InvalidArgumentError
from polder.services.lebedev import sphere_average

logger = logging.getLogger(__name__)

SERIES_CUTOFF = 1e-3


def _series_mask(x):
    x = np.asarray(x, dtype=float)
    return x, np.abs(x) < SERIES_CUTOFF


def sph_bessel_j0(x, derivative=0):
    """
    Función esférica de Bessel j₀(x) = sin(x)/x y sus derivadas.

    Para |x| < 10⁻³ se usa el desarrollo en serie.

    Args:
        x: Escalar o array
        derivative: 0, 1 o 2

    Returns:
        Mismo tipo que x
    """
    if derivative not in (0, 1, 2):
        raise InvalidArgumentError(f"Solo se admiten derivadas de orden 0 a 2, recibido {derivative}")
    scalar = np.ndim(x) == 0
    x, small = _series_mask(x)
    x2 = x * x
    if derivative == 0:
        series = 1.0 - x2 / 6.0 + x2 * x2 / 120.0 - x2 ** 3 / 5040.0
        exact = spherical_jn(0, x)
    elif derivative == 1:
        series = x * (-1.0 / 3.0 + x2 / 30.0 - x2 * x2 / 840.0)
        exact = spherical_jn(0, x, derivative=True)
    else:
        series = -1.0 / 3.0 + x2 / 10.0 - x2 * x2 / 168.0
        safe = np.where(small, 1.0, x)
        # j₀″ = −j₀ − 2j₀′/x
        exact = -spherical_jn(0, safe) - 2.0 * spherical_jn(0, safe, derivative=True) / safe
    result = np.where(small, series, exact)
    return float(result) if scalar else result


def j0_prime_over_x(x):
    """j₀′(x)/x con la singularidad evitable en x = 0 resuelta"""
    scalar = np.ndim(x) == 0
    x, small = _series_mask(x)
    x2 = x * x
    safe = np.where(small, 1.0, x)
    result = np.where(small, -1.0 / 3.0 + x2 / 30.0 - x2 * x2 / 840.0,
                      spherical_jn(0, safe, derivative=True) / safe)
    return float(result) if scalar else result


def magnetic_bracket_avg(k, kp, r, params):
    """
    Promedio angular del corchete magnético:
    ⟨d²∇j₀(kr)·∇j₀(k′r) − (d·∇j₀(kr))(d·∇j₀(k′r))⟩ = (2|d|²/3)·k·k′·j₀′(kr)·j₀′(k′r).
    """
    return (2.0 * params.dipole_sq / 3.0) * k * kp * sph_bessel_j0(k * r, 1) * sph_bessel_j0(kp * r, 1)


def electric_bracket_terms(k, kp, r, params):
    """
    Promedios angulares de los cuatro términos del corchete eléctrico.

    Con A(x) = (I − r̂r̂)·j₀′(x)/x + r̂r̂·j₀″(x) el hessiano es ∇∇j₀(kr) = k²A(kr),
    y ⟨r̂ᵢr̂ⱼ⟩ = δᵢⱼ/3 da cada término.

    Returns:
        tuple: (d²j₀j₀, término cruzado en k′, término cruzado en k, contracción)
    """
    d2 = params.dipole_sq
    x, xp = k * r, kp * r
    j, jp = sph_bessel_j0(x), sph_bessel_j0(xp)
    direct = d2 * j * jp
    # (1/k′²)(d·∇)²j₀(k′r) promedia a −(d²/3)j₀(k′r)
    cross_kp = -(d2 / 3.0) * j * jp
    cross_k = -(d2 / 3.0) * j * jp
    contraction = (d2 / 3.0) * (2.0 * j0_prime_over_x(x) * j0_prime_over_x(xp)
                                + sph_bessel_j0(x, 2) * sph_bessel_j0(xp, 2))
    return direct, cross_kp, cross_k, contraction


def electric_bracket_avg(k, kp, r, params):
    """
    Promedio angular del corchete eléctrico completo:
    (|d|²/3)·[j₀(x)j₀(x′) + 2(j₀′(x)/x)(j₀′(x′)/x′) + j₀″(x)j₀″(x′)], x = kr, x′ = k′r.
    """
    direct, cross_kp, cross_k, contraction = electric_bracket_terms(k, kp, r, params)
    return direct + cross_kp + cross_k + contraction


# Oráculo: corchetes sin promediar construidos con derivadas cartesianas

def gradient_j0(k, rvec):
    """∇j₀(k|r|) = k·j₀′(kr)·r̂ para un array (N, 3) de posiciones"""
    rvec = np.atleast_2d(rvec)
    r = np.linalg.norm(rvec, axis=1)
    r_hat = rvec / r[:, None]
    return (k * sph_bessel_j0(k * r, 1))[:, None] * r_hat


def hessian_j0(k, rvec):
    """
    ∇ᵢ∇ⱼ j₀(k|r|) = (δᵢⱼ − r̂ᵢr̂ⱼ)·f′/r + r̂ᵢr̂ⱼ·f″, con f(r) = j₀(kr).

    Returns:
        array (N, 3, 3)
    """
    rvec = np.atleast_2d(rvec)
    r = np.linalg.norm(rvec, axis=1)
    r_hat = rvec / r[:, None]
    x = k * r
    f1_over_r = k * k * j0_prime_over_x(x)
    f2 = k * k * sph_bessel_j0(x, 2)
    outer = r_hat[:, :, None] * r_hat[:, None, :]
    return (np.eye(3)[None] - outer) * f1_over_r[:, None, None] + outer * f2[:, None, None]


def electric_bracket_pointwise(k, kp, rvec, dipole):
    """Corchete eléctrico sin promediar en cada posición de rvec (N, 3)"""
    d = np.asarray(dipole, dtype=float)
    rvec = np.atleast_2d(rvec)
    r = np.linalg.norm(rvec, axis=1)
    j, jp = sph_bessel_j0(k * r), sph_bessel_j0(kp * r)
    h_d = hessian_j0(k, rvec) @ d
    hp_d = hessian_j0(kp, rvec) @ d
    d2 = float(d @ d)
    return (d2 * j * jp
            + j * (hp_d @ d) / kp ** 2
            + jp * (h_d @ d) / k ** 2
            + np.einsum('ni,ni->n', h_d, hp_d) / (k * k * kp * kp))


def magnetic_bracket_pointwise(k, kp, rvec, dipole):
    """Corchete magnético sin promediar en cada posición de rvec (N, 3)"""
    d = np.asarray(dipole, dtype=float)
    g = gradient_j0(k, rvec)
    gp = gradient_j0(kp, rvec)
    return float(d @ d) * np.einsum('ni,ni->n', g, gp) - (g @ d) * (gp @ d)


def electric_bracket_sphere(k, kp, r, params, order=110):
    """Promedio del corchete eléctrico por cuadratura de Lebedev (oráculo)"""
    return sphere_average(lambda n: electric_bracket_pointwise(k, kp, r * n, params.dipole), order)


def magnetic_bracket_sphere(k, kp, r, params, order=110):
    """Promedio del corchete magnético por cuadratura de Lebedev (oráculo)"""
    return sphere_average(lambda n: magnetic_bracket_pointwise(k, kp, r * n, params.dipole), order)
