"""Independent numerical oracles used to freeze expected values in the tests.

These deliberately avoid the package's own quadrature and closed forms:
dense trapezoid sums stand in for the adaptive integrator and explicit
formulas computed here stand in for the library's algebra.
"""

import math

import numpy as np


def dense_phi(r1, r2, rho, a, x_max=8.0, n_nodes=1_000_001):
    """Weighted resonance integral by a dense trapezoid rule."""
    x = np.linspace(-x_max, x_max, n_nodes)
    c = rho * math.sqrt(r1 * r2)
    weight = np.exp(-x * x)
    denom = 1.0 - 2.0 * c * np.cos(x / a) + c * c
    return float(np.trapezoid(weight / denom, x) / np.trapezoid(weight, x))


def dense_energy_ratios(r1, r2, rho, a, x_max=8.0, n_nodes=1_000_001):
    """Reflected and transmitted energy fractions by a dense trapezoid rule."""
    x = np.linspace(-x_max, x_max, n_nodes)
    c = rho * math.sqrt(r1 * r2)
    weight = np.exp(-x * x)
    denom = 1.0 - 2.0 * c * np.cos(x / a) + c * c
    reflect = 1.0 - (1.0 - r1) * (1.0 - rho * rho * r2) / denom
    transmit = (1.0 - r1) * (1.0 - r2) / denom
    norm = np.trapezoid(weight, x)
    return (
        float(np.trapezoid(weight * reflect, x) / norm),
        float(np.trapezoid(weight * transmit, x) / norm),
    )


def gaussian_window_integral(x_max):
    """Exact value of the integral of exp(-x^2) over [-x_max, x_max]."""
    return math.sqrt(math.pi) * math.erf(x_max)


def phi_asymptote(r1, r2, rho):
    """Large-coherence limit of the resonance integral."""
    return 1.0 / (1.0 - rho * math.sqrt(r1 * r2)) ** 2
