"""Axially symmetric qubit-qutrit Hamiltonian and its Gibbs state."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields, replace

import numpy as np

from .exceptions import NonpositiveTemperature
from .closed_form import CorrelationBranches, correlations
from .state import ASDensityMatrix, ASSpectrum, spectrum

__all__ = [
    "HamiltonianParams",
    "HamiltonianSummary",
    "PARAM_NAMES",
    "SPIN_HALF",
    "SPIN_ONE",
    "MIN_TEMPERATURE",
    "hamiltonian_matrix",
    "hamiltonian_from_spins",
    "energy_levels",
    "partition_function",
    "log_partition",
    "gibbs_state",
    "gibbs_spectrum",
    "thermal_correlations",
    "gibbs_oracle",
]

PARAM_NAMES = ("B1", "B2", "J", "Jz", "K", "K1", "K2", "Dz", "Gamma", "Lambda")

#: below this temperature the Gibbs state is replaced by its T -> 0 limit
MIN_TEMPERATURE = 1e-4
_SMALL_GAP = 1e-10
_GROUND_TOL = 1e-10

_R2 = math.sqrt(2.0)
SPIN_HALF = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex) / 2,
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex) / 2,
    "z": np.array([[1, 0], [0, -1]], dtype=complex) / 2,
}
SPIN_ONE = {
    "x": np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=complex) / _R2,
    "y": np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]], dtype=complex) / _R2,
    "z": np.diag([1.0, 0.0, -1.0]).astype(complex),
}


@dataclass(frozen=True)
class HamiltonianParams:
    """Couplings of the general axially symmetric spin-(1/2, 1) Hamiltonian.

    ``B1``/``B2`` are fields on the qubit/qutrit, ``J``/``Jz`` the exchange
    constants, ``K``/``K1`` the uniaxial/planar one-ion anisotropies, ``K2``
    the two-ion anisotropy, ``Dz`` the Dzyaloshinsky component, and
    ``Gamma``/``Lambda`` the symmetric/antisymmetric higher-order couplings.
    """

    B1: float = 0.0
    B2: float = 0.0
    J: float = 0.0
    Jz: float = 0.0
    K: float = 0.0
    K1: float = 0.0
    K2: float = 0.0
    Dz: float = 0.0
    Gamma: float = 0.0
    Lambda: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            x = float(getattr(self, f.name))
            if not math.isfinite(x):
                raise ValueError(f"{f.name} must be finite, got {x!r}")
            object.__setattr__(self, f.name, x)

    def as_dict(self) -> dict:
        return asdict(self)

    def with_value(self, name: str, value: float) -> "HamiltonianParams":
        return replace(self, **{name: value})

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, n) for n in PARAM_NAMES])


@dataclass(frozen=True)
class HamiltonianSummary:
    h1: float
    h2: float
    h3: float
    h4: float
    g1: complex
    g2: complex
    E1: float
    E2: float
    E3: float
    E4: float
    E5: float
    E6: float
    R1: float
    R2: float

    @property
    def levels(self) -> np.ndarray:
        return np.array([self.E1, self.E2, self.E3, self.E4, self.E5, self.E6])


def _op(qubit=None, qutrit=None) -> np.ndarray:
    a = np.eye(2) if qubit is None else qubit
    b = np.eye(3) if qutrit is None else qutrit
    return np.kron(a, b)


def hamiltonian_from_spins(p: HamiltonianParams) -> np.ndarray:
    """Assemble the Hamiltonian term by term from spin operators."""
    sx, sy, sz = (SPIN_HALF[k] for k in "xyz")
    Sx, Sy, Sz = (SPIN_ONE[k] for k in "xyz")
    H = (p.B1 * _op(sz) + p.B2 * _op(qutrit=Sz)
         + p.J * (_op(sx, Sx) + _op(sy, Sy)) + p.Jz * _op(sz, Sz)
         + p.K * _op(qutrit=Sz @ Sz) + p.K1 * _op(qutrit=Sx @ Sx + Sy @ Sy)
         + p.K2 * _op(sz, Sz @ Sz)
         + p.Dz * (_op(sx, Sy) - _op(sy, Sx))
         + p.Gamma * (_op(sx, Sx @ Sz + Sz @ Sx) + _op(sy, Sy @ Sz + Sz @ Sy))
         + p.Lambda * (_op(sx, Sy @ Sz + Sz @ Sy) - _op(sy, Sx @ Sz + Sz @ Sx)))
    return H


def energy_levels(p: HamiltonianParams) -> HamiltonianSummary:
    """Block entries, gaps and the six energy levels in closed form."""
    h1 = p.B1 / 2 + 2 * p.K1
    h2 = p.B1 / 2 - p.B2 - p.Jz / 2 + p.K + p.K1 + p.K2 / 2
    h3 = -p.B1 / 2 + p.B2 - p.Jz / 2 + p.K + p.K1 - p.K2 / 2
    h4 = -p.B1 / 2 + 2 * p.K1
    g1 = complex(p.J + p.Gamma, p.Dz + p.Lambda) / _R2
    g2 = complex(p.J - p.Gamma, p.Dz - p.Lambda) / _R2
    R1 = math.hypot(h1 - h3, 2 * abs(g1))
    R2 = math.hypot(h2 - h4, 2 * abs(g2))
    centre = p.Jz / 2 + p.K + p.K1
    split = p.B1 / 2 + p.B2 + p.K2 / 2
    return HamiltonianSummary(
        h1=h1, h2=h2, h3=h3, h4=h4, g1=g1, g2=g2,
        E1=centre + split,
        E2=(h1 + h3 + R1) / 2, E3=(h1 + h3 - R1) / 2,
        E4=(h2 + h4 + R2) / 2, E5=(h2 + h4 - R2) / 2,
        E6=centre - split,
        R1=R1, R2=R2,
    )


def hamiltonian_matrix(p: HamiltonianParams, method: str = "pattern") -> np.ndarray:
    """Dense 6x6 Hamiltonian.

    ``method="pattern"`` fills the sparse axially symmetric pattern from the
    block entries; ``method="spins"`` sums the spin-operator terms.
    """
    if method == "spins":
        return hamiltonian_from_spins(p)
    if method != "pattern":
        raise ValueError(f"unknown method {method!r}")
    hs = energy_levels(p)
    H = np.diag(np.array([hs.E1, hs.h1, hs.h2, hs.h3, hs.h4, hs.E6], dtype=complex))
    H[1, 3] = hs.g1
    H[3, 1] = hs.g1.conjugate()
    H[2, 4] = hs.g2
    H[4, 2] = hs.g2.conjugate()
    return H


def _check_temperature(T: float) -> float:
    T = float(T)
    if not T > 0.0:
        raise NonpositiveTemperature(f"temperature must be positive, got {T!r}")
    return T


def partition_function(p: HamiltonianParams, T: float) -> float:
    """Partition function in its hyperbolic-cosine form (overflows at small T)."""
    T = _check_temperature(T)
    hs = energy_levels(p)
    return 2.0 * (math.cosh((p.B1 + 2 * p.B2 + p.K2) / (2 * T))
                  * math.exp(-(p.Jz + 2 * p.K + 2 * p.K1) / (2 * T))
                  + math.cosh(hs.R1 / (2 * T)) * math.exp(-(hs.h1 + hs.h3) / (2 * T))
                  + math.cosh(hs.R2 / (2 * T)) * math.exp(-(hs.h2 + hs.h4) / (2 * T)))


def log_partition(p: HamiltonianParams, T: float) -> float:
    T = _check_temperature(T)
    E = energy_levels(p).levels
    e0 = E.min()
    return -e0 / T + math.log(np.exp(-(E - e0) / T).sum())


def _block(h_top, h_bot, g, w_hi, w_lo, slope, norm):
    """Entries of one 2x2 block of the (unnormalized) Gibbs matrix.

    ``slope`` is ``(w_lo - w_hi) / R`` evaluated without cancellation.
    """
    mean = 0.5 * (w_hi + w_lo)
    top = (mean + 0.5 * (h_bot - h_top) * slope) / norm
    bot = (mean + 0.5 * (h_top - h_bot) * slope) / norm
    off = -g * slope / norm + 0j  # no negative zeros
    return top, bot, off


def _boltzmann(hs: HamiltonianSummary, T: float):
    """Weights relative to the ground level and the block slope function."""
    E = hs.levels
    e0 = float(E.min())
    if T < MIN_TEMPERATURE:
        w = (E - e0 <= _GROUND_TOL).astype(float)

        def slope(w_hi, w_lo, R):
            return 0.0 if R <= _GROUND_TOL else (w_lo - w_hi) / R
    else:
        w = np.exp(-(E - e0) / T)

        def slope(w_hi, w_lo, R):
            if R < _SMALL_GAP:
                return w_lo / T * (1.0 - R / (2 * T))
            return -w_lo * math.expm1(-R / T) / R
    return w, e0, slope


def gibbs_state(p: HamiltonianParams, T: float) -> tuple[ASDensityMatrix, float]:
    """Thermal state ``exp(-H/T)/Z`` from the analytic entries, and ``Z``.

    Exponentials are taken relative to the ground energy so nothing
    overflows; ``Z`` itself is returned as ``inf`` once it exceeds the float
    range (see :func:`log_partition`).
    """
    T = _check_temperature(T)
    hs = energy_levels(p)
    w, e0, slope = _boltzmann(hs, T)
    w1, w2, w3, w4, w5, w6 = (float(x) for x in w)
    norm = w.sum()
    a, c, u = _block(hs.h1, hs.h3, hs.g1, w2, w3, slope(w2, w3, hs.R1), norm)
    b, d, v = _block(hs.h2, hs.h4, hs.g2, w4, w5, slope(w4, w5, hs.R2), norm)
    state = ASDensityMatrix(w1 / norm, a, b, c, d, w6 / norm, u, v)
    with np.errstate(over="ignore"):
        Z = float(np.exp(np.log(norm) - e0 / T))
    return state, Z


def gibbs_spectrum(p: HamiltonianParams, T: float) -> tuple[ASDensityMatrix, ASSpectrum]:
    """Thermal state together with its exact spectrum ``exp(-E_i/T)/Z``.

    The Boltzmann weights are the eigenvalues, so nothing has to be
    recovered from the entries.  Near T = 0 that matters: the small block
    eigenvalue ``det/p_hi`` carries an absolute error of order 1e-16, which
    the square roots in the LQU branches amplify to 1e-8.
    """
    T = _check_temperature(T)
    state, _ = gibbs_state(p, T)
    w, _, _ = _boltzmann(energy_levels(p), T)
    w = w / w.sum()
    # the larger eigenvalue of each block belongs to the lower level (E3, E5)
    s = replace(spectrum(state), p1=float(w[0]), p2=float(w[2]), p3=float(w[1]),
                p4=float(w[4]), p5=float(w[3]), p6=float(w[5]))
    return state, s


def thermal_correlations(p: HamiltonianParams, T: float) -> CorrelationBranches:
    """LQU and LQFI branches of the Gibbs state at temperature ``T``."""
    state, s = gibbs_spectrum(p, T)
    return correlations(state, s)


def gibbs_oracle(p: HamiltonianParams, T: float) -> np.ndarray:
    """``exp(-H/T)/Z`` by numerical diagonalization of the dense Hamiltonian."""
    T = _check_temperature(T)
    evals, evecs = np.linalg.eigh(hamiltonian_from_spins(p))
    w = np.exp(-(evals - evals.min()) / T)
    rho = (evecs * (w / w.sum())) @ evecs.conj().T
    return 0.5 * (rho + rho.conj().T)
