"""Axially symmetric qubit-qutrit density matrices.

The product basis is ordered |s, m> with s = up, down for the qubit and
m = 1, 0, -1 for the qutrit, so the total z-spin reads
diag(3/2, 1/2, -1/2, 1/2, -1/2, -3/2).  A matrix commuting with it has
nonzero entries only on the diagonal and at (2,4), (3,5) (one-based) and
their mirror positions::

    p1 .  .  .  .  .
    .  a  .  u  .  .
    .  .  b  .  v  .
    .  u* .  c  .  .
    .  .  v* .  d  .
    .  .  .  .  .  p6
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import InvalidState

__all__ = [
    "ASDensityMatrix",
    "ASSpectrum",
    "ValidationReport",
    "DEG_EPS",
    "TOTAL_SZ",
    "validate",
    "spectrum",
    "random_state",
    "to_dense",
    "maximally_mixed",
    "block_basis",
]

#: Absolute threshold on q**2 + |u|**2 below which a 2x2 block is flagged degenerate.
DEG_EPS = 1e-12
CLIP_EPS = 1e-12

TOTAL_SZ = np.diag([1.5, 0.5, -0.5, 0.5, -0.5, -1.5])


@dataclass(frozen=True)
class ASDensityMatrix:
    """The nine real parameters of an axially symmetric 6x6 density matrix."""

    p1: float
    a: float
    b: float
    c: float
    d: float
    p6: float
    u: complex = 0j
    v: complex = 0j

    def __post_init__(self):
        for name in ("p1", "a", "b", "c", "d", "p6"):
            object.__setattr__(self, name, float(getattr(self, name)))
        object.__setattr__(self, "u", complex(self.u))
        object.__setattr__(self, "v", complex(self.v))

    @classmethod
    def from_record(cls, record) -> "ASDensityMatrix":
        """Build from the flat 10-real record
        ``p1, a, b, c, d, p6, Re u, Im u, Re v, Im v``."""
        r = [float(x) for x in record]
        if len(r) != 10:
            raise ValueError(f"state record needs 10 reals, got {len(r)}")
        return cls(r[0], r[1], r[2], r[3], r[4], r[5], complex(r[6], r[7]), complex(r[8], r[9]))

    def to_record(self) -> tuple[float, ...]:
        return (self.p1, self.a, self.b, self.c, self.d, self.p6,
                self.u.real, self.u.imag, self.v.real, self.v.imag)

    def with_phases(self, theta1: float, theta2: float) -> "ASDensityMatrix":
        """Rotate the phases of the two coherences independently."""
        return ASDensityMatrix(self.p1, self.a, self.b, self.c, self.d, self.p6,
                               self.u * np.exp(1j * theta1), self.v * np.exp(1j * theta2))

    @property
    def trace(self) -> float:
        return self.p1 + self.a + self.b + self.c + self.d + self.p6


@dataclass(frozen=True)
class ASSpectrum:
    """Eigenvalues ``p1..p6`` and block eigenvector parameters ``q1``, ``q2``.

    ``p2 >= p3`` come from the {a, c, u} block and ``p4 >= p5`` from the
    {b, d, v} block.
    """

    p1: float
    p2: float
    p3: float
    p4: float
    p5: float
    p6: float
    q1: float
    q2: float
    deg_block1: bool
    deg_block2: bool

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.array([self.p1, self.p2, self.p3, self.p4, self.p5, self.p6])


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.valid


def validate(m: ASDensityMatrix, tol: float = 1e-12) -> ValidationReport:
    """Check positivity, unit trace and the two coherence bounds.

    Each violation is reported as ``(constraint_name, magnitude)``.
    """
    violations = []
    for name in ("p1", "a", "b", "c", "d", "p6"):
        x = getattr(m, name)
        if not math.isfinite(x):
            violations.append((f"{name} finite", math.inf))
        elif x < -tol:
            violations.append((f"{name}>=0", -x))
    if not (math.isfinite(m.u.real) and math.isfinite(m.u.imag)
            and math.isfinite(m.v.real) and math.isfinite(m.v.imag)):
        violations.append(("coherences finite", math.inf))
    dtrace = abs(m.trace - 1.0)
    if not dtrace <= tol:
        violations.append(("trace", dtrace))
    gap_u = abs(m.u) ** 2 - m.a * m.c
    if gap_u > tol:
        violations.append(("ac>=|u|^2", gap_u))
    gap_v = abs(m.v) ** 2 - m.b * m.d
    if gap_v > tol:
        violations.append(("bd>=|v|^2", gap_v))
    return ValidationReport(not violations, violations)


def _clip(x: float) -> float:
    # eigenvalues in [-CLIP_EPS, 0) are round-off on valid input
    if -CLIP_EPS <= x < 0.0:
        return 0.0
    return x


def _block(x: float, y: float, z: complex) -> tuple[float, float, float, float]:
    """Eigen-data of the Hermitian block [[x, z], [z*, y]].

    Returns ``(p_hi, p_lo, q, root)`` with ``root = p_hi - p_lo``.  ``q`` is
    taken from the cancellation-free branch when ``x < y``.
    """
    mod = abs(z)
    mod2 = mod * mod
    diff = x - y
    root = math.hypot(diff, 2.0 * mod)
    mean = x + y
    p_hi = 0.5 * (mean + root)
    # p_lo = det / p_hi avoids cancellation when the block is near rank one
    det = x * y - mod2
    p_lo = det / p_hi if p_hi > 0.0 and det > 0.0 else 0.5 * (mean - root)
    if diff >= 0.0:
        q = 0.5 * (diff + root)
    else:
        q = 2.0 * mod * (mod / (root - diff))
    return _clip(p_hi), _clip(p_lo), q, root


def spectrum(m: ASDensityMatrix) -> ASSpectrum:
    """Closed-form eigenvalues of an axially symmetric density matrix."""
    report = validate(m, tol=1e-9)
    if not report.valid:
        raise InvalidState(f"invalid AS state: {report.violations}")
    p2, p3, q1, _ = _block(m.a, m.c, m.u)
    p4, p5, q2, _ = _block(m.b, m.d, m.v)
    return ASSpectrum(
        p1=_clip(m.p1), p2=p2, p3=p3, p4=p4, p5=p5, p6=_clip(m.p6),
        q1=q1, q2=q2,
        deg_block1=q1 * q1 + abs(m.u) ** 2 < DEG_EPS,
        deg_block2=q2 * q2 + abs(m.v) ** 2 < DEG_EPS,
    )


_TINY = 2.0 ** -900
_LIFT = 2.0 ** 600


def block_basis(x: float, y: float, z: complex, q: float) -> tuple[float, complex]:
    """Entries of the Hermitian unitary diagonalizing [[x, z], [z*, y]].

    The unitary is ``[[alpha, beta], [beta*, -alpha]]`` with
    ``alpha = q/N``, ``beta = z/N``, ``N = sqrt(q**2 + |z|**2)`` diagonalizes
    the block.  When ``N`` vanishes the block is diagonal already and the
    standard basis is used, ordered so the first column still carries the
    larger eigenvalue.
    """
    z = complex(z)
    if max(abs(q), abs(z.real), abs(z.imag)) < _TINY:
        # lift subnormals into the normal range; powers of two scale exactly
        q, z = q * _LIFT, complex(z.real * _LIFT, z.imag * _LIFT)
    norm = math.hypot(q, abs(z))
    if norm > 0.0:
        # componentwise: complex division loses bits on subnormal input
        return q / norm, complex(z.real / norm, z.imag / norm)
    # z == 0 and x <= y: the larger eigenvalue y sits on the second vector
    if x < y:
        return 0.0, 1.0 + 0j
    return 1.0, 0j


def to_dense(m: ASDensityMatrix) -> np.ndarray:
    """Assemble the full 6x6 complex matrix."""
    rho = np.diag(np.array([m.p1, m.a, m.b, m.c, m.d, m.p6], dtype=complex))
    rho[1, 3] = m.u
    rho[3, 1] = m.u.conjugate()
    rho[2, 4] = m.v
    rho[4, 2] = m.v.conjugate()
    return rho


def maximally_mixed() -> ASDensityMatrix:
    s = 1.0 / 6.0
    return ASDensityMatrix(s, s, s, s, s, s)


def _disc(rng: np.random.Generator, radius: float) -> complex:
    r = radius * math.sqrt(rng.random())
    phi = 2.0 * math.pi * rng.random()
    return complex(r * math.cos(phi), r * math.sin(phi))


def random_state(seed: int) -> ASDensityMatrix:
    """Deterministic random AS state.

    Diagonal weights are i.i.d. exponential (a flat Dirichlet draw), then
    ``u`` and ``v`` are uniform in the discs ``|u| <= sqrt(ac)``,
    ``|v| <= sqrt(bd)``.
    """
    rng = np.random.default_rng(seed)
    w = rng.exponential(size=6)
    w = w / w.sum()
    p1, a, b, c, d, p6 = (float(x) for x in w)
    # shrink marginally so the bound survives rounding of |u|**2
    u = _disc(rng, math.sqrt(a * c) * (1.0 - 1e-12))
    v = _disc(rng, math.sqrt(b * d) * (1.0 - 1e-12))
    return ASDensityMatrix(p1, a, b, c, d, p6, u, v)
