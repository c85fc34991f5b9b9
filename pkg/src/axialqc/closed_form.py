"""Compact closed forms of LQU and LQFI for axially symmetric states.

Both measures reduce to the minimum of two branches.  The 0-branch comes from
the zz entry of the (diagonal) W or M matrix, the 1-branch from the doubly
degenerate xx = yy entry::

    U0 = 1 - W_zz,  U1 = 1 - W_xx,  U = min(U0, U1)
    F0 = 1 - M_zz,  F1 = 1 - M_xx,  F = min(F0, F1)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exceptions import InvalidSpectrum
from .state import ASDensityMatrix, ASSpectrum, block_basis, spectrum

__all__ = [
    "CorrelationBranches",
    "WMDiagonal",
    "SING_EPS",
    "TIE_EPS",
    "lqu_branches",
    "lqfi_branches",
    "correlations",
    "wm_diagonal_raw",
    "lqu",
    "lqfi",
]

#: |p2 - p3| or |p4 - p5| below this switches F1 to the spectral pair sum.
#: The compact form loses about eps/gap to cancellation, so 1e-6 keeps it
#: within ~1e-12 of the pair sum.
SING_EPS = 1e-6
TIE_EPS = 1e-12
_ZERO_DEN = 1e-300

BRANCH0 = "branch0"
BRANCH1 = "branch1"
TIE = "tie"


@dataclass(frozen=True)
class CorrelationBranches:
    U0: float
    U1: float
    F0: float
    F1: float
    U: float
    F: float
    active_U: str
    active_F: str

    def as_dict(self) -> dict:
        return {"U0": self.U0, "U1": self.U1, "U": self.U,
                "F0": self.F0, "F1": self.F1, "F": self.F,
                "active_U": self.active_U, "active_F": self.active_F}


@dataclass(frozen=True)
class WMDiagonal:
    Wxx: float
    Wzz: float
    Mxx: float
    Mzz: float
    degenerate_block1: bool = False
    degenerate_block2: bool = False


def _ratio(num: float, den: float) -> float:
    # validity forces num -> 0 wherever den -> 0; only exact (or subnormal)
    # zeros are dropped, small products like (p1 + p2)(p1 + p3) stay accurate
    if den < _ZERO_DEN:
        return 0.0
    return num / den


def _check_trace(s: ASSpectrum) -> None:
    total = s.p1 + s.p2 + s.p3 + s.p4 + s.p5 + s.p6
    if not abs(total - 1.0) <= 1e-9:
        raise InvalidSpectrum(f"eigenvalues sum to {total!r}")


def lqu_branches(m: ASDensityMatrix, s: ASSpectrum) -> tuple[float, float]:
    """The two LQU branches ``(U0, U1)`` from matrix entries and eigenvalues."""
    _check_trace(s)
    r1, r2, r3, r4, r5, r6 = (math.sqrt(x) for x in (s.p1, s.p2, s.p3, s.p4, s.p5, s.p6))
    sum23 = r2 + r3
    sum45 = r4 + r5
    u0 = ((r2 - r3) ** 2 + (r4 - r5) ** 2
          - _ratio((m.a - m.c) ** 2, sum23 * sum23)
          - _ratio((m.b - m.d) ** 2, sum45 * sum45))
    g23 = r2 * r3
    g45 = r4 * r5
    u1 = 1.0 - 2.0 * (_ratio(m.c + g23, sum23) * r1
                      + _ratio(m.b + g45, sum45) * r6
                      + _ratio((m.a + g23) * (m.d + g45), sum23 * sum45))
    return u0, u1


def lqfi_branches(m: ASDensityMatrix, s: ASSpectrum) -> tuple[float, float]:
    """The two LQFI branches ``(F0, F1)``.

    ``F1`` uses the compact rational form unless one of the blocks is (nearly)
    degenerate, where that form has a vanishing denominator; there the pair
    sum over eigenvectors is evaluated instead.
    """
    _check_trace(s)
    f0 = 4.0 * (_ratio(abs(m.u) ** 2, m.a + m.c) + _ratio(abs(m.v) ** 2, m.b + m.d))
    gap23 = s.p2 - s.p3
    gap45 = s.p4 - s.p5
    if abs(gap23) > SING_EPS and abs(gap45) > SING_EPS:
        f1 = _f1_compact(m, s)
    else:
        f1 = 1.0 - _m_xx(m, s)
    return f0, f1


def _f1_compact(m: ASDensityMatrix, s: ASSpectrum) -> float:
    p1, p2, p3, p4, p5, p6 = s.p1, s.p2, s.p3, s.p4, s.p5, s.p6
    a, b, c, d = m.a, m.b, m.c, m.d
    outer = (_ratio(p1 * (p2 * p3 + p1 * c), (p1 + p2) * (p1 + p3))
             + _ratio(p6 * (p4 * p5 + p6 * b), (p4 + p6) * (p5 + p6)))
    x2 = p2 * (p2 - p3 + a - c)
    x3 = p3 * (p2 - p3 - a + c)
    inner = (p4 * (p4 - p5 - b + d) * (_ratio(x2, p2 + p4) + _ratio(x3, p3 + p4))
             + p5 * (p4 - p5 + b - d) * (_ratio(x2, p2 + p5) + _ratio(x3, p3 + p5)))
    return 1.0 - 4.0 * outer - inner / ((p2 - p3) * (p4 - p5))


def _weights(x: float, y: float, z: complex, q: float) -> tuple[float, float]:
    # (q^2, |z|^2) / (q^2 + |z|^2): squared moduli of the block eigenvector entries
    alpha, beta = block_basis(x, y, z, q)
    return alpha * alpha, abs(beta) ** 2


def _harm(x: float, y: float) -> float:
    # xy / (x + y), with pairs of zero weight dropped
    return _ratio(x * y, x + y)


def _m_xx(m: ASDensityMatrix, s: ASSpectrum) -> float:
    A, B = _weights(m.a, m.c, m.u, s.q1)
    C, D = _weights(m.b, m.d, m.v, s.q2)
    p1, p2, p3, p4, p5, p6 = s.p1, s.p2, s.p3, s.p4, s.p5, s.p6
    return 4.0 * (_harm(p1, p3) * A + _harm(p1, p2) * B
                  + _harm(p4, p6) * C + _harm(p5, p6) * D
                  + _harm(p2, p4) * A * D + _harm(p2, p5) * A * C
                  + _harm(p3, p4) * B * D + _harm(p3, p5) * B * C)


def wm_diagonal_raw(m: ASDensityMatrix, s: ASSpectrum) -> WMDiagonal:
    """Diagonal W and M entries from the unsimplified eigenbasis expressions.

    These sum the contributions of every eigenvector pair linked by the
    local Pauli operators, weighted by the block eigenvector moduli.  They
    exist to cross-check the compact branch formulas.
    """
    A, B = _weights(m.a, m.c, m.u, s.q1)
    C, D = _weights(m.b, m.d, m.v, s.q2)
    p1, p2, p3, p4, p5, p6 = s.p1, s.p2, s.p3, s.p4, s.p5, s.p6
    r1, r2, r3, r4, r5, r6 = (math.sqrt(x) for x in (p1, p2, p3, p4, p5, p6))

    w_xx = 2.0 * (r1 * (A * r3 + B * r2)
                  + A * r2 * (C * r5 + D * r4)
                  + r4 * (C * r6 + B * D * r3)
                  + r5 * (C * B * r3 + D * r6))
    w_zz = (p1 + p6
            + 8.0 * A * B * r2 * r3 + (p2 + p3) * (A - B) ** 2
            + 8.0 * C * D * r4 * r5 + (p4 + p5) * (C - D) ** 2)
    m_zz = (p1 + p6
            + (p2 + p3) * (A - B) ** 2 + 16.0 * _harm(p2, p3) * A * B
            + (p4 + p5) * (C - D) ** 2 + 16.0 * _harm(p4, p5) * C * D)
    return WMDiagonal(w_xx, w_zz, _m_xx(m, s), m_zz,
                      degenerate_block1=s.deg_block1, degenerate_block2=s.deg_block2)


def _label(b0: float, b1: float) -> str:
    if abs(b0 - b1) < TIE_EPS:
        return TIE
    return BRANCH0 if b0 < b1 else BRANCH1


def correlations(m: ASDensityMatrix, s: ASSpectrum | None = None) -> CorrelationBranches:
    """LQU and LQFI of ``m`` together with their branches."""
    if s is None:
        s = spectrum(m)
    u0, u1 = lqu_branches(m, s)
    f0, f1 = lqfi_branches(m, s)
    return CorrelationBranches(
        U0=u0, U1=u1, F0=f0, F1=f1,
        U=min(u0, u1), F=min(f0, f1),
        active_U=_label(u0, u1), active_F=_label(f0, f1),
    )


def lqu(m: ASDensityMatrix) -> float:
    return correlations(m).U


def lqfi(m: ASDensityMatrix) -> float:
    return correlations(m).F
