"""Parameter sweeps and detection of branch-switching points.

A "sudden change" of LQU or LQFI is where the minimizing branch switches.
The minimum stays continuous and only its derivative jumps, so the detector
looks for sign changes of ``U0 - U1`` (resp. ``F0 - F1``) on a grid and then
bisects each bracket down to ``1e-10`` relative width.
"""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass
from typing import Callable, Iterable, TextIO

import numpy as np

from .closed_form import BRANCH0, BRANCH1, CorrelationBranches
from .exceptions import SinkError
from .thermal import PARAM_NAMES, HamiltonianParams, thermal_correlations

__all__ = [
    "AXES",
    "SweepSpec",
    "SweepRecord",
    "TransitionEvent",
    "evaluate_point",
    "sweep",
    "detect_transitions",
    "find_transitions",
    "bisect_crossing",
    "emit_csv",
    "parse_csv",
    "CSV_HEADER",
]

logger = logging.getLogger(__name__)

AXES = ("T",) + PARAM_NAMES
DEFAULT_N = 400
DEFAULT_T_LO = 0.01
ZERO_TOL = 1e-13
BRACKET_RTOL = 1e-10
MAX_BISECT = 200

CSV_HEADER = ("x", "U0", "U1", "U", "F0", "F1", "F", "active_U", "active_F")


@dataclass(frozen=True)
class SweepSpec:
    """A uniform grid of ``n`` points along one parameter axis."""

    base: HamiltonianParams
    T: float
    axis: str
    lo: float
    hi: float
    n: int = DEFAULT_N

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")
        if not self.lo < self.hi:
            raise ValueError(f"need lo < hi, got [{self.lo}, {self.hi}]")
        if self.n < 2:
            raise ValueError(f"need at least 2 grid points, got {self.n}")
        if self.axis == "T" and not self.lo > 0:
            raise ValueError("temperature sweeps need lo > 0")
        if self.axis != "T" and not self.T > 0:
            raise ValueError(f"temperature must be positive, got {self.T}")

    def grid(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.n)

    def point(self, x: float) -> tuple[HamiltonianParams, float]:
        """Hamiltonian parameters and temperature at abscissa ``x``."""
        if self.axis == "T":
            return self.base, float(x)
        return self.base.with_value(self.axis, float(x)), self.T


@dataclass(frozen=True)
class SweepRecord:
    x: float
    U0: float
    U1: float
    U: float
    F0: float
    F1: float
    F: float
    active_U: str
    active_F: str

    @classmethod
    def from_branches(cls, x: float, br: CorrelationBranches) -> "SweepRecord":
        return cls(x, br.U0, br.U1, br.U, br.F0, br.F1, br.F, br.active_U, br.active_F)


@dataclass(frozen=True)
class TransitionEvent:
    """A located branch switch of one measure.

    ``branch_from`` is the active branch just below ``x_star`` and
    ``branch_to`` the one just above.  Tangencies (touching without a sign
    change) have ``branch_from == branch_to`` and are not transitions.
    """

    measure: str
    x_star: float
    bracket: tuple[float, float]
    branch_from: str
    branch_to: str
    refined: bool = True
    tangency: bool = False

    @property
    def is_transition(self) -> bool:
        return not self.tangency


def evaluate_point(spec: SweepSpec, x: float) -> CorrelationBranches:
    params, T = spec.point(x)
    return thermal_correlations(params, T)


def sweep(spec: SweepSpec) -> list[SweepRecord]:
    return [SweepRecord.from_branches(float(x), evaluate_point(spec, x)) for x in spec.grid()]


def _sign(g: float) -> int:
    if abs(g) < ZERO_TOL:
        return 0
    return 1 if g > 0 else -1


def _active(sign: int) -> str:
    # g = branch0 - branch1 > 0 means branch1 is the minimum
    return BRANCH1 if sign > 0 else BRANCH0


def bisect_crossing(g: Callable[[float], float], lo: float, hi: float,
                    max_iter: int = MAX_BISECT) -> tuple[float, float, bool]:
    """Shrink a sign-change bracket of ``g`` by bisection.

    Returns ``(lo, hi, converged)``; the bracket keeps a strict sign change
    unless ``g`` hits (numerical) zero at a midpoint, which then collapses
    the bracket onto it.
    """
    s_lo = _sign(g(lo))
    for _ in range(max_iter):
        if hi - lo <= BRACKET_RTOL * max(1.0, abs(0.5 * (lo + hi))):
            return lo, hi, True
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            return lo, hi, True
        s_mid = _sign(g(mid))
        if s_mid == 0:
            return mid, mid, True
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi, False


def find_transitions(xs: np.ndarray, gs: np.ndarray, g: Callable[[float], float],
                     measure: str) -> list[TransitionEvent]:
    """Locate branch switches of one measure from grid samples ``gs = g(xs)``."""
    signs = [_sign(v) for v in gs]
    events = []
    n = len(xs)
    i = 0
    while i < n - 1:
        s0, s1 = signs[i], signs[i + 1]
        if s0 != 0 and s1 != 0:
            if s0 != s1:
                lo, hi, ok = bisect_crossing(g, float(xs[i]), float(xs[i + 1]))
                if not ok:
                    logger.warning("%s crossing in [%g, %g] not refined", measure, lo, hi)
                events.append(TransitionEvent(measure, 0.5 * (lo + hi), (lo, hi),
                                              _active(s0), _active(s1), refined=ok))
            i += 1
            continue
        if s1 != 0:
            i += 1
            continue
        # run of numerically-zero nodes starting at i + 1
        j = i + 1
        while j < n and signs[j] == 0:
            j += 1
        left = s0
        right = signs[j] if j < n else 0
        if left != 0 and right != 0:
            x_lo, x_hi = float(xs[i + 1]), float(xs[j - 1])
            x_star = 0.5 * (x_lo + x_hi)
            events.append(TransitionEvent(measure, x_star, (x_lo, x_hi),
                                          _active(left), _active(right),
                                          tangency=(left == right)))
        i = j
    return events


def detect_transitions(spec: SweepSpec, records: list[SweepRecord] | None = None,
                       include_tangencies: bool = False) -> list[TransitionEvent]:
    """Branch switches of LQU and LQFI along the sweep, in grid order."""
    if records is None:
        records = sweep(spec)
    xs = np.array([r.x for r in records])
    events = []
    for measure, b0, b1 in (("LQU", "U0", "U1"), ("LQFI", "F0", "F1")):
        gs = np.array([getattr(r, b0) - getattr(r, b1) for r in records])

        def g(x, b0=b0, b1=b1):
            br = evaluate_point(spec, x)
            return getattr(br, b0) - getattr(br, b1)

        events.extend(find_transitions(xs, gs, g, measure))
    if not include_tangencies:
        events = [e for e in events if e.is_transition]
    return events


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def emit_csv(records: Iterable[SweepRecord], events: Iterable[TransitionEvent] = (),
             sink: TextIO | None = None) -> bytes:
    """Write the sweep table (and events as ``#transition,`` comments).

    Returns the encoded bytes; they are also written to ``sink`` if given.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow([_fmt(r.x), _fmt(r.U0), _fmt(r.U1), _fmt(r.U),
                         _fmt(r.F0), _fmt(r.F1), _fmt(r.F), r.active_U, r.active_F])
    for e in events:
        buf.write(",".join(["#transition", e.measure, _fmt(e.x_star),
                            _fmt(e.bracket[0]), _fmt(e.bracket[1]),
                            e.branch_from, e.branch_to]) + "\n")
    text = buf.getvalue()
    if sink is not None:
        try:
            sink.write(text)
        except (OSError, ValueError) as exc:
            raise SinkError(str(exc)) from exc
    return text.encode()


def parse_csv(text: str) -> tuple[list[SweepRecord], list[TransitionEvent]]:
    """Inverse of :func:`emit_csv` (to 12 significant digits)."""
    records, events = [], []
    lines = text.splitlines()
    if not lines or tuple(lines[0].split(",")) != CSV_HEADER:
        raise ValueError("missing sweep CSV header")
    for line in lines[1:]:
        parts = line.split(",")
        if parts[0] == "#transition":
            events.append(TransitionEvent(parts[1], float(parts[2]),
                                          (float(parts[3]), float(parts[4])),
                                          parts[5], parts[6]))
        elif line:
            vals = [float(v) for v in parts[:7]]
            records.append(SweepRecord(*vals, parts[7], parts[8]))
    return records, events
