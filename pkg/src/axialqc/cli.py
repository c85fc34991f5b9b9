"""Command-line front end: ``axialqc <subcommand> ...``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__
from .asymptotics import high_t_coefficients
from .closed_form import CorrelationBranches, correlations, wm_diagonal_raw
from .exceptions import AxialQCError
from .oracle import lqfi_oracle, lqu_oracle
from .state import ASDensityMatrix, random_state, spectrum, to_dense
from .sweep import AXES, DEFAULT_N, DEFAULT_T_LO, SweepSpec, detect_transitions, emit_csv, sweep
from .thermal import PARAM_NAMES, HamiltonianParams, gibbs_state, thermal_correlations

logger = logging.getLogger(__name__)

VERIFY_TOL = 1e-8
CONFIG_KEYS = PARAM_NAMES + ("T",)


class UsageError(Exception):
    pass


def read_config(path) -> dict:
    """Parse a ``key=value`` parameter file (``#`` starts a comment)."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        key = key.strip()
        if not sep or key not in CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: expected one of {', '.join(CONFIG_KEYS)} as key=value")
        try:
            values[key] = float(val)
        except ValueError:
            raise UsageError(f"{path}:{lineno}: {val.strip()!r} is not a number") from None
    return values


def _add_param_flags(p: argparse.ArgumentParser, with_T: bool = True) -> None:
    g = p.add_argument_group("Hamiltonian parameters")
    g.add_argument("--config", help="key=value file with any of " + ", ".join(CONFIG_KEYS))
    for name in PARAM_NAMES:
        g.add_argument(f"--{name}", type=float, default=None)
    if with_T:
        g.add_argument("--T", type=float, default=None, help="temperature (default 1)")


def _params(args) -> tuple[HamiltonianParams, float]:
    values = read_config(args.config) if args.config else {}
    for name in CONFIG_KEYS:
        flag = getattr(args, name, None)
        if flag is not None:
            values[name] = flag
    T = values.pop("T", 1.0)
    return HamiltonianParams(**values), T


def _branch_table(br: CorrelationBranches) -> str:
    rows = [
        f"{'measure':<8}{'branch0':>20}{'branch1':>20}{'value':>20}  active",
        f"{'LQU':<8}{br.U0:>20.12g}{br.U1:>20.12g}{br.U:>20.12g}  {br.active_U}",
        f"{'LQFI':<8}{br.F0:>20.12g}{br.F1:>20.12g}{br.F:>20.12g}  {br.active_F}",
    ]
    return "\n".join(rows)


def cmd_correlations(args, out) -> int:
    m = ASDensityMatrix.from_record(args.record)
    print(_branch_table(correlations(m)), file=out)
    return 0


def cmd_thermal(args, out) -> int:
    params, T = _params(args)
    state, Z = gibbs_state(params, T)
    names = ("p1", "a", "b", "c", "d", "p6", "Re_u", "Im_u", "Re_v", "Im_v")
    for name, val in zip(names, state.to_record()):
        print(f"{name:<6}= {val:.12g}", file=out)
    print(f"{'Z':<6}= {Z:.12g}", file=out)
    print(_branch_table(thermal_correlations(params, T)), file=out)
    return 0


def _spec(args) -> SweepSpec:
    params, T = _params(args)
    lo = args.lo
    hi = args.hi
    if lo is None:
        lo = DEFAULT_T_LO if args.axis == "T" else -3.0
    if hi is None:
        hi = 3.0
    return SweepSpec(params, T, args.axis, lo, hi, args.n)


def _write(text: bytes, args, out) -> None:
    if args.out:
        Path(args.out).write_bytes(text)
    else:
        out.write(text.decode())


def cmd_sweep(args, out) -> int:
    spec = _spec(args)
    _write(emit_csv(sweep(spec)), args, out)
    return 0


def cmd_transitions(args, out) -> int:
    spec = _spec(args)
    records = sweep(spec)
    events = detect_transitions(spec, records)
    if args.csv:
        _write(emit_csv(records, events), args, out)
        return 0
    for e in events:
        print(f"{e.measure:<5} x*={e.x_star:.12g} bracket=[{e.bracket[0]:.12g}, {e.bracket[1]:.12g}] "
              f"{e.branch_from}->{e.branch_to}{'' if e.refined else ' (unrefined)'}", file=out)
    for measure in ("LQU", "LQFI"):
        count = sum(e.measure == measure for e in events)
        print(f"{measure} events: {count}", file=out)
    return 0


def verify_states(n_states: int, seed: int) -> dict:
    """Maximal deviations between closed forms and brute-force oracles."""
    dev = {"lqu": 0.0, "lqfi": 0.0, "raw": 0.0, "pair_eps_sensitivity": 0.0}
    for k in range(n_states):
        m = random_state(seed + k)
        s = spectrum(m)
        br = correlations(m, s)
        rho = to_dense(m)
        dev["lqu"] = max(dev["lqu"], abs(br.U - lqu_oracle(rho)))
        f_ref = lqfi_oracle(rho)
        dev["lqfi"] = max(dev["lqfi"], abs(br.F - f_ref))
        dev["pair_eps_sensitivity"] = max(dev["pair_eps_sensitivity"],
                                          abs(f_ref - lqfi_oracle(rho, pair_eps=1e-10)))
        raw = wm_diagonal_raw(m, s)
        dev["raw"] = max(dev["raw"], abs(1 - raw.Wzz - br.U0), abs(1 - raw.Wxx - br.U1),
                         abs(1 - raw.Mzz - br.F0), abs(1 - raw.Mxx - br.F1))
    return dev


def cmd_verify(args, out) -> int:
    if args.states < 1:
        raise UsageError("--states must be positive")
    dev = verify_states(args.states, args.seed)
    worst = max(dev["lqu"], dev["lqfi"], dev["raw"])
    print(f"states checked          : {args.states} (seeds {args.seed}..{args.seed + args.states - 1})", file=out)
    print(f"max |U - U_oracle|      : {dev['lqu']:.3e}", file=out)
    print(f"max |F - F_oracle|      : {dev['lqfi']:.3e}", file=out)
    print(f"max raw vs compact      : {dev['raw']:.3e}", file=out)
    print(f"pair-skip sensitivity   : {dev['pair_eps_sensitivity']:.3e}  (1e-14 vs 1e-10)", file=out)
    print(f"max deviation           : {worst:.3e}  tolerance {VERIFY_TOL:g}", file=out)
    ok = worst <= VERIFY_TOL
    print("PASS" if ok else "FAIL", file=out)
    return 0 if ok else 1


def cmd_asympt(args, out) -> int:
    params, _ = _params(args)
    coef = high_t_coefficients(params)
    print(f"cU0 = {coef.cU0:.12g}\ncU1 = {coef.cU1:.12g}\ncF0 = {coef.cF0:.12g}\ncF1 = {coef.cF1:.12g}", file=out)
    print(f"{'T':>10}{'T2*U0-cU0':>16}{'T2*U1-cU1':>16}{'T2*F0-cF0':>16}{'T2*F1-cF1':>16}", file=out)
    for T in args.temps:
        br = thermal_correlations(params, T)
        res = [T * T * br.U0 - coef.cU0, T * T * br.U1 - coef.cU1,
               T * T * br.F0 - coef.cF0, T * T * br.F1 - coef.cF1]
        print(f"{T:>10g}" + "".join(f"{r:>16.4e}" for r in res), file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="axialqc",
        description="LQU and LQFI of qubit-qutrit axially symmetric states.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("correlations", help="branch table of one state")
    p.add_argument("record", nargs=10, type=float, metavar="X",
                   help="p1 a b c d p6 Re(u) Im(u) Re(v) Im(v)")
    p.set_defaults(func=cmd_correlations)

    p = sub.add_parser("thermal", help="Gibbs state, Z and branch table")
    _add_param_flags(p)
    p.set_defaults(func=cmd_thermal)

    for name, func, helptext in (("sweep", cmd_sweep, "CSV of correlations along one axis"),
                                 ("transitions", cmd_transitions, "branch-switch points along one axis")):
        p = sub.add_parser(name, help=helptext)
        _add_param_flags(p)
        p.add_argument("--axis", choices=AXES, default="T")
        p.add_argument("--lo", type=float, default=None,
                       help=f"default {DEFAULT_T_LO} for T, -3 otherwise")
        p.add_argument("--hi", type=float, default=None, help="default 3")
        p.add_argument("--n", type=int, default=DEFAULT_N)
        p.add_argument("--out", help="write CSV here instead of stdout")
        if name == "transitions":
            p.add_argument("--csv", action="store_true", help="emit the full CSV with event comments")
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="closed forms against brute-force oracles")
    p.add_argument("--states", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("asympt", help="high-temperature coefficients and residuals")
    _add_param_flags(p, with_T=False)
    p.add_argument("--temps", type=float, nargs="+", default=[50.0, 100.0, 200.0])
    p.set_defaults(func=cmd_asympt)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args, out)
    except (UsageError, AxialQCError, ValueError, OSError) as exc:
        print(f"axialqc {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
