import io

import numpy as np
import pytest

from axialqc.cli import main
from axialqc.exceptions import SinkError
from axialqc.sweep import (
    CSV_HEADER,
    SweepRecord,
    SweepSpec,
    TransitionEvent,
    bisect_crossing,
    detect_transitions,
    emit_csv,
    evaluate_point,
    find_transitions,
    parse_csv,
    sweep,
)
from axialqc.thermal import HamiltonianParams

from conftest import BENCH2, BENCH3, BENCH4, BENCH5, BENCH6

# (base, axis, lo, hi); T = 1 on parameter axes
CASES = {
    "bench3": (BENCH3, "T", 0.01, 2.0),
    "bench4": (BENCH4, "T", 0.01, 2.0),
    "bench5": (BENCH5, "B1", -3.0, 3.0),
    "bench6": (BENCH6, "B2", -3.0, 3.0),
    "bench7": (BENCH3, "K", 0.0, 3.0),
    "bench8": (BENCH3, "K1", 0.0, 3.0),
    "bench9": (BENCH3, "K2", 0.0, 3.0),
}

# located crossings from the first verified run; counts follow the reference description
PINS = {
    "bench3": {"LQU": [0.5588810474433025], "LQFI": [1.0532253412187176]},
    "bench4": {"LQU": [0.23387191640497895, 0.6379569977152166], "LQFI": []},
    "bench5": {"LQU": [-2.0710898957642403, 1.964536954305674],
             "LQFI": [-1.621824922586294, 1.5582700005935546]},
    "bench6": {"LQU": [2.6402137231333804], "LQFI": [2.3227941829683183]},
    "bench7": {"LQU": [], "LQFI": [0.27086103906420833]},
    "bench8": {"LQU": [0.7619709408092766], "LQFI": []},
    "bench9": {"LQU": [0.6727137898087948], "LQFI": [0.15594715510207913]},
}


def make_spec(name, n=400):
    base, axis, lo, hi = CASES[name]
    return SweepSpec(HamiltonianParams(**base), 1.0, axis, lo, hi, n)


def by_measure(events):
    return {m: [e.x_star for e in events if e.measure == m] for m in ("LQU", "LQFI")}


@pytest.fixture(scope="module")
def bench_events():
    return {name: detect_transitions(make_spec(name)) for name in CASES}


class TestSpec:
    def test_bad_axis(self):
        with pytest.raises(ValueError):
            SweepSpec(HamiltonianParams(), 1.0, "Q", 0, 1)

    def test_bad_range(self):
        with pytest.raises(ValueError):
            SweepSpec(HamiltonianParams(), 1.0, "J", 1, 1)

    def test_bad_n(self):
        with pytest.raises(ValueError):
            SweepSpec(HamiltonianParams(), 1.0, "J", 0, 1, n=1)

    def test_temperature_axis_needs_positive_lo(self):
        with pytest.raises(ValueError):
            SweepSpec(HamiltonianParams(), 1.0, "T", 0.0, 1.0)

    def test_point(self):
        spec = SweepSpec(HamiltonianParams(J=1), 0.5, "Jz", -1, 1)
        p, T = spec.point(0.25)
        assert (p.J, p.Jz, T) == (1.0, 0.25, 0.5)


class TestSweep:
    def test_uniform_grid(self):
        spec = SweepSpec(HamiltonianParams(**BENCH3), 1.0, "J", -1, 1, n=11)
        recs = sweep(spec)
        assert [r.x for r in recs] == pytest.approx(np.linspace(-1, 1, 11).tolist(), abs=0)
        for r in recs:
            assert r.U == min(r.U0, r.U1) and r.F == min(r.F0, r.F1)

    def test_bench2_monotone_without_events(self):
        spec = SweepSpec(HamiltonianParams(**BENCH2), 1.0, "T", 0.01, 3.0, n=300)
        recs = sweep(spec)
        us = np.array([r.U for r in recs])
        assert us[0] == pytest.approx(0.57350, abs=1e-3)
        assert np.all(np.diff(us) <= 0)
        assert len({r.active_U for r in recs}) == 1
        assert len({r.active_F for r in recs}) == 1
        assert detect_transitions(spec, recs) == []

    @pytest.mark.parametrize("axis", ["T", "B1", "K2"])
    def test_all_zero_params(self, axis):
        lo = 0.1 if axis == "T" else -1.0
        spec = SweepSpec(HamiltonianParams(), 1.0, axis, lo, 1.0, n=20)
        if axis == "T":
            for r in sweep(spec):
                assert abs(r.U) <= 1e-15 and abs(r.F) <= 1e-15
        assert detect_transitions(spec) == []

    def test_min_continuity(self):
        # the minimum of continuous branches has no jumps, even at kinks
        steps = []
        for n in (200, 400, 800):
            us = np.array([r.U for r in sweep(make_spec("bench5", n))])
            steps.append(np.abs(np.diff(us)).max())
        assert steps[2] < steps[1] < steps[0]
        assert steps[2] < 0.01

    def test_bench5_replay_matches_thermal_cli(self):
        spec = make_spec("bench5", n=7)
        for r in sweep(spec):
            out = io.StringIO()
            argv = ["thermal", "--T", "1"] + [f"--{k}={v}" for k, v in BENCH5.items() if k != "B1"]
            assert main(argv + [f"--B1={r.x!r}"], out=out) == 0
            rows = {line.split()[0]: line.split() for line in out.getvalue().splitlines()}
            assert float(rows["LQU"][1]) == pytest.approx(r.U0, rel=1e-11, abs=1e-14)
            assert float(rows["LQU"][2]) == pytest.approx(r.U1, rel=1e-11, abs=1e-14)
            assert float(rows["LQFI"][1]) == pytest.approx(r.F0, rel=1e-11, abs=1e-14)
            assert float(rows["LQFI"][2]) == pytest.approx(r.F1, rel=1e-11, abs=1e-14)


class TestTransitions:
    @pytest.mark.parametrize("name", sorted(CASES))
    def test_counts(self, bench_events, name):
        found = by_measure(bench_events[name])
        assert {m: len(v) for m, v in found.items()} == {m: len(v) for m, v in PINS[name].items()}

    @pytest.mark.parametrize("name", sorted(CASES))
    def test_pins(self, bench_events, name):
        found = by_measure(bench_events[name])
        for measure, xs in PINS[name].items():
            np.testing.assert_allclose(found[measure], xs, rtol=1e-9, atol=1e-9)

    @pytest.mark.parametrize("name", sorted(CASES))
    def test_events_are_roots(self, bench_events, name):
        spec = make_spec(name)
        for e in bench_events[name]:
            br = evaluate_point(spec, e.x_star)
            g = br.U0 - br.U1 if e.measure == "LQU" else br.F0 - br.F1
            assert abs(g) <= 1e-9
            lo, hi = e.bracket
            assert hi - lo <= 1e-10 * max(1.0, abs(e.x_star))
            assert e.refined and e.branch_from != e.branch_to

    @pytest.mark.parametrize("name", ["bench3", "bench4", "bench5", "bench6"])
    def test_grid_doubling_stable(self, bench_events, name):
        coarse = by_measure(bench_events[name])
        fine = by_measure(detect_transitions(make_spec(name, n=800)))
        for measure in coarse:
            assert len(fine[measure]) == len(coarse[measure])
            np.testing.assert_allclose(fine[measure], coarse[measure], atol=1e-9)

    def test_bench3_branch_direction(self, bench_events):
        # cooling turns branch 1 into branch 0: above x* branch1 is active
        for e in bench_events["bench3"]:
            assert (e.branch_from, e.branch_to) == ("branch0", "branch1")


class TestDetectorUnits:
    def test_bisect_linear(self):
        lo, hi, ok = bisect_crossing(lambda x: x - 0.3, 0.0, 1.0)
        assert ok and lo <= 0.3 <= hi and hi - lo <= 1e-10

    def test_bisect_exact_zero_midpoint(self):
        lo, hi, ok = bisect_crossing(lambda x: x - 0.5, 0.0, 1.0)
        assert ok and lo == hi == 0.5

    def test_bisect_cap_reports_unrefined(self):
        _, _, ok = bisect_crossing(lambda x: x - 0.3, 0.0, 1.0, max_iter=3)
        assert not ok

    def test_tangency_flagged_not_counted(self):
        g = lambda x: (x - 0.5) ** 2  # noqa: E731
        xs = np.linspace(0, 1, 11)
        events = find_transitions(xs, np.array([g(x) for x in xs]), g, "LQU")
        assert len(events) == 1 and events[0].tangency and not events[0].is_transition
        assert events[0].branch_from == events[0].branch_to

    def test_zero_node_crossing(self):
        g = lambda x: x - 0.5  # noqa: E731
        xs = np.linspace(0, 1, 11)
        events = find_transitions(xs, np.array([g(x) for x in xs]), g, "LQFI")
        assert len(events) == 1 and events[0].is_transition
        assert events[0].x_star == pytest.approx(0.5, abs=1e-12)
        assert (events[0].branch_from, events[0].branch_to) == ("branch0", "branch1")

    def test_two_crossings(self):
        g = lambda x: np.cos(3 * x)  # noqa: E731
        xs = np.linspace(0, 3, 31)
        events = find_transitions(xs, g(xs), g, "LQU")
        np.testing.assert_allclose([e.x_star for e in events], [np.pi / 6, np.pi / 2, 5 * np.pi / 6],
                                   atol=1e-9)


def _record(x=0.5):
    return SweepRecord(x, 0.1, 0.2, 0.1, 0.3, 0.4, 0.3, "branch0", "branch0")


class TestCSV:
    def test_empty(self):
        assert emit_csv([]) == b"x,U0,U1,U,F0,F1,F,active_U,active_F\n"

    def test_one_record(self):
        lines = emit_csv([_record()]).decode().splitlines()
        assert len(lines) == 2
        assert len(lines[1].split(",")) == 9
        assert lines[1] == "0.5,0.1,0.2,0.1,0.3,0.4,0.3,branch0,branch0"

    def test_event_comment(self):
        e = TransitionEvent("LQU", 0.25, (0.2, 0.3), "branch0", "branch1")
        text = emit_csv([_record()], [e]).decode()
        assert text.endswith("#transition,LQU,0.25,0.2,0.3,branch0,branch1\n")

    def test_twelve_digits(self):
        text = emit_csv([_record(1 / 3)]).decode()
        assert text.splitlines()[1].startswith("0.333333333333,")

    def test_sink_written(self):
        buf = io.StringIO()
        data = emit_csv([_record()], sink=buf)
        assert buf.getvalue().encode() == data

    def test_sink_error(self):
        buf = io.StringIO()
        buf.close()
        with pytest.raises(SinkError):
            emit_csv([_record()], sink=buf)

    def test_bench4_round_trip(self):
        spec = make_spec("bench4", n=60)
        recs = sweep(spec)
        events = detect_transitions(spec, recs)
        text = emit_csv(recs, events).decode()
        parsed, parsed_events = parse_csv(text)
        assert len(parsed) == len(recs) and len(parsed_events) == len(events)
        for a, b in zip(parsed, recs):
            for name in CSV_HEADER[:7]:
                assert getattr(a, name) == float(f"{getattr(b, name):.12g}")
            assert (a.active_U, a.active_F) == (b.active_U, b.active_F)
        assert emit_csv(parsed, parsed_events).decode() == text

    def test_deterministic(self):
        spec = make_spec("bench6", n=50)
        assert emit_csv(sweep(spec), detect_transitions(spec)) == emit_csv(sweep(spec), detect_transitions(spec))

    def test_parse_rejects_missing_header(self):
        with pytest.raises(ValueError):
            parse_csv("1,2,3\n")
