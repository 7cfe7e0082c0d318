import json
import math
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from hartman_dwell.cli import main
from hartman_dwell.config import SweepSpec, config_to_dict, dump_config, load_config
from hartman_dwell.dwelltime import U_MIN, Convention
from hartman_dwell.errors import ConfigError, UsageError
from hartman_dwell.langevin import PhysicalConfig
from hartman_dwell.sweep import CSV_COLUMNS, emit_csv, emit_plot, format_number, run_sweep

SVG = "{http://www.w3.org/2000/svg}"


def write(tmp_path, obj, name="cfg.json"):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return path


def test_empty_config_gives_defaults(tmp_path):
    cfg, spec = load_config(write(tmp_path, {}))
    assert (cfg.M, cfg.hbar, cfg.omega0, cfg.k, cfg.eta) == (1.0, 1.0, 1.0, 1.0, 0.5)
    assert cfg.sigma == pytest.approx(1 / math.sqrt(2))
    assert cfg.r == pytest.approx(1.0)
    assert spec == SweepSpec()


def test_validation_names_field(tmp_path):
    with pytest.raises(ConfigError, match="sigma"):
        load_config(write(tmp_path, {"physical": {"sigma": -1}}))


def test_u_min_below_regime(tmp_path):
    with pytest.raises(ConfigError, match="regime"):
        load_config(write(tmp_path, {"sweep": {"u_min": 1}}))


def test_parse_error_has_line(tmp_path):
    with pytest.raises(ConfigError, match="line 3"):
        load_config(write(tmp_path, '{\n  "physical": {\n    "M": ,\n  }\n}'))


def test_unknown_key_rejected(tmp_path):
    with pytest.raises(ConfigError, match="omega"):
        load_config(write(tmp_path, {"physical": {"omega": 2}}))


def test_round_trip(tmp_path):
    cfg = PhysicalConfig(M=2.0, eta=0.3, sigma=0.9, z0=4.0, k=-1.0)
    spec = SweepSpec(u_min=3.0, u_max=9.0, steps=5, convention="paper", include_classical=True)
    path = tmp_path / "dump.json"
    dump_config(cfg, spec, path)
    assert load_config(path) == (cfg, spec)
    default_path = tmp_path / "defaults.json"
    dump_config(PhysicalConfig(), SweepSpec(), default_path)
    assert load_config(default_path) == (PhysicalConfig(), SweepSpec())
    assert config_to_dict(cfg, spec)["sweep"]["convention"] == "paper_literal"


def test_sweep_spec_validation():
    with pytest.raises(ConfigError):
        SweepSpec(u_min=5.0, u_max=4.0)
    with pytest.raises(ConfigError):
        SweepSpec(steps=1)
    with pytest.raises(ConfigError):
        SweepSpec(convention="other")


def test_two_point_sweep():
    rows = run_sweep(PhysicalConfig(), SweepSpec(u_min=U_MIN, u_max=2 * U_MIN, steps=2))
    assert len(rows) == 2
    assert rows[0].F_rederived == pytest.approx(2.943035529371539, rel=1e-12)
    assert rows[1].F_rederived == pytest.approx(3.1156776086864964, rel=1e-12)


def test_sweep_classical_alpha_beta_curve():
    spec = SweepSpec(u_min=3.0, u_max=5.0, steps=3, include_classical=True)
    rows = run_sweep(PhysicalConfig(), spec)
    assert rows[-1].u == 5.0
    assert rows[-1].tau_classical_quadratic == pytest.approx(0.75, rel=1e-15)
    # w = 5 is the stopping distance for gamma = 2, v0 = 10
    assert rows[-1].tau_classical_exact is None
    assert rows[0].tau_classical_exact > rows[0].tau_classical_quadratic


def test_sweep_numeric_column():
    rows = run_sweep(PhysicalConfig(), SweepSpec(u_min=4.0, u_max=8.0, steps=3, include_numeric=True))
    for row in rows:
        assert row.tau_numeric == pytest.approx(row.tau_closed_full, rel=1e-9)


def test_sweep_rows_consistent():
    rows = run_sweep(PhysicalConfig(eta=1.0), SweepSpec(steps=20, convention=Convention.PAPER_LITERAL))
    for row in rows:
        assert row.zeta == pytest.approx(row.u / (2 * math.sqrt(2)), abs=1e-12)
        assert row.tau_closed_full >= 0 and row.tau_closed_approx >= 0


def test_sweep_errors_name_u(monkeypatch):
    import hartman_dwell.sweep as sweep_mod
    from hartman_dwell.errors import ConvergenceError, RegimeError

    def boom(cfg, convention):
        raise RegimeError("synthetic")

    monkeypatch.setattr(sweep_mod, "dwell_time_closed", boom)
    with pytest.raises(RegimeError, match=r"at u=3\.0: synthetic"):
        run_sweep(PhysicalConfig(), SweepSpec(u_min=3.0, u_max=4.0, steps=2))

    def stall(cfg, convention):
        raise ConvergenceError("stalled", estimate=1.0)

    monkeypatch.setattr(sweep_mod, "dwell_time_closed", stall)
    with pytest.raises(ConvergenceError, match="at u=3.0") as info:
        run_sweep(PhysicalConfig(), SweepSpec(u_min=3.0, u_max=4.0, steps=2))
    assert info.value.estimate == 1.0


def test_format_number():
    assert format_number(None) == ""
    assert format_number(2.943035529371539) == "2.94303552937"
    assert format_number(20.0) == "20"
    assert format_number(0.000123456789012345) == "0.000123456789012"
    assert "e" not in format_number(3.2e-9)


def test_emit_csv(tmp_path):
    rows = run_sweep(PhysicalConfig(), SweepSpec(u_min=U_MIN, u_max=2 * U_MIN, steps=2))
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    emit_csv(rows, a)
    emit_csv(rows, b)
    text = a.read_text()
    assert a.read_bytes() == b.read_bytes()
    lines = text.split("\n")
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert text.endswith("\n") and len(text.splitlines()) == 3
    assert lines[1].endswith(",,,")


def test_emit_csv_empty(tmp_path):
    with pytest.raises(UsageError):
        emit_csv([], tmp_path / "x.csv")


def polylines(path):
    root = ET.parse(path).getroot()
    return root.findall(f"{SVG}polyline")


def parse_points(poly):
    return [tuple(map(float, p.split(","))) for p in poly.get("points").split()]


def test_plot_dwell(tmp_path):
    rows = run_sweep(PhysicalConfig(), SweepSpec())
    path = tmp_path / "dwell.svg"
    emit_plot(rows, path, "dwell_vs_width")
    (poly,) = polylines(path)
    pts = parse_points(poly)
    # SVG y grows downward
    assert all(b[1] < a[1] for a, b in zip(pts, pts[1:]))
    assert all(b[0] > a[0] for a, b in zip(pts, pts[1:]))


def test_plot_classical(tmp_path):
    rows = [
        {"w_cl": w, "tau_classical_exact": None, "tau_classical_quadratic": 0.01 * w * w + 0.1 * w}
        for w in (1.0, 2.0, 3.0, 4.0, 5.0)
    ]
    path = tmp_path / "cl.svg"
    emit_plot(rows, path, "classical_vs_width", columns=("tau_classical_quadratic",))
    (poly,) = polylines(path)
    ys = [-y for _, y in parse_points(poly)]
    steps = [b - a for a, b in zip(ys, ys[1:])]
    assert all(s > 0 for s in steps)
    assert all(b > a for a, b in zip(steps, steps[1:]))


def test_plot_missing_column(tmp_path):
    rows = run_sweep(PhysicalConfig(), SweepSpec(steps=3))
    with pytest.raises(UsageError, match="tau_classical_exact"):
        emit_plot(rows, tmp_path / "x.svg", "classical_vs_width")
    with pytest.raises(UsageError, match="nope"):
        emit_plot(rows, tmp_path / "x.svg", columns=("nope",))


def test_cli_sweep_deterministic(tmp_path):
    cfg = write(tmp_path, {"physical": {"eta": 1.0}, "sweep": {"steps": 16, "include_numeric": True}})
    outs = []
    for name in ("one.csv", "two.csv"):
        assert main(["sweep", "--config", str(cfg), "--out", str(tmp_path / name)]) == 0
        outs.append((tmp_path / name).read_bytes())
    assert outs[0] == outs[1]
    assert len(outs[0].splitlines()) == 17


def test_cli_regime_exit_code(tmp_path, capsys):
    assert main(["sweep", "--u-min", "2.0"]) == 2
    assert "regime" in capsys.readouterr().err


def test_cli_io_exit_code(tmp_path):
    assert main(["sweep", "--steps", "3", "--out", str(tmp_path / "missing" / "x.csv")]) == 4
    assert main(["dwell", "--config", str(tmp_path / "nope.json")]) == 4


def test_cli_dwell_json(capsys):
    assert main(["dwell", "--zeta", "2", "--numeric", "--eta", "0.0"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["convention"] == "rederived"
    assert data["tau_closed_full"] == pytest.approx(1.5924969696811, rel=1e-12)
    assert data["tau_numeric"] == pytest.approx(data["tau_closed_full"], rel=1e-9)
    assert data["T_long"] == pytest.approx(math.acosh(4) / 2, rel=1e-12)


def test_cli_dwell_paper_convention(capsys):
    assert main(["dwell", "--zeta", "2", "--convention", "paper"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["convention"] == "paper_literal"
    assert data["tau_closed_full"] == pytest.approx(1.5924969696811 / 2, rel=1e-12)


def test_cli_dwell_regime(capsys):
    assert main(["dwell", "--zeta", "0.5"]) == 2


def test_cli_evolve(tmp_path):
    out = tmp_path / "evolve.csv"
    assert main(["evolve", "--nt", "3", "--nq", "4", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "t,q,density,current_canonical,current_paper"
    assert len(lines) == 1 + 12


def test_cli_classical(tmp_path):
    out, plot = tmp_path / "cl.csv", tmp_path / "cl.svg"
    assert main(["classical", "--steps", "5", "--out", str(out), "--plot", str(plot)]) == 0
    assert out.read_text().splitlines()[0] == "w_cl,tau_classical_exact,tau_classical_quadratic"
    assert len(polylines(plot)) == 2


def test_cli_report(capsys):
    assert main(["report", "--zetas", "1.5", "2", "--eta", "0.5"]) == 0
    rows = json.loads(capsys.readouterr().out)["rows"]
    assert [r["zeta"] for r in rows] == pytest.approx([1.5, 2.0])
    for r in rows:
        assert r["printed_zeta_prefactor_ratio"] == pytest.approx(1 / r["zeta"], rel=1e-12)


def test_cli_sweep_with_plots(tmp_path):
    plot, cplot = tmp_path / "d.svg", tmp_path / "c.svg"
    args = ["sweep", "--classical", "--steps", "8", "--out", str(tmp_path / "s.csv")]
    assert main(args + ["--plot", str(plot), "--classical-plot", str(cplot)]) == 0
    assert len(polylines(plot)) == 1
    assert len(polylines(cplot)) == 2


def test_console_module_entry(tmp_path):
    out = tmp_path / "s.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "hartman_dwell.cli", "sweep", "--steps", "2", "--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert out.exists()
