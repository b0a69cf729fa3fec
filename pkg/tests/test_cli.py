import math

import pytest

from lightstore.cli import main, parse_theta
from lightstore.core import dump_config
from lightstore.scenarios import desk_config
from lightstore.core import CouplingVariant


@pytest.fixture(scope="module")
def quick_config_file(tmp_path_factory):
    """Desk CASE_A profile shrunk to a coarse grid for fast CLI runs."""
    cfg = desk_config(CouplingVariant.CASE_A)
    path = tmp_path_factory.mktemp("cli") / "quick.cfg"
    dump_config(cfg, path)
    with open(path, "a") as fh:
        fh.write("nz = 40\nt_end = 2.8e10\nrecord_stride = 8\n")
    return path


class TestParseTheta:
    @pytest.mark.parametrize(
        "token,expected",
        [
            ("0", 0.0),
            ("0.5", 0.5),
            ("pi", math.pi),
            ("pi/2", math.pi / 2),
            ("3pi/4", 3 * math.pi / 4),
            ("-pi/6", -math.pi / 6),
            ("2pi", 2 * math.pi),
        ],
    )
    def test_tokens(self, token, expected):
        assert parse_theta(token) == pytest.approx(expected, rel=1e-12)


class TestCommands:
    def test_simulate_writes_outputs(self, tmp_path, quick_config_file):
        out = tmp_path / "sim"
        code = main(
            [
                "simulate",
                "--case", "a",
                "--config", str(quick_config_file),
                "--theta", "pi/2",
                "--out", str(out),
            ]
        )
        assert code == 0
        csv = out / "theta_1.570796.csv"
        assert csv.exists()
        assert (out / "summary.csv").exists()
        assert (out / "run.meta").exists()
        header = csv.read_text().splitlines()[0]
        assert header == "t_prime,re_eps1,im_eps1,re_eps3,im_eps3"

    def test_sweep_writes_one_file_per_theta(self, tmp_path, quick_config_file):
        out = tmp_path / "sweep"
        code = main(
            [
                "sweep",
                "--case", "a",
                "--config", str(quick_config_file),
                "--thetas", "0,pi",
                "--out", str(out),
            ]
        )
        assert code == 0
        assert (out / "theta_0.000000.csv").exists()
        assert (out / "theta_3.141593.csv").exists()
        summary = (out / "summary.csv").read_text().splitlines()
        assert len(summary) == 3

    def test_analytics_velocity_row(self, capsys):
        code = main(["analytics", "--case", "b", "--quantity", "velocity",
                     "--theta", "0"])
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "theta,omega2,velocity"
        theta, omega2, v = (float(tok) for tok in lines[1].split(","))
        assert theta == 0.0
        assert omega2 < 0.0
        assert 0.0 < v < 137.036

    def test_analytics_mixing_row(self, capsys):
        code = main(["analytics", "--case", "b", "--quantity", "mixing",
                     "--theta", "pi/4"])
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "theta,M11,M13,M31,M33"
        _, m11, m13, m31, m33 = (float(tok) for tok in lines[1].split(","))
        assert m11 < 0.0 and m33 < 0.0
        assert m11 * m33 == pytest.approx(m13 * m31, rel=1e-9)

    def test_analytics_polariton_row(self, capsys):
        code = main(["analytics", "--case", "b", "--quantity", "polariton",
                     "--theta", "0", "--eps1", "1e-10"])
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "theta,omega2,re_psi,im_psi"
