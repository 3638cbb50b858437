"""Command-line behavior: output formats, exit codes, determinism."""

import io
import json

import pytest

from ringcode import cli
from ringcode.network import network_from_json, two_six


def run_cli(*argv):
    buf = io.StringIO()
    code = cli.run(list(argv), out=buf)
    return code, buf.getvalue()


class TestPartitionsCommands:
    def test_maximal_k12(self):
        assert run_cli("partitions", "maximal", "--k", "12") == (0, "(12)\n(7,5)\n")

    def test_enumerate_k4(self):
        code, out = run_cli("partitions", "enumerate", "--k", "4")
        assert code == 0
        assert out == "(4)\n(3,1)\n(2,2)\n(2,1,1)\n(1,1,1,1)\n"

    def test_divides(self):
        assert run_cli(
            "partitions", "divides", "--left", "(2,2,1)", "--right", "(4,1)"
        ) == (0, "left|right: YES\n")
        code, out = run_cli(
            "partitions", "divides", "--left", "(3,2)", "--right", "(5)"
        )
        assert code == 1 and out == "left|right: NO\n"

    def test_guard_is_usage_error(self):
        code, _ = run_cli("partitions", "maximal", "--k", "99")
        assert code == 2


class TestRingsCommands:
    def test_maximal_size_power(self):
        assert run_cli("rings", "maximal", "--size", "2^5") == (
            0,
            "GF(2^5)\nGF(2^3)xGF(2^2)\n",
        )

    def test_maximal_size_plain(self):
        assert run_cli("rings", "maximal", "--size", "32") == (
            0,
            "GF(2^5)\nGF(2^3)xGF(2^2)\n",
        )

    def test_maximal_size_factored(self):
        code, out = run_cli("rings", "maximal", "--size", "2^7*3^5*5^2")
        assert code == 0 and len(out.splitlines()) == 6
        assert out.splitlines()[0] == "GF(2^7)xGF(3^5)xGF(5^2)"

    def test_parse(self):
        code, out = run_cli("rings", "parse", "--ring", " Z(4) x GF(3) ")
        assert code == 0
        assert out == "GF(3)xZ(4)\nsize: 12\ncharacteristic: 12\n"

    def test_elements(self):
        assert run_cli("rings", "elements", "--ring", "D(2)") == (
            0,
            "0\nx\n1\n1+x\n",
        )

    def test_bad_expression(self):
        code, _ = run_cli("rings", "parse", "--ring", "GF(6)")
        assert code == 2

    def test_elements_guard(self):
        code, _ = run_cli("rings", "elements", "--ring", "Z(2000000)")
        assert code == 2


class TestDominanceCommands:
    def test_fields_no_with_reason(self):
        code, out = run_cli(
            "dominance", "fields", "--left", "GF(8)xGF(4)", "--right", "GF(32)"
        )
        assert code == 1
        assert out == "left⪯right: NO (prime 2 exponent 5 has no divisor in {3,2})\n"

    def test_fields_yes(self):
        code, out = run_cli(
            "dominance", "fields", "--left", "GF(2)xGF(2)", "--right", "GF(4)"
        )
        assert code == 0 and out == "left⪯right: YES\n"

    def test_zmod(self):
        assert run_cli("dominance", "zmod", "--left", "Z(12)", "--right", "Z(4)")[0] == 0
        assert run_cli("dominance", "zmod", "--left", "Z(4)", "--right", "Z(8)")[0] == 1
        assert run_cli("dominance", "zmod", "--left", "GF(4)", "--right", "Z(8)")[0] == 2

    def test_catalog_unknown(self):
        code, out = run_cli(
            "dominance", "catalog", "--left", "GF(4)", "--right", "Z(4)"
        )
        assert code == 1 and "UNKNOWN" in out

    def test_fields_rejects_non_field(self):
        code, _ = run_cli("dominance", "fields", "--left", "Z(4)", "--right", "GF(4)")
        assert code == 2


class TestNetworkCommands:
    def test_gen_matches_library(self, tmp_path):
        path = tmp_path / "ts.json"
        code, _ = run_cli("network", "gen", "two-six", "--file", str(path))
        assert code == 0
        assert network_from_json(json.loads(path.read_text())) == two_six()

    def test_gen_to_stdout(self):
        code, out = run_cli("network", "gen", "choose-two", "--n", "3")
        assert code == 0
        net = network_from_json(json.loads(out))
        assert len(net.receivers) == 3

    def test_solve_verify_transform_flow(self, tmp_path):
        net_path = tmp_path / "ct3.json"
        run_cli("network", "gen", "choose-two", "--n", "3", "--file", str(net_path))

        code, out = run_cli(
            "network", "solve", "--file", str(net_path), "--ring", "D(2)"
        )
        assert code == 0
        sol_path = tmp_path / "sol.json"
        sol_path.write_text(out)

        assert run_cli(
            "network", "verify", "--file", str(net_path), "--code", str(sol_path)
        ) == (0, "VALID\n")

        code, out = run_cli(
            "network",
            "transform",
            "--file",
            str(net_path),
            "--code",
            str(sol_path),
            "--kind",
            "aug",
        )
        assert code == 0
        mapped = tmp_path / "mapped.json"
        mapped.write_text(out)
        assert json.loads(out)["ring"] == "GF(2)"
        assert run_cli(
            "network", "verify", "--file", str(net_path), "--code", str(mapped)
        ) == (0, "VALID\n")

        code, out = run_cli(
            "network",
            "transform",
            "--file",
            str(net_path),
            "--code",
            str(mapped),
            "--kind",
            "lift",
            "--target",
            "GF(4)",
        )
        assert code == 0 and json.loads(out)["ring"] == "GF(2^2)"

    def test_solve_unsolvable(self, tmp_path):
        path = tmp_path / "ts.json"
        run_cli("network", "gen", "two-six", "--file", str(path))
        code, out = run_cli(
            "network", "solve", "--file", str(path), "--ring", "GF(2)"
        )
        assert code == 1 and out == "UNSOLVABLE (search exhausted)\n"

    def test_solve_budget_error(self, tmp_path):
        path = tmp_path / "ts.json"
        run_cli("network", "gen", "two-six", "--file", str(path))
        code, _ = run_cli(
            "network",
            "solve",
            "--file",
            str(path),
            "--ring",
            "GF(3)",
            "--budget",
            "2^4",
        )
        assert code == 2

    def test_threshold_grid_via_cli(self, tmp_path):
        """gen choose-two --n K then solve over GF(q): exit 0 iff q >= K-1."""
        for k in (3, 4, 5):
            path = tmp_path / f"ct{k}.json"
            run_cli("network", "gen", "choose-two", "--n", str(k), "--file", str(path))
            for q in (2, 3, 4, 5):
                code, _ = run_cli(
                    "network", "solve", "--file", str(path), "--ring", f"GF({q})"
                )
                assert code == (0 if q >= k - 1 else 1), (k, q)

    def test_solve_deterministic(self, tmp_path):
        path = tmp_path / "ts.json"
        run_cli("network", "gen", "two-six", "--file", str(path))
        outs = {
            run_cli("network", "solve", "--file", str(path), "--ring", "GF(3)")[1]
            for _ in range(2)
        }
        outs.add(
            run_cli(
                "network", "solve", "--file", str(path), "--ring", "GF(3)",
                "--jobs", "4",
            )[1]
        )
        assert len(outs) == 1


class TestVerifyCommands:
    def test_table1_full(self):
        assert run_cli("verify", "table1", "--max-k", "30") == (
            0,
            "table1 OK (30 rows checked)\n",
        )

    def test_table1_partial(self):
        assert run_cli("verify", "table1", "--max-k", "5") == (
            0,
            "table1 OK (5 rows checked)\n",
        )

    def test_table1_tampered(self, monkeypatch):
        golden = cli._load_table1()
        golden[12] = "(12) (7,5) (6,6)"
        monkeypatch.setattr(cli, "_load_table1", lambda: golden)
        code, out = run_cli("verify", "table1", "--max-k", "30")
        assert code == 1
        assert "MISMATCH at k=12" in out

    def test_table1_range(self):
        assert run_cli("verify", "table1", "--max-k", "31")[0] == 2

    def test_example513(self):
        assert run_cli("verify", "example513") == (0, "example513 OK\n")


class TestUsage:
    def test_unknown_subcommand(self):
        assert run_cli("partitions", "bogus")[0] == 2

    def test_missing_required(self):
        assert run_cli("partitions", "maximal")[0] == 2

    def test_byte_identical_repeats(self):
        for argv in (
            ("partitions", "maximal", "--k", "17"),
            ("rings", "maximal", "--size", "2^7*3^5*5^2"),
            ("rings", "elements", "--ring", "GF(8)"),
        ):
            assert run_cli(*argv) == run_cli(*argv)
