"""Unit tests for the command dispatcher (krank/main.py)."""  # noqa: B101

import pytest


class TestParser:
    """Tests for create_parser."""

    @pytest.mark.unit
    def test_global_options(self):
        """Test that global options precede the subcommand."""
        from krank.main import create_parser

        args = create_parser().parse_args(
            ["--config", "c.json", "--threads", "3", "--cache", "t.bin", "pn", "--n", "5"]
        )
        assert args.config == "c.json"
        assert args.threads == 3
        assert args.cache == "t.bin"
        assert args.command == "pn"
        assert args.n == 5

    @pytest.mark.unit
    def test_estimate_defaults(self):
        """Test the estimate subcommand defaults."""
        from krank.main import create_parser

        args = create_parser().parse_args(["estimate", "hat_p", "--n", "10"])
        assert (args.m, args.k, args.r, args.x) == (0, 1, 1, 0)


class TestExactCommands:
    """Tests for pn, nkrank and table."""

    @pytest.mark.unit
    def test_pn(self, isolated_filesystem, capsys):
        """Test that p(5) prints 7."""
        from krank.main import main

        assert main(["pn", "--n", "5"]) == 0
        assert capsys.readouterr().out == "7\n"

    @pytest.mark.unit
    def test_pn_large_is_exact_integer(self, isolated_filesystem, capsys):
        """Test that p(1000) prints as a plain decimal integer."""
        from krank.main import main

        assert main(["pn", "--n", "1000"]) == 0
        out = capsys.readouterr().out.strip()
        assert out == "24061467864032622473692149727991"

    @pytest.mark.unit
    @pytest.mark.parametrize(
        "k, m, n, expected",
        [(1, 0, 1, "-1"), (1, 1, 1, "1"), (2, 3, 4, "1"), (2, 2, 4, "0"), (1, 10, 10, "1")],
    )
    def test_nkrank(self, isolated_filesystem, capsys, k, m, n, expected):
        """Test N_k(m, n) at small known values."""
        from krank.main import main

        argv = ["nkrank", "--k", str(k), "--m", str(m), "--n", str(n)]
        assert main(argv) == 0
        assert capsys.readouterr().out.strip() == expected

    @pytest.mark.unit
    def test_table_writes_cache(self, isolated_filesystem, capsys):
        """Test that table --n builds and writes the cache file."""
        from krank.main import main

        cache = isolated_filesystem / "ptab.bin"
        assert main(["--cache", str(cache), "table", "--n", "100"]) == 0
        assert capsys.readouterr().out.strip() == "max_n=100 digits(p(max_n))=9"
        assert cache.exists()

    @pytest.mark.unit
    def test_cache_from_config(self, isolated_filesystem, config_file, capsys):
        """Test that table.cache in the config file is used."""
        from krank.main import main

        cache = isolated_filesystem / "from-config.bin"
        config = config_file({"table": {"cache": str(cache)}})
        assert main(["--config", config, "pn", "--n", "10"]) == 0
        assert capsys.readouterr().out.strip() == "42"
        assert cache.exists()


class TestUsageErrors:
    """Tests for exit code 2."""

    @pytest.mark.unit
    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["pn"],
            ["pn", "--n", "-1"],
            ["nkrank", "--k", "0", "--m", "0", "--n", "1"],
            ["--threads", "0", "pn", "--n", "5"],
            ["estimate", "corollary", "--n", "10", "--r", "-1"],
            ["estimate", "nonsense", "--n", "10"],
            ["frobnicate"],
        ],
    )
    def test_usage_error(self, isolated_filesystem, capsys, argv):
        """Test that bad invocations exit 2 with a message on stderr."""
        from krank.main import main

        assert main(argv) == 2
        captured = capsys.readouterr()
        assert captured.out == ""
        assert captured.err


class TestEstimate:
    """Tests for the estimate subcommand."""

    @pytest.mark.unit
    def test_exact_integer_estimate(self, isolated_filesystem, capsys):
        """Test that main_term_exact prints an integer."""
        from krank.main import main

        assert main(["estimate", "main_term_exact", "--k", "1", "--m", "10", "--n", "10"]) == 0
        assert capsys.readouterr().out.strip() == "1"

    @pytest.mark.unit
    def test_log_domain_estimate(self, isolated_filesystem, capsys):
        """Test that log-domain values print as s*exp(L)."""
        from krank.main import main

        assert main(["estimate", "hat_p", "--n", "1000"]) == 0
        out = capsys.readouterr().out.strip()
        assert out.startswith("1*exp(")
        assert out.endswith(")")

    @pytest.mark.unit
    def test_real_estimate(self, isolated_filesystem, capsys):
        """Test that real-valued bounds print with 17 significant digits."""
        from krank.main import main

        assert main(["estimate", "error_bound_zn1", "--m", "0", "--n", "100"]) == 0
        assert capsys.readouterr().out.strip() == "1"

    @pytest.mark.unit
    def test_dprz_lhs_at_m_equal_n(self, isolated_filesystem, capsys):
        """Test that (p(1) - p(0)) / p(n) prints as zero."""
        from krank.main import main

        assert main(["estimate", "dprz_lhs", "--m", "50", "--n", "50"]) == 0
        assert capsys.readouterr().out.strip() == "0*exp(-inf)"

    @pytest.mark.unit
    def test_domain_error_exits_one(self, isolated_filesystem, capsys):
        """Test that a precondition failure is reported as an error."""
        from krank.main import main

        assert main(["estimate", "i_k_truncated", "--m", "60", "--n", "100"]) == 1
        assert "Error:" in capsys.readouterr().err


class TestSweep:
    """Tests for the sweep subcommand."""

    @pytest.mark.unit
    def test_sweep_to_stdout(self, isolated_filesystem, spec_file, capsys):
        """Test that a passing sweep prints its CSV and exits 0."""
        from krank.main import main

        path = spec_file("kind = oracle_equivalence\nn_grid = 6\nk_list = 1, 2\n")
        assert main(["sweep", "--spec", str(path)]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].startswith("kind,k,r,n,m,")
        assert len(lines) == 1 + 2 * 7
        assert all(line.endswith(",true") for line in lines[1:])

    @pytest.mark.unit
    def test_sweep_to_file(self, isolated_filesystem, spec_file, capsys):
        """Test that --out writes the CSV and the fitted constant goes to stderr."""
        from krank.main import main

        path = spec_file("kind = crank_accuracy\nn_grid = 200\nm_rule = list 5 10\n")
        out = isolated_filesystem / "zn1.csv"
        assert main(["sweep", "--spec", str(path), "--out", str(out)]) == 0
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "fitted constant" in captured.err
        assert len(out.read_text().splitlines()) == 3

    @pytest.mark.unit
    def test_empty_sweep_succeeds(self, isolated_filesystem, spec_file, capsys):
        """Test that an empty m list gives a header-only CSV and exit 0."""
        from krank.main import main

        path = spec_file("kind = crank_accuracy\nn_grid = 10\nm_rule = list 50\n")
        assert main(["sweep", "--spec", str(path)]) == 0
        assert capsys.readouterr().out.splitlines() == [
            "kind,k,r,n,m,exact,estimate_log,rel_err,bound,ratio,pass"
        ]

    @pytest.mark.unit
    def test_failed_rows_exit_one(self, isolated_filesystem, spec_file, capsys):
        """Test that any failed row gives exit 1."""
        from krank.main import main

        path = spec_file(
            "kind = crank_accuracy\nn_grid = 200\nm_rule = list 5\nmax_ratio = 0\n"
        )
        assert main(["sweep", "--spec", str(path)]) == 1
        assert "1 of 1 rows failed" in capsys.readouterr().err

    @pytest.mark.unit
    def test_bad_spec_exits_one(self, isolated_filesystem, spec_file, capsys):
        """Test that an invalid spec file is an error."""
        from krank.main import main

        path = spec_file("kind = nope\n")
        assert main(["sweep", "--spec", str(path)]) == 1
        assert "Error:" in capsys.readouterr().err


class TestVerify:
    """Tests for the verify subcommand with the suite mocked."""

    def _results(self, failing=()):
        from krank.acceptance import CriterionResult

        return [
            CriterionResult(i, f"criterion {i}", i not in failing, "ok")
            for i in range(1, 12)
        ]

    @pytest.mark.unit
    def test_all_pass(self, isolated_filesystem, mocker, capsys):
        """Test verdict lines, the summary and exit 0."""
        from krank.main import main

        load = mocker.patch("krank.main.load_or_build_table")
        run = mocker.patch("krank.main.run_acceptance", return_value=self._results())

        assert main(["verify", "--quick"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert len(out) == 12
        assert out[0].startswith("✓  1.")
        assert out[-1] == "11/11 criteria passed"

        assert load.call_args[0][0] == 10_000
        plan = run.call_args[0][0]
        assert plan.max_n == 10_000

    @pytest.mark.unit
    def test_full_plan_size(self, isolated_filesystem, mocker, capsys):
        """Test that verify without --quick uses the full table size."""
        from krank.main import main

        load = mocker.patch("krank.main.load_or_build_table")
        mocker.patch("krank.main.run_acceptance", return_value=self._results())

        assert main(["verify"]) == 0
        assert load.call_args[0][0] == 100_000

    @pytest.mark.unit
    def test_config_sizes(self, isolated_filesystem, config_file, mocker, capsys):
        """Test that verify sizes, thresholds and the enumeration budget come from the config."""
        from krank.main import main

        load = mocker.patch("krank.main.load_or_build_table")
        run = mocker.patch("krank.main.run_acceptance", return_value=self._results())
        config = config_file(
            {
                "verify": {"quickMaxN": 4000, "thresholds": {"stability": 0.3}},
                "enumeration": {"maxN": 30},
                "threads": 2,
            }
        )

        assert main(["--config", config, "verify", "--quick"]) == 0
        assert load.call_args[0][0] == 4000
        plan, _, threads = run.call_args[0]
        assert plan.thresholds["stability"] == 0.3
        assert plan.enumeration_budget == 30
        assert threads == 2

    @pytest.mark.unit
    def test_failure_exits_one(self, isolated_filesystem, mocker, capsys):
        """Test that a failed criterion gives exit 1."""
        from krank.main import main

        mocker.patch("krank.main.load_or_build_table")
        mocker.patch("krank.main.run_acceptance", return_value=self._results(failing=(8,)))

        assert main(["verify", "--quick"]) == 1
        out = capsys.readouterr().out
        assert "✗  8." in out
        assert "10/11 criteria passed" in out


class TestErrorHandling:
    """Tests for errors raised inside commands."""

    @pytest.mark.unit
    def test_keyboard_interrupt(self, isolated_filesystem, mocker, capsys):
        """Test that Ctrl-C exits 130."""
        from krank.main import main

        mocker.patch("krank.main.load_or_build_table", side_effect=KeyboardInterrupt)
        assert main(["pn", "--n", "5"]) == 130
        assert "Cancelled" in capsys.readouterr().err

    @pytest.mark.unit
    def test_corrupt_cache(self, isolated_filesystem, capsys):
        """Test that a corrupt cache file is reported and exits 1."""
        from krank.main import main

        cache = isolated_filesystem / "ptab.bin"
        cache.write_bytes(b"not a table")
        assert main(["--cache", str(cache), "pn", "--n", "5"]) == 1
        assert "Error:" in capsys.readouterr().err

    @pytest.mark.unit
    def test_missing_explicit_config(self, isolated_filesystem, capsys):
        """Test that a missing --config file exits 1."""
        from krank.main import main

        assert main(["--config", "absent.json", "pn", "--n", "5"]) == 1
        assert "Configuration file not found" in capsys.readouterr().err
