"""Unit tests for the exact engine (krank/engine.py)."""  # noqa: B101

import pytest


class TestPartitionTable:
    """Tests for build_partition_table and p_at."""

    @pytest.mark.unit
    def test_empty_table(self):
        """Test that max_n = 0 gives the single value p(0) = 1."""
        from krank.engine import build_partition_table

        table = build_partition_table(0)
        assert table.values == (1,)
        assert table.max_n == 0

    @pytest.mark.unit
    def test_known_values(self, small_table):
        """Test p(5), p(100) and p(200) against known values."""
        from krank.engine import p_at

        assert p_at(small_table, 5) == 7
        assert p_at(small_table, 10) == 42
        assert p_at(small_table, 100) == 190569292
        assert p_at(small_table, 200) == 3972999029388

    @pytest.mark.unit
    def test_negative_argument_is_zero(self, small_table):
        """Test that p(r) = 0 for r < 0."""
        from krank.engine import p_at

        assert p_at(small_table, -3) == 0
        assert p_at(small_table, 0) == 1

    @pytest.mark.unit
    def test_out_of_range_raises(self, small_table):
        """Test that reading past max_n raises TableRangeError."""
        from krank.engine import TableRangeError, p_at

        with pytest.raises(TableRangeError):
            p_at(small_table, small_table.max_n + 1)

    @pytest.mark.unit
    def test_range_error_is_index_error(self, small_table):
        """Test that TableRangeError can be caught as IndexError."""
        from krank.engine import p_at

        with pytest.raises(IndexError):
            p_at(small_table, 10**6)

    @pytest.mark.unit
    def test_negative_max_n_rejected(self):
        """Test that a negative size is a ValueError."""
        from krank.engine import build_partition_table

        with pytest.raises(ValueError):
            build_partition_table(-1)

    @pytest.mark.unit
    def test_budget_enforced(self):
        """Test that a size over budget raises BudgetError."""
        from krank.engine import BudgetError, build_partition_table

        with pytest.raises(BudgetError):
            build_partition_table(101, budget=100)

    @pytest.mark.unit
    def test_recurrence_holds_everywhere(self, small_table):
        """Test that every stored value satisfies the pentagonal recurrence."""
        from krank.engine import pentagonal_recurrence_holds

        assert all(
            pentagonal_recurrence_holds(small_table.values, i)
            for i in range(1, small_table.max_n + 1)
        )

    @pytest.mark.unit
    def test_recurrence_detects_corruption(self, small_table):
        """Test that a changed value fails the recurrence."""
        from krank.engine import pentagonal_recurrence_holds

        values = list(small_table.values)
        values[300] += 1
        assert not pentagonal_recurrence_holds(values, 300)

    @pytest.mark.unit
    def test_matches_coin_change_series(self, small_table):
        """Test that the recurrence agrees with the independent product expansion."""
        from krank.engine import partition_series

        assert partition_series(small_table.max_n) == small_table.values

    @pytest.mark.unit
    def test_matches_enumeration(self, small_table):
        """Test p(n) against the number of enumerated partitions for n <= 25."""
        from krank.engine import enumerate_statistic

        for n in range(26):
            assert sum(enumerate_statistic(n, "rank").values()) == small_table.values[n]


class TestFkTerm:
    """Tests for f_k_term."""

    @pytest.mark.unit
    def test_direct_substitution_examples(self, small_table):
        """Test the worked F_k(l; m, n) values."""
        from krank.engine import f_k_term

        assert f_k_term(small_table, 1, 1, 0, 1) == 0
        assert f_k_term(small_table, 1, 2, 0, 1) == 1
        assert f_k_term(small_table, 2, 1, 3, 4) == 1

    @pytest.mark.unit
    def test_invalid_arguments(self, small_table):
        """Test that k < 1, ell < 1 and m < 0 are rejected."""
        from krank.engine import f_k_term

        with pytest.raises(ValueError):
            f_k_term(small_table, 0, 1, 0, 5)
        with pytest.raises(ValueError):
            f_k_term(small_table, 1, 0, 0, 5)
        with pytest.raises(ValueError):
            f_k_term(small_table, 1, 1, -1, 5)


class TestNkExact:
    """Tests for n_k_exact."""

    @pytest.mark.unit
    def test_crank_anomaly_at_one(self, small_table):
        """Test M(0, 1) = -1 and M(+-1, 1) = 1."""
        from krank.engine import KRankQuery, n_k_exact

        assert n_k_exact(small_table, KRankQuery(1, 0, 1)).value == -1
        assert n_k_exact(small_table, KRankQuery(1, 1, 1)).value == 1
        assert n_k_exact(small_table, KRankQuery(1, -1, 1)).value == 1

    @pytest.mark.unit
    def test_rank_of_four(self, small_table):
        """Test N_2(3, 4) = 1 and N_2(2, 4) = 0."""
        from krank.engine import KRankQuery, n_k_exact

        assert n_k_exact(small_table, KRankQuery(2, 3, 4)).value == 1
        assert n_k_exact(small_table, KRankQuery(2, 2, 4)).value == 0

    @pytest.mark.unit
    def test_exact_regime_value(self, small_table):
        """Test N_1(10, 10) = 1."""
        from krank.engine import KRankQuery, n_k_exact

        assert n_k_exact(small_table, KRankQuery(1, 10, 10)).value == 1

    @pytest.mark.unit
    def test_symmetric_in_m(self, small_table):
        """Test N_k(m, n) = N_k(-m, n)."""
        from krank.engine import KRankQuery, n_k_exact

        for k in (1, 2, 3):
            for m in range(0, 30):
                plus = n_k_exact(small_table, KRankQuery(k, m, 60)).value
                minus = n_k_exact(small_table, KRankQuery(k, -m, 60)).value
                assert plus == minus

    @pytest.mark.unit
    def test_table_too_small(self, small_table):
        """Test that n > max_n raises TableRangeError."""
        from krank.engine import KRankQuery, TableRangeError, n_k_exact

        with pytest.raises(TableRangeError):
            n_k_exact(small_table, KRankQuery(1, 0, small_table.max_n + 1))

    @pytest.mark.unit
    def test_query_validation(self):
        """Test that KRankQuery rejects k < 1 and n < 0."""
        from krank.engine import KRankQuery

        with pytest.raises(ValueError):
            KRankQuery(0, 0, 5)
        with pytest.raises(ValueError):
            KRankQuery(1, 0, -1)

    @pytest.mark.unit
    def test_mass_is_partition_count(self, small_table):
        """Test that N_1 and N_2 sum over m to p(n)."""
        from krank.engine import k_rank_mass

        for n in range(1, 80):
            assert k_rank_mass(small_table, 1, n) == small_table.values[n]
            assert k_rank_mass(small_table, 2, n) == small_table.values[n]

    @pytest.mark.unit
    def test_rank_mass_at_zero(self, small_table):
        """Test that the generating function gives no k=2 mass at n = 0."""
        from krank.engine import k_rank_mass

        assert k_rank_mass(small_table, 1, 0) == 1
        assert k_rank_mass(small_table, 2, 0) == 0


class TestOracleSeries:
    """Tests for the independent q-series oracle."""

    @pytest.mark.unit
    def test_hand_expansion(self):
        """Test the worked coefficients."""
        from krank.engine import n_k_oracle_series

        assert n_k_oracle_series(1, 0, 1).coeffs[1] == -1
        assert n_k_oracle_series(2, 0, 4).coeffs[4] == 1

    @pytest.mark.unit
    def test_constant_term(self):
        """Test that only (k, m) = (1, 0) has a constant term."""
        from krank.engine import n_k_oracle_series

        assert n_k_oracle_series(1, 0, 5).coeffs[0] == 1
        assert n_k_oracle_series(1, 1, 5).coeffs[0] == 0
        assert n_k_oracle_series(2, 0, 5).coeffs[0] == 0

    @pytest.mark.unit
    def test_agrees_with_finite_sum(self, small_table):
        """Test oracle coefficients against n_k_exact for n <= 60."""
        from krank.engine import KRankQuery, n_k_exact, n_k_oracle_series

        for k in (1, 2, 3):
            for m in range(0, 61, 7):
                series = n_k_oracle_series(k, m, 60)
                assert len(series.coeffs) == 61
                for n, coeff in enumerate(series.coeffs):
                    assert coeff == n_k_exact(small_table, KRankQuery(k, m, n)).value

    @pytest.mark.unit
    def test_invalid_arguments(self):
        """Test that negative m or max_n are rejected."""
        from krank.engine import n_k_oracle_series

        with pytest.raises(ValueError):
            n_k_oracle_series(1, -1, 5)
        with pytest.raises(ValueError):
            n_k_oracle_series(1, 0, -1)


class TestEnumeration:
    """Tests for enumerate_statistic."""

    @pytest.mark.unit
    def test_rank_of_four(self):
        """Test the rank histogram of the partitions of 4."""
        from krank.engine import enumerate_statistic

        assert enumerate_statistic(4, "rank") == {3: 1, 1: 1, 0: 1, -1: 1, -3: 1}

    @pytest.mark.unit
    def test_empty_partition(self):
        """Test that n = 0 has one partition of rank 0."""
        from krank.engine import enumerate_statistic

        assert enumerate_statistic(0, "rank") == {0: 1}

    @pytest.mark.unit
    def test_crank_matches_generating_function(self, small_table):
        """Test crank histograms against N_1 for 2 <= n <= 20."""
        from krank.engine import KRankQuery, enumerate_statistic, n_k_exact

        for n in range(2, 21):
            histogram = enumerate_statistic(n, "crank")
            for m in range(-n, n + 1):
                expected = histogram.get(m, 0)
                assert n_k_exact(small_table, KRankQuery(1, m, n)).value == expected

    @pytest.mark.unit
    def test_rank_matches_generating_function(self, small_table):
        """Test rank histograms against N_2 for 1 <= n <= 20."""
        from krank.engine import KRankQuery, enumerate_statistic, n_k_exact

        for n in range(1, 21):
            histogram = enumerate_statistic(n, "rank")
            for m in range(-n, n + 1):
                expected = histogram.get(m, 0)
                assert n_k_exact(small_table, KRankQuery(2, m, n)).value == expected

    @pytest.mark.unit
    def test_unknown_statistic(self):
        """Test that an unknown statistic is rejected."""
        from krank.engine import enumerate_statistic

        with pytest.raises(ValueError, match="statistic"):
            enumerate_statistic(4, "durfee")

    @pytest.mark.unit
    def test_budget(self):
        """Test that n over budget raises BudgetError."""
        from krank.engine import BudgetError, enumerate_statistic

        with pytest.raises(BudgetError):
            enumerate_statistic(12, "rank", budget=10)


class TestDifferences:
    """Tests for backward_difference and its uses."""

    @pytest.mark.unit
    def test_order_zero_is_identity(self):
        """Test that r = 0 returns the sequence."""
        from krank.engine import backward_difference

        assert backward_difference(0, [3, 1, 4, 1, 5]) == [3, 1, 4, 1, 5]

    @pytest.mark.unit
    def test_order_one_on_partition_values(self):
        """Test (p(4), p(5)) -> p(4) - p(5) = -2."""
        from krank.engine import backward_difference

        assert backward_difference(1, [5, 7]) == [-2]

    @pytest.mark.unit
    def test_constants_annihilated(self):
        """Test that r = 2 sends a constant sequence to zero."""
        from krank.engine import backward_difference

        assert backward_difference(2, [9, 9, 9, 9]) == [0, 0]

    @pytest.mark.unit
    def test_too_short(self):
        """Test that fewer than r + 1 values is a ValueError."""
        from krank.engine import backward_difference

        with pytest.raises(ValueError):
            backward_difference(3, [1, 2, 3])

    @pytest.mark.unit
    def test_partition_backward_difference(self, small_table):
        """Test Delta p(N) = p(N) - p(N-1) and Delta^2 p(N)."""
        from krank.engine import partition_backward_difference

        p = small_table.values
        assert partition_backward_difference(small_table, 1, 10) == p[10] - p[9]
        assert partition_backward_difference(small_table, 2, 10) == p[10] - 2 * p[9] + p[8]

    @pytest.mark.unit
    def test_k_rank_difference(self, small_table):
        """Test the alternating sum over m + j."""
        from krank.engine import KRankQuery, k_rank_difference, n_k_exact

        def nk(m):
            return n_k_exact(small_table, KRankQuery(1, m, 50)).value

        assert k_rank_difference(small_table, 1, 1, 5, 50) == nk(5) - nk(6)
        assert k_rank_difference(small_table, 1, 2, 5, 50) == nk(5) - 2 * nk(6) + nk(7)


class TestExactRegime:
    """Tests for exact_regime_threshold."""

    @pytest.mark.unit
    def test_examples(self):
        """Test the worked thresholds."""
        from krank.engine import exact_regime_threshold

        assert exact_regime_threshold(1, 10) == 5
        assert exact_regime_threshold(2, 1) == 0
        assert exact_regime_threshold(1, 0) == 0

    @pytest.mark.unit
    def test_odd_n_boundary(self, small_table):
        """Test that the boundary m = (n+3)/2 - 2k for odd n is excluded."""
        from krank.engine import KRankQuery, exact_regime_threshold, f_k_term, n_k_exact

        assert exact_regime_threshold(1, 5) == 3
        assert n_k_exact(small_table, KRankQuery(1, 2, 5)).value == 0
        assert f_k_term(small_table, 1, 1, 2, 5) == 1

    @pytest.mark.unit
    def test_main_term_exact_past_threshold(self, small_table):
        """Test N_k(m, n) = F_k(1; m, n) for every m from the threshold on."""
        from krank.engine import KRankQuery, exact_regime_threshold, f_k_term, n_k_exact

        for k in (1, 2, 3):
            for n in range(0, 80):
                for m in range(exact_regime_threshold(k, n), n + 1):
                    exact = n_k_exact(small_table, KRankQuery(k, m, n)).value
                    assert exact == f_k_term(small_table, k, 1, m, n)
