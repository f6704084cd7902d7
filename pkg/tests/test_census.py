import pytest

from trailtrap import census, graphs as G


TABLE = {3: (2, 2), 4: (6, 4), 5: (21, 17), 6: (112, 88), 7: (853, 734)}


class TestEnumeration:
    def test_counts_small(self):
        assert len(census.enumerate_connected(3)) == 2
        assert len(census.enumerate_connected(4)) == 6
        assert len(census.enumerate_connected(5)) == 21

    def test_n6_count(self):
        assert len(census.enumerate_connected(6)) == 112

    def test_packaged_graph7_file(self):
        gs = census.packaged_graph7()
        assert len(gs) == 853
        assert all(g.n == 7 and G.is_connected(g) for g in gs)
        # Entries are canonical and sorted, hence pairwise distinct classes.
        encoded = [G.graph6_encode(g) for g in gs]
        assert encoded == sorted(encoded)
        assert len(set(encoded)) == 853

    def test_all_classes_distinct_n5(self):
        forms = {G.canonical_form(g) for g in census.enumerate_connected(5)}
        assert len(forms) == 21

    def test_rejects_bad_n(self):
        with pytest.raises(G.GraphError):
            census.enumerate_connected(8)

    def test_graph6_file_override(self, tmp_path):
        path = tmp_path / "some.g6"
        path.write_text(
            "\n".join(
                G.graph6_encode(g) for g in census.enumerate_connected(4)
            )
            + "\n"
        )
        assert len(census.enumerate_connected(4, graph6_file=str(path))) == 6

    def test_graph6_file_validated(self, tmp_path):
        path = tmp_path / "bad.g6"
        path.write_text(G.graph6_encode(G.complete(3)) + "\n")
        with pytest.raises(G.GraphError):
            census.enumerate_connected(4, graph6_file=str(path))


class TestCensusCounts:
    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_table_rows_fast(self, n):
        report = census.run_census(n)
        assert (report.total_connected, report.p2_win) == TABLE[n]

    def test_n4_p1_list_is_star_and_k4(self):
        report = census.run_census(4)
        expected = {
            G.graph6_encode(G.canonical_relabel(G.complete_bipartite(1, 3))),
            G.graph6_encode(G.canonical_relabel(G.complete(4))),
        }
        assert set(report.p1_win_graph6) == expected

    def test_n3_consistent_with_degree_rule(self):
        # Both 3-vertex graphs have maximum degree 2, so both are
        # second-player wins.
        report = census.run_census(3)
        assert report.p2_win == report.total_connected == 2

    def test_report_arithmetic(self):
        report = census.run_census(4)
        assert report.p1_win + report.p2_win == report.total_connected
        assert len(report.entries) == report.total_connected
        text = census.format_report(report)
        assert "4" in text and "66.7%" in text

    def test_parallel_matches_serial(self):
        serial = census.run_census(5, jobs=1)
        parallel = census.run_census(5, jobs=3)
        assert serial.p2_win == parallel.p2_win
        assert serial.p1_win_graph6 == parallel.p1_win_graph6
        assert [e.graph6 for e in serial.entries] == [
            e.graph6 for e in parallel.entries
        ]


@pytest.mark.slow
class TestCensusSlow:
    def test_n6_row(self):
        report = census.run_census(6, jobs=2)
        assert (report.total_connected, report.p2_win) == TABLE[6]


@pytest.mark.longrun
class TestCensusLongRun:
    def test_n7_row(self):
        report = census.run_census(7, jobs=4, tt_bits=22)
        assert (report.total_connected, report.p2_win) == TABLE[7]

    def test_builtin_enumerator_matches_packaged_file(self):
        enumerated = census.enumerate_connected(7, long_running=True)
        assert len(enumerated) == 853
        keys = {G.canonical_form(g) for g in enumerated}
        packaged = {G.canonical_form(g) for g in census.packaged_graph7()}
        assert keys == packaged
