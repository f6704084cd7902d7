import itertools
import random

import pytest

from conftest import fig8_spider, fig9a_tree, fig9b_tree, plain_winner
from trailtrap import graphs as G
from trailtrap import trees
from trailtrap.engine import P1, P2, Move, move_between, new_game
from trailtrap.solver import solve, solve_partial


def all_parent_arrays(n):
    if n == 1:
        yield []
        return
    for parents in itertools.product(*(range(i) for i in range(1, n))):
        yield list(parents)


class TestCenters:
    def test_path_centers(self):
        assert trees.tree_centers(G.path(5)) == [2]
        assert trees.tree_centers(G.path(4)) == [1, 2]
        assert trees.tree_centers(G.path(2)) == [0, 1]
        assert trees.tree_centers(G.path(1)) == [0]

    def test_matches_eccentricity_definition(self):
        rng = random.Random(2)
        for _ in range(120):
            n = rng.randint(1, 10)
            t = G.tree_from_parents([rng.randint(0, i) for i in range(n - 1)])
            assert trees.tree_centers(t) == G.center(t)

    def test_center_count_and_relations(self):
        rng = random.Random(3)
        for _ in range(120):
            n = rng.randint(2, 10)
            t = G.tree_from_parents([rng.randint(0, i) for i in range(n - 1)])
            c = trees.tree_centers(t)
            r, d = G.radius(t), G.diameter(t)
            assert len(c) in (1, 2)
            if len(c) == 2:
                assert t.has_edge(*c)
                assert d == 2 * r - 1
            else:
                assert d == 2 * r

    def test_rejects_non_tree(self):
        with pytest.raises(G.GraphError):
            trees.tree_centers(G.cycle(4))


class TestCutEdgeCriterion:
    def test_off_center_opening_is_refuted(self):
        # Path 0-1-2-3-4: opening 0->1 (head is not the center 2).
        t = G.path(5)
        uv = move_between(t, 0, 1)
        hits = [e for e in range(t.m) if e != uv.edge and trees.cut_edge_criterion(t, uv, e)]
        assert hits, "some deleted pair must refute the off-center opening"

    def test_far_edges_do_not_misfire_on_path5(self):
        # Opening into the center of the 5-path: the two far edges leave the
        # head with the longer side, so they do not qualify; the edge right
        # past the head does (and indeed the whole path is a second-player
        # win).
        t = G.path(5)
        uv = move_between(t, 1, 2)
        assert not trees.cut_edge_criterion(t, uv, t.edge_index(0, 1))
        assert not trees.cut_edge_criterion(t, uv, t.edge_index(3, 4))
        assert trees.cut_edge_criterion(t, uv, t.edge_index(2, 3))

    def test_same_component_edge_is_false(self):
        t = fig9a_tree()
        uv = move_between(t, 1, 0)
        # Edge (2,3) stays in the head's component after the deletions? No:
        # removing (1,0) and (2,3) separates 3 from 0, but the trail from 0
        # is longer, so the comparison fails.
        assert not trees.cut_edge_criterion(t, uv, t.edge_index(2, 3))

    def test_criterion_implies_second_player_win(self):
        # Wherever the criterion fires, fixing that opening must lose.
        rng = random.Random(8)
        checked = 0
        for _ in range(40):
            n = rng.randint(3, 7)
            t = G.tree_from_parents([rng.randint(0, i) for i in range(n - 1)])
            for e, (u, v) in enumerate(t.edges):
                for tail, head in ((u, v), (v, u)):
                    uv = move_between(t, tail, head)
                    if any(
                        trees.cut_edge_criterion(t, uv, f)
                        for f in range(t.m)
                        if f != e
                    ):
                        game = new_game(t).apply(uv)
                        assert solve_partial(game) is True  # mover P2 wins
                        checked += 1
        assert checked > 10

    def test_distinct_edges_required(self):
        t = G.path(3)
        with pytest.raises(G.GraphError):
            trees.cut_edge_criterion(t, move_between(t, 0, 1), t.edge_index(0, 1))


class TestAnalyzeTree:
    def test_fig8_fails_branch_diameter(self):
        analysis = trees.analyze_tree(fig8_spider())
        assert not analysis.conditions_met
        assert analysis.failed_clause == "branch-diameter"
        assert solve(fig8_spider()).winner == P2

    def test_fig9a_conditions_met(self):
        analysis = trees.analyze_tree(fig9a_tree())
        assert analysis.conditions_met
        assert analysis.centers == (0,)
        assert all(m.head == 0 for m in analysis.candidate_first_moves)
        assert len(analysis.viable_first_moves) >= 1

    def test_star_conditions_met(self):
        star = G.complete_bipartite(1, 3)
        analysis = trees.analyze_tree(star)
        assert analysis.conditions_met
        assert solve(star).winner == P1

    def test_path3_center_degree(self):
        analysis = trees.analyze_tree(G.path(3))
        assert not analysis.conditions_met
        assert analysis.failed_clause == "center-degree"

    def test_rejects_non_tree(self):
        with pytest.raises(G.GraphError):
            trees.analyze_tree(G.cycle(5))

    def test_screen_failure_implies_p2_on_small_census(self):
        for n in range(2, 8):
            for parents in all_parent_arrays(n):
                t = G.tree_from_parents(parents)
                if t.m >= 2:
                    analysis = trees.analyze_tree(t)
                    if not analysis.conditions_met:
                        assert solve(t).winner == P2

    def test_screen_is_not_sufficient(self):
        # Conditions met yet the second player wins: the screens are only
        # necessary.
        analysis = trees.analyze_tree(fig9b_tree())
        assert analysis.conditions_met
        assert trees.solve_tree(fig9b_tree()).winner == P2


class TestRpeg:
    def test_path3_forced_line(self):
        t = G.path(3)
        m1 = move_between(t, 0, 1)
        m2 = move_between(t, 2, 1)
        assert trees.rpeg_tree(t, m1, m2) == P2

    def test_star_always_first_player(self):
        star = G.complete_bipartite(1, 3)
        m1 = move_between(star, 1, 0)
        for e, (u, v) in enumerate(star.edges):
            if e == m1.edge:
                continue
            for tail, head in ((u, v), (v, u)):
                assert trees.rpeg_tree(star, m1, Move(e, tail, head)) == P1

    def test_fig9b_leaf_reply_beats_center_opening(self):
        t = fig9b_tree()
        m1 = move_between(t, 1, 0)
        reply = move_between(t, 6, 5)  # start from the tip of a long branch
        assert trees.rpeg_tree(t, m1, reply) == P2

    def test_rejects_same_edge(self):
        t = G.path(3)
        with pytest.raises(G.GraphError):
            trees.rpeg_tree(t, move_between(t, 0, 1), move_between(t, 1, 0))


class TestSolveTree:
    def test_figures(self):
        assert trees.solve_tree(fig9a_tree()).winner == P1
        assert trees.solve_tree(fig9b_tree()).winner == P2
        assert trees.solve_tree(fig8_spider()).winner == P2

    def test_trivial_trees(self):
        assert trees.solve_tree(G.path(1)).winner == P2
        assert trees.solve_tree(G.path(2)).winner == P1

    def test_agreement_small(self):
        for n in range(1, 8):
            for parents in all_parent_arrays(n):
                t = G.tree_from_parents(parents)
                assert trees.solve_tree(t).winner == solve(t).winner

    def test_agreement_matches_plain_minimax_spotchecks(self):
        rng = random.Random(13)
        for _ in range(25):
            n = rng.randint(2, 7)
            t = G.tree_from_parents([rng.randint(0, i) for i in range(n - 1)])
            assert trees.solve_tree(t).winner == plain_winner(t)

    def test_winning_openings_enter_degree3_center(self):
        # Across every first-player-win tree on <= 8 vertices, the witness
        # ends at a center of degree exactly 3; with two centers the tail is
        # the degree-2 center.
        found = 0
        for n in range(2, 9):
            for parents in all_parent_arrays(n):
                t = G.tree_from_parents(parents)
                if t.m <= 1:
                    continue
                out = trees.solve_tree(t)
                if out.winner != P1:
                    continue
                found += 1
                centers = trees.tree_centers(t)
                w = out.witness_first_move
                assert w.head in centers
                assert t.degree(w.head) == 3
                if len(centers) == 2:
                    assert w.tail in centers
                    assert t.degree(w.tail) == 2
        assert found > 0

    def test_rejects_non_tree(self):
        with pytest.raises(G.GraphError):
            trees.solve_tree(G.complete(3))
