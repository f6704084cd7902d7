import random

import pytest

from conftest import diamond, fig2_disconnected, plain_minimax, plain_winner
from trailtrap import graphs as G
from trailtrap import solver
from trailtrap.engine import P1, P2, move_between, new_game, replay
from trailtrap.graphs import BudgetExceededError
from trailtrap.solver import (
    analyze_disconnected,
    involution_verdict,
    prune_first_moves,
    solve,
    solve_partial,
)


class TestKnownOutcomes:
    def test_trivial_cases(self):
        assert solve(G.build_graph(3, [])).winner == P2
        out = solve(G.path(2))
        assert out.winner == P1
        assert out.witness_first_move is not None

    def test_diamond_is_p2(self):
        assert solve(diamond()).winner == P2

    def test_k4_p1_k5_p2(self):
        assert solve(G.complete(4)).winner == P1
        assert solve(G.complete(5)).winner == P2

    def test_complete_bipartite(self):
        assert solve(G.complete_bipartite(3, 3)).winner == P2
        assert solve(G.complete_bipartite(3, 5)).winner == P1

    def test_fig2_disconnected_is_p2(self):
        assert solve(fig2_disconnected()).winner == P2

    def test_star_and_path(self):
        assert solve(G.complete_bipartite(1, 3)).winner == P1
        assert solve(G.path(3)).winner == P2


class TestSolvePartial:
    def test_worked_example_position(self):
        # After b->c, c->d, c->a, d->b the mover (P1) wins with a->b.
        g = diamond()
        game = replay(
            g,
            [
                move_between(g, 1, 2),
                move_between(g, 2, 3),
                move_between(g, 2, 0),
                move_between(g, 3, 1),
            ],
        )
        assert solve_partial(game) is True

    def test_terminal_state_mover_loses(self):
        g = G.path(2)
        game = new_game(g).apply(move_between(g, 0, 1))
        assert solve_partial(game) is False

    def test_k5_sample_line(self):
        # v1->v2, v2->v3, v2->v4, v3->v1, v4->v1: the mover (P2) wins
        # (one winning reply goes to the untouched vertex).
        g = G.complete(5)
        game = replay(
            g,
            [
                move_between(g, 0, 1),
                move_between(g, 1, 2),
                move_between(g, 1, 3),
                move_between(g, 2, 0),
                move_between(g, 3, 0),
            ],
        )
        assert solve_partial(game) is True
        game.apply(move_between(g, 0, 4))
        assert solve_partial(game) is False

    def test_empty_game_matches_solve(self):
        g = diamond()
        assert solve_partial(new_game(g)) == (solve(g).winner == P1)


class TestPruneFirstMoves:
    def test_path3_empties(self):
        assert prune_first_moves(G.path(3)) == []

    def test_star_keeps_only_hub_entries(self):
        star = G.complete_bipartite(1, 3)
        moves = prune_first_moves(star)
        assert len(moves) == 3
        assert all(m.head == 0 for m in moves)

    def test_k4_symmetry_single_representative(self):
        assert len(prune_first_moves(G.complete(4), symmetry=True)) == 1

    def test_prune_preserves_answer(self):
        rng = random.Random(23)
        from conftest import random_connected_graph

        for _ in range(20):
            g = random_connected_graph(rng, rng.randint(3, 5))
            assert solve(g).winner == plain_winner(g)
            assert (
                solve(g, symmetry=True).winner
                == solve(g, cut_edge_prune=True).winner
                == solve(g).winner
            )


class TestOracleAgreement:
    def test_all_small_connected_graphs(self, small_census):
        for g in small_census:
            assert solve(g).winner == plain_winner(g), G.graph6_encode(g)

    def test_kernels_agree(self, small_census):
        kernels = solver.available_kernels()
        if len(kernels) < 2:
            pytest.skip("compiled kernel not built")
        for g in small_census[::3]:
            winners = {solve(g, kernel=k).winner for k in kernels.values()}
            assert len(winners) == 1

    def test_prop_degree_rule_on_census(self, small_census):
        # Every winning first move of a P1-win graph with >= 2 edges ends on
        # a degree->=3 vertex: verify the full move list agrees with the
        # pruned one on win/loss classification.
        searcher_moves = 0
        for g in small_census:
            if g.m < 2:
                continue
            if solve(g).winner != P1:
                continue
            for e, (u, v) in enumerate(g.edges):
                for tail, head in ((u, v), (v, u)):
                    game = new_game(g).apply(move_between(g, tail, head))
                    p2_wins = solve_partial(game)
                    if not p2_wins:
                        assert g.degree(head) >= 3
                        searcher_moves += 1
        assert searcher_moves > 0


class TestIsomorphismInvariance:
    def test_random_relabelings(self, small_census):
        rng = random.Random(99)
        checked = 0
        while checked < 100:
            g = rng.choice(small_census)
            perm = list(range(g.n))
            rng.shuffle(perm)
            assert solve(g).winner == solve(g.relabel(perm)).winner
            checked += 1


class TestWitnesses:
    def test_witness_is_sound(self, small_census):
        for g in small_census:
            out = solve(g)
            if out.winner == P1:
                assert out.witness_first_move is not None
                game = new_game(g).apply(out.witness_first_move)
                assert solve_partial(game) is False
            else:
                assert out.witness_first_move is None

    def test_witness_is_lowest_indexed(self, small_census):
        # Without orbit reduction the witness must be the first winning
        # directed edge in (edge, orientation) order.
        for g in small_census[:15]:
            out = solve(g)
            if out.winner != P1:
                continue
            w = out.witness_first_move
            for e, (u, v) in enumerate(g.edges):
                for tail, head in ((u, v), (v, u)):
                    if (e, tail) == (w.edge, w.tail):
                        return
                    if g.degree(head) < 3 and g.m >= 2:
                        continue
                    game = new_game(g).apply(move_between(g, tail, head))
                    assert solve_partial(game) is True, (
                        f"{G.graph6_encode(g)}: earlier winning move "
                        f"{tail}->{head} not reported"
                    )


class TestInvolutionVerdict:
    def test_grid33_and_prism4(self):
        assert involution_verdict(G.grid(3, 3)) is not None
        assert involution_verdict(G.prism(4)) is not None

    def test_k4_unknown(self):
        assert involution_verdict(G.complete(4)) is None

    def test_verdict_consistent_with_solve(self, small_census):
        for g in small_census:
            if involution_verdict(g) is not None:
                assert solve(g).winner == P2, G.graph6_encode(g)


class TestDisconnected:
    def test_fig2(self):
        out = analyze_disconnected(fig2_disconnected())
        assert out.winner == P2

    def test_k4_plus_edge_is_p1(self):
        g = G.build_graph(6, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 5)])
        assert analyze_disconnected(g).winner == P1
        assert solve(g).winner == P1

    def test_twin_components_are_p2(self):
        half = G.complete(4)
        edges = list(half.edges) + [(u + 4, v + 4) for u, v in half.edges]
        g = G.build_graph(8, edges)
        assert analyze_disconnected(g).winner == P2
        assert involution_verdict(g) is not None

    def test_rejects_connected(self):
        with pytest.raises(G.GraphError):
            analyze_disconnected(G.complete(3))

    def test_matches_solve_on_random_unions(self, small_census):
        rng = random.Random(4)
        pool = [g for g in small_census if g.n <= 5]
        for trial in range(25):
            a = rng.choice(pool)
            b = rng.choice(pool)
            edges = list(a.edges) + [(u + a.n, v + a.n) for u, v in b.edges]
            g = G.Graph(a.n + b.n, edges)
            assert analyze_disconnected(g).winner == solve(g).winner, (
                G.graph6_encode(a),
                G.graph6_encode(b),
            )


class TestBudget:
    def test_budget_exceeded_raises(self):
        with pytest.raises(BudgetExceededError):
            solve(G.complete(6), budget=50)

    def test_budget_error_reports_nodes(self):
        try:
            solve(G.complete(6), budget=50)
        except BudgetExceededError as exc:
            assert exc.nodes > 0


class TestDeterminism:
    def test_nodes_and_outcome_stable(self):
        g = G.complete_bipartite(3, 4)
        runs = [solve(g) for _ in range(3)]
        assert len({r.winner for r in runs}) == 1
        assert len({r.nodes for r in runs}) == 1
