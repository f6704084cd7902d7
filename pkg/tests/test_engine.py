import random

import pytest

from trailtrap import graphs as G
from trailtrap.engine import (
    IllegalMoveError,
    Move,
    P1,
    P2,
    move_between,
    new_game,
    replay,
    transcript_dumps,
    transcript_loads,
)


def diamond():
    # a=0, b=1, c=2, d=3
    return G.build_graph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])


FIG1_LINE = [(1, 2), (2, 3), (2, 0), (3, 1), (0, 1)]  # b->c c->d c->a d->b a->b


class TestOpening:
    def test_new_game(self):
        game = new_game(G.complete(4))
        assert len(game.moves) == 0
        assert game.turn == P1

    def test_first_moves_are_all_directed_edges(self):
        game = new_game(G.complete(4))
        assert len(game.legal_moves()) == 12

    def test_edgeless_graph_is_immediately_terminal(self):
        game = new_game(G.build_graph(2, []))
        assert game.legal_moves() == []
        assert game.is_terminal()
        assert game.loser() == P1

    def test_second_player_placement_excludes_used_edge(self):
        g = diamond()
        game = new_game(g).apply(move_between(g, 1, 2))
        moves = game.legal_moves()
        assert len(moves) == 8
        assert all(m.edge != g.edge_index(1, 2) for m in moves)


class TestLegality:
    def test_forced_continuation(self):
        g = diamond()
        game = replay(g, [move_between(g, 1, 2), move_between(g, 2, 3)])
        # P1 sits on c=2; the only unused edge at c goes to a=0.
        assert [(m.tail, m.head) for m in game.legal_moves()] == [(2, 0)]

    def test_terminal_after_full_line(self):
        g = diamond()
        game = replay(g, [move_between(g, u, v) for u, v in FIG1_LINE])
        assert game.is_terminal()
        assert game.loser() == P2
        assert game.winner() == P1

    def test_edge_reuse_rejected(self):
        g = diamond()
        game = new_game(g).apply(move_between(g, 2, 3))
        with pytest.raises(IllegalMoveError):
            game.apply(move_between(g, 2, 3))
        with pytest.raises(IllegalMoveError):
            game.apply(move_between(g, 3, 2))

    def test_wrong_tail_rejected(self):
        g = diamond()
        game = replay(g, [move_between(g, 1, 2), move_between(g, 2, 3)])
        with pytest.raises(IllegalMoveError):
            game.apply(move_between(g, 0, 1))  # P1 is on 2, not 0

    def test_loser_requires_terminal(self):
        game = new_game(diamond())
        with pytest.raises(IllegalMoveError):
            game.loser()

    def test_undo_on_empty_game(self):
        with pytest.raises(IllegalMoveError):
            new_game(diamond()).undo()


class TestApplyUndo:
    def test_round_trip_exact(self):
        g = diamond()
        game = new_game(g).apply(move_between(g, 1, 2))
        snapshot = game.copy()
        game.apply(move_between(g, 2, 3)).undo()
        assert game == snapshot

    def test_many_random_round_trips(self):
        rng = random.Random(11)
        g = G.complete(5)
        for _ in range(300):
            game = new_game(g)
            depth = 0
            while depth < 8:
                moves = game.legal_moves()
                if not moves:
                    break
                snapshot = game.copy()
                mv = rng.choice(moves)
                game.apply(mv)
                undone = game.copy().undo()
                assert undone == snapshot
                depth += 1

    def test_positions_track_heads(self):
        g = diamond()
        game = replay(g, [move_between(g, u, v) for u, v in FIG1_LINE[:3]])
        assert game.pos1 == 0  # b->c, then c->a
        assert game.pos2 == 3  # c->d


class TestTrailInvariants:
    @staticmethod
    def assert_is_trail(g, moves):
        used = set()
        for prev, nxt in zip(moves, moves[1:]):
            assert prev.head == nxt.tail
        for m in moves:
            assert m.edge not in used
            used.add(m.edge)

    def test_random_playouts_form_trails_and_length_rule(self):
        rng = random.Random(5)
        graphs = [diamond(), G.complete(5), G.grid(2, 4), G.prism(3)]
        for g in graphs:
            for _ in range(200):
                game = new_game(g)
                while True:
                    moves = game.legal_moves()
                    if not moves:
                        break
                    game.apply(rng.choice(moves))
                    self.assert_is_trail(g, game.trail_of(P1))
                    self.assert_is_trail(g, game.trail_of(P2))
                t1, t2 = len(game.trail_of(P1)), len(game.trail_of(P2))
                if game.loser() == P2:
                    assert t1 == t2 + 1
                else:
                    assert t1 == t2


class TestTranscripts:
    def test_round_trip(self):
        g = diamond()
        moves = [move_between(g, u, v) for u, v in FIG1_LINE]
        text = transcript_dumps(moves)
        assert transcript_loads(text) == moves

    def test_replay_validates(self):
        g = diamond()
        bad = [Move(0, 0, 1), Move(0, 1, 0)]
        with pytest.raises(IllegalMoveError):
            replay(g, bad)
