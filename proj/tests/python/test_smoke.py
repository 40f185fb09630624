import revlab


def test_schedule_metrics():
    m = revlab.bennett_metrics(2, 3)
    assert m["moves"] == 27
    assert m["max_pebbles"] == 4
    assert m["first_reach_time"] == 27
    assert m["target"] == 8


def test_schedule_moves():
    assert revlab.bennett_moves(2, 1) == ["P 1", "P 2", "U 1"]
    assert len(revlab.bennett_moves(3, 2)) == 25


def test_min_pebbles():
    pebbles, witness = revlab.min_pebbles(8)
    assert pebbles == 4
    assert witness[0] == "P 1"


def test_simulation_matches_direct_run():
    for seed in range(5):
        report = revlab.sim_bennett(width=12, seed=seed, init=3, k=2, n=3, seg_len=2)
        assert report["peak_checkpoints"] == 4
        assert report["final_checkpoint"] == revlab.direct_run(12, seed, 3, 16)


def test_chain_and_oracle():
    nodes = revlab.chain_nodes(6, 4, seed=11)
    assert len(nodes) == 4
    assert all(len(n) == 6 for n in nodes)
    assert len(set(nodes) | {"0" * 6}) == 5

    tape = "0" * 6
    out = revlab.oracle_call(6, 4, 11, tape)
    assert out == tape + "#" + nodes[0]
    assert revlab.oracle_call(6, 4, 11, out) == tape


def test_separator_tracks_last_node():
    for seed in range(8):
        nodes = revlab.chain_nodes(6, 8, seed)
        verdict = revlab.separator(6, 8, seed, T=6 * 8)
        assert verdict["accept"] == (nodes[-1][0] == "1")
        assert verdict["final_node"] == nodes[-1]


def test_query_log_reads_back_as_the_schedule():
    assert revlab.chain_sim_moves(6, 2, 2, seed=11) == revlab.bennett_moves(2, 2)


def test_compression_round_trips():
    for tau in (0, 18, 36):
        assert revlab.compress_roundtrip(6, 2, 2, 11, tau, forward=True)
        assert revlab.compress_roundtrip(6, 2, 2, 11, tau, forward=False)


def test_euler_tour_agrees_with_direct_lookup():
    for seed in range(10):
        r = revlab.euler_tour_random(width=7, seed=seed, step_cap=4096)
        assert r["found"] == (r["direct"] is not None)
        if r["found"]:
            assert r["halting"] == r["direct"]


def test_incompressible_witnesses():
    assert revlab.find_incompressible("identity", 1, 2) == "00"
    assert len(revlab.find_incompressible("duplicate-splice", 3, 8)) == 8
