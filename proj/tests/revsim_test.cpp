#include "doctest.h"

#include <cstdio>

#include "revlab/bits.hpp"
#include "revlab/oracle.hpp"
#include "revlab/pebble.hpp"
#include "revlab/revsim.hpp"

using namespace revlab;
using namespace revlab::revsim;

TEST_CASE("table machines step by lookup") {
    IrrevMachine m = IrrevMachine::from_table(2, {3, 2, 1, 1});
    CHECK(m.config_width() == 2);
    CHECK_FALSE(m.seed());
    CHECK(m.step(0) == 3);
    CHECK(m.step(3) == 1);
    CHECK(m.iterate(0, 3) == 2);  // 0 -> 3 -> 1 -> 2
    CHECK(m.iterate(0, 0) == 0);
}

TEST_CASE("table machine guards") {
    CHECK_THROWS(IrrevMachine::from_table(2, {0, 1}));     // wrong table size
    CHECK_THROWS(IrrevMachine::from_table(1, {0, 2}));     // value out of range
    CHECK_THROWS(IrrevMachine::from_table(17, {}));        // table width cap
    CHECK_THROWS(IrrevMachine::seeded(0, 1));
    CHECK_THROWS(IrrevMachine::seeded(65, 1));
}

TEST_CASE("seeded machines are reproducible and confined to their width") {
    IrrevMachine a = IrrevMachine::seeded(8, 42);
    IrrevMachine b = IrrevMachine::seeded(8, 42);
    IrrevMachine c = IrrevMachine::seeded(8, 43);
    bool all_equal = true, any_diff = false;
    for (uint64_t x = 0; x < 256; ++x) {
        CHECK(a.step(x) <= 255);
        all_equal = all_equal && a.step(x) == b.step(x);
        any_diff = any_diff || a.step(x) != c.step(x);
    }
    CHECK(all_equal);
    CHECK(any_diff);
    CHECK(a.seed() == 42);
}

TEST_CASE("record-everything run and its unwinding") {
    IrrevMachine m = IrrevMachine::seeded(8, 7);
    LandauerResult r = landauer_run(m, 5, 20);
    CHECK(r.final == m.iterate(5, 20));
    CHECK(r.history.size() == 20);
    CHECK(r.history.front() == 5);  // the erased configurations, oldest first
    CHECK(lecerf_reverse(m, r.final, r.history) == 5);

    auto tampered = r.history;
    tampered[3] ^= 1;
    CHECK_THROWS_AS(lecerf_reverse(m, r.final, tampered), CorruptHistory);
}

TEST_CASE("checkpoint copy is a self-inverse xor") {
    VmState vm;
    vm.width = 8;
    vm.current = 0xAB;
    vm.checkpoints.assign(3, 0);
    bennett_checkpoint_copy(vm, 1);
    CHECK(vm.checkpoints[1] == 0xAB);
    vm.current = 0xFF;
    bennett_checkpoint_copy(vm, 1);
    CHECK(vm.checkpoints[1] == 0x54);  // xor accumulates rather than overwrites
    vm.current = 0x54;
    bennett_checkpoint_copy(vm, 1);
    CHECK(vm.checkpoints[1] == 0);
    CHECK_THROWS_AS(bennett_checkpoint_copy(vm, 9), SlotOutOfRange);
}

TEST_CASE("checkpointed run matches the straight-line run") {
    for (uint64_t seed = 1; seed <= 6; ++seed)
        for (auto [k, n, L] : {std::tuple{2, 3, 1}, {3, 2, 2}, {2, 1, 5}, {4, 2, 1}}) {
            CAPTURE(seed);
            CAPTURE(k);
            CAPTURE(n);
            IrrevMachine m = IrrevMachine::seeded(10, seed);
            SimRun run = simulate_bennett(m, 33, k, n, uint64_t(L));
            uint64_t steps = uint64_t(L);
            for (int e = 0; e < n; ++e) steps *= uint64_t(k);
            CHECK(run.report.final_checkpoint == m.iterate(33, steps));
            CHECK(run.report.peak_checkpoints == n * (k - 1) + 1);
            CHECK(run.report.config_width == 10);
        }
}

TEST_CASE("depth zero is a single checkpointed segment") {
    IrrevMachine m = IrrevMachine::seeded(8, 9);
    SimRun run = simulate_bennett(m, 1, 2, 0, 7);
    CHECK(run.report.final_checkpoint == m.iterate(1, 7));
    CHECK(run.report.peak_checkpoints == 1);
}

TEST_CASE("history is transient: nothing lingers after the run") {
    IrrevMachine m = IrrevMachine::seeded(8, 11);
    SimRun run = simulate_bennett(m, 0, 2, 2, 3);
    CHECK(run.end.history.empty());
    CHECK(run.report.peak_history_bits == 3 * 8);  // one segment's records at a time
}

TEST_CASE("trace clocks are dense and replay is exact both ways") {
    IrrevMachine m = IrrevMachine::seeded(9, 13);
    SimRun run = simulate_bennett(m, 17, 3, 2, 2);
    REQUIRE(!run.trace.events.empty());
    for (size_t i = 0; i < run.trace.events.size(); ++i)
        CHECK(run.trace.events[i].clock == i + 1);
    CHECK(replay_forward(run.trace, run.start, &m) == run.end);
    CHECK(replay_backward(run.trace, run.end, &m) == run.start);
}

TEST_CASE("replay rejects inconsistent traces") {
    IrrevMachine m = IrrevMachine::seeded(8, 3);
    SimRun run = simulate_bennett(m, 2, 2, 1, 2);
    Trace bad = run.trace;
    bad.events[4].clock = 99;
    CHECK_THROWS_AS(replay_forward(bad, run.start, &m), ReplayMismatch);

    VmState wrong = run.start;
    wrong.current ^= 1;
    CHECK_THROWS_AS(replay_backward(run.trace, wrong, &m), ReplayMismatch);
}

TEST_CASE("capacity can be forced down to provoke exhaustion") {
    IrrevMachine m = IrrevMachine::seeded(8, 5);
    CHECK_THROWS_AS(simulate_bennett(m, 0, 2, 3, 1, 3), CapacityExceeded);
    CHECK_NOTHROW(simulate_bennett(m, 0, 2, 3, 1, bennett_capacity(2, 3)));
}

TEST_CASE("checkpoint pool sizing") {
    CHECK(bennett_capacity(2, 0) == 2);
    CHECK(bennett_capacity(2, 3) == 5);
    CHECK(bennett_capacity(3, 2) == 6);
}

TEST_CASE("oracle-driven run queries once per move") {
    auto [o, chain] = oracle::build_chain_oracle(5, 4, 21);
    SimRun run = simulate_bennett_chain(o, 5, 2, 2);
    size_t calls = 0;
    for (const TraceEvent& ev : run.trace.events) calls += ev.op == Op::OracleCall;
    CHECK(calls == 9);  // (2k-1)^n moves, one query each
    CHECK(run.report.peak_checkpoints == 3);
    CHECK(run.end.tape.empty());
    CHECK(run.end.history.empty());

    // The register holding the target ends with the final node's value.
    uint64_t got = run.report.final_checkpoint;
    CHECK(got == from_bits(chain.nodes.back()));
}

TEST_CASE("the move program interleaves tape work around each query") {
    size_t capacity = 0;
    std::vector<ProgOp> prog = bennett_chain_program(2, 2, &capacity);
    CHECK(capacity == bennett_capacity(2, 2));
    REQUIRE(prog.size() == 4 * 9);
    for (size_t q = 0; q < prog.size(); q += 4) {
        int calls = 0;
        for (size_t i = q; i < q + 4; ++i) calls += prog[i].op == Op::OracleCall;
        CHECK(calls == 1);
        // A placement opens with a bare node write and queries second; a
        // removal opens with a pair write and queries third. Either way two
        // queries are never adjacent, which the tamper tests rely on.
        if (prog[q].op == Op::TapeWriteNode)
            CHECK(prog[q + 1].op == Op::OracleCall);
        else {
            CHECK(prog[q].op == Op::TapeWritePair);
            CHECK(prog[q + 2].op == Op::OracleCall);
        }
    }
}

TEST_CASE("chain runs replay without the oracle present") {
    auto [o, chain] = oracle::build_chain_oracle(4, 2, 8);
    SimRun run = simulate_bennett_chain(o, 4, 2, 1);
    // Query answers are in the trace, so replay needs no oracle and no machine.
    CHECK(replay_forward(run.trace, run.start, nullptr) == run.end);
    CHECK(replay_backward(run.trace, run.end, nullptr) == run.start);

    Trace bad = run.trace;
    for (TraceEvent& ev : bad.events)
        if (ev.op == Op::OracleCall) {
            ev.tape_after[0] = ev.tape_after[0] == '0' ? '1' : '0';
            break;
        }
    CHECK_THROWS(replay_forward(bad, run.start, nullptr));
}

TEST_CASE("state ops apply and unapply exactly") {
    VmState s;
    s.width = 4;
    s.checkpoints = {0b1010, 0b0011, 0};
    VmState orig = s;

    apply_state_op(s, Op::TapeWriteNode, 1, 0);
    CHECK(s.tape == "0011");
    CHECK(s.clock == 1);
    unapply_state_op(s, Op::TapeWriteNode, 1, 0);
    CHECK(s == orig);

    apply_state_op(s, Op::TapeWritePair, 0, 1);
    CHECK(s.tape == "1010#0011");
    apply_state_op(s, Op::CheckpointXorTapeSucc, 2, 0);
    CHECK(s.checkpoints[2] == 0b0011);
    apply_state_op(s, Op::CheckpointXorTapeSucc, 2, 0);
    CHECK(s.checkpoints[2] == 0);
    apply_state_op(s, Op::TapeErasePair, 0, 1);
    CHECK(s.tape.empty());
    unapply_state_op(s, Op::TapeErasePair, 0, 1);
    unapply_state_op(s, Op::CheckpointXorTapeSucc, 2, 0);
    unapply_state_op(s, Op::CheckpointXorTapeSucc, 2, 0);
    unapply_state_op(s, Op::TapeWritePair, 0, 1);
    CHECK(s == orig);
}

TEST_CASE("state ops reject mismatched preconditions") {
    VmState s;
    s.width = 4;
    s.checkpoints = {0b1010, 0b0011, 0};

    CHECK_THROWS(apply_state_op(s, Op::TapeEraseNode, 0, 0));  // nothing on the tape
    CHECK_THROWS(apply_state_op(s, Op::TapeWriteNode, 7, 0));  // no such slot
    apply_state_op(s, Op::TapeWriteNode, 0, 0);
    CHECK_THROWS(apply_state_op(s, Op::TapeWriteNode, 1, 0));  // tape occupied
    CHECK_THROWS(apply_state_op(s, Op::TapeEraseNode, 1, 0));  // wrong value under erase
    CHECK_THROWS(apply_state_op(s, Op::CheckpointXorTapeSucc, 2, 0));  // not a pair
}

TEST_CASE("step ops are not state-internal") {
    VmState s;
    s.width = 4;
    CHECK_THROWS_AS(apply_state_op(s, Op::StepForward, 0, 0), NonInvertibleEvent);
    CHECK_THROWS_AS(unapply_state_op(s, Op::OracleCall, 0, 0), NonInvertibleEvent);
}

TEST_CASE("machine state serialization round trip") {
    IrrevMachine m = IrrevMachine::seeded(8, 19);
    SimRun run = simulate_bennett(m, 3, 2, 2, 1);
    std::vector<uint8_t> bytes = serialize_vmstate(run.end);
    CHECK(parse_vmstate(bytes) == run.end);

    VmState with_tape = run.start;
    with_tape.tape = "01#10";
    with_tape.history = {1, 2, 3};
    CHECK(parse_vmstate(serialize_vmstate(with_tape)) == with_tape);

    bytes[0] = 'X';
    CHECK_THROWS(parse_vmstate(bytes));
    std::vector<uint8_t> good = serialize_vmstate(run.end);
    good.push_back(0);
    CHECK_THROWS(parse_vmstate(good));
}

TEST_CASE("trace file round trip") {
    auto [o, chain] = oracle::build_chain_oracle(5, 4, 2);
    SimRun run = simulate_bennett_chain(o, 5, 2, 2);
    std::string path = "revsim_test_trace.txt";
    save_trace(path, run.trace);
    Trace back = load_trace(path);
    CHECK(back.config_width == run.trace.config_width);
    REQUIRE(back.events.size() == run.trace.events.size());
    for (size_t i = 0; i < back.events.size(); ++i) CHECK(back.events[i] == run.trace.events[i]);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_trace(path), oracle::IoError);
}

TEST_CASE("op names and inverses") {
    CHECK(op_inverse(Op::StepForward) == Op::StepBackward);
    CHECK(op_inverse(Op::StepBackward) == Op::StepForward);
    CHECK(op_inverse(Op::TapeWriteNode) == Op::TapeEraseNode);
    CHECK(op_inverse(Op::TapeWritePair) == Op::TapeErasePair);
    CHECK(op_inverse(Op::OracleCall) == Op::OracleCall);
    CHECK(op_inverse(Op::CheckpointXorTapeSucc) == Op::CheckpointXorTapeSucc);
    CHECK(std::string(op_name(Op::OracleCall)) == "call");
}
