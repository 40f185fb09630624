#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "revlab/analysis.hpp"
#include "revlab/eulertour.hpp"
#include "revlab/oracle.hpp"
#include "revlab/pebble.hpp"
#include "revlab/revsim.hpp"

namespace py = pybind11;
using namespace revlab;

namespace {

std::vector<std::string> move_lines(const std::vector<pebble::Move>& moves) {
    std::vector<std::string> out;
    out.reserve(moves.size());
    for (const pebble::Move& m : moves)
        out.push_back((m.kind == pebble::MoveKind::Pebble ? "P " : "U ") +
                      std::to_string(m.node));
    return out;
}

py::dict report_dict(const revsim::SimReport& r) {
    py::dict d;
    d["final_checkpoint"] = r.final_checkpoint;
    d["peak_checkpoints"] = r.peak_checkpoints;
    d["peak_history_bits"] = r.peak_history_bits;
    d["total_microops"] = r.total_microops;
    d["config_width"] = r.config_width;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Reversible-simulation laboratory core";

    m.def("bennett_moves", [](int k, int n) {
        return move_lines(pebble::bennett_schedule(k, n).moves);
    }, py::arg("k"), py::arg("n"));

    m.def("bennett_metrics", [](int k, int n) {
        pebble::Schedule s = pebble::bennett_schedule(k, n);
        pebble::Metrics mt = pebble::schedule_metrics(s);
        py::dict d;
        d["moves"] = mt.total_moves;
        d["max_pebbles"] = mt.max_pebbles;
        d["target"] = s.target();
        if (mt.first_reach_time) d["first_reach_time"] = *mt.first_reach_time;
        return d;
    }, py::arg("k"), py::arg("n"));

    m.def("min_pebbles", [](int t) {
        auto r = pebble::min_pebbles(t, t);
        if (!r) throw std::runtime_error("no strategy within the budget");
        return py::make_tuple(r->pebbles, move_lines(r->moves));
    }, py::arg("t"));

    m.def("sim_bennett", [](unsigned width, uint64_t seed, uint64_t init, int k, int n,
                            uint64_t seg_len) {
        revsim::IrrevMachine machine = revsim::IrrevMachine::seeded(width, seed);
        return report_dict(revsim::simulate_bennett(machine, init, k, n, seg_len).report);
    }, py::arg("width"), py::arg("seed"), py::arg("init"), py::arg("k"), py::arg("n"),
       py::arg("seg_len"));

    m.def("direct_run", [](unsigned width, uint64_t seed, uint64_t init, uint64_t steps) {
        return revsim::IrrevMachine::seeded(width, seed).iterate(init, steps);
    }, py::arg("width"), py::arg("seed"), py::arg("init"), py::arg("steps"));

    m.def("chain_nodes", [](unsigned S, size_t t, uint64_t seed) {
        return oracle::build_chain_oracle(S, t, seed).second.nodes;
    }, py::arg("s"), py::arg("t"), py::arg("seed"));

    m.def("oracle_call", [](unsigned S, size_t t, uint64_t seed, const std::string& tape) {
        return oracle::build_chain_oracle(S, t, seed).first.call(tape);
    }, py::arg("s"), py::arg("t"), py::arg("seed"), py::arg("tape"));

    m.def("separator", [](unsigned S, size_t t, uint64_t seed, uint64_t T) {
        auto [o, c] = oracle::build_chain_oracle(S, t, seed);
        oracle::SeparatorResult r = oracle::separator_decide(o, {S, T});
        py::dict d;
        d["accept"] = r.accept;
        d["oracle_calls"] = r.oracle_calls;
        d["final_node"] = r.final_node;
        return d;
    }, py::arg("s"), py::arg("t"), py::arg("seed"), py::arg("T"));

    m.def("chain_sim_moves", [](unsigned S, int k, int n, uint64_t seed) {
        auto [o, c] = oracle::build_chain_oracle(S, size_t(pebble::bennett_schedule(k, n).target()), seed);
        revsim::SimRun run = revsim::simulate_bennett_chain(o, S, k, n);
        return move_lines(analysis::trace_to_moves(analysis::query_events(run.trace), c));
    }, py::arg("s"), py::arg("k"), py::arg("n"), py::arg("seed"));

    m.def("compress_roundtrip", [](unsigned S, int k, int n, uint64_t seed, uint64_t tau,
                                   bool forward) {
        auto [o, c] = oracle::build_chain_oracle(S, size_t(pebble::bennett_schedule(k, n).target()), seed);
        revsim::SimRun run = revsim::simulate_bennett_chain(o, S, k, n);
        auto dir = forward ? analysis::Direction::Forward : analysis::Direction::Backward;
        analysis::Description d = analysis::compress(run, c, tau, dir);
        analysis::MachineContext ctx{k, n, S, {}};
        return analysis::decompress(d, ctx) == c.concat();
    }, py::arg("s"), py::arg("k"), py::arg("n"), py::arg("seed"), py::arg("tau"),
       py::arg("forward"));

    m.def("euler_tour_random", [](unsigned width, uint64_t seed, uint64_t step_cap) {
        euler::ExplicitMachine machine = euler::random_machine(width, seed);
        euler::TourResult r = euler::euler_tour(machine, width, step_cap);
        std::optional<uint64_t> direct = euler::direct_simulate(machine, uint64_t(1) << width);
        py::dict d;
        d["found"] = r.outcome == euler::TourOutcome::Found;
        d["halting"] = r.halting;
        d["steps"] = r.steps;
        d["direct"] = direct;
        return d;
    }, py::arg("width"), py::arg("seed"), py::arg("step_cap"));

    m.def("find_incompressible", [](const std::string& system, unsigned S, unsigned ell) {
        analysis::DescriptionSystem sys =
            system == "identity"          ? analysis::identity_system()
            : system == "constant"        ? analysis::constant_system()
            : system == "duplicate-splice" ? analysis::duplicate_splice_system(S, 8)
            : system == "zero-collision"  ? analysis::zero_collision_system(S, 8)
                                          : throw std::invalid_argument("unknown system: " + system);
        return analysis::find_incompressible(sys, ell);
    }, py::arg("system"), py::arg("s"), py::arg("ell"));
}
