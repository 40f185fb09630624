// Command-line front end: runs the pebbling, simulation, oracle, analysis
// and tour experiments and emits their measurements as CSV. Exit codes:
// 0 success/accept, 1 reject/not-found/mismatch, 2 usage or runtime error.

#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "revlab/analysis.hpp"
#include "revlab/bits.hpp"
#include "revlab/eulertour.hpp"
#include "revlab/oracle.hpp"
#include "revlab/pebble.hpp"
#include "revlab/report.hpp"
#include "revlab/revsim.hpp"

using namespace revlab;
using report::cell;

namespace {

void emit(const report::Table& t, const std::string& out_path) {
    if (out_path.empty())
        std::cout << report::to_csv(t);
    else
        report::save_csv(out_path, t);
}

std::string kind_str(pebble::MoveKind k) {
    return k == pebble::MoveKind::Pebble ? "pebble" : "unpebble";
}

struct MachineSource {
    std::string path;
    std::string initial_hex;
    unsigned branching_depth = 0;
    unsigned random_width = 0;
    uint64_t seed = 0;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--machine", path, "successor table file");
        cmd->add_option("--initial", initial_hex, "start configuration (hex), with --machine");
        cmd->add_option("--branching", branching_depth,
                        "built-in two-predecessor tree of this depth")
            ->check(CLI::Range(1u, 10u));
        cmd->add_option("--random-width", random_width, "random table over this many bits")
            ->check(CLI::Range(1u, 10u));
        cmd->add_option("--seed", seed, "seed for --random-width");
    }

    euler::ExplicitMachine build() const {
        int picked = !path.empty() + (branching_depth > 0) + (random_width > 0);
        if (picked != 1)
            throw CLI::ValidationError(
                "machine", "give exactly one of --machine, --branching, --random-width");
        if (branching_depth) return euler::branching_machine(branching_depth);
        if (random_width) return euler::random_machine(random_width, seed);
        euler::ExplicitMachine m = euler::load_machine(path);
        if (initial_hex.empty())
            throw CLI::ValidationError("machine", "--machine needs --initial");
        m.initial = from_hex(initial_hex);
        if (m.initial > width_mask(m.width))
            throw CLI::ValidationError("machine", "--initial wider than the table width");
        return m;
    }
};

int run_pebble_bennett(int k, int n, const std::string& out, bool list_moves) {
    pebble::Schedule s = pebble::bennett_schedule(k, n);
    pebble::Metrics m = pebble::schedule_metrics(s);
    if (list_moves) {
        report::Table t({"move_index", "node", "kind"});
        for (size_t i = 0; i < s.moves.size(); ++i)
            t.add({cell(i + 1), cell(s.moves[i].node), kind_str(s.moves[i].kind)});
        emit(t, out);
        return 0;
    }
    report::Table t({"k", "n", "target", "moves", "max_pebbles", "first_reach_time"});
    t.add({cell(k), cell(n), cell(s.target()), cell(m.total_moves), cell(m.max_pebbles),
           cell(m.first_reach_time.value_or(0))});
    emit(t, out);
    return 0;
}

int run_pebble_search(int t_nodes, int budget, const std::string& out) {
    auto r = pebble::min_pebbles(t_nodes, budget ? budget : t_nodes);
    if (!r) {
        std::cerr << "no strategy within budget " << budget << "\n";
        return 1;
    }
    report::Table t({"t", "min_pebbles", "moves"});
    t.add({cell(t_nodes), cell(r->pebbles), cell(uint64_t(r->moves.size()))});
    emit(t, out);
    return 0;
}

int run_sim_bennett(unsigned width, uint64_t seed, uint64_t init, int k, int n, uint64_t seg_len,
                    unsigned trials, const std::string& out) {
    report::Table t({"seed", "width", "k", "n", "seg_len", "final_checkpoint", "direct",
                     "verdict", "peak_checkpoints", "peak_history_bits", "total_microops"});
    bool all_match = true;
    for (unsigned i = 0; i < trials; ++i) {
        uint64_t s = seed + i;
        revsim::IrrevMachine m = revsim::IrrevMachine::seeded(width, s);
        revsim::SimRun run = revsim::simulate_bennett(m, init, k, n, seg_len);
        uint64_t steps = 1;
        for (int e = 0; e < n; ++e) steps *= uint64_t(k);
        uint64_t direct = m.iterate(init, steps * seg_len);
        bool match = direct == run.report.final_checkpoint;
        all_match = all_match && match;
        t.add({cell(s), cell(width), cell(k), cell(n), cell(seg_len),
               cell(run.report.final_checkpoint), cell(direct),
               match ? "MATCH" : "MISMATCH", cell(uint64_t(run.report.peak_checkpoints)),
               cell(run.report.peak_history_bits), cell(run.report.total_microops)});
    }
    emit(t, out);
    return all_match ? 0 : 1;
}

int run_sim_audit(unsigned width, uint64_t seed, uint64_t init, int k, int n, uint64_t seg_len,
                  unsigned trials, const std::string& out) {
    report::Table t({"seed", "width", "k", "n", "seg_len", "total_microops", "restored",
                     "verdict"});
    bool all_ok = true;
    for (unsigned i = 0; i < trials; ++i) {
        uint64_t s = seed + i;
        revsim::IrrevMachine m = revsim::IrrevMachine::seeded(width, s);
        revsim::SimRun run = revsim::simulate_bennett(m, init, k, n, seg_len);
        revsim::VmState back = revsim::replay_backward(run.trace, run.end, &m);
        bool ok = back == run.start;
        all_ok = all_ok && ok;
        t.add({cell(s), cell(width), cell(k), cell(n), cell(seg_len),
               cell(run.report.total_microops), cell(ok), ok ? "REVERSIBLE" : "BROKEN"});
    }
    emit(t, out);
    return all_ok ? 0 : 1;
}

int run_oracle_build(unsigned S, uint64_t t_len, uint64_t seed, const std::string& out,
                     const std::string& rom_out) {
    auto [o, chain] = oracle::build_chain_oracle(S, size_t(t_len), seed);
    if (out.empty())
        throw CLI::ValidationError("oracle build", "--out <chain file> is required");
    oracle::save_chain(out, chain);
    if (!rom_out.empty()) oracle::save_rom(rom_out, oracle::rom_from_chain(chain));
    std::cerr << "wrote chain of " << chain.length() << " nodes, width " << S << "\n";
    return 0;
}

int run_oracle_separator(const std::string& chain_path, unsigned S, uint64_t t_len,
                         uint64_t seed, uint64_t T, const std::string& out) {
    oracle::Chain chain = chain_path.empty()
                              ? oracle::build_chain_oracle(S, size_t(t_len), seed).second
                              : oracle::load_chain(chain_path);
    oracle::GraphOracle o = oracle::oracle_from_chain(chain);
    if (T == 0) T = uint64_t(chain.node_width) * chain.length();
    oracle::SeparatorResult r = oracle::separator_decide(o, {chain.node_width, T});
    report::Table t({"seed", "s", "t", "time_bound", "oracle_calls", "final_node", "accept"});
    t.add({cell(chain.seed), cell(chain.node_width), cell(chain.length()), cell(T),
           cell(r.oracle_calls), r.final_node, cell(r.accept)});
    emit(t, out);
    return r.accept ? 0 : 1;
}

int run_oracle_rom(const std::string& chain_path, const std::string& rom_path, unsigned S,
                   uint64_t t_len, uint64_t seed, uint64_t steps, const std::string& rom_out,
                   const std::string& out) {
    oracle::InputRom rom;
    uint64_t default_steps = 0;
    if (!rom_path.empty()) {
        rom = oracle::load_rom(rom_path);
        default_steps = uint64_t(1) << rom.word_width;
    } else {
        oracle::Chain chain = chain_path.empty()
                                  ? oracle::build_chain_oracle(S, size_t(t_len), seed).second
                                  : oracle::load_chain(chain_path);
        rom = oracle::rom_from_chain(chain);
        default_steps = chain.length();
    }
    if (steps == 0) steps = default_steps;
    if (!rom_out.empty()) oracle::save_rom(rom_out, rom);
    char bit = oracle::rom_result_bit(rom, steps);
    report::Table t({"word_width", "steps", "result_bit"});
    t.add({cell(rom.word_width), cell(steps), std::string(1, bit)});
    emit(t, out);
    return bit == '1' ? 0 : 1;
}

struct ChainSim {
    oracle::Chain chain;
    revsim::SimRun run;
};

ChainSim rerun_chain(const std::string& chain_path, int k, int n) {
    ChainSim cs{oracle::load_chain(chain_path), {}};
    uint64_t target = pebble::bennett_schedule(k, n).target();
    if (cs.chain.length() != target)
        throw CLI::ValidationError("analyze", "chain length " +
                                                  std::to_string(cs.chain.length()) +
                                                  " does not match k^n = " +
                                                  std::to_string(target));
    oracle::GraphOracle o = oracle::oracle_from_chain(cs.chain);
    cs.run = revsim::simulate_bennett_chain(o, cs.chain.node_width, k, n);
    return cs;
}

int run_analyze_pebbles(const std::string& chain_path, const std::string& trace_path, int k,
                        int n, const std::string& trace_out, const std::string& out) {
    oracle::Chain chain = oracle::load_chain(chain_path);
    std::vector<analysis::QueryEvent> events;
    if (!trace_path.empty()) {
        events = analysis::query_events(revsim::load_trace(trace_path));
    } else {
        ChainSim cs = rerun_chain(chain_path, k, n);
        if (!trace_out.empty()) revsim::save_trace(trace_out, cs.run.trace);
        events = analysis::query_events(cs.run.trace);
    }
    std::vector<pebble::Move> moves = analysis::trace_to_moves(events, chain);
    pebble::PebbleState st{int(chain.length()), {}};
    size_t peak = 0;
    report::Table t({"move_index", "node", "kind", "pebbles_after"});
    for (size_t i = 0; i < moves.size(); ++i) {
        pebble::apply_move(st, moves[i]);
        peak = std::max(peak, st.pebbled.size());
        t.add({cell(i + 1), cell(moves[i].node), kind_str(moves[i].kind),
               cell(uint64_t(st.pebbled.size()))});
    }
    emit(t, out);
    std::cerr << moves.size() << " moves, peak " << peak << " pebbles\n";
    return 0;
}

int run_analyze_compress(const std::string& chain_path, int k, int n, uint64_t tau,
                         const std::string& dir, const std::string& desc_out,
                         const std::string& out) {
    ChainSim cs = rerun_chain(chain_path, k, n);
    analysis::Direction d;
    if (dir == "forward") d = analysis::Direction::Forward;
    else if (dir == "backward") d = analysis::Direction::Backward;
    else if (dir == "auto")
        d = analysis::majority_direction(analysis::query_events(cs.run.trace), cs.chain, tau);
    else
        throw CLI::ValidationError("analyze compress", "--dir must be forward|backward|auto");
    analysis::Description desc = analysis::compress(cs.run, cs.chain, tau, d);
    if (!desc_out.empty()) analysis::save_description(desc_out, desc);
    report::Table t({"component", "bits"});
    for (const auto& [name, bits] : analysis::description_sizes(desc))
        t.add({name, cell(bits)});
    emit(t, out);
    return 0;
}

int run_analyze_decompress(const std::string& desc_path, int k, int n, unsigned S,
                           const std::string& chain_path) {
    analysis::Description d = analysis::load_description(desc_path);
    analysis::MachineContext ctx{k, n, S, {}};
    std::string x = analysis::decompress(d, ctx);
    std::cout << x << "\n";
    if (!chain_path.empty()) {
        oracle::Chain chain = oracle::load_chain(chain_path);
        if (x != chain.concat()) {
            std::cerr << "MISMATCH against chain file\n";
            return 1;
        }
        std::cerr << "MATCH\n";
    }
    return 0;
}

int run_analyze_incompressible(const std::string& system, unsigned S, unsigned index_bits,
                               unsigned ell, int k, int n, const std::string& out) {
    analysis::DescriptionSystem sys = [&]() -> analysis::DescriptionSystem {
        if (system == "constant") return analysis::constant_system();
        if (system == "identity") return analysis::identity_system();
        if (system == "duplicate-splice") return analysis::duplicate_splice_system(S, index_bits);
        if (system == "zero-collision") return analysis::zero_collision_system(S, index_bits);
        if (system == "trace") return analysis::trace_system({k, n, S, {}});
        if (system == "initial-pebble") return analysis::initial_pebble_system({k, n, S, {}});
        throw CLI::ValidationError("analyze incompressible", "unknown --system " + system);
    }();
    std::string witness = analysis::find_incompressible(sys, ell);
    report::Table t({"system", "ell", "witness"});
    t.add({sys.name, cell(ell), witness});
    emit(t, out);
    return 0;
}

int run_euler(const MachineSource& src, unsigned width_cap, uint64_t step_cap, bool audit,
              const std::string& machine_out, const std::string& out) {
    euler::ExplicitMachine m = src.build();
    if (!machine_out.empty()) euler::save_machine(machine_out, m);
    unsigned cap = width_cap ? width_cap : m.width;
    if (audit) {
        euler::TourAudit a = euler::tour_audit(m, cap, step_cap);
        report::Table t({"width", "initial", "width_cap", "outcome", "tour_steps",
                         "distinct_states", "peak_state_bits", "reverse_ok"});
        const char* outc = a.result.outcome == euler::TourOutcome::Found        ? "found"
                           : a.result.outcome == euler::TourOutcome::NotFound   ? "not-found"
                                                                                : "step-cap";
        t.add({cell(m.width), to_hex(m.initial, m.width), cell(cap), outc, cell(a.result.steps),
               cell(a.distinct_states), cell(a.peak_state_bits), cell(a.reverse_ok)});
        emit(t, out);
        if (a.result.outcome == euler::TourOutcome::StepCapExceeded) return 2;
        return a.reverse_ok ? 0 : 1;
    }
    euler::TourResult r = euler::euler_tour(m, cap, step_cap);
    report::Table t({"width", "initial", "width_cap", "outcome", "halting", "steps"});
    const char* outc = r.outcome == euler::TourOutcome::Found        ? "found"
                       : r.outcome == euler::TourOutcome::NotFound   ? "not-found"
                                                                     : "step-cap";
    t.add({cell(m.width), to_hex(m.initial, m.width), cell(cap), outc,
           r.halting ? to_hex(*r.halting, m.width) : "-", cell(r.steps)});
    emit(t, out);
    if (r.outcome == euler::TourOutcome::Found) return 0;
    if (r.outcome == euler::TourOutcome::NotFound) return 1;
    return 2;
}

int run_report_sweep(const std::string& out) {
    report::Table t({"k", "n", "target", "moves", "formula_moves", "max_pebbles",
                     "pebble_bound", "first_reach_time"});
    for (int k = 2; k <= 4; ++k)
        for (int n = 0; n <= 4; ++n) {
            pebble::Schedule s = pebble::bennett_schedule(k, n);
            pebble::Metrics m = pebble::schedule_metrics(s);
            uint64_t formula = 1;
            for (int e = 0; e < n; ++e) formula *= uint64_t(2 * k - 1);
            t.add({cell(k), cell(n), cell(s.target()), cell(m.total_moves), cell(formula),
                   cell(m.max_pebbles), cell(uint64_t(n) * (k - 1) + 1),
                   cell(m.first_reach_time.value_or(0))});
        }
    emit(t, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reversible-simulation laboratory"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file with option defaults");

    std::function<int()> action;
    std::string out, chain_path, trace_path, rom_path, desc_path, rom_out, dir = "forward",
                                                                          trace_out, system;
    int k = 2, n = 1, t_nodes = 1, budget = 0;
    unsigned width = 8, S = 8, index_bits = 8, ell = 6, width_cap = 0;
    uint64_t seed = 1, init = 0, seg_len = 1, t_len = 2, T = 0, tau = 0, steps = 0,
             step_cap = 1u << 22;
    unsigned trials = 1;
    bool list_moves = false;
    MachineSource machine_src;

    CLI::App* peb = app.add_subcommand("pebble", "space-saving move schedules");
    peb->require_subcommand(1);
    CLI::App* pb = peb->add_subcommand("bennett", "recursive checkpointing schedule");
    pb->add_option("--k", k, "segments per level")->check(CLI::Range(2, 16));
    pb->add_option("--n", n, "recursion depth")->check(CLI::Range(0, 20));
    pb->add_option("--out", out, "write CSV here instead of stdout");
    pb->add_flag("--moves", list_moves, "list the moves instead of the summary row");
    pb->callback([&] { action = [&] { return run_pebble_bennett(k, n, out, list_moves); }; });

    CLI::App* ps = peb->add_subcommand("search", "exhaustive minimum-pebble search");
    ps->add_option("--t", t_nodes, "chain length")->required()->check(CLI::Range(1, 20));
    ps->add_option("--budget", budget, "pebble budget limit (default t)");
    ps->add_option("--out", out, "write CSV here instead of stdout");
    ps->callback([&] { action = [&] { return run_pebble_search(t_nodes, budget, out); }; });

    CLI::App* sim = app.add_subcommand("sim", "checkpointed simulation of seeded machines");
    sim->require_subcommand(1);
    for (const char* name : {"bennett", "audit"}) {
        CLI::App* c = sim->add_subcommand(
            name, std::string(name) == "bennett" ? "run and compare against the direct run"
                                                 : "run, then replay backward and compare");
        c->add_option("--width", width, "machine configuration bits")->check(CLI::Range(1, 32));
        c->add_option("--seed", seed, "machine seed (trial i uses seed+i)");
        c->add_option("--init", init, "start configuration");
        c->add_option("--k", k, "segments per level")->check(CLI::Range(2, 16));
        c->add_option("--n", n, "recursion depth")->check(CLI::Range(0, 12));
        c->add_option("--seg-len", seg_len, "machine steps per base segment")
            ->check(CLI::Range(uint64_t(1), uint64_t(1) << 20));
        c->add_option("--trials", trials, "independent seeded trials");
        c->add_option("--out", out, "write CSV here instead of stdout");
    }
    sim->get_subcommand("bennett")->callback([&] {
        action = [&] { return run_sim_bennett(width, seed, init, k, n, seg_len, trials, out); };
    });
    sim->get_subcommand("audit")->callback([&] {
        action = [&] { return run_sim_audit(width, seed, init, k, n, seg_len, trials, out); };
    });

    CLI::App* orc = app.add_subcommand("oracle", "hidden-chain oracles and their deciders");
    orc->require_subcommand(1);
    CLI::App* ob = orc->add_subcommand("build", "sample a chain and write it out");
    ob->add_option("--s", S, "node width in bits")->check(CLI::Range(1u, 64u));
    ob->add_option("--t", t_len, "chain length");
    ob->add_option("--seed", seed, "sampling seed");
    ob->add_option("--out", out, "chain file (required)");
    ob->add_option("--rom-out", rom_out, "also write the matching input table");
    ob->callback([&] { action = [&] { return run_oracle_build(S, t_len, seed, out, rom_out); }; });

    CLI::App* os = orc->add_subcommand("separator", "pointer-chase decider over the oracle");
    os->add_option("--chain", chain_path, "chain file (else --s/--t/--seed sample one)");
    os->add_option("--s", S, "node width when sampling")->check(CLI::Range(1u, 64u));
    os->add_option("--t", t_len, "chain length when sampling");
    os->add_option("--seed", seed, "sampling seed");
    os->add_option("--time-bound", T, "work budget T; decider makes 2*floor(T/S) calls");
    os->add_option("--out", out, "write CSV here instead of stdout");
    os->callback([&] {
        action = [&] { return run_oracle_separator(chain_path, S, t_len, seed, T, out); };
    });

    CLI::App* orm = orc->add_subcommand("rom", "input-table view and its iterated-lookup bit");
    orm->add_option("--rom", rom_path, "input table file");
    orm->add_option("--chain", chain_path, "chain file to encode");
    orm->add_option("--s", S, "node width when sampling")->check(CLI::Range(1u, 16u));
    orm->add_option("--t", t_len, "chain length when sampling");
    orm->add_option("--seed", seed, "sampling seed");
    orm->add_option("--steps", steps, "lookup iterations (default: chain length)");
    orm->add_option("--rom-out", rom_out, "write the input table here");
    orm->add_option("--out", out, "write CSV here instead of stdout");
    orm->callback([&] {
        action = [&] {
            return run_oracle_rom(chain_path, rom_path, S, t_len, seed, steps, rom_out, out);
        };
    });

    CLI::App* an = app.add_subcommand("analyze", "read strategies and sizes off query logs");
    an->require_subcommand(1);
    CLI::App* ap = an->add_subcommand("pebbles", "derive the move schedule a run performed");
    ap->add_option("--chain", chain_path, "chain file")->required();
    ap->add_option("--trace", trace_path, "query log (else rerun from --k/--n)");
    ap->add_option("--k", k, "segments per level");
    ap->add_option("--n", n, "recursion depth");
    ap->add_option("--trace-out", trace_out, "save the rerun's query log");
    ap->add_option("--out", out, "write CSV here instead of stdout");
    ap->callback([&] {
        action = [&] {
            return run_analyze_pebbles(chain_path, trace_path, k, n, trace_out, out);
        };
    });

    CLI::App* ac = an->add_subcommand("compress", "describe a run without its held nodes");
    ac->add_option("--chain", chain_path, "chain file")->required();
    ac->add_option("--k", k, "segments per level");
    ac->add_option("--n", n, "recursion depth");
    ac->add_option("--tau", tau, "snapshot time (micro-op count)");
    ac->add_option("--dir", dir, "forward|backward|auto");
    ac->add_option("--desc-out", desc_path, "write the description here");
    ac->add_option("--out", out, "write the size breakdown CSV here");
    ac->callback([&] {
        action = [&] { return run_analyze_compress(chain_path, k, n, tau, dir, desc_path, out); };
    });

    CLI::App* ad = an->add_subcommand("decompress", "rebuild the hidden string from a description");
    ad->add_option("--desc", desc_path, "description file")->required();
    ad->add_option("--k", k, "segments per level");
    ad->add_option("--n", n, "recursion depth");
    ad->add_option("--s", S, "node width in bits");
    ad->add_option("--chain", chain_path, "verify against this chain file");
    ad->callback([&] {
        action = [&] { return run_analyze_decompress(desc_path, k, n, S, chain_path); };
    });

    CLI::App* ai = an->add_subcommand("incompressible", "first string no short input describes");
    ai->add_option("--system", system, "constant|identity|duplicate-splice|zero-collision|trace|initial-pebble")
        ->required();
    ai->add_option("--s", S, "node width for splice systems")->check(CLI::Range(1u, 16u));
    ai->add_option("--index-bits", index_bits, "index field width for splice systems")
        ->check(CLI::Range(1u, 16u));
    ai->add_option("--ell", ell, "target string length")->check(CLI::Range(1u, 20u));
    ai->add_option("--k", k, "segments per level (trace systems)");
    ai->add_option("--n", n, "recursion depth (trace systems)");
    ai->add_option("--out", out, "write CSV here instead of stdout");
    ai->callback([&] {
        action = [&] {
            return run_analyze_incompressible(system, S, index_bits, ell, k, n, out);
        };
    });

    CLI::App* eu = app.add_subcommand("euler", "edge-rotation walk of a configuration graph");
    eu->require_subcommand(1);
    CLI::App* er = eu->add_subcommand("run", "walk until a halting configuration or closure");
    CLI::App* ea = eu->add_subcommand("audit", "walk everything, check the step map inverts");
    for (CLI::App* c : {er, ea}) {
        machine_src.add_flags(c);
        c->add_option("--width-cap", width_cap, "prune configurations wider than this");
        c->add_option("--step-cap", step_cap, "walk budget");
        c->add_option("--machine-out", trace_out, "write the successor table here");
        c->add_option("--out", out, "write CSV here instead of stdout");
    }
    er->callback([&] {
        action = [&] { return run_euler(machine_src, width_cap, step_cap, false, trace_out, out); };
    });
    ea->callback([&] {
        action = [&] { return run_euler(machine_src, width_cap, step_cap, true, trace_out, out); };
    });

    CLI::App* rep = app.add_subcommand("report", "canned experiment sweeps");
    rep->require_subcommand(1);
    CLI::App* rs = rep->add_subcommand("sweep", "schedule size table over k=2..4, n=0..4");
    rs->add_option("--out", out, "write CSV here instead of stdout");
    rs->callback([&] { action = [&] { return run_report_sweep(out); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (!action) {
        std::cerr << "error: no runnable subcommand selected\n";
        return 2;
    }
    try {
        return action();
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
