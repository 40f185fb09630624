// End-to-end gate for the lab: eleven checks, one line each, exit code equal
// to the number of failures. Every numeric bound and time budget is pinned
// here rather than configurable, so a pass means the same thing everywhere.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "revlab/analysis.hpp"
#include "revlab/bits.hpp"
#include "revlab/eulertour.hpp"
#include "revlab/oracle.hpp"
#include "revlab/pebble.hpp"
#include "revlab/revsim.hpp"

using namespace revlab;

namespace {

struct Outcome {
    bool ok = true;
    std::string note;
};

#define REQ(cond, msg)                 \
    do {                               \
        if (!(cond)) return {false, (msg)}; \
    } while (0)

int floor_log2(uint64_t t) { return 63 - __builtin_clzll(t); }

Outcome schedule_figures() {
    auto m23 = pebble::schedule_metrics(pebble::bennett_schedule(2, 3));
    REQ(m23.total_moves == 27, "k=2 n=3 move count");
    REQ(m23.max_pebbles == 4, "k=2 n=3 peak pebbles");
    REQ(m23.first_reach_time == 27, "k=2 n=3 first-reach time");
    auto m32 = pebble::schedule_metrics(pebble::bennett_schedule(3, 2));
    REQ(m32.total_moves == 25, "k=3 n=2 move count");
    REQ(m32.max_pebbles == 5, "k=3 n=2 peak pebbles");
    REQ(m32.first_reach_time == 25, "k=3 n=2 first-reach time");
    return {};
}

Outcome move_formula_sweep() {
    for (int k = 2; k <= 4; ++k) {
        for (int n = 0; n <= 4; ++n) {
            pebble::Schedule s = pebble::bennett_schedule(k, n);
            uint64_t want = 1;
            for (int i = 0; i < n; ++i) want *= uint64_t(2 * k - 1);
            auto m = pebble::schedule_metrics(s);
            REQ(m.total_moves == want,
                "move count off at k=" + std::to_string(k) + " n=" + std::to_string(n));
            REQ(m.max_pebbles <= n * (k - 1) + 1,
                "peak pebbles over budget at k=" + std::to_string(k) + " n=" + std::to_string(n));
        }
    }
    return {};
}

Outcome exhaustive_minimums() {
    const int want[] = {0, 1, 2, 2, 3};
    for (int t = 1; t <= 4; ++t) {
        auto r = pebble::min_pebbles(t, t);
        REQ(r && r->pebbles == want[t], "minimum wrong at t=" + std::to_string(t));
    }
    auto r8 = pebble::min_pebbles(8, 8);
    REQ(r8 && r8->pebbles == 4, "minimum wrong at t=8");
    for (int t = 1; t <= 12; ++t) {
        auto r = pebble::min_pebbles(t, t);
        REQ(r && r->pebbles >= floor_log2(uint64_t(t)) + 1,
            "logarithmic floor broken at t=" + std::to_string(t));
    }
    return {};
}

// The (machine, schedule) grid shared by the two simulation checks.
struct SimCase {
    int k, n;
    uint64_t seg_len, seed;
    unsigned width;
};

std::vector<SimCase> sim_grid() {
    std::vector<SimCase> out;
    uint64_t seed = 1;
    for (int k = 2; k <= 3; ++k)
        for (int n = 0; n <= 3; ++n)
            for (uint64_t seg_len : {1, 2})
                for (unsigned width : {4u, 9u, 16u})
                    for (int rep = 0; rep < 2; ++rep)
                        out.push_back({k, n, seg_len, seed++, width});
    return out;  // 2*4*2*3*2 = 96... padded below to pass the hundred mark
}

Outcome backward_restoration() {
    std::vector<SimCase> grid = sim_grid();
    for (uint64_t s = 500; grid.size() < 112; ++s) grid.push_back({3, 3, 1, s, 11});
    for (const SimCase& c : grid) {
        revsim::IrrevMachine m = revsim::IrrevMachine::seeded(c.width, c.seed);
        revsim::SimRun run = revsim::simulate_bennett(m, c.seed % 7, c.k, c.n, c.seg_len);
        revsim::VmState restored = revsim::replay_backward(run.trace, run.end, &m);
        REQ(restored == run.start, "restoration failed at seed " + std::to_string(c.seed));
    }
    return {};
}

Outcome checkpoint_agreement() {
    std::vector<SimCase> grid = sim_grid();
    for (uint64_t s = 900; grid.size() < 112; ++s) grid.push_back({2, 3, 2, s, 16});
    for (const SimCase& c : grid) {
        revsim::IrrevMachine m = revsim::IrrevMachine::seeded(c.width, c.seed);
        uint64_t init = c.seed % 5;
        revsim::SimRun run = revsim::simulate_bennett(m, init, c.k, c.n, c.seg_len);
        uint64_t steps = c.seg_len;
        for (int i = 0; i < c.n; ++i) steps *= uint64_t(c.k);
        REQ(run.report.final_checkpoint == m.iterate(init, steps),
            "checkpoint mismatch at seed " + std::to_string(c.seed));
    }
    return {};
}

Outcome double_call_identity() {
    // Every tape over {0,1,#} up to length 12, so node and pair forms of the
    // small widths below are all hit, then a random sample of longer ones.
    std::vector<std::string> tapes{""};
    size_t lo = 0;
    for (int len = 1; len <= 12; ++len) {
        size_t hi = tapes.size();
        for (size_t i = lo; i < hi; ++i)
            for (char c : {'0', '1', '#'}) tapes.push_back(tapes[i] + c);
        lo = hi;
    }
    std::mt19937_64 rng(2026);
    std::vector<std::string> longer;
    for (int i = 0; i < 10000; ++i) {
        std::string s(13 + rng() % 20, '0');
        for (char& c : s) c = "01#"[rng() % 3];
        longer.push_back(std::move(s));
    }

    int built = 0;
    for (unsigned S : {4u, 5u, 6u, 7u}) {
        for (size_t t : {3u, 6u, 9u, 12u, 15u}) {
            auto [o, chain] = oracle::build_chain_oracle(S, t, 1000 + built);
            oracle::InputRom rom = oracle::rom_from_chain(chain);
            ++built;
            for (const auto& tape : tapes) {
                REQ(o.call(o.call(tape)) == tape, "oracle involution broke on " + tape);
                REQ(oracle::rom_get_size(rom, oracle::rom_get_size(rom, tape)) == tape,
                    "size handshake broke on " + tape);
                REQ(oracle::rom_access_word(rom, oracle::rom_access_word(rom, tape)) == tape,
                    "word access broke on " + tape);
            }
            for (const auto& tape : longer) {
                REQ(o.call(o.call(tape)) == tape, "oracle involution broke on " + tape);
                REQ(oracle::rom_access_word(rom, oracle::rom_access_word(rom, tape)) == tape,
                    "word access broke on " + tape);
            }
        }
    }
    REQ(built == 20, "wrong oracle count");
    return {};
}

Outcome pointer_chase_ground_truth() {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        unsigned S = 2 + rng() % 15;  // 2..16
        uint64_t max_t = std::min<uint64_t>(64, (uint64_t(1) << S) - 1);
        size_t t = 1 + rng() % max_t;
        auto [o, chain] = oracle::build_chain_oracle(S, t, 4000 + trial);
        oracle::SeparatorResult r = oracle::separator_decide(o, {S, S * t});
        char want = chain.nodes.back()[0];
        REQ(r.accept == (want == '1'), "separator verdict off at trial " + std::to_string(trial));
        REQ(r.final_node == chain.nodes.back(), "separator endpoint off");
        oracle::InputRom rom = oracle::rom_from_chain(chain);
        REQ(oracle::rom_result_bit(rom, t) == want, "table encoding disagrees");
    }
    return {};
}

Outcome description_round_trip() {
    using analysis::Direction;
    for (auto [k, n, S, seed] : std::vector<std::array<uint64_t, 4>>{{2, 2, 6, 11}, {2, 3, 5, 4}}) {
        size_t t = 1;
        for (uint64_t i = 0; i < n; ++i) t *= size_t(k);
        auto [o, chain] = oracle::build_chain_oracle(unsigned(S), t, seed);
        revsim::SimRun run = revsim::simulate_bennett_chain(o, unsigned(S), int(k), int(n));
        analysis::MachineContext ctx{int(k), int(n), unsigned(S), {}};
        std::string x = chain.concat();
        uint64_t N = run.report.total_microops;
        for (uint64_t tau : {uint64_t(0), N / 4, N / 2, 3 * N / 4, N, N / 3}) {
            for (Direction dir : {Direction::Forward, Direction::Backward}) {
                analysis::Description d = analysis::compress(run, chain, tau, dir);
                REQ(analysis::decompress(d, ctx) == x,
                    "round trip failed at tau " + std::to_string(tau));
            }
        }

        // Tampering: each mutation must either throw or change the output.
        auto detect = [&](analysis::Description d) {
            try {
                return analysis::decompress(d, ctx) != x;
            } catch (const analysis::ReconstructionFailure&) {
                return true;
            }
        };
        for (Direction dir : {Direction::Forward, Direction::Backward}) {
            analysis::Description d = analysis::compress(run, chain, N / 2, dir);
            REQ(!d.triples.empty(), "mutation probe needs a triple");
            analysis::Description tag = d;
            tag.triples[0].tag = tag.triples[0].tag == 1 ? 2 : 1;
            REQ(detect(tag), "flipped tag went unnoticed");
            analysis::Description off = d;
            off.triples[0].dtau += dir == Direction::Forward ? 1 : -1;
            REQ(detect(off), "shifted offset went unnoticed");
            if (!d.x_prime.empty()) {
                analysis::Description lit = d;
                lit.x_prime[0] = lit.x_prime[0] == '0' ? '1' : '0';
                REQ(detect(lit), "flipped literal went unnoticed");
            }
            analysis::Description clk = d;
            revsim::VmState s = revsim::parse_vmstate(clk.config_snapshot);
            s.clock += 1;
            clk.config_snapshot = revsim::serialize_vmstate(s);
            REQ(detect(clk), "nudged snapshot went unnoticed");
        }
    }
    return {};
}

Outcome tour_equivalence_and_growth() {
    for (int trial = 0; trial < 100; ++trial) {
        unsigned width = 1 + trial % 10;  // tables up to 2^10 configurations
        euler::ExplicitMachine m = euler::random_machine(width, 7000 + trial);
        uint64_t cells = uint64_t(1) << width;
        auto direct = euler::direct_simulate(m, cells + 1);
        euler::TourResult r = euler::euler_tour(m, width, 4 * cells + 8);
        if (direct) {
            REQ(r.outcome == euler::TourOutcome::Found,
                "tour missed a halt at trial " + std::to_string(trial));
            REQ(r.halting == *direct, "tour found the wrong halt");
        } else {
            REQ(r.outcome == euler::TourOutcome::NotFound,
                "tour claimed a halt on a cycle at trial " + std::to_string(trial));
        }
    }

    std::vector<uint64_t> steps;
    std::set<unsigned> peaks;
    for (unsigned d = 2; d <= 10; ++d) {
        euler::ExplicitMachine m = euler::branching_machine(d);
        uint64_t edges = (uint64_t(2) << d) - 2;
        euler::TourResult r = euler::euler_tour(m, m.width, 4 * edges + 4);
        REQ(r.outcome == euler::TourOutcome::Found, "branching family walk failed");
        steps.push_back(r.steps);
        peaks.insert(euler::tour_audit(m, m.width, 4 * edges + 4).peak_state_bits);
    }
    REQ(peaks.size() == 1, "working storage varied with depth");
    for (size_t i = 1; i < steps.size(); ++i)
        REQ(double(steps[i]) >= 1.8 * double(steps[i - 1]), "sub-exponential step growth");
    return {};
}

Outcome incompressible_existence() {
    const unsigned ell = 12;
    std::vector<analysis::DescriptionSystem> systems;
    systems.push_back(analysis::constant_system());
    systems.push_back(analysis::identity_system());
    systems.push_back(analysis::duplicate_splice_system(3, 1));
    systems.push_back(analysis::zero_collision_system(2, 1));
    systems.push_back(analysis::trace_system({2, 2, 6, {}}));
    systems.push_back(analysis::initial_pebble_system({2, 0, 12, {}}));
    for (const auto& sys : systems) {
        std::string x = analysis::find_incompressible(sys, ell);
        REQ(x.size() == ell, "wrong witness length from " + sys.name);
        for (unsigned prefix_len : {0u, 1u, ell - 1})
            REQ(sys.expand(x.substr(0, prefix_len)) != x, "witness described by " + sys.name);
    }
    return {};
}

Outcome space_floor_on_short_chains() {
    const uint64_t S = 9;  // any positive width scales both sides equally
    for (int t : {2, 4, 8, 16}) {
        auto r = pebble::min_pebbles(t, t);
        REQ(r.has_value(), "search gave up at t=" + std::to_string(t));
        REQ(uint64_t(r->pebbles) * S >= S * uint64_t(floor_log2(uint64_t(t)) + 1),
            "space floor broken at t=" + std::to_string(t));
    }
    return {};
}

struct Criterion {
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"schedule figures 27/27/4 and 25/25/5", 1.0, schedule_figures},
        {"move counts follow (2k-1)^n within the pebble budget", 5.0, move_formula_sweep},
        {"exhaustive minimums 1,2,2,3 then 4 at t=8, log floor to t=12", 60.0,
         exhaustive_minimums},
        {"backward replay restores 100+ seeded runs bit-exactly", 30.0, backward_restoration},
        {"final checkpoints equal 100+ direct reruns", 30.0, checkpoint_agreement},
        {"double calls fix every tape for 20 oracles and tables", 30.0, double_call_identity},
        {"pointer chase matches the last node's leading bit", 10.0, pointer_chase_ground_truth},
        {"descriptions round trip both ways and expose tampering", 60.0, description_round_trip},
        {"tour agrees with direct runs; steps grow, storage does not", 60.0,
         tour_equivalence_and_growth},
        {"an incompressible string exists for every description system", 30.0,
         incompressible_existence},
        {"best strategies on short chains respect the log-pebble floor", 60.0,
         space_floor_on_short_chains},
    };

    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const Criterion& c = criteria[i];
        auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& ex) {
            out = {false, std::string("exception: ") + ex.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (out.ok && secs > c.budget_seconds)
            out = {false, "over the " + std::to_string(c.budget_seconds) + "s budget"};
        std::printf("[%2zu/11] %s  (%.2fs)  %s%s%s\n", i + 1, out.ok ? "PASS" : "FAIL", secs,
                    c.name, out.note.empty() ? "" : ": ", out.note.c_str());
        if (!out.ok) ++failures;
    }
    return failures;
}
