#include "revlab/eulertour.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <random>
#include <set>

#include "revlab/bits.hpp"
#include "revlab/oracle.hpp"

namespace revlab::euler {

std::vector<uint64_t> predecessors(const ExplicitMachine& m, uint64_t c) {
    std::vector<uint64_t> out;
    for (const auto& [src, dst] : m.succ)
        if (dst == c) out.push_back(src);
    return out;
}

namespace {

// The induced graph: only edges with both endpoints at most `cap` bits wide.
struct Walker {
    const ExplicitMachine& m;
    unsigned cap;

    bool fits(uint64_t c) const { return unsigned(std::bit_width(c)) <= cap; }

    std::vector<uint64_t> preds(uint64_t c) const {
        std::vector<uint64_t> out;
        for (const auto& [src, dst] : m.succ)
            if (dst == c && fits(src)) out.push_back(src);
        return out;
    }

    std::optional<uint64_t> succ(uint64_t c) const {
        auto it = m.succ.find(c);
        if (it == m.succ.end() || !fits(it->second)) return std::nullopt;
        return it->second;
    }

    uint32_t degree(uint64_t c) const {
        return uint32_t(preds(c).size()) + (succ(c) ? 1 : 0);
    }

    uint32_t pred_index(uint64_t c, uint64_t p) const {
        std::vector<uint64_t> ps = preds(c);
        auto it = std::lower_bound(ps.begin(), ps.end(), p);
        if (it == ps.end() || *it != p)
            throw BijectivityViolation("edge endpoint is not a predecessor of its target");
        return uint32_t(it - ps.begin());
    }

    // Rotate one slot past the arrival edge and traverse it. An edge taken
    // toward a predecessor is that node's successor edge, so we arrive on
    // its last slot; an edge taken toward the successor lands on whichever
    // predecessor slot we occupy over there.
    TourState step(const TourState& s) const {
        std::vector<uint64_t> ps = preds(s.config);
        uint32_t deg = uint32_t(ps.size()) + (succ(s.config) ? 1 : 0);
        uint32_t j = (s.slot + 1) % deg;
        if (j < ps.size()) return {ps[j], uint32_t(preds(ps[j]).size())};
        uint64_t d = *succ(s.config);
        return {d, pred_index(d, s.config)};
    }

    TourState unstep(const TourState& s) const {
        std::vector<uint64_t> ps = preds(s.config);
        uint64_t c;
        uint32_t j;
        if (s.slot < ps.size()) {
            c = ps[s.slot];
            j = uint32_t(preds(c).size());
        } else {
            auto sc = succ(s.config);
            if (!sc) throw BijectivityViolation("arrival slot beyond the node's degree");
            c = *sc;
            j = pred_index(c, s.config);
        }
        uint32_t deg = degree(c);
        return {c, (j + deg - 1) % deg};
    }
};

unsigned state_bits(const TourState& s) {
    return unsigned(std::bit_width(s.config)) + unsigned(std::bit_width(uint64_t(s.slot) + 1));
}

}  // namespace

TourResult euler_tour(const ExplicitMachine& m, unsigned width_cap, uint64_t step_cap) {
    if (width_cap == 0 || step_cap == 0)
        throw std::invalid_argument("width and step caps must be positive");
    if (m.halting(m.initial)) return {TourOutcome::Found, m.initial, 0};
    Walker w{m, width_cap};
    if (!w.fits(m.initial) || w.degree(m.initial) == 0) return {TourOutcome::NotFound, {}, 0};

    TourState start{m.initial, w.degree(m.initial) - 1};
    TourState st = start;
    for (uint64_t steps = 1; steps <= step_cap; ++steps) {
        st = w.step(st);
        if (m.halting(st.config)) return {TourOutcome::Found, st.config, steps};
        if (st == start) return {TourOutcome::NotFound, {}, steps};
    }
    return {TourOutcome::StepCapExceeded, {}, step_cap};
}

TourAudit tour_audit(const ExplicitMachine& m, unsigned width_cap, uint64_t step_cap) {
    if (width_cap == 0 || step_cap == 0)
        throw std::invalid_argument("width and step caps must be positive");
    Walker w{m, width_cap};
    TourAudit a;
    if (!w.fits(m.initial) || w.degree(m.initial) == 0) {
        a.result.outcome = m.halting(m.initial) ? TourOutcome::Found : TourOutcome::NotFound;
        if (a.result.outcome == TourOutcome::Found) a.result.halting = m.initial;
        a.reverse_ok = true;
        return a;
    }

    std::vector<TourState> walk{{m.initial, w.degree(m.initial) - 1}};
    a.result.outcome = TourOutcome::StepCapExceeded;
    for (uint64_t steps = 1; steps <= step_cap; ++steps) {
        walk.push_back(w.step(walk.back()));
        if (walk.back() == walk.front()) {
            a.result.outcome = TourOutcome::NotFound;
            a.result.steps = steps;
            break;
        }
    }
    if (a.result.outcome == TourOutcome::StepCapExceeded) a.result.steps = step_cap;

    std::set<TourState> seen;
    size_t unique_len =
        a.result.outcome == TourOutcome::NotFound ? walk.size() - 1 : walk.size();
    for (size_t i = 0; i < unique_len; ++i)
        if (!seen.insert(walk[i]).second)
            throw BijectivityViolation("dart visited twice before the walk closed");
    a.distinct_states = seen.size();
    for (const TourState& s : walk) {
        a.peak_state_bits = std::max(a.peak_state_bits, state_bits(s));
        if (m.halting(s.config) && !a.result.halting) {
            a.result.halting = s.config;
            if (a.result.outcome != TourOutcome::StepCapExceeded)
                a.result.outcome = TourOutcome::Found;
        }
    }
    for (size_t i = walk.size(); i-- > 1;)
        if (w.unstep(walk[i]) != walk[i - 1])
            throw BijectivityViolation("inverse step disagrees with the recorded walk");
    a.reverse_ok = true;
    return a;
}

std::optional<uint64_t> direct_simulate(const ExplicitMachine& m, uint64_t step_cap) {
    uint64_t c = m.initial;
    for (uint64_t i = 0; i <= step_cap; ++i) {
        auto it = m.succ.find(c);
        if (it == m.succ.end()) return c;
        c = it->second;
    }
    return std::nullopt;
}

ExplicitMachine branching_machine(unsigned depth) {
    if (depth < 1 || depth > 10) throw std::invalid_argument("depth must be 1..10");
    ExplicitMachine m;
    m.width = 12;
    const uint64_t tag = uint64_t(1) << 11;
    for (uint64_t i = 2; i < (uint64_t(2) << depth); ++i) m.succ[tag | i] = tag | (i >> 1);
    m.initial = tag | (uint64_t(1) << depth);
    return m;
}

ExplicitMachine random_machine(unsigned width, uint64_t seed) {
    if (width < 1 || width > 10) throw std::invalid_argument("width must be 1..10");
    ExplicitMachine m;
    m.width = width;
    std::mt19937_64 rng(splitmix64(seed));
    const uint64_t n = uint64_t(1) << width;
    for (uint64_t c = 0; c < n; ++c) {
        if (rng() % 8 == 0) continue;
        m.succ[c] = rng() % n;
    }
    m.initial = rng() % n;
    return m;
}

void save_machine(const std::string& path, const ExplicitMachine& m) {
    std::ofstream out(path);
    if (!out) throw oracle::IoError("cannot write " + path);
    out << "width=" << m.width << "\n";
    for (const auto& [src, dst] : m.succ)
        out << to_hex(src, m.width) << " -> " << to_hex(dst, m.width) << "\n";
    if (!out) throw oracle::IoError("short write to " + path);
}

ExplicitMachine load_machine(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw oracle::IoError("cannot read " + path);
    ExplicitMachine m;
    std::string line;
    if (!std::getline(in, line) || sscanf(line.c_str(), "width=%u", &m.width) != 1 ||
        m.width < 1 || m.width > 63)
        throw oracle::IoError("bad machine header in " + path);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        size_t arrow = line.find(" -> ");
        if (arrow == std::string::npos) throw oracle::IoError("bad edge line: " + line);
        uint64_t src = from_hex(line.substr(0, arrow));
        uint64_t dst = from_hex(line.substr(arrow + 4));
        if (src > width_mask(m.width) || dst > width_mask(m.width))
            throw oracle::IoError("configuration wider than the header width: " + line);
        if (!m.succ.emplace(src, dst).second)
            throw oracle::IoError("duplicate source configuration: " + line);
    }
    return m;
}

}  // namespace revlab::euler
