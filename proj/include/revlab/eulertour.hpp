#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Space-frugal search over an irreversible machine's configuration graph.
// Because each configuration has at most one successor, its component is a
// tree (possibly hanging off a single cycle), and a right-hand-rule walk that
// rotates through the incident edges visits the whole component while keeping
// only the current configuration and one slot counter. The walk is a
// bijection on (configuration, arrival slot) pairs, so it runs equally well
// in reverse, which is the point.

namespace revlab::euler {

struct BijectivityViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A finite machine given as an explicit successor table over configurations
// encoded as unsigned values of at most `width` bits. Configurations missing
// from the table are halting. A configuration's size, for pruning purposes,
// is the length of its minimal binary form, so leading zeros are free.
struct ExplicitMachine {
    unsigned width = 0;
    uint64_t initial = 0;
    std::map<uint64_t, uint64_t> succ;

    bool halting(uint64_t c) const { return !succ.count(c); }
};

// All c' with succ(c') == c, in ascending order. Ignores any width cap; the
// tour filters oversize entries itself.
std::vector<uint64_t> predecessors(const ExplicitMachine& m, uint64_t c);

// One dart of the walk: we are at `config`, having arrived along the edge in
// incident slot `slot`. Slots list the in-cap predecessors in ascending
// order, then the successor edge last.
struct TourState {
    uint64_t config = 0;
    uint32_t slot = 0;
    bool operator==(const TourState&) const = default;
    bool operator<(const TourState& o) const {
        return config != o.config ? config < o.config : slot < o.slot;
    }
};

enum class TourOutcome : uint8_t { Found, NotFound, StepCapExceeded };

struct TourResult {
    TourOutcome outcome = TourOutcome::NotFound;
    std::optional<uint64_t> halting;  // set when outcome == Found
    uint64_t steps = 0;               // edge traversals performed before stopping
};

// Walks the component of m.initial, skipping edges whose far end is wider
// than width_cap, and reports the first halting configuration reached. A
// walk that returns to its starting dart without meeting one is NotFound;
// running out of step budget first is reported separately.
TourResult euler_tour(const ExplicitMachine& m, unsigned width_cap, uint64_t step_cap);

struct TourAudit {
    TourResult result;
    uint64_t distinct_states = 0;
    unsigned peak_state_bits = 0;  // widest (config bits + slot bits) the walker held
    bool reverse_ok = false;       // reverse replay reproduced the recorded walk
};

// Runs the full tour (not stopping at halting configurations), records every
// dart, and checks the walk is a bijection: no dart repeats before the walk
// closes, and stepping the inverse map along the record reproduces it.
TourAudit tour_audit(const ExplicitMachine& m, unsigned width_cap, uint64_t step_cap);

// Plain forward simulation by table lookup, for cross-checking the tour.
std::optional<uint64_t> direct_simulate(const ExplicitMachine& m, uint64_t step_cap);

// Complete binary in-tree of the given depth: every internal configuration
// has two predecessors, the root halts, and the start is the leftmost leaf.
// All configurations share one bit width so the walker's footprint cannot
// vary with depth. Depth 1..10.
ExplicitMachine branching_machine(unsigned depth);

// Random successor table over all `width`-bit values; roughly one in eight
// configurations halts. Width 1..10.
ExplicitMachine random_machine(unsigned width, uint64_t seed);

// Table file: `width=<bits>` header, then `<hex> -> <hex>` per edge. The
// start configuration is not part of the format; callers supply it.
void save_machine(const std::string& path, const ExplicitMachine& m);
ExplicitMachine load_machine(const std::string& path);

}  // namespace revlab::euler
