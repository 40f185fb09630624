#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

// Reversible pebble game on a line of nodes 1..t. A pebble may be toggled on
// node 1 at any time, and on node j > 1 only while node j-1 carries a pebble.

namespace revlab::pebble {

struct IllegalMove : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Overflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BudgetTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class MoveKind : uint8_t { Pebble, Unpebble };

struct Move {
    int node = 0;
    MoveKind kind = MoveKind::Pebble;
    bool operator==(const Move&) const = default;
};

struct PebbleState {
    int chain_length = 0;
    std::set<int> pebbled;
    bool operator==(const PebbleState&) const = default;
};

// Checkpoint-and-recompute schedule for reaching node k^n. moves is the full
// move list including the cleanup of intermediate pebbles.
struct Schedule {
    int k = 2;
    int n = 0;
    std::vector<Move> moves;
    int64_t target() const;
};

struct Metrics {
    uint64_t total_moves = 0;
    int max_pebbles = 0;
    // 1-based index of the move that first pebbles the target, if any.
    std::optional<uint64_t> first_reach_move;
    // Segment-time units: each move costs 2 (advance + retreat of the
    // underlying segment run) and the target is reached at the end of the
    // forward half, so first_reach_time = 2 * first_reach_move - 1.
    std::optional<uint64_t> first_reach_time;
};

struct SearchResult {
    int pebbles = 0;
    std::vector<Move> moves;  // a shortest witness strategy
};

// Largest chain the exhaustive search will take on (2^t states per pass).
inline constexpr int kMaxSearchChain = 20;
// Largest target node bennett_schedule will expand.
inline constexpr int64_t kMaxTargetNode = 1 << 20;
// Cap on the materialized move list, (2k-1)^n entries.
inline constexpr int64_t kMaxScheduleMoves = 1 << 22;

// Toggles move.node. The kind field records intent and is not consulted, so
// applying the same move twice is an involution.
void apply_move(PebbleState& state, const Move& move);

Schedule bennett_schedule(int k, int n);

Metrics schedule_metrics(const Schedule& schedule);

// Minimum simultaneous pebbles needed to ever pebble node t, searched by
// iterative deepening on the budget with a breadth-first pass per budget.
// nullopt when budget_limit is too small to reach node t.
std::optional<SearchResult> min_pebbles(int t, int budget_limit);

// One move per line: "P <node>" / "U <node>".
std::string format_moves(const std::vector<Move>& moves);
std::vector<Move> parse_moves(const std::string& text);

}  // namespace revlab::pebble
