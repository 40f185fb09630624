#include "revlab/pebble.hpp"

#include <algorithm>
#include <cstring>
#include <queue>
#include <sstream>
#include <unordered_map>

namespace revlab::pebble {

int64_t Schedule::target() const {
    int64_t v = 1;
    for (int i = 0; i < n; ++i) v *= k;
    return v;
}

void apply_move(PebbleState& state, const Move& move) {
    if (move.node < 1 || move.node > state.chain_length)
        throw IllegalMove("node " + std::to_string(move.node) + " outside chain of length " +
                          std::to_string(state.chain_length));
    if (move.node > 1 && !state.pebbled.count(move.node - 1))
        throw IllegalMove("node " + std::to_string(move.node) +
                          " toggled without a pebble on its predecessor");
    auto it = state.pebbled.find(move.node);
    if (it == state.pebbled.end())
        state.pebbled.insert(move.node);
    else
        state.pebbled.erase(it);
}

namespace {

// Appends the moves that advance the frontier from node `base` to
// base + k^level, leaving no other new pebbles behind. Level 0 is a single
// pebble placement; higher levels lay k sub-advances and then replay all but
// the last one backwards to reclaim the intermediate checkpoints.
void advance(int k, int level, int64_t base, std::vector<Move>& out) {
    if (level == 0) {
        out.push_back({int(base + 1), MoveKind::Pebble});
        return;
    }
    int64_t stride = 1;
    for (int i = 1; i < level; ++i) stride *= k;
    std::vector<size_t> starts(k);
    for (int i = 0; i < k; ++i) {
        starts[i] = out.size();
        advance(k, level - 1, base + i * stride, out);
    }
    size_t fence = out.size();
    for (int i = k - 2; i >= 0; --i) {
        size_t lo = starts[i], hi = (i + 1 < k) ? starts[i + 1] : fence;
        for (size_t m = hi; m > lo; --m) {
            Move undo = out[m - 1];
            undo.kind = undo.kind == MoveKind::Pebble ? MoveKind::Unpebble : MoveKind::Pebble;
            out.push_back(undo);
        }
    }
}

}  // namespace

Schedule bennett_schedule(int k, int n) {
    if (k < 2) throw Overflow("segment fan-out k must be at least 2");
    if (n < 0) throw Overflow("recursion depth n must be nonnegative");
    Schedule s{k, n, {}};
    int64_t target = 1, moves = 1;
    for (int i = 0; i < n; ++i) {
        target *= k;
        moves *= 2 * k - 1;
        if (target > kMaxTargetNode || moves > kMaxScheduleMoves)
            throw Overflow("k^n exceeds the schedule size limit");
    }
    s.moves.reserve(size_t(moves));
    advance(k, n, 0, s.moves);
    return s;
}

Metrics schedule_metrics(const Schedule& schedule) {
    Metrics m;
    PebbleState st{int(std::max<int64_t>(schedule.target(), 1)), {}};
    int64_t target = schedule.target();
    for (const Move& mv : schedule.moves) {
        apply_move(st, mv);
        ++m.total_moves;
        m.max_pebbles = std::max<int>(m.max_pebbles, int(st.pebbled.size()));
        if (!m.first_reach_move && st.pebbled.count(int(target))) {
            m.first_reach_move = m.total_moves;
            m.first_reach_time = 2 * m.total_moves - 1;
        }
    }
    return m;
}

std::optional<SearchResult> min_pebbles(int t, int budget_limit) {
    if (t < 1) throw BudgetTooLarge("chain length must be positive");
    if (t > kMaxSearchChain)
        throw BudgetTooLarge("chain length " + std::to_string(t) + " exceeds the search cap of " +
                             std::to_string(kMaxSearchChain));
    const uint32_t goal_bit = 1u << (t - 1);
    int limit = std::min(budget_limit, t);
    for (int budget = 1; budget <= limit; ++budget) {
        // Breadth-first over pebble sets, capped at `budget` pebbles at once.
        std::unordered_map<uint32_t, std::pair<uint32_t, Move>> parent;
        std::queue<uint32_t> frontier;
        parent.emplace(0u, std::make_pair(0u, Move{}));
        frontier.push(0u);
        while (!frontier.empty()) {
            uint32_t s = frontier.front();
            frontier.pop();
            for (int node = 1; node <= t; ++node) {
                if (node > 1 && !(s >> (node - 2) & 1)) continue;
                uint32_t next = s ^ (1u << (node - 1));
                if (__builtin_popcount(next) > budget) continue;
                if (parent.count(next)) continue;
                MoveKind kind = (next >> (node - 1) & 1) ? MoveKind::Pebble : MoveKind::Unpebble;
                parent.emplace(next, std::make_pair(s, Move{node, kind}));
                if (next & goal_bit) {
                    SearchResult r{budget, {}};
                    for (uint32_t cur = next; cur != 0;) {
                        auto& [prev, mv] = parent.at(cur);
                        r.moves.push_back(mv);
                        cur = prev;
                    }
                    std::reverse(r.moves.begin(), r.moves.end());
                    return r;
                }
                frontier.push(next);
            }
        }
    }
    return std::nullopt;
}

std::string format_moves(const std::vector<Move>& moves) {
    std::string out;
    for (const Move& m : moves) {
        out += m.kind == MoveKind::Pebble ? 'P' : 'U';
        out += ' ';
        out += std::to_string(m.node);
        out += '\n';
    }
    return out;
}

std::vector<Move> parse_moves(const std::string& text) {
    std::vector<Move> moves;
    std::istringstream in(text);
    std::string tag;
    while (in >> tag) {
        int node;
        if ((tag != "P" && tag != "U") || !(in >> node) || node < 1)
            throw IllegalMove("malformed move line near '" + tag + "'");
        moves.push_back({node, tag == "P" ? MoveKind::Pebble : MoveKind::Unpebble});
    }
    return moves;
}

}  // namespace revlab::pebble
