#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "revlab/pebble.hpp"

using namespace revlab::pebble;

namespace {

constexpr auto P = MoveKind::Pebble;
constexpr auto U = MoveKind::Unpebble;

struct Replay {
    PebbleState final;
    size_t peak = 0;
};

Replay replay(int t, const std::vector<Move>& moves) {
    Replay r{{t, {}}, 0};
    for (const Move& m : moves) {
        apply_move(r.final, m);
        r.peak = std::max(r.peak, r.final.pebbled.size());
    }
    return r;
}

}  // namespace

TEST_CASE("smallest two-segment schedule") {
    Schedule s = bennett_schedule(2, 1);
    CHECK(s.moves == std::vector<Move>{{1, P}, {2, P}, {1, U}});
}

TEST_CASE("depth-two two-segment schedule, frozen") {
    Schedule s = bennett_schedule(2, 2);
    std::vector<Move> want{{1, P}, {2, P}, {1, U}, {3, P}, {4, P}, {3, U}, {1, P}, {2, U}, {1, U}};
    CHECK(s.moves == want);
}

TEST_CASE("depth zero still makes one move") {
    Schedule s = bennett_schedule(2, 0);
    CHECK(s.moves == std::vector<Move>{{1, P}});
    CHECK(s.target() == 1);
    Metrics m = schedule_metrics(s);
    CHECK(m.total_moves == 1);
    CHECK(m.max_pebbles == 1);
    CHECK(m.first_reach_time == 1);
}

TEST_CASE("reference figures for the two worked examples") {
    Metrics a = schedule_metrics(bennett_schedule(2, 3));
    CHECK(a.total_moves == 27);
    CHECK(a.max_pebbles == 4);
    CHECK(a.first_reach_time == 27);

    Metrics b = schedule_metrics(bennett_schedule(3, 2));
    CHECK(b.total_moves == 25);
    CHECK(b.max_pebbles == 5);
    CHECK(b.first_reach_time == 25);
}

TEST_CASE("move count and pebble ceiling across the sweep") {
    for (int k = 2; k <= 4; ++k)
        for (int n = 0; n <= 4; ++n) {
            CAPTURE(k);
            CAPTURE(n);
            Schedule s = bennett_schedule(k, n);
            uint64_t formula = 1;
            for (int e = 0; e < n; ++e) formula *= uint64_t(2 * k - 1);
            CHECK(s.moves.size() == formula);

            Replay r = replay(int(s.target()), s.moves);
            CHECK(r.peak <= size_t(n * (k - 1) + 1));
            // Only the target survives: everything else is cleaned up.
            CHECK(r.final.pebbled == std::set<int>{int(s.target())});
        }
}

TEST_CASE("schedules stay legal move by move") {
    Schedule s = bennett_schedule(3, 3);
    PebbleState st{int(s.target()), {}};
    for (const Move& m : s.moves) CHECK_NOTHROW(apply_move(st, m));
}

TEST_CASE("running a schedule twice returns to the empty board") {
    Schedule s = bennett_schedule(2, 3);
    PebbleState st{int(s.target()), {}};
    for (const Move& m : s.moves) apply_move(st, m);
    for (const Move& m : s.moves) apply_move(st, m);  // toggles undo themselves
    CHECK(st.pebbled.empty());
}

TEST_CASE("undoing in reverse order also returns to the empty board") {
    Schedule s = bennett_schedule(3, 2);
    PebbleState st{int(s.target()), {}};
    for (const Move& m : s.moves) apply_move(st, m);
    for (auto it = s.moves.rbegin(); it != s.moves.rend(); ++it) apply_move(st, *it);
    CHECK(st.pebbled.empty());
}

TEST_CASE("game rule enforcement") {
    PebbleState st{4, {}};
    CHECK_THROWS_AS(apply_move(st, {2, P}), IllegalMove);  // node 1 bare
    CHECK_THROWS_AS(apply_move(st, {0, P}), IllegalMove);
    CHECK_THROWS_AS(apply_move(st, {5, P}), IllegalMove);
    apply_move(st, {1, P});
    apply_move(st, {2, P});
    apply_move(st, {1, U});  // node 1 toggles freely
    CHECK(st.pebbled == std::set<int>{2});
    CHECK_THROWS_AS(apply_move(st, {4, P}), IllegalMove);  // node 3 bare
}

TEST_CASE("toggle legality depends only on the predecessor") {
    PebbleState st{3, {}};
    apply_move(st, {1, P});
    apply_move(st, {2, P});
    CHECK_NOTHROW(apply_move(st, {3, P}));
    CHECK_NOTHROW(apply_move(st, {3, U}));
    apply_move(st, {2, U});
    CHECK_THROWS_AS(apply_move(st, {3, P}), IllegalMove);
}

TEST_CASE("parameter guards") {
    CHECK_THROWS_AS(bennett_schedule(1, 1), Overflow);
    CHECK_THROWS_AS(bennett_schedule(2, -1), Overflow);
    CHECK_THROWS_AS(bennett_schedule(2, 21), Overflow);  // 2^21 past the node limit
    CHECK_THROWS_AS(bennett_schedule(2, 14), Overflow);  // 3^14 moves past the list limit
    CHECK_NOTHROW(bennett_schedule(2, 13));
}

TEST_CASE("exhaustive minimums on short chains") {
    auto need = [](int t) {
        auto r = min_pebbles(t, t);
        REQUIRE(r);
        return r->pebbles;
    };
    CHECK(need(1) == 1);
    CHECK(need(2) == 2);
    CHECK(need(3) == 2);
    CHECK(need(4) == 3);
    CHECK(need(8) == 4);
}

TEST_CASE("minimum grows with the logarithm of the chain length") {
    for (int t = 1; t <= 9; ++t) {
        CAPTURE(t);
        auto r = min_pebbles(t, t);
        REQUIRE(r);
        CHECK(r->pebbles >= int(std::log2(t)) + 1);
    }
}

TEST_CASE("search witnesses are legal and reach the end") {
    for (int t : {3, 4, 8}) {
        auto r = min_pebbles(t, t);
        REQUIRE(r);
        PebbleState st{t, {}};
        size_t peak = 0;
        bool reached = false;
        for (const Move& m : r->moves) {
            apply_move(st, m);
            peak = std::max(peak, st.pebbled.size());
            reached = reached || st.pebbled.count(t);
        }
        CHECK(reached);
        CHECK(peak == size_t(r->pebbles));
    }
}

TEST_CASE("too small a budget means no strategy") {
    CHECK_FALSE(min_pebbles(2, 1));
    CHECK_FALSE(min_pebbles(4, 2));
}

TEST_CASE("search size guards") {
    CHECK_THROWS_AS(min_pebbles(0, 1), BudgetTooLarge);
    CHECK_THROWS_AS(min_pebbles(21, 21), BudgetTooLarge);
}

TEST_CASE("move text round trip") {
    Schedule s = bennett_schedule(2, 2);
    CHECK(parse_moves(format_moves(s.moves)) == s.moves);
    CHECK(format_moves({{1, P}, {2, U}}) == "P 1\nU 2\n");
    CHECK_THROWS_AS(parse_moves("Q 1"), IllegalMove);
    CHECK_THROWS_AS(parse_moves("P x"), IllegalMove);
}
