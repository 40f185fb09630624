#include "revlab/analysis.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include "revlab/bits.hpp"

namespace revlab::analysis {

std::vector<QueryEvent> query_events(const revsim::Trace& trace) {
    std::vector<QueryEvent> out;
    for (const revsim::TraceEvent& ev : trace.events)
        if (ev.op == revsim::Op::OracleCall) out.push_back({ev.clock, ev.tape_before, ev.tape_after});
    return out;
}

size_t PebbleTimeline::interval_at(uint64_t tau) const {
    return size_t(std::upper_bound(event_times.begin(), event_times.end(), tau) -
                  event_times.begin());
}

namespace {

// How a query string relates to node j: the four involving forms.
enum Involve : uint8_t { kNone = 0, kPred, kPredPair, kSelf, kSelfPair };

}  // namespace

PebbleTimeline build_timeline(const std::vector<QueryEvent>& events, const oracle::Chain& chain) {
    const size_t t = chain.length();
    const size_t E = events.size();
    PebbleTimeline tl;
    tl.event_times.reserve(E);
    for (const QueryEvent& e : events) tl.event_times.push_back(e.time);
    tl.intervals.assign(E + 1, std::vector<NodeStatus>(t));

    for (size_t j = 1; j <= t; ++j) {
        const std::string& self = chain.nodes[j - 1];
        std::string pred = j == 1 ? chain.start() : chain.nodes[j - 2];
        std::string pred_pair = pred + "#" + self;
        std::string self_pair = j < t ? self + "#" + chain.nodes[j] : std::string();

        std::vector<Involve> inv(E, kNone);
        for (size_t e = 0; e < E; ++e) {
            const std::string& s = events[e].before;
            if (s == pred) inv[e] = kPred;
            else if (s == pred_pair) inv[e] = kPredPair;
            else if (s == self) inv[e] = kSelf;
            else if (j < t && s == self_pair) inv[e] = kSelfPair;
        }

        // Backward tags: the most recent involving query justifies pebbling
        // when it is q_{j-1} (1), q_j (2) or q_j#q_{j+1} (3).
        // Forward tags: the most imminent involving query justifies when it
        // is q_j (1), q_j#q_{j+1} (2) or q_{j-1}#q_j (3).
        auto back_tag = [](Involve v) -> uint8_t {
            switch (v) {
                case kPred: return 1;
                case kSelf: return 2;
                case kSelfPair: return 3;
                default: return 0;
            }
        };
        auto fwd_tag = [](Involve v) -> uint8_t {
            switch (v) {
                case kSelf: return 1;
                case kSelfPair: return 2;
                case kPredPair: return 3;
                default: return 0;
            }
        };

        // Sweep once in each direction, carrying the nearest involving query.
        std::optional<size_t> nearest;
        for (size_t i = 0; i <= E; ++i) {
            if (i > 0 && inv[i - 1] != kNone) nearest = i - 1;
            if (nearest) {
                uint8_t tag = back_tag(inv[*nearest]);
                bool counts = j == t ? tag == 1 : tag != 0;
                if (counts)
                    tl.intervals[i][j - 1].backward =
                        Justification{Direction::Backward, tag, events[*nearest].time};
            }
        }
        nearest.reset();
        for (size_t i = E + 1; i-- > 0;) {
            if (i < E && inv[i] != kNone) nearest = i;
            if (nearest) {
                uint8_t tag = fwd_tag(inv[*nearest]);
                bool counts = j == t ? tag == 3 : tag != 0;
                if (counts)
                    tl.intervals[i][j - 1].forward =
                        Justification{Direction::Forward, tag, events[*nearest].time};
            }
        }
        for (size_t i = 0; i <= E; ++i) {
            NodeStatus& st = tl.intervals[i][j - 1];
            st.pebbled = st.backward.has_value() || st.forward.has_value();
        }
    }
    return tl;
}

std::set<int> pebbled_at(const std::vector<QueryEvent>& events, const oracle::Chain& chain,
                         uint64_t tau) {
    PebbleTimeline tl = build_timeline(events, chain);
    const auto& row = tl.intervals[tl.interval_at(tau)];
    std::set<int> out;
    for (size_t j = 0; j < row.size(); ++j)
        if (row[j].pebbled) out.insert(int(j) + 1);
    return out;
}

std::vector<pebble::Move> trace_to_moves(const std::vector<QueryEvent>& events,
                                         const oracle::Chain& chain) {
    PebbleTimeline tl = build_timeline(events, chain);
    const size_t t = chain.length();
    for (size_t j = 0; j < t; ++j)
        if (tl.intervals[0][j].pebbled)
            throw RuleViolation("node " + std::to_string(j + 1) + " pebbled before any query");
    std::vector<pebble::Move> moves;
    pebble::PebbleState state{int(t), {}};
    for (size_t e = 0; e + 1 < tl.intervals.size(); ++e) {
        std::optional<pebble::Move> mv;
        for (size_t j = 0; j < t; ++j) {
            bool before = tl.intervals[e][j].pebbled;
            bool after = tl.intervals[e + 1][j].pebbled;
            if (before == after) continue;
            if (mv)
                throw RuleViolation("query at time " + std::to_string(events[e].time) +
                                    " changes more than one node");
            mv = pebble::Move{int(j) + 1,
                              after ? pebble::MoveKind::Pebble : pebble::MoveKind::Unpebble};
        }
        if (!mv) continue;
        try {
            pebble::apply_move(state, *mv);
        } catch (const pebble::IllegalMove& ex) {
            throw RuleViolation(std::string("derived move is illegal: ") + ex.what());
        }
        moves.push_back(*mv);
    }
    return moves;
}

namespace {

revsim::VmState state_at(const revsim::SimRun& run, uint64_t tau) {
    if (tau > run.report.total_microops)
        throw std::invalid_argument("tau " + std::to_string(tau) + " is beyond the end of the trace");
    revsim::Trace prefix{run.trace.config_width, {}};
    prefix.events.assign(run.trace.events.begin(), run.trace.events.begin() + long(tau));
    return revsim::replay_forward(prefix, run.start, nullptr);
}

}  // namespace

Direction majority_direction(const std::vector<QueryEvent>& events, const oracle::Chain& chain,
                             uint64_t tau) {
    PebbleTimeline tl = build_timeline(events, chain);
    const auto& row = tl.intervals[tl.interval_at(tau)];
    size_t fwd = 0, back = 0;
    for (const NodeStatus& st : row) {
        if (st.forward) ++fwd;
        if (st.backward) ++back;
    }
    return fwd >= back ? Direction::Forward : Direction::Backward;
}

Description compress(const revsim::SimRun& run, const oracle::Chain& chain, uint64_t tau,
                     Direction dir, const std::string& extra_bits) {
    std::vector<QueryEvent> events = query_events(run.trace);
    PebbleTimeline tl = build_timeline(events, chain);
    const auto& row = tl.intervals[tl.interval_at(tau)];
    Description d;
    d.dir = dir;
    d.extra_bits = extra_bits;
    std::vector<bool> covered(chain.length() + 1, false);
    for (size_t j = 1; j <= chain.length(); ++j) {
        const NodeStatus& st = row[j - 1];
        const auto& just = dir == Direction::Forward ? st.forward : st.backward;
        if (!just) continue;
        d.triples.push_back({uint32_t(j), int64_t(just->query_time) - int64_t(tau), just->tag});
        covered[j] = true;
    }
    for (size_t j = 1; j <= chain.length(); ++j)
        if (!covered[j]) d.x_prime += chain.nodes[j - 1];
    d.config_snapshot = revsim::serialize_vmstate(state_at(run, tau));
    return d;
}

std::string decompress(const Description& d, const MachineContext& ctx) {
    const unsigned S = ctx.S;
    if (S == 0) throw ReconstructionFailure("context node width is zero");
    if (d.x_prime.size() % S != 0)
        throw ReconstructionFailure("x' length is not a multiple of the node width");
    const size_t t = d.x_prime.size() / S + d.triples.size();
    if (t == 0) return d.extra_bits;

    // Node value table; index 0 is the start node. Entries not pebbled in the
    // stored direction come straight from x'.
    std::vector<std::optional<std::string>> q(t + 1);
    q[0] = std::string(S, '0');
    std::vector<bool> from_triple(t + 1, false);
    for (const DescTriple& tr : d.triples) {
        if (tr.j < 1 || tr.j > t || from_triple[tr.j])
            throw ReconstructionFailure("triple node index " + std::to_string(tr.j) + " invalid");
        from_triple[tr.j] = true;
    }
    size_t pos = 0;
    for (size_t j = 1; j <= t; ++j) {
        if (from_triple[j]) continue;
        q[j] = d.x_prime.substr(pos, S);
        pos += S;
    }

    if (!d.triples.empty()) {
        revsim::VmState s;
        try {
            s = revsim::parse_vmstate(d.config_snapshot);
        } catch (const std::exception& ex) {
            throw ReconstructionFailure(std::string("snapshot: ") + ex.what());
        }
        if (s.width != S) throw ReconstructionFailure("snapshot width disagrees with the context");
        std::vector<revsim::ProgOp> prog = revsim::bennett_chain_program(ctx.k, ctx.n);
        const uint64_t tau = s.clock;
        if (tau > prog.size()) throw ReconstructionFailure("snapshot clock is past the program end");

        const bool fwd = d.dir == Direction::Forward;
        // The query with offset dtau from tau is met at walk step dtau when
        // going forward, and at step 1 - dtau when undoing ops from tau down.
        std::map<uint64_t, std::vector<const DescTriple*>> at_step;
        uint64_t last_step = 0;
        for (const DescTriple& tr : d.triples) {
            if (fwd && tr.dtau < 1)
                throw ReconstructionFailure("forward description with a non-future query offset");
            if (!fwd && tr.dtau > 0)
                throw ReconstructionFailure("backward description with a future query offset");
            uint64_t step = fwd ? uint64_t(tr.dtau) : uint64_t(1 - tr.dtau);
            at_step[step].push_back(&tr);
            last_step = std::max(last_step, step);
        }
        if (fwd ? tau + last_step > prog.size() : last_step > tau)
            throw ReconstructionFailure("query offset points outside the program");

        auto find_node = [&](std::string_view v) -> std::optional<size_t> {
            for (size_t j = 0; j <= t; ++j)
                if (q[j] && *q[j] == v) return j;
            return std::nullopt;
        };
        auto assign = [&](uint32_t j, std::string_view v) {
            if (v.size() != S) throw ReconstructionFailure("recovered node has the wrong width");
            if (q[j] && *q[j] != v)
                throw ReconstructionFailure("node " + std::to_string(j) +
                                            " recovered with conflicting values");
            q[j] = std::string(v);
        };

        try {
            for (uint64_t step = 1; step <= last_step; ++step) {
                size_t idx = fwd ? size_t(tau + step - 1) : size_t(tau - step);
                const revsim::ProgOp& op = prog[idx];
                if (op.op != revsim::Op::OracleCall) {
                    if (fwd)
                        revsim::apply_state_op(s, op.op, op.a, op.b);
                    else
                        revsim::unapply_state_op(s, op.op, op.a, op.b);
                    continue;
                }
                // Going forward we see the tape the query started from; going
                // backward we see what the call left behind. Recover the
                // matched nodes first, then emulate the (self-inverse) call.
                oracle::ParsedTape p = oracle::parse_tape(s.tape);
                auto here = at_step.find(step);
                if (here != at_step.end()) {
                    for (const DescTriple* tr : here->second) {
                        bool want_pair = fwd ? tr->tag != 1 : tr->tag != 3;
                        if (want_pair != (p.form == oracle::TapeForm::Pair) ||
                            (!want_pair && p.form != oracle::TapeForm::Node))
                            throw ReconstructionFailure("tape form does not match the stored tag");
                        // Forward: 1 reads the node, 2 the left half, 3 the
                        // right. Backward sees post-call tapes, so 3 reads the
                        // node, 2 the left half, 1 the freshly written right.
                        std::string_view v =
                            !want_pair ? p.left : tr->tag == 2 ? p.left : p.right;
                        assign(tr->j, v);
                    }
                }
                if (p.form == oracle::TapeForm::Node) {
                    if (p.left.size() == S) {
                        auto j = find_node(p.left);
                        if (j && *j < t && q[*j + 1]) s.tape += "#" + *q[*j + 1];
                    } else if (p.left.size() < S) {
                        auto it = ctx.small_succ.find(std::string(p.left));
                        if (it != ctx.small_succ.end()) s.tape += "#" + it->second;
                    }
                } else if (p.form == oracle::TapeForm::Pair && p.left.size() == S &&
                           p.right.size() == S) {
                    auto j = find_node(p.left);
                    if (j && *j < t && q[*j + 1] && *q[*j + 1] == p.right)
                        s.tape = std::string(p.left);
                }
                if (fwd)
                    ++s.clock;
                else
                    --s.clock;
            }
        } catch (const revsim::NonInvertibleEvent& ex) {
            throw ReconstructionFailure(std::string("program walk: ") + ex.what());
        } catch (const revsim::InvalidTapeForm& ex) {
            throw ReconstructionFailure(std::string("program walk: ") + ex.what());
        } catch (const revsim::ReplayMismatch& ex) {
            throw ReconstructionFailure(std::string("program walk: ") + ex.what());
        } catch (const revsim::SlotOutOfRange& ex) {
            throw ReconstructionFailure(std::string("program walk: ") + ex.what());
        }
    }

    std::string x;
    x.reserve(t * S + d.extra_bits.size());
    for (size_t j = 1; j <= t; ++j) {
        if (!q[j]) throw ReconstructionFailure("node " + std::to_string(j) + " was never recovered");
        x += *q[j];
    }
    x += d.extra_bits;
    return x;
}

namespace {

void put_u32(std::vector<uint8_t>& v, uint32_t x) {
    for (int i = 0; i < 4; ++i) v.push_back(uint8_t(x >> (8 * i)));
}
void put_u64(std::vector<uint8_t>& v, uint64_t x) {
    for (int i = 0; i < 8; ++i) v.push_back(uint8_t(x >> (8 * i)));
}

void put_bits(std::vector<uint8_t>& v, const std::string& bits) {
    put_u32(v, uint32_t(bits.size()));
    uint8_t acc = 0;
    for (size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') acc |= uint8_t(0x80u >> (i % 8));
        else if (bits[i] != '0') throw std::invalid_argument("not a bit string");
        if (i % 8 == 7) {
            v.push_back(acc);
            acc = 0;
        }
    }
    if (bits.size() % 8) v.push_back(acc);
}

struct Reader {
    const std::vector<uint8_t>& v;
    size_t pos = 0;
    uint64_t take(size_t n) {
        if (pos + n > v.size()) throw oracle::IoError("truncated description");
        uint64_t x = 0;
        for (size_t i = 0; i < n; ++i) x |= uint64_t(v[pos + i]) << (8 * i);
        pos += n;
        return x;
    }
    std::string take_bits() {
        size_t nbits = size_t(take(4));
        size_t nbytes = (nbits + 7) / 8;
        if (pos + nbytes > v.size()) throw oracle::IoError("truncated description");
        std::string bits(nbits, '0');
        for (size_t i = 0; i < nbits; ++i)
            if (v[pos + i / 8] & (0x80u >> (i % 8))) bits[i] = '1';
        pos += nbytes;
        return bits;
    }
};

}  // namespace

std::vector<uint8_t> serialize_description(const Description& d) {
    std::vector<uint8_t> out{'R', 'L', 'D', '1'};
    put_u32(out, uint32_t(d.config_snapshot.size()));
    out.insert(out.end(), d.config_snapshot.begin(), d.config_snapshot.end());
    out.push_back(uint8_t(d.dir));
    put_bits(out, d.x_prime);
    put_u32(out, uint32_t(d.triples.size()));
    for (const DescTriple& tr : d.triples) {
        put_u32(out, tr.j);
        put_u64(out, uint64_t(tr.dtau));
        out.push_back(tr.tag);
    }
    put_bits(out, d.extra_bits);
    return out;
}

Description parse_description(const std::vector<uint8_t>& bytes) {
    Reader r{bytes};
    if (r.take(1) != 'R' || r.take(1) != 'L' || r.take(1) != 'D' || r.take(1) != '1')
        throw oracle::IoError("bad description magic");
    Description d;
    d.config_snapshot.resize(size_t(r.take(4)));
    for (uint8_t& b : d.config_snapshot) b = uint8_t(r.take(1));
    uint64_t dir = r.take(1);
    if (dir > 1) throw oracle::IoError("bad direction byte");
    d.dir = Direction(dir);
    d.x_prime = r.take_bits();
    size_t nt = size_t(r.take(4));
    if (nt > (1u << 20)) throw oracle::IoError("unreasonable triple count");
    d.triples.resize(nt);
    for (DescTriple& tr : d.triples) {
        tr.j = uint32_t(r.take(4));
        tr.dtau = int64_t(r.take(8));
        tr.tag = uint8_t(r.take(1));
        if (tr.tag < 1 || tr.tag > 3) throw oracle::IoError("bad case tag");
    }
    d.extra_bits = r.take_bits();
    if (r.pos != bytes.size()) throw oracle::IoError("trailing bytes in description");
    return d;
}

std::vector<std::pair<std::string, uint64_t>> description_sizes(const Description& d) {
    std::vector<std::pair<std::string, uint64_t>> rows;
    rows.emplace_back("config_snapshot", uint64_t(d.config_snapshot.size()) * 8);
    rows.emplace_back("direction", 8);
    rows.emplace_back("x_prime", d.x_prime.size());
    rows.emplace_back("triples", uint64_t(d.triples.size()) * (32 + 64 + 8));
    rows.emplace_back("extra_bits", d.extra_bits.size());
    rows.emplace_back("total_wire", uint64_t(serialize_description(d).size()) * 8);
    return rows;
}

DescriptionSystem constant_system() {
    return {"constant", [](const std::string&) { return std::string(); }};
}

DescriptionSystem identity_system() {
    return {"identity", [](const std::string& d) { return d; }};
}

namespace {

bool read_field(const std::string& d, size_t& pos, unsigned bits, uint64_t& out) {
    if (pos + bits > d.size()) return false;
    out = 0;
    for (unsigned i = 0; i < bits; ++i) out = out << 1 | uint64_t(d[pos + i] == '1');
    pos += bits;
    return true;
}

}  // namespace

DescriptionSystem duplicate_splice_system(unsigned S, unsigned index_bits) {
    return {"duplicate-splice",
            [S, index_bits](const std::string& d) -> std::string {
                size_t pos = 0;
                uint64_t j1, k1;
                if (!read_field(d, pos, index_bits, j1) || !read_field(d, pos, index_bits, k1))
                    return "";
                size_t j = size_t(j1) + 1, k = size_t(k1) + 1;
                std::string xp = d.substr(pos);
                size_t nodes = xp.size() / S;
                if (j >= k || k > nodes + 1) return "";
                std::string out = xp.substr(0, S * (k - 1));
                out += xp.substr(S * (j - 1), S);
                out += xp.substr(S * (k - 1));
                return out;
            }};
}

DescriptionSystem zero_collision_system(unsigned S, unsigned index_bits) {
    return {"zero-collision",
            [S, index_bits](const std::string& d) -> std::string {
                size_t pos = 0;
                uint64_t j1;
                if (!read_field(d, pos, index_bits, j1)) return "";
                size_t j = size_t(j1) + 1;
                std::string xp = d.substr(pos);
                size_t nodes = xp.size() / S;
                if (j > nodes + 1) return "";
                std::string out = xp.substr(0, S * (j - 1));
                out += std::string(S, '0');
                out += xp.substr(S * (j - 1));
                return out;
            }};
}

DescriptionSystem trace_system(const MachineContext& ctx) {
    return {"trace",
            [ctx](const std::string& d) -> std::string {
                if (d.size() % 8) return "";
                std::vector<uint8_t> bytes(d.size() / 8, 0);
                for (size_t i = 0; i < d.size(); ++i)
                    if (d[i] == '1') bytes[i / 8] |= uint8_t(0x80u >> (i % 8));
                try {
                    return decompress(parse_description(bytes), ctx);
                } catch (const std::exception&) {
                    return "";
                }
            }};
}

DescriptionSystem initial_pebble_system(const MachineContext& ctx) {
    return {"initial-pebble",
            [ctx](const std::string& d) -> std::string {
                // 14-bit header: node index, query offset, case tag.
                size_t pos = 0;
                uint64_t j, dtau, tag;
                if (!read_field(d, pos, 4, j) || !read_field(d, pos, 8, dtau) ||
                    !read_field(d, pos, 2, tag))
                    return "";
                Description desc;
                desc.dir = Direction::Forward;
                desc.x_prime = d.substr(pos);
                desc.triples.push_back({uint32_t(j), int64_t(dtau), uint8_t(tag)});
                revsim::VmState init;
                init.width = ctx.S;
                init.checkpoints.assign(revsim::bennett_capacity(ctx.k, ctx.n), 0);
                desc.config_snapshot = revsim::serialize_vmstate(init);
                try {
                    return decompress(desc, ctx);
                } catch (const std::exception&) {
                    return "";
                }
            }};
}

std::string find_incompressible(const DescriptionSystem& sys, unsigned ell) {
    if (ell < 1 || ell > 20)
        throw std::invalid_argument("incompressibility search supports lengths 1..20");
    std::unordered_set<std::string> described;
    for (unsigned len = 0; len < ell; ++len) {
        for (uint64_t v = 0; v < (uint64_t(1) << len); ++v) {
            std::string y = sys.expand(to_bits(v, len));
            if (y.size() == ell) described.insert(std::move(y));
        }
    }
    for (uint64_t v = 0; v < (uint64_t(1) << ell); ++v) {
        std::string cand = to_bits(v, ell);
        if (!described.count(cand)) return cand;
    }
    throw std::logic_error("every string described: the expander cannot be a function");
}

std::optional<SpliceDescription> describe_duplicate(const std::string& x, unsigned S) {
    if (S == 0) throw std::invalid_argument("node width must be positive");
    size_t nodes = x.size() / S;
    for (size_t j = 0; j + 1 < nodes; ++j)
        for (size_t k = j + 1; k < nodes; ++k)
            if (x.compare(j * S, S, x, k * S, S) == 0) {
                std::string xp = x.substr(0, k * S) + x.substr((k + 1) * S);
                return SpliceDescription{uint32_t(j + 1), uint32_t(k + 1), std::move(xp)};
            }
    return std::nullopt;
}

SnapshotSizing snapshot_sizing(const revsim::SimRun& run, const oracle::Chain& chain,
                               uint64_t tau) {
    SnapshotSizing out;
    out.snapshot_bits = uint64_t(revsim::serialize_vmstate(state_at(run, tau)).size()) * 8;
    out.pebbled_nodes = pebbled_at(query_events(run.trace), chain, tau).size();
    out.floor_bits = out.pebbled_nodes * chain.node_width;
    out.ratio_to_quarter_ps =
        out.floor_bits ? double(out.snapshot_bits) / (0.25 * double(out.floor_bits)) : 0.0;
    return out;
}

void save_description(const std::string& path, const Description& d) {
    std::vector<uint8_t> bytes = serialize_description(d);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw oracle::IoError("cannot write " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), long(bytes.size()));
    if (!out) throw oracle::IoError("short write to " + path);
}

Description load_description(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw oracle::IoError("cannot read " + path);
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
    return parse_description(bytes);
}

}  // namespace revlab::analysis
