#include "revlab/revsim.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "revlab/bits.hpp"
#include "revlab/pebble.hpp"

namespace revlab::revsim {

IrrevMachine::IrrevMachine(unsigned width, std::variant<std::vector<uint64_t>, uint64_t> rule)
    : width_(width), mask_(width_mask(width)), rule_(std::move(rule)) {}

IrrevMachine IrrevMachine::from_table(unsigned width, std::vector<uint64_t> table) {
    if (width < 1 || width > 16)
        throw std::invalid_argument("explicit tables support widths 1..16");
    if (table.size() != size_t(1) << width)
        throw std::invalid_argument("table must have 2^width entries");
    for (uint64_t v : table)
        if (v > width_mask(width)) throw std::invalid_argument("table entry wider than width");
    return IrrevMachine(width, std::move(table));
}

IrrevMachine IrrevMachine::seeded(unsigned width, uint64_t seed) {
    if (width < 1 || width > 64) throw std::invalid_argument("width must be 1..64");
    return IrrevMachine(width, seed);
}

std::optional<uint64_t> IrrevMachine::seed() const {
    if (auto* s = std::get_if<uint64_t>(&rule_)) return *s;
    return std::nullopt;
}

uint64_t IrrevMachine::step(uint64_t config) const {
    config &= mask_;
    if (auto* table = std::get_if<std::vector<uint64_t>>(&rule_)) return (*table)[size_t(config)];
    return splitmix64(config ^ splitmix64(std::get<uint64_t>(rule_))) & mask_;
}

uint64_t IrrevMachine::iterate(uint64_t config, uint64_t steps) const {
    for (uint64_t i = 0; i < steps; ++i) config = step(config);
    return config;
}

const char* op_name(Op op) {
    switch (op) {
        case Op::StepForward: return "step+";
        case Op::StepBackward: return "step-";
        case Op::CheckpointXorCurrent: return "cpx";
        case Op::CurrentXorCheckpoint: return "curx";
        case Op::TapeWriteNode: return "tw";
        case Op::TapeEraseNode: return "te";
        case Op::TapeWritePair: return "tpw";
        case Op::TapeErasePair: return "tpe";
        case Op::CheckpointXorTapeSucc: return "sx";
        case Op::OracleCall: return "call";
    }
    throw NonInvertibleEvent("unknown micro-op kind " + std::to_string(int(op)));
}

Op op_inverse(Op op) {
    switch (op) {
        case Op::StepForward: return Op::StepBackward;
        case Op::StepBackward: return Op::StepForward;
        case Op::TapeWriteNode: return Op::TapeEraseNode;
        case Op::TapeEraseNode: return Op::TapeWriteNode;
        case Op::TapeWritePair: return Op::TapeErasePair;
        case Op::TapeErasePair: return Op::TapeWritePair;
        case Op::CheckpointXorCurrent:
        case Op::CurrentXorCheckpoint:
        case Op::CheckpointXorTapeSucc:
        case Op::OracleCall: return op;
    }
    throw NonInvertibleEvent("unknown micro-op kind " + std::to_string(int(op)));
}

namespace {

uint64_t slot_value(const VmState& s, uint32_t slot) {
    if (slot >= s.checkpoints.size())
        throw SlotOutOfRange("checkpoint slot " + std::to_string(slot) + " out of range");
    return s.checkpoints[slot];
}

std::string node_str(const VmState& s, uint32_t slot) { return to_bits(slot_value(s, slot), s.width); }

void xor_tape_succ(VmState& s, uint32_t slot) {
    oracle::ParsedTape p = oracle::parse_tape(s.tape);
    if (p.form != oracle::TapeForm::Pair || p.right.size() != s.width)
        throw InvalidTapeForm("tape is not a pair of width-" + std::to_string(s.width) +
                              " nodes: '" + s.tape + "'");
    slot_value(s, slot);
    s.checkpoints[slot] ^= from_bits(p.right);
}

// Forward semantics of one micro-op. The oracle answers OracleCall when
// present; otherwise the recorded tapes of `ev` are replayed and checked.
void exec_op(VmState& s, Op op, uint32_t a, uint32_t b, const IrrevMachine* m,
             const oracle::GraphOracle* orc, const TraceEvent* ev, TraceEvent* out) {
    switch (op) {
        case Op::StepForward:
            if (!m) throw NonInvertibleEvent("step event without the producing machine");
            s.history.push_back(s.current);
            s.current = m->step(s.current);
            break;
        case Op::StepBackward: {
            if (!m) throw NonInvertibleEvent("step event without the producing machine");
            if (s.history.empty()) throw CorruptHistory("history underflow");
            uint64_t prev = s.history.back();
            if (m->step(prev) != s.current)
                throw CorruptHistory("history record does not step to the current configuration");
            s.history.pop_back();
            s.current = prev;
            break;
        }
        case Op::CheckpointXorCurrent:
            slot_value(s, a);
            s.checkpoints[a] ^= s.current;
            break;
        case Op::CurrentXorCheckpoint: s.current ^= slot_value(s, a); break;
        case Op::TapeWriteNode:
            if (!s.tape.empty()) throw InvalidTapeForm("tape write onto a non-empty tape");
            s.tape = node_str(s, a);
            break;
        case Op::TapeEraseNode:
            if (s.tape != node_str(s, a))
                throw InvalidTapeForm("tape does not hold the value being erased");
            s.tape.clear();
            break;
        case Op::TapeWritePair:
            if (!s.tape.empty()) throw InvalidTapeForm("tape write onto a non-empty tape");
            s.tape = node_str(s, a) + "#" + node_str(s, b);
            break;
        case Op::TapeErasePair:
            if (s.tape != node_str(s, a) + "#" + node_str(s, b))
                throw InvalidTapeForm("tape does not hold the pair being erased");
            s.tape.clear();
            break;
        case Op::CheckpointXorTapeSucc: xor_tape_succ(s, a); break;
        case Op::OracleCall: {
            std::string before = s.tape;
            if (orc) {
                s.tape = orc->call(s.tape);
            } else if (ev) {
                if (s.tape != ev->tape_before)
                    throw ReplayMismatch("oracle call replay saw tape '" + s.tape +
                                         "', trace recorded '" + ev->tape_before + "'");
                s.tape = ev->tape_after;
            } else {
                throw NonInvertibleEvent("oracle call without an oracle or a recorded answer");
            }
            if (out) {
                out->tape_before = std::move(before);
                out->tape_after = s.tape;
            }
            break;
        }
    }
    ++s.clock;
    if (out) {
        out->clock = s.clock;
        out->op = op;
        out->a = a;
        out->b = b;
    }
}

// Undoes the event, trusting only the machine and the recorded oracle tapes.
void unexec_op(VmState& s, const TraceEvent& ev, const IrrevMachine* m) {
    switch (ev.op) {
        case Op::StepForward: {
            if (!m) throw NonInvertibleEvent("step event without the producing machine");
            if (s.history.empty()) throw CorruptHistory("history underflow");
            uint64_t prev = s.history.back();
            if (m->step(prev) != s.current)
                throw CorruptHistory("history record does not step to the current configuration");
            s.history.pop_back();
            s.current = prev;
            break;
        }
        case Op::StepBackward:
            if (!m) throw NonInvertibleEvent("step event without the producing machine");
            s.history.push_back(s.current);
            s.current = m->step(s.current);
            break;
        case Op::CheckpointXorCurrent:
            slot_value(s, ev.a);
            s.checkpoints[ev.a] ^= s.current;
            break;
        case Op::CurrentXorCheckpoint: s.current ^= slot_value(s, ev.a); break;
        case Op::TapeWriteNode:
            if (s.tape != node_str(s, ev.a))
                throw ReplayMismatch("undoing a tape write that is not on the tape");
            s.tape.clear();
            break;
        case Op::TapeEraseNode:
            if (!s.tape.empty()) throw ReplayMismatch("undoing a tape erase onto a non-empty tape");
            s.tape = node_str(s, ev.a);
            break;
        case Op::TapeWritePair:
            if (s.tape != node_str(s, ev.a) + "#" + node_str(s, ev.b))
                throw ReplayMismatch("undoing a tape write that is not on the tape");
            s.tape.clear();
            break;
        case Op::TapeErasePair:
            if (!s.tape.empty()) throw ReplayMismatch("undoing a tape erase onto a non-empty tape");
            s.tape = node_str(s, ev.a) + "#" + node_str(s, ev.b);
            break;
        case Op::CheckpointXorTapeSucc: xor_tape_succ(s, ev.a); break;
        case Op::OracleCall:
            if (s.tape != ev.tape_after)
                throw ReplayMismatch("oracle call undo saw tape '" + s.tape + "', trace recorded '" +
                                     ev.tape_after + "'");
            s.tape = ev.tape_before;
            break;
        default: throw NonInvertibleEvent("unknown micro-op kind " + std::to_string(int(ev.op)));
    }
    --s.clock;
}

// Deterministic node -> physical slot assignment shared by the drivers and
// the standalone program builder: lowest free slot wins, slot 0 is pinned to
// the initial configuration.
struct SlotAlloc {
    explicit SlotAlloc(size_t capacity) {
        if (capacity < 2) throw CapacityExceeded("checkpoint pool needs at least 2 slots");
        phys[0] = 0;
        for (uint32_t i = 1; i < capacity; ++i) free.insert(i);
    }
    uint32_t parent(int64_t node) const { return phys.at(node - 1); }
    uint32_t acquire(int64_t node) {
        if (free.empty()) throw CapacityExceeded("pebble move exceeds the checkpoint budget");
        uint32_t slot = *free.begin();
        free.erase(free.begin());
        phys[node] = slot;
        return slot;
    }
    uint32_t release(int64_t node) {
        uint32_t slot = phys.at(node);
        phys.erase(node);
        free.insert(slot);
        return slot;
    }
    int pebbles() const { return int(phys.size()) - 1; }
    std::map<int64_t, uint32_t> phys;
    std::set<uint32_t> free;
};

void append_chain_move_ops(SlotAlloc& alloc, const pebble::Move& mv, std::vector<ProgOp>& out) {
    uint32_t parent = alloc.parent(mv.node);
    if (mv.kind == pebble::MoveKind::Pebble) {
        uint32_t slot = alloc.acquire(mv.node);
        out.push_back({Op::TapeWriteNode, parent});
        out.push_back({Op::OracleCall});
        out.push_back({Op::CheckpointXorTapeSucc, slot});
        out.push_back({Op::TapeErasePair, parent, slot});
    } else {
        uint32_t slot = alloc.release(mv.node);
        out.push_back({Op::TapeWritePair, parent, slot});
        out.push_back({Op::CheckpointXorTapeSucc, slot});
        out.push_back({Op::OracleCall});
        out.push_back({Op::TapeEraseNode, parent});
    }
}

void append_segment_move_ops(SlotAlloc& alloc, const pebble::Move& mv, uint64_t seg_len,
                             std::vector<ProgOp>& out) {
    uint32_t parent = alloc.parent(mv.node);
    uint32_t slot = mv.kind == pebble::MoveKind::Pebble ? alloc.acquire(mv.node)
                                                        : alloc.release(mv.node);
    out.push_back({Op::CurrentXorCheckpoint, parent});
    for (uint64_t i = 0; i < seg_len; ++i) out.push_back({Op::StepForward});
    out.push_back({Op::CheckpointXorCurrent, slot});
    for (uint64_t i = 0; i < seg_len; ++i) out.push_back({Op::StepBackward});
    out.push_back({Op::CurrentXorCheckpoint, parent});
}

}  // namespace

LandauerResult landauer_run(const IrrevMachine& m, uint64_t init, uint64_t steps) {
    LandauerResult r;
    r.history.reserve(size_t(steps));
    r.final = init & width_mask(m.config_width());
    for (uint64_t i = 0; i < steps; ++i) {
        r.history.push_back(r.final);
        r.final = m.step(r.final);
    }
    return r;
}

uint64_t lecerf_reverse(const IrrevMachine& m, uint64_t final, std::vector<uint64_t> history) {
    uint64_t cur = final;
    while (!history.empty()) {
        uint64_t prev = history.back();
        history.pop_back();
        if (m.step(prev) != cur)
            throw CorruptHistory("history record does not step to its successor");
        cur = prev;
    }
    return cur;
}

void bennett_checkpoint_copy(VmState& vm, size_t slot) {
    if (slot >= vm.checkpoints.size())
        throw SlotOutOfRange("checkpoint slot " + std::to_string(slot) + " out of range");
    vm.checkpoints[slot] ^= vm.current;
}

size_t bennett_capacity(int k, int n) { return size_t(n) * size_t(k - 1) + 2; }

std::vector<ProgOp> bennett_chain_program(int k, int n, size_t* capacity_out) {
    pebble::Schedule sched = pebble::bennett_schedule(k, n);
    size_t capacity = bennett_capacity(k, n);
    if (capacity_out) *capacity_out = capacity;
    SlotAlloc alloc(capacity);
    std::vector<ProgOp> prog;
    prog.reserve(sched.moves.size() * 4);
    for (const pebble::Move& mv : sched.moves) append_chain_move_ops(alloc, mv, prog);
    return prog;
}

namespace {

SimRun run_schedule(const IrrevMachine* m, const oracle::GraphOracle* orc, unsigned width,
                    uint64_t init, int k, int n, uint64_t seg_len, size_t capacity_override) {
    pebble::Schedule sched = pebble::bennett_schedule(k, n);
    size_t capacity = capacity_override ? capacity_override : bennett_capacity(k, n);
    SlotAlloc alloc(capacity);
    SimRun run;
    VmState s;
    s.width = width;
    s.checkpoints.assign(capacity, 0);
    s.checkpoints[0] = init & width_mask(width);
    run.start = s;
    run.trace.config_width = width;
    SimReport& rep = run.report;
    rep.config_width = width;
    if (m) rep.seed = m->seed();
    std::vector<ProgOp> ops;
    for (const pebble::Move& mv : sched.moves) {
        ops.clear();
        if (orc)
            append_chain_move_ops(alloc, mv, ops);
        else
            append_segment_move_ops(alloc, mv, seg_len, ops);
        rep.peak_checkpoints = std::max(rep.peak_checkpoints, alloc.pebbles());
        for (const ProgOp& op : ops) {
            TraceEvent ev;
            exec_op(s, op.op, op.a, op.b, m, orc, nullptr, &ev);
            run.trace.events.push_back(std::move(ev));
            rep.peak_history_bits =
                std::max<uint64_t>(rep.peak_history_bits, s.history.size() * width);
        }
        if (!s.history.empty())
            throw CorruptHistory("history not empty at a pebble-move boundary");
    }
    rep.total_microops = s.clock;
    rep.final_checkpoint = s.checkpoints[alloc.phys.at(sched.target())];
    run.end = std::move(s);
    return run;
}

}  // namespace

SimRun simulate_bennett(const IrrevMachine& m, uint64_t init, int k, int n, uint64_t seg_len,
                        size_t capacity_override) {
    if (seg_len < 1) throw std::invalid_argument("segment length must be at least 1");
    return run_schedule(&m, nullptr, m.config_width(), init, k, n, seg_len, capacity_override);
}

SimRun simulate_bennett_chain(const oracle::GraphOracle& o, unsigned S, int k, int n,
                              size_t capacity_override) {
    if (S < 1 || S > 64) throw std::invalid_argument("node width must be 1..64");
    return run_schedule(nullptr, &o, S, 0, k, n, 0, capacity_override);
}

VmState replay_forward(const Trace& trace, VmState start, const IrrevMachine* m) {
    VmState s = std::move(start);
    for (const TraceEvent& ev : trace.events) {
        if (ev.clock != s.clock + 1)
            throw ReplayMismatch("trace clock " + std::to_string(ev.clock) +
                                 " does not follow state clock " + std::to_string(s.clock));
        exec_op(s, ev.op, ev.a, ev.b, m, nullptr, &ev, nullptr);
    }
    return s;
}

void apply_state_op(VmState& s, Op op, uint32_t a, uint32_t b) {
    if (op == Op::StepForward || op == Op::StepBackward || op == Op::OracleCall)
        throw NonInvertibleEvent("not a state-internal micro-op");
    exec_op(s, op, a, b, nullptr, nullptr, nullptr, nullptr);
}

void unapply_state_op(VmState& s, Op op, uint32_t a, uint32_t b) {
    if (op == Op::StepForward || op == Op::StepBackward || op == Op::OracleCall)
        throw NonInvertibleEvent("not a state-internal micro-op");
    TraceEvent ev;
    ev.op = op;
    ev.a = a;
    ev.b = b;
    unexec_op(s, ev, nullptr);
}

VmState replay_backward(const Trace& trace, VmState end, const IrrevMachine* m) {
    VmState s = std::move(end);
    for (auto it = trace.events.rbegin(); it != trace.events.rend(); ++it) {
        if (it->clock != s.clock)
            throw ReplayMismatch("trace clock " + std::to_string(it->clock) +
                                 " does not match state clock " + std::to_string(s.clock));
        unexec_op(s, *it, m);
    }
    return s;
}

namespace {

void put_u16(std::vector<uint8_t>& v, uint16_t x) {
    for (int i = 0; i < 2; ++i) v.push_back(uint8_t(x >> (8 * i)));
}
void put_u32(std::vector<uint8_t>& v, uint32_t x) {
    for (int i = 0; i < 4; ++i) v.push_back(uint8_t(x >> (8 * i)));
}
void put_u64(std::vector<uint8_t>& v, uint64_t x) {
    for (int i = 0; i < 8; ++i) v.push_back(uint8_t(x >> (8 * i)));
}

struct Reader {
    const std::vector<uint8_t>& v;
    size_t pos = 0;
    uint64_t take(size_t n) {
        if (pos + n > v.size()) throw oracle::IoError("truncated state dump");
        uint64_t x = 0;
        for (size_t i = 0; i < n; ++i) x |= uint64_t(v[pos + i]) << (8 * i);
        pos += n;
        return x;
    }
};

}  // namespace

std::vector<uint8_t> serialize_vmstate(const VmState& s) {
    std::vector<uint8_t> out;
    out.push_back('R');
    out.push_back('V');
    out.push_back('M');
    out.push_back('1');
    put_u16(out, uint16_t(s.width));
    put_u64(out, s.current);
    put_u64(out, s.clock);
    put_u32(out, uint32_t(s.history.size()));
    for (uint64_t h : s.history) put_u64(out, h);
    put_u32(out, uint32_t(s.checkpoints.size()));
    for (uint64_t c : s.checkpoints) put_u64(out, c);
    put_u32(out, uint32_t(s.tape.size()));
    out.insert(out.end(), s.tape.begin(), s.tape.end());
    return out;
}

VmState parse_vmstate(const std::vector<uint8_t>& bytes) {
    Reader r{bytes};
    if (r.take(1) != 'R' || r.take(1) != 'V' || r.take(1) != 'M' || r.take(1) != '1')
        throw oracle::IoError("bad state dump magic");
    VmState s;
    s.width = unsigned(r.take(2));
    s.current = r.take(8);
    s.clock = r.take(8);
    s.history.resize(size_t(r.take(4)));
    for (uint64_t& h : s.history) h = r.take(8);
    s.checkpoints.resize(size_t(r.take(4)));
    for (uint64_t& c : s.checkpoints) c = r.take(8);
    s.tape.resize(size_t(r.take(4)));
    for (char& c : s.tape) {
        c = char(r.take(1));
        if (c != '0' && c != '1' && c != '#') throw oracle::IoError("bad tape byte in state dump");
    }
    if (r.pos != bytes.size()) throw oracle::IoError("trailing bytes in state dump");
    return s;
}

namespace {

std::string tape_to_hex(const std::string& tape, unsigned width) {
    if (tape.empty()) return "-";
    oracle::ParsedTape p = oracle::parse_tape(tape);
    if (p.form == oracle::TapeForm::Node && p.left.size() == width)
        return to_hex(from_bits(p.left), width);
    if (p.form == oracle::TapeForm::Pair && p.left.size() == width && p.right.size() == width)
        return to_hex(from_bits(p.left), width) + "#" + to_hex(from_bits(p.right), width);
    throw oracle::IoError("tape does not fit the hex trace encoding: '" + tape + "'");
}

std::string tape_from_hex(const std::string& text, unsigned width) {
    if (text == "-") return "";
    size_t hash = text.find('#');
    if (hash == std::string::npos) return to_bits(from_hex(text), width);
    return to_bits(from_hex(text.substr(0, hash)), width) + "#" +
           to_bits(from_hex(text.substr(hash + 1)), width);
}

const std::pair<Op, const char*> kOpTokens[] = {
    {Op::StepForward, "step+"},     {Op::StepBackward, "step-"},
    {Op::CheckpointXorCurrent, "cpx"}, {Op::CurrentXorCheckpoint, "curx"},
    {Op::TapeWriteNode, "tw"},      {Op::TapeEraseNode, "te"},
    {Op::TapeWritePair, "tpw"},     {Op::TapeErasePair, "tpe"},
    {Op::CheckpointXorTapeSucc, "sx"}, {Op::OracleCall, "call"},
};

bool op_takes_slot(Op op) {
    return op != Op::StepForward && op != Op::StepBackward && op != Op::OracleCall;
}
bool op_takes_two_slots(Op op) { return op == Op::TapeWritePair || op == Op::TapeErasePair; }

}  // namespace

void save_trace(const std::string& path, const Trace& trace) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw oracle::IoError("cannot write " + path);
    out << "width=" << trace.config_width << "\n";
    for (const TraceEvent& ev : trace.events) {
        out << ev.clock << " " << op_name(ev.op);
        if (op_takes_slot(ev.op)) {
            out << ":" << ev.a;
            if (op_takes_two_slots(ev.op)) out << ":" << ev.b;
        }
        if (ev.op == Op::OracleCall)
            out << " " << tape_to_hex(ev.tape_before, trace.config_width) << " "
                << tape_to_hex(ev.tape_after, trace.config_width);
        out << "\n";
    }
    if (!out) throw oracle::IoError("short write to " + path);
}

Trace load_trace(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw oracle::IoError("cannot read " + path);
    std::string header;
    std::getline(in, header);
    Trace trace;
    if (std::sscanf(header.c_str(), "width=%u", &trace.config_width) != 1)
        throw oracle::IoError("bad trace header in " + path + ": " + header);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        TraceEvent ev;
        std::string opfield;
        if (!(ls >> ev.clock >> opfield)) throw oracle::IoError("bad trace line: " + line);
        std::string token = opfield.substr(0, opfield.find(':'));
        bool known = false;
        for (auto& [op, name] : kOpTokens) {
            if (token == name) {
                ev.op = op;
                known = true;
                break;
            }
        }
        if (!known) throw NonInvertibleEvent("unknown micro-op token '" + token + "'");
        if (op_takes_slot(ev.op)) {
            size_t c1 = opfield.find(':');
            if (c1 == std::string::npos) throw oracle::IoError("missing slot in: " + line);
            size_t c2 = opfield.find(':', c1 + 1);
            ev.a = uint32_t(std::stoul(opfield.substr(c1 + 1, c2 - c1 - 1)));
            if (op_takes_two_slots(ev.op)) {
                if (c2 == std::string::npos) throw oracle::IoError("missing slot in: " + line);
                ev.b = uint32_t(std::stoul(opfield.substr(c2 + 1)));
            }
        }
        if (ev.op == Op::OracleCall) {
            std::string before, after;
            if (!(ls >> before >> after)) throw oracle::IoError("missing tapes in: " + line);
            ev.tape_before = tape_from_hex(before, trace.config_width);
            ev.tape_after = tape_from_hex(after, trace.config_width);
        }
        trace.events.push_back(std::move(ev));
    }
    return trace;
}

}  // namespace revlab::revsim
