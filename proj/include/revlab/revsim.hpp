#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "revlab/oracle.hpp"

// Reversible simulation of an irreversible step rule. The primitives are the
// classic trio: run forward while recording erased configurations (Landauer),
// replay the record backwards to uncompute it (Lecerf), and XOR-copy a
// checkpoint before reversing (Bennett). simulate_bennett composes them along
// a checkpoint-and-recompute schedule so peak storage stays at
// n(k-1)+1 checkpoints instead of one per step.

namespace revlab::revsim {

struct CorruptHistory : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SlotOutOfRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CapacityExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonInvertibleEvent : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ReplayMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidTapeForm : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Deterministic total step rule on width-bit configurations, either an
// explicit table (small widths) or a seeded mixing function.
class IrrevMachine {
  public:
    static IrrevMachine from_table(unsigned width, std::vector<uint64_t> table);
    static IrrevMachine seeded(unsigned width, uint64_t seed);

    unsigned config_width() const { return width_; }
    std::optional<uint64_t> seed() const;
    uint64_t step(uint64_t config) const;
    uint64_t iterate(uint64_t config, uint64_t steps) const;

  private:
    IrrevMachine(unsigned width, std::variant<std::vector<uint64_t>, uint64_t> rule);
    unsigned width_;
    uint64_t mask_;
    std::variant<std::vector<uint64_t>, uint64_t> rule_;
};

enum class Op : uint8_t {
    StepForward,            // history.push(current); current = step(current)
    StepBackward,           // undo one recorded step
    CheckpointXorCurrent,   // checkpoints[a] ^= current
    CurrentXorCheckpoint,   // current ^= checkpoints[a]
    TapeWriteNode,          // empty tape := value of slot a
    TapeEraseNode,          // tape holding value of slot a := empty
    TapeWritePair,          // empty tape := slot a # slot b
    TapeErasePair,          // tape holding slot a # slot b := empty
    CheckpointXorTapeSucc,  // checkpoints[a] ^= successor half of the tape
    OracleCall,             // tape := A(tape)
};

const char* op_name(Op op);
Op op_inverse(Op op);

struct TraceEvent {
    uint64_t clock = 0;
    Op op = Op::StepForward;
    uint32_t a = 0;
    uint32_t b = 0;
    // Recorded for OracleCall only.
    std::string tape_before;
    std::string tape_after;
    bool operator==(const TraceEvent&) const = default;
};

struct Trace {
    unsigned config_width = 0;
    std::vector<TraceEvent> events;
};

struct VmState {
    unsigned width = 0;
    uint64_t current = 0;
    std::vector<uint64_t> history;
    std::vector<uint64_t> checkpoints;  // fixed-size pool; slot 0 pins the initial config
    std::string tape;
    uint64_t clock = 0;
    bool operator==(const VmState&) const = default;
};

struct SimReport {
    uint64_t final_checkpoint = 0;
    int peak_checkpoints = 0;
    uint64_t peak_history_bits = 0;
    uint64_t total_microops = 0;
    unsigned config_width = 0;
    std::optional<uint64_t> seed;
};

struct SimRun {
    SimReport report;
    VmState start;
    VmState end;
    Trace trace;
};

struct LandauerResult {
    uint64_t final = 0;
    std::vector<uint64_t> history;  // one erased configuration per step
};

LandauerResult landauer_run(const IrrevMachine& m, uint64_t init, uint64_t steps);

// Consumes the history stack and returns the configuration the run started
// from; throws CorruptHistory when a record does not step to its successor.
uint64_t lecerf_reverse(const IrrevMachine& m, uint64_t final, std::vector<uint64_t> history);

// checkpoints[slot] ^= current. Self-inverse: the same call releases the copy.
void bennett_checkpoint_copy(VmState& vm, size_t slot);

// Hierarchical simulation of k^n segments of seg_len steps each. A pebble
// placement runs one segment forward from the parent checkpoint, XOR-copies
// the result, and uncomputes the segment; a pebble removal is the same
// micro-op sequence (the XOR clears the slot). capacity_override forces a
// smaller checkpoint pool, mainly to exercise CapacityExceeded.
SimRun simulate_bennett(const IrrevMachine& m, uint64_t init, int k, int n, uint64_t seg_len,
                        size_t capacity_override = 0);

// The same schedule realized over a chain oracle: one oracle query per pebble
// move (pebbling j queries q_{j-1}, unpebbling j queries q_{j-1}#q_j), with
// tape writes and erasures balanced against checkpoint memory.
SimRun simulate_bennett_chain(const oracle::GraphOracle& o, unsigned S, int k, int n,
                              size_t capacity_override = 0);

// The data-independent micro-op program behind simulate_bennett_chain;
// also replayed by the trace decompressor, which emulates the oracle.
struct ProgOp {
    Op op;
    uint32_t a = 0;
    uint32_t b = 0;
};
std::vector<ProgOp> bennett_chain_program(int k, int n, size_t* capacity_out = nullptr);
size_t bennett_capacity(int k, int n);

// Replays a trace against a state. Oracle queries are replayed from their
// recorded tapes; step events need the machine that produced them.
VmState replay_forward(const Trace& trace, VmState start, const IrrevMachine* m = nullptr);
VmState replay_backward(const Trace& trace, VmState end, const IrrevMachine* m = nullptr);

// Applies or undoes a single state-internal micro-op (anything except steps
// and oracle calls). The trace decompressor walks programs with these.
void apply_state_op(VmState& s, Op op, uint32_t a, uint32_t b);
void unapply_state_op(VmState& s, Op op, uint32_t a, uint32_t b);

// Binary state dump, also used as the configuration snapshot C_tau inside
// compressed trace descriptions.
std::vector<uint8_t> serialize_vmstate(const VmState& s);
VmState parse_vmstate(const std::vector<uint8_t>& bytes);

// Trace file: "width=<bits>" header, then "<clock> <op>[:<a>[:<b>]]" lines,
// oracle calls followed by the hex-rendered tapes before and after.
void save_trace(const std::string& path, const Trace& trace);
Trace load_trace(const std::string& path);

}  // namespace revlab::revsim
