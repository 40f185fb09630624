#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "revlab/oracle.hpp"
#include "revlab/pebble.hpp"
#include "revlab/revsim.hpp"

// Reads pebble games off oracle-query logs, and turns that reading into a
// compression argument: a run that holds p chain nodes at time tau can be
// described by its state snapshot plus, per held node, just a pointer to the
// nearby query that reveals the node's value, instead of the value itself.

namespace revlab::analysis {

struct RuleViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ReconstructionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QueryEvent {
    uint64_t time = 0;
    std::string before;  // tape at the start of the query; this is the query string
    std::string after;
    bool operator==(const QueryEvent&) const = default;
};

std::vector<QueryEvent> query_events(const revsim::Trace& trace);

enum class Direction : uint8_t { Forward = 0, Backward = 1 };

// Why a node counts as pebbled in an interval: the nearest query involving it
// on that side, classified 1..3. Backward (prev) cases: 1 = q_{j-1},
// 2 = q_j, 3 = q_j#q_{j+1}. Forward (next) cases: 1 = q_j, 2 = q_j#q_{j+1},
// 3 = q_{j-1}#q_j. The final node only counts under backward 1 / forward 3.
struct Justification {
    Direction dir = Direction::Forward;
    uint8_t tag = 0;
    uint64_t query_time = 0;
};

struct NodeStatus {
    bool pebbled = false;
    std::optional<Justification> backward;  // from the most recent involving query
    std::optional<Justification> forward;   // from the most imminent involving query
};

// Pebbled flags are constant between queries; interval i covers the times
// after event i-1 and up to (not including) event i, with interval 0 before
// everything and interval events.size() after everything.
struct PebbleTimeline {
    std::vector<uint64_t> event_times;
    std::vector<std::vector<NodeStatus>> intervals;  // [interval][node-1]
    size_t interval_at(uint64_t tau) const;
};

PebbleTimeline build_timeline(const std::vector<QueryEvent>& events, const oracle::Chain& chain);

std::set<int> pebbled_at(const std::vector<QueryEvent>& events, const oracle::Chain& chain,
                         uint64_t tau);

// The move reading of a query log: a move exactly when the pebbled set
// changes, replayed against the game rules. Throws RuleViolation when a query
// changes more than one node, starts from a pebbled position, or makes an
// illegal move.
std::vector<pebble::Move> trace_to_moves(const std::vector<QueryEvent>& events,
                                         const oracle::Chain& chain);

struct DescTriple {
    uint32_t j = 0;    // node index
    int64_t dtau = 0;  // micro-op clock offset of the justifying query, relative to tau
    uint8_t tag = 0;
    bool operator==(const DescTriple&) const = default;
};

struct Description {
    std::vector<uint8_t> config_snapshot;  // serialized VmState at tau
    Direction dir = Direction::Forward;
    std::string x_prime;     // nodes not justified in dir, concatenated in index order
    std::vector<DescTriple> triples;
    std::string extra_bits;  // tail of x beyond the node region
};

// The re-simulation context: enough to rebuild the micro-op program (which is
// data-independent) plus a table for sub-width query strings. Chains are
// generated at full width so the table is empty by default, but the
// decompressor consults it where the algorithm calls for it.
struct MachineContext {
    int k = 2;
    int n = 0;
    unsigned S = 0;
    std::map<std::string, std::string> small_succ;
};

Direction majority_direction(const std::vector<QueryEvent>& events, const oracle::Chain& chain,
                             uint64_t tau);

// Builds the description of x = chain.concat() + extra_bits from the run's
// trace: snapshot at tau, plus one (j, dtau, tag) triple per node pebbled at
// tau whose justifying query lies in direction dir.
Description compress(const revsim::SimRun& run, const oracle::Chain& chain, uint64_t tau,
                     Direction dir, const std::string& extra_bits = "");

// Reconstructs x by re-simulating the program from the snapshot in the stored
// direction, answering oracle calls from the node table as it fills in.
std::string decompress(const Description& d, const MachineContext& ctx);

std::vector<uint8_t> serialize_description(const Description& d);
Description parse_description(const std::vector<uint8_t>& bytes);

// Component sizes in bits, in wire order, for the --report-sizes output.
std::vector<std::pair<std::string, uint64_t>> description_sizes(const Description& d);

// A total expander from binary descriptions to strings. Anything malformed
// expands to the empty string.
struct DescriptionSystem {
    std::string name;
    std::function<std::string(const std::string&)> expand;
};

DescriptionSystem constant_system();
DescriptionSystem identity_system();
// (j, k, x'): re-insert a copy of node j at position k. Index fields are
// index_bits wide, zero-based on the wire.
DescriptionSystem duplicate_splice_system(unsigned S, unsigned index_bits);
// (j, x'): insert the all-zero node at position j.
DescriptionSystem zero_collision_system(unsigned S, unsigned index_bits);
// Wire-format Description fed through decompress.
DescriptionSystem trace_system(const MachineContext& ctx);
// (j, dtau, tag, x'): one node recovered by simulating forward from the
// program's known initial state.
DescriptionSystem initial_pebble_system(const MachineContext& ctx);

// Lexicographically least length-ell string no shorter description expands
// to. Counting guarantees one exists.
std::string find_incompressible(const DescriptionSystem& sys, unsigned ell);

struct SpliceDescription {
    uint32_t j = 0;
    uint32_t k = 0;
    std::string x_prime;
    bool operator==(const SpliceDescription&) const = default;
};

// First (j, k), j < k, with equal width-S nodes in x; x' is x with the k-th
// node spliced out. nullopt when all nodes are distinct.
std::optional<SpliceDescription> describe_duplicate(const std::string& x, unsigned S);

// State snapshot size in bits at micro-op clock tau, next to the p*S floor
// that pebbled nodes alone impose.
struct SnapshotSizing {
    uint64_t snapshot_bits = 0;
    uint64_t pebbled_nodes = 0;
    uint64_t floor_bits = 0;  // pebbled_nodes * S
    double ratio_to_quarter_ps = 0.0;
};
SnapshotSizing snapshot_sizing(const revsim::SimRun& run, const oracle::Chain& chain, uint64_t tau);

void save_description(const std::string& path, const Description& d);
Description load_description(const std::string& path);

}  // namespace revlab::analysis
