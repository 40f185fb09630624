#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

// Self-reversible oracles over tapes drawn from {0,1,#}*. A graph oracle built
// from a partial successor map f sends b to b#f(b), sends b#f(b) back to b,
// and leaves every other tape unchanged, so calling it twice is the identity.

namespace revlab::oracle {

struct Infeasible : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class TapeForm : uint8_t { Empty, Node, Pair, Other };

struct ParsedTape {
    TapeForm form = TapeForm::Empty;
    std::string_view left;   // the node, or the half before '#'
    std::string_view right;  // the half after '#'
};

ParsedTape parse_tape(std::string_view tape);

struct GraphOracle {
    std::unordered_map<std::string, std::string> succ;
    std::string call(const std::string& tape) const;
};

// q_1..q_t, pairwise distinct and distinct from the start node q_0 = 0^S.
struct Chain {
    unsigned node_width = 0;
    std::vector<std::string> nodes;
    uint64_t seed = 0;
    std::string start() const { return std::string(node_width, '0'); }
    size_t length() const { return nodes.size(); }
    // Concatenation q_1..q_t: the hidden string the analysis recovers.
    std::string concat() const;
};

struct Bounds {
    uint64_t S = 1;
    uint64_t T = 1;
};

// Seeded sampling with rejection until all nodes are distinct. Throws
// Infeasible when t+1 labels cannot fit in {0,1}^S.
std::pair<GraphOracle, Chain> build_chain_oracle(unsigned S, size_t t, uint64_t seed);

GraphOracle oracle_from_chain(const Chain& chain);

struct SeparatorResult {
    bool accept = false;
    uint64_t oracle_calls = 0;
    std::string final_node;
};

// The pointer-chasing decider: start from 0^S, follow successor links for up
// to floor(T/S) rounds (one extending call plus one restoring call each),
// accept iff the last node reached begins with 1.
SeparatorResult separator_decide(const GraphOracle& o, Bounds bounds);

// Read-only input of 2^b words of b bits each, exposed through two
// self-reversible tape operations.
struct InputRom {
    unsigned word_width = 0;
    std::vector<std::string> words;
};

// Empty tape <-> the word width written in binary; all other tapes fixed.
std::string rom_get_size(const InputRom& rom, const std::string& tape);
// Address a <-> the pair a#I[a]; all other tapes fixed.
std::string rom_access_word(const InputRom& rom, const std::string& tape);
// First bit of the t-fold iterated lookup I[I[...I[0^b]...]], computed by a
// direct irreversible chase.
char rom_result_bit(const InputRom& rom, uint64_t t);

// The encoding that makes the ROM result bit coincide with separator_decide:
// I[q_{j-1}] = q_j, every other word 0^b.
InputRom rom_from_chain(const Chain& chain);

// Chain file: "S=<bits> t=<len> seed=<u64>" header, one hex node per line.
void save_chain(const std::string& path, const Chain& chain);
Chain load_chain(const std::string& path);

// ROM file: "b=<bits>" header, then 2^b hex words.
void save_rom(const std::string& path, const InputRom& rom);
InputRom load_rom(const std::string& path);

}  // namespace revlab::oracle
