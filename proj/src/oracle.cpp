#include "revlab/oracle.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <unordered_set>

#include "revlab/bits.hpp"

namespace revlab::oracle {

ParsedTape parse_tape(std::string_view tape) {
    if (tape.empty()) return {TapeForm::Empty, {}, {}};
    size_t hash = std::string_view::npos;
    for (size_t i = 0; i < tape.size(); ++i) {
        char c = tape[i];
        if (c == '#') {
            if (hash != std::string_view::npos) return {TapeForm::Other, {}, {}};
            hash = i;
        } else if (c != '0' && c != '1') {
            return {TapeForm::Other, {}, {}};
        }
    }
    if (hash == std::string_view::npos) return {TapeForm::Node, tape, {}};
    if (hash == 0 || hash + 1 == tape.size()) return {TapeForm::Other, {}, {}};
    return {TapeForm::Pair, tape.substr(0, hash), tape.substr(hash + 1)};
}

std::string GraphOracle::call(const std::string& tape) const {
    ParsedTape p = parse_tape(tape);
    if (p.form == TapeForm::Node) {
        auto it = succ.find(tape);
        if (it != succ.end()) return tape + "#" + it->second;
    } else if (p.form == TapeForm::Pair) {
        auto it = succ.find(std::string(p.left));
        if (it != succ.end() && it->second == p.right) return std::string(p.left);
    }
    return tape;
}

std::string Chain::concat() const {
    std::string x;
    x.reserve(nodes.size() * node_width);
    for (const std::string& q : nodes) x += q;
    return x;
}

std::pair<GraphOracle, Chain> build_chain_oracle(unsigned S, size_t t, uint64_t seed) {
    if (S < 1 || S > 64) throw Infeasible("node width must be between 1 and 64 bits");
    if (S < 64 && t + 1 > (uint64_t(1) << S))
        throw Infeasible("a chain of " + std::to_string(t) + " nodes plus the start does not fit in " +
                         std::to_string(S) + " bits");
    Chain chain{S, {}, seed};
    std::mt19937_64 rng(splitmix64(seed));
    std::unordered_set<uint64_t> used{0};  // 0^S is reserved for the start
    uint64_t mask = width_mask(S);
    chain.nodes.reserve(t);
    for (size_t i = 0; i < t; ++i) {
        uint64_t v;
        do {
            v = rng() & mask;
        } while (used.count(v));
        used.insert(v);
        chain.nodes.push_back(to_bits(v, S));
    }
    return {oracle_from_chain(chain), chain};
}

GraphOracle oracle_from_chain(const Chain& chain) {
    GraphOracle o;
    std::string prev = chain.start();
    for (const std::string& q : chain.nodes) {
        o.succ.emplace(prev, q);
        prev = q;
    }
    return o;
}

SeparatorResult separator_decide(const GraphOracle& o, Bounds bounds) {
    if (bounds.S < 1 || bounds.S > 4096 || bounds.T < bounds.S)
        throw Infeasible("separator bounds require 1 <= S <= T");
    SeparatorResult r;
    std::string b(size_t(bounds.S), '0');
    uint64_t rounds = bounds.T / bounds.S;
    for (uint64_t i = 0; i < rounds; ++i) {
        std::string tape = o.call(b);
        ++r.oracle_calls;
        ParsedTape p = parse_tape(tape);
        if (p.form != TapeForm::Pair || p.left != b) break;  // no outgoing link: quit early
        std::string c(p.right);
        tape = o.call(tape);  // restore the tape to b before reusing it
        ++r.oracle_calls;
        b = c;
    }
    r.accept = b[0] == '1';
    r.final_node = std::move(b);
    return r;
}

std::string rom_get_size(const InputRom& rom, const std::string& tape) {
    std::string width;
    for (unsigned v = rom.word_width; v > 0; v >>= 1) width.insert(width.begin(), char('0' + (v & 1)));
    if (width.empty()) width = "0";
    if (tape.empty()) return width;
    if (tape == width) return "";
    return tape;
}

std::string rom_access_word(const InputRom& rom, const std::string& tape) {
    unsigned b = rom.word_width;
    ParsedTape p = parse_tape(tape);
    if (p.form == TapeForm::Node && p.left.size() == b) {
        uint64_t a = from_bits(p.left);
        return tape + "#" + rom.words.at(size_t(a));
    }
    if (p.form == TapeForm::Pair && p.left.size() == b) {
        uint64_t a = from_bits(p.left);
        if (rom.words.at(size_t(a)) == p.right) return std::string(p.left);
    }
    return tape;
}

char rom_result_bit(const InputRom& rom, uint64_t t) {
    std::string a(rom.word_width, '0');
    for (uint64_t i = 0; i < t; ++i) a = rom.words.at(size_t(from_bits(a)));
    return a[0];
}

InputRom rom_from_chain(const Chain& chain) {
    unsigned b = chain.node_width;
    if (b > 24) throw Infeasible("ROM encoding limited to 24-bit words");
    InputRom rom{b, std::vector<std::string>(size_t(1) << b, std::string(b, '0'))};
    std::string prev = chain.start();
    for (const std::string& q : chain.nodes) {
        rom.words[size_t(from_bits(prev))] = q;
        prev = q;
    }
    return rom;
}

void save_chain(const std::string& path, const Chain& chain) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << "S=" << chain.node_width << " t=" << chain.nodes.size() << " seed=" << chain.seed << "\n";
    for (const std::string& q : chain.nodes) out << to_hex(from_bits(q), chain.node_width) << "\n";
    if (!out) throw IoError("short write to " + path);
}

Chain load_chain(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::string header;
    std::getline(in, header);
    unsigned S = 0;
    size_t t = 0;
    uint64_t seed = 0;
    if (std::sscanf(header.c_str(), "S=%u t=%zu seed=%llu", &S, &t,
                    reinterpret_cast<unsigned long long*>(&seed)) != 3)
        throw IoError("bad chain header in " + path + ": " + header);
    Chain chain{S, {}, seed};
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        chain.nodes.push_back(to_bits(from_hex(line), S));
    }
    if (chain.nodes.size() != t) throw IoError("chain length mismatch in " + path);
    return chain;
}

void save_rom(const std::string& path, const InputRom& rom) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << "b=" << rom.word_width << "\n";
    for (const std::string& w : rom.words) out << to_hex(from_bits(w), rom.word_width) << "\n";
    if (!out) throw IoError("short write to " + path);
}

InputRom load_rom(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::string header;
    std::getline(in, header);
    unsigned b = 0;
    if (std::sscanf(header.c_str(), "b=%u", &b) != 1)
        throw IoError("bad ROM header in " + path + ": " + header);
    InputRom rom{b, {}};
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        rom.words.push_back(to_bits(from_hex(line), b));
    }
    if (rom.words.size() != size_t(1) << b) throw IoError("ROM word count mismatch in " + path);
    return rom;
}

}  // namespace revlab::oracle
