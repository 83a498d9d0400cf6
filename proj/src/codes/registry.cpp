#include <mutex>
#include "qecco/codes/registry.hpp"

#include <map>
#include <stdexcept>

namespace qecco {

namespace {

StabilizerSpec spec_3_1_1() {
    return StabilizerSpec({"ZZI", "IZZ"}, "XXX", "ZZZ");
}

// The four-qubit approximate code: |0L> = (|0000>+|1111>)/sqrt2,
// |1L> = (|1100>+|0011>)/sqrt2.
StabilizerSpec spec_4_1_2() {
    return StabilizerSpec({"XXXX", "ZZII", "IIZZ"}, "XXII", "ZIZI");
}

StabilizerSpec spec_5_1_3() {
    return StabilizerSpec({"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"}, "XXXXX", "ZZZZZ");
}

StabilizerSpec spec_7_1_3() {
    return StabilizerSpec(
        {"XIXIXIX", "IXXIIXX", "IIIXXXX", "ZIZIZIZ", "IZZIIZZ", "IIIZZZZ"},
        "XXXXXXX", "ZZZZZZZ");
}

StabilizerSpec spec_9_1_3() {
    return StabilizerSpec(
        {"ZZIIIIIII", "IZZIIIIII", "IIIZZIIII", "IIIIZZIII", "IIIIIIZZI", "IIIIIIIZZ",
         "XXXXXXIII", "IIIXXXXXX"},
        "ZIIZIIZII", "XXXXXXXXX");
}

// Quantum Reed-Muller code on the 15 nonzero points of F_2^4. Qubit q hosts
// point q+1; the coordinate functions and their pairwise products give the
// X- and Z-type generators.
StabilizerSpec spec_15_1_3() {
    auto support = [](unsigned mask) {
        std::string s(15, 'I');
        for (unsigned p = 1; p <= 15; ++p) {
            if ((p & mask) == mask) s[p - 1] = '#';
        }
        return s;
    };
    auto with = [](std::string pattern, char op) {
        for (auto& c : pattern) c = (c == '#') ? op : 'I';
        return pattern;
    };
    std::vector<std::string> gens;
    for (unsigned j = 0; j < 4; ++j) gens.push_back(with(support(1u << j), 'X'));
    for (unsigned j = 0; j < 4; ++j) gens.push_back(with(support(1u << j), 'Z'));
    for (unsigned j = 0; j < 4; ++j) {
        for (unsigned k = j + 1; k < 4; ++k) {
            gens.push_back(with(support((1u << j) | (1u << k)), 'Z'));
        }
    }
    return StabilizerSpec(gens, std::string(15, 'X'), std::string(15, 'Z'));
}

struct Entry {
    CodeInfo info;
    StabilizerSpec (*make_spec)();
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> table = {
        {{"bare", "", 1, 1, true, "single unencoded qubit"}, nullptr},
        {{"3_1_1", "bitflip", 3, 1, true, ""}, &spec_3_1_1},
        {{"4_1_2", "approximate", 4, 2, true, ""}, &spec_4_1_2},
        {{"5_1_3", "perfect", 5, 3, true, ""}, &spec_5_1_3},
        {{"7_1_3", "steane", 7, 3, true, ""}, &spec_7_1_3},
        {{"9_1_3", "shor", 9, 3, true, ""}, &spec_9_1_3},
        {{"10_1_4", "short_dodeca", 10, 4, false,
          "no stabilizer tableau sourced; registry entry reserved"}, nullptr},
        {{"11_1_5", "dodeca", 11, 5, false,
          "no stabilizer tableau sourced; registry entry reserved"}, nullptr},
        {{"15_1_3", "reed_muller", 15, 3, true, ""}, &spec_15_1_3},
    };
    return table;
}

const Entry* find_entry(const std::string& name) {
    for (const auto& e : entries()) {
        if (e.info.name == name || (!e.info.alias.empty() && e.info.alias == name)) return &e;
    }
    return nullptr;
}

}  // namespace

const std::vector<CodeInfo>& list_codes() {
    static const std::vector<CodeInfo> infos = [] {
        std::vector<CodeInfo> out;
        for (const auto& e : entries()) out.push_back(e.info);
        return out;
    }();
    return infos;
}

bool code_available(const std::string& name) {
    const Entry* e = find_entry(name);
    return e != nullptr && e->info.available;
}

Code make_code(const std::string& name) {
    const Entry* e = find_entry(name);
    if (!e) throw std::invalid_argument("unknown code: " + name);
    if (!e->info.available) {
        throw std::invalid_argument("code " + name + " is unavailable: " + e->info.note);
    }
    if (e->info.name == "bare") return Code::bare();
    // Encoders are synthesized once and cached; they are deterministic.
    static std::mutex cache_mutex;
    static std::map<std::string, Code> cache;
    std::lock_guard lock(cache_mutex);
    auto it = cache.find(e->info.name);
    if (it == cache.end()) {
        Code code = Code::from_spec(e->info.name, e->info.distance, e->make_spec());
        it = cache.emplace(e->info.name, std::move(code)).first;
    }
    return it->second;
}

const std::array<const char*, 8>& ground_truth_gate_order() {
    static const std::array<const char*, 8> order = {"X", "Z", "H", "S", "T", "CX", "CZ", "CS"};
    return order;
}

const std::vector<GroundTruthRow>& ground_truth_table() {
    using R = Realizability;
    static const std::vector<GroundTruthRow> table = {
        {"3_1_1", {R::Strict, R::Strict, R::None, R::Transversal, R::Transversal, R::Strict,
                   R::Strict, R::Transversal}, false},
        {"4_1_2", {R::Transversal, R::Transversal, R::None, R::None, R::None, R::Strict, R::None,
                   R::None}, false},
        {"5_1_3", {R::Strict, R::Strict, R::None, R::None, R::None, R::None, R::None, R::None},
         false},
        {"7_1_3", {R::Strict, R::Strict, R::Strict, R::Transversal, R::None, R::Strict, R::Strict,
                   R::None}, false},
        {"9_1_3", {R::Transversal, R::Transversal, R::None, R::None, R::None, R::Strict, R::None,
                   R::None}, true},
        {"10_1_4", {R::Transversal, R::Transversal, R::None, R::None, R::None, R::None, R::None,
                    R::None}, false},
        {"11_1_5", {R::Transversal, R::Transversal, R::None, R::None, R::None, R::None, R::None,
                    R::None}, false},
        {"15_1_3", {R::Strict, R::Strict, R::None, R::Transversal, R::Transversal, R::Excluded,
                    R::Excluded, R::Excluded}, false},
    };
    return table;
}

std::optional<Realizability> ground_truth(const std::string& code, const std::string& gate) {
    const Entry* e = find_entry(code);
    const std::string canonical = e ? e->info.name : code;
    for (const auto& row : ground_truth_table()) {
        if (row.code != canonical) continue;
        const auto& order = ground_truth_gate_order();
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (gate == order[i]) return row.gates[i];
        }
    }
    return std::nullopt;
}

}  // namespace qecco
