#include "poissonlab/symbols.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <unordered_map>

namespace poissonlab {

namespace {

struct Table {
    std::mutex mu;
    std::deque<std::string> names;  // deque: var_name hands out references
    std::unordered_map<std::string, Var> ids;

    Table() {
        // Parameters sort before chart variables; this keeps printed
        // coefficients ahead of the field variables they multiply.
        std::vector<std::string> seed = {"A", "B", "C", "D", "E", "G", "H", "K", "L", "P", "Q", "R", "S", "T"};
        for (int i = 0; i <= 5; ++i) seed.push_back("F" + std::to_string(i));
        for (const char* s : {"a", "b", "c", "d", "e", "f", "g", "h", "k", "l", "m", "n", "p", "q", "r", "s", "u",
                              "v", "x", "y", "alpha", "beta", "delta", "lambda", "mu", "nu", "t"})
            seed.emplace_back(s);
        for (int i = 0; i <= 20; ++i) seed.push_back("t" + std::to_string(i));
        for (const char* pre : {"a", "b", "c", "d", "e", "f", "g", "h", "x", "y", "r", "s", "v", "w"})
            for (int i = 0; i <= 13; ++i) seed.push_back(std::string(pre) + std::to_string(i));
        for (const char* s : {"z", "w", "xi", "z1", "z2", "z3", "z4", "zp", "wp", "xip"}) seed.emplace_back(s);
        for (auto& s : seed)
            if (!ids.count(s)) {
                ids.emplace(s, static_cast<Var>(names.size()));
                names.push_back(s);
            }
    }
};

Table& table() {
    static Table t;
    return t;
}

}  // namespace

Var intern(const std::string& name) {
    auto& t = table();
    std::lock_guard<std::mutex> lock(t.mu);
    auto it = t.ids.find(name);
    if (it != t.ids.end()) return it->second;
    Var v = static_cast<Var>(t.names.size());
    t.names.push_back(name);
    t.ids.emplace(name, v);
    return v;
}

const std::string& var_name(Var v) {
    auto& t = table();
    std::lock_guard<std::mutex> lock(t.mu);
    if (v < 0 || static_cast<std::size_t>(v) >= t.names.size()) throw UnknownVariable("bad variable id");
    return t.names[static_cast<std::size_t>(v)];
}

bool is_interned(const std::string& name) {
    auto& t = table();
    std::lock_guard<std::mutex> lock(t.mu);
    return t.ids.count(name) > 0;
}

VarRegistry::VarRegistry(const std::vector<std::string>& chart, const std::vector<std::string>& params) {
    for (auto& c : chart) {
        Var v = intern(c);
        if (std::find(chart_.begin(), chart_.end(), v) != chart_.end())
            throw std::invalid_argument("duplicate chart variable " + c);
        chart_.push_back(v);
    }
    for (auto& p : params) add_param(p);
}

bool VarRegistry::is_chart(Var v) const { return std::find(chart_.begin(), chart_.end(), v) != chart_.end(); }
bool VarRegistry::is_param(Var v) const { return std::find(params_.begin(), params_.end(), v) != params_.end(); }

void VarRegistry::add_param(const std::string& name) {
    Var v = intern(name);
    if (is_chart(v)) throw std::invalid_argument("variable " + name + " is both chart variable and parameter");
    if (!is_param(v)) params_.push_back(v);
}

}  // namespace poissonlab
