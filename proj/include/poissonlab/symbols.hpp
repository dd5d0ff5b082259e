#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace poissonlab {

using Var = int;

class UnknownVariable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Process-wide symbol interning. Ids are assigned in first-use order; a fixed
// set of common names is interned up front so orderings never depend on the
// order in which a session happens to mention them.
Var intern(const std::string& name);
const std::string& var_name(Var v);
bool is_interned(const std::string& name);

// Ordered, disjoint lists of chart variables and formal parameters.
class VarRegistry {
public:
    VarRegistry() = default;
    VarRegistry(const std::vector<std::string>& chart, const std::vector<std::string>& params);

    const std::vector<Var>& chart_vars() const { return chart_; }
    const std::vector<Var>& param_vars() const { return params_; }
    bool is_chart(Var v) const;
    bool is_param(Var v) const;
    bool contains(Var v) const { return is_chart(v) || is_param(v); }
    void add_param(const std::string& name);

private:
    std::vector<Var> chart_;
    std::vector<Var> params_;
};

}  // namespace poissonlab
