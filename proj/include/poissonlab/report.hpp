#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "poissonlab/obstruction.hpp"

namespace poissonlab {

// std::map-backed, so keys come out sorted and dumps are stable.
using Json = nlohmann::json;

Json certificate_json(const Certificate& c);

// Table reproductions. Structures on F_m are drawn from a fixed seed per m.
Json ruled_table(int m_max, std::uint64_t seed = 1);
Json hopf_tables(int p = 2, int D = 0);
Json products_table();
std::string ruled_table_md(const Json& t);
std::string hopf_tables_md(const Json& t);
std::string products_table_md(const Json& t);

// Manifold names: F_<m> (or F<m>), P1xP1, hopf-iv, hopf-iii[-p<k>], hopf-iia[-p<k>],
// hopf-iib, hopf-iic, ExP1, TxP1, ExE, T^<n> (or torus-<n>).
Certificate classify(const std::string& manifold, const std::string& poisson, int D = 0);
// Rebuilds the model from the certificate's manifold and lambda0: an
// Obstructed witness must verify, and reclassifying must give the same
// verdict and family.
bool reverify(const Certificate& c, std::string* why = nullptr, int D = 0);

struct Report {
    std::string name;
    bool ok = false;
    Json detail;
};

// f2, f3, f4, f5, hopf-iv, hopf-iii, hopf-iia, hopf-iib, hopf-iic, ep1, tp1
const std::vector<std::string>& family_names();
// With uncorrected, the correction terms are left out (the report should fail).
Report verify_named_family(const std::string& name, bool uncorrected = false);

// ep1, tp1, tp1-swap, torus-2, torus-3, torus-4
const std::vector<std::string>& mc_names();
Report mc_check(const std::string& name);

// Tables, family and MC reports in one document.
Json full_report();

}  // namespace poissonlab
