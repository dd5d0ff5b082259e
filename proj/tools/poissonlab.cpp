#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "poissonlab/expr.hpp"
#include "poissonlab/hopf.hpp"
#include "poissonlab/report.hpp"
#include "poissonlab/ruled.hpp"

using namespace poissonlab;

namespace {

enum Exit { kOk = 0, kFailed = 1, kBadInput = 2 };

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

void print_report(const Report& r, bool json) {
    if (json) {
        std::cout << Json{{"name", r.name}, {"ok", r.ok}, {"detail", r.detail}}.dump(2) << "\n";
        return;
    }
    std::cout << r.name << ": " << (r.ok ? "PASS" : "FAIL") << "\n";
    for (auto& [k, v] : r.detail.items()) {
        if (v.is_object()) {
            for (auto& [k2, v2] : v.items()) std::cout << "  " << k << "." << k2 << " = " << v2.dump() << "\n";
        } else {
            std::cout << "  " << k << " = " << v.dump() << "\n";
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Poisson deformations of compact complex surfaces: brackets, tables, certificates"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    // tables
    auto* tables = app.add_subcommand("tables", "Reproduce the classification tables");
    tables->require_subcommand(1);
    bool as_json = false, as_md = false;
    int m_max = 10, p = 2, degree = 0;
    std::uint64_t seed = 1;
    auto fmt_flags = [&](CLI::App* c) {
        auto* j = c->add_flag("--json", as_json, "JSON output");
        c->add_flag("--md", as_md, "Markdown output (default)")->excludes(j);
    };
    auto* t_ruled = tables->add_subcommand("ruled", "Rational ruled surfaces F_m");
    t_ruled->add_option("--m-max", m_max, "Largest m")->check(CLI::Range(0, 12));
    t_ruled->add_option("--seed", seed, "Seed for the sample structures");
    fmt_flags(t_ruled);
    auto* t_hopf = tables->add_subcommand("hopf", "Hopf surfaces");
    t_hopf->add_option("--p", p, "Exponent p for types III and IIa")->check(CLI::Range(2, 8));
    t_hopf->add_option("--degree", degree, "Truncation degree (default: POISSONLAB_DEGREE_CAP or p+3)");
    fmt_flags(t_hopf);
    auto* t_prod = tables->add_subcommand("products", "Products of curves and T x P1");
    fmt_flags(t_prod);

    // bracket
    auto* bracket = app.add_subcommand("bracket", "Schouten bracket of two fields");
    std::string lhs, rhs, chart_spec;
    bracket->add_option("a", lhs, "First field")->required();
    bracket->add_option("b", rhs, "Second field")->required();
    bracket->add_option("--chart", chart_spec, "Comma-separated chart variables (default: inferred)");

    // classify
    auto* classify_cmd = app.add_subcommand("classify", "Certificate for a Poisson structure");
    std::string manifold, poisson;
    classify_cmd->add_option("manifold", manifold, "F_m, hopf-iv, hopf-iii-p2, ..., ExP1, TxP1, ExE, T^n")->required();
    classify_cmd->add_option("--poisson", poisson, "The Poisson structure")->required();
    classify_cmd->add_option("--degree", degree, "Hopf truncation degree");

    // verify-certificate
    auto* reverify_cmd = app.add_subcommand("verify-certificate", "Re-check a certificate JSON file");
    std::string cert_file;
    reverify_cmd->add_option("file", cert_file, "Certificate file ('-' for stdin)")->required();

    // verify-family
    auto* family_cmd = app.add_subcommand("verify-family", "Check an explicit deformation family");
    std::string family;
    bool uncorrected = false;
    family_cmd->add_option("name", family, "Family name")->required()->check(CLI::IsMember(family_names()));
    family_cmd->add_flag("--uncorrected", uncorrected, "Leave out the correction terms");
    family_cmd->add_flag("--json", as_json, "JSON output");

    // mc-check
    auto* mc_cmd = app.add_subcommand("mc-check", "Maurer-Cartan defect of a solution");
    std::string mc_name;
    mc_cmd->add_option("name", mc_name, "Solution name")->required()->check(CLI::IsMember(mc_names()));
    mc_cmd->add_flag("--json", as_json, "JSON output");

    // report
    auto* report_cmd = app.add_subcommand("report", "Every table, family and solution as one JSON document");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*t_ruled) {
            Json t = ruled_table(m_max, seed);
            std::cout << (as_json ? t.dump(2) + "\n" : ruled_table_md(t));
        } else if (*t_hopf) {
            Json t = hopf_tables(p, degree);
            std::cout << (as_json ? t.dump(2) + "\n" : hopf_tables_md(t));
        } else if (*t_prod) {
            Json t = products_table();
            std::cout << (as_json ? t.dump(2) + "\n" : products_table_md(t));
        } else if (*bracket) {
            Chart c = chart_spec.empty() ? infer_chart({lhs, rhs}) : Chart("U", split_commas(chart_spec));
            std::cout << schouten_formed(parse_field(lhs, c), parse_field(rhs, c)).str() << "\n";
        } else if (*classify_cmd) {
            std::cout << classify(manifold, poisson, degree).to_json() << "\n";
        } else if (*reverify_cmd) {
            std::stringstream buf;
            if (cert_file == "-") {
                buf << std::cin.rdbuf();
            } else {
                std::ifstream in(cert_file);
                if (!in) throw std::invalid_argument("cannot read " + cert_file);
                buf << in.rdbuf();
            }
            std::string why;
            bool ok = reverify(Certificate::from_json(buf.str()), &why);
            std::cout << (ok ? "PASS" : "FAIL: " + why) << "\n";
            return ok ? kOk : kFailed;
        } else if (*family_cmd) {
            Report r = verify_named_family(family, uncorrected);
            print_report(r, as_json);
            return r.ok ? kOk : kFailed;
        } else if (*mc_cmd) {
            Report r = mc_check(mc_name);
            print_report(r, as_json);
            return r.ok ? kOk : kFailed;
        } else if (*report_cmd) {
            std::cout << full_report().dump(2) << "\n";
        }
    } catch (const SyntaxError& e) {
        std::cerr << "syntax error: " << e.what() << "\n";
        return kBadInput;
    } catch (const ConstraintViolation& e) {
        std::cerr << "constraint violated: " << e.what() << "\n";
        return kBadInput;
    } catch (const TruncationUnstable& e) {
        std::cerr << "truncation unstable: " << e.what() << "\n";
        return kFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    }
    return kOk;
}
