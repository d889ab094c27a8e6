#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "qrr/expr.hpp"
#include "qrr/registry.hpp"
#include "qrr/report.hpp"

namespace {

using namespace qrr;

// exit codes: 0 all PASS, 1 some FAIL/ERROR, 2 usage or configuration error
constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

void write_output(const std::string& path, const std::string& doc) {
    if (path.empty() || path == "-") {
        std::cout << doc;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write to '" + path + "'");
    out << doc;
}

Environment parse_env(const Ctx& ctx, const std::vector<std::string>& sets) {
    Environment env;
    for (const auto& s : sets) {
        auto eq = s.find('=');
        if (eq == std::string::npos || eq != 1 || (s[0] != 'x' && s[0] != 'y'))
            throw ConfigError("--set expects x=<monomial> or y=<monomial>, got '" + s + "'");
        MonoExpr m = parse_mono(s.substr(eq + 1));
        Monomial mono = m.monomial(ctx);
        if (mono.xexp != Exp{0} || mono.yexp != Exp{0})
            throw ConfigError("--set values must be monomials in q alone, got '" + s + "'");
        env.assign(s[0], mono);
    }
    return env;
}

void print_report(const VerificationReport& rep) {
    std::string name = rep.id;
    if (rep.m) name += "(m=" + std::to_string(*rep.m) + ")";
    std::cout << name << "  order " << rep.order << "  " << status_str(rep.status);
    if (!rep.environment.empty() && rep.environment != "symbolic")
        std::cout << "  [" << rep.environment << "]";
    std::cout << "  (" << rep.elapsed_ms << " ms)\n";
    if (!rep.message.empty()) std::cout << "  " << rep.message << "\n";
}

int cmd_list(bool as_json) {
    const auto& reg = Registry::instance();
    if (as_json) {
        // keep the listing shape close to the verify reports
        std::string out = "[\n";
        bool first = true;
        for (const auto& r : reg.records()) {
            if (!first) out += ",\n";
            first = false;
            out += "  {\"id\": \"" + r.id + "\", \"order\": " + std::to_string(r.default_order) +
                   ", \"summary\": \"" + r.summary + "\"}";
        }
        out += "\n]\n";
        std::cout << out;
        return kExitPass;
    }
    for (const auto& r : reg.records()) {
        std::cout << r.id;
        if (r.m_range)
            std::cout << "  m in [" << r.m_range->first << ", " << r.m_range->second
                      << "] (" << r.m_meaning << ")";
        std::cout << "\n    " << r.summary << "\n    source: " << r.source
                  << "\n    params:";
        if (r.uses_x) std::cout << " x";
        if (r.uses_y) std::cout << " y";
        if (!r.uses_x && !r.uses_y) std::cout << " none";
        std::cout << "  default order: " << r.default_order << "  tags:";
        for (const auto& t : r.tags) std::cout << " " << t;
        std::cout << "\n";
    }
    return kExitPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qrr — exact verification of Rogers–Ramanujan type q-series identities"};
    app.require_subcommand(1);

    int denom = 2;
    app.add_option("--denominator", denom,
                   "exponent denominator D; exponents are multiples of 1/D (default 2)");

    auto* list_cmd = app.add_subcommand("list", "list the identity catalog");
    bool list_json = false;
    list_cmd->add_flag("--json", list_json, "machine-readable listing");

    auto* verify_cmd = app.add_subcommand("verify", "verify one identity");
    std::string verify_id;
    int verify_order = -1;
    int verify_m = std::numeric_limits<int>::min();
    std::vector<std::string> verify_sets;
    std::string verify_json;
    verify_cmd->add_option("--id", verify_id, "identity id (see `list`)")->required();
    verify_cmd->add_option("--order", verify_order,
                           "truncation order in whole q-powers (default: the record's)");
    verify_cmd->add_option("--set", verify_sets,
                           "parameter assignment, e.g. --set x=q --set y=q^1/2");
    verify_cmd->add_option("--m", verify_m, "knob value for knobbed families");
    verify_cmd->add_option("--json", verify_json, "write a JSON report to this path ('-' = stdout)");

    auto* all_cmd = app.add_subcommand("verify-all", "verify the whole catalog");
    int all_order = -1;
    std::string all_json;
    unsigned all_jobs = 0;
    all_cmd->add_option("--order", all_order,
                        "truncation order; heavy entries stay capped at their defaults");
    all_cmd->add_option("--json", all_json, "write the JSON document to this path ('-' = stdout)");
    all_cmd->add_option("--jobs", all_jobs, "worker threads (default: hardware concurrency)");

    auto* expand_cmd = app.add_subcommand("expand", "expand a Pochhammer-product expression");
    std::string expand_expr;
    int expand_order = 0;
    bool expand_json_flag = false;
    expand_cmd->add_option("--expr", expand_expr, "e.g. \"1/(q,q^4;q^5)_inf\"")->required();
    expand_cmd->add_option("--order", expand_order, "truncation order in whole q-powers")
        ->required();
    expand_cmd->add_flag("--json", expand_json_flag, "JSON output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (denom < 1) throw qrr::ConfigError("--denominator must be >= 1");
        const auto& reg = Registry::instance();

        if (list_cmd->parsed()) return cmd_list(list_json);

        if (verify_cmd->parsed()) {
            const IdentityRecord& rec = reg.get(verify_id);
            int order = verify_order >= 0 ? verify_order : rec.default_order;
            Ctx ctx{denom, Exp{static_cast<std::int64_t>(order) * denom}};
            Environment env = parse_env(ctx, verify_sets);
            std::optional<int> m;
            if (verify_m != std::numeric_limits<int>::min()) m = verify_m;
            VerificationReport rep = reg.verify(verify_id, order, env, m, denom);
            print_report(rep);
            if (!verify_json.empty()) write_output(verify_json, report_json(rep));
            return rep.status == Status::Pass ? kExitPass : kExitFail;
        }

        if (all_cmd->parsed()) {
            std::optional<int> order;
            if (all_order >= 0) order = all_order;
            auto reps = reg.verify_all(order, denom, all_jobs);
            bool all_pass = true;
            for (const auto& rep : reps) {
                print_report(rep);
                all_pass = all_pass && rep.status == Status::Pass;
            }
            std::cout << reps.size() << " checks, "
                      << (all_pass ? "all PASS" : "some not passing") << "\n";
            if (!all_json.empty()) write_output(all_json, reports_json(reps, order, denom));
            return all_pass ? kExitPass : kExitFail;
        }

        if (expand_cmd->parsed()) {
            if (expand_order < 0) throw ConfigError("--order must be >= 0");
            Ctx ctx{denom, Exp{static_cast<std::int64_t>(expand_order) * denom}};
            ExprAst ast = parse_expr(expand_expr);
            QSeries s = eval_expr(ctx, ast);
            if (expand_json_flag) {
                std::cout << expansion_json(ast.str(), expand_order, denom, s);
            } else {
                for (const auto& [e, p] : s.terms())
                    std::cout << "q^" << exp_str(e, denom) << ": " << p.str(denom) << "\n";
                if (s.terms().empty()) std::cout << "0\n";
            }
            return kExitPass;
        }
    } catch (const qrr::ParseError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const qrr::InversionError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const qrr::UnsupportedError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const qrr::ConfigError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const qrr::Error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}
