#include "qrr/report.hpp"

#include <json.hpp>

namespace qrr {

namespace {

using nlohmann::json;

json poly_terms(const ParamPoly& p, int denom) {
    json terms = json::array();
    for (const auto& t : p.terms())
        terms.push_back({t.coeff.get_str(), t.xexp.units, t.yexp.units, denom});
    return terms;
}

json exponent_pair(Exp e, int denom) { return json::array({e.units, denom}); }

json report_obj(const VerificationReport& rep) {
    json j;
    j["id"] = rep.id;
    j["order"] = rep.order;
    j["denominator"] = rep.denom;
    if (rep.m)
        j["m"] = *rep.m;
    else
        j["m"] = nullptr;
    j["environment"] = rep.environment;
    j["status"] = status_str(rep.status);
    if (rep.mismatch) {
        j["mismatch"] = {{"exponent", exponent_pair(rep.mismatch->exponent, rep.denom)},
                         {"lhs", poly_terms(rep.mismatch->lhs, rep.denom)},
                         {"rhs", poly_terms(rep.mismatch->rhs, rep.denom)}};
    } else {
        j["mismatch"] = nullptr;
    }
    j["message"] = rep.message;
    j["elapsed_ms"] = rep.elapsed_ms;
    return j;
}

} // namespace

std::string report_json(const VerificationReport& rep) {
    return report_obj(rep).dump(2) + "\n";
}

std::string reports_json(std::span<const VerificationReport> reps,
                         std::optional<int> order, int denom) {
    json j;
    j["command"] = "verify-all";
    if (order)
        j["order"] = *order;
    else
        j["order"] = nullptr;
    j["denominator"] = denom;
    int passed = 0, failed = 0, errors = 0;
    json results = json::array();
    for (const auto& r : reps) {
        switch (r.status) {
            case Status::Pass: ++passed; break;
            case Status::Fail: ++failed; break;
            case Status::Error: ++errors; break;
        }
        results.push_back(report_obj(r));
    }
    j["passed"] = passed;
    j["failed"] = failed;
    j["errors"] = errors;
    j["results"] = std::move(results);
    return j.dump(2) + "\n";
}

std::string expansion_json(const std::string& expr, int order, int denom, const QSeries& s) {
    json j;
    j["command"] = "expand";
    j["expr"] = expr;
    j["order"] = order;
    j["denominator"] = denom;
    json terms = json::array();
    for (const auto& [e, p] : s.terms())
        terms.push_back({{"exponent", exponent_pair(e, denom)}, {"coeff", poly_terms(p, denom)}});
    j["terms"] = std::move(terms);
    return j.dump(2) + "\n";
}

} // namespace qrr
