#include <doctest.h>

#include <json.hpp>

#include "qrr/report.hpp"

using namespace qrr;
using nlohmann::json;

TEST_CASE("report JSON carries a stable field set") {
    const auto& reg = Registry::instance();
    auto rep = reg.verify("uz1", 8);
    json j = json::parse(report_json(rep));
    for (auto key : {"id", "order", "denominator", "m", "environment", "status", "mismatch",
                     "message", "elapsed_ms"})
        CHECK(j.contains(key));
    CHECK(j["id"] == "uz1");
    CHECK(j["status"] == "PASS");
    CHECK(j["mismatch"].is_null());
}

TEST_CASE("documents are identical across runs up to timings") {
    const auto& reg = Registry::instance();
    auto strip = [](json& j) {
        j.erase("elapsed_ms");
    };
    auto run = [&] {
        std::vector<VerificationReport> reps = {reg.verify("rr1", 8), reg.verify("gst", 8, {}, 2)};
        json j = json::parse(reports_json(reps, 8, 2));
        for (auto& r : j["results"]) strip(r);
        return j;
    };
    CHECK(run() == run());
}

TEST_CASE("failure reports serialize the mismatch term lists") {
    const auto& reg = Registry::instance();
    CrossCheck wrong{"rr1 vs rr2", "rr1", {}, std::nullopt, "rr2", {}, std::nullopt, 8, {}};
    auto rep = reg.run_cross_check(wrong);
    json j = json::parse(report_json(rep));
    CHECK(j["status"] == "FAIL");
    REQUIRE(j["mismatch"].is_object());
    // exponent as [numerator, denominator]; terms as [coeff, xexp, yexp, denom]
    CHECK(j["mismatch"]["exponent"] == json::array({2, 2}));
    CHECK(j["mismatch"]["lhs"][0] == json::array({"1", 0, 0, 2}));
    CHECK(j["mismatch"]["rhs"] == json::array());
}

TEST_CASE("expansion documents follow the schema") {
    Ctx t{2, Exp{2 * 4}};
    const auto& reg = Registry::instance();
    QSeries s = reg.get("rr1").rhs(t, {}, 0).restricted(t.ncut);
    json j = json::parse(expansion_json("1/(q,q^4;q^5)_inf", 4, 2, s));
    CHECK(j["command"] == "expand");
    CHECK(j["terms"].size() == 5);
    CHECK(j["terms"][4]["exponent"] == json::array({8, 2}));
    CHECK(j["terms"][4]["coeff"][0] == json::array({"2", 0, 0, 2}));
}
