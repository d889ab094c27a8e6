#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qrr/contour.hpp"
#include "qrr/summation.hpp"

namespace qrr {

/// One catalog entry. The two builders construct the sides independently —
/// they never share intermediate computations, which is what makes a PASS
/// meaningful (the audit tests enforce it structurally).
struct IdentityRecord {
    std::string id;
    std::string summary;
    std::string source;  // citation for where the identity appears
    bool uses_x = false;
    bool uses_y = false;
    std::optional<std::pair<int, int>> m_range;  // inclusive knob range
    std::string m_meaning;                       // what the knob selects
    int default_order = 40;                      // whole q-powers
    bool heavy = false;  // capped at default_order under verify-all --order
    std::vector<std::string> tags;
    std::function<QSeries(const Ctx&, const Environment&, int)> lhs, rhs;
    std::function<void(const Ctx&, const Environment&, int)> validate;  // optional
};

enum class Status { Pass, Fail, Error };
std::string status_str(Status s);

struct VerificationReport {
    std::string id;
    int order = 0;
    int denom = 2;
    std::optional<int> m;
    std::string environment;
    Status status = Status::Error;
    struct MismatchInfo {
        Exp exponent;
        ParamPoly lhs, rhs;
    };
    std::optional<MismatchInfo> mismatch;
    std::string message;
    double elapsed_ms = 0.0;
};

/// A derivation arrow from the literature: specializing `source_id` by `env`
/// must reproduce both sides of `target_id` (under `target_env`), coefficient
/// by coefficient.
struct CrossCheck {
    struct EnvSpec {
        // per parameter: coefficient and q-exponent as a fraction
        struct Assign {
            char param;
            long coeff;
            std::int64_t qnum, qden;
        };
        std::vector<Assign> assigns;
        Environment make(const Ctx& ctx) const;
        std::string str() const;
    };
    std::string name;
    std::string source_id;
    EnvSpec env;
    std::optional<int> m;
    std::string target_id;
    EnvSpec target_env;
    std::optional<int> target_m;
    int order = 30;  // whole q-powers
    /// Elementary q-polynomial multiplier on the target sides (coefficient,
    /// whole power); empty means 1. Covers recoveries that absorb a factor
    /// like (1 - q) into the rewritten denominators.
    std::vector<std::pair<long, std::int64_t>> target_scale;
};

class Registry {
public:
    static const Registry& instance();

    std::span<const IdentityRecord> records() const { return records_; }
    const IdentityRecord* find(std::string_view id) const;
    /// Like find() but throws ConfigError for unknown ids.
    const IdentityRecord& get(std::string_view id) const;

    VerificationReport verify(std::string_view id, int order, const Environment& env = {},
                              std::optional<int> m = std::nullopt, int denom = 2) const;

    /// Work units for verify-all: knobbed families expand to one unit per m.
    struct Unit {
        const IdentityRecord* rec;
        std::optional<int> m;
    };
    std::vector<Unit> units() const;

    /// Runs every unit, possibly concurrently, and returns the reports in
    /// catalog order. Without an explicit order every record runs at its
    /// default; with one, heavy records are capped at their default.
    std::vector<VerificationReport> verify_all(std::optional<int> order = std::nullopt,
                                               int denom = 2, unsigned jobs = 0) const;

    static std::span<const CrossCheck> derivation_checks();
    VerificationReport run_cross_check(const CrossCheck& c, int denom = 2) const;

private:
    Registry();
    std::vector<IdentityRecord> records_;
};

/// The order a record runs at under a requested verify-all order.
int effective_order(const IdentityRecord& rec, std::optional<int> requested);

} // namespace qrr
