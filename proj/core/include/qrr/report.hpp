#pragma once

#include <optional>
#include <span>
#include <string>

#include "qrr/registry.hpp"

namespace qrr {

/// One verification report as a JSON object. Coefficient polynomials
/// serialize as ordered term lists [coeff, xexp_num, yexp_num, denom] with
/// the arbitrary-precision coefficient rendered as a string.
std::string report_json(const VerificationReport& rep);

/// A whole verify-all run as one JSON document (results in catalog order).
std::string reports_json(std::span<const VerificationReport> reps,
                         std::optional<int> order, int denom);

/// An expansion listing as one JSON document.
std::string expansion_json(const std::string& expr, int order, int denom, const QSeries& s);

} // namespace qrr
