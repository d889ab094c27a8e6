#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qrr/qseries.hpp"

namespace qrr {

/// Syntax error with the byte offset into the source text and the tokens
/// that would have been accepted there.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset, std::string expected)
        : Error(what), offset_(offset), expected_(std::move(expected)) {}
    std::size_t offset() const { return offset_; }
    const std::string& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::string expected_;
};

/// An exact rational exponent as written in the source (denominator-free of
/// the engine's D until evaluation).
struct ExpFrac {
    std::int64_t num = 0;
    std::int64_t den = 1;

    friend bool operator==(const ExpFrac&, const ExpFrac&) = default;
    bool is_zero() const { return num == 0; }
    std::string str() const;
};

/// A parsed monomial +-c * q^eq * x^ex * y^ey in normal form.
struct MonoExpr {
    Int coeff{1};
    ExpFrac qe, xe, ye;

    std::string str() const;
    /// Conversion to an engine monomial; ConfigError if an exponent is not
    /// representable with ctx.denom.
    Monomial monomial(const Ctx& ctx) const;
};

/// One multiplicand: either a Pochhammer symbol (args; base)_count or a bare
/// monomial.
struct FactorExpr {
    bool is_poch = false;
    std::vector<MonoExpr> args;
    MonoExpr base;
    std::optional<std::int64_t> count;  // nullopt = inf
    MonoExpr mono;

    std::string str() const;
};

/// expr := product ("/" product)? ; product := factor ("*" factor)* ;
/// factor := "(" mono ("," mono)* ";" mono ")" "_" ("inf" | integer) | mono ;
/// mono := ["+"|"-"] atom ("*" atom)* ;
/// atom := ("q"|"x"|"y") ("^" frac)? | integer ; frac := integer ("/" integer)?
struct ExprAst {
    std::vector<FactorExpr> numerator;
    std::vector<FactorExpr> denominator;

    std::string str() const;
};

/// Whitespace-insensitive parse with deterministic error positions.
ExprAst parse_expr(std::string_view text);

/// Parses a single monomial (the --set value syntax).
MonoExpr parse_mono(std::string_view text);

/// Numerator product times the inverted denominator product, complete
/// through ctx.ncut. InversionError when the denominator's lowest-order term
/// is not a unit monomial.
QSeries eval_expr(const Ctx& ctx, const ExprAst& ast);

} // namespace qrr
