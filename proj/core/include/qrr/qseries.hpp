#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qrr/exact.hpp"

namespace qrr {

/// A truncated Laurent series in q with ParamPoly coefficients. The series
/// carries the exponent denominator D, an inclusive completeness bound ncut
/// (every coefficient with exponent <= ncut is exact) and a guaranteed lower
/// support bound lo. Exact polynomials use the sentinel bound kExact.
class QSeries {
public:
    /// Completeness sentinel for values that are exact polynomials.
    static constexpr Exp kExact{std::int64_t(1) << 40};

    QSeries() = default;
    QSeries(int denom, Exp ncut, Exp lo = Exp{0}) : denom_(denom), ncut_(ncut), lo_(lo) {}

    static QSeries zero(int denom, Exp ncut = kExact) { return QSeries(denom, ncut); }
    /// The true zero series: complete everywhere, empty support.
    static QSeries exact_zero(int denom);
    static QSeries one(int denom, Exp ncut = kExact);
    static QSeries constant(int denom, ParamPoly c, Exp ncut = kExact);
    /// The single-term series m (zero series when m has coefficient 0).
    static QSeries from_monomial(int denom, const Monomial& m, Exp ncut = kExact);

    int denom() const { return denom_; }
    Exp ncut() const { return ncut_; }
    Exp lo() const { return lo_; }
    bool is_exact() const { return ncut_ == kExact; }
    bool is_identically_zero() const { return coeffs_.empty(); }

    /// Stored (exponent, coefficient) pairs, ascending, no zero coefficients.
    const std::vector<std::pair<Exp, ParamPoly>>& terms() const { return coeffs_; }

    /// Coefficient of q^(e/D); zero polynomial when absent.
    const ParamPoly& coeff(Exp e) const;
    /// Coefficient of the whole power q^n.
    const ParamPoly& coeff_whole(std::int64_t n) const { return coeff(Exp{n * denom_}); }

    /// Least exponent with a nonzero stored coefficient.
    std::optional<Exp> min_exp() const;

    /// Adds c at exponent e (builder utility; merges and drops zeros).
    void add_term(Exp e, ParamPoly c);

    friend QSeries operator+(const QSeries& a, const QSeries& b);
    friend QSeries operator-(const QSeries& a, const QSeries& b);
    /// Truncated convolution. The result is complete through
    /// min(ncut_a + lo_b, ncut_b + lo_a): every reported coefficient has all
    /// of its contributions inside the operands' complete ranges.
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    QSeries operator-() const;
    QSeries& operator+=(const QSeries& o);
    QSeries& operator*=(const QSeries& o);

    /// Multiplication by a monomial: exponent shift plus coefficient scale.
    QSeries shifted(const Monomial& m) const;
    /// Restriction to a smaller completeness bound (drops higher terms).
    QSeries restricted(Exp new_ncut) const;
    /// Drops terms above new_ncut and *claims* completeness there; only valid
    /// when the caller can bound the support shift (see substitute()).
    QSeries clipped_claim(Exp new_ncut) const;

    /// Truncated reciprocal. Requires the least stored coefficient to be a
    /// unit monomial; handles negative lo by factoring it out. The result is
    /// complete through ncut - 2*lo. InversionError otherwise.
    QSeries inverted() const;

    QSeries div_exact(const Int& d) const;
    QSeries div_exact(const Monomial& m) const;
    /// Multiplies by the geometric inverse of (1 - u); u must have positive
    /// q-order.
    QSeries divided_by_one_minus(const Monomial& u) const;

    /// q -> q^r on an exact polynomial (r >= 1).
    QSeries rebased(int r) const;

    /// Keeps the terms whose x-power (in whole units) has the given parity.
    QSeries parity_part_x(int parity) const;

    struct Mismatch {
        Exp exponent;
        ParamPoly lhs, rhs;
    };
    /// First differing coefficient at exponents <= min(ncut, other.ncut).
    std::optional<Mismatch> first_mismatch(const QSeries& other) const;
    bool matches(const QSeries& other) const { return !first_mismatch(other).has_value(); }

    std::string str() const;

private:
    void check_compatible(const QSeries& o) const;
    /// Sharpens lo using the complete region (everything below the first
    /// stored exponent and at most ncut is known to vanish).
    void tighten();

    int denom_ = 2;
    Exp ncut_ = kExact;
    Exp lo_{0};
    std::vector<std::pair<Exp, ParamPoly>> coeffs_;
};

/// One Pochhammer-style factor prod_k (1 - arg * q^(step*k)): `arg` is the
/// argument monomial, `step` the base exponent (positive), `count` the number
/// of factors (nullopt = infinite).
struct FactorSpec {
    Monomial arg;
    Exp step;
    std::optional<std::int64_t> count;  // nullopt means infinite

    std::string str(int denom) const;
};

/// Expands one q-shifted factorial truncated at ctx.ncut. Infinite products
/// retain exactly the factors with q-order <= ncut + B, where B is the sum of
/// the absolute values of the negative factor orders; every coefficient
/// <= ncut is then complete.
QSeries poch(const Ctx& ctx, const FactorSpec& f);

/// Product of q-shifted factorials (the compact multi-argument notation).
QSeries poch_list(const Ctx& ctx, std::span<const FactorSpec> factors);
QSeries poch_list(const Ctx& ctx, std::initializer_list<FactorSpec> factors);

/// sum_k q^(step*C(k,2)) z^k / (q^step; q^step)_k  — the expansion whose
/// closed form is (-z; q^step)_inf.
QSeries euler_a(const Ctx& ctx, const Monomial& z, Exp step);

/// sum_k z^k / (q^step; q^step)_k — the expansion whose closed form is
/// 1/(z; q^step)_inf. Requires z to have positive q-order (GradingError).
QSeries euler_b(const Ctx& ctx, const Monomial& z, Exp step);

enum class JacobiForm { Sum, Product };

/// The two-sided theta sum sum_{k in Z} q^(step*C(k,2)) w^k, either as the
/// bilateral sum or as the triple product (q^s, -w, -q^s/w; q^s)_inf.
QSeries jacobi_triple(const Ctx& ctx, const Monomial& w, Exp step, JacobiForm form);

/// A specialization environment: each parameter is either symbolic (absent)
/// or a signed monomial in q alone. Builders resolve every parameter mention
/// through the environment before constructing factors and summands.
struct Environment {
    std::optional<Monomial> x;  // xexp = yexp = 0 when present
    std::optional<Monomial> y;

    static Environment symbolic() { return {}; }

    void assign(char param, const Monomial& value);

    /// Applies the assignments to a monomial; ConfigError when an exponent is
    /// not representable with the context denominator or a fractional power
    /// of a non-unit coefficient would be required.
    Monomial resolve(const Ctx& ctx, const Monomial& m) const;

    bool is_symbolic() const { return !x && !y; }
    std::string describe(int denom) const;
};

/// Post-hoc application of an environment to an already computed series.
/// `new_ncut` is the completeness bound the caller can justify for the
/// substituted series (substitution may move support downward).
QSeries substitute(const Ctx& ctx, const QSeries& s, const Environment& env, Exp new_ncut);

namespace detail {
/// Sum of |q-order| over the factors of f that have negative q-order; the
/// completeness budget infinite-product truncation needs.
std::int64_t negative_order_sum(const FactorSpec& f);
}

} // namespace qrr
