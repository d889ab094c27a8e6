#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "qrr/errors.hpp"

namespace qrr {

/// Coefficients are arbitrary-precision integers; partition-like counts grow
/// without bound with the truncation order.
using Int = mpz_class;

/// An exponent measured in 1/D units. The denominator D is fixed per
/// computation (see Ctx); all arithmetic and comparisons are plain integer
/// operations on the unit count.
struct Exp {
    std::int64_t units = 0;

    friend constexpr auto operator<=>(Exp, Exp) = default;
    friend constexpr Exp operator+(Exp a, Exp b) { return Exp{a.units + b.units}; }
    friend constexpr Exp operator-(Exp a, Exp b) { return Exp{a.units - b.units}; }
    friend constexpr Exp operator-(Exp a) { return Exp{-a.units}; }
    friend constexpr Exp operator*(std::int64_t k, Exp a) { return Exp{k * a.units}; }
    Exp& operator+=(Exp o) { units += o.units; return *this; }
    Exp& operator-=(Exp o) { units -= o.units; return *this; }
};

constexpr Exp min(Exp a, Exp b) { return a <= b ? a : b; }
constexpr Exp max(Exp a, Exp b) { return a >= b ? a : b; }

/// Renders `units / denom` as a reduced fraction, e.g. "3", "-1/2".
std::string exp_str(Exp e, int denom);

/// The per-computation frame: exponent denominator D plus the inclusive
/// truncation bound (in 1/D units) that builders aim for. The remaining
/// knobs widen internal safety margins; results must not depend on them
/// (the stability checks double them and compare).
struct Ctx {
    int denom = 2;
    Exp ncut{0};
    int stop_margin = 3;  // consecutive out-of-range shells before a sum stops
    int ct_margin = 1;    // additive z-window widening
    int ct_scale = 1;     // multiplicative z-window widening

    /// n whole q-powers expressed in 1/D units.
    constexpr Exp whole(std::int64_t n) const { return Exp{n * denom}; }
    /// num/den q-powers in 1/D units; throws if not representable.
    Exp frac(std::int64_t num, std::int64_t den) const;
};

/// One term of a ParamPoly: coeff * x^(xexp/D) * y^(yexp/D). Stored terms
/// always have a nonzero coefficient.
struct ParamMono {
    Int coeff;
    Exp xexp{0};
    Exp yexp{0};

    friend bool operator==(const ParamMono&, const ParamMono&) = default;
};

/// A sparse Laurent polynomial in the formal parameters x and y. Terms are
/// kept sorted by (xexp, yexp) with distinct exponent pairs and no zero
/// coefficients, so structural equality coincides with mathematical equality.
class ParamPoly {
public:
    ParamPoly() = default;
    ParamPoly(Int c);                 // NOLINT(google-explicit-constructor)
    ParamPoly(long c) : ParamPoly(Int(c)) {}
    explicit ParamPoly(const ParamMono& m);

    static ParamPoly zero() { return {}; }
    static ParamPoly one() { return ParamPoly(Int(1)); }

    bool is_zero() const { return terms_.empty(); }
    /// True when the polynomial is a single term with coefficient +1 or -1.
    bool is_unit_monomial() const;
    /// True when the polynomial is c (possibly 0) with no parameter content.
    bool is_constant() const;

    const std::vector<ParamMono>& terms() const { return terms_; }

    friend ParamPoly operator+(const ParamPoly& a, const ParamPoly& b);
    friend ParamPoly operator-(const ParamPoly& a, const ParamPoly& b);
    friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b);
    ParamPoly operator-() const;
    ParamPoly& operator+=(const ParamPoly& o);

    friend bool operator==(const ParamPoly&, const ParamPoly&) = default;

    /// Fused accumulate of scale * p, the convolution workhorse.
    void add_scaled(const ParamPoly& p, const ParamMono& scale);

    /// Exact division by a nonzero integer; ExactnessError if any coefficient
    /// is not divisible.
    ParamPoly div_exact(const Int& d) const;
    /// Exact division by a monomial: exponents shift, coefficients divide.
    ParamPoly div_exact(const ParamMono& m) const;

    /// Least x- resp. y-exponent over the stored terms (0 for the zero poly).
    Exp min_xexp() const;
    Exp min_yexp() const;

    std::string str(int denom) const;

private:
    std::vector<ParamMono> terms_;
};

/// A signed monomial coeff * x^(xexp/D) * y^(yexp/D) * q^(qexp/D) — the
/// common currency of factor arguments, series arguments and environments.
struct Monomial {
    Int coeff;
    Exp xexp{0};
    Exp yexp{0};
    Exp qexp{0};

    Monomial() : coeff(0) {}
    explicit Monomial(Int c, Exp xe = Exp{0}, Exp ye = Exp{0}, Exp qe = Exp{0})
        : coeff(std::move(c)), xexp(xe), yexp(ye), qexp(qe) {}

    bool is_zero() const { return coeff == 0; }
    bool is_unit() const { return coeff == 1 || coeff == -1; }
    ParamMono param() const { return ParamMono{coeff, xexp, yexp}; }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        return Monomial(a.coeff * b.coeff, a.xexp + b.xexp, a.yexp + b.yexp,
                        a.qexp + b.qexp);
    }
    Monomial operator-() const { return Monomial(-coeff, xexp, yexp, qexp); }

    /// k-th power; k < 0 requires a unit coefficient, 0^0 = 1.
    Monomial pow(std::int64_t k) const;

    friend bool operator==(const Monomial&, const Monomial&) = default;

    std::string str(int denom) const;
};

} // namespace qrr
