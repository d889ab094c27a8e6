#include "qrr/exact.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace qrr {

std::string exp_str(Exp e, int denom) {
    std::int64_t num = e.units;
    std::int64_t den = denom;
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    std::ostringstream os;
    os << num;
    if (den != 1 && num != 0) os << '/' << den;
    return os.str();
}

Exp Ctx::frac(std::int64_t num, std::int64_t den) const {
    if (den == 0) throw ConfigError("exponent with zero denominator");
    std::int64_t scaled = num * denom;
    if (scaled % den != 0)
        throw ConfigError("exponent " + std::to_string(num) + "/" + std::to_string(den) +
                          " is not representable with denominator " + std::to_string(denom));
    return Exp{scaled / den};
}

ParamPoly::ParamPoly(Int c) {
    if (c != 0) terms_.push_back(ParamMono{std::move(c), Exp{0}, Exp{0}});
}

ParamPoly::ParamPoly(const ParamMono& m) {
    if (m.coeff != 0) terms_.push_back(m);
}

static bool key_less(const ParamMono& a, const ParamMono& b) {
    if (a.xexp != b.xexp) return a.xexp < b.xexp;
    return a.yexp < b.yexp;
}

bool ParamPoly::is_unit_monomial() const {
    return terms_.size() == 1 && (terms_[0].coeff == 1 || terms_[0].coeff == -1);
}

bool ParamPoly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_[0].xexp == Exp{0} && terms_[0].yexp == Exp{0};
}

ParamPoly operator+(const ParamPoly& a, const ParamPoly& b) {
    ParamPoly out;
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    while (ia != a.terms_.end() && ib != b.terms_.end()) {
        if (key_less(*ia, *ib)) {
            out.terms_.push_back(*ia++);
        } else if (key_less(*ib, *ia)) {
            out.terms_.push_back(*ib++);
        } else {
            Int c = ia->coeff + ib->coeff;
            if (c != 0) out.terms_.push_back(ParamMono{std::move(c), ia->xexp, ia->yexp});
            ++ia;
            ++ib;
        }
    }
    out.terms_.insert(out.terms_.end(), ia, a.terms_.end());
    out.terms_.insert(out.terms_.end(), ib, b.terms_.end());
    return out;
}

ParamPoly operator-(const ParamPoly& a, const ParamPoly& b) { return a + (-b); }

ParamPoly ParamPoly::operator-() const {
    ParamPoly out(*this);
    for (auto& t : out.terms_) t.coeff = -t.coeff;
    return out;
}

ParamPoly& ParamPoly::operator+=(const ParamPoly& o) {
    *this = *this + o;
    return *this;
}

void ParamPoly::add_scaled(const ParamPoly& p, const ParamMono& scale) {
    for (const auto& t : p.terms_) {
        ParamMono key{Int(), t.xexp + scale.xexp, t.yexp + scale.yexp};
        auto it = std::lower_bound(terms_.begin(), terms_.end(), key, key_less);
        if (it != terms_.end() && it->xexp == key.xexp && it->yexp == key.yexp) {
            mpz_addmul(it->coeff.get_mpz_t(), t.coeff.get_mpz_t(), scale.coeff.get_mpz_t());
            if (it->coeff == 0) terms_.erase(it);
        } else {
            key.coeff = t.coeff * scale.coeff;
            terms_.insert(it, std::move(key));
        }
    }
}

ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
    ParamPoly out;
    // Keep the shorter polynomial on the outside of the accumulation loop.
    const ParamPoly& small = a.terms_.size() <= b.terms_.size() ? a : b;
    const ParamPoly& big = a.terms_.size() <= b.terms_.size() ? b : a;
    for (const auto& t : small.terms_) out.add_scaled(big, t);
    return out;
}

ParamPoly ParamPoly::div_exact(const Int& d) const {
    if (d == 0) throw ConfigError("division by zero");
    ParamPoly out;
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        if (!mpz_divisible_p(t.coeff.get_mpz_t(), d.get_mpz_t()))
            throw ExactnessError("coefficient " + t.coeff.get_str() +
                                 " is not divisible by " + d.get_str());
        out.terms_.push_back(ParamMono{t.coeff / d, t.xexp, t.yexp});
    }
    return out;
}

ParamPoly ParamPoly::div_exact(const ParamMono& m) const {
    if (m.coeff == 0) throw ConfigError("division by zero monomial");
    ParamPoly out;
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        if (!mpz_divisible_p(t.coeff.get_mpz_t(), m.coeff.get_mpz_t()))
            throw ExactnessError("coefficient " + t.coeff.get_str() +
                                 " is not divisible by " + m.coeff.get_str());
        out.terms_.push_back(ParamMono{t.coeff / m.coeff, t.xexp - m.xexp, t.yexp - m.yexp});
    }
    return out;
}

Exp ParamPoly::min_xexp() const {
    Exp m{0};
    bool first = true;
    for (const auto& t : terms_) {
        if (first || t.xexp < m) m = t.xexp;
        first = false;
    }
    return m;
}

Exp ParamPoly::min_yexp() const {
    Exp m{0};
    bool first = true;
    for (const auto& t : terms_) {
        if (first || t.yexp < m) m = t.yexp;
        first = false;
    }
    return m;
}

static void append_power(std::ostream& os, const char* var, Exp e, int denom, bool& lead) {
    if (e == Exp{0}) return;
    if (!lead) os << '*';
    os << var;
    if (e != Exp{denom}) os << '^' << exp_str(e, denom);
    lead = false;
}

static void mono_str(std::ostream& os, const Int& coeff, Exp xe, Exp ye, Exp qe, int denom) {
    bool bare = (xe == Exp{0} && ye == Exp{0} && qe == Exp{0});
    bool lead = true;
    if (coeff == -1 && !bare) {
        os << '-';
    } else if (!(coeff == 1) || bare) {
        os << coeff.get_str();
        lead = false;
    }
    append_power(os, "x", xe, denom, lead);
    append_power(os, "y", ye, denom, lead);
    append_power(os, "q", qe, denom, lead);
}

std::string ParamPoly::str(int denom) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << (t.coeff > 0 ? " + " : " - ");
        Int c = (!first && t.coeff < 0) ? Int(-t.coeff) : t.coeff;
        mono_str(os, c, t.xexp, t.yexp, Exp{0}, denom);
        first = false;
    }
    return os.str();
}

Monomial Monomial::pow(std::int64_t k) const {
    if (k == 0) return Monomial(Int(1));
    if (coeff == 0) {
        if (k < 0) throw ConfigError("zero monomial raised to a negative power");
        return Monomial(Int(0));
    }
    if (k < 0 && !is_unit())
        throw ConfigError("negative power of a non-unit coefficient");
    // For a unit coefficient, c^k and c^|k| agree, so |k| is safe throughout.
    Int c;
    mpz_pow_ui(c.get_mpz_t(), coeff.get_mpz_t(), static_cast<unsigned long>(k < 0 ? -k : k));
    return Monomial(std::move(c), k * xexp, k * yexp, k * qexp);
}

std::string Monomial::str(int denom) const {
    std::ostringstream os;
    mono_str(os, coeff, xexp, yexp, qexp, denom);
    return os.str();
}

} // namespace qrr
