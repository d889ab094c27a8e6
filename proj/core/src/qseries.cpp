#include "qrr/qseries.hpp"

#include "qrr/trace.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace qrr {

namespace {

const ParamPoly kZeroPoly{};

// Saturating completeness bound for a product.
Exp product_ncut(const QSeries& a, const QSeries& b) {
    Exp n = QSeries::kExact;
    if (!a.is_exact()) n = min(n, a.ncut() + b.lo());
    if (!b.is_exact()) n = min(n, b.ncut() + a.lo());
    return n;
}

} // namespace

QSeries QSeries::exact_zero(int denom) {
    QSeries s(denom, kExact, kExact);
    return s;
}

QSeries QSeries::one(int denom, Exp ncut) {
    QSeries s(denom, ncut);
    s.add_term(Exp{0}, ParamPoly::one());
    return s;
}

QSeries QSeries::constant(int denom, ParamPoly c, Exp ncut) {
    QSeries s(denom, ncut);
    s.add_term(Exp{0}, std::move(c));
    return s;
}

QSeries QSeries::from_monomial(int denom, const Monomial& m, Exp ncut) {
    if (m.is_zero()) return QSeries(denom, ncut);
    QSeries s(denom, ncut, m.qexp);
    s.add_term(m.qexp, ParamPoly(m.param()));
    return s;
}

const ParamPoly& QSeries::coeff(Exp e) const {
    auto it = std::lower_bound(coeffs_.begin(), coeffs_.end(), e,
                               [](const auto& p, Exp key) { return p.first < key; });
    if (it != coeffs_.end() && it->first == e) return it->second;
    return kZeroPoly;
}

std::optional<Exp> QSeries::min_exp() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.front().first;
}

void QSeries::add_term(Exp e, ParamPoly c) {
    if (c.is_zero() || e > ncut_) return;
    if (e < lo_) lo_ = e;
    auto it = std::lower_bound(coeffs_.begin(), coeffs_.end(), e,
                               [](const auto& p, Exp key) { return p.first < key; });
    if (it != coeffs_.end() && it->first == e) {
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
    } else {
        coeffs_.insert(it, {e, std::move(c)});
    }
}

void QSeries::check_compatible(const QSeries& o) const {
    if (denom_ != o.denom_)
        throw ConfigError("mixed exponent denominators: " + std::to_string(denom_) +
                          " vs " + std::to_string(o.denom_));
}

void QSeries::tighten() {
    // Below the first stored exponent everything in the complete region is
    // known to vanish; an empty exact series is the true zero.
    Exp t = coeffs_.empty() ? (is_exact() ? kExact : ncut_ + Exp{1}) : coeffs_.front().first;
    if (t > lo_) lo_ = t;
}

QSeries operator+(const QSeries& a, const QSeries& b) {
    a.check_compatible(b);
    QSeries out(a.denom_, min(a.ncut_, b.ncut_), min(a.lo_, b.lo_));
    out.coeffs_.reserve(a.coeffs_.size() + b.coeffs_.size());
    auto ia = a.coeffs_.begin(), ib = b.coeffs_.begin();
    while (ia != a.coeffs_.end() || ib != b.coeffs_.end()) {
        bool take_a = ib == b.coeffs_.end() ||
                      (ia != a.coeffs_.end() && ia->first < ib->first);
        bool take_b = ia == a.coeffs_.end() ||
                      (ib != b.coeffs_.end() && ib->first < ia->first);
        if (take_a) {
            if (ia->first <= out.ncut_) out.coeffs_.push_back(*ia);
            ++ia;
        } else if (take_b) {
            if (ib->first <= out.ncut_) out.coeffs_.push_back(*ib);
            ++ib;
        } else {
            if (ia->first <= out.ncut_) {
                ParamPoly c = ia->second + ib->second;
                if (!c.is_zero()) out.coeffs_.push_back({ia->first, std::move(c)});
            }
            ++ia;
            ++ib;
        }
    }
    out.tighten();
    return out;
}

QSeries QSeries::operator-() const {
    QSeries out(*this);
    for (auto& [e, p] : out.coeffs_) p = -p;
    return out;
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

QSeries& QSeries::operator+=(const QSeries& o) {
    *this = *this + o;
    return *this;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
    a.check_compatible(b);
    Exp ncut_out = product_ncut(a, b);
    Exp lo_out = a.lo_ + b.lo_;
    QSeries out(a.denom_, ncut_out, lo_out);
    if (a.coeffs_.empty() || b.coeffs_.empty()) {
        out.tighten();
        return out;
    }

    Exp base = a.coeffs_.front().first + b.coeffs_.front().first;
    Exp hi = min(ncut_out, a.coeffs_.back().first + b.coeffs_.back().first);
    if (hi < base) {
        out.tighten();
        return out;
    }

    std::vector<ParamPoly> acc(static_cast<std::size_t>((hi - base).units) + 1);
    for (const auto& [ea, pa] : a.coeffs_) {
        if (ea + b.coeffs_.front().first > hi) break;
        for (const auto& [eb, pb] : b.coeffs_) {
            Exp e = ea + eb;
            if (e > hi) break;
            auto& slot = acc[static_cast<std::size_t>((e - base).units)];
            for (const auto& t : pa.terms()) slot.add_scaled(pb, t);
        }
    }
    for (std::size_t i = 0; i < acc.size(); ++i) {
        if (!acc[i].is_zero())
            out.coeffs_.push_back({base + Exp{static_cast<std::int64_t>(i)}, std::move(acc[i])});
    }
    out.tighten();
    return out;
}

QSeries& QSeries::operator*=(const QSeries& o) {
    *this = *this * o;
    return *this;
}

QSeries QSeries::shifted(const Monomial& m) const {
    if (m.is_zero()) return exact_zero(denom_);
    Exp nc = is_exact() ? kExact : ncut_ + m.qexp;
    QSeries out(denom_, nc, lo_ + m.qexp);
    out.coeffs_.reserve(coeffs_.size());
    ParamMono scale = m.param();
    for (const auto& [e, p] : coeffs_) {
        ParamPoly q;
        q.add_scaled(p, scale);
        out.coeffs_.push_back({e + m.qexp, std::move(q)});
    }
    out.tighten();
    return out;
}

QSeries QSeries::restricted(Exp new_ncut) const {
    if (new_ncut > ncut_)
        throw ConfigError("restriction cannot extend a completeness bound");
    QSeries out(denom_, new_ncut, lo_);
    for (const auto& t : coeffs_) {
        if (t.first > new_ncut) break;
        out.coeffs_.push_back(t);
    }
    out.tighten();
    return out;
}

QSeries QSeries::clipped_claim(Exp new_ncut) const {
    QSeries out(denom_, new_ncut, lo_);
    for (const auto& t : coeffs_) {
        if (t.first > new_ncut) break;
        out.coeffs_.push_back(t);
    }
    out.tighten();
    return out;
}

QSeries QSeries::inverted() const {
    if (is_exact())
        throw ConfigError("inverting needs a finite truncation bound; restrict() first");
    if (coeffs_.empty()) throw InversionError("cannot invert the zero series");
    Exp head = coeffs_.front().first;
    const ParamPoly& hp = coeffs_.front().second;
    if (!hp.is_unit_monomial())
        throw InversionError("lowest-order coefficient " + hp.str(denom_) +
                             " is not a unit monomial");
    ParamMono m = hp.terms()[0];
    ParamMono minv{m.coeff, -m.xexp, -m.yexp};  // coeff is +-1, its own inverse

    // Normalize: A = (1/m) q^{-head} * this has A_0 = 1 and is complete
    // through T; then B = 1/A via the convolution recurrence and the result
    // is (1/m) q^{-head} B, complete through ncut - 2*head.
    Exp T = ncut_ - head;
    QSeries out(denom_, ncut_ - Exp{2 * head.units}, -head);
    if (T < Exp{0}) {
        out.tighten();
        return out;
    }

    std::size_t n = static_cast<std::size_t>(T.units) + 1;
    std::vector<ParamPoly> A(n), B(n);
    std::vector<std::size_t> support;
    for (const auto& [e, p] : coeffs_) {
        if (e - head > T) break;
        std::size_t idx = static_cast<std::size_t>((e - head).units);
        A[idx] = ParamPoly();
        A[idx].add_scaled(p, minv);
        if (idx > 0) support.push_back(idx);
    }
    B[0] = ParamPoly::one();
    for (std::size_t i = 1; i < n; ++i) {
        ParamPoly acc;
        for (std::size_t k : support) {
            if (k > i) break;
            for (const auto& t : A[k].terms()) acc.add_scaled(B[i - k], t);
        }
        B[i] = -acc;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (B[i].is_zero()) continue;
        ParamPoly c;
        c.add_scaled(B[i], minv);
        out.coeffs_.push_back({Exp{static_cast<std::int64_t>(i)} - head, std::move(c)});
    }
    out.tighten();
    return out;
}

QSeries QSeries::div_exact(const Int& d) const {
    QSeries out(denom_, ncut_, lo_);
    out.coeffs_.reserve(coeffs_.size());
    for (const auto& [e, p] : coeffs_) out.coeffs_.push_back({e, p.div_exact(d)});
    out.tighten();
    return out;
}

QSeries QSeries::div_exact(const Monomial& m) const {
    if (m.is_zero()) throw ConfigError("division by zero monomial");
    Exp nc = is_exact() ? kExact : ncut_ - m.qexp;
    QSeries out(denom_, nc, lo_ - m.qexp);
    out.coeffs_.reserve(coeffs_.size());
    for (const auto& [e, p] : coeffs_)
        out.coeffs_.push_back({e - m.qexp, p.div_exact(m.param())});
    out.tighten();
    return out;
}

QSeries QSeries::divided_by_one_minus(const Monomial& u) const {
    if (u.is_zero() || coeffs_.empty()) return *this;
    if (u.qexp <= Exp{0})
        throw GradingError("geometric inverse of (1 - " + u.str(denom_) +
                           ") is not q-graded");
    if (is_exact())
        throw ConfigError("geometric inverse needs a finite truncation bound");

    Exp base = coeffs_.front().first;
    if (ncut_ < base) return *this;
    std::size_t n = static_cast<std::size_t>((ncut_ - base).units) + 1;
    std::vector<ParamPoly> acc(n);
    for (const auto& [e, p] : coeffs_) {
        if (e > ncut_) break;
        acc[static_cast<std::size_t>((e - base).units)] = p;
    }
    ParamMono up = u.param();
    std::size_t d = static_cast<std::size_t>(u.qexp.units);
    for (std::size_t i = d; i < n; ++i)
        if (!acc[i - d].is_zero()) acc[i].add_scaled(acc[i - d], up);

    QSeries out(denom_, ncut_, lo_);
    for (std::size_t i = 0; i < n; ++i)
        if (!acc[i].is_zero())
            out.coeffs_.push_back({base + Exp{static_cast<std::int64_t>(i)}, std::move(acc[i])});
    out.tighten();
    return out;
}

QSeries QSeries::rebased(int r) const {
    if (r < 1) throw ConfigError("rebase factor must be >= 1");
    if (!is_exact()) throw ConfigError("rebase is defined for exact polynomials only");
    QSeries out(denom_, kExact, Exp{r * lo_.units});
    out.coeffs_.reserve(coeffs_.size());
    for (const auto& [e, p] : coeffs_) out.coeffs_.push_back({Exp{r * e.units}, p});
    out.tighten();
    return out;
}

QSeries QSeries::parity_part_x(int parity) const {
    QSeries out(denom_, ncut_, lo_);
    for (const auto& [e, p] : coeffs_) {
        ParamPoly kept;
        for (const auto& t : p.terms()) {
            if (t.xexp.units % denom_ != 0)
                throw ConfigError("parity split needs whole x-powers");
            std::int64_t w = t.xexp.units / denom_;
            if (((w % 2) + 2) % 2 == parity) kept += ParamPoly(t);
        }
        if (!kept.is_zero()) out.coeffs_.push_back({e, std::move(kept)});
    }
    out.tighten();
    return out;
}

std::optional<QSeries::Mismatch> QSeries::first_mismatch(const QSeries& other) const {
    check_compatible(other);
    Exp bound = min(ncut_, other.ncut_);
    auto ia = coeffs_.begin(), ib = other.coeffs_.begin();
    while (ia != coeffs_.end() || ib != other.coeffs_.end()) {
        Exp ea = ia != coeffs_.end() ? ia->first : Exp{kExact};
        Exp eb = ib != other.coeffs_.end() ? ib->first : Exp{kExact};
        Exp e = min(ea, eb);
        if (e > bound) break;
        const ParamPoly& ca = ea == e ? ia->second : kZeroPoly;
        const ParamPoly& cb = eb == e ? ib->second : kZeroPoly;
        if (!(ca == cb)) return Mismatch{e, ca, cb};
        if (ea == e) ++ia;
        if (eb == e) ++ib;
    }
    return std::nullopt;
}

std::string QSeries::str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, p] : coeffs_) {
        std::string qs;
        if (e != Exp{0}) {
            qs = "q";
            if (e != Exp{denom_}) qs += "^" + exp_str(e, denom_);
        }
        const auto& ts = p.terms();
        bool single = ts.size() == 1;
        if (!first) os << (single && ts[0].coeff < 0 ? " - " : " + ");
        if (single) {
            ParamMono t = ts[0];
            if (!first && t.coeff < 0) t.coeff = -t.coeff;
            ParamPoly one_term{t};
            std::string body = one_term.str(denom_);
            if (qs.empty()) {
                os << body;
            } else if (body == "1") {
                os << qs;
            } else if (body == "-1") {
                os << "-" << qs;
            } else {
                os << body << "*" << qs;
            }
        } else {
            os << "(" << p.str(denom_) << ")";
            if (!qs.empty()) os << "*" << qs;
        }
        first = false;
    }
    return os.str();
}

std::string FactorSpec::str(int denom) const {
    std::ostringstream os;
    os << "(" << arg.str(denom) << ";q";
    if (step != Exp{denom}) os << "^" << exp_str(step, denom);
    os << ")_";
    if (count)
        os << *count;
    else
        os << "inf";
    return os.str();
}

namespace detail {

std::int64_t negative_order_sum(const FactorSpec& f) {
    if (f.arg.is_zero()) return 0;
    std::int64_t e = f.arg.qexp.units, s = f.step.units;
    if (e >= 0 || s <= 0) return 0;
    std::int64_t t = (-e + s - 1) / s;  // factors with e + k*s < 0
    if (f.count && *f.count < t) t = *f.count;
    return -(t * e) - s * t * (t - 1) / 2;
}

} // namespace detail

using detail::negative_order_sum;

QSeries poch(const Ctx& ctx, const FactorSpec& f) {
    trace::Scope ts([&] { return "poch:" + f.str(ctx.denom); });
    if (f.step <= Exp{0}) throw ConfigError("Pochhammer step must be positive");
    if (f.count && *f.count < 0) throw ConfigError("negative Pochhammer count");
    if (f.arg.is_zero() || (f.count && *f.count == 0)) return QSeries::one(ctx.denom, ctx.ncut);
    bool infinite = !f.count.has_value();
    bool exact_request = ctx.ncut == QSeries::kExact;
    if (infinite && exact_request)
        throw ConfigError("infinite product needs a finite truncation bound");

    std::int64_t B = negative_order_sum(f);
    Exp keep_bound = exact_request ? QSeries::kExact : ctx.ncut + Exp{B};
    Exp work = exact_request ? QSeries::kExact : ctx.ncut + Exp{B};

    QSeries acc = QSeries::one(ctx.denom, work);
    for (std::int64_t k = 0;; ++k) {
        if (f.count && k >= *f.count) break;
        Exp ord = f.arg.qexp + k * f.step;
        if (ord > keep_bound) break;  // orders are monotone in k
        QSeries factor = QSeries::one(ctx.denom);
        factor.add_term(ord, ParamPoly(ParamMono{-f.arg.coeff, f.arg.xexp, f.arg.yexp}));
        if (factor.is_identically_zero()) {
            // a vanishing factor makes the full product exactly zero
            return QSeries::exact_zero(ctx.denom);
        }
        acc *= factor;
    }
    return acc;
}

QSeries poch_list(const Ctx& ctx, std::span<const FactorSpec> factors) {
    trace::Scope ts([&] {
        std::string d = "poch_list:";
        for (const auto& f : factors) d += f.str(ctx.denom);
        return d;
    });
    std::int64_t btot = 0;
    for (const auto& f : factors) btot += negative_order_sum(f);
    Ctx sub{ctx.denom, ctx.ncut == QSeries::kExact ? QSeries::kExact : ctx.ncut + Exp{btot}};
    QSeries acc = QSeries::one(ctx.denom, sub.ncut);
    for (const auto& f : factors) {
        acc *= poch(sub, f);
        if (acc.is_identically_zero()) break;
    }
    return acc;
}

QSeries poch_list(const Ctx& ctx, std::initializer_list<FactorSpec> factors) {
    return poch_list(ctx, std::span<const FactorSpec>(factors.begin(), factors.size()));
}

namespace {

// Least value of step*k(k-1)/2 + k*e over integers k >= 0.
std::int64_t min_euler_exponent(std::int64_t s, std::int64_t e) {
    if (e >= 0) return 0;
    auto val = [&](std::int64_t k) { return s * k * (k - 1) / 2 + k * e; };
    std::int64_t vertex = (s - 2 * e) / (2 * s);  // around the real minimum
    std::int64_t best = 0;
    for (std::int64_t k = std::max<std::int64_t>(0, vertex - 2); k <= vertex + 2; ++k)
        if (k >= 0) best = std::min(best, val(k));
    return best;
}

} // namespace

QSeries euler_a(const Ctx& ctx, const Monomial& z, Exp step) {
    trace::Scope ts([&] {
        return "euler_a:" + z.str(ctx.denom) + ";s=" + exp_str(step, ctx.denom);
    });
    if (step <= Exp{0}) throw ConfigError("series base must be positive");
    if (ctx.ncut == QSeries::kExact) throw ConfigError("euler_a needs a finite truncation bound");
    if (z.is_zero()) return QSeries::one(ctx.denom, ctx.ncut);

    std::int64_t s = step.units, e = z.qexp.units;
    std::int64_t B = -min_euler_exponent(s, e);
    Ctx work{ctx.denom, ctx.ncut + Exp{B}};

    QSeries out = QSeries::zero(ctx.denom, ctx.ncut);
    QSeries inv = QSeries::one(ctx.denom, work.ncut);
    for (std::int64_t k = 0;; ++k) {
        if (k > 0) inv = inv.divided_by_one_minus(Monomial(Int(1), Exp{0}, Exp{0}, k * step));
        Exp ek{s * k * (k - 1) / 2 + k * e};
        if (ek > ctx.ncut) {
            if (s * k + e > 0) break;  // exponents only grow from here
            continue;
        }
        Monomial shift = z.pow(k) * Monomial(Int(1), Exp{0}, Exp{0}, Exp{s * k * (k - 1) / 2});
        out += inv.shifted(shift);
    }
    return out;
}

QSeries euler_b(const Ctx& ctx, const Monomial& z, Exp step) {
    trace::Scope ts([&] {
        return "euler_b:" + z.str(ctx.denom) + ";s=" + exp_str(step, ctx.denom);
    });
    if (step <= Exp{0}) throw ConfigError("series base must be positive");
    if (ctx.ncut == QSeries::kExact) throw ConfigError("euler_b needs a finite truncation bound");
    if (z.is_zero()) return QSeries::one(ctx.denom, ctx.ncut);
    if (z.qexp <= Exp{0})
        throw GradingError("euler_b argument " + z.str(ctx.denom) +
                           " has q-order <= 0; the sum is not q-graded");

    QSeries out = QSeries::zero(ctx.denom, ctx.ncut);
    QSeries inv = QSeries::one(ctx.denom, ctx.ncut);
    for (std::int64_t k = 0; k * z.qexp.units <= ctx.ncut.units; ++k) {
        if (k > 0) inv = inv.divided_by_one_minus(Monomial(Int(1), Exp{0}, Exp{0}, k * step));
        out += inv.shifted(z.pow(k));
    }
    return out;
}

QSeries jacobi_triple(const Ctx& ctx, const Monomial& w, Exp step, JacobiForm form) {
    trace::Scope ts([&] {
        return std::string("jacobi:") + (form == JacobiForm::Sum ? "sum:" : "product:") +
               w.str(ctx.denom) + ";s=" + exp_str(step, ctx.denom);
    });
    if (step <= Exp{0}) throw ConfigError("series base must be positive");
    if (w.is_zero()) throw ConfigError("Jacobi argument must be nonzero");
    std::int64_t s = step.units, e = w.qexp.units;

    if (form == JacobiForm::Product) {
        if (!w.is_unit())
            throw ConfigError("the product form needs a unit argument coefficient");
        Monomial base_arg(Int(1), Exp{0}, Exp{0}, step);
        Monomial third(-w.coeff, -w.xexp, -w.yexp, step - w.qexp);
        FactorSpec fs[3] = {{base_arg, step, std::nullopt},
                            {-w, step, std::nullopt},
                            {third, step, std::nullopt}};
        return poch_list(ctx, std::span<const FactorSpec>(fs, 3));
    }

    if (ctx.ncut == QSeries::kExact)
        throw ConfigError("the bilateral sum needs a finite truncation bound");
    QSeries out = QSeries::zero(ctx.denom, ctx.ncut);
    auto exponent = [&](std::int64_t k) { return Exp{s * k * (k - 1) / 2 + k * e}; };
    auto add_term_k = [&](std::int64_t k) {
        Monomial t = w.pow(k) * Monomial(Int(1), Exp{0}, Exp{0}, Exp{s * k * (k - 1) / 2});
        out.add_term(t.qexp, ParamPoly(t.param()));
    };
    for (std::int64_t k = 0;; ++k) {
        if (exponent(k) > ctx.ncut) {
            if (s * k + e > 0) break;
            continue;
        }
        add_term_k(k);
    }
    for (std::int64_t k = -1;; --k) {
        if (exponent(k) > ctx.ncut) {
            if (s * (1 - k) - e > 0) break;
            continue;
        }
        add_term_k(k);
    }
    return out;
}

void Environment::assign(char param, const Monomial& value) {
    if (value.xexp != Exp{0} || value.yexp != Exp{0})
        throw ConfigError("environment values must be monomials in q alone");
    if (param == 'x')
        x = value;
    else if (param == 'y')
        y = value;
    else
        throw ConfigError(std::string("unknown parameter '") + param + "'");
}

Monomial Environment::resolve(const Ctx& ctx, const Monomial& m) const {
    if (m.is_zero()) return Monomial(Int(0));
    Int coeff = m.coeff;
    Exp qexp = m.qexp;
    Exp xout{0}, yout{0};

    auto apply = [&](Exp pe, const std::optional<Monomial>& v, Exp& keep) -> bool {
        if (!v) {
            keep = pe;
            return true;
        }
        if (pe == Exp{0}) return true;
        std::int64_t num = pe.units;
        std::int64_t prod = num * v->qexp.units;
        if (prod % ctx.denom != 0)
            throw ConfigError("specialization requires a finer exponent denominator than " +
                              std::to_string(ctx.denom));
        if (num % ctx.denom == 0) {
            std::int64_t p = num / ctx.denom;
            if (v->coeff == 0) {
                if (p < 0) throw ConfigError("zero parameter raised to a negative power");
                return false;  // the whole monomial vanishes
            }
            coeff *= Monomial(v->coeff).pow(p).coeff;
        } else {
            // fractional power of the assigned coefficient
            if (v->coeff == 0) {
                if (num < 0) throw ConfigError("zero parameter raised to a negative power");
                return false;
            }
            if (v->coeff != 1)
                throw ConfigError("fractional power of coefficient " + v->coeff.get_str());
        }
        qexp += Exp{prod / ctx.denom};
        return true;
    };

    if (!apply(m.xexp, x, xout)) return Monomial(Int(0));
    if (!apply(m.yexp, y, yout)) return Monomial(Int(0));
    return Monomial(std::move(coeff), xout, yout, qexp);
}

std::string Environment::describe(int denom) const {
    if (is_symbolic()) return "symbolic";
    std::string out;
    if (x) out += "x=" + x->str(denom);
    if (y) {
        if (!out.empty()) out += ", ";
        out += "y=" + y->str(denom);
    }
    return out;
}

QSeries substitute(const Ctx& ctx, const QSeries& s, const Environment& env, Exp new_ncut) {
    QSeries out(ctx.denom, new_ncut);
    for (const auto& [e, p] : s.terms()) {
        for (const auto& t : p.terms()) {
            Monomial r = env.resolve(ctx, Monomial(t.coeff, t.xexp, t.yexp, e));
            if (!r.is_zero()) out.add_term(r.qexp, ParamPoly(r.param()));
        }
    }
    return out;
}

} // namespace qrr
