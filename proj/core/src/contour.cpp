#include "qrr/contour.hpp"

#include "qrr/trace.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

namespace qrr {

namespace {

constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max() / 4;

Monomial pure_q(Exp e) { return Monomial(Int(1), Exp{0}, Exp{0}, e); }

} // namespace

std::int64_t ZFactor::growth(std::int64_t j) const {
    std::int64_t s = step.units, e = arg.qexp.units;
    switch (kind) {
        case ZKind::EulerA:
        case ZKind::JacobiZ:
            return s * j * (j - 1) / 2 + j * e;
        case ZKind::EulerB:
            return j * e;
        case ZKind::QBinom: {
            std::int64_t low = j * e;
            std::int64_t ae = qbinom_a.qexp.units;
            for (std::int64_t i = 0; i < j && ae + s * i < 0; ++i) low += ae + s * i;
            return low;
        }
    }
    return 0;
}

const QSeries* ZSeries::coeff(int zdeg) const {
    auto it = coeffs.find(zdeg);
    return it == coeffs.end() ? nullptr : &it->second;
}

namespace {

// Largest term index j (in the requested direction for JacobiZ, j >= 0
// otherwise) whose growth stays within `bound`; kUnbounded for a flat
// direction.
std::int64_t natural_reach(const ZFactor& f, bool negative_j, std::int64_t bound) {
    if (negative_j && f.kind != ZKind::JacobiZ) return 0;
    std::int64_t best = 0;
    for (std::int64_t n = 1;; ++n) {
        std::int64_t j = negative_j ? -n : n;
        std::int64_t g = f.growth(j);
        if (g <= bound) {
            best = n;
        } else {
            // quadratic kinds are monotone once the increment is positive
            std::int64_t s = f.step.units, e = f.arg.qexp.units;
            bool monotone;
            if (f.kind == ZKind::EulerB || f.kind == ZKind::QBinom)
                monotone = true;  // growth is (piecewise) linear in j
            else
                monotone = negative_j ? (s * (1 - j) - e > 0) : (s * j + e > 0);
            if (monotone) break;
        }
        if (n > 4 * (bound + 2) + 8) return kUnbounded;  // flat growth
    }
    return best;
}

struct Window {
    // reach in z-degrees (not term indices), both nonnegative counts
    std::int64_t pos = 0, neg = 0;
};

std::vector<Window> plan_windows(const Ctx& ctx, std::span<const ZFactor> factors,
                                 const CtOptions& opts) {
    std::int64_t bound = ctx.ncut.units;
    std::size_t n = factors.size();
    std::vector<Window> nat(n);
    for (std::size_t i = 0; i < n; ++i) {
        const ZFactor& f = factors[i];
        if (f.zdeg == 0 || f.arg.is_zero()) {
            nat[i] = {0, 0};
            continue;
        }
        std::int64_t fwd = natural_reach(f, false, bound);
        std::int64_t back = natural_reach(f, true, bound);
        std::int64_t up = f.zdeg > 0 ? fwd : back;
        std::int64_t dn = f.zdeg > 0 ? back : fwd;
        std::int64_t az = std::abs(std::int64_t(f.zdeg));
        nat[i].pos = up >= kUnbounded ? kUnbounded : up * az;
        nat[i].neg = dn >= kUnbounded ? kUnbounded : dn * az;
    }
    // A factor can only appear in a z^0 tuple with |degree| at most the
    // combined opposite reach of its partners; that caps flat directions.
    auto partner_sum = [&](std::size_t i, bool pos) {
        std::int64_t sum = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            std::int64_t r = pos ? nat[j].pos : nat[j].neg;
            if (r >= kUnbounded) return kUnbounded;
            sum += r;
        }
        return sum;
    };
    std::vector<Window> win(n);
    for (std::size_t i = 0; i < n; ++i) {
        win[i].pos = std::min(nat[i].pos, partner_sum(i, false));
        win[i].neg = std::min(nat[i].neg, partner_sum(i, true));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (win[i].pos >= kUnbounded || win[i].neg >= kUnbounded)
            throw GradingError("integrand is not q-graded in z: factor windows unbounded");
        win[i].pos = win[i].pos * opts.scale + opts.margin;
        win[i].neg = win[i].neg * opts.scale + opts.margin;
    }
    return win;
}

} // namespace

ZSeries z_expand(const Ctx& ctx, const ZFactor& f,
                 std::optional<std::pair<int, int>> window) {
    if (ctx.ncut == QSeries::kExact)
        throw ConfigError("z_expand needs a finite truncation bound");
    if (f.step <= Exp{0}) throw ConfigError("series base must be positive");

    std::int64_t wlo, whi;
    if (window) {
        wlo = window->first;
        whi = window->second;
    } else if (f.zdeg == 0 || f.arg.is_zero()) {
        wlo = whi = 0;
    } else {
        std::int64_t fwd = natural_reach(f, false, ctx.ncut.units);
        std::int64_t back = natural_reach(f, true, ctx.ncut.units);
        if (fwd >= kUnbounded || back >= kUnbounded)
            throw GradingError("factor has a flat z-growth direction; pass an explicit window");
        std::int64_t az = std::abs(std::int64_t(f.zdeg));
        whi = (f.zdeg > 0 ? fwd : back) * az + 1;
        wlo = -((f.zdeg > 0 ? back : fwd) * az + 1);
    }

    ZSeries out;
    out.denom = ctx.denom;
    out.wlo = static_cast<int>(wlo);
    out.whi = static_cast<int>(whi);

    if (f.zdeg == 0 || f.arg.is_zero()) {
        // A z-free factor collapses to its plain value at degree 0.
        QSeries value;
        Monomial w = f.arg;
        switch (f.kind) {
            case ZKind::EulerA:
                value = euler_a(ctx, w, f.step);
                break;
            case ZKind::EulerB:
                value = euler_b(ctx, w, f.step);
                break;
            case ZKind::QBinom: {
                FactorSpec num{f.qbinom_a * w, f.step, std::nullopt};
                FactorSpec den{w, f.step, std::nullopt};
                value = poch(ctx, num) * poch(ctx, den).restricted(ctx.ncut).inverted();
                break;
            }
            case ZKind::JacobiZ:
                value = jacobi_triple(ctx, w, f.step, JacobiForm::Sum);
                break;
        }
        out.coeffs.emplace(0, std::move(value));
        return out;
    }

    std::int64_t s = f.step.units;
    auto emit = [&](std::int64_t j, QSeries coeff) {
        std::int64_t d = f.zdeg * j;
        if (d < wlo || d > whi) return;
        if (coeff.is_identically_zero()) return;
        out.coeffs.emplace(static_cast<int>(d), std::move(coeff));
    };

    if (f.kind == ZKind::JacobiZ) {
        if (!f.arg.is_unit() && f.arg.coeff != 0) {
            // negative indices need an invertible coefficient
            if (!(f.arg.coeff == 1 || f.arg.coeff == -1))
                throw ConfigError("JacobiZ argument must have a unit coefficient");
        }
        std::int64_t jmax = std::max(std::abs(wlo), std::abs(whi)) / std::abs(std::int64_t(f.zdeg)) + 1;
        for (std::int64_t j = -jmax; j <= jmax; ++j) {
            Monomial t = f.arg.pow(j) * pure_q(Exp{s * j * (j - 1) / 2});
            emit(j, QSeries::from_monomial(ctx.denom, t, ctx.ncut));
        }
        return out;
    }

    // One-sided kinds: walk j >= 0, maintaining 1/(q^s;q^s)_j and, for
    // QBinom, the exact polynomial (a;q^s)_j.
    std::int64_t jmax = (f.zdeg > 0 ? whi : -wlo) / std::abs(std::int64_t(f.zdeg));
    QSeries inv = QSeries::one(ctx.denom, ctx.ncut);
    QSeries apoch = QSeries::one(ctx.denom);
    for (std::int64_t j = 0; j <= jmax; ++j) {
        if (j > 0) {
            inv = inv.divided_by_one_minus(pure_q(Exp{s * j}));
            if (f.kind == ZKind::QBinom) {
                QSeries fac = QSeries::one(ctx.denom);
                Monomial am = f.qbinom_a * pure_q(Exp{s * (j - 1)});
                fac.add_term(am.qexp, ParamPoly(ParamMono{-am.coeff, am.xexp, am.yexp}));
                apoch *= fac;
            }
        }
        Monomial scale = f.arg.pow(j);
        QSeries coeff;
        switch (f.kind) {
            case ZKind::EulerA:
                coeff = inv.shifted(scale * pure_q(Exp{s * j * (j - 1) / 2}));
                break;
            case ZKind::EulerB:
                coeff = inv.shifted(scale);
                break;
            case ZKind::QBinom:
                coeff = (apoch * inv).shifted(scale);
                break;
            case ZKind::JacobiZ:
                break;  // handled above
        }
        emit(j, std::move(coeff));
    }
    return out;
}

ZSeries z_mul(const ZSeries& a, const ZSeries& b) {
    if (a.denom != b.denom) throw ConfigError("mixed exponent denominators");
    ZSeries out;
    out.denom = a.denom;
    out.wlo = a.wlo + b.wlo;
    out.whi = a.whi + b.whi;
    for (const auto& [da, ca] : a.coeffs) {
        for (const auto& [db, cb] : b.coeffs) {
            QSeries prod = ca * cb;
            if (prod.is_identically_zero()) {
                // keep the completeness bookkeeping of all-zero products
                auto it = out.coeffs.find(da + db);
                if (it != out.coeffs.end()) {
                    if (prod.ncut() < it->second.ncut())
                        it->second = it->second.restricted(prod.ncut());
                } else {
                    out.coeffs.emplace(da + db, std::move(prod));
                }
                continue;
            }
            auto it = out.coeffs.find(da + db);
            if (it == out.coeffs.end())
                out.coeffs.emplace(da + db, std::move(prod));
            else
                it->second += prod;
        }
    }
    return out;
}

ZSeries z_add(const ZSeries& a, const ZSeries& b) {
    if (a.denom != b.denom) throw ConfigError("mixed exponent denominators");
    ZSeries out = a;
    out.wlo = std::min(a.wlo, b.wlo);
    out.whi = std::max(a.whi, b.whi);
    for (const auto& [d, c] : b.coeffs) {
        auto it = out.coeffs.find(d);
        if (it == out.coeffs.end())
            out.coeffs.emplace(d, c);
        else
            it->second += c;
    }
    return out;
}

QSeries constant_term(const Ctx& ctx, std::span<const ZFactor> factors,
                      const CtOptions& opts) {
    trace::Scope ts([&] {
        std::string d = "ct:";
        for (const auto& f : factors) {
            d += std::to_string(static_cast<int>(f.kind)) + "[" + f.arg.str(ctx.denom) +
                 ";z" + std::to_string(f.zdeg) + ";s" + exp_str(f.step, ctx.denom) + ";a" +
                 f.qbinom_a.str(ctx.denom) + "]";
        }
        return d;
    });
    if (factors.empty()) return QSeries::one(ctx.denom, ctx.ncut);
    std::vector<Window> win = plan_windows(ctx, factors, opts);

    // Extra completeness budget for coefficients with negative q-order
    // (a JacobiZ argument like y^2 q^-2 / z produces them).
    std::int64_t budget = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        std::int64_t worst = 0;
        std::int64_t az = std::max<std::int64_t>(1, std::abs(std::int64_t(factors[i].zdeg)));
        for (std::int64_t d = -win[i].neg; d <= win[i].pos; ++d) {
            if (d % az != 0) continue;
            std::int64_t j = d / (factors[i].zdeg == 0 ? 1 : factors[i].zdeg);
            if (factors[i].kind != ZKind::JacobiZ && j < 0) continue;
            worst = std::min(worst, factors[i].growth(j));
        }
        budget += -worst;
    }
    Ctx work{ctx.denom, ctx.ncut + Exp{budget}};

    // Running degree bounds of the remaining factors, for clipping.
    std::vector<std::int64_t> rest_pos(factors.size() + 1, 0), rest_neg(factors.size() + 1, 0);
    for (std::size_t i = factors.size(); i-- > 0;) {
        rest_pos[i] = rest_pos[i + 1] + win[i].pos;
        rest_neg[i] = rest_neg[i + 1] + win[i].neg;
    }

    ZSeries acc = z_expand(work, factors[0],
                           std::make_pair(-static_cast<int>(win[0].neg),
                                          static_cast<int>(win[0].pos)));
    for (std::size_t i = 1; i < factors.size(); ++i) {
        ZSeries next = z_expand(work, factors[i],
                                std::make_pair(-static_cast<int>(win[i].neg),
                                               static_cast<int>(win[i].pos)));
        acc = z_mul(acc, next);
        // degrees that cannot return to 0 with the remaining factors
        for (auto it = acc.coeffs.begin(); it != acc.coeffs.end();) {
            std::int64_t d = it->first;
            if (d + rest_pos[i + 1] < 0 || d - rest_neg[i + 1] > 0)
                it = acc.coeffs.erase(it);
            else
                ++it;
        }
    }
    const QSeries* c0 = acc.coeff(0);
    QSeries out = c0 ? *c0 : QSeries::zero(ctx.denom, work.ncut);
    if (out.ncut() < ctx.ncut)
        throw ConfigError("constant-term bookkeeping lost completeness; internal error");
    return out.restricted(ctx.ncut);
}

QSeries constant_term(const Ctx& ctx, std::initializer_list<ZFactor> factors,
                      const CtOptions& opts) {
    return constant_term(ctx, std::span<const ZFactor>(factors.begin(), factors.size()), opts);
}

} // namespace qrr
