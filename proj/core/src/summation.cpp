#include "qrr/summation.hpp"

#include "qrr/trace.hpp"

#include <algorithm>
#include <limits>

namespace qrr {

using detail::negative_order_sum;

namespace {

Monomial pure_q(Exp e) { return Monomial(Int(1), Exp{0}, Exp{0}, e); }

} // namespace

QSeries phi_series(const Ctx& ctx, const PhiSpec& spec) {
    trace::Scope ts([&] {
        std::string d = "phi:n=";
        for (const auto& a : spec.numerators) d += a.str(ctx.denom) + ",";
        d += ";d=";
        for (const auto& b : spec.denominators) d += b.str(ctx.denom) + ",";
        return d + ";z=" + spec.argument.str(ctx.denom) + ";s=" + exp_str(spec.step, ctx.denom);
    });
    if (spec.step <= Exp{0}) throw ConfigError("series base must be positive");
    if (ctx.ncut == QSeries::kExact)
        throw ConfigError("phi_series needs a finite truncation bound");
    if (spec.numerators.size() != spec.denominators.size() + 1)
        throw ConfigError("phi_series expects r+1 numerator and r denominator monomials");
    if (spec.argument.is_zero()) return QSeries::one(ctx.denom, ctx.ncut);

    std::int64_t budget = 0;
    for (const auto& a : spec.numerators)
        budget += negative_order_sum(FactorSpec{a, spec.step, std::nullopt});
    Exp work = ctx.ncut + Exp{budget};

    QSeries out = QSeries::zero(ctx.denom, ctx.ncut);
    QSeries term = QSeries::one(ctx.denom, work);
    out += term;

    const std::int64_t guard = 32 + 4 * (ctx.ncut.units / ctx.denom + 1);
    int high_streak = 0;
    for (std::int64_t k = 1;; ++k) {
        if (k > guard)
            throw GradingError("phi_series terms have no growing q-order within the guard");
        // term_k = term_{k-1} * prod(1 - a_i q^{s(k-1)}) * z
        //          / [(1 - q^{sk}) * prod(1 - b_j q^{s(k-1)})]
        Exp prev{spec.step.units * (k - 1)};
        for (const auto& a : spec.numerators) {
            if (a.is_zero()) continue;
            QSeries factor = QSeries::one(ctx.denom);
            Monomial am = a * pure_q(prev);
            factor.add_term(am.qexp, ParamPoly(ParamMono{-am.coeff, am.xexp, am.yexp}));
            term *= factor;
        }
        term = term.shifted(spec.argument);
        term = term.divided_by_one_minus(pure_q(Exp{spec.step.units * k}));
        for (const auto& b : spec.denominators) {
            if (b.is_zero()) continue;
            term = term.divided_by_one_minus(b * pure_q(prev));
        }
        if (term.ncut() > work) term = term.restricted(work);
        auto me = term.min_exp();
        if (!me) break;  // the numerator vanished; the series terminates
        if (*me > ctx.ncut) {
            if (++high_streak >= 4) break;
        } else {
            high_streak = 0;
            out += term;
        }
    }
    return out;
}

namespace {

void for_each_shell_index(int dim, std::int64_t s,
                          const std::function<void(const LatticeSummand::Index&)>& fn) {
    if (dim == 1) {
        fn({s, 0, 0});
    } else if (dim == 2) {
        for (std::int64_t j = 0; j <= s; ++j) fn({j, s - j, 0});
    } else {
        for (std::int64_t j = 0; j <= s; ++j)
            for (std::int64_t k = 0; k + j <= s; ++k) fn({j, k, s - j - k});
    }
}

} // namespace

QSeries lattice_sum(const Ctx& ctx, const LatticeSummand& sd, int stop_margin) {
    trace::Scope ts([&] {
        // structural fingerprint: the summand sampled on fixed probe tuples
        static const LatticeSummand::Index probes[] = {
            {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {2, 1, 1}, {1, 2, 3}};
        std::string d = "lattice:dim=" + std::to_string(sd.dim);
        for (const auto& ix : probes) {
            d += ";e" + std::to_string(sd.exponent(ix).units);
            if (sd.numerator) d += ";n" + sd.numerator(ix).str();
            if (sd.numerator_factors)
                for (const auto& f : sd.numerator_factors(ix)) d += ";u" + f.str(ctx.denom);
            if (sd.denominator_factors)
                for (const auto& f : sd.denominator_factors(ix)) d += ";v" + f.str(ctx.denom);
        }
        return d;
    });
    if (ctx.ncut == QSeries::kExact)
        throw ConfigError("lattice_sum needs a finite truncation bound");
    if (sd.dim < 1 || sd.dim > 3) throw ConfigError("lattice dimension must be 1, 2 or 3");
    if (!sd.exponent) throw ConfigError("lattice summand needs an exponent function");
    if (stop_margin < 1) throw ConfigError("stop margin must be >= 1");

    QSeries out = QSeries::zero(ctx.denom, ctx.ncut);
    const std::int64_t guard = 4 * (ctx.ncut.units / ctx.denom + 1) + 8;
    int high_streak = 0;

    for (std::int64_t s = 0;; ++s) {
        if (s > guard)
            throw NonTerminationError("lattice shells did not outgrow the bound within " +
                                      std::to_string(guard) + " shells");
        std::int64_t shell_min = std::numeric_limits<std::int64_t>::max();
        for_each_shell_index(sd.dim, s, [&](const LatticeSummand::Index& idx) {
            Exp e = sd.exponent(idx);
            QSeries numer;
            bool have_numer = false;
            if (sd.numerator) {
                numer = sd.numerator(idx);
                if (numer.is_identically_zero()) return;  // term vanishes
                have_numer = true;
            }
            std::vector<FactorSpec> nfs, dfs;
            if (sd.numerator_factors) nfs = sd.numerator_factors(idx);
            if (sd.denominator_factors) dfs = sd.denominator_factors(idx);

            std::int64_t slack = 0;
            for (const auto& f : nfs) slack += negative_order_sum(f);
            std::int64_t numer_min = 0;
            if (have_numer && numer.min_exp()) numer_min = numer.min_exp()->units;
            std::int64_t low = e.units - slack + numer_min;
            shell_min = std::min(shell_min, low);
            if (low > ctx.ncut.units) return;

            Ctx sub{ctx.denom, ctx.ncut - e + Exp{slack - std::min<std::int64_t>(0, numer_min)}};
            QSeries core = have_numer ? std::move(numer) : QSeries::one(ctx.denom);
            if (!nfs.empty()) core *= poch_list(sub, nfs);
            for (const auto& f : dfs) core *= poch(sub, f).inverted();
            out += core.shifted(pure_q(e));
        });
        if (shell_min > ctx.ncut.units) {
            if (++high_streak >= stop_margin) break;
        } else {
            high_streak = 0;
        }
    }
    return out;
}

SchurPair schur(const Ctx& ctx, int m) {
    if (m < -2) throw ConfigError("Schur polynomials are defined for m >= -2");
    QSeries d0 = QSeries::one(ctx.denom);
    QSeries d1 = QSeries::one(ctx.denom);
    d1.add_term(ctx.whole(1), ParamPoly::one());  // D_1 = 1 + q
    QSeries e0 = QSeries::one(ctx.denom);
    QSeries e1 = QSeries::one(ctx.denom);

    auto forward = [&](QSeries p0, QSeries p1, int target) {
        for (int i = 2; i <= target; ++i) {
            QSeries next = p1 + p0.shifted(pure_q(ctx.whole(i)));
            p0 = std::move(p1);
            p1 = std::move(next);
        }
        return target >= 1 ? p1 : p0;
    };
    auto backward = [&](const QSeries& p_m, const QSeries& p_m1, int i) {
        // P_{i-2} = (P_i - P_{i-1}) / q^i
        QSeries diff = p_m - p_m1;
        QSeries res = diff.div_exact(pure_q(ctx.whole(i)));
        auto me = res.min_exp();
        if (me && *me < Exp{0})
            throw ExactnessError("backward Schur recurrence is not exact at m = " +
                                 std::to_string(i - 2));
        return res;
    };

    QSeries d, e;
    if (m >= 0) {
        d = forward(d0, d1, m);
        e = forward(e0, e1, m);
    } else if (m == -1) {
        d = backward(d1, d0, 1);
        e = backward(e1, e0, 1);
    } else {  // m == -2
        d = backward(d0, backward(d1, d0, 1), 0);
        e = backward(e0, backward(e1, e0, 1), 0);
    }
    return SchurPair{m, std::move(d), std::move(e)};
}

QSeries gst_rhs(const Ctx& ctx, int m) {
    trace::Scope ts([&] { return "gst_rhs:m=" + std::to_string(m); });
    if (m < 0 || m > 5)
        throw UnsupportedError("the Garrett–Ismail–Stanton product side is validated for m in [0, 5]");
    SchurPair sp = schur(ctx, m - 2);

    std::int64_t binom = static_cast<std::int64_t>(m) * (m - 1) / 2;
    Ctx sub{ctx.denom, ctx.ncut + ctx.whole(binom)};

    auto inv_pair = [&](std::int64_t a, std::int64_t b) {
        FactorSpec fs[2] = {{pure_q(sub.whole(a)), sub.whole(5), std::nullopt},
                            {pure_q(sub.whole(b)), sub.whole(5), std::nullopt}};
        return poch_list(sub, std::span<const FactorSpec>(fs, 2))
            .restricted(sub.ncut)
            .inverted();
    };
    QSeries bracket = sp.e * inv_pair(1, 4) - sp.d * inv_pair(2, 3);
    Int sign = (m % 2 == 0) ? Int(1) : Int(-1);
    return bracket.shifted(Monomial(sign, Exp{0}, Exp{0}, ctx.whole(-binom)));
}

} // namespace qrr
