#include <benchmark/benchmark.h>

#include "qrr/expr.hpp"
#include "qrr/registry.hpp"

using namespace qrr;

namespace {

Ctx ctx_at(std::int64_t order) { return Ctx{2, Exp{2 * order}}; }

Monomial Q(const Ctx& t, std::int64_t p) { return Monomial(Int(1), Exp{0}, Exp{0}, t.whole(p)); }

} // namespace

static void BM_qseries_mul(benchmark::State& state) {
    Ctx t = ctx_at(state.range(0));
    QSeries a = poch(t, FactorSpec{-Q(t, 1), t.whole(1), std::nullopt});
    QSeries b = poch(t, FactorSpec{Q(t, 1), t.whole(1), std::nullopt})
                    .restricted(t.ncut)
                    .inverted();
    for (auto _ : state) {
        QSeries p = a * b;
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_qseries_mul)->Arg(20)->Arg(40)->Arg(80);

static void BM_poch_infinite(benchmark::State& state) {
    Ctx t = ctx_at(state.range(0));
    FactorSpec f{Q(t, 1), t.whole(1), std::nullopt};
    for (auto _ : state) {
        QSeries p = poch(t, f);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_poch_infinite)->Arg(40)->Arg(120);

static void BM_invert(benchmark::State& state) {
    Ctx t = ctx_at(state.range(0));
    QSeries p = poch(t, FactorSpec{Q(t, 1), t.whole(1), std::nullopt}).restricted(t.ncut);
    for (auto _ : state) {
        QSeries inv = p.inverted();
        benchmark::DoNotOptimize(inv);
    }
}
BENCHMARK(BM_invert)->Arg(40)->Arg(120);

static void BM_euler_b(benchmark::State& state) {
    Ctx t = ctx_at(state.range(0));
    Monomial q1 = Q(t, 1);
    for (auto _ : state) {
        QSeries s = euler_b(t, q1, t.whole(1));
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_euler_b)->Arg(40)->Arg(80);

static void BM_lattice_uz1(benchmark::State& state) {
    Ctx t = ctx_at(state.range(0));
    LatticeSummand sd;
    sd.dim = 2;
    sd.exponent = [t](const LatticeSummand::Index& i) {
        return t.whole(i[0] * i[0] + 2 * i[0] * i[1] + 2 * i[1] * i[1]);
    };
    sd.denominator_factors = [t](const LatticeSummand::Index& i) {
        return std::vector<FactorSpec>{FactorSpec{Q(t, 1), t.whole(1), i[0]},
                                       FactorSpec{Q(t, 2), t.whole(2), i[1]}};
    };
    for (auto _ : state) {
        QSeries s = lattice_sum(t, sd);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_lattice_uz1)->Arg(20)->Arg(40);

static void BM_phi_qbinom(benchmark::State& state) {
    Ctx t = ctx_at(40);
    PhiSpec spec{{Q(t, 2)}, {}, t.whole(1), Q(t, 1)};
    for (auto _ : state) {
        QSeries s = phi_series(t, spec);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_phi_qbinom);

static void BM_constant_term_cc(benchmark::State& state) {
    Ctx t = ctx_at(state.range(0));
    Monomial x(Int(1), t.whole(1), Exp{0}, Exp{0});
    Monomial y2(Int(1), Exp{0}, t.whole(2), Exp{0});
    ZFactor fs[3] = {ZFactor{ZKind::EulerA, -x, 1, t.whole(1), {}},
                     ZFactor{ZKind::EulerB, y2, 2, t.whole(2), {}},
                     ZFactor{ZKind::JacobiZ, Monomial(Int(-1)), -1, t.whole(1), {}}};
    for (auto _ : state) {
        QSeries s = constant_term(t, std::span<const ZFactor>(fs, 3));
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_constant_term_cc)->Arg(15)->Arg(30);

static void BM_verify_rr1(benchmark::State& state) {
    const auto& reg = Registry::instance();
    for (auto _ : state) {
        auto rep = reg.verify("rr1", 40);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_verify_rr1);

static void BM_expand_expr(benchmark::State& state) {
    Ctx t = ctx_at(40);
    ExprAst ast = parse_expr("1/(q,q^4;q^5)_inf");
    for (auto _ : state) {
        QSeries s = eval_expr(t, ast);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_expand_expr);

BENCHMARK_MAIN();
