#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qrr/qseries.hpp"

using namespace qrr;

namespace {

Ctx ctx_at(std::int64_t order) { return Ctx{2, Exp{2 * order}}; }

Monomial Q(const Ctx& t, std::int64_t p) { return Monomial(Int(1), Exp{0}, Exp{0}, t.whole(p)); }
Monomial Xm(const Ctx& t, std::int64_t p = 1) {
    return Monomial(Int(1), t.whole(p), Exp{0}, Exp{0});
}
Monomial Ym(const Ctx& t, std::int64_t p = 1) {
    return Monomial(Int(1), Exp{0}, t.whole(p), Exp{0});
}

// frozen whole-power coefficients against a series
void check_whole(const QSeries& s, const std::vector<long>& expect) {
    for (std::size_t n = 0; n < expect.size(); ++n) {
        INFO("coefficient of q^", n);
        CHECK(s.coeff_whole(n) == ParamPoly(expect[n]));
    }
}

void check_matches_dense(const QSeries& s, const oracle::Dense& d) {
    for (std::size_t n = 0; n < d.size(); ++n) {
        INFO("coefficient of q^", n);
        CHECK(s.coeff_whole(n) == ParamPoly(Int(d[n])));
    }
}

} // namespace

TEST_CASE("series addition") {
    Ctx t = ctx_at(8);
    QSeries a = QSeries::one(t.denom, t.ncut);
    a.add_term(t.whole(1), ParamPoly(1));
    QSeries b = QSeries::one(t.denom, t.ncut);
    b.add_term(t.whole(1), ParamPoly(-1));
    check_whole(a + b, {2, 0});
    CHECK((a + QSeries::zero(t.denom, t.ncut)).matches(a));
    // Laurent bookkeeping: q^-1 + q keeps the lower support bound
    QSeries c = QSeries::from_monomial(t.denom, Q(t, -1), t.ncut);
    QSeries d = QSeries::from_monomial(t.denom, Q(t, 1), t.ncut);
    QSeries sum = c + d;
    CHECK(sum.lo() == t.whole(-1));
    CHECK(sum.coeff(t.whole(-1)) == ParamPoly(1));
}

TEST_CASE("series multiplication truncates completely") {
    Ctx t = ctx_at(3);
    QSeries geom = QSeries::zero(t.denom, t.ncut);
    for (int n = 0; n <= 3; ++n) geom.add_term(t.whole(n), ParamPoly(1));
    QSeries one_minus_q = QSeries::one(t.denom);
    one_minus_q.add_term(t.whole(1), ParamPoly(-1));
    // (1-q)(1+q+q^2+q^3) telescopes to 1 below the truncation
    check_whole(one_minus_q * geom, {1, 0, 0, 0});

    QSeries qinv = QSeries::from_monomial(t.denom, Q(t, -1), t.ncut);
    QSeries q1 = QSeries::from_monomial(t.denom, Q(t, 1), t.ncut);
    CHECK((qinv * q1).coeff(Exp{0}) == ParamPoly(1));
}

TEST_CASE("inversion by geometric series") {
    Ctx t = ctx_at(3);
    QSeries one_minus_q = QSeries::one(t.denom, t.ncut);
    one_minus_q.add_term(t.whole(1), ParamPoly(-1));
    check_whole(one_minus_q.inverted(), {1, 1, 1, 1});
    CHECK(QSeries::one(t.denom, t.ncut).inverted().matches(QSeries::one(t.denom, t.ncut)));
}

TEST_CASE("inversion handles a negative lowest exponent") {
    Ctx t = ctx_at(4);
    // 1 - q^-1 = -q^-1 (1 - q); the inverse is -q(1+q+q^2+...)
    QSeries s = QSeries::one(t.denom, t.ncut);
    s.add_term(t.whole(-1), ParamPoly(-1));
    QSeries inv = s.inverted();
    for (int n = 1; n <= 3; ++n) CHECK(inv.coeff_whole(n) == ParamPoly(-1));
    CHECK(inv.coeff_whole(0).is_zero());
    // multiplying back gives 1
    QSeries prod = s * inv;
    CHECK(prod.coeff(Exp{0}) == ParamPoly(1));
    for (int u = 1; u <= prod.ncut().units; ++u) CHECK(prod.coeff(Exp{u}).is_zero());
}

TEST_CASE("inversion requires a unit head") {
    Ctx t = ctx_at(4);
    QSeries two = QSeries::constant(t.denom, ParamPoly(2), t.ncut);
    CHECK_THROWS_AS(two.inverted(), InversionError);
    CHECK_THROWS_AS(QSeries::zero(t.denom, t.ncut).inverted(), InversionError);
}

TEST_CASE("finite Pochhammer expansion") {
    Ctx t = ctx_at(10);
    // (q;q)_2 = (1-q)(1-q^2) = 1 - q - q^2 + q^3
    check_whole(poch(t, FactorSpec{Q(t, 1), t.whole(1), 2}), {1, -1, -1, 1, 0});
    // empty product
    check_whole(poch(t, FactorSpec{Q(t, 1), t.whole(1), 0}), {1, 0});
}

TEST_CASE("infinite Pochhammer matches the brute-force product") {
    Ctx t = ctx_at(7);
    QSeries p = poch(t, FactorSpec{Q(t, 1), t.whole(1), std::nullopt});
    check_whole(p, {1, -1, -1, 0, 0, 1, 0, 1});  // pentagonal pattern
    check_matches_dense(p, oracle::poch_dense(7, 1, 1));
}

TEST_CASE("poch recurrence in the count") {
    Ctx t = ctx_at(20);
    for (int n = 0; n <= 12; ++n) {
        QSeries lhs = poch(t, FactorSpec{Q(t, 1), t.whole(1), n + 1});
        QSeries fac = QSeries::one(t.denom);
        fac.add_term(t.whole(1 + n), ParamPoly(-1));
        CHECK(lhs.matches(poch(t, FactorSpec{Q(t, 1), t.whole(1), n}) * fac));
    }
}

TEST_CASE("poch_list") {
    Ctx t = ctx_at(20);
    // (q,-q,-q^2;q^2)_inf = 1
    QSeries unit = poch_list(t, {FactorSpec{Q(t, 1), t.whole(2), std::nullopt},
                                 FactorSpec{-Q(t, 1), t.whole(2), std::nullopt},
                                 FactorSpec{-Q(t, 2), t.whole(2), std::nullopt}});
    CHECK(unit.matches(QSeries::one(t.denom, t.ncut)));
    CHECK(poch_list(t, {}).matches(QSeries::one(t.denom, t.ncut)));
    // (q^3;q^3)_inf^2 = 1 - 2q^3 - q^6 + ... at low order
    Ctx t6 = ctx_at(6);
    QSeries sq = poch_list(t6, {FactorSpec{Q(t6, 3), t6.whole(3), std::nullopt},
                                FactorSpec{Q(t6, 3), t6.whole(3), std::nullopt}});
    check_whole(sq, {1, 0, 0, -2, 0, 0, -1});
}

TEST_CASE("euler_a expansion") {
    Ctx t = ctx_at(4);
    // coefficients count partitions into distinct parts
    QSeries s = euler_a(t, Q(t, 1), t.whole(1));
    check_matches_dense(s, oracle::distinct_partitions(4));
    CHECK(euler_a(t, Monomial(Int(0)), t.whole(1)).matches(QSeries::one(t.denom, t.ncut)));
    // coefficient of q^1 in euler_a(xq) is x (the k = 1 term)
    QSeries sx = euler_a(t, Xm(t) * Q(t, 1), t.whole(1));
    CHECK(sx.coeff_whole(1) == ParamPoly(ParamMono{Int(1), t.whole(1), Exp{0}}));
}

TEST_CASE("euler duality: sum sides equal product sides") {
    Ctx t = ctx_at(40);
    std::vector<Monomial> args = {Q(t, 1), Q(t, 2), -Q(t, 1), Xm(t) * Q(t, 1),
                                  Ym(t, 2) * Q(t, 1)};
    for (const auto& z : args) {
        CAPTURE(z.str(t.denom));
        CHECK(euler_a(t, z, t.whole(1))
                  .matches(poch(t, FactorSpec{-z, t.whole(1), std::nullopt})));
        CHECK(euler_b(t, z, t.whole(1))
                  .matches(poch(t, FactorSpec{z, t.whole(1), std::nullopt})
                               .restricted(t.ncut)
                               .inverted()));
    }
}

TEST_CASE("euler_b counts partitions and rejects ungraded arguments") {
    Ctx t = ctx_at(4);
    check_matches_dense(euler_b(t, Q(t, 1), t.whole(1)), oracle::partitions(4));
    CHECK(euler_b(t, Monomial(Int(0)), t.whole(1)).matches(QSeries::one(t.denom, t.ncut)));
    CHECK_THROWS_AS(euler_b(t, Xm(t), t.whole(1)), GradingError);
}

TEST_CASE("jacobi triple product: bilateral sum equals the product") {
    Ctx t = ctx_at(40);
    std::vector<Monomial> args = {Q(t, 1), -Q(t, 1), Q(t, 2), -Q(t, 2), Xm(t) * Q(t, 1),
                                  Ym(t) * Q(t, 2)};
    for (const auto& w : args) {
        CAPTURE(w.str(t.denom));
        QSeries sum = jacobi_triple(t, w, t.whole(1), JacobiForm::Sum);
        QSeries prod = jacobi_triple(t, w, t.whole(1), JacobiForm::Product);
        CHECK(sum.matches(prod.restricted(t.ncut)));
    }
    // w = q: the constant term collects k = 0 and k = -1
    QSeries s = jacobi_triple(t, Q(t, 1), t.whole(1), JacobiForm::Sum);
    CHECK(s.coeff(Exp{0}) == ParamPoly(2));
    // w = -q telescopes to zero on both routes
    QSeries z = jacobi_triple(t, -Q(t, 1), t.whole(1), JacobiForm::Sum);
    CHECK(z.is_identically_zero());
}

TEST_CASE("truncation monotonicity") {
    Ctx big = ctx_at(20), small = ctx_at(9);
    QSeries at_big = poch(big, FactorSpec{-Q(big, 1), big.whole(1), std::nullopt});
    QSeries at_small = poch(small, FactorSpec{-Q(small, 1), small.whole(1), std::nullopt});
    CHECK(at_big.restricted(small.ncut).matches(at_small));

    QSeries eb_big = euler_b(big, Q(big, 1), big.whole(1));
    QSeries eb_small = euler_b(small, Q(small, 1), small.whole(1));
    CHECK(eb_big.restricted(small.ncut).matches(eb_small));
}

TEST_CASE("randomized inverse checks") {
    Ctx t = ctx_at(10);
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> coeff(-3, 3), expw(1, 4), sign(0, 1);
    for (int i = 0; i < 300; ++i) {
        QSeries s = QSeries::one(t.denom, t.ncut);
        if (sign(rng)) s = s.shifted(Monomial(Int(-1)));
        for (int j = 0; j < 3; ++j)
            s.add_term(t.whole(expw(rng)), ParamPoly(coeff(rng)));
        QSeries prod = s * s.inverted();
        CHECK(prod.coeff(Exp{0}) == ParamPoly(1));
        bool rest_zero = true;
        for (const auto& [e, p] : prod.terms())
            if (e != Exp{0}) rest_zero = false;
        CHECK(rest_zero);
    }
}

TEST_CASE("environments resolve parameters to q-monomials") {
    Ctx t = ctx_at(10);
    Environment env;
    env.assign('x', Q(t, 1));
    env.assign('y', Monomial(Int(1), Exp{0}, Exp{0}, Exp{1}));  // q^(1/2)
    // x y^2 q -> q^(1+1+1) = q^3
    Monomial r = env.resolve(t, Xm(t) * Ym(t, 2) * Q(t, 1));
    CHECK(r == Q(t, 3));
    // the identity environment keeps parameters symbolic
    Environment id;
    Monomial keep = id.resolve(t, Xm(t) * Ym(t));
    CHECK(keep.xexp == t.whole(1));
    CHECK(keep.yexp == t.whole(1));
    // x -> 0 annihilates positive powers, keeps x^0
    Environment zero;
    zero.assign('x', Monomial(Int(0)));
    CHECK(zero.resolve(t, Xm(t) * Ym(t)).is_zero());
    CHECK(zero.resolve(t, Ym(t)).yexp == t.whole(1));
    // fractional powers demand a representable result
    Environment bad;
    bad.assign('x', Monomial(Int(1), Exp{0}, Exp{0}, Exp{1}));
    Monomial half_x(Int(1), Exp{1}, Exp{0}, Exp{0});  // x^(1/2)
    CHECK_THROWS_AS(bad.resolve(t, half_x), ConfigError);
    Environment negc;
    negc.assign('x', -Q(t, 1));
    CHECK_THROWS_AS(negc.resolve(t, half_x), ConfigError);
    // parameter-to-parameter substitutions are out of scope for environments
    Environment cross;
    CHECK_THROWS_AS(cross.assign('y', Xm(t) * Q(t, 1)), ConfigError);
    CHECK_THROWS_AS(cross.assign('z', Q(t, 1)), ConfigError);
}

TEST_CASE("post-hoc substitution matches build-time specialization") {
    Ctx t = ctx_at(10);
    Environment env;
    env.assign('x', Q(t, 2));
    QSeries sym = poch(t, FactorSpec{-(Xm(t) * Q(t, 1)), t.whole(1), std::nullopt});
    QSeries direct = poch(t, FactorSpec{-(env.resolve(t, Xm(t) * Q(t, 1))), t.whole(1),
                                        std::nullopt});
    // substitution moves support upward here, so the bound carries over
    QSeries subbed = substitute(t, sym.restricted(t.ncut), env, t.ncut);
    CHECK(subbed.matches(direct.restricted(t.ncut)));
}
