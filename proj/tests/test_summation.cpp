#include <doctest.h>

#include "oracles.hpp"
#include "qrr/summation.hpp"

using namespace qrr;

namespace {

Ctx ctx_at(std::int64_t order) { return Ctx{2, Exp{2 * order}}; }

Monomial Q(const Ctx& t, std::int64_t p) { return Monomial(Int(1), Exp{0}, Exp{0}, t.whole(p)); }

void check_whole(const QSeries& s, const std::vector<long>& expect) {
    for (std::size_t n = 0; n < expect.size(); ++n) {
        INFO("coefficient of q^", n);
        CHECK(s.coeff_whole(n) == ParamPoly(expect[n]));
    }
}

} // namespace

TEST_CASE("phi_series reproduces the q-binomial theorem") {
    Ctx t = ctx_at(10);
    // 1phi0(q^2; -; q, q) = (q^3;q)_inf/(q;q)_inf
    QSeries lhs = phi_series(t, PhiSpec{{Q(t, 2)}, {}, t.whole(1), Q(t, 1)});
    QSeries rhs = poch(t, FactorSpec{Q(t, 3), t.whole(1), std::nullopt}) *
                  poch(t, FactorSpec{Q(t, 1), t.whole(1), std::nullopt})
                      .restricted(t.ncut)
                      .inverted();
    CHECK(lhs.matches(rhs));
    // the q-binomial theorem over several monomial choices
    Ctx t40 = ctx_at(40);
    struct Choice {
        std::int64_t a, z;
    } choices[] = {{1, 1}, {2, 1}, {1, 2}, {3, 1}, {2, 3}, {4, 2}};
    for (auto [a, z] : choices) {
        CAPTURE(a);
        CAPTURE(z);
        QSeries sum = phi_series(t40, PhiSpec{{Q(t40, a)}, {}, t40.whole(1), Q(t40, z)});
        QSeries closed =
            poch(t40, FactorSpec{Q(t40, a + z), t40.whole(1), std::nullopt}) *
            poch(t40, FactorSpec{Q(t40, z), t40.whole(1), std::nullopt})
                .restricted(t40.ncut)
                .inverted();
        CHECK(sum.matches(closed));
    }
}

TEST_CASE("phi_series trivia and failure modes") {
    Ctx t = ctx_at(10);
    CHECK(phi_series(t, PhiSpec{{Q(t, 1)}, {}, t.whole(1), Monomial(Int(0))})
              .matches(QSeries::one(t.denom, t.ncut)));
    // 2phi1(q,-q;-q;q,t) at t = q^2 equals (q^2 t;q^2)/(t;q^2) with a = q
    QSeries lhs = phi_series(
        t, PhiSpec{{Q(t, 1), -Q(t, 1)}, {-Q(t, 1)}, t.whole(1), Q(t, 2)});
    QSeries rhs = poch(t, FactorSpec{Q(t, 4), t.whole(2), std::nullopt}) *
                  poch(t, FactorSpec{Q(t, 2), t.whole(2), std::nullopt})
                      .restricted(t.ncut)
                      .inverted();
    CHECK(lhs.matches(rhs));
    // a constant argument never grades
    Monomial x(Int(1), t.whole(1), Exp{0}, Exp{0});
    CHECK_THROWS_AS(phi_series(t, PhiSpec{{Q(t, 1)}, {}, t.whole(1), x}), GradingError);
}

TEST_CASE("lattice_sum on the first Uncu–Zudilin shape") {
    Ctx t = ctx_at(6);
    LatticeSummand sd;
    sd.dim = 2;
    sd.exponent = [t](const LatticeSummand::Index& i) {
        return t.whole(i[0] * i[0] + 2 * i[0] * i[1] + 2 * i[1] * i[1]);
    };
    sd.denominator_factors = [t](const LatticeSummand::Index& i) {
        return std::vector<FactorSpec>{FactorSpec{Q(t, 1), t.whole(1), i[0]},
                                       FactorSpec{Q(t, 2), t.whole(2), i[1]}};
    };
    QSeries s = lattice_sum(t, sd);
    check_whole(s, {1, 1, 2, 1, 3, 3, 5});
    // independent dense-array route
    oracle::Dense d = oracle::double_sum_dense(
        6, [](std::int64_t j, std::int64_t k) { return j * j + 2 * j * k + 2 * k * k; });
    for (int n = 0; n <= 6; ++n) CHECK(s.coeff_whole(n) == ParamPoly(Int(d[n])));
}

TEST_CASE("lattice_sum is independent of the stop margin") {
    Ctx t = ctx_at(12);
    LatticeSummand sd;
    sd.dim = 2;
    sd.exponent = [t](const LatticeSummand::Index& i) {
        return t.whole(i[0] * i[0] + 2 * i[0] * i[1] + 2 * i[1] * i[1] + i[0] + 2 * i[1]);
    };
    sd.denominator_factors = [t](const LatticeSummand::Index& i) {
        return std::vector<FactorSpec>{FactorSpec{Q(t, 1), t.whole(1), i[0]},
                                       FactorSpec{Q(t, 2), t.whole(2), i[1]}};
    };
    CHECK(lattice_sum(t, sd, 3).matches(lattice_sum(t, sd, 6)));
}

TEST_CASE("lattice_sum edge cases") {
    Ctx t = ctx_at(8);
    LatticeSummand zero;
    zero.dim = 1;
    zero.exponent = [t](const LatticeSummand::Index& i) { return t.whole(i[0]); };
    zero.numerator = [t](const LatticeSummand::Index&) { return QSeries::zero(t.denom); };
    CHECK(lattice_sum(t, zero).is_identically_zero());

    LatticeSummand flat;
    flat.dim = 1;
    flat.exponent = [](const LatticeSummand::Index&) { return Exp{0}; };
    CHECK_THROWS_AS(lattice_sum(t, flat), NonTerminationError);
}

TEST_CASE("Schur polynomials") {
    Ctx t = ctx_at(20);
    CHECK(schur(t, 0).d.matches(QSeries::one(t.denom)));
    check_whole(schur(t, 1).d, {1, 1});
    CHECK(schur(t, 1).e.matches(QSeries::one(t.denom)));
    check_whole(schur(t, 2).d, {1, 1, 1});
    // backward recurrence: D_-1 = 1, D_-2 = 0, E_-1 = 0, E_-2 = 1
    CHECK(schur(t, -1).d.matches(QSeries::one(t.denom)));
    CHECK(schur(t, -2).d.is_identically_zero());
    CHECK(schur(t, -1).e.is_identically_zero());
    CHECK(schur(t, -2).e.matches(QSeries::one(t.denom)));
    CHECK_THROWS_AS(schur(t, -3), ConfigError);
    // forward recurrence holds
    for (int m = 2; m <= 8; ++m) {
        QSeries expect = schur(t, m - 1).d + schur(t, m - 2).d.shifted(Q(t, m));
        CHECK(schur(t, m).d.matches(expect));
    }
}

TEST_CASE("gst_rhs specializes to the Rogers–Ramanujan product sides") {
    Ctx t = ctx_at(20);
    QSeries rr1 = poch_list(t, {FactorSpec{Q(t, 1), t.whole(5), std::nullopt},
                                FactorSpec{Q(t, 4), t.whole(5), std::nullopt}})
                      .restricted(t.ncut)
                      .inverted();
    CHECK(gst_rhs(t, 0).restricted(t.ncut).matches(rr1));
    QSeries rr2 = poch_list(t, {FactorSpec{Q(t, 2), t.whole(5), std::nullopt},
                                FactorSpec{Q(t, 3), t.whole(5), std::nullopt}})
                      .restricted(t.ncut)
                      .inverted();
    CHECK(gst_rhs(t, 1).restricted(t.ncut).matches(rr2));
    CHECK_THROWS_AS(gst_rhs(t, 6), UnsupportedError);
    CHECK_THROWS_AS(gst_rhs(t, -1), UnsupportedError);
}

TEST_CASE("gst identity at m = 2 against the plain sum") {
    Ctx t = ctx_at(30);
    LatticeSummand sd;
    sd.dim = 1;
    sd.exponent = [t](const LatticeSummand::Index& i) {
        return t.whole(i[0] * i[0] + 2 * i[0]);
    };
    sd.denominator_factors = [t](const LatticeSummand::Index& i) {
        return std::vector<FactorSpec>{FactorSpec{Q(t, 1), t.whole(1), i[0]}};
    };
    CHECK(lattice_sum(t, sd).matches(gst_rhs(t, 2).restricted(t.ncut)));
}
