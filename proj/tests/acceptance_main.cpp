// Acceptance suite: one pass/fail line per criterion, exit 0 only if all
// pass. Every check is exact coefficient equality — no tolerances anywhere.

#include <chrono>
#include <cstdio>
#include <exception>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qrr/registry.hpp"

using namespace qrr;

namespace {

int g_failed = 0;

void criterion(int num, const std::string& what, bool ok, const std::string& note = "") {
    std::printf("[%s] criterion %d: %s%s\n", ok ? "PASS" : "FAIL", num, what.c_str(),
                note.empty() ? "" : ("  (" + note + ")").c_str());
    std::fflush(stdout);
    if (!ok) ++g_failed;
}

template <class F>
void run(int num, const std::string& what, F&& body) {
    try {
        body();
    } catch (const std::exception& ex) {
        criterion(num, what, false, std::string("exception: ") + ex.what());
    }
}

Ctx ctx_at(std::int64_t order) { return Ctx{2, Exp{2 * order}}; }

bool whole_coeffs_equal(const QSeries& s, const std::vector<long>& expect) {
    for (std::size_t n = 0; n < expect.size(); ++n)
        if (!(s.coeff_whole(n) == ParamPoly(expect[n]))) return false;
    return true;
}

bool matches_dense(const QSeries& s, const oracle::Dense& d) {
    for (std::size_t n = 0; n < d.size(); ++n)
        if (!(s.coeff_whole(n) == ParamPoly(Int(d[n])))) return false;
    return true;
}

ParamPoly coeff_poly(long c, std::int64_t xw, std::int64_t yw, const Ctx& t) {
    return ParamPoly(ParamMono{Int(c), t.whole(xw), t.whole(yw)});
}

} // namespace

int main() {
    const Registry& reg = Registry::instance();

    // 1. the whole catalog at order 40 (heavy entries capped at 30), under
    //    three minutes wall clock
    run(1, "full catalog verifies at order 40 within 3 minutes", [&] {
        auto t0 = std::chrono::steady_clock::now();
        auto reps = reg.verify_all(40, 2, 0);
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::size_t passed = 0;
        std::string first_bad;
        for (const auto& r : reps) {
            if (r.status == Status::Pass) {
                ++passed;
            } else if (first_bad.empty()) {
                first_bad = r.id + ": " + r.message;
            }
        }
        bool ok = passed == reps.size() && secs < 180.0;
        criterion(1, "full catalog verifies at order 40 within 3 minutes", ok,
                  std::to_string(passed) + "/" + std::to_string(reps.size()) + " in " +
                      std::to_string(secs) + "s" +
                      (first_bad.empty() ? "" : "; first failure " + first_bad));
    });

    // 2. Rogers–Ramanujan coefficients against the congruence-partition oracle
    run(2, "rr1/rr2 coefficients match the partition oracles", [&] {
        Ctx t = ctx_at(9);
        QSeries lhs1 = reg.get("rr1").lhs(t, {}, 0);
        QSeries rhs1 = reg.get("rr1").rhs(t, {}, 0);
        bool ok = whole_coeffs_equal(lhs1, {1, 1, 1, 1, 2, 2, 3, 3, 4, 5});
        oracle::Dense d1 = oracle::partitions_into_residues(9, 5, {1, 4});
        ok = ok && matches_dense(lhs1, d1) && matches_dense(rhs1.restricted(t.ncut), d1);
        QSeries lhs2 = reg.get("rr2").lhs(t, {}, 0);
        QSeries rhs2 = reg.get("rr2").rhs(t, {}, 0);
        oracle::Dense d2 = oracle::partitions_into_residues(9, 5, {2, 3});
        ok = ok && matches_dense(lhs2, d2) && matches_dense(rhs2.restricted(t.ncut), d2);
        criterion(2, "rr1/rr2 coefficients match the partition oracles", ok);
    });

    // 3. the double sums against the dense brute-force oracle
    run(3, "uz1 matches the double-sum oracle; uz2 passes through q^40", [&] {
        Ctx t6 = ctx_at(6);
        QSeries lhs = reg.get("uz1").lhs(t6, {}, 0);
        QSeries rhs = reg.get("uz1").rhs(t6, {}, 0).restricted(t6.ncut);
        bool ok = whole_coeffs_equal(lhs, {1, 1, 2, 1, 3, 3, 5}) &&
                  whole_coeffs_equal(rhs, {1, 1, 2, 1, 3, 3, 5});
        oracle::Dense d = oracle::double_sum_dense(6, [](std::int64_t j, std::int64_t k) {
            return j * j + 2 * j * k + 2 * k * k;
        });
        ok = ok && matches_dense(lhs, d);
        ok = ok && reg.verify("uz2", 40).status == Status::Pass;
        criterion(3, "uz1 matches the double-sum oracle; uz2 passes through q^40", ok);
    });

    // 4. the parameterized identities fully symbolically at order 30
    run(4, "cw1/cw2/thm11/thm14/thm15/thm16 pass symbolically at order 30", [&] {
        bool ok = true;
        std::string note;
        for (auto id : {"cw1", "cw2", "thm11", "thm14", "thm15", "thm16"}) {
            auto rep = reg.verify(id, 30);
            if (rep.status != Status::Pass) {
                ok = false;
                note = rep.id + ": " + rep.message;
                break;
            }
        }
        // the coefficients really are polynomials in the parameters
        Ctx t = ctx_at(10);
        QSeries cw1 = reg.get("cw1").lhs(t, {}, 0);
        ok = ok && cw1.coeff_whole(1) == coeff_poly(-1, 1, 0, t);
        QSeries thm11 = reg.get("thm11").rhs(t, {}, 0);
        ok = ok && !thm11.coeff_whole(0).is_constant();
        criterion(4, "cw1/cw2/thm11/thm14/thm15/thm16 pass symbolically at order 30", ok,
                  note);
    });

    // 5. the derivation arrows, plus the Schur-product family across its range
    run(5, "derivation cross-checks and the m-family reductions hold", [&] {
        bool ok = true;
        std::string note;
        for (const auto& c : Registry::derivation_checks()) {
            auto rep = reg.run_cross_check(c);
            if (rep.status != Status::Pass) {
                ok = false;
                note = c.name + ": " + rep.message;
                break;
            }
        }
        for (int m = 0; m <= 5 && ok; ++m) {
            auto rep = reg.verify("gst", 40, {}, m);
            if (rep.status != Status::Pass) {
                ok = false;
                note = "gst(m=" + std::to_string(m) + "): " + rep.message;
            }
        }
        criterion(5, "derivation cross-checks and the m-family reductions hold", ok, note);
    });

    // 6. three-way agreement for the integral instances, stable under doubled
    //    windows and shell margins
    run(6, "integral instances: lattice = constant term = closed form, stable under 2x margins",
        [&] {
            struct Pair {
                const char* integral;
                const char* theorem;
            } pairs[] = {{"int-cc", "thm11"},
                         {"int-a3", "thm14"},
                         {"int-c3", "thm15"},
                         {"int-e3", "thm16"}};
            bool ok = true;
            std::string note;
            for (const auto& p : pairs) {
                Ctx t = ctx_at(30);
                Ctx wide = t;
                wide.stop_margin *= 2;
                wide.ct_scale *= 2;
                QSeries ct = reg.get(p.integral).lhs(t, {}, 0).restricted(t.ncut);
                QSeries lattice = reg.get(p.theorem).lhs(t, {}, 0).restricted(t.ncut);
                QSeries closed = reg.get(p.integral).rhs(t, {}, 0).restricted(t.ncut);
                QSeries ct2 = reg.get(p.integral).lhs(wide, {}, 0).restricted(t.ncut);
                QSeries lattice2 = reg.get(p.theorem).lhs(wide, {}, 0).restricted(t.ncut);
                if (!(ct.matches(lattice) && ct.matches(closed) && ct.matches(ct2) &&
                      lattice.matches(lattice2))) {
                    ok = false;
                    note = p.integral;
                    break;
                }
            }
            criterion(6,
                      "integral instances: lattice = constant term = closed form, stable "
                      "under 2x margins",
                      ok, note);
        });

    // 7. the bisection layer
    run(7, "bisection layer: wcy at 60, the section-4 families at 40, parity coherence",
        [&] {
            bool ok = true;
            std::string note;
            auto need = [&](const char* id, int order, std::optional<int> m = std::nullopt) {
                if (!ok) return;
                auto rep = reg.verify(id, order, {}, m);
                if (rep.status != Status::Pass) {
                    ok = false;
                    note = rep.id + ": " + rep.message;
                }
            };
            need("wcy-a", 60);
            need("wcy-b", 60);
            need("thm41a", 40);
            need("thm41b", 40);
            for (int m = 0; m <= 4; ++m) need("thm42a", 40, m);
            for (int m = 0; m <= 4; ++m) need("thm42b", 40, m);
            need("thm43a", 40);
            need("thm43b", 40);
            need("thm44a", 40);
            need("thm44b", 40);

            if (ok) {
                // the even part of the Cao–Wang sum at x = q^(-1/2) is the
                // first section-4 double sum; the odd part is q^(1/2) times
                // the second. Support: an x-degree-d term sits at exponent
                // >= d^2/2, so order 46 covers order 40 after the downshift.
                Ctx t40 = ctx_at(40);
                Ctx t46 = ctx_at(46);
                Environment sub;
                sub.assign('x', Monomial(Int(1), Exp{0}, Exp{0}, Exp{-1}));  // q^(-1/2)
                QSeries cw2sym = reg.get("cw2").lhs(t46, {}, 0).restricted(t46.ncut);
                QSeries even =
                    substitute(t40, cw2sym.parity_part_x(0), sub, t40.ncut);
                QSeries odd = substitute(t40, cw2sym.parity_part_x(1), sub, t40.ncut);
                QSeries a = reg.get("thm41a").lhs(t40, {}, 0).restricted(t40.ncut);
                QSeries b = reg.get("thm41b").lhs(t40, {}, 0);
                QSeries b_shifted =
                    b.shifted(Monomial(Int(1), Exp{0}, Exp{0}, Exp{1})).restricted(t40.ncut);
                if (!even.matches(a)) {
                    ok = false;
                    note = "even-part coherence";
                } else if (!odd.matches(b_shifted)) {
                    ok = false;
                    note = "odd-part coherence";
                }
            }
            criterion(7, "bisection layer: wcy at 60, the section-4 families at 40, parity "
                         "coherence",
                      ok, note);
        });

    // 8. kernel properties: randomized ring/inverse checks and the classical
    //    expansion dualities at order 40
    run(8, "kernel properties: 10000 randomized checks and the expansion dualities", [&] {
        bool ok = true;
        std::mt19937 rng(1729);
        std::uniform_int_distribution<int> nterms(0, 3), coeff(-9, 9), expo(-4, 4);
        auto rand_poly = [&] {
            ParamPoly p;
            for (int i = nterms(rng); i-- > 0;)
                p += ParamPoly(ParamMono{Int(coeff(rng)), Exp{expo(rng)}, Exp{expo(rng)}});
            return p;
        };
        Ctx t10 = ctx_at(10);
        std::uniform_int_distribution<int> expw(1, 4), sgn(0, 1), mexp(-3, 3), mco(1, 4);
        for (int i = 0; i < 10000 && ok; ++i) {
            ParamPoly a = rand_poly(), b = rand_poly(), c = rand_poly();
            ok = ok && (a + b) + c == a + (b + c);
            ok = ok && a * b == b * a;
            ok = ok && a * (b + c) == a * b + a * c;
            ok = ok && (a + (-a)).is_zero();
            ParamMono m{Int(mco(rng) * (sgn(rng) ? 1 : -1)), Exp{mexp(rng)}, Exp{mexp(rng)}};
            ok = ok && (a * ParamPoly(m)).div_exact(m) == a;
            if (i % 10 == 0) {
                QSeries s = QSeries::one(t10.denom, t10.ncut);
                if (sgn(rng)) s = s.shifted(Monomial(Int(-1)));
                for (int j = 0; j < 3; ++j)
                    s.add_term(t10.whole(expw(rng)), ParamPoly(coeff(rng)));
                QSeries prod = s * s.inverted();
                ok = ok && prod.coeff(Exp{0}) == ParamPoly(1);
                for (const auto& [e, p] : prod.terms())
                    ok = ok && (e == Exp{0} || p.is_zero());
            }
        }
        Ctx t = ctx_at(40);
        auto Q1 = Monomial(Int(1), Exp{0}, Exp{0}, t.whole(1));
        auto Q2 = Monomial(Int(1), Exp{0}, Exp{0}, t.whole(2));
        auto X1 = Monomial(Int(1), t.whole(1), Exp{0}, Exp{0});
        auto Y1 = Monomial(Int(1), Exp{0}, t.whole(1), Exp{0});
        auto Y2 = Monomial(Int(1), Exp{0}, t.whole(2), Exp{0});
        std::vector<Monomial> eargs = {Q1, Q2, -Q1, X1 * Q1, Y2 * Q1};
        for (const auto& z : eargs) {
            ok = ok && euler_a(t, z, t.whole(1))
                           .matches(poch(t, FactorSpec{-z, t.whole(1), std::nullopt}));
            ok = ok && euler_b(t, z, t.whole(1))
                           .matches(poch(t, FactorSpec{z, t.whole(1), std::nullopt})
                                        .restricted(t.ncut)
                                        .inverted());
        }
        std::vector<Monomial> jargs = {Q1, -Q1, Q2, -Q2, X1 * Q1, Y1 * Q2};
        for (const auto& w : jargs) {
            QSeries sum = jacobi_triple(t, w, t.whole(1), JacobiForm::Sum);
            QSeries prod = jacobi_triple(t, w, t.whole(1), JacobiForm::Product);
            ok = ok && sum.matches(prod.restricted(t.ncut));
        }
        criterion(8, "kernel properties: 10000 randomized checks and the expansion dualities",
                  ok);
    });

    if (g_failed == 0) {
        std::printf("acceptance: all 8 criteria pass\n");
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", g_failed);
    return 1;
}
