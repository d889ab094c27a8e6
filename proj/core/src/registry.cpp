#include "qrr/registry.hpp"

#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

namespace qrr {

namespace {

using Idx = LatticeSummand::Index;
using detail::negative_order_sum;

Monomial C(long c) { return Monomial(Int(c)); }
Monomial Q(const Ctx& t, std::int64_t p) {
    return Monomial(Int(1), Exp{0}, Exp{0}, t.whole(p));
}
Monomial Qf(const Ctx& t, std::int64_t n, std::int64_t d) {
    return Monomial(Int(1), Exp{0}, Exp{0}, t.frac(n, d));
}
Monomial X(const Ctx& t, std::int64_t p = 1) {
    return Monomial(Int(1), t.whole(p), Exp{0}, Exp{0});
}
Monomial Y(const Ctx& t, std::int64_t p = 1) {
    return Monomial(Int(1), Exp{0}, t.whole(p), Exp{0});
}

Monomial mdiv(const Monomial& a, const Monomial& b) {
    if (!b.is_unit()) throw ConfigError("monomial division needs a unit divisor");
    return Monomial(a.coeff * b.coeff, a.xexp - b.xexp, a.yexp - b.yexp, a.qexp - b.qexp);
}

FactorSpec F(const Ctx& t, Monomial arg, std::int64_t step,
             std::optional<std::int64_t> n = std::nullopt) {
    return FactorSpec{std::move(arg), t.whole(step), n};
}

std::int64_t ch2(std::int64_t n) { return n * (n - 1) / 2; }
long sgn(std::int64_t k) { return k % 2 == 0 ? 1 : -1; }

/// prod(num) / prod(den), with the completeness padding the negative factor
/// orders require.
QSeries products(const Ctx& t, std::vector<FactorSpec> num, std::vector<FactorSpec> den) {
    std::int64_t pad = 0;
    for (const auto& f : num) pad += negative_order_sum(f);
    for (const auto& f : den) pad += 2 * negative_order_sum(f);
    Ctx sub = t;
    sub.ncut = t.ncut == QSeries::kExact ? QSeries::kExact : t.ncut + Exp{pad};
    QSeries r = poch_list(sub, std::span<const FactorSpec>(num.data(), num.size()));
    if (!den.empty()) {
        QSeries d = poch_list(sub, std::span<const FactorSpec>(den.data(), den.size()));
        r = r * d.restricted(min(d.ncut(), sub.ncut)).inverted();
    }
    return r;
}

QSeries qq2_inf(const Ctx& t) { return poch(t, F(t, Q(t, 1), 2)); }  // (q;q^2)_inf

// ---- right-hand sides shared between theorem records and the integral
// ---- instances (the closed form is the third route of the three-way check)

QSeries thm11_rhs(const Ctx& t, const Environment& e) {
    Monomial xm = e.resolve(t, X(t));
    Monomial ym = e.resolve(t, Y(t));
    LatticeSummand sd;
    sd.dim = 1;
    sd.exponent = [t](const Idx& i) { return t.whole(ch2(i[0])); };
    // (-x/y;q)_k y^k combined to prod_{r<k}(y + x q^r), and
    // (y;q)_inf/(y;q)_k to (y q^k;q)_inf, so grading survives symbolic y.
    sd.numerator = [t, xm, ym](const Idx& i) {
        QSeries p = QSeries::one(t.denom);
        for (std::int64_t r = 0; r < i[0]; ++r) {
            QSeries fac(t.denom, QSeries::kExact);
            fac.add_term(ym.qexp, ParamPoly(ym.param()));
            Monomial xq = xm * Q(t, r);
            fac.add_term(xq.qexp, ParamPoly(xq.param()));
            p *= fac;
        }
        return p;
    };
    sd.numerator_factors = [t, ym](const Idx& i) {
        return std::vector<FactorSpec>{FactorSpec{ym * Q(t, i[0]), t.whole(1), std::nullopt}};
    };
    sd.denominator_factors = [t](const Idx& i) {
        return std::vector<FactorSpec>{F(t, Q(t, 1), 1, i[0])};
    };
    return lattice_sum(t, sd, t.stop_margin);
}

QSeries thm14_rhs(const Ctx& t, const Environment& e) {
    return products(t,
                    {F(t, e.resolve(t, Q(t, 1) * X(t)), 2), F(t, e.resolve(t, X(t) * Y(t)), 2),
                     F(t, -Q(t, 1), 1)},
                    {});
}

QSeries thm15_rhs(const Ctx& t, const Environment& e) {
    Monomial xy = e.resolve(t, X(t) * Y(t));
    Monomial ym = e.resolve(t, Y(t));
    QSeries a = products(t, {F(t, xy, 1), F(t, -ym, 1)}, {});
    QSeries b = products(t, {F(t, -xy, 1), F(t, ym, 1)}, {});
    return ((a + b) * qq2_inf(t)).div_exact(Int(2));
}

QSeries thm16_rhs(const Ctx& t, const Environment& e) {
    Monomial xy = e.resolve(t, X(t) * Y(t));
    Monomial yq = e.resolve(t, Y(t) * Q(t, -1));  // y/q
    Monomial qx = e.resolve(t, Q(t, 1) * X(t));
    if (yq.is_zero()) throw ConfigError("thm16 needs y != 0: the divisor y/q - xy vanishes");
    if (!qx.is_zero() && qx.qexp <= Exp{0})
        throw ConfigError("thm16 excludes assignments where (1 - q x) loses grading");
    // the divisor y/q - xy factors as (y/q)(1 - qx): exact monomial division
    // followed by a graded geometric inverse
    QSeries a = products(t, {F(t, xy, 1), F(t, -yq, 1)}, {});
    QSeries b = products(t, {F(t, -xy, 1), F(t, yq, 1)}, {});
    QSeries core = ((a - b) * qq2_inf(t)).div_exact(Int(2)).div_exact(yq);
    return core.divided_by_one_minus(qx);
}

// ---- Heine / three-term specialization tables -------------------------------

struct FourParams {
    long ca;
    std::int64_t ea;
    long cb;
    std::int64_t eb;
    long cc;
    std::int64_t ec;
    long cz;
    std::int64_t ez;
};

// every parameter at +-q^e, e in {1,2,3}; combinations keep c/a (resp.
// abz/c) at positive q-order so both sides stay graded
constexpr FourParams kHeineA[6] = {
    {1, 1, 1, 2, 1, 3, 1, 2}, {-1, 1, 1, 1, 1, 2, 1, 1}, {1, 1, -1, 2, 1, 3, -1, 1},
    {1, 2, 1, 1, 1, 3, 1, 1}, {1, 1, 1, 1, 1, 3, 1, 2},  {-1, 1, -1, 1, 1, 3, 1, 2},
};
constexpr FourParams kHeineB[6] = {
    {1, 1, 1, 2, 1, 2, 1, 1}, {1, 1, 1, 1, 1, 2, 1, 2}, {-1, 1, 1, 1, 1, 2, 1, 1},
    {1, 2, 1, 1, 1, 3, 1, 1}, {1, 1, -1, 2, 1, 2, 1, 1}, {1, 2, 1, 2, 1, 3, 1, 1},
};

struct HeineParams {
    Monomial a, b, c, z;
};

HeineParams heine_params(const Ctx& t, const FourParams& p) {
    return {Monomial(Int(p.ca), Exp{0}, Exp{0}, t.whole(p.ea)),
            Monomial(Int(p.cb), Exp{0}, Exp{0}, t.whole(p.eb)),
            Monomial(Int(p.cc), Exp{0}, Exp{0}, t.whole(p.ec)),
            Monomial(Int(p.cz), Exp{0}, Exp{0}, t.whole(p.ez))};
}

QSeries phi21(const Ctx& t, const Monomial& a, const Monomial& b, const Monomial& c,
              const Monomial& z) {
    return phi_series(t, PhiSpec{{a, b}, {c}, t.whole(1), z});
}

// (x, y) pairs for the three-term transformation instance
constexpr struct {
    std::int64_t xn, xd, yn, yd;
} kThreeTerm[3] = {{1, 1, 1, 2}, {3, 1, 3, 2}, {3, 1, 1, 1}};

Environment three_term_env(const Ctx& t, int m) {
    Environment e;
    e.assign('x', Qf(t, kThreeTerm[m].xn, kThreeTerm[m].xd));
    e.assign('y', Qf(t, kThreeTerm[m].yn, kThreeTerm[m].yd));
    return e;
}

// ---- contour factor shorthands ----------------------------------------------

ZFactor EA(const Monomial& arg, int zdeg, Exp step) {
    return ZFactor{ZKind::EulerA, arg, zdeg, step, Monomial()};
}
ZFactor EB(const Monomial& arg, int zdeg, Exp step) {
    return ZFactor{ZKind::EulerB, arg, zdeg, step, Monomial()};
}
ZFactor QB(const Monomial& a, const Monomial& arg, int zdeg, Exp step) {
    return ZFactor{ZKind::QBinom, arg, zdeg, step, a};
}
ZFactor JZ(const Monomial& arg, int zdeg, Exp step) {
    return ZFactor{ZKind::JacobiZ, arg, zdeg, step, Monomial()};
}

std::vector<FactorSpec> den3(const Ctx& t, const Idx& i) {
    return {F(t, Q(t, 1), 1, i[0]), F(t, Q(t, 2), 2, i[1]), F(t, Q(t, 2), 2, i[2])};
}

} // namespace

std::string status_str(Status s) {
    switch (s) {
        case Status::Pass: return "PASS";
        case Status::Fail: return "FAIL";
        case Status::Error: return "ERROR";
    }
    return "?";
}

Environment CrossCheck::EnvSpec::make(const Ctx& ctx) const {
    Environment e;
    for (const auto& a : assigns)
        e.assign(a.param, Monomial(Int(a.coeff), Exp{0}, Exp{0}, ctx.frac(a.qnum, a.qden)));
    return e;
}

std::string CrossCheck::EnvSpec::str() const {
    std::string out;
    for (const auto& a : assigns) {
        if (!out.empty()) out += ", ";
        out += std::string(1, a.param) + "=" + std::to_string(a.coeff) + "*q^" +
               std::to_string(a.qnum) + "/" + std::to_string(a.qden);
    }
    return out;
}

Registry::Registry() {
    auto add = [&]() -> IdentityRecord& { return records_.emplace_back(); };

    {  // the two Rogers–Ramanujan identities
        auto& r = add();
        r.id = "rr1";
        r.summary = "sum q^(k^2)/(q;q)_k = 1/(q,q^4;q^5)_inf";
        r.source = "Rogers–Ramanujan, first identity";
        r.tags = {"single-sum", "product"};
        r.lhs = [](const Ctx& t, const Environment&, int) {
            LatticeSummand sd;
            sd.dim = 1;
            sd.exponent = [t](const Idx& i) { return t.whole(i[0] * i[0]); };
            sd.denominator_factors = [t](const Idx& i) {
                return std::vector<FactorSpec>{F(t, Q(t, 1), 1, i[0])};
            };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment&, int) {
            return products(t, {}, {F(t, Q(t, 1), 5), F(t, Q(t, 4), 5)});
        };
    }
    {
        auto& r = add();
        r.id = "rr2";
        r.summary = "sum q^(k^2+k)/(q;q)_k = 1/(q^2,q^3;q^5)_inf";
        r.source = "Rogers–Ramanujan, second identity";
        r.tags = {"single-sum", "product"};
        r.lhs = [](const Ctx& t, const Environment&, int) {
            LatticeSummand sd;
            sd.dim = 1;
            sd.exponent = [t](const Idx& i) { return t.whole(i[0] * i[0] + i[0]); };
            sd.denominator_factors = [t](const Idx& i) {
                return std::vector<FactorSpec>{F(t, Q(t, 1), 1, i[0])};
            };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment&, int) {
            return products(t, {}, {F(t, Q(t, 2), 5), F(t, Q(t, 3), 5)});
        };
    }
    {  // Uncu–Zudilin double sums
        auto& r = add();
        r.id = "uz1";
        r.summary = "double sum q^(j^2+2jk+2k^2) = (q^3;q^3)^2/((q;q)(q^6;q^6))";
        r.source = "Uncu–Zudilin; instance of Bressoud";
        r.tags = {"double-sum"};
        r.lhs = [](const Ctx& t, const Environment&, int) {
            LatticeSummand sd;
            sd.dim = 2;
            sd.exponent = [t](const Idx& i) {
                return t.whole(i[0] * i[0] + 2 * i[0] * i[1] + 2 * i[1] * i[1]);
            };
            sd.denominator_factors = [t](const Idx& i) {
                return std::vector<FactorSpec>{F(t, Q(t, 1), 1, i[0]), F(t, Q(t, 2), 2, i[1])};
            };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment&, int) {
            return products(t, {F(t, Q(t, 3), 3), F(t, Q(t, 3), 3)},
                            {F(t, Q(t, 1), 1), F(t, Q(t, 6), 6)});
        };
    }
    {
        auto& r = add();
        r.id = "uz2";
        r.summary = "double sum q^(j^2+2jk+2k^2+j+2k) = (q^6;q^6)^2/((q^2;q^2)(q^3;q^3))";
        r.source = "Uncu–Zudilin; instance of Bressoud";
        r.tags = {"double-sum"};
        r.lhs = [](const Ctx& t, const Environment&, int) {
            LatticeSummand sd;
            sd.dim = 2;
            sd.exponent = [t](const Idx& i) {
                return t.whole(i[0] * i[0] + 2 * i[0] * i[1] + 2 * i[1] * i[1] + i[0] + 2 * i[1]);
            };
            sd.denominator_factors = [t](const Idx& i) {
                return std::vector<FactorSpec>{F(t, Q(t, 1), 1, i[0]), F(t, Q(t, 2), 2, i[1])};
            };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment&, int) {
            return products(t, {F(t, Q(t, 6), 6), F(t, Q(t, 6), 6)},
                            {F(t, Q(t, 2), 2), F(t, Q(t, 3), 3)});
        };
    }
    {  // Cao–Wang parameterized double sums
        auto& r = add();
        r.id = "cw1";
        r.summary = "double sum with (-1)^j x^(j+k) = (qx;q^2)_inf";
        r.source = "Cao–Wang, Theorem 3.8";
        r.uses_x = true;
        r.tags = {"double-sum", "parameterized"};
        r.lhs = [](const Ctx& t, const Environment& e, int) {
            Monomial xm = e.resolve(t, X(t));
            LatticeSummand sd;
            sd.dim = 2;
            sd.exponent = [t](const Idx& i) {
                return t.whole(i[0] * i[0] + 2 * i[0] * i[1] + 2 * i[1] * i[1]);
            };
            sd.numerator = [t, xm](const Idx& i) {
                return QSeries::from_monomial(t.denom, C(sgn(i[0])) * xm.pow(i[0] + i[1]));
            };
            sd.denominator_factors = [t](const Idx& i) {
                return std::vector<FactorSpec>{F(t, Q(t, 1), 1, i[0]), F(t, Q(t, 2), 2, i[1])};
            };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment& e, int) {
            return poch(t, F(t, e.resolve(t, Q(t, 1) * X(t)), 2));
        };
    }
    {
        auto& r = add();
        r.id = "cw2";
        r.summary = "double sum with x^(j+2k) = (-qx;q)_inf";
        r.source = "Cao–Wang, Theorem 3.8";
        r.uses_x = true;
        r.tags = {"double-sum", "parameterized"};
        r.lhs = [](const Ctx& t, const Environment& e, int) {
            Monomial xm = e.resolve(t, X(t));
            LatticeSummand sd;
            sd.dim = 2;
            sd.exponent = [t](const Idx& i) {
                return t.whole(i[0] * i[0] + 2 * i[0] * i[1] + 2 * i[1] * i[1] + i[1]);
            };
            sd.numerator = [t, xm](const Idx& i) {
                return QSeries::from_monomial(t.denom, xm.pow(i[0] + 2 * i[1]));
            };
            sd.denominator_factors = [t](const Idx& i) {
                return std::vector<FactorSpec>{F(t, Q(t, 1), 1, i[0]), F(t, Q(t, 2), 2, i[1])};
            };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment& e, int) {
            return poch(t, F(t, -e.resolve(t, Q(t, 1) * X(t)), 1));
        };
    }
    {  // the two-parameter reduction theorem
        auto& r = add();
        r.id = "thm11";
        r.summary = "double sum x^j y^(2k) reduces to a single series against (y;q)_inf";
        r.source = "contour-integral reduction of a (j,k) sum; specializes to the "
                   "Uncu–Zudilin and Cao–Wang identities";
        r.uses_x = r.uses_y = true;
        r.tags = {"double-sum", "parameterized"};
        r.lhs = [](const Ctx& t, const Environment& e, int) {
            Monomial xm = e.resolve(t, X(t));
            Monomial ym = e.resolve(t, Y(t));
            LatticeSummand sd;
            sd.dim = 2;
            sd.exponent = [t](const Idx& i) {
                return t.whole(i[0] * i[0] + 2 * i[0] * i[1] + 2 * i[1] * i[1] - i[0] - i[1]);
            };
            sd.numerator = [t, xm, ym](const Idx& i) {
                return QSeries::from_monomial(t.denom, xm.pow(i[0]) * ym.pow(2 * i[1]));
            };
            sd.denominator_factors = [t](const Idx& i) {
                return std::vector<FactorSpec>{F(t, Q(t, 1), 1, i[0]), F(t, Q(t, 2), 2, i[1])};
            };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment& e, int) { return thm11_rhs(t, e); };
    }
    {  // the two Ramanujan entries used to specialize thm11
        auto& r = add();
        r.id = "ram532";
        r.summary = "sum (-q;q^2)_k q^(k^2)/(q;q)_2k = (q^6;q^6)^2/((q;q)(q^12;q^12))";
        r.source = "Ramanujan (Andrews–Berndt, Entry 5.3.2)";
        r.tags = {"single-sum", "product"};
        r.lhs = [](const Ctx& t, const Environment&, int) {
            LatticeSummand sd;
            sd.dim = 1;
            sd.exponent = [t](const Idx& i) { return t.whole(i[0] * i[0]); };
            sd.numerator_factors = [t](const Idx& i) {
                return std::vector<FactorSpec>{F(t, -Q(t, 1), 2, i[0])};
            };
            sd.denominator_factors = [t](const Idx& i) {
                return std::vector<FactorSpec>{F(t, Q(t, 1), 1, 2 * i[0])};
            };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment&, int) {
            return products(t, {F(t, Q(t, 6), 6), F(t, Q(t, 6), 6)},
                            {F(t, Q(t, 1), 1), F(t, Q(t, 12), 12)});
        };
    }
    {
        auto& r = add();
        r.id = "ram344";
        r.summary =
            "sum (-q;q^2)_k q^(k^2+2k)/(q;q)_(1+2k) = (q^12;q^12)(-q^6;q^6)/((q;q)(-q^2;q^2))";
        r.source = "Ramanujan (Andrews–Berndt, Entry 3.4.4)";
        r.tags = {"single-sum", "product"};
        r.lhs = [](const Ctx& t, const Environment&, int) {
            LatticeSummand sd;
            sd.dim = 1;
            sd.exponent = [t](const Idx& i) { return t.whole(i[0] * i[0] + 2 * i[0]); };
            sd.numerator_factors = [t](const Idx& i) {
                return std::vector<FactorSpec>{F(t, -Q(t, 1), 2, i[0])};
            };
            sd.denominator_factors = [t](const Idx& i) {
                return std::vector<FactorSpec>{F(t, Q(t, 1), 1, 1 + 2 * i[0])};
            };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment&, int) {
            return products(t, {F(t, Q(t, 12), 12), F(t, -Q(t, 6), 6)},
                            {F(t, Q(t, 1), 1), F(t, -Q(t, 2), 2)});
        };
    }
    {  // x = 0 specialization of thm11
        auto& r = add();
        r.id = "cor12";
        r.summary = "sum q^(2k^2-k) y^(2k)/(q^2;q^2)_k = (y;q)_inf sum q^C(k,2) y^k/((q;q)_k(y;q)_k)";
        r.source = "special case of Berkovich–Warnaar, Eq. (3.10)";
        r.uses_y = true;
        r.tags = {"single-sum", "parameterized"};
        r.lhs = [](const Ctx& t, const Environment& e, int) {
            Monomial ym = e.resolve(t, Y(t));
            LatticeSummand sd;
            sd.dim = 1;
            sd.exponent = [t](const Idx& i) { return t.whole(2 * i[0] * i[0] - i[0]); };
            sd.numerator = [t, ym](const Idx& i) {
                return QSeries::from_monomial(t.denom, ym.pow(2 * i[0]));
            };
            sd.denominator_factors = [t](const Idx& i) {
                return std::vector<FactorSpec>{F(t, Q(t, 2), 2, i[0])};
            };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment& e, int) {
            Monomial ym = e.resolve(t, Y(t));
            LatticeSummand sd;
            sd.dim = 1;
            sd.exponent = [t](const Idx& i) { return t.whole(ch2(i[0])); };
            sd.numerator = [t, ym](const Idx& i) {
                return QSeries::from_monomial(t.denom, ym.pow(i[0]));
            };
            sd.numerator_factors = [t, ym](const Idx& i) {
                return std::vector<FactorSpec>{FactorSpec{ym * Q(t, i[0]), t.whole(1), std::nullopt}};
            };
            sd.denominator_factors = [t](const Idx& i) {
                return std::vector<FactorSpec>{F(t, Q(t, 1), 1, i[0])};
            };
            return lattice_sum(t, sd, t.stop_margin);
        };
    }
    {  // Garrett–Ismail–Stanton family
        auto& r = add();
        r.id = "gst";
        r.summary = "sum q^(k^2+mk)/(q;q)_k against the Schur-polynomial product side";
        r.source = "Garrett–Ismail–Stanton";
        r.m_range = {{0, 5}};
        r.m_meaning = "the shift m in q^(k^2+mk)";
        r.tags = {"single-sum", "family"};
        r.lhs = [](const Ctx& t, const Environment&, int m) {
            LatticeSummand sd;
            sd.dim = 1;
            sd.exponent = [t, m](const Idx& i) { return t.whole(i[0] * i[0] + m * i[0]); };
            sd.denominator_factors = [t](const Idx& i) {
                return std::vector<FactorSpec>{F(t, Q(t, 1), 1, i[0])};
            };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment&, int m) { return gst_rhs(t, m); };
    }
    {
        auto& r = add();
        r.id = "cor13";
        r.summary = "sum q^(k^2+2mk)/((q^2;q^2)_k (q^(1+2m);q^2)_k) via Schur polynomials at q^4";
        r.source = "base q -> q^2 instance of Garrett–Ismail–Stanton; cf. Slater (96)/(98) and "
                   "Gu–Prodinger";
        r.m_range = {{0, 4}};
        r.m_meaning = "the shift m (m = 0, 1 recover Slater (98)/(96))";
        r.tags = {"single-sum", "family"};
        r.lhs = [](const Ctx& t, const Environment&, int m) {
            LatticeSummand sd;
            sd.dim = 1;
            sd.exponent = [t, m](const Idx& i) { return t.whole(i[0] * i[0] + 2 * m * i[0]); };
            sd.denominator_factors = [t, m](const Idx& i) {
                return std::vector<FactorSpec>{F(t, Q(t, 2), 2, i[0]),
                                               F(t, Q(t, 1 + 2 * m), 2, i[0])};
            };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment&, int m) {
            std::int64_t drop = 2 * std::int64_t(m) * m - 2 * m;  // -(2m - 2m^2)
            Ctx sub = t;
            sub.ncut = t.ncut + t.whole(drop);
            SchurPair sp = schur(sub, m - 2);
            QSeries e4 = sp.e.rebased(4);
            QSeries d4 = sp.d.rebased(4);
            QSeries p1 = products(sub, {},
                                  {F(sub, Q(sub, 1 + 2 * m), 2), F(sub, Q(sub, 4), 20),
                                   F(sub, Q(sub, 16), 20)});
            QSeries p2 = products(sub, {},
                                  {F(sub, Q(sub, 1 + 2 * m), 2), F(sub, Q(sub, 8), 20),
                                   F(sub, Q(sub, 12), 20)});
            QSeries bracket = e4 * p1 - d4 * p2;
            return bracket.shifted(Monomial(Int(sgn(m)), Exp{0}, Exp{0}, t.whole(-drop)));
        };
    }
    {  // the two Slater identities recovered at m = 0, 1
        auto& r = add();
        r.id = "slater98";
        r.summary = "sum q^(k^2)/(q;q)_2k = (q^10,q^8,q^2;q^10)(q^14,q^6;q^20)/(q;q)";
        r.source = "Slater, Eq. (98)";
        r.tags = {"single-sum", "product"};
        r.lhs = [](const Ctx& t, const Environment&, int) {
            LatticeSummand sd;
            sd.dim = 1;
            sd.exponent = [t](const Idx& i) { return t.whole(i[0] * i[0]); };
            sd.denominator_factors = [t](const Idx& i) {
                return std::vector<FactorSpec>{F(t, Q(t, 1), 1, 2 * i[0])};
            };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment&, int) {
            return products(t,
                            {F(t, Q(t, 10), 10), F(t, Q(t, 8), 10), F(t, Q(t, 2), 10),
                             F(t, Q(t, 14), 20), F(t, Q(t, 6), 20)},
                            {F(t, Q(t, 1), 1)});
        };
    }
    {
        auto& r = add();
        r.id = "slater96";
        r.summary = "sum q^(k^2+2k)/(q;q)_(1+2k) = (q^10,q^6,q^4;q^10)(q^18,q^2;q^20)/(q;q)";
        r.source = "Slater, Eq. (96)";
        r.tags = {"single-sum", "product"};
        r.lhs = [](const Ctx& t, const Environment&, int) {
            LatticeSummand sd;
            sd.dim = 1;
            sd.exponent = [t](const Idx& i) { return t.whole(i[0] * i[0] + 2 * i[0]); };
            sd.denominator_factors = [t](const Idx& i) {
                return std::vector<FactorSpec>{F(t, Q(t, 1), 1, 1 + 2 * i[0])};
            };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment&, int) {
            return products(t,
                            {F(t, Q(t, 10), 10), F(t, Q(t, 6), 10), F(t, Q(t, 4), 10),
                             F(t, Q(t, 18), 20), F(t, Q(t, 2), 20)},
                            {F(t, Q(t, 1), 1)});
        };
    }
    {  // triple-sum generalizations
        auto& r = add();
        r.id = "thm14";
        r.summary = "triple sum with (x;q)_j numerator = (qx,xy;q^2)_inf (-q;q)_inf";
        r.source = "triple-sum extension of Cao–Wang via the q-binomial theorem";
        r.uses_x = r.uses_y = true;
        r.default_order = 30;
        r.heavy = true;
        r.tags = {"triple-sum", "parameterized"};
        r.lhs = [](const Ctx& t, const Environment& e, int) {
            Monomial xm = e.resolve(t, X(t));
            Monomial ym = e.resolve(t, Y(t));
            LatticeSummand sd;
            sd.dim = 3;
            sd.exponent = [t](const Idx& i) {
                return t.whole(i[0] + ch2(i[1]) + ch2(i[0] + i[1] + 2 * i[2]));
            };
            sd.numerator = [t, xm, ym](const Idx& i) {
                return QSeries::from_monomial(
                    t.denom, C(sgn(i[1])) * xm.pow(i[1] + 2 * i[2]) * ym.pow(i[1] + i[2]));
            };
            sd.numerator_factors = [t, xm](const Idx& i) {
                return std::vector<FactorSpec>{F(t, xm, 1, i[0])};
            };
            sd.denominator_factors = [t](const Idx& i) {
                return std::vector<FactorSpec>{F(t, Q(t, 1), 1, i[0]), F(t, Q(t, 1), 1, i[1]),
                                               F(t, Q(t, 2), 2, i[2])};
            };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment& e, int) { return thm14_rhs(t, e); };
    }
    {
        auto& r = add();
        r.id = "thm15";
        r.summary = "triple sum (exponent +k) = (q;q^2)/2 {(xy,-y;q) + (-xy,y;q)}";
        r.source = "even bisection of the q-binomial theorem under the contour method";
        r.uses_x = r.uses_y = true;
        r.default_order = 30;
        r.heavy = true;
        r.tags = {"triple-sum", "parameterized"};
        r.lhs = [](const Ctx& t, const Environment& e, int) {
            Monomial x2y2 = e.resolve(t, X(t, 2) * Y(t, 2));
            Monomial xm = e.resolve(t, X(t));
            Monomial ym = e.resolve(t, Y(t));
            LatticeSummand sd;
            sd.dim = 3;
            sd.exponent = [t](const Idx& i) {
                std::int64_t s = i[0] + i[1] + i[2];
                return t.whole(s * (s - 1) + i[2] * i[2] + i[1]);
            };
            sd.numerator = [t, xm, ym](const Idx& i) {
                return QSeries::from_monomial(
                    t.denom, C(sgn(i[0] + i[1])) * xm.pow(i[0]) * ym.pow(2 * i[0] + 2 * i[2]));
            };
            sd.numerator_factors = [t, x2y2](const Idx& i) {
                return std::vector<FactorSpec>{F(t, x2y2, 2, i[1])};
            };
            sd.denominator_factors = [t](const Idx& i) { return den3(t, i); };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment& e, int) { return thm15_rhs(t, e); };
    }
    {
        auto& r = add();
        r.id = "thm16";
        r.summary = "triple sum (exponent +3k) = (q;q^2)/(2(y/q-xy)) {(xy,-y/q;q) - (-xy,y/q;q)}";
        r.source = "odd bisection of the q-binomial theorem under the contour method";
        r.uses_x = r.uses_y = true;
        r.default_order = 30;
        r.heavy = true;
        r.tags = {"triple-sum", "parameterized"};
        r.validate = [](const Ctx& t, const Environment& e, int) {
            Monomial yq = e.resolve(t, Y(t) * Q(t, -1));
            if (e.y && yq.is_zero())
                throw ConfigError("thm16 needs y != 0: the divisor y/q - xy vanishes");
            Monomial qx = e.resolve(t, Q(t, 1) * X(t));
            if (e.x && !qx.is_zero() && qx.qexp <= Exp{0})
                throw ConfigError(
                    "thm16 excludes assignments where (1 - q x) loses grading (e.g. x = 1/q); "
                    "verify the nearby assignment instead");
        };
        r.lhs = [](const Ctx& t, const Environment& e, int) {
            Monomial x2y2 = e.resolve(t, X(t, 2) * Y(t, 2));
            Monomial xm = e.resolve(t, X(t));
            Monomial ym = e.resolve(t, Y(t));
            LatticeSummand sd;
            sd.dim = 3;
            sd.exponent = [t](const Idx& i) {
                std::int64_t s = i[0] + i[1] + i[2];
                return t.whole(s * (s - 1) + i[2] * i[2] + 3 * i[1]);
            };
            sd.numerator = [t, xm, ym](const Idx& i) {
                return QSeries::from_monomial(
                    t.denom, C(sgn(i[0] + i[1])) * xm.pow(i[0]) * ym.pow(2 * i[0] + 2 * i[2]));
            };
            sd.numerator_factors = [t, x2y2](const Idx& i) {
                return std::vector<FactorSpec>{F(t, x2y2, 2, i[1])};
            };
            sd.denominator_factors = [t](const Idx& i) { return den3(t, i); };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment& e, int) { return thm16_rhs(t, e); };
    }
    {  // corollaries of the triple-sum theorems
        auto& r = add();
        r.id = "cor17";
        r.summary = "triple sum with (x^2;q^2)_k and shift -m(j+2l) = (-q^-m;q)_m (-x;q)_inf";
        r.source = "specialization (x,y) -> (-xq^m, q^-m) of the even-bisection triple sum";
        r.uses_x = true;
        r.m_range = {{0, 4}};
        r.m_meaning = "the nonnegative shift m";
        r.default_order = 30;
        r.heavy = true;
        r.tags = {"triple-sum", "family", "parameterized"};
        r.lhs = [](const Ctx& t, const Environment& e, int m) {
            Monomial x2 = e.resolve(t, X(t, 2));
            Monomial xm = e.resolve(t, X(t));
            LatticeSummand sd;
            sd.dim = 3;
            sd.exponent = [t, m](const Idx& i) {
                std::int64_t s = i[0] + i[1] + i[2];
                return t.whole(s * (s - 1) + i[2] * i[2] + i[1] - m * (i[0] + 2 * i[2]));
            };
            sd.numerator = [t, xm](const Idx& i) {
                return QSeries::from_monomial(t.denom, C(sgn(i[1])) * xm.pow(i[0]));
            };
            sd.numerator_factors = [t, x2](const Idx& i) {
                return std::vector<FactorSpec>{F(t, x2, 2, i[1])};
            };
            sd.denominator_factors = [t](const Idx& i) { return den3(t, i); };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment& e, int m) {
            Monomial xm = e.resolve(t, X(t));
            return products(t, {F(t, -Q(t, -m), 1, m), F(t, -xm, 1)}, {});
        };
    }
    {
        auto& r = add();
        r.id = "cor18a";
        r.summary = "triple sum with x^(j+l), exponent +k = (q,x;q^2)_inf";
        r.source = "specialization (x,y) -> (1, x^(1/2)) of the even-bisection triple sum";
        r.uses_x = true;
        r.default_order = 30;
        r.heavy = true;
        r.tags = {"triple-sum", "parameterized"};
        r.lhs = [](const Ctx& t, const Environment& e, int) {
            Monomial xk = e.resolve(t, X(t));
            Monomial xm = e.resolve(t, X(t));
            LatticeSummand sd;
            sd.dim = 3;
            sd.exponent = [t](const Idx& i) {
                std::int64_t s = i[0] + i[1] + i[2];
                return t.whole(s * (s - 1) + i[2] * i[2] + i[1]);
            };
            sd.numerator = [t, xm](const Idx& i) {
                return QSeries::from_monomial(t.denom,
                                              C(sgn(i[0] + i[1])) * xm.pow(i[0] + i[2]));
            };
            sd.numerator_factors = [t, xk](const Idx& i) {
                return std::vector<FactorSpec>{F(t, xk, 2, i[1])};
            };
            sd.denominator_factors = [t](const Idx& i) { return den3(t, i); };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment& e, int) {
            return products(t, {F(t, Q(t, 1), 2), F(t, e.resolve(t, X(t)), 2)}, {});
        };
    }
    {
        auto& r = add();
        r.id = "cor18b";
        r.summary = "triple sum with x^(j+l), exponent -j+k-2l = (q,x;q^2)_inf";
        r.source = "specialization (x,y) -> (q, x^(1/2)/q) of the even-bisection triple sum";
        r.uses_x = true;
        r.default_order = 30;
        r.heavy = true;
        r.tags = {"triple-sum", "parameterized"};
        r.lhs = [](const Ctx& t, const Environment& e, int) {
            Monomial xk = e.resolve(t, X(t));
            Monomial xm = e.resolve(t, X(t));
            LatticeSummand sd;
            sd.dim = 3;
            sd.exponent = [t](const Idx& i) {
                std::int64_t s = i[0] + i[1] + i[2];
                return t.whole(s * (s - 1) + i[2] * i[2] - i[0] + i[1] - 2 * i[2]);
            };
            sd.numerator = [t, xm](const Idx& i) {
                return QSeries::from_monomial(t.denom,
                                              C(sgn(i[0] + i[1])) * xm.pow(i[0] + i[2]));
            };
            sd.numerator_factors = [t, xk](const Idx& i) {
                return std::vector<FactorSpec>{F(t, xk, 2, i[1])};
            };
            sd.denominator_factors = [t](const Idx& i) { return den3(t, i); };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment& e, int) {
            return products(t, {F(t, Q(t, 1), 2), F(t, e.resolve(t, X(t)), 2)}, {});
        };
    }
    {
        auto& r = add();
        r.id = "cor18c";
        r.summary = "triple sum with x^(j+l), exponent +j+k+2l = (q,q^2 x;q^2)_inf";
        r.source = "specialization (x,y) -> (1/q, q x^(1/2)) of the even-bisection triple sum";
        r.uses_x = true;
        r.default_order = 30;
        r.heavy = true;
        r.tags = {"triple-sum", "parameterized"};
        r.lhs = [](const Ctx& t, const Environment& e, int) {
            Monomial xk = e.resolve(t, X(t));
            Monomial xm = e.resolve(t, X(t));
            LatticeSummand sd;
            sd.dim = 3;
            sd.exponent = [t](const Idx& i) {
                std::int64_t s = i[0] + i[1] + i[2];
                return t.whole(s * (s - 1) + i[2] * i[2] + i[0] + i[1] + 2 * i[2]);
            };
            sd.numerator = [t, xm](const Idx& i) {
                return QSeries::from_monomial(t.denom,
                                              C(sgn(i[0] + i[1])) * xm.pow(i[0] + i[2]));
            };
            sd.numerator_factors = [t, xk](const Idx& i) {
                return std::vector<FactorSpec>{F(t, xk, 2, i[1])};
            };
            sd.denominator_factors = [t](const Idx& i) { return den3(t, i); };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment& e, int) {
            return products(
                t, {F(t, Q(t, 1), 2), F(t, e.resolve(t, Q(t, 2) * X(t)), 2)}, {});
        };
    }
    {
        auto& r = add();
        r.id = "cor19";
        r.summary = "triple sum (exponent +3k, shift -(m-1)(j+2l)) = (-q^-m;q)_m (-x;q)_inf/(q^-m+x)";
        r.source = "specialization (x,y) -> (-xq^(m-1), q^(1-m)) of the odd-bisection triple sum";
        r.uses_x = true;
        r.m_range = {{0, 4}};
        r.m_meaning = "the nonnegative shift m";
        r.default_order = 30;
        r.heavy = true;
        r.tags = {"triple-sum", "family", "parameterized"};
        r.lhs = [](const Ctx& t, const Environment& e, int m) {
            Monomial x2 = e.resolve(t, X(t, 2));
            Monomial xm = e.resolve(t, X(t));
            LatticeSummand sd;
            sd.dim = 3;
            sd.exponent = [t, m](const Idx& i) {
                std::int64_t s = i[0] + i[1] + i[2];
                return t.whole(s * (s - 1) + i[2] * i[2] + 3 * i[1] -
                               (m - 1) * (i[0] + 2 * i[2]));
            };
            sd.numerator = [t, xm](const Idx& i) {
                return QSeries::from_monomial(t.denom, C(sgn(i[1])) * xm.pow(i[0]));
            };
            sd.numerator_factors = [t, x2](const Idx& i) {
                return std::vector<FactorSpec>{F(t, x2, 2, i[1])};
            };
            sd.denominator_factors = [t](const Idx& i) { return den3(t, i); };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment& e, int m) {
            // (-x;q)_inf/(q^-m + x) cancelled symbolically to keep grading:
            // q^m (-q^-m;q)_m (-x;q)_m (-q^(m+1) x;q)_inf
            Monomial xm = e.resolve(t, X(t));
            QSeries r0 = products(t,
                                  {F(t, -Q(t, -m), 1, m), F(t, -xm, 1, m),
                                   F(t, -(Q(t, m + 1) * xm), 1)},
                                  {});
            return r0.shifted(Q(t, m));
        };
    }
    {
        auto& r = add();
        r.id = "cor110a";
        r.summary = "triple sum with x^(j+l), exponent +3k = (q^3,x;q^2)_inf";
        r.source = "specialization (x,y) -> (1, x^(1/2)) of the odd-bisection triple sum";
        r.uses_x = true;
        r.default_order = 30;
        r.heavy = true;
        r.tags = {"triple-sum", "parameterized"};
        r.lhs = [](const Ctx& t, const Environment& e, int) {
            Monomial xk = e.resolve(t, X(t));
            Monomial xm = e.resolve(t, X(t));
            LatticeSummand sd;
            sd.dim = 3;
            sd.exponent = [t](const Idx& i) {
                std::int64_t s = i[0] + i[1] + i[2];
                return t.whole(s * (s - 1) + i[2] * i[2] + 3 * i[1]);
            };
            sd.numerator = [t, xm](const Idx& i) {
                return QSeries::from_monomial(t.denom,
                                              C(sgn(i[0] + i[1])) * xm.pow(i[0] + i[2]));
            };
            sd.numerator_factors = [t, xk](const Idx& i) {
                return std::vector<FactorSpec>{F(t, xk, 2, i[1])};
            };
            sd.denominator_factors = [t](const Idx& i) { return den3(t, i); };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment& e, int) {
            return products(t, {F(t, Q(t, 3), 2), F(t, e.resolve(t, X(t)), 2)}, {});
        };
    }
    {
        auto& r = add();
        r.id = "cor110b";
        r.summary = "triple sum with x^(j+l), exponent +2j+3k+4l = (q^3,q^2 x;q^2)_inf";
        r.source = "specialization (x,y) -> (1/q^2, q^2 x^(1/2)) of the odd-bisection triple sum";
        r.uses_x = true;
        r.default_order = 30;
        r.heavy = true;
        r.tags = {"triple-sum", "parameterized"};
        r.lhs = [](const Ctx& t, const Environment& e, int) {
            Monomial xk = e.resolve(t, X(t));
            Monomial xm = e.resolve(t, X(t));
            LatticeSummand sd;
            sd.dim = 3;
            sd.exponent = [t](const Idx& i) {
                std::int64_t s = i[0] + i[1] + i[2];
                return t.whole(s * (s - 1) + i[2] * i[2] + 2 * i[0] + 3 * i[1] + 4 * i[2]);
            };
            sd.numerator = [t, xm](const Idx& i) {
                return QSeries::from_monomial(t.denom,
                                              C(sgn(i[0] + i[1])) * xm.pow(i[0] + i[2]));
            };
            sd.numerator_factors = [t, xk](const Idx& i) {
                return std::vector<FactorSpec>{F(t, xk, 2, i[1])};
            };
            sd.denominator_factors = [t](const Idx& i) { return den3(t, i); };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment& e, int) {
            return products(
                t, {F(t, Q(t, 3), 2), F(t, e.resolve(t, Q(t, 2) * X(t)), 2)}, {});
        };
    }
    {  // the unit product relation used silently throughout
        auto& r = add();
        r.id = "unit-rel";
        r.summary = "(q,-q,-q^2;q^2)_inf = 1";
        r.source = "Gasper–Rahman, p. 24";
        r.tags = {"product", "relation"};
        r.lhs = [](const Ctx& t, const Environment&, int) {
            return products(t, {F(t, Q(t, 1), 2), F(t, -Q(t, 1), 2), F(t, -Q(t, 2), 2)}, {});
        };
        r.rhs = [](const Ctx& t, const Environment&, int) { return QSeries::one(t.denom, t.ncut); };
    }
    {  // the four classical expansions (sum side vs closed side)
        auto& r = add();
        r.id = "euler-a";
        r.summary = "sum q^C(k,2) x^k/(q;q)_k = (-x;q)_inf";
        r.source = "Euler (Gasper–Rahman II.2)";
        r.uses_x = true;
        r.tags = {"expansion", "parameterized"};
        r.lhs = [](const Ctx& t, const Environment& e, int) {
            return euler_a(t, e.resolve(t, X(t)), t.whole(1));
        };
        r.rhs = [](const Ctx& t, const Environment& e, int) {
            return poch(t, F(t, -e.resolve(t, X(t)), 1));
        };
    }
    {
        auto& r = add();
        r.id = "euler-b";
        r.summary = "sum (xq)^k/(q;q)_k = 1/(xq;q)_inf";
        r.source = "Euler (Gasper–Rahman II.1); argument xq keeps the sum q-graded";
        r.uses_x = true;
        r.tags = {"expansion", "parameterized"};
        r.lhs = [](const Ctx& t, const Environment& e, int) {
            return euler_b(t, e.resolve(t, X(t) * Q(t, 1)), t.whole(1));
        };
        r.rhs = [](const Ctx& t, const Environment& e, int) {
            return products(t, {}, {F(t, e.resolve(t, X(t) * Q(t, 1)), 1)});
        };
    }
    {
        auto& r = add();
        r.id = "jacobi";
        r.summary = "bilateral sum q^C(k,2) (xq)^k = (q,-xq,-1/x;q)_inf";
        r.source = "Jacobi triple product (Gasper–Rahman II.28)";
        r.uses_x = true;
        r.tags = {"expansion", "parameterized"};
        r.lhs = [](const Ctx& t, const Environment& e, int) {
            return jacobi_triple(t, e.resolve(t, X(t) * Q(t, 1)), t.whole(1), JacobiForm::Sum);
        };
        r.rhs = [](const Ctx& t, const Environment& e, int) {
            return jacobi_triple(t, e.resolve(t, X(t) * Q(t, 1)), t.whole(1),
                                 JacobiForm::Product);
        };
    }
    {
        auto& r = add();
        r.id = "qbinom";
        r.summary = "1phi0(x;-;q,yq) = (xyq;q)_inf/(yq;q)_inf";
        r.source = "the q-binomial theorem";
        r.uses_x = r.uses_y = true;
        r.tags = {"expansion", "parameterized"};
        r.lhs = [](const Ctx& t, const Environment& e, int) {
            return phi_series(
                t, PhiSpec{{e.resolve(t, X(t))}, {}, t.whole(1), e.resolve(t, Y(t) * Q(t, 1))});
        };
        r.rhs = [](const Ctx& t, const Environment& e, int) {
            return products(t, {F(t, e.resolve(t, X(t) * Y(t) * Q(t, 1)), 1)},
                            {F(t, e.resolve(t, Y(t) * Q(t, 1)), 1)});
        };
    }
    {  // Heine transformations at the published specialization list
        auto& r = add();
        r.id = "heine-a";
        r.summary = "Heine's first 2phi1 transformation at six +-q^e specializations";
        r.source = "Gasper–Rahman III.2";
        r.m_range = {{0, 5}};
        r.m_meaning = "index into the specialization list (a,b,c,z)";
        r.default_order = 30;
        r.heavy = true;
        r.tags = {"transformation", "family"};
        r.lhs = [](const Ctx& t, const Environment&, int m) {
            HeineParams p = heine_params(t, kHeineA[m]);
            return phi21(t, p.a, p.b, p.c, p.z);
        };
        r.rhs = [](const Ctx& t, const Environment&, int m) {
            HeineParams p = heine_params(t, kHeineA[m]);
            Monomial ca = mdiv(p.c, p.a);
            Monomial az = p.a * p.z;
            QSeries pre = products(t, {F(t, ca, 1), F(t, az, 1)},
                                   {F(t, p.c, 1), F(t, p.z, 1)});
            Monomial abzc = mdiv(p.a * p.b * p.z, p.c);
            return pre * phi21(t, abzc, p.a, az, ca);
        };
    }
    {
        auto& r = add();
        r.id = "heine-b";
        r.summary = "Heine's second 2phi1 transformation at six +-q^e specializations";
        r.source = "Gasper–Rahman III.3";
        r.m_range = {{0, 5}};
        r.m_meaning = "index into the specialization list (a,b,c,z)";
        r.default_order = 30;
        r.heavy = true;
        r.tags = {"transformation", "family"};
        r.lhs = [](const Ctx& t, const Environment&, int m) {
            HeineParams p = heine_params(t, kHeineB[m]);
            return phi21(t, p.a, p.b, p.c, p.z);
        };
        r.rhs = [](const Ctx& t, const Environment&, int m) {
            HeineParams p = heine_params(t, kHeineB[m]);
            Monomial abzc = mdiv(p.a * p.b * p.z, p.c);
            QSeries pre = products(t, {F(t, abzc, 1)}, {F(t, p.z, 1)});
            return pre * phi21(t, mdiv(p.c, p.a), mdiv(p.c, p.b), p.c, abzc);
        };
    }
    {
        auto& r = add();
        r.id = "threeterm-aa";
        r.summary = "three-term 2phi1 instance at (a,b,c,z)=(-x/y,x/y,0,-y^2/x), three (x,y) pairs";
        r.source = "Gasper–Rahman III.32 combined with Heine's transformations";
        r.m_range = {{0, 2}};
        r.m_meaning = "index into (x,y) = (q,q^1/2), (q^3,q^3/2), (q^3,q)";
        r.default_order = 30;
        r.heavy = true;
        r.tags = {"transformation", "family"};
        r.lhs = [](const Ctx& t, const Environment&, int m) {
            return thm11_rhs(t, three_term_env(t, m));
        };
        r.rhs = [](const Ctx& t, const Environment&, int m) {
            Environment e = three_term_env(t, m);
            Monomial xm = *e.x, ym = *e.y;
            Monomial arg = -mdiv(Q(t, 1) * xm, ym * ym);  // -qx/y^2
            Monomial qyx = mdiv(Q(t, 1) * ym, xm);        // qy/x
            Monomial xy = mdiv(xm, ym);
            Monomial qy = mdiv(Q(t, 1), ym);
            // q/y can sit at negative q-order (the (x,y)=(q^3,q) pair); pad
            // everything so the Laurent prefactors keep full completeness
            std::vector<FactorSpec> pa = {F(t, ym, 1), F(t, xy, 1), F(t, qy, 1)};
            std::vector<FactorSpec> pb = {F(t, -ym, 1), F(t, -xy, 1), F(t, -qy, 1)};
            std::int64_t pad = 0;
            for (const auto& f : pa) pad += negative_order_sum(f);
            for (const auto& f : pb) pad += negative_order_sum(f);
            Ctx sub = t;
            sub.ncut = t.ncut + Exp{pad};
            // sum_k (u;q)_k/(q^2;q^2)_k w^k written as 2phi1(u, 0; -q; q, w)
            QSeries s1 = phi_series(sub, PhiSpec{{qyx, C(0)}, {-Q(t, 1)}, t.whole(1), arg});
            QSeries s2 = phi_series(sub, PhiSpec{{-qyx, C(0)}, {-Q(t, 1)}, t.whole(1), arg});
            QSeries a = products(sub, pa, {}) * s1;
            QSeries b = products(sub, pb, {}) * s2;
            // (-1;q)_inf = 2 (-q;q)_inf, divided out exactly
            QSeries inv = products(sub, {}, {F(t, -Q(t, 1), 1)});
            return ((a + b) * inv).div_exact(Int(2));
        };
    }
    {  // the four contour-integral instances
        auto& r = add();
        r.id = "int-cc";
        r.summary = "[z^0] (xz,q,qz,1/z;q)/(y^2z^2;q^2) = the single-series side";
        r.source = "constant-term identity behind the (j,k) reduction";
        r.uses_x = r.uses_y = true;
        r.default_order = 30;
        r.heavy = true;
        r.tags = {"integral", "parameterized"};
        r.lhs = [](const Ctx& t, const Environment& e, int) {
            Monomial xm = e.resolve(t, X(t));
            Monomial y2 = e.resolve(t, Y(t, 2));
            ZFactor fs[3] = {EA(-xm, 1, t.whole(1)), EB(y2, 2, t.whole(2)),
                             JZ(C(-1), -1, t.whole(1))};
            return constant_term(t, std::span<const ZFactor>(fs, 3),
                                 CtOptions{t.ct_margin, t.ct_scale});
        };
        r.rhs = [](const Ctx& t, const Environment& e, int) { return thm11_rhs(t, e); };
    }
    {
        auto& r = add();
        r.id = "int-a3";
        r.summary = "[z^0] (-yz,-qz,q,qz/x,x/z;q)/((yz^2;q^2)(-qz/x;q)) = (-q;q)(qx,yx;q^2)";
        r.source = "q-binomial-theorem instance of the contour lemma";
        r.uses_x = r.uses_y = true;
        r.default_order = 30;
        r.heavy = true;
        r.tags = {"integral", "parameterized"};
        r.validate = [](const Ctx& t, const Environment& e, int) {
            if (e.x && e.resolve(t, X(t)).is_zero())
                throw ConfigError("int-a3 needs x != 0 (x appears inverted in the integrand)");
        };
        r.lhs = [](const Ctx& t, const Environment& e, int) {
            Monomial xm = e.resolve(t, X(t));
            Monomial ym = e.resolve(t, Y(t));
            ZFactor fs[4] = {QB(xm, -mdiv(Q(t, 1), xm), 1, t.whole(1)),
                             EA(ym, 1, t.whole(1)), EB(ym, 2, t.whole(2)),
                             JZ(-xm, -1, t.whole(1))};
            return constant_term(t, std::span<const ZFactor>(fs, 4),
                                 CtOptions{t.ct_margin, t.ct_scale});
        };
        r.rhs = [](const Ctx& t, const Environment& e, int) { return thm14_rhs(t, e); };
    }
    {
        auto& r = add();
        r.id = "int-c3";
        r.summary = "[z^0] (qx^2z,qz,q^2,q^2z/y^2,y^2/z;q^2)/((xz;q)(qz/y^2;q^2)) = even bisection side";
        r.source = "even-bisection instance of the contour lemma";
        r.uses_x = r.uses_y = true;
        r.default_order = 30;
        r.heavy = true;
        r.tags = {"integral", "parameterized"};
        r.validate = [](const Ctx& t, const Environment& e, int) {
            if (e.y && e.resolve(t, Y(t)).is_zero())
                throw ConfigError("int-c3 needs y != 0 (y appears inverted in the integrand)");
        };
        r.lhs = [](const Ctx& t, const Environment& e, int) {
            Monomial xm = e.resolve(t, X(t));
            Monomial y2 = e.resolve(t, Y(t, 2));
            Monomial x2y2 = e.resolve(t, X(t, 2) * Y(t, 2));
            ZFactor fs[4] = {EB(xm, 1, t.whole(1)),
                             QB(x2y2, mdiv(Q(t, 1), y2), 1, t.whole(2)),
                             EA(-Q(t, 1), 1, t.whole(2)), JZ(-y2, -1, t.whole(2))};
            return constant_term(t, std::span<const ZFactor>(fs, 4),
                                 CtOptions{t.ct_margin, t.ct_scale});
        };
        r.rhs = [](const Ctx& t, const Environment& e, int) { return thm15_rhs(t, e); };
    }
    {
        auto& r = add();
        r.id = "int-e3";
        r.summary =
            "[z^0] (q^5x^2z,q^3z,q^2,q^4z/y^2,y^2/zq^2;q^2)/((q^2xz;q)(q^5z/y^2;q^2)) = odd "
            "bisection side";
        r.source = "odd-bisection instance of the contour lemma";
        r.uses_x = r.uses_y = true;
        r.default_order = 30;
        r.heavy = true;
        r.tags = {"integral", "parameterized"};
        r.validate = [](const Ctx& t, const Environment& e, int) {
            if (e.y && e.resolve(t, Y(t)).is_zero())
                throw ConfigError("int-e3 needs y != 0 (y appears inverted in the integrand)");
            Monomial qx = e.resolve(t, Q(t, 1) * X(t));
            if (e.x && !qx.is_zero() && qx.qexp <= Exp{0})
                throw ConfigError("int-e3 excludes assignments where (1 - q x) loses grading");
        };
        r.lhs = [](const Ctx& t, const Environment& e, int) {
            Monomial xm = e.resolve(t, X(t));
            Monomial y2 = e.resolve(t, Y(t, 2));
            Monomial x2y2 = e.resolve(t, X(t, 2) * Y(t, 2));
            ZFactor fs[4] = {EB(Q(t, 2) * xm, 1, t.whole(1)),
                             QB(x2y2, mdiv(Q(t, 5), y2), 1, t.whole(2)),
                             EA(-Q(t, 3), 1, t.whole(2)),
                             JZ(-(y2 * Q(t, -2)), -1, t.whole(2))};
            return constant_term(t, std::span<const ZFactor>(fs, 4),
                                 CtOptions{t.ct_margin, t.ct_scale});
        };
        r.rhs = [](const Ctx& t, const Environment& e, int) { return thm16_rhs(t, e); };
    }
    {  // the three 2phi1 evaluations behind the triple-sum proofs
        auto& r = add();
        r.id = "phi-even";
        r.summary = "2phi1(x,-x;-q;q,yq) = (x^2 yq;q^2)/(yq;q^2)";
        r.source = "q-binomial theorem with (a,q) -> (a^2,q^2)";
        r.uses_x = r.uses_y = true;
        r.tags = {"transformation", "parameterized"};
        r.lhs = [](const Ctx& t, const Environment& e, int) {
            Monomial xm = e.resolve(t, X(t));
            return phi_series(t, PhiSpec{{xm, -xm}, {-Q(t, 1)}, t.whole(1),
                                         e.resolve(t, Y(t) * Q(t, 1))});
        };
        r.rhs = [](const Ctx& t, const Environment& e, int) {
            return products(t, {F(t, e.resolve(t, X(t, 2) * Y(t) * Q(t, 1)), 2)},
                            {F(t, e.resolve(t, Y(t) * Q(t, 1)), 2)});
        };
    }
    {
        auto& r = add();
        r.id = "phi-odd";
        r.summary = "2phi1(x,xq;q;q^2,y^2q^2) = ((xyq;q)/(yq;q) + (-xyq;q)/(-yq;q))/2";
        r.source = "sum of the q-binomial theorem at +-t";
        r.uses_x = r.uses_y = true;
        r.tags = {"transformation", "parameterized"};
        r.lhs = [](const Ctx& t, const Environment& e, int) {
            Monomial xm = e.resolve(t, X(t));
            return phi_series(t, PhiSpec{{xm, xm * Q(t, 1)}, {Q(t, 1)}, t.whole(2),
                                         e.resolve(t, Y(t, 2) * Q(t, 2))});
        };
        r.rhs = [](const Ctx& t, const Environment& e, int) {
            Monomial xyq = e.resolve(t, X(t) * Y(t) * Q(t, 1));
            Monomial yq = e.resolve(t, Y(t) * Q(t, 1));
            QSeries a = products(t, {F(t, xyq, 1)}, {F(t, yq, 1)});
            QSeries b = products(t, {F(t, -xyq, 1)}, {F(t, -yq, 1)});
            return (a + b).div_exact(Int(2));
        };
    }
    {
        auto& r = add();
        r.id = "phi-sq";
        r.summary =
            "2 yq (1-x) 2phi1(xq,xq^2;q^3;q^2,y^2q^2) = (1-q)((xyq;q)/(yq;q) - (-xyq;q)/(-yq;q))";
        r.source = "difference of the q-binomial theorem at +-t, cross-multiplied to stay graded";
        r.uses_x = r.uses_y = true;
        r.tags = {"transformation", "parameterized"};
        r.lhs = [](const Ctx& t, const Environment& e, int) {
            Monomial xm = e.resolve(t, X(t));
            QSeries phi = phi_series(t, PhiSpec{{xm * Q(t, 1), xm * Q(t, 2)},
                                                {Q(t, 3)},
                                                t.whole(2),
                                                e.resolve(t, Y(t, 2) * Q(t, 2))});
            QSeries mult(t.denom, QSeries::kExact);
            Monomial m1 = e.resolve(t, C(2) * Y(t) * Q(t, 1));
            Monomial m2 = e.resolve(t, C(-2) * X(t) * Y(t) * Q(t, 1));
            mult.add_term(m1.qexp, ParamPoly(m1.param()));
            mult.add_term(m2.qexp, ParamPoly(m2.param()));
            return phi * mult;
        };
        r.rhs = [](const Ctx& t, const Environment& e, int) {
            Monomial xyq = e.resolve(t, X(t) * Y(t) * Q(t, 1));
            Monomial yq = e.resolve(t, Y(t) * Q(t, 1));
            QSeries a = products(t, {F(t, xyq, 1)}, {F(t, yq, 1)});
            QSeries b = products(t, {F(t, -xyq, 1)}, {F(t, -yq, 1)});
            QSeries one_minus_q = QSeries::one(t.denom);
            one_minus_q.add_term(t.whole(1), ParamPoly(Int(-1)));
            return (a - b) * one_minus_q;
        };
    }
    {  // bisection layer
        auto& r = add();
        r.id = "bisect-a";
        r.summary = "even bisection: double sum x^(2j+2k) = ((-qx;q) + (qx;q))/2";
        r.source = "sum of the Cao–Wang identity at x and -x";
        r.uses_x = true;
        r.tags = {"double-sum", "bisection", "parameterized"};
        r.lhs = [](const Ctx& t, const Environment& e, int) {
            Monomial xm = e.resolve(t, X(t));
            LatticeSummand sd;
            sd.dim = 2;
            sd.exponent = [t](const Idx& i) {
                return t.whole(4 * i[0] * i[0] + 4 * i[0] * i[1] + 2 * i[1] * i[1] + i[1]);
            };
            sd.numerator = [t, xm](const Idx& i) {
                return QSeries::from_monomial(t.denom, xm.pow(2 * i[0] + 2 * i[1]));
            };
            sd.denominator_factors = [t](const Idx& i) {
                return std::vector<FactorSpec>{F(t, Q(t, 1), 1, 2 * i[0]),
                                               F(t, Q(t, 2), 2, i[1])};
            };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment& e, int) {
            Monomial qx = e.resolve(t, Q(t, 1) * X(t));
            return (poch(t, F(t, -qx, 1)) + poch(t, F(t, qx, 1))).div_exact(Int(2));
        };
    }
    {
        auto& r = add();
        r.id = "bisect-b";
        r.summary = "odd bisection: double sum x^(1+2j+2k) = ((-qx;q) - (qx;q))/2";
        r.source = "difference of the Cao–Wang identity at x and -x";
        r.uses_x = true;
        r.tags = {"double-sum", "bisection", "parameterized"};
        r.lhs = [](const Ctx& t, const Environment& e, int) {
            Monomial xm = e.resolve(t, X(t));
            LatticeSummand sd;
            sd.dim = 2;
            sd.exponent = [t](const Idx& i) {
                return t.whole(4 * i[0] * i[0] + 4 * i[0] * i[1] + 2 * i[1] * i[1] + 4 * i[0] +
                               3 * i[1] + 1);
            };
            sd.numerator = [t, xm](const Idx& i) {
                return QSeries::from_monomial(t.denom, xm.pow(1 + 2 * i[0] + 2 * i[1]));
            };
            sd.denominator_factors = [t](const Idx& i) {
                return std::vector<FactorSpec>{F(t, Q(t, 1), 1, 1 + 2 * i[0]),
                                               F(t, Q(t, 2), 2, i[1])};
            };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment& e, int) {
            Monomial qx = e.resolve(t, Q(t, 1) * X(t));
            return (poch(t, F(t, -qx, 1)) - poch(t, F(t, qx, 1))).div_exact(Int(2));
        };
    }
    {  // the two theta-quotient relations the bisections are evaluated with
        auto& r = add();
        r.id = "wcy-a";
        r.summary = "(-q;q^2) + (q;q^2) = 2 (q^16,-q^6,-q^10;q^16)/(q^4;q^4)";
        r.source = "Wang, Eq. (1.2a)";
        r.default_order = 60;
        r.tags = {"relation", "bisection"};
        r.lhs = [](const Ctx& t, const Environment&, int) {
            return poch(t, F(t, -Q(t, 1), 2)) + poch(t, F(t, Q(t, 1), 2));
        };
        r.rhs = [](const Ctx& t, const Environment&, int) {
            QSeries p = products(t, {F(t, Q(t, 16), 16), F(t, -Q(t, 6), 16), F(t, -Q(t, 10), 16)},
                                 {F(t, Q(t, 4), 4)});
            return p.shifted(C(2));
        };
    }
    {
        auto& r = add();
        r.id = "wcy-b";
        r.summary = "(-q;q^2) - (q;q^2) = 2q (q^16,-q^2,-q^14;q^16)/(q^4;q^4)";
        r.source = "Wang, Eq. (1.2b)";
        r.default_order = 60;
        r.tags = {"relation", "bisection"};
        r.lhs = [](const Ctx& t, const Environment&, int) {
            return poch(t, F(t, -Q(t, 1), 2)) - poch(t, F(t, Q(t, 1), 2));
        };
        r.rhs = [](const Ctx& t, const Environment&, int) {
            QSeries p = products(t, {F(t, Q(t, 16), 16), F(t, -Q(t, 2), 16), F(t, -Q(t, 14), 16)},
                                 {F(t, Q(t, 4), 4)});
            return p.shifted(Monomial(Int(2), Exp{0}, Exp{0}, t.whole(1)));
        };
    }
    {  // bisection theorems (double sums)
        auto& r = add();
        r.id = "thm41a";
        r.summary = "double sum q^(4j^2+4jk+2k^2-j) = (q^8,-q^3,-q^5;q^8)/(q^2;q^2)";
        r.source = "even part of the Cao–Wang identity at x = q^(-1/2)";
        r.tags = {"double-sum", "bisection"};
        r.lhs = [](const Ctx& t, const Environment&, int) {
            LatticeSummand sd;
            sd.dim = 2;
            sd.exponent = [t](const Idx& i) {
                return t.whole(4 * i[0] * i[0] + 4 * i[0] * i[1] + 2 * i[1] * i[1] - i[0]);
            };
            sd.denominator_factors = [t](const Idx& i) {
                return std::vector<FactorSpec>{F(t, Q(t, 1), 1, 2 * i[0]),
                                               F(t, Q(t, 2), 2, i[1])};
            };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment&, int) {
            return products(t, {F(t, Q(t, 8), 8), F(t, -Q(t, 3), 8), F(t, -Q(t, 5), 8)},
                            {F(t, Q(t, 2), 2)});
        };
    }
    {
        auto& r = add();
        r.id = "thm41b";
        r.summary = "double sum q^(4j^2+4jk+2k^2+3j+2k) = (q^8,-q,-q^7;q^8)/(q^2;q^2)";
        r.source = "odd part of the Cao–Wang identity at x = q^(-1/2)";
        r.tags = {"double-sum", "bisection"};
        r.lhs = [](const Ctx& t, const Environment&, int) {
            LatticeSummand sd;
            sd.dim = 2;
            sd.exponent = [t](const Idx& i) {
                return t.whole(4 * i[0] * i[0] + 4 * i[0] * i[1] + 2 * i[1] * i[1] + 3 * i[0] +
                               2 * i[1]);
            };
            sd.denominator_factors = [t](const Idx& i) {
                return std::vector<FactorSpec>{F(t, Q(t, 1), 1, 1 + 2 * i[0]),
                                               F(t, Q(t, 2), 2, i[1])};
            };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment&, int) {
            return products(t, {F(t, Q(t, 8), 8), F(t, -Q(t, 1), 8), F(t, -Q(t, 7), 8)},
                            {F(t, Q(t, 2), 2)});
        };
    }
    {  // bisection theorems (triple sums, knobbed)
        auto& r = add();
        r.id = "thm42a";
        r.summary = "triple sum over (q;q)_2j with shift -2m(j+l) = (-q^-m;q)_m (q^8,-q^3,-q^5;q^8)/(q^2;q^2)";
        r.source = "even bisection of the shifted triple sum at x = q^(1/2)";
        r.m_range = {{0, 4}};
        r.m_meaning = "the nonnegative shift m";
        r.tags = {"triple-sum", "bisection", "family"};
        r.lhs = [](const Ctx& t, const Environment&, int m) {
            LatticeSummand sd;
            sd.dim = 3;
            sd.exponent = [t, m](const Idx& i) {
                std::int64_t a = 2 * i[0] + i[1] + i[2];
                return t.whole(a * (a - 1) + i[2] * i[2] + i[0] + i[1] -
                               2 * m * (i[0] + i[2]));
            };
            sd.numerator = [t](const Idx& i) {
                return QSeries::from_monomial(t.denom, C(sgn(i[1])));
            };
            sd.numerator_factors = [t](const Idx& i) {
                return std::vector<FactorSpec>{F(t, Q(t, 1), 2, i[1])};
            };
            sd.denominator_factors = [t](const Idx& i) {
                return std::vector<FactorSpec>{F(t, Q(t, 1), 1, 2 * i[0]),
                                               F(t, Q(t, 2), 2, i[1]), F(t, Q(t, 2), 2, i[2])};
            };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment&, int m) {
            return products(t,
                            {F(t, -Q(t, -m), 1, m), F(t, Q(t, 8), 8), F(t, -Q(t, 3), 8),
                             F(t, -Q(t, 5), 8)},
                            {F(t, Q(t, 2), 2)});
        };
    }
    {
        auto& r = add();
        r.id = "thm42b";
        r.summary = "triple sum over (q;q)_(1+2j) with shift -m(1+2j+2l) = (-q^-m;q)_m (q^8,-q,-q^7;q^8)/(q^2;q^2)";
        r.source = "odd bisection of the shifted triple sum at x = q^(1/2)";
        r.m_range = {{0, 4}};
        r.m_meaning = "the nonnegative shift m";
        r.tags = {"triple-sum", "bisection", "family"};
        r.lhs = [](const Ctx& t, const Environment&, int m) {
            LatticeSummand sd;
            sd.dim = 3;
            sd.exponent = [t, m](const Idx& i) {
                std::int64_t a = 2 * i[0] + i[1] + i[2];
                return t.whole((1 + a) * a + i[2] * i[2] + i[0] + i[1] -
                               m * (1 + 2 * i[0] + 2 * i[2]));
            };
            sd.numerator = [t](const Idx& i) {
                return QSeries::from_monomial(t.denom, C(sgn(i[1])));
            };
            sd.numerator_factors = [t](const Idx& i) {
                return std::vector<FactorSpec>{F(t, Q(t, 1), 2, i[1])};
            };
            sd.denominator_factors = [t](const Idx& i) {
                return std::vector<FactorSpec>{F(t, Q(t, 1), 1, 1 + 2 * i[0]),
                                               F(t, Q(t, 2), 2, i[1]), F(t, Q(t, 2), 2, i[2])};
            };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment&, int m) {
            return products(t,
                            {F(t, -Q(t, -m), 1, m), F(t, Q(t, 8), 8), F(t, -Q(t, 1), 8),
                             F(t, -Q(t, 7), 8)},
                            {F(t, Q(t, 2), 2)});
        };
    }
    {
        auto& r = add();
        r.id = "thm43a";
        r.summary = "triple sum with (q^-1;q^2)_k over (q;q)_2j = (q^8,-q^3,-q^5;q^8)/(q^2;q^2)";
        r.source = "even bisection of the odd-shift triple sum at x = q^(-1/2)";
        r.tags = {"triple-sum", "bisection"};
        r.lhs = [](const Ctx& t, const Environment&, int) {
            LatticeSummand sd;
            sd.dim = 3;
            sd.exponent = [t](const Idx& i) {
                std::int64_t a = 2 * i[0] + i[1] + i[2];
                return t.whole(a * (a - 1) + i[2] * i[2] + i[0] + 3 * i[1] + 2 * i[2]);
            };
            sd.numerator = [t](const Idx& i) {
                return QSeries::from_monomial(t.denom, C(sgn(i[1])));
            };
            sd.numerator_factors = [t](const Idx& i) {
                return std::vector<FactorSpec>{F(t, Q(t, -1), 2, i[1])};
            };
            sd.denominator_factors = [t](const Idx& i) {
                return std::vector<FactorSpec>{F(t, Q(t, 1), 1, 2 * i[0]),
                                               F(t, Q(t, 2), 2, i[1]), F(t, Q(t, 2), 2, i[2])};
            };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment&, int) {
            return products(t, {F(t, Q(t, 8), 8), F(t, -Q(t, 3), 8), F(t, -Q(t, 5), 8)},
                            {F(t, Q(t, 2), 2)});
        };
    }
    {
        auto& r = add();
        r.id = "thm43b";
        r.summary = "triple sum with (q^-1;q^2)_k over (q;q)_(1+2j) = (q^8,-q,-q^7;q^8)/(q^2;q^2)";
        r.source = "odd bisection of the odd-shift triple sum at x = q^(-1/2)";
        r.tags = {"triple-sum", "bisection"};
        r.lhs = [](const Ctx& t, const Environment&, int) {
            LatticeSummand sd;
            sd.dim = 3;
            sd.exponent = [t](const Idx& i) {
                std::int64_t a = 2 * i[0] + i[1] + i[2];
                return t.whole((1 + a) * a + i[2] * i[2] + i[0] + 3 * i[1] + 2 * i[2]);
            };
            sd.numerator = [t](const Idx& i) {
                return QSeries::from_monomial(t.denom, C(sgn(i[1])));
            };
            sd.numerator_factors = [t](const Idx& i) {
                return std::vector<FactorSpec>{F(t, Q(t, -1), 2, i[1])};
            };
            sd.denominator_factors = [t](const Idx& i) {
                return std::vector<FactorSpec>{F(t, Q(t, 1), 1, 1 + 2 * i[0]),
                                               F(t, Q(t, 2), 2, i[1]), F(t, Q(t, 2), 2, i[2])};
            };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment&, int) {
            return products(t, {F(t, Q(t, 8), 8), F(t, -Q(t, 1), 8), F(t, -Q(t, 7), 8)},
                            {F(t, Q(t, 2), 2)});
        };
    }
    {
        auto& r = add();
        r.id = "thm44a";
        r.summary = "triple sum with (x;q^2)_k x^-l = (-qx,-q^3/x;q^4)/(q^2;q^4)";
        r.source = "theta evaluation of the even-bisection triple sum at (x,y) -> (-x/q, q/x^(1/2))";
        r.uses_x = true;
        r.tags = {"triple-sum", "parameterized"};
        r.validate = [](const Ctx& t, const Environment& e, int) {
            if (e.x && e.resolve(t, X(t)).is_zero())
                throw ConfigError("thm44a needs x != 0 (x appears with negative powers)");
        };
        r.lhs = [](const Ctx& t, const Environment& e, int) {
            Monomial xk = e.resolve(t, X(t));
            Monomial xinv = e.resolve(t, X(t, -1));
            LatticeSummand sd;
            sd.dim = 3;
            sd.exponent = [t](const Idx& i) {
                std::int64_t s = i[0] + i[1] + i[2];
                return t.whole(s * (s - 1) + i[2] * i[2] + i[0] + i[1] + 2 * i[2]);
            };
            sd.numerator = [t, xinv](const Idx& i) {
                return QSeries::from_monomial(t.denom, C(sgn(i[1])) * xinv.pow(i[2]));
            };
            sd.numerator_factors = [t, xk](const Idx& i) {
                return std::vector<FactorSpec>{F(t, xk, 2, i[1])};
            };
            sd.denominator_factors = [t](const Idx& i) { return den3(t, i); };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment& e, int) {
            Monomial qx = e.resolve(t, Q(t, 1) * X(t));
            Monomial q3x = e.resolve(t, Q(t, 3) * X(t, -1));
            return products(t, {F(t, -qx, 4), F(t, -q3x, 4)}, {F(t, Q(t, 2), 4)});
        };
    }
    {
        auto& r = add();
        r.id = "thm44b";
        r.summary = "triple sum with (x;q^2)_k x^-l, exponent +2j+3k+4l = (-q^3x,-q^5/x;q^4)/(q^2;q^4)";
        r.source = "theta evaluation of the odd-bisection triple sum at (x,y) -> (-x/q^2, q^2/x^(1/2))";
        r.uses_x = true;
        r.tags = {"triple-sum", "parameterized"};
        r.validate = [](const Ctx& t, const Environment& e, int) {
            if (e.x && e.resolve(t, X(t)).is_zero())
                throw ConfigError("thm44b needs x != 0 (x appears with negative powers)");
        };
        r.lhs = [](const Ctx& t, const Environment& e, int) {
            Monomial xk = e.resolve(t, X(t));
            Monomial xinv = e.resolve(t, X(t, -1));
            LatticeSummand sd;
            sd.dim = 3;
            sd.exponent = [t](const Idx& i) {
                std::int64_t s = i[0] + i[1] + i[2];
                return t.whole(s * (s - 1) + i[2] * i[2] + 2 * i[0] + 3 * i[1] + 4 * i[2]);
            };
            sd.numerator = [t, xinv](const Idx& i) {
                return QSeries::from_monomial(t.denom, C(sgn(i[1])) * xinv.pow(i[2]));
            };
            sd.numerator_factors = [t, xk](const Idx& i) {
                return std::vector<FactorSpec>{F(t, xk, 2, i[1])};
            };
            sd.denominator_factors = [t](const Idx& i) { return den3(t, i); };
            return lattice_sum(t, sd, t.stop_margin);
        };
        r.rhs = [](const Ctx& t, const Environment& e, int) {
            Monomial q3x = e.resolve(t, Q(t, 3) * X(t));
            Monomial q5x = e.resolve(t, Q(t, 5) * X(t, -1));
            return products(t, {F(t, -q3x, 4), F(t, -q5x, 4)}, {F(t, Q(t, 2), 4)});
        };
    }
}

const Registry& Registry::instance() {
    static Registry reg;
    return reg;
}

const IdentityRecord* Registry::find(std::string_view id) const {
    for (const auto& r : records_)
        if (r.id == id) return &r;
    return nullptr;
}

const IdentityRecord& Registry::get(std::string_view id) const {
    const IdentityRecord* r = find(id);
    if (!r) throw ConfigError("unknown identity id '" + std::string(id) + "'");
    return *r;
}

int effective_order(const IdentityRecord& rec, std::optional<int> requested) {
    if (!requested) return rec.default_order;
    return rec.heavy ? std::min(*requested, rec.default_order) : *requested;
}

VerificationReport Registry::verify(std::string_view id, int order, const Environment& env,
                                    std::optional<int> m, int denom) const {
    const IdentityRecord& rec = get(id);
    if (order < 0) throw ConfigError("order must be nonnegative");
    if (denom < 1) throw ConfigError("exponent denominator must be >= 1");
    if (env.x && !rec.uses_x)
        throw ConfigError("'" + rec.id + "' has no parameter x");
    if (env.y && !rec.uses_y)
        throw ConfigError("'" + rec.id + "' has no parameter y");
    if (rec.m_range) {
        if (!m) throw ConfigError("'" + rec.id + "' takes a knob m in [" +
                                  std::to_string(rec.m_range->first) + ", " +
                                  std::to_string(rec.m_range->second) + "]");
        if (*m < rec.m_range->first || *m > rec.m_range->second)
            throw UnsupportedError("'" + rec.id + "' is validated for m in [" +
                                   std::to_string(rec.m_range->first) + ", " +
                                   std::to_string(rec.m_range->second) + "], got " +
                                   std::to_string(*m));
    } else if (m) {
        throw ConfigError("'" + rec.id + "' has no knob m");
    }

    Ctx ctx{denom, Exp{static_cast<std::int64_t>(order) * denom}};
    if (rec.validate) rec.validate(ctx, env, m.value_or(0));

    VerificationReport rep;
    rep.id = rec.id;
    rep.order = order;
    rep.denom = denom;
    rep.m = m;
    rep.environment = env.describe(denom);

    auto t0 = std::chrono::steady_clock::now();
    try {
        QSeries lhs = rec.lhs(ctx, env, m.value_or(0));
        QSeries rhs = rec.rhs(ctx, env, m.value_or(0));
        if (lhs.ncut() < ctx.ncut || rhs.ncut() < ctx.ncut)
            throw ConfigError("builder under-delivered completeness (internal error)");
        auto mm = lhs.restricted(ctx.ncut).first_mismatch(rhs.restricted(ctx.ncut));
        if (mm) {
            rep.status = Status::Fail;
            rep.mismatch = VerificationReport::MismatchInfo{mm->exponent, mm->lhs, mm->rhs};
            rep.message = "first mismatch at q^" + exp_str(mm->exponent, denom) + ": lhs = " +
                          mm->lhs.str(denom) + ", rhs = " + mm->rhs.str(denom);
        } else {
            rep.status = Status::Pass;
        }
    } catch (const ExactnessError& ex) {
        // an inexact division means the two sides genuinely differ
        rep.status = Status::Fail;
        rep.message = std::string("exactness failure: ") + ex.what();
    } catch (const Error& ex) {
        rep.status = Status::Error;
        rep.message = ex.what();
    }
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return rep;
}

std::vector<Registry::Unit> Registry::units() const {
    std::vector<Unit> out;
    for (const auto& r : records_) {
        if (r.m_range) {
            for (int m = r.m_range->first; m <= r.m_range->second; ++m)
                out.push_back({&r, m});
        } else {
            out.push_back({&r, std::nullopt});
        }
    }
    return out;
}

std::vector<VerificationReport> Registry::verify_all(std::optional<int> order, int denom,
                                                     unsigned jobs) const {
    std::vector<Unit> us = units();
    std::vector<VerificationReport> out(us.size());
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (std::size_t i; (i = next.fetch_add(1)) < us.size();) {
            const Unit& u = us[i];
            out[i] = verify(u.rec->id, effective_order(*u.rec, order), Environment{}, u.m, denom);
        }
    };
    unsigned n = jobs ? jobs : std::thread::hardware_concurrency();
    if (n < 1) n = 1;
    if (n > us.size()) n = static_cast<unsigned>(us.size());
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n; ++i) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    return out;
}

std::span<const CrossCheck> Registry::derivation_checks() {
    static const std::vector<CrossCheck> checks = [] {
        std::vector<CrossCheck> c;
        c.push_back({"thm11(x=q, y=q^1/2) = uz1", "thm11",
                     {{{'x', 1, 1, 1}, {'y', 1, 1, 2}}}, std::nullopt, "uz1", {}, std::nullopt,
                     40, {}});
        c.push_back({"thm11(x=q^2, y=q^3/2) = uz2", "thm11",
                     {{{'x', 1, 2, 1}, {'y', 1, 3, 2}}}, std::nullopt, "uz2", {}, std::nullopt,
                     40, {}});
        c.push_back({"cor13(m=0) = slater98", "cor13", {}, 0, "slater98", {}, std::nullopt, 40, {}});
        // (q;q)_(1+2k) = (q^2;q^2)_k (q;q^2)_(k+1): the rewritten denominators
        // absorb one factor (1 - q)
        c.push_back({"cor13(m=1) = (1-q) * slater96", "cor13", {}, 1, "slater96", {},
                     std::nullopt, 40, {{1, 0}, {-1, 1}}});
        // the xy = 1 line: both triple-sum theorems collapse to cw2 with
        // argument -1/(qx)
        c.push_back({"thm15(x=q^-1, y=q) = cw2(x=-1)", "thm15",
                     {{{'x', 1, -1, 1}, {'y', 1, 1, 1}}}, std::nullopt, "cw2",
                     {{{'x', -1, 0, 1}}}, std::nullopt, 30, {}});
        c.push_back({"thm16(x=q, y=q^-1) = cw2(x=-q^-2)", "thm16",
                     {{{'x', 1, 1, 1}, {'y', 1, -1, 1}}}, std::nullopt, "cw2",
                     {{{'x', -1, -2, 1}}}, std::nullopt, 30, {}});
        return c;
    }();
    return checks;
}

VerificationReport Registry::run_cross_check(const CrossCheck& c, int denom) const {
    const IdentityRecord& src = get(c.source_id);
    const IdentityRecord& tgt = get(c.target_id);
    Ctx ctx{denom, Exp{static_cast<std::int64_t>(c.order) * denom}};

    VerificationReport rep;
    rep.id = c.name;
    rep.order = c.order;
    rep.denom = denom;
    rep.environment = c.env.str();

    auto t0 = std::chrono::steady_clock::now();
    try {
        Environment se = c.env.make(ctx);
        Environment te = c.target_env.make(ctx);
        if (src.validate) src.validate(ctx, se, c.m.value_or(0));
        QSeries scale = QSeries::one(ctx.denom);
        if (!c.target_scale.empty()) {
            scale = QSeries(ctx.denom, QSeries::kExact);
            for (const auto& [co, p] : c.target_scale)
                scale.add_term(ctx.whole(p), ParamPoly(Int(co)));
        }
        auto check_side = [&](bool left) -> std::optional<QSeries::Mismatch> {
            const auto& sb = left ? src.lhs : src.rhs;
            const auto& tb = left ? tgt.lhs : tgt.rhs;
            QSeries s = sb(ctx, se, c.m.value_or(0)).restricted(ctx.ncut);
            QSeries t = (tb(ctx, te, c.target_m.value_or(0)) * scale).restricted(ctx.ncut);
            return s.first_mismatch(t);
        };
        auto ml = check_side(true);
        auto mr = ml ? ml : check_side(false);
        if (mr) {
            rep.status = Status::Fail;
            rep.mismatch = VerificationReport::MismatchInfo{mr->exponent, mr->lhs, mr->rhs};
            rep.message = std::string(ml ? "LHS" : "RHS") + " sides differ at q^" +
                          exp_str(mr->exponent, denom);
        } else {
            rep.status = Status::Pass;
        }
    } catch (const ExactnessError& ex) {
        rep.status = Status::Fail;
        rep.message = std::string("exactness failure: ") + ex.what();
    } catch (const Error& ex) {
        rep.status = Status::Error;
        rep.message = ex.what();
    }
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return rep;
}

} // namespace qrr
