#include "qrr/expr.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

namespace qrr {

std::string ExpFrac::str() const {
    std::string s = std::to_string(num);
    if (den != 1 && num != 0) s += "/" + std::to_string(den);
    return s;
}

std::string MonoExpr::str() const {
    std::ostringstream os;
    bool bare = qe.is_zero() && xe.is_zero() && ye.is_zero();
    bool lead = true;
    if (coeff == -1 && !bare) {
        os << '-';
    } else if (!(coeff == 1) || bare) {
        os << coeff.get_str();
        lead = false;
    }
    auto put = [&](char v, const ExpFrac& f) {
        if (f.is_zero()) return;
        if (!lead) os << '*';
        os << v;
        if (!(f.num == 1 && f.den == 1)) os << '^' << f.str();
        lead = false;
    };
    put('q', qe);
    put('x', xe);
    put('y', ye);
    return os.str();
}

Monomial MonoExpr::monomial(const Ctx& ctx) const {
    return Monomial(coeff, ctx.frac(xe.num, xe.den), ctx.frac(ye.num, ye.den),
                    ctx.frac(qe.num, qe.den));
}

std::string FactorExpr::str() const {
    if (!is_poch) return mono.str();
    std::string s = "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) s += ",";
        s += args[i].str();
    }
    s += ";" + base.str() + ")_";
    s += count ? std::to_string(*count) : "inf";
    return s;
}

std::string ExprAst::str() const {
    auto join = [](const std::vector<FactorExpr>& fs) {
        std::string s;
        for (std::size_t i = 0; i < fs.size(); ++i) {
            if (i) s += "*";
            s += fs[i].str();
        }
        return s;
    };
    std::string s = join(numerator);
    if (!denominator.empty()) s += "/" + join(denominator);
    return s;
}

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& expected) {
        skip_ws();
        std::string got = pos < text.size() ? "'" + std::string(1, text[pos]) + "'"
                                            : "end of input";
        throw ParseError("syntax error at offset " + std::to_string(pos) + ": expected " +
                             expected + ", got " + got,
                         pos, expected);
    }
    void expect(char c, const std::string& expected) {
        if (!accept(c)) fail(expected);
    }

    std::int64_t integer(bool allow_sign) {
        skip_ws();
        std::size_t start = pos;
        bool neg = false;
        if (allow_sign && pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
            neg = text[pos] == '-';
            ++pos;
        }
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
            pos = start;
            fail("an integer");
        }
        std::int64_t v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + (text[pos] - '0');
            if (v > (std::int64_t{1} << 40)) fail("a smaller integer");
            ++pos;
        }
        return neg ? -v : v;
    }

    ExpFrac frac() {
        ExpFrac f;
        f.num = integer(true);
        if (accept('/')) {
            f.den = integer(false);
            if (f.den == 0) fail("a nonzero denominator");
        }
        std::int64_t g = std::gcd(f.num < 0 ? -f.num : f.num, f.den);
        if (g > 1) {
            f.num /= g;
            f.den /= g;
        }
        if (f.num == 0) f.den = 1;
        return f;
    }

    // atom := ("q"|"x"|"y") ("^" frac)? | integer
    void atom(MonoExpr& m) {
        char c = peek();
        if (c == 'q' || c == 'x' || c == 'y') {
            ++pos;
            ExpFrac e{1, 1};
            if (accept('^')) e = frac();
            ExpFrac& slot = c == 'q' ? m.qe : (c == 'x' ? m.xe : m.ye);
            // repeated variables multiply: exponents add as exact fractions
            std::int64_t den = std::lcm(slot.den, e.den);
            slot.num = slot.num * (den / slot.den) + e.num * (den / e.den);
            slot.den = den;
            std::int64_t g = std::gcd(slot.num < 0 ? -slot.num : slot.num, slot.den);
            if (g > 1) {
                slot.num /= g;
                slot.den /= g;
            }
            if (slot.num == 0) slot.den = 1;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            m.coeff *= Int(static_cast<long>(integer(false)));
        } else {
            fail("'q', 'x', 'y' or an integer");
        }
    }

    // mono := ["+"|"-"] atom ("*" atom)*
    MonoExpr mono() {
        MonoExpr m;
        if (accept('-'))
            m.coeff = -1;
        else
            accept('+');
        atom(m);
        for (;;) {
            skip_ws();
            // a digit or variable directly after an atom is a syntax error,
            // not an implicit product ("q3" needs a caret or '*')
            if (pos < text.size()) {
                char c = text[pos];
                if (c == 'q' || c == 'x' || c == 'y' ||
                    std::isdigit(static_cast<unsigned char>(c)))
                    fail("'^', '*', ',', ';', ')' or an operator");
            }
            // '*' continues the monomial only when an atom follows;
            // otherwise it separates factors at the product level
            if (peek() != '*') break;
            std::size_t save = pos;
            ++pos;
            char c = peek();
            if (!(c == 'q' || c == 'x' || c == 'y' ||
                  std::isdigit(static_cast<unsigned char>(c)))) {
                pos = save;
                break;
            }
            atom(m);
        }
        return m;
    }

    // factor := "(" mono ("," mono)* ";" mono ")" "_" ("inf"|integer) | mono
    FactorExpr factor() {
        FactorExpr f;
        if (accept('(')) {
            f.is_poch = true;
            f.args.push_back(mono());
            while (accept(',')) f.args.push_back(mono());
            expect(';', "',' or ';'");
            f.base = mono();
            expect(')', "')'");
            expect('_', "'_'");
            skip_ws();
            if (text.compare(pos, 3, "inf") == 0) {
                pos += 3;
                f.count = std::nullopt;
            } else {
                std::int64_t n = integer(false);
                if (n < 0) fail("a nonnegative count");
                f.count = n;
            }
        } else {
            f.mono = mono();
        }
        return f;
    }

    std::vector<FactorExpr> product() {
        std::vector<FactorExpr> fs;
        fs.push_back(factor());
        while (accept('*')) fs.push_back(factor());
        return fs;
    }

    ExprAst expr() {
        ExprAst ast;
        ast.numerator = product();
        if (accept('/')) ast.denominator = product();
        skip_ws();
        if (pos != text.size()) fail("'*', '/' or end of input");
        return ast;
    }
};

} // namespace

ExprAst parse_expr(std::string_view text) {
    Parser p{text};
    return p.expr();
}

MonoExpr parse_mono(std::string_view text) {
    Parser p{text};
    MonoExpr m = p.mono();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("end of input");
    return m;
}

namespace {

// Splits one product into Pochhammer factors plus a single monomial
// multiplier; validates bases.
struct SidePlan {
    std::vector<FactorSpec> factors;
    Monomial scale;
};

SidePlan plan_side(const Ctx& ctx, const std::vector<FactorExpr>& fs) {
    SidePlan plan;
    plan.scale = Monomial(Int(1));
    for (const auto& f : fs) {
        if (!f.is_poch) {
            plan.scale = plan.scale * f.mono.monomial(ctx);
            continue;
        }
        Monomial base = f.base.monomial(ctx);
        if (!(base.coeff == 1) || base.xexp != Exp{0} || base.yexp != Exp{0} ||
            base.qexp <= Exp{0})
            throw ConfigError("Pochhammer base must be a positive power of q, got '" +
                              f.base.str() + "'");
        for (const auto& a : f.args)
            plan.factors.push_back(FactorSpec{a.monomial(ctx), base.qexp, f.count});
    }
    return plan;
}

} // namespace

QSeries eval_expr(const Ctx& ctx, const ExprAst& ast) {
    SidePlan num = plan_side(ctx, ast.numerator);
    SidePlan den = plan_side(ctx, ast.denominator);
    std::int64_t pad = 0;
    for (const auto& f : num.factors) pad += detail::negative_order_sum(f);
    for (const auto& f : den.factors) pad += 2 * detail::negative_order_sum(f);
    pad += std::max<std::int64_t>(std::int64_t{0}, -num.scale.qexp.units);
    pad += 2 * std::max<std::int64_t>(std::int64_t{0}, den.scale.qexp.units < 0
                                                           ? -den.scale.qexp.units
                                                           : den.scale.qexp.units);
    Ctx sub{ctx.denom, ctx.ncut + Exp{pad}};

    QSeries out = poch_list(sub, std::span<const FactorSpec>(num.factors.data(),
                                                             num.factors.size()));
    out = out.shifted(num.scale);
    if (!ast.denominator.empty()) {
        QSeries d = poch_list(sub, std::span<const FactorSpec>(den.factors.data(),
                                                               den.factors.size()));
        d = d.shifted(den.scale);
        out = out * d.restricted(min(d.ncut(), sub.ncut)).inverted();
    }
    if (out.ncut() < ctx.ncut)
        throw ConfigError("expression evaluation lost completeness (internal error)");
    return out.restricted(ctx.ncut);
}

} // namespace qrr
