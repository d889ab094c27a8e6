#include <doctest.h>

#include "oracles.hpp"
#include "qrr/expr.hpp"

using namespace qrr;

namespace {
Ctx ctx_at(std::int64_t order) { return Ctx{2, Exp{2 * order}}; }
} // namespace

TEST_CASE("parsing Pochhammer expressions") {
    ExprAst a = parse_expr("(q;q)_inf");
    REQUIRE(a.numerator.size() == 1);
    CHECK(a.numerator[0].is_poch);
    CHECK(a.numerator[0].args.size() == 1);
    CHECK(!a.numerator[0].count.has_value());
    CHECK(a.denominator.empty());

    ExprAst b = parse_expr("(q,q^4;q^5)_inf");
    CHECK(b.numerator[0].args.size() == 2);
    CHECK(b.numerator[0].base.qe == ExpFrac{5, 1});

    ExprAst c = parse_expr("1/(q, q^4 ; q^5)_inf");
    CHECK(c.denominator.size() == 1);

    ExprAst d = parse_expr("(-q;q^2)_3 * (x*y^1/2;q)_2");
    CHECK(d.numerator.size() == 2);
    CHECK(d.numerator[0].args[0].coeff == -1);
    CHECK(d.numerator[1].args[0].ye == ExpFrac{1, 2});
    CHECK(d.numerator[1].count == 2);
}

TEST_CASE("syntax errors carry byte offsets and expected tokens") {
    try {
        parse_expr("(q3;q)_inf");
        FAIL("expected a ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 2);  // the caret syntax is required
        CHECK(e.expected().find('^') != std::string::npos);
    }
    CHECK_THROWS_AS(parse_expr("(q;q)_"), ParseError);
    CHECK_THROWS_AS(parse_expr("(q;q)"), ParseError);
    CHECK_THROWS_AS(parse_expr(""), ParseError);
    CHECK_THROWS_AS(parse_expr("(q;q)_inf extra"), ParseError);
    CHECK_THROWS_AS(parse_mono("q^"), ParseError);
}

TEST_CASE("printing is a fixed point of parse-print-parse") {
    for (auto text : {"(q;q)_inf", "1/(q,q^4;q^5)_inf", "(q, -q, -q^2 ;q^2)_inf",
                      "(x*y^1/2*q;q^2)_4*(q;q)_inf/(y^2;q)_3", "-2*q^3/2", "q^-1*x^-2",
                      "(q^16,-q^6,-q^10;q^16)_inf/(q^4;q^4)_inf"}) {
        CAPTURE(text);
        std::string once = parse_expr(text).str();
        std::string twice = parse_expr(once).str();
        CHECK(once == twice);
    }
}

TEST_CASE("expansion agrees with the partition-counting oracle") {
    Ctx t = ctx_at(9);
    QSeries s = eval_expr(t, parse_expr("1/(q,q^4;q^5)_inf"));
    oracle::Dense d = oracle::partitions_into_residues(9, 5, {1, 4});
    for (int n = 0; n <= 9; ++n) CHECK(s.coeff_whole(n) == ParamPoly(Int(d[n])));
}

TEST_CASE("expansion of the pentagonal product") {
    Ctx t = ctx_at(7);
    QSeries s = eval_expr(t, parse_expr("(q;q)_inf"));
    std::vector<long> expect = {1, -1, -1, 0, 0, 1, 0, 1};
    for (int n = 0; n <= 7; ++n) CHECK(s.coeff_whole(n) == ParamPoly(expect[n]));
}

TEST_CASE("expansion of the unit product is 1") {
    Ctx t = ctx_at(20);
    QSeries s = eval_expr(t, parse_expr("(q,-q,-q^2;q^2)_inf"));
    CHECK(s.matches(QSeries::one(t.denom, t.ncut)));
}

TEST_CASE("expansion failure modes") {
    Ctx t = ctx_at(6);
    CHECK_THROWS_AS(eval_expr(t, parse_expr("1/2")), InversionError);
    CHECK_THROWS_AS(eval_expr(t, parse_expr("(q;x)_inf")), ConfigError);   // bad base
    CHECK_THROWS_AS(eval_expr(t, parse_expr("(q;q^-1)_2")), ConfigError);  // bad base
    CHECK_THROWS_AS(eval_expr(t, parse_expr("(q^1/3;q)_2")), ConfigError); // needs finer D
    Ctx fine{6, Exp{6 * 6}};
    CHECK(!eval_expr(fine, parse_expr("(q^1/3;q)_2")).is_identically_zero());
}

TEST_CASE("Laurent expressions expand exactly") {
    Ctx t = ctx_at(6);
    // q^-1 * (q;q)_2 starts at q^-1
    QSeries s = eval_expr(t, parse_expr("q^-1*(q;q)_2"));
    CHECK(s.coeff(t.whole(-1)) == ParamPoly(1));
    CHECK(s.coeff(Exp{0}) == ParamPoly(-1));
    // denominators that shift: q/(q^2) = q^-1
    QSeries r = eval_expr(t, parse_expr("q/q^2"));
    CHECK(r.coeff(t.whole(-1)) == ParamPoly(1));
}
