#pragma once

#include <array>
#include <functional>
#include <vector>

#include "qrr/qseries.hpp"

namespace qrr {

/// A basic hypergeometric series
///   sum_k (a_1,...,a_{r+1}; q^s)_k / ((q^s, b_1,...,b_r; q^s)_k) z^k
/// in the (r+1)phi_r normalization: one more numerator monomial than
/// denominator monomials, plus the implicit (q^s; q^s)_k downstairs.
struct PhiSpec {
    std::vector<Monomial> numerators;
    std::vector<Monomial> denominators;
    Exp step;
    Monomial argument;
};

/// Evaluates the series truncated at ctx.ncut. Terms whose numerator
/// Pochhammer vanishes terminate the sum; a term sequence whose q-order does
/// not eventually grow raises GradingError.
QSeries phi_series(const Ctx& ctx, const PhiSpec& spec);

/// One multi-sum term family: indices idx = (j, k, l) with dim of them in
/// use. The term is
///   q^(exponent(idx)) * numerator(idx) * prod(numerator_factors(idx))
///     / prod(denominator_factors(idx)),
/// where the numerator is an exact q-polynomial (constant 1 when absent) and
/// the denominator factors expand to unit-invertible series.
struct LatticeSummand {
    using Index = std::array<std::int64_t, 3>;

    int dim = 1;
    std::function<Exp(const Index&)> exponent;
    std::function<QSeries(const Index&)> numerator;  // optional, exact
    std::function<std::vector<FactorSpec>(const Index&)> numerator_factors;    // optional
    std::function<std::vector<FactorSpec>(const Index&)> denominator_factors;  // optional
};

/// Enumerates index shells s = j + k + l = 0, 1, 2, ... and accumulates every
/// term with least exponent <= ctx.ncut. Stops once `stop_margin` consecutive
/// shells have minimum achievable exponent beyond the bound; raises
/// NonTerminationError if that never happens within 4*(N+1) shells.
QSeries lattice_sum(const Ctx& ctx, const LatticeSummand& summand, int stop_margin = 3);

/// The Schur polynomial pair D_m, E_m with P_m = P_{m-1} + q^m P_{m-2},
/// D_0 = 1, D_1 = 1 + q, E_0 = 1, E_1 = 1, extended backwards to m >= -2 by
/// the exact backward recurrence.
struct SchurPair {
    int m;
    QSeries d;
    QSeries e;
};

SchurPair schur(const Ctx& ctx, int m);

/// The five-fold product side of the Garrett–Ismail–Stanton formula:
///   (-1)^m q^(-C(m,2)) * [ E_{m-2}/(q,q^4;q^5)_inf - D_{m-2}/(q^2,q^3;q^5)_inf ].
/// Scoped to m in [0, 5]; UnsupportedError outside.
QSeries gst_rhs(const Ctx& ctx, int m);

} // namespace qrr
