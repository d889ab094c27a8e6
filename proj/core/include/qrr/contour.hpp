#pragma once

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qrr/qseries.hpp"

namespace qrr {

/// The factor kinds that appear in the contour integrands. Each one expands
/// into a Laurent series in z whose z^d coefficient is an explicitly known
/// q-series:
///   EulerA   (-w; q^s)_inf            = sum_j q^(s*C(j,2)) w^j / (q^s;q^s)_j
///   EulerB   1/(w; q^s)_inf           = sum_j w^j / (q^s;q^s)_j
///   QBinom   (a w; q^s)_inf/(w;q^s)_inf = sum_j (a;q^s)_j w^j / (q^s;q^s)_j
///   JacobiZ  sum_{j in Z} q^(s*C(j,2)) w^j
/// with w = arg * z^zdeg.
enum class ZKind { EulerA, EulerB, QBinom, JacobiZ };

struct ZFactor {
    ZKind kind;
    Monomial arg;     // coefficient monomial of one z-power block
    int zdeg = 1;     // z-degree carried by one power of the argument
    Exp step;         // base q^step
    Monomial qbinom_a;  // QBinom only: the Pochhammer numerator argument

    /// Least q-order of the z^(zdeg*j) coefficient.
    std::int64_t growth(std::int64_t j) const;
};

/// A Laurent series in z over an inclusive degree window, with QSeries
/// coefficients. Degrees outside the window are guaranteed to sit above the
/// truncation order.
struct ZSeries {
    int denom = 2;
    int wlo = 0, whi = 0;
    std::map<int, QSeries> coeffs;

    const QSeries* coeff(int zdeg) const;
};

/// Expands one factor. Without an explicit window the degree range is derived
/// from the factor's growth function; a flat growth direction (no q-order
/// increase with |d|) cannot be bounded standalone and raises GradingError —
/// inside constant_term such factors are capped by their partners.
ZSeries z_expand(const Ctx& ctx, const ZFactor& f,
                 std::optional<std::pair<int, int>> window = std::nullopt);

ZSeries z_mul(const ZSeries& a, const ZSeries& b);
ZSeries z_add(const ZSeries& a, const ZSeries& b);

/// Extraction controls for the stability checks: `margin` widens every
/// window additively (default the +1 safety row), `scale` multiplies the
/// widths, `shift` moves the extracted degree (0 picks the constant term).
struct CtOptions {
    int margin = 1;
    int scale = 1;
};

/// [z^0] of the product of the factors, complete through ctx.ncut.
QSeries constant_term(const Ctx& ctx, std::span<const ZFactor> factors,
                      const CtOptions& opts = {});
QSeries constant_term(const Ctx& ctx, std::initializer_list<ZFactor> factors,
                      const CtOptions& opts = {});

} // namespace qrr
