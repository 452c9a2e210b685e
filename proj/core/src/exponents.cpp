#include "mlnl/exponents.hpp"

#include <cmath>
#include <stdexcept>

namespace mlnl {

namespace {

constexpr double ineq_tol = 1e-12;

void require(bool ok, const char* what)
{
    if (!ok)
        throw std::invalid_argument(what);
}

} // namespace

ExponentReport exponents(int n, double gamma, double m, double r, double q)
{
    require(n > 2, "exponents: the chart needs n > 2 (the embedding exponent 2n/(n-2) "
                   "degenerates otherwise)");
    require(gamma > 0.0 && std::isfinite(gamma), "exponents: gamma must be positive");
    require(m >= 1.0 && std::isfinite(m), "exponents: m must be >= 1");
    require(r >= 1.0 && std::isfinite(r), "exponents: r must be >= 1");
    require(q >= 1.0 && std::isfinite(q), "exponents: q must be >= 1");

    ExponentReport rep;
    rep.n = n;
    rep.gamma = gamma;
    rep.m = m;
    rep.r = r;
    rep.q = q;

    const double nn = n;

    if (gamma >= 1.0) {
        rep.m_bar = 1.0;
        if (gamma > 1.0)
            rep.notes.push_back("m_bar clamped to 1: no relaxation threshold for gamma >= 1");
    } else {
        rep.m_bar = 2.0 * (nn + 2.0) / (2.0 * (nn + 2.0) - nn * (1.0 - gamma));
    }

    {
        const double den = nn + 2.0 - m * (1.0 - gamma);
        if (den > 0.0) {
            rep.q_bar = m * (gamma + 1.0) * (nn + 2.0) / den;
            rep.q_bar_valid = true;
        } else {
            rep.notes.push_back("q_bar formula out of range: n + 2 - m(1 - gamma) <= 0");
        }
    }

    {
        const double den = nn - 2.0 * (m - 1.0);
        if (den > 0.0) {
            rep.sigma_L = m * (gamma + 1.0) * (nn + 2.0) / den;
            rep.sigma_L_valid = true;
        } else {
            rep.notes.push_back("sigma_L formula out of range: n - 2(m - 1) <= 0");
        }
    }

    rep.sigma_energy = nn * (1.0 + gamma) / (nn - 2.0);
    rep.sigma_energy_at_least_two = gamma >= 1.0;

    const double zone = 1.0 / r + nn / (2.0 * q);
    rep.aronson_serrin = zone < 1.0;
    rep.outside_zone = zone > 1.0;
    if (!rep.aronson_serrin && !rep.outside_zone)
        rep.notes.push_back("(r, q) sits exactly on the dividing surface 1/r + n/(2q) = 1");

    if (rep.outside_zone) {
        if (r <= 1.0 || q <= 1.0) {
            rep.notes.push_back("outside-zone summability formulas need r > 1 and q > 1");
        } else {
            const double line = nn / ((nn - 2.0) * q) - 2.0 / (nn - 2.0);
            rep.outside_branch = 1.0 / r < line ? 1 : 2;
            if (rep.outside_branch == 1) {
                const double den = 2.0 * (nn - 2.0 * q);
                // 1/r < n/((n-2)q) - 2/(n-2) with 1/r > 0 forces q < n/2,
                // so the branch-1 denominator cannot degenerate; guarded
                // anyway so a rounding-edge input cannot divide by zero.
                if (den > 0.0) {
                    rep.outside_zone_sigma = q * (nn - 2.0) * (gamma + 1.0) / den;
                    rep.outside_zone_sigma_valid = true;
                } else {
                    rep.notes.push_back("outside-zone sigma formula out of range: n - 2q <= 0");
                }
            } else {
                const double den = 2.0 * (nn * r + 2.0 * q - 2.0 * q * r);
                // = 4qr (n/(2q) + 1/r - 1) > 0 strictly outside the zone.
                if (den > 0.0) {
                    rep.outside_zone_sigma = q * r * nn * (gamma + 1.0) / den;
                    rep.outside_zone_sigma_valid = true;
                } else {
                    rep.notes.push_back(
                        "outside-zone sigma formula out of range: nr + 2q - 2qr <= 0");
                }
            }

            if (gamma < 1.0) {
                rep.side_condition_required = true;
                if (rep.outside_branch == 1) {
                    const double threshold = 2.0 * nn / (2.0 * nn - (1.0 - gamma) * (nn - 2.0));
                    rep.side_condition_holds = q > threshold;
                } else {
                    rep.side_condition_holds = r > 2.0 / (1.0 + gamma);
                }
                if (!rep.side_condition_holds)
                    rep.notes.push_back("side condition for gamma < 1 fails on this branch");
            }
        }
    }

    return rep;
}

InequalitySample algebraic_inequality_oracle(AlgebraicInequality which, double x, double y,
                                             double alpha, double c_alpha)
{
    require(x >= 0.0 && y >= 0.0 && std::isfinite(x) && std::isfinite(y),
            "algebraic_inequality_oracle: x and y must be finite and nonnegative");

    InequalitySample out;
    switch (which) {
    case AlgebraicInequality::difference_product: {
        require(alpha > 0.0 && std::isfinite(alpha),
                "difference_product needs alpha > 0");
        out.lhs = (x - y) * (std::pow(x, alpha) - std::pow(y, alpha));
        const double half = 0.5 * (alpha + 1.0);
        const double gap = std::pow(x, half) - std::pow(y, half);
        out.rhs = 4.0 * alpha / ((alpha + 1.0) * (alpha + 1.0)) * gap * gap;
        out.slack = out.lhs - out.rhs; // ">=" shape
        break;
    }
    case AlgebraicInequality::difference_quotient: {
        require(alpha > 0.0 && alpha <= 1.0, "difference_quotient needs 0 < alpha <= 1");
        require(x != y, "difference_quotient needs x != y");
        out.lhs = (x - y) / (std::pow(x, alpha) - std::pow(y, alpha));
        out.rhs = (std::pow(x, 1.0 - alpha) + std::pow(y, 1.0 - alpha)) / alpha;
        out.slack = out.rhs - out.lhs; // "<=" shape
        break;
    }
    case AlgebraicInequality::power_gap: {
        require(alpha >= 1.0 && std::isfinite(alpha), "power_gap needs alpha >= 1");
        require(c_alpha > 0.0, "power_gap needs a calibrated positive c_alpha");
        out.lhs = std::pow(x + y, alpha - 1.0) * std::abs(x - y);
        out.rhs = c_alpha * std::abs(std::pow(x, alpha) - std::pow(y, alpha));
        out.slack = out.rhs - out.lhs; // "<=" shape
        break;
    }
    }

    const double scale = std::max({1.0, std::abs(out.lhs), std::abs(out.rhs)});
    out.holds = out.slack >= -ineq_tol * scale;
    return out;
}

double calibrate_power_gap_constant(double alpha)
{
    require(alpha >= 1.0 && std::isfinite(alpha),
            "calibrate_power_gap_constant: alpha must be >= 1");

    // By homogeneity y scales to 1; the ratio to bound is
    //   R(t) = (1+t)^{alpha-1} |1-t| / |1 - t^alpha|,  t >= 0, t != 1,
    // which tends to 1 at both ends and to 2^{alpha-1}/alpha at t = 1.  Its
    // logarithmic derivative is O(alpha), so a grid with ~0.003 log spacing
    // resolves the maximum to well under the 2% margin added at the end.
    double peak = std::pow(2.0, alpha - 1.0) / alpha; // the t -> 1 limit
    const int samples = 4001;
    const double lo = std::log(1e-6), hi = std::log(1e6);
    for (int i = 0; i < samples; ++i) {
        const double t = std::exp(lo + (hi - lo) * i / (samples - 1));
        const double den = std::abs(1.0 - std::pow(t, alpha));
        if (den < 1e-12)
            continue; // the removable point; its limit is already included
        const double ratio = std::pow(1.0 + t, alpha - 1.0) * std::abs(1.0 - t) / den;
        peak = std::max(peak, ratio);
    }
    return 1.02 * peak;
}

} // namespace mlnl
