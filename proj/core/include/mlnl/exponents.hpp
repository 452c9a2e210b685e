#pragma once

#include <string>
#include <vector>

namespace mlnl {

/// Summability/regularity exponent chart for the singular absorption problem
/// with data f in L^m (space-time) or in the mixed class L^r(L^q).  All the
/// formulas are specific to dimension n > 2 (the Sobolev exponent 2n/(n-2)
/// appears throughout), so the evaluator rejects anything else.
///
/// Derived values carry a _valid flag: a formula whose denominator
/// degenerates for the given inputs is reported out of range with an
/// explanatory note instead of an undefined number.
struct ExponentReport {
    // Echoed inputs.
    int n = 0;
    double gamma = 0.0;
    double m = 1.0;
    double r = 1.0;
    double q = 1.0;

    /// Data-integrability threshold below which the natural energy class is
    /// out of reach: m_bar = 2(n+2) / (2(n+2) - n(1-gamma)) for gamma < 1,
    /// clamped to its limit 1 for gamma >= 1.
    double m_bar = 0.0;

    /// Gradient integrability of the solution for data in L^m below the
    /// threshold: q_bar = m(gamma+1)(n+2) / (n+2 - m(1-gamma)).
    double q_bar = 0.0;
    bool q_bar_valid = false;

    /// Solution integrability over the cylinder for the same data class:
    /// sigma_L = m(gamma+1)(n+2) / (n - 2(m-1)).
    double sigma_L = 0.0;
    bool sigma_L_valid = false;

    /// Integrability carried by the energy class alone:
    /// sigma_energy = n(1+gamma)/(n-2).  The gamma >= 1 flag is reported
    /// without interpretation (there the value is automatically >= 2).
    double sigma_energy = 0.0;
    bool sigma_energy_at_least_two = false;

    /// True when (r, q) lies strictly inside the boundedness zone
    /// 1/r + n/(2q) < 1.
    bool aronson_serrin = false;
    /// True when (r, q) lies strictly outside that zone; both flags false
    /// means exactly on the dividing surface.
    bool outside_zone = false;

    /// For (r, q) strictly outside the zone with r, q > 1: which branch of
    /// the summability formula applies, split by the line
    /// 1/r = (n/(n-2))/q - 2/(n-2).  Branch 1 (1/r below the line) uses
    /// q(n-2)(gamma+1)/(2(n-2q)); branch 2 uses
    /// q r n (gamma+1)/(2(nr+2q-2qr)).  0 when not applicable.
    int outside_branch = 0;
    double outside_zone_sigma = 0.0;
    bool outside_zone_sigma_valid = false;

    /// Side condition attached to the outside-zone formulas when gamma < 1:
    /// branch 1 requires q > 2n / (2n - (1-gamma)(n-2)) (the conjugate
    /// exponent of 2*/(1-gamma)); branch 2 requires r > 2/(1+gamma).
    /// Nothing extra is required for gamma >= 1.
    bool side_condition_required = false;
    bool side_condition_holds = true;

    std::vector<std::string> notes;
};

/// Evaluate the whole chart.  Pre: n > 2, gamma > 0, m >= 1, r >= 1, q >= 1.
ExponentReport exponents(int n, double gamma, double m, double r, double q);

/// The three elementary power inequalities the energy estimates lean on,
/// named by shape.  For x, y >= 0:
///
///  difference_product:  (x-y)(x^a - y^a) >= 4a/(a+1)^2 (x^{(a+1)/2} - y^{(a+1)/2})^2,
///                       any a > 0;
///  difference_quotient: (x-y)/(x^a - y^a) <= (1/a)(x^{1-a} + y^{1-a}),
///                       0 < a <= 1, x != y;
///  power_gap:           (x+y)^{a-1} |x-y| <= C_a |x^a - y^a|,
///                       a >= 1, with an empirically calibrated C_a.
enum class AlgebraicInequality { difference_product, difference_quotient, power_gap };

struct InequalitySample {
    double lhs = 0.0;
    double rhs = 0.0;
    /// rhs - lhs for the "<=" shapes, lhs - rhs for the ">=" shape: the
    /// inequality holds when slack >= -tolerance (tiny negative slack is
    /// rounding, not failure).
    double slack = 0.0;
    bool holds = false;
};

/// Evaluate one inequality at one point.  c_alpha is consumed only by
/// power_gap and must be positive there (calibrate it first); the other
/// shapes ignore it.  Precondition violations throw.
InequalitySample algebraic_inequality_oracle(AlgebraicInequality which, double x, double y,
                                             double alpha, double c_alpha = 0.0);

/// Smallest-with-margin constant for the power_gap shape: the ratio
/// R(t) = (1+t)^{a-1}|1-t| / |1-t^a| (one variable scaled to 1 by
/// homogeneity) is probed over a wide logarithmic grid together with its
/// t -> 1 limit 2^{a-1}/a, and the maximum is inflated by 2%.
double calibrate_power_gap_constant(double alpha);

} // namespace mlnl
