#pragma once

#include "mlnl/field.hpp"
#include "mlnl/grid.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace mlnl {

/// Exponent field gamma(x, t) for the singular right-hand side f / u^gamma.
/// Either a single constant or per-(node, step) samples; every sample must be
/// strictly positive.  The extreme values inf gamma and sup gamma drive the
/// variable-exponent hypotheses checked by validate_gamma_profile.
class GammaField {
public:
    static GammaField constant(double value);

    /// One field per time step (step-major); all steps must share a size.
    static GammaField from_samples(std::vector<Field> per_step);

    double at(std::int64_t node, int step) const;
    double lower() const { return lower_; }
    double upper() const { return upper_; }
    bool is_constant() const { return constant_; }

    /// Largest addressable step index (0 for constant fields).
    int max_step() const;

private:
    GammaField() = default;
    bool constant_ = true;
    double value_ = 1.0;
    std::vector<Field> samples_;
    double lower_ = 0.0;
    double upper_ = 0.0;
};

/// Problem data: forcing f on the space-time cylinder and initial state u0,
/// each given either analytically or as gridded samples.  `declared_class` is
/// a user-asserted label of the Lebesgue/Bochner class the data is claimed to
/// live in; it is metadata only -- the norms module measures what is actually
/// on the grid.
struct SourceData {
    std::function<double(const std::array<double, 3>&, double)> forcing;
    std::vector<Field> forcing_samples; // [step][node]; used when non-empty
    std::function<double(const std::array<double, 3>&)> initial;
    Field initial_samples; // used when non-empty
    std::string declared_class;
};

/// Samples u0 on the grid's interior nodes; throws if any sample is negative.
Field sample_initial(const SourceData& data, const Grid& grid);

/// Samples f(., time) on the grid's interior nodes for the given step; throws
/// if any sample is negative.
Field sample_forcing(const SourceData& data, const Grid& grid, int step, double time);

/// Clamp to [-k, k].
double truncate(double sigma, double k);

/// Truncated-and-regularized right-hand side T_k(f) * (u + 1/k)^{-gamma} at
/// one time step.  u must be componentwise nonnegative: a negative entry means
/// a positivity invariant was broken upstream, reported as std::logic_error.
Field regularized_rhs(const Field& f, const Field& u, const GammaField& gamma, int step, int k);

/// Hypothesis checked by validate_gamma_profile on a parabolic boundary strip.
enum class GammaCondition {
    unit_bound, // every strip sample <= 1
    sup_bound,  // sup over strip samples < threshold
};

struct GammaValidation {
    bool passed = true;
    double worst_value = 0.0;    // largest gamma sample on the strip
    std::int64_t worst_node = -1; // its location (-1 when the strip is empty)
    int worst_step = -1;
    double threshold = 0.0; // the bound the worst value was compared against
};

GammaValidation validate_gamma_profile(const GammaField& gamma, const StripMask& strip,
                                       GammaCondition mode, double threshold = 1.0);

} // namespace mlnl
