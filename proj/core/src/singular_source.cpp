#include "mlnl/singular_source.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mlnl {

GammaField GammaField::constant(double value) {
    if (!(value > 0.0))
        throw std::invalid_argument("GammaField: exponent must be strictly positive");
    GammaField g;
    g.constant_ = true;
    g.value_ = value;
    g.lower_ = value;
    g.upper_ = value;
    return g;
}

GammaField GammaField::from_samples(std::vector<Field> per_step) {
    if (per_step.empty() || per_step.front().empty())
        throw std::invalid_argument("GammaField: no samples");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    const std::size_t size = per_step.front().size();
    for (const Field& f : per_step) {
        if (f.size() != size)
            throw std::invalid_argument("GammaField: steps differ in size");
        for (double v : f) {
            if (!(v > 0.0))
                throw std::invalid_argument("GammaField: exponent samples must be positive");
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    GammaField g;
    g.constant_ = false;
    g.samples_ = std::move(per_step);
    g.lower_ = lo;
    g.upper_ = hi;
    return g;
}

double GammaField::at(std::int64_t node, int step) const {
    if (constant_)
        return value_;
    if (step < 0 || step >= static_cast<int>(samples_.size()))
        throw std::out_of_range("GammaField: step out of range");
    const Field& f = samples_[static_cast<std::size_t>(step)];
    if (node < 0 || node >= static_cast<std::int64_t>(f.size()))
        throw std::out_of_range("GammaField: node out of range");
    return f[static_cast<std::size_t>(node)];
}

int GammaField::max_step() const {
    return constant_ ? 0 : static_cast<int>(samples_.size()) - 1;
}

Field sample_initial(const SourceData& data, const Grid& grid) {
    const std::int64_t m = grid.node_count();
    Field out(static_cast<std::size_t>(m));
    if (!data.initial_samples.empty()) {
        if (data.initial_samples.size() != out.size())
            throw std::invalid_argument("sample_initial: gridded data has wrong size");
        out = data.initial_samples;
    } else if (data.initial) {
        for (std::int64_t i = 0; i < m; ++i)
            out[static_cast<std::size_t>(i)] = data.initial(grid.coordinates(i));
    } else {
        throw std::invalid_argument("sample_initial: no initial data provided");
    }
    for (std::size_t i = 0; i < out.size(); ++i)
        if (!(out[i] >= 0.0))
            throw std::invalid_argument("sample_initial: negative value at node " +
                                        std::to_string(i));
    return out;
}

Field sample_forcing(const SourceData& data, const Grid& grid, int step, double time) {
    const std::int64_t m = grid.node_count();
    Field out(static_cast<std::size_t>(m));
    if (!data.forcing_samples.empty()) {
        if (step < 0 || step >= static_cast<int>(data.forcing_samples.size()))
            throw std::invalid_argument("sample_forcing: step outside gridded data");
        const Field& f = data.forcing_samples[static_cast<std::size_t>(step)];
        if (f.size() != out.size())
            throw std::invalid_argument("sample_forcing: gridded data has wrong size");
        out = f;
    } else if (data.forcing) {
        for (std::int64_t i = 0; i < m; ++i)
            out[static_cast<std::size_t>(i)] = data.forcing(grid.coordinates(i), time);
    } else {
        throw std::invalid_argument("sample_forcing: no forcing provided");
    }
    for (std::size_t i = 0; i < out.size(); ++i)
        if (!(out[i] >= 0.0))
            throw std::invalid_argument("sample_forcing: negative value at node " +
                                        std::to_string(i) + ", step " + std::to_string(step));
    return out;
}

double truncate(double sigma, double k) {
    if (!(k > 0.0))
        throw std::invalid_argument("truncate: level must be positive");
    return std::max(-k, std::min(k, sigma));
}

Field regularized_rhs(const Field& f, const Field& u, const GammaField& gamma, int step, int k) {
    if (f.size() != u.size())
        throw std::invalid_argument("regularized_rhs: field sizes differ");
    if (k < 1)
        throw std::invalid_argument("regularized_rhs: level must be >= 1");
    const double a = 1.0 / static_cast<double>(k);
    Field out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!(u[i] >= 0.0))
            throw std::logic_error("regularized_rhs: negative state at node " +
                                   std::to_string(i) + " (positivity invariant broken)");
        const double g = gamma.at(static_cast<std::int64_t>(i), step);
        out[i] = truncate(f[i], static_cast<double>(k)) * std::pow(u[i] + a, -g);
    }
    return out;
}

GammaValidation validate_gamma_profile(const GammaField& gamma, const StripMask& strip,
                                       GammaCondition mode, double threshold) {
    GammaValidation report;
    report.threshold = (mode == GammaCondition::unit_bound) ? 1.0 : threshold;
    const std::int64_t nodes =
        static_cast<std::int64_t>(strip.node_boundary_distance.size());
    if (!gamma.is_constant() && gamma.max_step() < strip.steps)
        throw std::invalid_argument(
            "validate_gamma_profile: exponent field covers fewer steps than the strip");
    double worst = -std::numeric_limits<double>::infinity();
    for (int m = 0; m <= strip.steps; ++m) {
        for (std::int64_t i = 0; i < nodes; ++i) {
            if (!strip.contains(i, m))
                continue;
            const double v = gamma.at(i, m);
            if (v > worst) {
                worst = v;
                report.worst_node = i;
                report.worst_step = m;
            }
        }
    }
    if (report.worst_node < 0) { // empty strip: nothing to violate
        report.passed = true;
        report.worst_value = 0.0;
        return report;
    }
    report.worst_value = worst;
    report.passed = (mode == GammaCondition::unit_bound) ? (worst <= 1.0) : (worst < threshold);
    return report;
}

} // namespace mlnl
