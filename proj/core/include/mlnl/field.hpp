#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace mlnl {

/// A scalar field sampled on the interior nodes of a Grid, in flat node order.
using Field = std::vector<double>;

inline double max_abs(const Field& u) {
    double m = 0.0;
    for (double v : u) m = std::max(m, std::abs(v));
    return m;
}

inline double min_value(const Field& u) {
    double m = u.empty() ? 0.0 : u.front();
    for (double v : u) m = std::min(m, v);
    return m;
}

inline double max_value(const Field& u) {
    double m = u.empty() ? 0.0 : u.front();
    for (double v : u) m = std::max(m, v);
    return m;
}

/// Largest componentwise excess of a over b, i.e. max_i (a_i - b_i).
/// Negative when a <= b everywhere.
inline double max_excess(const Field& a, const Field& b) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, a[i] - b[i]);
    return m;
}

inline double dot(const Field& a, const Field& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

}  // namespace mlnl
