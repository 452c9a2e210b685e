#include "mlnl/kernel_weights.hpp"

#include "mlnl/gauss_legendre.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mlnl {

namespace {

// Per-axis quadrature points for a box split into `nsub` equal pieces with a
// fixed 12-point Gauss-Legendre rule on each piece.
struct AxisRule {
    std::vector<double> x;
    std::vector<double> w;
};

AxisRule axis_rule(double lo, double hi, int nsub, const GaussLegendre& gl) {
    AxisRule r;
    const double step = (hi - lo) / nsub;
    for (int p = 0; p < nsub; ++p) {
        const double a = lo + p * step;
        const double mid = a + 0.5 * step;
        for (std::size_t g = 0; g < gl.nodes.size(); ++g) {
            r.x.push_back(mid + 0.5 * step * gl.nodes[g]);
            r.w.push_back(0.5 * step * gl.weights[g]);
        }
    }
    return r;
}

template <typename F>
double tensor_box(int dim, const std::array<double, 3>& lo, const std::array<double, 3>& hi,
                  int nsub, const GaussLegendre& gl, F&& f) {
    std::array<AxisRule, 3> ax;
    for (int d = 0; d < dim; ++d)
        ax[d] = axis_rule(lo[d], hi[d], nsub, gl);
    double sum = 0.0;
    std::array<double, 3> z{0.0, 0.0, 0.0};
    if (dim == 1) {
        for (std::size_t i = 0; i < ax[0].x.size(); ++i) {
            z[0] = ax[0].x[i];
            sum += ax[0].w[i] * f(z);
        }
    } else if (dim == 2) {
        for (std::size_t i = 0; i < ax[0].x.size(); ++i) {
            z[0] = ax[0].x[i];
            double inner = 0.0;
            for (std::size_t j = 0; j < ax[1].x.size(); ++j) {
                z[1] = ax[1].x[j];
                inner += ax[1].w[j] * f(z);
            }
            sum += ax[0].w[i] * inner;
        }
    } else {
        for (std::size_t i = 0; i < ax[0].x.size(); ++i) {
            z[0] = ax[0].x[i];
            double plane = 0.0;
            for (std::size_t j = 0; j < ax[1].x.size(); ++j) {
                z[1] = ax[1].x[j];
                double inner = 0.0;
                for (std::size_t k = 0; k < ax[2].x.size(); ++k) {
                    z[2] = ax[2].x[k];
                    inner += ax[2].w[k] * f(z);
                }
                plane += ax[1].w[j] * inner;
            }
            sum += ax[0].w[i] * plane;
        }
    }
    return sum;
}

// Breakpoints of [lo,hi] graded dyadically away from the interior point c with
// smallest piece ~ scale (used for face integrals peaked near the foot point).
std::vector<double> graded_partition(double lo, double hi, double c, double scale) {
    assert(lo < hi && c > lo && c < hi && scale > 0.0);
    std::vector<double> pts;
    pts.push_back(c);
    double step = scale;
    while (pts.back() < hi) {
        pts.push_back(std::min(hi, pts.back() + step));
        step *= 2.0;
    }
    std::vector<double> left;
    left.push_back(c);
    step = scale;
    while (left.back() > lo) {
        left.push_back(std::max(lo, left.back() - step));
        step *= 2.0;
    }
    std::vector<double> all(left.rbegin(), left.rend());
    all.insert(all.end(), pts.begin() + 1, pts.end());
    return all;
}

} // namespace

KernelWeights::KernelWeights(const Grid& grid, double s, KernelWeightOptions opt)
    : grid_(grid), s_(s), q_(opt.q) {
    if (!(s > 0.0) || !(s < 1.0))
        throw std::invalid_argument("KernelWeights: s must lie in (0,1), got " + std::to_string(s));
    if (!(q_ > 0.0))
        throw std::invalid_argument("KernelWeights: kernel power q must be positive");
    beta_ = grid_.dim + q_ * s_;
    scale_ = std::pow(grid_.spacing, grid_.dim - beta_);
    correction_on_ = opt.curvature_correction;
    if (correction_on_ && !(q_ * s_ < 2.0))
        throw std::invalid_argument(
            "KernelWeights: curvature correction requires qs < 2 (second moment finite)");

    const GaussLegendre gl = gauss_legendre(12);
    const int dim = grid_.dim;
    const int m = grid_.nodes_per_axis(); // offset magnitudes range 0 .. m-1 per axis
    const double beta = beta_;
    const auto kernel = [beta](const std::array<double, 3>& z) {
        const double r2 = z[0] * z[0] + z[1] * z[1] + z[2] * z[2];
        return std::pow(r2, -0.5 * beta);
    };

    // --- pair-weight table over canonical offsets (sorted absolute parts) ---
    const auto cell_integral = [&](int a, int b, int c) {
        const std::array<int, 3> off{a, b, c};
        int linf = 0;
        for (int d = 0; d < 3; ++d)
            linf = std::max(linf, off[d]);
        if (linf == 0)
            return 0.0; // principal-value cell: the symmetrized pair rule drops it
        const int nsub = linf == 1 ? 4 : (linf == 2 ? 2 : 1);
        std::array<double, 3> lo{0.0, 0.0, 0.0}, hi{0.0, 0.0, 0.0};
        // the canonical offset stores components ascending in the last `dim` slots
        for (int d = 0; d < dim; ++d) {
            lo[d] = off[3 - dim + d] - 0.5;
            hi[d] = off[3 - dim + d] + 0.5;
        }
        return tensor_box(dim, lo, hi, nsub, gl, kernel);
    };

    if (dim == 1) {
        table_.resize(static_cast<std::size_t>(m));
        for (int c = 0; c < m; ++c)
            table_[static_cast<std::size_t>(c)] = cell_integral(0, 0, c);
    } else if (dim == 2) {
        table_.resize(static_cast<std::size_t>(m * (m + 1) / 2));
        for (int c = 0; c < m; ++c)
            for (int b = 0; b <= c; ++b)
                table_[static_cast<std::size_t>(c * (c + 1) / 2 + b)] = cell_integral(0, b, c);
    } else {
        table_.resize(static_cast<std::size_t>(m * (m + 1) * (m + 2) / 6));
        for (int c = 0; c < m; ++c)
            for (int b = 0; b <= c; ++b)
                for (int a = 0; a <= b; ++a)
                    table_[static_cast<std::size_t>(c * (c + 1) * (c + 2) / 6 + b * (b + 1) / 2 +
                                                    a)] = cell_integral(a, b, c);
    }

    // --- curvature correction constant -------------------------------------
    if (correction_on_) {
        // E = Integral over [-1,1]^n \ [-1/2,1/2]^n of w_1^2 |w|^{-beta},
        // assembled from the 2^n sign octants of the positive box shell.
        const auto moment = [beta](const std::array<double, 3>& z) {
            const double r2 = z[0] * z[0] + z[1] * z[1] + z[2] * z[2];
            return z[0] * z[0] * std::pow(r2, -0.5 * beta);
        };
        double shell = 0.0;
        for (int mask = 1; mask < (1 << dim); ++mask) {
            std::array<double, 3> lo{0.0, 0.0, 0.0}, hi{0.0, 0.0, 0.0};
            for (int d = 0; d < dim; ++d) {
                lo[d] = (mask >> d & 1) ? 0.5 : 0.0;
                hi[d] = (mask >> d & 1) ? 1.0 : 0.5;
            }
            shell += tensor_box(dim, lo, hi, 2, gl, moment);
        }
        shell *= std::pow(2.0, dim);
        const double decay = dim + 2.0 - beta; // > 0 since qs < 2
        const double m2_unit = shell / (1.0 - std::pow(2.0, -decay));
        const double m2_near = std::pow(2.5, decay) * m2_unit; // box half-width 5/2

        double lattice = 0.0;
        std::array<int, 3> d{0, 0, 0};
        const int r = 2; // m >= 3 for any legal grid, so |D|inf <= 2 is in range
        for (d[0] = -r; d[0] <= r; ++d[0])
            for (d[1] = dim > 1 ? -r : 0; d[1] <= (dim > 1 ? r : 0); ++d[1])
                for (d[2] = dim > 2 ? -r : 0; d[2] <= (dim > 2 ? r : 0); ++d[2]) {
                    if (d[0] == 0 && d[1] == 0 && d[2] == 0)
                        continue;
                    std::array<int, 3> off{0, 0, 0};
                    for (int t = 0; t < dim; ++t)
                        off[t] = d[t];
                    lattice += canonical_weight(off) * d[0] * d[0];
                }
        const double c_hat = m2_near - lattice;
        alpha_ = 0.5 * scale_ * c_hat;

        std::array<int, 3> unit{1, 0, 0};
        if (!(scale_ * canonical_weight(unit) + alpha_ > 0.0))
            throw std::logic_error("KernelWeights: correction would flip a pair weight sign");
    }

    // --- exterior tails per node, cached by canonical position --------------
    const int npa = grid_.nodes_per_axis();
    tail_.resize(static_cast<std::size_t>(grid_.node_count()));
    std::map<std::array<int, 3>, double> cache;
    for (std::int64_t node = 0; node < grid_.node_count(); ++node) {
        const std::array<int, 3> idx = grid_.unflatten(node);
        std::array<int, 3> key{0, 0, 0};
        for (int d = 0; d < dim; ++d)
            key[d] = std::min(idx[d], npa + 1 - idx[d]); // reflection i -> N - i
        std::sort(key.begin(), key.begin() + dim);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, tail_integral(key)).first;
        double t = it->second;
        if (correction_on_)
            t += alpha_ * missing_unit_neighbors(idx);
        tail_[static_cast<std::size_t>(node)] = t;
    }
}

double KernelWeights::canonical_weight(std::array<int, 3> offset) const {
    for (int d = 0; d < 3; ++d)
        offset[d] = std::abs(offset[d]);
    std::sort(offset.begin(), offset.end());
    const int a = offset[0], b = offset[1], c = offset[2];
    const int m = grid_.nodes_per_axis();
    if (c >= m)
        throw std::out_of_range("KernelWeights: offset exceeds the interior node range");
    if (c == 0)
        return 0.0;
    switch (grid_.dim) {
    case 1:
        assert(a == 0 && b == 0);
        return table_[static_cast<std::size_t>(c)];
    case 2:
        assert(a == 0);
        return table_[static_cast<std::size_t>(c * (c + 1) / 2 + b)];
    default:
        return table_[static_cast<std::size_t>(c * (c + 1) * (c + 2) / 6 + b * (b + 1) / 2 + a)];
    }
}

double KernelWeights::pair_weight(const std::array<int, 3>& offset) const {
    std::array<int, 3> abs_off{std::abs(offset[0]), std::abs(offset[1]), std::abs(offset[2])};
    const double base = scale_ * canonical_weight(abs_off);
    if (!correction_on_)
        return base;
    std::sort(abs_off.begin(), abs_off.end());
    const bool unit = abs_off[0] == 0 && abs_off[1] == 0 && abs_off[2] == 1;
    return unit ? base + alpha_ : base;
}

double KernelWeights::exterior_tail(std::int64_t node) const {
    return tail_.at(static_cast<std::size_t>(node));
}

double KernelWeights::row_mass(std::int64_t node) const {
    const std::array<int, 3> idx = grid_.unflatten(node);
    const int npa = grid_.nodes_per_axis();
    double sum = exterior_tail(node);
    std::array<int, 3> j{0, 0, 0};
    const int dim = grid_.dim;
    const auto sweep = [&](auto&& self, int d) -> void {
        if (d == dim) {
            std::array<int, 3> off{0, 0, 0};
            bool same = true;
            for (int t = 0; t < dim; ++t) {
                off[t] = j[t] - idx[t];
                same = same && off[t] == 0;
            }
            if (!same)
                sum += pair_weight(off);
            return;
        }
        for (j[d] = 1; j[d] <= npa; ++j[d])
            self(self, d + 1);
    };
    sweep(sweep, 0);
    return sum;
}

double KernelWeights::tail_integral(const std::array<int, 3>& index) const {
    const int dim = grid_.dim;
    const double h = grid_.spacing;
    const double npa = static_cast<double>(grid_.nodes_per_axis());
    const double beta = beta_;
    static const GaussLegendre gl = gauss_legendre(12);

    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int d = 0; d < dim; ++d)
        x[d] = index[d] * h;
    const double lo = 0.5 * h;
    const double hi = (npa + 0.5) * h; // box P = [h/2, 1-h/2]^n

    double kappa = 0.0;
    for (int d = 0; d < dim; ++d) {
        for (int side = 0; side < 2; ++side) {
            const double dist = side == 0 ? x[d] - lo : hi - x[d];
            assert(dist > 0.0);
            double face = 0.0;
            if (dim == 1) {
                face = std::pow(dist, -beta);
            } else if (dim == 2) {
                const int e = 1 - d;
                const auto seg = [&](double lo_t, double hi_t) {
                    const std::array<double, 3> a{lo_t, 0.0, 0.0}, b{hi_t, 0.0, 0.0};
                    return tensor_box(1, a, b, 1, gl, [&](const std::array<double, 3>& t) {
                        const double u = t[0] - x[e];
                        return std::pow(u * u + dist * dist, -0.5 * beta);
                    });
                };
                const std::vector<double> pts = graded_partition(lo, hi, x[e], dist);
                for (std::size_t p = 0; p + 1 < pts.size(); ++p)
                    face += seg(pts[p], pts[p + 1]);
            } else {
                const int e1 = d == 0 ? 1 : 0;
                const int e2 = d == 2 ? 1 : 2;
                const std::vector<double> p1 = graded_partition(lo, hi, x[e1], dist);
                const std::vector<double> p2 = graded_partition(lo, hi, x[e2], dist);
                for (std::size_t i = 0; i + 1 < p1.size(); ++i)
                    for (std::size_t j = 0; j + 1 < p2.size(); ++j) {
                        const std::array<double, 3> a{p1[i], p2[j], 0.0}, b{p1[i + 1], p2[j + 1],
                                                                            0.0};
                        face += tensor_box(2, a, b, 1, gl, [&](const std::array<double, 3>& t) {
                            const double u1 = t[0] - x[e1];
                            const double u2 = t[1] - x[e2];
                            return std::pow(u1 * u1 + u2 * u2 + dist * dist, -0.5 * beta);
                        });
                    }
            }
            kappa += dist * face;
        }
    }
    return kappa / (beta - dim);
}

int KernelWeights::missing_unit_neighbors(const std::array<int, 3>& index) const {
    const int npa = grid_.nodes_per_axis();
    int count = 0;
    for (int d = 0; d < grid_.dim; ++d) {
        if (index[d] == 1)
            ++count;
        if (index[d] == npa)
            ++count;
    }
    return count;
}

} // namespace mlnl
