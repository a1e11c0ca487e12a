#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace modelspec {

/// Piecewise cubic Hermite interpolant through (t_i, y_i, y'_i).
class CubicHermite {
public:
    CubicHermite() = default;
    CubicHermite(std::vector<double> t, std::vector<double> y, std::vector<double> dy)
        : t_(std::move(t)), y_(std::move(y)), dy_(std::move(dy)) {
        if (t_.size() < 2 || y_.size() != t_.size() || dy_.size() != t_.size()) {
            throw std::invalid_argument("CubicHermite: need >= 2 nodes with matching value/derivative arrays");
        }
    }

    [[nodiscard]] double value(double t) const {
        const std::size_t i = segment(t);
        const double h = t_[i + 1] - t_[i];
        const double s = (t - t_[i]) / h;
        const double s2 = s * s, s3 = s2 * s;
        const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
        const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
        return h00 * y_[i] + h10 * h * dy_[i] + h01 * y_[i + 1] + h11 * h * dy_[i + 1];
    }

    [[nodiscard]] double derivative(double t) const {
        const std::size_t i = segment(t);
        const double h = t_[i + 1] - t_[i];
        const double s = (t - t_[i]) / h;
        const double s2 = s * s;
        const double d00 = (6 * s2 - 6 * s) / h, d10 = 3 * s2 - 4 * s + 1;
        const double d01 = (-6 * s2 + 6 * s) / h, d11 = 3 * s2 - 2 * s;
        return d00 * y_[i] + d10 * dy_[i] + d01 * y_[i + 1] + d11 * dy_[i + 1];
    }

    [[nodiscard]] double front() const { return t_.front(); }
    [[nodiscard]] double back() const { return t_.back(); }
    [[nodiscard]] std::span<const double> nodes() const { return t_; }
    [[nodiscard]] std::span<const double> values() const { return y_; }
    [[nodiscard]] std::span<const double> derivatives() const { return dy_; }
    [[nodiscard]] bool empty() const { return t_.empty(); }

private:
    // Index i with t_[i] <= t <= t_[i+1]; clamps to the end segments.
    [[nodiscard]] std::size_t segment(double t) const {
        auto it = std::upper_bound(t_.begin(), t_.end(), t);
        std::size_t i = it == t_.begin() ? 0 : static_cast<std::size_t>(it - t_.begin()) - 1;
        return std::min(i, t_.size() - 2);
    }

    std::vector<double> t_, y_, dy_;
};

} // namespace modelspec
