#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace zladder {

// Natural cubic spline through (x_i, y_i), x strictly increasing.
class CubicSpline {
  public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)) {
        const std::size_t n = x_.size();
        if (n < 3 || y_.size() != n)
            throw std::invalid_argument("CubicSpline: need >= 3 matched points");
        std::vector<double> h(n - 1), alpha(n), l(n), mu(n), zz(n);
        for (std::size_t i = 0; i + 1 < n; ++i) h[i] = x_[i + 1] - x_[i];
        for (std::size_t i = 1; i + 1 < n; ++i)
            alpha[i] = 3.0 * ((y_[i + 1] - y_[i]) / h[i] -
                              (y_[i] - y_[i - 1]) / h[i - 1]);
        l[0] = 1.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            l[i] = 2.0 * (x_[i + 1] - x_[i - 1]) - h[i - 1] * mu[i - 1];
            mu[i] = h[i] / l[i];
            zz[i] = (alpha[i] - h[i - 1] * zz[i - 1]) / l[i];
        }
        c_.assign(n, 0.0);
        b_.assign(n - 1, 0.0);
        d_.assign(n - 1, 0.0);
        for (std::size_t j = n - 1; j-- > 0;) {
            c_[j] = zz[j] - mu[j] * c_[j + 1];
            b_[j] = (y_[j + 1] - y_[j]) / h[j] - h[j] * (c_[j + 1] + 2.0 * c_[j]) / 3.0;
            d_[j] = (c_[j + 1] - c_[j]) / (3.0 * h[j]);
        }
    }

    double operator()(double x) const {
        const std::size_t j = segment(x);
        const double dx = x - x_[j];
        return y_[j] + dx * (b_[j] + dx * (c_[j] + dx * d_[j]));
    }

    double derivative(double x) const {
        const std::size_t j = segment(x);
        const double dx = x - x_[j];
        return b_[j] + dx * (2.0 * c_[j] + 3.0 * dx * d_[j]);
    }

    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }

  private:
    std::size_t segment(double x) const {
        if (!(x >= x_.front() && x <= x_.back()))
            throw std::out_of_range("CubicSpline: query outside knot range");
        std::size_t lo = 0, hi = x_.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            (x_[mid] <= x ? lo : hi) = mid;
        }
        return lo;
    }

    std::vector<double> x_, y_, b_, c_, d_;
};

}  // namespace zladder
