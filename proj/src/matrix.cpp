#include "lctchaos/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace lctchaos {

void Matrix::apply(std::span<const double> x, std::span<double> y) const noexcept
{
    for (std::size_t i = 0; i < rows_; ++i) y[i] = dot(row(i), x);
}

void Matrix::apply_transpose(std::span<const double> x, std::span<double> y) const noexcept
{
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        const double xi = x[i];
        if (xi == 0.0) continue;
        const double* r = data_.data() + i * cols_;
        for (std::size_t j = 0; j < cols_; ++j) y[j] += xi * r[j];
    }
}

bool Matrix::is_zero() const noexcept
{
    return std::all_of(data_.begin(), data_.end(), [](double v) { return v == 0.0; });
}

Matrix Matrix::transposed() const
{
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

double dot(std::span<const double> a, std::span<const double> b) noexcept
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) noexcept { return std::sqrt(dot(a, a)); }

double norm_inf(std::span<const double> a) noexcept
{
    double m = 0.0;
    for (double v : a) m = std::max(m, std::fabs(v));
    return m;
}

}  // namespace lctchaos
