#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lctchaos/errors.hpp"

namespace lctchaos {

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill)
    {
    }
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
        : rows_(rows), cols_(cols), data_(std::move(data))
    {
        if (data_.size() != rows_ * cols_) throw ConfigError("matrix data size does not match shape");
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const noexcept
    {
        return {data_.data() + i * cols_, cols_};
    }
    const std::vector<double>& data() const noexcept { return data_; }

    /// y = M x
    void apply(std::span<const double> x, std::span<double> y) const noexcept;
    /// y = M^T x
    void apply_transpose(std::span<const double> x, std::span<double> y) const noexcept;

    bool is_zero() const noexcept;
    Matrix transposed() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

double dot(std::span<const double> a, std::span<const double> b) noexcept;
double norm2(std::span<const double> a) noexcept;
double norm_inf(std::span<const double> a) noexcept;

}  // namespace lctchaos
