#include "lctchaos/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lctchaos/errors.hpp"

namespace lctchaos {

CoefficientTensor::CoefficientTensor(std::size_t n1, std::size_t n2, std::size_t m, double q)
    : CoefficientTensor(n1, n2, m, q, std::vector<double>(n1 * n2 * m, 0.0))
{
}

CoefficientTensor::CoefficientTensor(std::size_t n1, std::size_t n2, std::size_t m, double q,
                                     std::vector<double> data)
    : n1_(n1), n2_(n2), m_(m), q_(q), data_(std::move(data))
{
    if (n1 == 0 || n2 == 0 || m == 0) throw ConfigError("tensor shape must be positive");
    if (!(q >= 1.0) || !std::isfinite(q)) throw ConfigError("tensor exponent q must be a finite value >= 1");
    if (data_.size() != n1 * n2 * m) throw ConfigError("tensor data size does not match shape");
    if (!std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); })) {
        throw ConfigError("tensor entries must be finite");
    }
}

double CoefficientTensor::q_conjugate() const noexcept
{
    return q_ == 1.0 ? std::numeric_limits<double>::infinity() : q_ / (q_ - 1.0);
}

bool CoefficientTensor::is_zero() const noexcept
{
    return std::all_of(data_.begin(), data_.end(), [](double v) { return v == 0.0; });
}

CoefficientTensor CoefficientTensor::with_q(double q) const { return {n1_, n2_, m_, q, data_}; }

CoefficientTensor CoefficientTensor::scaled(double c) const
{
    auto d = data_;
    for (auto& v : d) v *= c;
    return {n1_, n2_, m_, q_, std::move(d)};
}

Matrix CoefficientTensor::contract_k(std::span<const double> f) const
{
    Matrix out(n1_, n2_);
    for (std::size_t i = 0; i < n1_; ++i)
        for (std::size_t j = 0; j < n2_; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < m_; ++k) s += (*this)(i, j, k) * f[k];
            out(i, j) = s;
        }
    return out;
}

Matrix CoefficientTensor::contract_i(std::span<const double> x) const
{
    Matrix out(n2_, m_);
    for (std::size_t i = 0; i < n1_; ++i) {
        if (x[i] == 0.0) continue;
        for (std::size_t j = 0; j < n2_; ++j)
            for (std::size_t k = 0; k < m_; ++k) out(j, k) += (*this)(i, j, k) * x[i];
    }
    return out;
}

Matrix CoefficientTensor::contract_j(std::span<const double> y) const
{
    Matrix out(n1_, m_);
    for (std::size_t i = 0; i < n1_; ++i)
        for (std::size_t j = 0; j < n2_; ++j) {
            if (y[j] == 0.0) continue;
            for (std::size_t k = 0; k < m_; ++k) out(i, k) += (*this)(i, j, k) * y[j];
        }
    return out;
}

Matrix CoefficientTensor::slice_i(std::size_t i) const
{
    Matrix out(n2_, m_);
    for (std::size_t j = 0; j < n2_; ++j)
        for (std::size_t k = 0; k < m_; ++k) out(j, k) = (*this)(i, j, k);
    return out;
}

CoefficientTensor CoefficientTensor::swapped_ij() const
{
    CoefficientTensor t(n2_, n1_, m_, q_);
    for (std::size_t i = 0; i < n1_; ++i)
        for (std::size_t j = 0; j < n2_; ++j)
            for (std::size_t k = 0; k < m_; ++k) t(j, i, k) = (*this)(i, j, k);
    return t;
}

CoefficientTensor CoefficientTensor::permuted(std::span<const std::size_t> pi,
                                              std::span<const std::size_t> pj,
                                              std::span<const std::size_t> pk) const
{
    if (pi.size() != n1_ || pj.size() != n2_ || pk.size() != m_) {
        throw ConfigError("permutation sizes do not match tensor shape");
    }
    CoefficientTensor t(n1_, n2_, m_, q_);
    for (std::size_t i = 0; i < n1_; ++i)
        for (std::size_t j = 0; j < n2_; ++j)
            for (std::size_t k = 0; k < m_; ++k) t(pi[i], pj[j], pk[k]) = (*this)(i, j, k);
    return t;
}

double lq_norm(std::span<const double> c, double q) noexcept
{
    if (q == 1.0) {
        double s = 0.0;
        for (double v : c) s += std::fabs(v);
        return s;
    }
    if (q == 2.0) return norm2(c);
    const double scale = norm_inf(c);
    if (scale == 0.0) return 0.0;
    double s = 0.0;
    for (double v : c) s += std::pow(std::fabs(v) / scale, q);
    return scale * std::pow(s, 1.0 / q);
}

std::vector<double> lq_dual_alignment(std::span<const double> c, double q)
{
    std::vector<double> f(c.size(), 0.0);
    if (q == 1.0) {
        for (std::size_t k = 0; k < c.size(); ++k) f[k] = c[k] < 0.0 ? -1.0 : 1.0;
        return f;
    }
    const double norm = lq_norm(c, q);
    if (norm == 0.0) return f;
    for (std::size_t k = 0; k < c.size(); ++k) {
        const double mag = std::pow(std::fabs(c[k]) / norm, q - 1.0);
        f[k] = c[k] < 0.0 ? -mag : mag;
    }
    return f;
}

}  // namespace lctchaos
