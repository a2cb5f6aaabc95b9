#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "lctchaos/matrix.hpp"

namespace lctchaos {

/// Coefficients a_ijk (i < n1, j < n2, k < m) of an l_q^m-valued chaos.
/// Storage is row-major with k fastest.
class CoefficientTensor {
public:
    CoefficientTensor() = default;
    CoefficientTensor(std::size_t n1, std::size_t n2, std::size_t m, double q);
    CoefficientTensor(std::size_t n1, std::size_t n2, std::size_t m, double q, std::vector<double> data);

    std::size_t n1() const noexcept { return n1_; }
    std::size_t n2() const noexcept { return n2_; }
    std::size_t m() const noexcept { return m_; }
    double q() const noexcept { return q_; }
    /// Hoelder conjugate; +inf when q = 1.
    double q_conjugate() const noexcept;

    double& operator()(std::size_t i, std::size_t j, std::size_t k) noexcept
    {
        return data_[(i * n2_ + j) * m_ + k];
    }
    double operator()(std::size_t i, std::size_t j, std::size_t k) const noexcept
    {
        return data_[(i * n2_ + j) * m_ + k];
    }
    const std::vector<double>& data() const noexcept { return data_; }

    bool is_zero() const noexcept;
    CoefficientTensor with_q(double q) const;
    CoefficientTensor scaled(double c) const;

    /// F_ij = sum_k a_ijk f_k (n1 x n2).
    Matrix contract_k(std::span<const double> f) const;
    /// W_jk = sum_i a_ijk x_i (n2 x m).
    Matrix contract_i(std::span<const double> x) const;
    /// V_ik = sum_j a_ijk y_j (n1 x m).
    Matrix contract_j(std::span<const double> y) const;
    /// (a_ijk)_{jk} for fixed i (n2 x m).
    Matrix slice_i(std::size_t i) const;

    /// Exchanges the roles of i and j.
    CoefficientTensor swapped_ij() const;
    /// Relabels indices: result(pi[i], pj[j], pk[k]) = a(i, j, k).
    CoefficientTensor permuted(std::span<const std::size_t> pi, std::span<const std::size_t> pj,
                               std::span<const std::size_t> pk) const;

private:
    std::size_t n1_ = 0, n2_ = 0, m_ = 0;
    double q_ = 2.0;
    std::vector<double> data_;
};

/// ||c||_q for q >= 1.
double lq_norm(std::span<const double> c, double q) noexcept;

/// f in the unit ball of l_{q'} with <f, c> = ||c||_q; for q = 1 the sign vector.
std::vector<double> lq_dual_alignment(std::span<const double> c, double q);

}  // namespace lctchaos
