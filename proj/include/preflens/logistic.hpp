#pragma once
// Bayesian logistic regression posterior: Bernoulli likelihood over comparison
// features (no intercept) with an elementwise Laplace(0, b) prior.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "preflens/features.hpp"
#include "preflens/properties.hpp"

namespace preflens {

inline double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(sigmoid(z)) without overflow for large |z|.
inline double log_sigmoid(double z) {
  if (z >= 0.0) return -std::log1p(std::exp(-z));
  return z - std::log1p(std::exp(z));
}

// P(label = A | phi, alpha) = sigmoid(sum_i alpha_i phi_i); no intercept, so
// predict(alpha, -phi) = 1 - predict(alpha, phi) holds exactly.
inline double predict(const std::array<double, kNumProperties>& alpha,
                      const ComparisonFeature& phi) {
  double z = 0.0;
  for (std::size_t i = 0; i < kNumProperties; ++i) z += alpha[i] * phi.phi[i];
  return sigmoid(z);
}

// Design matrix packed by sign for the sampler's inner loop: phi entries are
// in {-1,0,+1}, so dot products and gradient scatters reduce to index sums.
class LogisticPosterior {
 public:
  LogisticPosterior(const DesignMatrix& design, double prior_scale)
      : b_(prior_scale) {
    if (prior_scale <= 0.0)
      throw std::invalid_argument("prior_scale must be positive");
    rows_.reserve(design.rows.size());
    for (std::size_t r = 0; r < design.rows.size(); ++r) {
      PackedRow row;
      row.y = design.labels[r];
      for (std::uint16_t i = 0; i < kNumProperties; ++i) {
        if (design.rows[r].phi[i] > 0) row.plus.push_back(i);
        else if (design.rows[r].phi[i] < 0) row.minus.push_back(i);
      }
      rows_.push_back(std::move(row));
    }
  }

  std::size_t dim() const { return kNumProperties; }
  double prior_scale() const { return b_; }
  std::size_t rows() const { return rows_.size(); }

  // Log posterior density (up to nothing: the -N log(2b) prior constant is
  // included) and its gradient.
  double log_density(const std::vector<double>& alpha,
                     std::vector<double>& grad) const {
    double lp = 0.0;
    grad.assign(kNumProperties, 0.0);
    for (const auto& row : rows_) {
      double z = 0.0;
      for (auto i : row.plus) z += alpha[i];
      for (auto i : row.minus) z -= alpha[i];
      lp += row.y ? log_sigmoid(z) : log_sigmoid(-z);
      const double resid = row.y - sigmoid(z);
      for (auto i : row.plus) grad[i] += resid;
      for (auto i : row.minus) grad[i] -= resid;
    }
    for (std::size_t i = 0; i < kNumProperties; ++i) {
      lp += -std::abs(alpha[i]) / b_ - std::log(2.0 * b_);
      // Subgradient convention sign(0) = 0.
      if (alpha[i] > 0.0) grad[i] -= 1.0 / b_;
      else if (alpha[i] < 0.0) grad[i] += 1.0 / b_;
    }
    return lp;
  }

 private:
  struct PackedRow {
    std::vector<std::uint16_t> plus, minus;
    int y = 0;
  };

  std::vector<PackedRow> rows_;
  double b_;
};

inline double log_posterior(const std::array<double, kNumProperties>& alpha,
                            const DesignMatrix& design, double b) {
  LogisticPosterior target(design, b);
  std::vector<double> grad;
  return target.log_density(std::vector<double>(alpha.begin(), alpha.end()), grad);
}

inline std::array<double, kNumProperties> grad_log_posterior(
    const std::array<double, kNumProperties>& alpha, const DesignMatrix& design,
    double b) {
  LogisticPosterior target(design, b);
  std::vector<double> grad;
  target.log_density(std::vector<double>(alpha.begin(), alpha.end()), grad);
  std::array<double, kNumProperties> out{};
  for (std::size_t i = 0; i < kNumProperties; ++i) out[i] = grad[i];
  return out;
}

}  // namespace preflens
