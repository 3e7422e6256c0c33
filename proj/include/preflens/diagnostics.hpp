#pragma once
// MCMC convergence diagnostics: split R-hat and effective sample size over a
// set of chains, computed per coordinate.

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "preflens/nuts.hpp"

namespace preflens {

namespace diag_detail {

// Splits every chain in half; the middle draw of an odd-length chain is
// dropped. Returns per-half-chain draws of one coordinate.
inline std::vector<std::vector<double>> split_halves(
    const std::vector<ChainResult>& chains, std::size_t coord) {
  std::vector<std::vector<double>> halves;
  for (const auto& c : chains) {
    const std::size_t n = c.draws.size();
    const std::size_t half = n / 2;
    if (half == 0) continue;
    std::vector<double> first, second;
    first.reserve(half);
    second.reserve(half);
    for (std::size_t i = 0; i < half; ++i) first.push_back(c.draws[i][coord]);
    for (std::size_t i = n - half; i < n; ++i) second.push_back(c.draws[i][coord]);
    halves.push_back(std::move(first));
    halves.push_back(std::move(second));
  }
  return halves;
}

struct Moments {
  double mean = 0.0, var = 0.0;  // var uses the n-1 divisor
};

inline Moments moments(const std::vector<double>& x) {
  Moments m;
  const double n = static_cast<double>(x.size());
  for (double v : x) m.mean += v;
  m.mean /= n;
  for (double v : x) m.var += (v - m.mean) * (v - m.mean);
  m.var = x.size() > 1 ? m.var / (n - 1.0) : 0.0;
  return m;
}

}  // namespace diag_detail

// Split R-hat (potential scale reduction). Returns 1 for degenerate
// (zero-variance) coordinates rather than NaN.
inline double split_rhat(const std::vector<ChainResult>& chains, std::size_t coord) {
  const auto halves = diag_detail::split_halves(chains, coord);
  if (halves.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const double m = static_cast<double>(halves.size());
  const double n = static_cast<double>(halves.front().size());
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();

  double w = 0.0, mean_of_means = 0.0;
  std::vector<double> means;
  for (const auto& h : halves) {
    const auto mom = diag_detail::moments(h);
    w += mom.var;
    means.push_back(mom.mean);
    mean_of_means += mom.mean;
  }
  w /= m;
  mean_of_means /= m;
  double b = 0.0;
  for (double mu : means) b += (mu - mean_of_means) * (mu - mean_of_means);
  b *= n / (m - 1.0);

  if (w <= 0.0) return 1.0;
  const double var_plus = (n - 1.0) / n * w + b / n;
  return std::sqrt(var_plus / w);
}

// Effective sample size via Geyer's initial monotone positive sequence over
// chain-averaged autocorrelations (split chains, same variance decomposition
// as R-hat).
inline double effective_sample_size(const std::vector<ChainResult>& chains,
                                    std::size_t coord) {
  const auto halves = diag_detail::split_halves(chains, coord);
  if (halves.empty()) return std::numeric_limits<double>::quiet_NaN();
  const std::size_t m = halves.size();
  const std::size_t n = halves.front().size();
  if (n < 4) return std::numeric_limits<double>::quiet_NaN();

  std::vector<diag_detail::Moments> mom;
  double w = 0.0;
  for (const auto& h : halves) {
    mom.push_back(diag_detail::moments(h));
    w += mom.back().var;
  }
  w /= static_cast<double>(m);
  double mean_of_means = 0.0;
  for (const auto& mo : mom) mean_of_means += mo.mean;
  mean_of_means /= static_cast<double>(m);
  double b = 0.0;
  for (const auto& mo : mom)
    b += (mo.mean - mean_of_means) * (mo.mean - mean_of_means);
  b *= static_cast<double>(n) / (static_cast<double>(m) - 1.0 + 1e-300);
  const double var_plus =
      (static_cast<double>(n) - 1.0) / static_cast<double>(n) * w +
      b / static_cast<double>(n);
  if (var_plus <= 0.0) return std::numeric_limits<double>::quiet_NaN();

  // Chain-averaged autocovariance at a given lag (biased, divisor n).
  auto mean_acov = [&](std::size_t lag) {
    double acc = 0.0;
    for (std::size_t c = 0; c < m; ++c) {
      const auto& h = halves[c];
      double s = 0.0;
      for (std::size_t i = 0; i + lag < n; ++i)
        s += (h[i] - mom[c].mean) * (h[i + lag] - mom[c].mean);
      acc += s / static_cast<double>(n);
    }
    return acc / static_cast<double>(m);
  };

  const std::size_t max_lag = n - 3;
  double tau = 0.0;
  double prev_pair = std::numeric_limits<double>::infinity();
  double rho_prev = 1.0;  // rho_0
  bool first = true;
  for (std::size_t t = 1; t + 1 <= max_lag; t += 2) {
    const double rho_odd = 1.0 - (w - mean_acov(t)) / var_plus;
    double pair = rho_prev + rho_odd;
    if (pair <= 0.0 && !first) break;
    if (pair > prev_pair) pair = prev_pair;  // enforce monotone decrease
    if (pair <= 0.0) break;
    tau += 2.0 * pair;
    prev_pair = pair;
    rho_prev = 1.0 - (w - mean_acov(t + 1)) / var_plus;
    first = false;
  }
  tau -= 1.0;  // the 2*rho_0 term double-counts the lag-0 contribution
  if (tau < 1e-12) tau = 1e-12;
  const double total = static_cast<double>(m) * static_cast<double>(n);
  double ess = total / tau;
  if (ess > total) ess = total;  // cap: antithetic chains are reported as iid
  return ess;
}

}  // namespace preflens
