#pragma once
// No-U-Turn Sampler: slice-variant tree doubling with dual-averaging step-size
// adaptation and diagonal mass-matrix estimation during warmup. The target is
// any type exposing dim() and log_density(x, grad).

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "preflens/rng.hpp"

namespace preflens {

struct NutsOptions {
  int warmup = 500;
  int samples = 1500;
  double target_accept = 0.8;
  int max_tree_depth = 10;
  double delta_max = 1000.0;  // divergence threshold on energy error
};

struct ChainResult {
  std::vector<std::vector<double>> draws;  // samples x dim, post-warmup only
  long divergences = 0;                    // post-warmup divergent transitions
  double accept_stat = 0.0;                // post-warmup mean acceptance statistic
  double step_size = 0.0;                  // fixed step size used after warmup
  std::vector<double> inv_mass;            // diagonal inverse mass (metric)
};

namespace nuts_detail {

template <typename Target>
struct State {
  std::vector<double> theta, r, grad;
  double logp = 0.0;

  double joint(const std::vector<double>& inv_mass) const {
    double k = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) k += inv_mass[i] * r[i] * r[i];
    return logp - 0.5 * k;
  }
};

template <typename Target>
void leapfrog(const Target& target, State<Target>& s, double eps,
              const std::vector<double>& inv_mass) {
  const std::size_t d = s.theta.size();
  for (std::size_t i = 0; i < d; ++i) s.r[i] += 0.5 * eps * s.grad[i];
  for (std::size_t i = 0; i < d; ++i) s.theta[i] += eps * inv_mass[i] * s.r[i];
  s.logp = target.log_density(s.theta, s.grad);
  for (std::size_t i = 0; i < d; ++i) s.r[i] += 0.5 * eps * s.grad[i];
}

// Continue condition: trajectory endpoints still moving apart under the
// metric-weighted inner product.
template <typename Target>
bool no_uturn(const State<Target>& minus, const State<Target>& plus,
              const std::vector<double>& inv_mass) {
  double forward = 0.0, backward = 0.0;
  for (std::size_t i = 0; i < inv_mass.size(); ++i) {
    const double dt = plus.theta[i] - minus.theta[i];
    forward += dt * inv_mass[i] * plus.r[i];
    backward += dt * inv_mass[i] * minus.r[i];
  }
  return forward >= 0.0 && backward >= 0.0;
}

template <typename Target>
struct Tree {
  State<Target> minus, plus, prop;
  long n = 0;           // slice-acceptable states in the subtree
  bool cont = true;     // false on divergence or subtree u-turn
  double alpha_sum = 0.0;
  long n_alpha = 0;
  long divergences = 0;
};

template <typename Target>
Tree<Target> build_tree(const Target& target, const State<Target>& from,
                        double log_u, int v, int depth, double eps,
                        double joint0, const std::vector<double>& inv_mass,
                        const NutsOptions& opt, Rng& rng) {
  if (depth == 0) {
    Tree<Target> t;
    t.minus = from;
    leapfrog(target, t.minus, v * eps, inv_mass);
    double joint = t.minus.joint(inv_mass);
    if (!std::isfinite(joint)) joint = -std::numeric_limits<double>::infinity();
    t.plus = t.minus;
    t.prop = t.minus;
    t.n = log_u <= joint ? 1 : 0;
    t.cont = log_u < joint + opt.delta_max;
    if (!t.cont) t.divergences = 1;
    const double ratio = joint - joint0;
    t.alpha_sum = ratio >= 0.0 ? 1.0 : std::exp(ratio);
    t.n_alpha = 1;
    return t;
  }

  Tree<Target> t = build_tree(target, from, log_u, v, depth - 1, eps, joint0,
                              inv_mass, opt, rng);
  if (!t.cont) return t;

  Tree<Target> ext = build_tree(target, v > 0 ? t.plus : t.minus, log_u, v,
                                depth - 1, eps, joint0, inv_mass, opt, rng);
  if (v > 0) t.plus = ext.plus;
  else t.minus = ext.minus;

  const long total = t.n + ext.n;
  if (ext.n > 0 &&
      rng.uniform01() * static_cast<double>(total) < static_cast<double>(ext.n))
    t.prop = ext.prop;
  t.n = total;
  t.alpha_sum += ext.alpha_sum;
  t.n_alpha += ext.n_alpha;
  t.divergences += ext.divergences;
  t.cont = ext.cont && no_uturn(t.minus, t.plus, inv_mass);
  return t;
}

// Heuristic initial step size: double or halve until the one-step acceptance
// probability crosses 1/2.
template <typename Target>
double find_reasonable_epsilon(const Target& target, const State<Target>& s0,
                               const std::vector<double>& inv_mass, Rng& rng) {
  const std::size_t d = s0.theta.size();
  double eps = 1.0;
  State<Target> s = s0;
  s.r.resize(d);
  for (std::size_t i = 0; i < d; ++i)
    s.r[i] = rng.normal() / std::sqrt(inv_mass[i]);
  const double joint0 = s.joint(inv_mass);

  auto step_ratio = [&](double e) {
    State<Target> trial = s;
    leapfrog(target, trial, e, inv_mass);
    const double joint = trial.joint(inv_mass);
    return std::isfinite(joint) ? joint - joint0
                                : -std::numeric_limits<double>::infinity();
  };

  const double a = step_ratio(eps) > std::log(0.5) ? 1.0 : -1.0;
  for (int iter = 0; iter < 100; ++iter) {
    if (a * step_ratio(eps) <= -a * std::log(2.0)) break;
    eps *= std::pow(2.0, a);
    if (eps > 1e7 || eps < 1e-10) break;
  }
  return eps;
}

// Dual averaging of log step size toward the target acceptance rate.
struct DualAveraging {
  double mu = 0.0, log_eps = 0.0, log_eps_bar = 0.0, h_bar = 0.0;
  long m = 0;
  static constexpr double gamma = 0.05, t0 = 10.0, kappa = 0.75;

  void restart(double eps0) {
    mu = std::log(10.0 * eps0);
    log_eps = std::log(eps0);
    log_eps_bar = 0.0;
    h_bar = 0.0;
    m = 0;
  }
  void update(double accept_prob, double target) {
    ++m;
    const double md = static_cast<double>(m);
    const double eta = 1.0 / (md + t0);
    h_bar = (1.0 - eta) * h_bar + eta * (target - accept_prob);
    log_eps = mu - std::sqrt(md) / gamma * h_bar;
    const double w = std::pow(md, -kappa);
    log_eps_bar = w * log_eps + (1.0 - w) * log_eps_bar;
  }
  double eps() const { return std::exp(log_eps); }
  double eps_bar() const { return std::exp(log_eps_bar); }
};

// Streaming variance of warmup draws for the metric estimate.
struct Welford {
  std::vector<double> mean, m2;
  long n = 0;

  void reset(std::size_t d) {
    mean.assign(d, 0.0);
    m2.assign(d, 0.0);
    n = 0;
  }
  void add(const std::vector<double>& x) {
    ++n;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double delta = x[i] - mean[i];
      mean[i] += delta / static_cast<double>(n);
      m2[i] += delta * (x[i] - mean[i]);
    }
  }
  // Sample variance shrunk toward a small constant, as a usable metric even
  // from few draws.
  std::vector<double> regularized_variance() const {
    std::vector<double> out(mean.size(), 1.0);
    if (n < 2) return out;
    const double nd = static_cast<double>(n);
    for (std::size_t i = 0; i < out.size(); ++i) {
      const double var = m2[i] / (nd - 1.0);
      out[i] = nd / (nd + 5.0) * var + 1e-3 * (5.0 / (nd + 5.0));
    }
    return out;
  }
};

}  // namespace nuts_detail

template <typename Target>
ChainResult nuts_chain(const Target& target, const NutsOptions& opt,
                       std::vector<double> init, Rng rng) {
  using nuts_detail::State;
  using nuts_detail::Tree;

  const std::size_t d = target.dim();
  if (init.size() != d) throw std::invalid_argument("nuts_chain: init size mismatch");

  State<Target> cur;
  cur.theta = std::move(init);
  cur.r.assign(d, 0.0);
  cur.grad.assign(d, 0.0);
  cur.logp = target.log_density(cur.theta, cur.grad);
  if (!std::isfinite(cur.logp))
    throw std::runtime_error("nuts_chain: non-finite energy at initial point");

  std::vector<double> inv_mass(d, 1.0);
  nuts_detail::DualAveraging da;
  da.restart(nuts_detail::find_reasonable_epsilon(target, cur, inv_mass, rng));

  // Warmup phases: step-size adaptation throughout; draws from
  // [warmup/2, 4*warmup/5) feed the metric estimate, after which adaptation
  // restarts under the new metric. Short warmups skip the metric update.
  const bool adapt_metric = opt.warmup >= 20;
  const int var_begin = opt.warmup / 2;
  const int var_end = 4 * opt.warmup / 5;
  nuts_detail::Welford welford;
  welford.reset(d);

  ChainResult result;
  result.draws.reserve(opt.samples);
  double eps = da.eps();
  double accept_sum = 0.0;
  long accept_n = 0;

  const long total_iters = static_cast<long>(opt.warmup) + opt.samples;
  for (long iter = 0; iter < total_iters; ++iter) {
    const bool warming = iter < opt.warmup;

    for (std::size_t i = 0; i < d; ++i)
      cur.r[i] = rng.normal() / std::sqrt(inv_mass[i]);
    const double joint0 = cur.joint(inv_mass);
    if (!std::isfinite(joint0))
      throw std::runtime_error("nuts_chain: non-finite energy");
    const double log_u = joint0 - rng.exponential();

    State<Target> minus = cur, plus = cur;
    long n = 1;
    bool cont = true;
    double alpha_sum = 0.0;
    long n_alpha = 0;
    long divergences = 0;

    for (int depth = 0; depth < opt.max_tree_depth && cont; ++depth) {
      const int v = rng.uniform01() < 0.5 ? -1 : 1;
      Tree<Target> tree = nuts_detail::build_tree(
          target, v > 0 ? plus : minus, log_u, v, depth, eps, joint0, inv_mass,
          opt, rng);
      if (v > 0) plus = tree.plus;
      else minus = tree.minus;

      if (tree.cont && tree.n > 0 &&
          rng.uniform01() * static_cast<double>(n) < static_cast<double>(tree.n))
        cur = tree.prop;
      n += tree.n;
      alpha_sum += tree.alpha_sum;
      n_alpha += tree.n_alpha;
      divergences += tree.divergences;
      cont = tree.cont && nuts_detail::no_uturn(minus, plus, inv_mass);
    }

    const double accept_prob =
        n_alpha > 0 ? alpha_sum / static_cast<double>(n_alpha) : 0.0;

    if (warming) {
      da.update(accept_prob, opt.target_accept);
      eps = da.eps();
      if (adapt_metric && iter >= var_begin && iter < var_end)
        welford.add(cur.theta);
      if (adapt_metric && iter + 1 == var_end) {
        inv_mass = welford.regularized_variance();
        da.restart(nuts_detail::find_reasonable_epsilon(target, cur, inv_mass, rng));
        eps = da.eps();
      }
      if (iter + 1 == opt.warmup) eps = da.eps_bar();
    } else {
      result.draws.push_back(cur.theta);
      result.divergences += divergences;
      accept_sum += accept_prob;
      ++accept_n;
    }
  }

  result.accept_stat = accept_n > 0 ? accept_sum / static_cast<double>(accept_n) : 0.0;
  result.step_size = eps;
  result.inv_mass = inv_mass;
  return result;
}

}  // namespace preflens
