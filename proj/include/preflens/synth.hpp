#pragma once
// Synthetic data generation from known ground-truth weights, plus an exact
// 1-D quadrature oracle. Both exist to test the sampler against independent
// references.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "preflens/data.hpp"
#include "preflens/features.hpp"
#include "preflens/logistic.hpp"
#include "preflens/properties.hpp"
#include "preflens/rng.hpp"

namespace preflens {

struct SynthSpec {
  std::array<double, kNumProperties> alpha_star{};
  long n_samples = 1000;
  double feature_sparsity = 0.4;  // probability a slot is nonzero
  std::uint64_t seed = 0;

  void check() const {
    if (n_samples <= 0) throw std::invalid_argument("n_samples must be positive");
    if (feature_sparsity <= 0.0 || feature_sparsity > 1.0)
      throw std::invalid_argument("feature_sparsity must be in (0, 1]");
  }
};

// Rows with slots independently 0 with probability 1 - sparsity (else +-1
// uniformly); labels drawn Bernoulli(sigmoid(alpha* . phi)).
inline DesignMatrix generate(const SynthSpec& spec) {
  spec.check();
  Rng rng = Rng::from_key(spec.seed, "synth");
  DesignMatrix d;
  char id[32];
  for (long row = 0; row < spec.n_samples; ++row) {
    ComparisonFeature f;
    double z = 0.0;
    for (std::size_t i = 0; i < kNumProperties; ++i) {
      if (rng.uniform01() < spec.feature_sparsity) {
        f.phi[i] = rng.uniform01() < 0.5 ? 1 : -1;
        z += spec.alpha_star[i] * f.phi[i];
      } else {
        f.phi[i] = 0;
      }
    }
    d.rows.push_back(f);
    d.labels.push_back(rng.uniform01() < sigmoid(z) ? 1 : 0);
    std::snprintf(id, sizeof id, "synth-%08ld", row);
    d.sample_ids.push_back(id);
  }
  return d;
}

// ---- exact 1-D posterior oracle ----

namespace synth_detail {

template <typename F>
double adaptive_simpson_rec(const F& f, double a, double b, double fa, double fm,
                            double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace synth_detail

// Posterior mean of the single active weight by adaptive quadrature over
// [-30, 0] and [0, 30] (split at the prior's kink), relative tolerance 1e-8.
inline double exact_posterior_1d(const DesignMatrix& design, double b) {
  if (b <= 0.0) throw std::invalid_argument("prior scale must be positive");
  int column = -1;
  for (const auto& row : design.rows)
    for (std::size_t i = 0; i < kNumProperties; ++i)
      if (row.phi[i] != 0) {
        if (column == -1) column = static_cast<int>(i);
        else if (column != static_cast<int>(i))
          throw std::invalid_argument(
              "exact_posterior_1d: more than one nonzero column");
      }
  if (column == -1)
    throw std::invalid_argument("exact_posterior_1d: no nonzero column");

  // Each row contributes log sigmoid(s * a) with s = phi * (2y - 1).
  long n_pos = 0, n_neg = 0;
  for (std::size_t r = 0; r < design.rows.size(); ++r) {
    const int s = design.rows[r].phi[column] * (2 * design.labels[r] - 1);
    if (s > 0) ++n_pos;
    else if (s < 0) ++n_neg;
  }

  auto log_post = [&](double a) {
    return static_cast<double>(n_pos) * log_sigmoid(a) +
           static_cast<double>(n_neg) * log_sigmoid(-a) - std::abs(a) / b;
  };

  // Shift by the coarse-grid maximum so the integrand stays representable,
  // and bound the support while we are at it: weight below exp(-60) is under
  // 1e-24 of the peak, so truncating there is far inside the tolerance.
  constexpr double kStep = 0.05;
  constexpr int kHalfGrid = 600;
  double shift = -std::numeric_limits<double>::infinity();
  for (int k = -kHalfGrid; k <= kHalfGrid; ++k)
    shift = std::max(shift, log_post(k * kStep));
  double lo = 30.0, hi = -30.0;
  for (int k = -kHalfGrid; k <= kHalfGrid; ++k) {
    const double a = k * kStep;
    if (log_post(a) - shift >= -60.0) {
      lo = std::min(lo, a);
      hi = std::max(hi, a);
    }
  }
  lo = std::max(lo - kStep, -30.0);
  hi = std::min(hi + kStep, 30.0);

  auto weight = [&](double a) { return std::exp(log_post(a) - shift); };
  auto weighted = [&](double a) { return a * std::exp(log_post(a) - shift); };

  // Stitch fixed panels, splitting at the prior's kink. A very tight prior
  // leaves a peak orders of magnitude narrower than the domain; without the
  // initial subdivision the adaptive rule can sample straight past it and
  // mistake the integral for zero.
  std::vector<double> cuts;
  constexpr int kPanels = 16;
  auto add_span = [&cuts](double x0, double x1) {
    if (x1 <= x0) return;
    for (int i = 0; i < kPanels; ++i)
      cuts.push_back(x0 + (x1 - x0) * i / kPanels);
    cuts.push_back(x1);
  };
  add_span(lo, std::min(hi, 0.0));
  add_span(std::max(lo, 0.0), hi);

  const double tol = 1e-8 / static_cast<double>(cuts.size());
  auto integrate = [&](const auto& f) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      if (cuts[i] < cuts[i + 1])
        total += synth_detail::adaptive_simpson(f, cuts[i], cuts[i + 1], tol);
    return total;
  };
  return integrate(weighted) / integrate(weight);
}

// ---- synthetic dataset export ----

namespace synth_detail {

// Per-slot rating pairs realizing a given phi value; inverse of compare().
inline void apply_slot(AnnotatedSample& s, std::size_t i, int v) {
  auto& a = s.resp_a;
  auto& b = s.resp_b;
  auto set_rating = [&](std::size_t prop, int ra, int rb) {
    a.ratings[std::string(basic_rating_key(prop))] = ra;
    b.ratings[std::string(basic_rating_key(prop))] = rb;
  };
  switch (i) {
    case kNonRepetitive:
      // Stored raw "repetitive" is inverted at assembly; lower raw is better.
      set_rating(i, v > 0 ? 1 : 2, v < 0 ? 1 : 2);
      break;
    case kRelevant:
      set_rating(i, v == 0 ? 2 : (v > 0 ? 1 : 0), v == 0 ? 2 : (v > 0 ? 0 : 1));
      break;
    case kLengthy:
      a.word_count = v > 0 ? 200 : v < 0 ? 100 : 150;
      b.word_count = v > 0 ? 100 : v < 0 ? 200 : 150;
      break;
    case kClarifyIntent:
      a.query_specific->clarify_intent = v > 0 ? 2 : v < 0 ? 1 : 2;
      b.query_specific->clarify_intent = v > 0 ? 1 : v < 0 ? 2 : 2;
      break;
    case kShowEmpathetic:
      a.query_specific->show_empathetic = v > 0 ? 2 : v < 0 ? 1 : 2;
      b.query_specific->show_empathetic = v > 0 ? 1 : v < 0 ? 2 : 2;
      break;
    case kSatisfyConstraints:
      a.query_specific->constraints = {v > 0 ? 2 : v < 0 ? 1 : 2};
      b.query_specific->constraints = {v > 0 ? 1 : v < 0 ? 2 : 2};
      break;
    case kSupportStances:
      a.query_specific->stances = {v > 0   ? StanceLabel::strongly_supported
                                   : v < 0 ? StanceLabel::weakly_supported
                                           : StanceLabel::neutral};
      b.query_specific->stances = {v > 0   ? StanceLabel::weakly_supported
                                   : v < 0 ? StanceLabel::strongly_supported
                                           : StanceLabel::neutral};
      break;
    case kCorrectMistakes:
      a.query_specific->mistakes = {
          v > 0   ? MistakeLabel::pointed_out_and_corrected
          : v < 0 ? MistakeLabel::pointed_out_but_not_corrected
                  : MistakeLabel::neither_pointed_out_nor_corrected};
      b.query_specific->mistakes = {
          v > 0   ? MistakeLabel::pointed_out_but_not_corrected
          : v < 0 ? MistakeLabel::pointed_out_and_corrected
                  : MistakeLabel::neither_pointed_out_nor_corrected};
      break;
    case kNoMinorErrors:
    case kNoModerateErrors:
    case kNoSevereErrors: {
      const Severity sev = i == kNoMinorErrors     ? Severity::minor
                           : i == kNoModerateErrors ? Severity::moderate
                                                    : Severity::severe;
      // Fewer errors is better: the worse side gets one error of the severity.
      if (v > 0) b.errors.push_back({"synthetic error", ErrorType::factual, sev});
      else if (v < 0) a.errors.push_back({"synthetic error", ErrorType::factual, sev});
      break;
    }
    default:
      set_rating(i, v >= 0 ? 2 : 1, v > 0 ? 1 : 2);
      break;
  }
}

}  // namespace synth_detail

// Renders a design matrix in the dataset schema with placeholder texts, such
// that sample_feature() reproduces each row exactly. Labels land under judge
// "synthetic".
inline std::vector<AnnotatedSample> synthetic_samples(const DesignMatrix& design) {
  std::vector<AnnotatedSample> out;
  out.reserve(design.size());
  for (std::size_t r = 0; r < design.size(); ++r) {
    AnnotatedSample s;
    s.id = design.sample_ids[r];
    s.meta.query_text = "synthetic query";
    s.meta.scenario = GroupTag::scenario("Others");
    s.meta.clear_intent = false;
    s.meta.expresses_feelings = true;
    s.meta.constraints = {"synthetic constraint"};
    s.meta.stances = {"synthetic stance"};
    s.meta.mistakes = {"synthetic mistake"};
    s.resp_a.text = "synthetic response (a)";
    s.resp_b.text = "synthetic response (b)";
    s.resp_a.query_specific.emplace();
    s.resp_b.query_specific.emplace();
    for (std::size_t i = 0; i < kNumProperties; ++i)
      synth_detail::apply_slot(s, i, design.rows[r].phi[i]);
    s.labels["synthetic"] = design.labels[r] ? PrefLabel::A : PrefLabel::B;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace preflens
