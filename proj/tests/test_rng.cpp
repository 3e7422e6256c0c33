#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "preflens/rng.hpp"

using namespace preflens;

TEST_CASE("splitmix64 matches the reference sequence", "[rng]") {
  std::uint64_t state = 0;
  CHECK(splitmix64(state) == 0xE220A8397B1DCDAFULL);
  CHECK(splitmix64(state) == 0x6E789E6AA1B965F4ULL);
  CHECK(splitmix64(state) == 0x06C45D188009454FULL);
}

TEST_CASE("fnv1a64 matches published vectors", "[rng]") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
  CHECK(fnv1a64("ab") != fnv1a64("ba"));
}

TEST_CASE("identical seeds produce identical streams", "[rng]") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) REQUIRE(a.next() == b.next());
}

TEST_CASE("keyed streams are independent and reproducible", "[rng]") {
  Rng a = Rng::from_key(7, "judge=human|group=Others|fold=0|chain=0");
  Rng b = Rng::from_key(7, "judge=human|group=Others|fold=0|chain=0");
  Rng c = Rng::from_key(7, "judge=human|group=Others|fold=0|chain=1");
  Rng d = Rng::from_key(8, "judge=human|group=Others|fold=0|chain=0");
  bool same_ab = true, same_ac = true, same_ad = true;
  for (int i = 0; i < 64; ++i) {
    const auto va = a.next();
    same_ab &= va == b.next();
    same_ac &= va == c.next();
    same_ad &= va == d.next();
  }
  CHECK(same_ab);
  CHECK_FALSE(same_ac);
  CHECK_FALSE(same_ad);
}

TEST_CASE("uniform01 stays in [0, 1) with the right moments", "[rng]") {
  Rng rng(1);
  const int n = 200000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    sumsq += u * u;
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  CHECK_THAT(mean, Catch::Matchers::WithinAbs(0.5, 0.005));
  CHECK_THAT(var, Catch::Matchers::WithinAbs(1.0 / 12.0, 0.005));
}

TEST_CASE("normal moments and determinism", "[rng]") {
  Rng rng(2);
  const int n = 200000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    sum += x;
    sumsq += x * x;
  }
  CHECK_THAT(sum / n, Catch::Matchers::WithinAbs(0.0, 0.02));
  CHECK_THAT(sumsq / n, Catch::Matchers::WithinAbs(1.0, 0.03));

  // The Box-Muller cache is part of the stream state.
  Rng a(3), b(3);
  for (int i = 0; i < 100; ++i) REQUIRE(a.normal() == b.normal());
}

TEST_CASE("exponential has unit mean and variance", "[rng]") {
  Rng rng(4);
  const int n = 200000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.exponential();
    REQUIRE(x >= 0.0);
    sum += x;
    sumsq += x * x;
  }
  const double mean = sum / n;
  CHECK_THAT(mean, Catch::Matchers::WithinAbs(1.0, 0.02));
  CHECK_THAT(sumsq / n - mean * mean, Catch::Matchers::WithinAbs(1.0, 0.05));
}

TEST_CASE("laplace matches its mean and variance", "[rng]") {
  Rng rng(5);
  const double b = 0.1;
  const int n = 200000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.laplace(0.0, b);
    sum += x;
    sumsq += x * x;
  }
  const double mean = sum / n;
  CHECK_THAT(mean, Catch::Matchers::WithinAbs(0.0, 0.002));
  CHECK_THAT(sumsq / n - mean * mean,
             Catch::Matchers::WithinAbs(2.0 * b * b, 0.001));

  Rng shifted(5);
  // Location parameter translates draws exactly.
  Rng base(5);
  for (int i = 0; i < 100; ++i)
    REQUIRE(shifted.laplace(1.5, b) == Catch::Approx(base.laplace(0.0, b) + 1.5));
}

TEST_CASE("below is in range and roughly uniform", "[rng]") {
  Rng rng(6);
  for (int i = 0; i < 100; ++i) REQUIRE(rng.below(1) == 0);

  const std::uint64_t n = 7;
  std::vector<long> counts(n, 0);
  const long draws = 70000;
  for (long i = 0; i < draws; ++i) {
    const std::uint64_t v = rng.below(n);
    REQUIRE(v < n);
    ++counts[v];
  }
  // Expected 10000 per bucket; 5 sigma is about 480.
  for (auto c : counts) CHECK_THAT(static_cast<double>(c),
                                   Catch::Matchers::WithinAbs(10000.0, 500.0));
}

TEST_CASE("shuffle permutes deterministically", "[rng]") {
  std::vector<int> v(20);
  for (int i = 0; i < 20; ++i) v[i] = i;
  std::vector<int> w = v;

  Rng a(9), b(9);
  shuffle(v, a);
  shuffle(w, b);
  CHECK(v == w);

  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 20; ++i) REQUIRE(sorted[i] == i);

  std::vector<int> u(20);
  for (int i = 0; i < 20; ++i) u[i] = i;
  Rng c(10);
  shuffle(u, c);
  CHECK(u != v);  // different seed, different permutation
}

TEST_CASE("shuffle visits many permutations", "[rng]") {
  std::set<std::vector<int>> seen;
  for (int s = 0; s < 50; ++s) {
    std::vector<int> v{0, 1, 2, 3};
    Rng rng(static_cast<std::uint64_t>(s));
    shuffle(v, rng);
    seen.insert(v);
  }
  CHECK(seen.size() >= 15);  // 24 possible; a skewed generator would collapse
}
