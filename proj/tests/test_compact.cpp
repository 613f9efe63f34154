#include "doctest.h"

#include <algorithm>
#include <map>

#include "bubble/compact.hpp"
#include "bubble/gaps.hpp"

using namespace bubble;

TEST_CASE("Koenigs map basics") {
  for (int b = 2; b <= 6; ++b) {
    const KoenigsMap t(b);
    CHECK(t.multiplier() == doctest::Approx(to_double(multiplier_at_zero(b))));
    CHECK(t(0.0) == 0.0);
    const double h = 1e-7;
    CHECK(std::abs(t(h) / h - 1.0) < 1e-6);
    double prev = -1.0;
    for (int i = 0; i <= 200; ++i) {
      const double v = t(0.01 * i);
      CHECK(v > prev);
      prev = v;
    }
    CHECK_THROWS_AS(t(-0.1), DomainError);
    CHECK_THROWS_AS(t(2.1), DomainError);
    CHECK_THROWS_AS(t(1.0, 0), DomainError);
  }
}

TEST_CASE("Koenigs functional equation and scale separation") {
  for (int b = 2; b <= 6; ++b) {
    const KoenigsMap t(b);
    const auto f = DecimationFunctions::canonical(b);
    for (int i = 0; i < 200; ++i) {
      const double z = 2.0 * (i + 0.5) / 200.0;
      CHECK(std::abs(t(f.inverse_branch(Branch::Zero, z)) * t.multiplier() - t(z)) < 1e-9);
    }
    CHECK(std::abs(t.multiplier() * t(1.0 / (b + 1)) - t(2.0)) < 1e-9);
  }
}

TEST_CASE("Koenigs depth is adaptive and capped") {
  const KoenigsMap t(2);
  CHECK(t.depth_for(2.0) > 1);
  CHECK(t.depth_for(2.0) < 200);
  CHECK(t(2.0, 20) == doctest::Approx(t(2.0)).epsilon(1e-10));
  const KoenigsMap impatient(2, 1e-30, 3);
  CHECK_THROWS_AS(impatient(2.0), NonConvergence);
}

TEST_CASE("multiplier is the product of resistance and measure scaling") {
  for (int b = 2; b <= 8; ++b)
    CHECK(multiplier_at_zero(b) == make_rational(2 * b + 1, b) * (b + 2));
}

TEST_CASE("compact spectrum structure") {
  for (int b : {2, 3, 4}) {
    const KoenigsMap t(b);
    const auto s = compact_spectrum(t, 5);
    REQUIRE(s.size() > 2);
    CHECK(s[0].value == 0.0);
    CHECK(s[1].value == doctest::Approx(2.0 * t(2.0)));
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i - 1].value < s[i].value);

    std::map<std::pair<int, long long>, double> by_key;
    for (const auto &e : s) by_key[{e.generation, std::llround(e.source * 1e9)}] = e.value;
    for (const auto &e : s) {
      if (e.generation == 0 || e.generation == 5) continue;
      auto it = by_key.find({e.generation + 1, std::llround(e.source * 1e9)});
      REQUIRE(it != by_key.end());
      CHECK(it->second / e.value == doctest::Approx(t.multiplier()).epsilon(1e-12));
    }

    double scale = 2.0;
    for (int k = 1; k <= 5; ++k) {
      scale *= t.multiplier();
      const double lo = scale * t(1.0 / (b + 1));
      const double hi = scale * t(static_cast<double>(b) / (b + 1));
      // the left end is itself an eigenvalue, 2 lambda0^{k-1} T(2)
      for (const auto &e : s) CHECK_FALSE((e.value > lo * (1 + 1e-9) && e.value < hi * (1 - 1e-9)));
    }
  }
  CHECK_THROWS_AS(compact_spectrum(2, 0), DomainError);
}

TEST_CASE("compact multiplicities only for Dirichlet-generation sources") {
  const int b = 2;
  const auto s = compact_spectrum(b, 4);
  bool seen = false;
  for (const auto &e : s) {
    if (!e.multiplicity) continue;
    seen = true;
    double z = e.source;
    bool hits = false;
    for (int m = 0; m < e.generation && !hits; ++m) {
      hits = std::abs(z - 1.0 / 3) < 1e-9 || std::abs(z - 5.0 / 3) < 1e-9;
      z = decimation_polynomial(b, z);
    }
    CHECK(hits);
  }
  CHECK(seen);
}

TEST_CASE("compact gap labels") {
  for (int b = 2; b <= 6; ++b) {
    const auto [e0, e1] = base_gaps(b);
    CHECK(compact_gap_label(b, e0.left, e0.right) > 0.0);
    CHECK(compact_gap_label(b, e1.left, e1.right) > 0.0);
    for (const auto &g : enumerate_gaps(b, 3))
      if (g.left >= 1.0 / (b + 1)) CHECK(compact_gap_label(b, g.left, g.right) > 0.0);
    CHECK_THROWS_AS(compact_gap_label(b, 1.0, 1.0), DomainError);
  }
  // regression value from the first verified run
  CHECK(compact_gap_label(2, 1.0 / 3, 2.0 / 3) == doctest::Approx(1.1246600773015314).epsilon(1e-9));
}

TEST_CASE("gap ratio is constant across generations") {
  for (int b : {2, 4}) {
    const KoenigsMap t(b);
    const double g1 = 1.0 / (b + 1);
    const double g2 = static_cast<double>(b) / (b + 1);
    const auto r = gap_sequence_check(t, g1, g2, 6);
    CHECK(r.ratios.size() == 6);
    CHECK(r.max_ratio - r.min_ratio < 1e-8);
    CHECK(r.min_ratio == doctest::Approx(compact_gap_label(t, g1, g2)).epsilon(1e-8));
    CHECK(r.min_ratio > 0.0);
    CHECK(r.images_empty);
  }
}
