#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "tmsv/entanglement.hpp"
#include "tmsv/fock.hpp"

using namespace tmsv;
namespace ent = tmsv::entanglement;
using ent::Amplitudes;
using ent::CoefficientSource;
using ent::MeasureKind;
using ent::NegativityFormula;
using fock::SchmidtState;

namespace {

constexpr double kLog2E = std::numbers::log2e;

SchmidtState hand_state(std::vector<double> c, bool normalized, double ramp = 0.0) {
  SchmidtState s;
  s.k = 1;
  s.coefficients = std::move(c);
  s.ramp_theta = ramp;
  s.normalized = normalized;
  return s;
}

double tmsv_entropy_closed(double r) {
  const double c2 = std::cosh(r) * std::cosh(r);
  const double s2 = std::sinh(r) * std::sinh(r);
  return c2 * std::log2(c2) - (s2 > 0.0 ? s2 * std::log2(s2) : 0.0);
}

}  // namespace

TEST_CASE("coefficients: Fock-engine oracle for operator_derived amplitudes") {
  // Independent ground truth: build a^dagger^k (two-mode squeezed vacuum) in
  // the truncated Fock engine and read its Schmidt band off the amplitudes.
  for (int k = 1; k <= 3; ++k)
    for (double r : {0.3, 0.8}) {
      const SqueezeParams p(r, 0.7);
      const int fc = fock::suggest_cutoff(r, k, 1e-16);
      auto ladder = fock::apply_ladder(fock::tmsv(p, fc), fock::Mode::a, fock::Ladder::create, k);
      const SchmidtState oracle = fock::schmidt_coefficients(ladder.normalized());

      const int cutoff = ent::suggest_coefficient_cutoff(r, k, Amplitudes::operator_derived);
      const SchmidtState closed =
          ent::coefficients(p, k, CoefficientSource{Amplitudes::operator_derived, true}, cutoff);

      REQUIRE(oracle.k == k);
      double worst = 0.0;
      const std::size_t n = std::min(oracle.coefficients.size(), closed.coefficients.size());
      REQUIRE(n >= 8);
      for (std::size_t m = 0; m < n; ++m)
        worst = std::max(worst, std::abs(oracle.coefficients[m] - closed.coefficients[m]));
      INFO("k=", k, " r=", r, " worst=", worst);
      CHECK(worst <= 1e-12);
    }
}

TEST_CASE("coefficients: k=1 conventions are proportional, identical once normalized") {
  const SqueezeParams p(0.9, 0.2);
  const int cutoff = ent::suggest_coefficient_cutoff(0.9, 1, Amplitudes::operator_derived);
  const auto lit = ent::coefficients(p, 1, CoefficientSource{Amplitudes::paper_literal, false}, cutoff);
  const auto op =
      ent::coefficients(p, 1, CoefficientSource{Amplitudes::operator_derived, false}, cutoff);
  const double ratio0 = lit.coefficients[0] / op.coefficients[0];
  for (std::size_t m = 0; m < 40; ++m)
    CHECK(lit.coefficients[m] / op.coefficients[m] == doctest::Approx(ratio0).epsilon(1e-13));

  const auto litn = ent::coefficients(p, 1, CoefficientSource{Amplitudes::paper_literal, true}, cutoff);
  const auto opn =
      ent::coefficients(p, 1, CoefficientSource{Amplitudes::operator_derived, true}, cutoff);
  for (std::size_t m = 0; m < litn.coefficients.size(); ++m)
    CHECK(std::abs(litn.coefficients[m] - opn.coefficients[m]) <= 1e-14);
}

TEST_CASE("coefficients: r=0, normalization constant, cutoff validation") {
  SUBCASE("r=0 collapses to a single coefficient") {
    for (int k : {0, 2}) {
      const auto s =
          ent::coefficients(SqueezeParams(0.0, 0.0), k, CoefficientSource{}, 6);
      CHECK(s.coefficients[0] == doctest::Approx(1.0).epsilon(1e-15));
      for (std::size_t m = 1; m < s.coefficients.size(); ++m) CHECK(s.coefficients[m] == 0.0);
      CHECK(s.normalized);
    }
  }
  SUBCASE("operator normalization constant^2 = k!/(1-tanh^2 r)^{k+1}") {
    for (int k = 0; k <= 4; ++k)
      for (double r : {0.3, 0.8, 1.2}) {
        const int cutoff = ent::suggest_coefficient_cutoff(r, k, Amplitudes::operator_derived);
        const auto s = ent::coefficients(SqueezeParams(r, 0.0), k,
                                         CoefficientSource{Amplitudes::operator_derived, false},
                                         cutoff);
        double sum2 = 0.0;
        for (double c : s.coefficients) sum2 += c * c;
        const double t2 = std::tanh(r) * std::tanh(r);
        double want = 1.0;
        for (int j = 1; j <= k; ++j) want *= j;
        want /= std::pow(1.0 - t2, k + 1);
        CHECK(sum2 == doctest::Approx(want).epsilon(1e-10));
      }
  }
  SUBCASE("insufficient cutoff is rejected") {
    CHECK_THROWS_AS(ent::coefficients(SqueezeParams(1.0, 0.0), 2, CoefficientSource{}, 3),
                    numerical_error);
    CHECK_THROWS_AS(ent::coefficients(SqueezeParams(0.5, 0.0), -1, CoefficientSource{}, 10),
                    std::invalid_argument);
    const int n = ent::suggest_coefficient_cutoff(1.5, 2, Amplitudes::paper_literal);
    CHECK_NOTHROW(ent::coefficients(SqueezeParams(1.5, 0.0), 2, CoefficientSource{}, n));
    CHECK_THROWS_AS(ent::coefficients(SqueezeParams(1.5, 0.0), 2, CoefficientSource{}, n / 4),
                    numerical_error);
  }
}

TEST_CASE("log_negativity: hand values, TMSV baseline, squared-form degeneracy") {
  CHECK(ent::log_negativity(hand_state({1.0}, true), NegativityFormula::summed_amplitude) == 0.0);
  CHECK(ent::log_negativity(hand_state({1.0}, true), NegativityFormula::paper_literal) == 0.0);

  const double h = 1.0 / std::sqrt(2.0);
  CHECK(ent::log_negativity(hand_state({h, h}, true), NegativityFormula::summed_amplitude) ==
        doctest::Approx(1.0).epsilon(1e-14));

  // Two-mode squeezed vacuum: summed amplitude reproduces log2(e^{2r}); the
  // square-of-squares form collapses to 0 on the same normalized
  // coefficients.
  for (double r : {0.1, 0.5, 1.0, 1.6, 2.0}) {
    const int cutoff = ent::suggest_coefficient_cutoff(r, 0, Amplitudes::paper_literal, 1e-21);
    const auto s = ent::coefficients(SqueezeParams(r, 0.4), 0, CoefficientSource{}, cutoff);
    const double eps = ent::log_negativity(s, NegativityFormula::summed_amplitude);
    CHECK(eps == doctest::Approx(2.0 * r * kLog2E).epsilon(1e-9));
    CHECK(std::abs(ent::log_negativity(s, NegativityFormula::paper_literal)) <= 1e-10);
  }
  const int c1 = ent::suggest_coefficient_cutoff(1.0, 0, Amplitudes::paper_literal, 1e-21);
  const auto s1 = ent::coefficients(SqueezeParams(1.0, 0.0), 0, CoefficientSource{}, c1);
  CHECK(ent::log_negativity(s1, NegativityFormula::summed_amplitude) ==
        doctest::Approx(2.8853901).epsilon(1e-7));

  SUBCASE("epsilon >= 0 with equality only for a single nonzero coefficient") {
    CHECK(ent::log_negativity(hand_state({0.6, 0.8}, true), NegativityFormula::summed_amplitude) >
          1e-12);
    CHECK(std::abs(ent::log_negativity(hand_state({1.0, 0.0, 0.0}, true),
                                       NegativityFormula::summed_amplitude)) <= 1e-12);
  }
  SUBCASE("contract violations") {
    CHECK_THROWS_AS(ent::log_negativity(hand_state({}, true), NegativityFormula::summed_amplitude),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        ent::log_negativity(hand_state({0.5, 0.5}, false), NegativityFormula::summed_amplitude),
        std::invalid_argument);
    CHECK_NOTHROW(ent::log_negativity(hand_state({0.5, 0.5}, false), NegativityFormula::paper_literal));
  }
}

TEST_CASE("entanglement_entropy: hand values, closed form, bounds") {
  CHECK(ent::entanglement_entropy(hand_state({1.0}, true)) == 0.0);
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(ent::entanglement_entropy(hand_state({h, h}, true)) == doctest::Approx(1.0).epsilon(1e-14));

  const double r = 0.8;
  const int cutoff = ent::suggest_coefficient_cutoff(r, 0, Amplitudes::paper_literal, 1e-16);
  const auto s = ent::coefficients(SqueezeParams(r, 0.0), 0, CoefficientSource{}, cutoff);
  CHECK(ent::entanglement_entropy(s) == doctest::Approx(tmsv_entropy_closed(r)).epsilon(1e-9));

  SUBCASE("S <= log2(#nonzero), equality iff equal coefficients") {
    const double e3 = 1.0 / std::sqrt(3.0);
    CHECK(ent::entanglement_entropy(hand_state({e3, e3, e3}, true)) ==
          doctest::Approx(std::log2(3.0)).epsilon(1e-13));
    const double lopsided = ent::entanglement_entropy(
        hand_state({std::sqrt(0.7), std::sqrt(0.2), std::sqrt(0.1)}, true));
    CHECK(lopsided < std::log2(3.0) - 1e-3);
  }
  SUBCASE("unnormalized input rejected") {
    CHECK_THROWS_AS(ent::entanglement_entropy(hand_state({0.5, 0.5}, false)),
                    std::invalid_argument);
    auto lying = hand_state({0.5, 0.5}, true);  // flag says normalized, sum says otherwise
    CHECK_THROWS_AS(ent::entanglement_entropy(lying), std::invalid_argument);
  }
}

TEST_CASE("measures depend on coefficient magnitudes only") {
  const auto a = hand_state({0.6, 0.8}, true, 0.0);
  const auto b = hand_state({0.6, 0.8}, true, 2.1);  // same magnitudes, different phase ramp
  CHECK(ent::log_negativity(a, NegativityFormula::summed_amplitude) ==
        ent::log_negativity(b, NegativityFormula::summed_amplitude));
  CHECK(ent::entanglement_entropy(a) == ent::entanglement_entropy(b));
}

TEST_CASE("negativity_ratio: identity at k=0, small-r starting values, monotone tails") {
  const CoefficientSource lit{Amplitudes::paper_literal, true};

  for (double r : {0.3, 1.0, 2.0}) {
    const auto rep = ent::negativity_ratio_report(SqueezeParams(r, 0.0), 0, lit);
    CHECK(rep.literal_argument_ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.log_ratio == doctest::Approx(1.0).epsilon(1e-9));
  }

  // Frozen from the series evaluation of e^{-2r} (sum t^m sqrt(m+k))^2
  // (1-t^2)^{k+1} / k!: the r -> 0+ limits are 1/(k-1)!.
  CHECK(ent::negativity_ratio(SqueezeParams(0.05, 0.0), 3, lit) ==
        doctest::Approx(0.50432).epsilon(2e-4));
  CHECK(ent::negativity_ratio(SqueezeParams(0.05, 0.0), 4, lit) ==
        doctest::Approx(0.16705).epsilon(2e-4));

  SUBCASE("k=1: both amplitude conventions coincide") {
    const auto a = ent::negativity_ratio_report(SqueezeParams(0.7, 0.0), 1,
                                                CoefficientSource{Amplitudes::paper_literal, true});
    const auto b = ent::negativity_ratio_report(
        SqueezeParams(0.7, 0.0), 1, CoefficientSource{Amplitudes::operator_derived, true});
    CHECK(a.literal_argument_ratio == doctest::Approx(b.literal_argument_ratio).epsilon(1e-12));
    CHECK(a.log_ratio == doctest::Approx(b.log_ratio).epsilon(1e-12));
  }
  SUBCASE("k=3 and k=4 curves are non-increasing over [0.2, 2.5]") {
    for (int k : {3, 4}) {
      double prev = std::numeric_limits<double>::infinity();
      for (int i = 0; i <= 46; ++i) {
        const double r = 0.2 + 0.05 * i;
        const double v = ent::negativity_ratio(SqueezeParams(r, 0.0), k, lit);
        CHECK(v <= prev + 1e-12);
        prev = v;
      }
    }
  }
  SUBCASE("r=0 rejected") {
    CHECK_THROWS_AS(ent::negativity_ratio(SqueezeParams(0.0, 0.0), 2, lit), std::invalid_argument);
  }
}

TEST_CASE("ef_paper: truncation-defined formation curve") {
  SUBCASE("vanishes at r=0") {
    CHECK(std::abs(ent::ef_paper(SqueezeParams(0.0, 0.0), 1)) <= 1e-15);
  }
  SUBCASE("k=1 maximum sits at r=2.11 under the default truncation") {
    const auto am = ent::refined_argmax(MeasureKind::ef_paper, SqueezeParams(1.0, 0.0), 1, 0.5, 4.0,
                                        0.01, 10, CoefficientSource{});
    INFO("argmax r=", am.r, " value=", am.value);
    CHECK(std::abs(am.r - 2.114) <= 0.015);   // frozen from the series scan
    CHECK(std::abs(am.r - 2.1) <= 0.2);       // expected peak position
    const double tail_value = ent::ef_paper(SqueezeParams(6.0, 0.0), 1);
    CHECK(tail_value < 0.01 * am.value);
  }
  SUBCASE("the cutoff is part of the definition") {
    const double at50 = ent::ef_paper(SqueezeParams(2.0, 0.0), 1, 50);
    const double at80 = ent::ef_paper(SqueezeParams(2.0, 0.0), 1, 80);
    CHECK(std::abs(at80 - at50) > 0.05 * at80);
  }
  SUBCASE("tail bounds dominate the numeric continuation and stay within reason") {
    const SqueezeParams p(1.2, 0.0);
    const int cutoff = 40;
    const auto b = ent::ef_paper_tail_bounds(p, 1, cutoff);
    const double t = std::tanh(1.2);
    const double pref = 1.0 / (std::cosh(1.2) * std::cosh(1.2));
    double cs = 0.0, es = 0.0, pw = std::pow(t, cutoff + 1);
    for (int m = cutoff + 1; m < 4000; ++m) {
      const double c = pref * pw * std::sqrt(m + 1.0);
      cs += c;
      const double c2 = c * c;
      if (c2 > 0.0) es += -c2 * std::log2(c2);
      pw *= t;
    }
    CHECK(b.coefficient_sum >= cs);
    CHECK(b.coefficient_sum <= 3.0 * cs);
    CHECK(b.entropy_sum >= es);
    CHECK(b.entropy_sum <= 3.0 * es);
  }
  SUBCASE("truncation visibly bites at large r") {
    const auto b = ent::ef_paper_tail_bounds(SqueezeParams(3.0, 0.0), 1,
                                             ent::kFormationDefaultCutoff);
    CHECK(b.coefficient_sum > 1.0);
  }
}

TEST_CASE("scan: deterministic curves, monotone TMSV, error propagation") {
  std::vector<double> grid;
  for (int i = 0; i < 20; ++i) grid.push_back(0.1 + i * 0.1);

  const auto curve =
      ent::scan(MeasureKind::log_negativity, SqueezeParams(0.1, 0.3), 0, grid, CoefficientSource{});
  REQUIRE(curve.values.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(curve.values[i] == doctest::Approx(2.0 * grid[i] * kLog2E).epsilon(1e-9));
    if (i > 0) CHECK(curve.values[i] > curve.values[i - 1]);
  }

  SUBCASE("per-point failures name the offending r") {
    try {
      ent::scan(MeasureKind::log_negativity, SqueezeParams(0.1, 0.0), 2, {0.5, 0.9},
                CoefficientSource{Amplitudes::paper_literal, false});
      FAIL("expected numerical_error");
    } catch (const numerical_error& e) {
      CHECK(std::string(e.what()).find("at r=0.5") != std::string::npos);
    }
  }
  SUBCASE("grid validation") {
    CHECK_THROWS_AS(ent::scan(MeasureKind::log_negativity, SqueezeParams(0.1, 0.0), 0, {0.5, 0.5},
                              CoefficientSource{}),
                    std::invalid_argument);
    CHECK_THROWS_AS(ent::scan(MeasureKind::log_negativity, SqueezeParams(0.1, 0.0), 0, {-0.1, 0.5},
                              CoefficientSource{}),
                    std::invalid_argument);
  }
  SUBCASE("argmax helpers") {
    ent::EntanglementCurve c;
    c.r_values = {1.0, 2.0, 3.0};
    c.values = {0.5, 0.9, 0.9};
    CHECK(ent::argmax_index(c) == 1);  // first of the tied maxima
    c.values.clear();
    c.r_values.clear();
    CHECK_THROWS_AS(ent::argmax_index(c), std::invalid_argument);
  }
  SUBCASE("refined argmax lands within one coarse step of the coarse argmax") {
    std::vector<double> coarse_grid;
    for (int i = 0; i <= 35; ++i) coarse_grid.push_back(0.5 + 0.1 * i);
    const auto coarse = ent::scan(MeasureKind::ef_paper, SqueezeParams(1.0, 0.0), 2, coarse_grid,
                                  CoefficientSource{});
    const double coarse_best = coarse.r_values[ent::argmax_index(coarse)];
    const auto fine = ent::refined_argmax(MeasureKind::ef_paper, SqueezeParams(1.0, 0.0), 2, 0.5,
                                          4.0, 0.1, 10, CoefficientSource{});
    CHECK(std::abs(fine.r - coarse_best) <= 0.1 + 1e-12);
    CHECK(fine.value >= coarse.values[ent::argmax_index(coarse)] - 1e-12);
  }
}
