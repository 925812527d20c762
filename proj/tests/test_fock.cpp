#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "oracles.hpp"
#include "tmsv/fock.hpp"

using namespace tmsv;
using fock::FockState2;
using fock::Ladder;
using fock::Mode;

TEST_CASE("tmsv construction") {
  SUBCASE("r=0 is the two-mode vacuum") {
    auto s = fock::tmsv(SqueezeParams(0.0, 0.0), 4);
    CHECK(s.at(0, 0) == std::complex<double>{1.0, 0.0});
    CHECK(s.norm2() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.tail_bound == 0.0);
  }
  SUBCASE("amplitude ratio is tanh r") {
    auto s = fock::tmsv(SqueezeParams(0.5, 0.3), 40);
    CHECK(std::abs(s.at(1, 1) / s.at(0, 0)) == doctest::Approx(std::tanh(0.5)).epsilon(1e-13));
    CHECK(std::arg(s.at(1, 1) / s.at(0, 0)) == doctest::Approx(0.3).epsilon(1e-13));
  }
  SUBCASE("norm approaches 1 geometrically; tail bound is exact") {
    for (int cutoff : {20, 40, 80}) {
      auto s = fock::tmsv(SqueezeParams(0.8, 0.0), cutoff);
      double t2 = std::pow(std::tanh(0.8), 2);
      CHECK(s.norm2() == doctest::Approx(1.0 - std::pow(t2, cutoff + 1)).epsilon(1e-12));
      CHECK(s.tail_bound == doctest::Approx(std::pow(t2, cutoff + 1)).epsilon(1e-12));
    }
  }
  SUBCASE("rejects cutoff with excessive tail") {
    CHECK_THROWS_AS(fock::tmsv(SqueezeParams(1.0, 0.0), 5), numerical_error);
  }
}

TEST_CASE("suggest_cutoff meets its own bound") {
  for (double r : {0.2, 0.8, 1.2})
    for (int k : {0, 1, 4}) {
      int n = fock::suggest_cutoff(r, k, 1e-12);
      double t2 = std::pow(std::tanh(r), 2);
      CHECK(std::pow(t2, n + 1) * std::pow(n + k, k) < 1e-12);
      if (n > 1) CHECK(std::pow(t2, n) * std::pow(n - 1.0 + k, k) >= 1e-12);
    }
}

TEST_CASE("apply_ladder basics") {
  FockState2 vac(4);
  vac.at(0, 0) = 1.0;
  SUBCASE("create on vacuum") {
    auto s = fock::apply_ladder(vac, Mode::a, Ladder::create, 1);
    CHECK(s.at(1, 0) == std::complex<double>{1.0, 0.0});
    CHECK(s.norm2() == doctest::Approx(1.0));
  }
  SUBCASE("create twice: sqrt(2) amplitude") {
    auto s = fock::apply_ladder(vac, Mode::a, Ladder::create, 2);
    CHECK(s.at(2, 0).real() == doctest::Approx(std::numbers::sqrt2).epsilon(1e-14));
  }
  SUBCASE("annihilating vacuum flags the zero vector") {
    auto s = fock::apply_ladder(vac, Mode::b, Ladder::annihilate, 1);
    CHECK(s.flagged_zero);
    CHECK(s.norm2() == 0.0);
  }
  SUBCASE("creation past the cutoff errors") {
    FockState2 top(3);
    top.at(3, 0) = 1.0;
    CHECK_THROWS_AS(fock::apply_ladder(top, Mode::a, Ladder::create, 1), numerical_error);
  }
}

TEST_CASE("subtraction from mode b equals addition to mode a (up to phase)") {
  for (double r : {0.5, 1.2})
    for (int k = 1; k <= 4; ++k) {
      int cutoff = fock::suggest_cutoff(r, k, 1e-13);
      auto xi = fock::tmsv(SqueezeParams(r, 0.7), cutoff);
      auto sub = fock::apply_ladder(xi, Mode::b, Ladder::annihilate, k).normalized();
      auto add = fock::apply_ladder(xi, Mode::a, Ladder::create, k).normalized();
      CHECK(fock::fidelity(sub, add) == doctest::Approx(1.0).epsilon(1e-10));
      // both live exactly on the band n_a - n_b = k
      for (int na = 0; na <= cutoff; ++na)
        for (int nb = 0; nb <= cutoff; ++nb)
          if (na - nb != k) {
            CHECK(std::abs(sub.at(na, nb)) == 0.0);
            CHECK(std::abs(add.at(na, nb)) == 0.0);
          }
    }
}

TEST_CASE("herald_subtract") {
  SUBCASE("transmittance 1 never clicks") {
    auto xi = fock::tmsv(SqueezeParams(0.5, 0.0), 40);
    auto [out, p] = fock::herald_subtract(xi, {1.0, 1, 1});
    CHECK(p == 0.0);
    CHECK(out.flagged_zero);
  }
  SUBCASE("vacuum input never clicks") {
    FockState2 vac(4);
    vac.at(0, 0) = 1.0;
    auto [out, p] = fock::herald_subtract(vac, {0.99, 1, 1});
    CHECK(p == 0.0);
    CHECK(out.flagged_zero);
  }
  SUBCASE("high-transmittance herald approximates ideal subtraction") {
    auto xi = fock::tmsv(SqueezeParams(0.5, 0.4), 60);
    auto [out, p] = fock::herald_subtract(xi, {0.99, 1, 1});
    CHECK(p > 0.0);
    CHECK(p < 1.0);
    auto ideal = fock::apply_ladder(xi, Mode::a, Ladder::annihilate, 1).normalized();
    CHECK(fock::fidelity(out, ideal) >= 0.99);
  }
  SUBCASE("heralding probability decreases toward transmittance 1") {
    auto xi = fock::tmsv(SqueezeParams(0.5, 0.0), 60);
    auto [o1, p90] = fock::herald_subtract(xi, {0.90, 1, 1});
    auto [o2, p99] = fock::herald_subtract(xi, {0.99, 1, 1});
    CHECK(p90 > p99);
  }
  SUBCASE("two stages approximate double subtraction") {
    auto xi = fock::tmsv(SqueezeParams(0.6, 0.0), 60);
    auto [out, p] = fock::herald_subtract(xi, {0.995, 2, 1});
    auto ideal = fock::apply_ladder(xi, Mode::a, Ladder::annihilate, 2).normalized();
    CHECK(p > 0.0);
    CHECK(fock::fidelity(out, ideal) >= 0.99);
  }
  SUBCASE("input must be normalized; parameters validated") {
    auto xi = fock::tmsv(SqueezeParams(0.5, 0.0), 40);
    auto bad = xi;
    bad.at(0, 0) *= 2.0;
    CHECK_THROWS_AS(fock::herald_subtract(bad, {0.99, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(fock::herald_subtract(xi, {0.0, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(fock::herald_subtract(xi, {1.5, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(fock::herald_subtract(xi, {0.99, 0, 1}), std::invalid_argument);
  }
}

TEST_CASE("schmidt_coefficients") {
  SUBCASE("two-mode vacuum") {
    FockState2 vac(3);
    vac.at(0, 0) = 1.0;
    auto s = fock::schmidt_coefficients(vac);
    CHECK(s.k == 0);
    REQUIRE(s.coefficients.size() == 4);
    CHECK(s.coefficients[0] == doctest::Approx(1.0));
  }
  SUBCASE("TMSV is geometric on the main band") {
    auto xi = fock::tmsv(SqueezeParams(0.7, 1.1), 50);
    auto s = fock::schmidt_coefficients(xi);
    CHECK(s.k == 0);
    double t = std::tanh(0.7);
    for (int m = 1; m <= 10; ++m)
      CHECK(s.coefficients[m] / s.coefficients[m - 1] == doctest::Approx(t).epsilon(1e-12));
    CHECK(s.ramp_theta == doctest::Approx(1.1).epsilon(1e-12));
  }
  SUBCASE("photon-added TMSV: ladder-product weights and closed-form norm") {
    for (int k = 1; k <= 4; ++k)
      for (double r : {0.5, 1.2}) {
        int cutoff = fock::suggest_cutoff(r, k, 1e-13);
        auto xi = fock::tmsv(SqueezeParams(r, 0.0), cutoff);
        auto raised = fock::apply_ladder(xi, Mode::a, Ladder::create, k);
        // brute-force norm^2 * cosh^2 r  vs  closed form k!/(1-t^2)^{k+1}
        double t2 = std::pow(std::tanh(r), 2);
        double kfact = 1.0;
        for (int j = 2; j <= k; ++j) kfact *= j;
        double closed = kfact / std::pow(1.0 - t2, k + 1);
        CHECK(raised.norm2() * std::pow(std::cosh(r), 2) ==
              doctest::Approx(closed).epsilon(1e-10));
        auto s = fock::schmidt_coefficients(raised);
        CHECK(s.k == k);
        // c_m ratio: tanh r * sqrt((m+k+1)(m+1) ... ) -> c_{m+1}/c_m = t sqrt((m+1+k)/(m+1))
        for (int m = 0; m <= 6; ++m)
          CHECK(s.coefficients[m + 1] / s.coefficients[m] ==
                doctest::Approx(std::sqrt(t2) * std::sqrt((m + 1.0 + k) / (m + 1.0)))
                    .epsilon(1e-10));
      }
  }
  SUBCASE("rejects multi-band states") {
    FockState2 mixed(3);
    mixed.at(0, 0) = std::numbers::sqrt2 / 2.0;
    mixed.at(1, 0) = std::numbers::sqrt2 / 2.0;
    CHECK_THROWS_AS(fock::schmidt_coefficients(mixed), std::invalid_argument);
  }
}

TEST_CASE("fidelity") {
  auto xi = fock::tmsv(SqueezeParams(0.6, 0.2), 40);
  CHECK(fock::fidelity(xi, xi) == doctest::Approx(1.0).epsilon(1e-13));
  FockState2 e10(2), e01(2);
  e10.at(1, 0) = 1.0;
  e01.at(0, 1) = 1.0;
  CHECK(fock::fidelity(e10, e01) == 0.0);
  FockState2 other(3);
  other.at(0, 0) = 1.0;
  CHECK_THROWS_AS(fock::fidelity(e10, other), std::invalid_argument);
}

TEST_CASE("wavefunction_from_fock") {
  SUBCASE("two-mode vacuum is the round Gaussian") {
    FockState2 vac(2);
    vac.at(0, 0) = 1.0;
    auto v = fock::wavefunction_from_fock(vac, 0.0, 0.0);
    CHECK(v.real() == doctest::Approx(1.0 / std::sqrt(std::numbers::pi)).epsilon(1e-10));
    CHECK(v.imag() == 0.0);
    auto w = fock::wavefunction_from_fock(vac, 0.7, -0.4);
    CHECK(w.real() ==
          doctest::Approx(std::exp(-0.5 * (0.49 + 0.16)) / std::sqrt(std::numbers::pi))
              .epsilon(1e-12));
  }
  SUBCASE("|1,0> is odd in x") {
    FockState2 s(2);
    s.at(1, 0) = 1.0;
    for (double x : {0.3, 1.1, 2.0}) {
      auto plus = fock::wavefunction_from_fock(s, x, 0.5);
      auto minus = fock::wavefunction_from_fock(s, -x, 0.5);
      CHECK(plus.real() == doctest::Approx(-minus.real()).epsilon(1e-12));
    }
  }
}

TEST_CASE("cutoff convergence: doubling the cutoff barely moves results") {
  for (double r : {0.5, 0.9}) {
    int n1 = fock::suggest_cutoff(r, 1, 1e-10);
    auto xi1 = fock::tmsv(SqueezeParams(r, 0.5), n1);
    auto xi2 = fock::tmsv(SqueezeParams(r, 0.5), 2 * n1);
    auto raised1 = fock::apply_ladder(xi1, Mode::a, Ladder::create, 1);
    auto s1 = fock::schmidt_coefficients(raised1);
    auto s2 = fock::schmidt_coefficients(
        fock::apply_ladder(xi2, Mode::a, Ladder::create, 1));
    // the raised state's own (recomputed) tail bound is the relevant scale
    for (std::size_t m = 0; m < 5; ++m)
      CHECK(std::abs(s1.coefficients[m] - s2.coefficients[m]) < 10.0 * raised1.tail_bound + 1e-12);
  }
}
