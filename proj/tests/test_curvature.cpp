#include "kmns/curvature.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "kmns/geometry.hpp"
#include "support/fields.hpp"

namespace {

using kmns::CurvatureBundle;
using kmns::Jet;
using kmns::JetPoint;
using kmns::Matrix4;
using kmns::MetricData;
using kmns::Point;
using kmns::RadialFn;

constexpr double kLambda = 0.03;

const RadialFn schw_f = [](const Jet& r) { return 1.0 - 2.0 / r; };
const RadialFn desitter_f = [](const Jet& r) {
  return 1.0 - (kLambda / 3.0) * r * r;
};

MetricData<Jet> wavy_md(const Point& p, int order) {
  return kmns::metric_data_from_g(
      testfields::wavy_metric(kmns::seed_point(p, order)));
}

MetricData<Jet> family_md(const RadialFn& f, const Point& p, int order) {
  return kmns::metric_data_from_g(
      kmns::static_spherical_metric(f, kmns::seed_point(p, order)));
}

}  // namespace

TEST_SUITE("curvature") {
  TEST_CASE("flat metric has vanishing connection and curvature") {
    Matrix4<Jet> g{};
    g[0][0] = 1.0;
    for (int i = 1; i < 4; ++i) g[i][i] = -1.0;
    const auto cb = kmns::curvature_at(kmns::metric_data_from_g(g));
    for (int r = 0; r < 4; ++r)
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
          CHECK(cb.gamma[r][m][n].value() == 0.0);
          for (int q = 0; q < 4; ++q)
            CHECK(cb.riemann[r][m][n][q].value() == 0.0);
        }
    CHECK(cb.scalar.value() == 0.0);
  }

  TEST_CASE("vacuum family: Christoffel anchors at r=4, m=1") {
    const auto md = family_md(schw_f, {0.0, 4.0, 1.1, 0.6}, 3);
    const auto cb = kmns::curvature_at(md);
    // f = 1/2: hand-computed values
    CHECK(cb.gamma[1][0][0].value() == doctest::Approx(0.03125));  // ^r_tt
    CHECK(cb.gamma[0][0][1].value() == doctest::Approx(0.125));    // ^t_tr
    CHECK(cb.gamma[1][1][1].value() == doctest::Approx(-0.125));   // ^r_rr
    CHECK(cb.gamma[2][1][2].value() == doctest::Approx(0.25));     // ^th_rth
    CHECK(cb.gamma[1][2][2].value() == doctest::Approx(-2.0));     // ^r_thth
    CHECK(cb.gamma[3][2][3].value() ==
          doctest::Approx(std::cos(1.1) / std::sin(1.1)));
    CHECK(cb.gamma[1][3][3].value() ==
          doctest::Approx(-2.0 * std::sin(1.1) * std::sin(1.1)));
  }

  TEST_CASE("vacuum family is Ricci-flat in both charts") {
    for (const Point p : {Point{0.0, 4.0, 1.1, 0.6}, Point{1.0, 7.5, 0.4, 3.0},
                          Point{0.5, 15.0, 2.6, 5.1}}) {
      const auto cb = kmns::curvature_at(family_md(schw_f, p, 3));
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
          CHECK(cb.ricci[m][n].value() ==
                doctest::Approx(0.0).epsilon(1e-10).scale(1.0));
    }
    for (const Point p : {Point{0.0, 2.3, 2.3, 1.6}, Point{1.0, -3.0, 0.4, 4.7}}) {
      const auto md = kmns::metric_data_from_g(
          kmns::static_spherical_metric_cartesian(schw_f,
                                                  kmns::seed_point(p, 3)));
      const auto cb = kmns::curvature_at(md);
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
          CHECK(cb.ricci[m][n].value() ==
                doctest::Approx(0.0).epsilon(1e-9).scale(1.0));
    }
  }

  TEST_CASE("constant-curvature family: Ricci = Lambda g, R = 4 Lambda") {
    for (const Point p : {Point{0.0, 5.0, 1.2, 0.3}, Point{2.0, 2.0, 0.7, 4.0},
                          Point{0.0, 8.0, 2.1, 1.0}}) {
      const auto md = family_md(desitter_f, p, 3);
      const auto cb = kmns::curvature_at(md);
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
          CHECK(cb.ricci[m][n].value() ==
                doctest::Approx(kLambda * md.g[m][n].value())
                    .epsilon(1e-10)
                    .scale(1.0));
      CHECK(cb.scalar.value() == doctest::Approx(4.0 * kLambda));

      // field equation with stress tensor -Lambda g
      Matrix4<Jet> T;
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) T[m][n] = -kLambda * md.g[m][n];
      CHECK(kmns::einstein_residual(cb, T) < 1e-11);
    }
  }

  TEST_CASE("quadratic invariant matches closed forms") {
    const Point p = {0.0, 4.0, 1.1, 0.6};
    const auto cs = kmns::curvature_at(family_md(schw_f, p, 3));
    CHECK(kmns::kretschmann(cs, family_md(schw_f, p, 3)).value() ==
          doctest::Approx(48.0 / std::pow(4.0, 6)).epsilon(1e-10));

    const auto cd = kmns::curvature_at(family_md(desitter_f, p, 3));
    CHECK(kmns::kretschmann(cd, family_md(desitter_f, p, 3)).value() ==
          doctest::Approx(8.0 * kLambda * kLambda / 3.0).epsilon(1e-10));
  }

  TEST_CASE("Christoffel symbols match a finite-difference oracle") {
    const Point p = {0.2, 0.3, -0.25, 0.4};
    const auto cb = kmns::curvature_at(wavy_md(p, 2));
    const double h = 1e-5;
    // FD derivative of the covariant components
    std::array<Matrix4<double>, 4> dg{};
    for (int l = 0; l < 4; ++l) {
      auto pp = p, pm = p;
      pp[l] += h;
      pm[l] -= h;
      const auto gp = testfields::wavy_metric(pp);
      const auto gm = testfields::wavy_metric(pm);
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) dg[l][m][n] = (gp[m][n] - gm[m][n]) / (2 * h);
    }
    const auto md0 = kmns::metric_data_from_g(testfields::wavy_metric(p));
    for (int r = 0; r < 4; ++r)
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
          double s = 0.0;
          for (int l = 0; l < 4; ++l)
            s += md0.ginv[r][l] * (dg[m][l][n] + dg[n][l][m] - dg[l][m][n]);
          CHECK(cb.gamma[r][m][n].value() ==
                doctest::Approx(0.5 * s).epsilon(1e-8).scale(1.0));
        }
  }

  TEST_CASE("curvature matches finite differences of the connection") {
    const Point p = {0.15, -0.2, 0.3, 0.25};
    const auto cb = kmns::curvature_at(wavy_md(p, 3));
    const double h = 1e-5;
    // independent differentiation of Gamma, quadratic terms from the center
    std::array<std::array<Matrix4<double>, 4>, 4> dGamma{};  // [mu][r][n][s]
    for (int mu = 0; mu < 4; ++mu) {
      auto pp = p, pm = p;
      pp[mu] += h;
      pm[mu] -= h;
      const auto cp = kmns::curvature_at(wavy_md(pp, 2));
      const auto cm = kmns::curvature_at(wavy_md(pm, 2));
      for (int r = 0; r < 4; ++r)
        for (int n = 0; n < 4; ++n)
          for (int s = 0; s < 4; ++s)
            dGamma[mu][r][n][s] =
                (cp.gamma[r][n][s].value() - cm.gamma[r][n][s].value()) /
                (2 * h);
    }
    for (int r = 0; r < 4; ++r)
      for (int sg = 0; sg < 4; ++sg)
        for (int m = 0; m < 4; ++m)
          for (int n = 0; n < 4; ++n) {
            double want = dGamma[m][r][n][sg] - dGamma[n][r][m][sg];
            for (int l = 0; l < 4; ++l)
              want += cb.gamma[r][m][l].value() * cb.gamma[l][n][sg].value() -
                      cb.gamma[r][n][l].value() * cb.gamma[l][m][sg].value();
            CHECK(cb.riemann[r][sg][m][n].value() ==
                  doctest::Approx(want).epsilon(5e-7).scale(1.0));
          }
  }

  TEST_CASE("lowered curvature has the pair symmetries") {
    const Point p = {0.1, 0.4, -0.3, 0.2};
    const auto md = wavy_md(p, 3);
    const auto cb = kmns::curvature_at(md);
    double low[4][4][4][4];
    for (int a = 0; a < 4; ++a)
      for (int s = 0; s < 4; ++s)
        for (int m = 0; m < 4; ++m)
          for (int n = 0; n < 4; ++n) {
            double acc = 0.0;
            for (int r = 0; r < 4; ++r)
              acc += md.g[a][r].value() * cb.riemann[r][s][m][n].value();
            low[a][s][m][n] = acc;
          }
    for (int a = 0; a < 4; ++a)
      for (int s = 0; s < 4; ++s)
        for (int m = 0; m < 4; ++m)
          for (int n = 0; n < 4; ++n) {
            CHECK(low[a][s][m][n] ==
                  doctest::Approx(-low[a][s][n][m]).epsilon(1e-11).scale(1.0));
            CHECK(low[a][s][m][n] ==
                  doctest::Approx(-low[s][a][m][n]).epsilon(1e-11).scale(1.0));
            CHECK(low[a][s][m][n] ==
                  doctest::Approx(low[m][n][a][s]).epsilon(1e-11).scale(1.0));
            // cyclic identity over the last three slots
            CHECK(low[a][s][m][n] + low[a][m][n][s] + low[a][n][s][m] ==
                  doctest::Approx(0.0).epsilon(1e-11).scale(1.0));
          }
  }

  TEST_CASE("covariant divergence of the field tensor vanishes identically") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int trial = 0; trial < 6; ++trial) {
      const Point p = {u(rng), u(rng), u(rng), u(rng)};
      const auto md = wavy_md(p, 3);
      const auto div = kmns::bianchi_contracted(kmns::curvature_at(md), md);
      for (int n = 0; n < 4; ++n)
        CHECK(div[n] == doctest::Approx(0.0).epsilon(1e-10).scale(1.0));
    }
    // and on the curved family in spherical coordinates
    const auto md = family_md(desitter_f, {0.0, 5.0, 1.2, 0.3}, 3);
    const auto div = kmns::bianchi_contracted(kmns::curvature_at(md), md);
    for (int n = 0; n < 4; ++n)
      CHECK(div[n] == doctest::Approx(0.0).epsilon(1e-10).scale(1.0));
  }
}
