#include "kmns/geometry.hpp"

#include <cmath>

#include "doctest.h"
#include "kmns/errors.hpp"

namespace {

using kmns::FunctionMetric;
using kmns::FunctionVector;
using kmns::Jet;
using kmns::JetPoint;
using kmns::kJetCoeffs;
using kmns::Matrix4;
using kmns::Point;
using kmns::RadialFn;

const RadialFn schw_f = [](const Jet& r) { return 1.0 - 2.0 / r; };
const RadialFn desitter_f = [](const Jet& r) {
  return 1.0 - (0.03 / 3.0) * r * r;
};

void check_jets_close(const Jet& a, const Jet& b, double tol) {
  for (int k = 0; k < kJetCoeffs; ++k)
    CHECK(a.coeff(k) == doctest::Approx(b.coeff(k)).epsilon(tol).scale(1.0));
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("chart transitions round-trip at jet level") {
    const Point sph = {0.7, 3.2, 1.1, 2.4};
    const JetPoint s = kmns::seed_point(sph, 3);
    const JetPoint back = kmns::cartesian_to_spherical(
        kmns::spherical_to_cartesian(s));
    for (int i = 0; i < 4; ++i) check_jets_close(back[i], s[i], 1e-12);

    const Point cart = {0.1, 1.4, -2.0, 0.8};
    const JetPoint c = kmns::seed_point(cart, 3);
    const JetPoint back2 = kmns::spherical_to_cartesian(
        kmns::cartesian_to_spherical(c));
    for (int i = 0; i < 4; ++i) check_jets_close(back2[i], c[i], 1e-12);
  }

  TEST_CASE("transition Jacobian matches hand values") {
    // at theta = pi/2, phi = 0: x = r, dx/dr = 1, dy/dphi = r, dz/dtheta = -r
    const Point sph = {0.0, 2.5, M_PI / 2, 0.0};
    const JetPoint y = kmns::spherical_to_cartesian(kmns::seed_point(sph, 2));
    const Matrix4<Jet> J = kmns::jacobian_of(y);
    CHECK(J[1][1].value() == doctest::Approx(1.0));   // dx/dr
    CHECK(J[2][3].value() == doctest::Approx(2.5));   // dy/dphi
    CHECK(J[3][2].value() == doctest::Approx(-2.5));  // dz/dtheta
    CHECK(J[1][2].value() == doctest::Approx(0.0).scale(1.0));
    CHECK(J[0][0].value() == doctest::Approx(1.0));
  }

  TEST_CASE("Cartesian closed form equals the pulled-back spherical family") {
    const FunctionMetric sph_metric("spherical", [](const JetPoint& x) {
      return kmns::static_spherical_metric(schw_f, x);
    });
    for (const Point cart : {Point{0.3, 2.3, 2.3, 1.6},
                             Point{1.0, -3.0, 0.4, 0.7},
                             Point{0.0, 0.5, -2.8, 2.2}}) {
      const JetPoint c = kmns::seed_point(cart, 3);
      const Matrix4<Jet> direct =
          kmns::static_spherical_metric_cartesian(schw_f, c);
      const Matrix4<Jet> pulled =
          kmns::pullback_metric(sph_metric, kmns::cartesian_to_spherical(c));
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
          // pullback lost one jet order to the Jacobian; compare through 2
          CHECK(pulled[mu][nu].order() == 2);
          const auto& T = kmns::detail::jet_tables();
          for (int k = 0; k < T.deg_start[3]; ++k)
            CHECK(direct[mu][nu].coeff(k) ==
                  doctest::Approx(pulled[mu][nu].coeff(k))
                      .epsilon(1e-11)
                      .scale(1.0));
        }
    }
  }

  TEST_CASE("mass-parameter anchor in both charts") {
    // f = 1 - 2m/r with m = 1 at r = 4 gives g_tt = 1/2
    const JetPoint s = kmns::seed_point({0.0, 4.0, 1.0, 0.5}, 2);
    const Matrix4<Jet> gs = kmns::static_spherical_metric(schw_f, s);
    CHECK(gs[0][0].value() == doctest::Approx(0.5));
    CHECK(gs[1][1].value() == doctest::Approx(-2.0));
    CHECK(gs[2][2].value() == doctest::Approx(-16.0));

    const JetPoint c = kmns::seed_point({0.0, 0.0, 0.0, 4.0}, 2);
    const Matrix4<Jet> gc = kmns::static_spherical_metric_cartesian(schw_f, c);
    CHECK(gc[0][0].value() == doctest::Approx(0.5));
    CHECK(gc[3][3].value() == doctest::Approx(-2.0));  // radial direction
    CHECK(gc[1][1].value() == doctest::Approx(-1.0));  // tangential
    CHECK(gc[2][2].value() == doctest::Approx(-1.0));
  }

  TEST_CASE("validated metric data inverts in jet arithmetic") {
    const FunctionMetric m("spherical", [](const JetPoint& x) {
      return kmns::static_spherical_metric(desitter_f, x);
    });
    const auto md = kmns::metric_data_at(m, {0.0, 5.0, 1.2, 0.3}, 2);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        Jet s;
        for (int k = 0; k < 4; ++k) s += md.g[r][k] * md.ginv[k][c];
        const double want = (r == c) ? 1.0 : 0.0;
        CHECK(s.value() == doctest::Approx(want).epsilon(1e-12).scale(1.0));
        for (int mu = 0; mu < 4; ++mu)
          CHECK(s.d1(mu) == doctest::Approx(0.0).epsilon(1e-11).scale(1.0));
      }
    CHECK(md.det_sign == -1.0);
    // sqrt|det| = r^2 sin(theta) for the family
    CHECK(md.sqrt_abs_det.value() ==
          doctest::Approx(25.0 * std::sin(1.2)).epsilon(1e-12));
  }

  TEST_CASE("domain guards reject axis and origin") {
    const JetPoint axis = kmns::seed_point({0.0, 0.0, 0.0, 2.0}, 1);
    CHECK_THROWS_AS(kmns::cartesian_to_spherical(axis),
                    kmns::chart_domain_error);
    const JetPoint origin = kmns::seed_point({0.0, 0.0, 0.0, 0.0}, 1);
    CHECK_THROWS_AS(kmns::static_spherical_metric_cartesian(schw_f, origin),
                    kmns::chart_domain_error);
  }

  TEST_CASE("vector pushforward reproduces the rotation generators") {
    // about the first spatial axis: X = y d/dz - z d/dy in Cartesian
    const FunctionVector rot_x_cart([](const JetPoint& c) {
      return JetPoint{Jet(0.0), Jet(0.0), -c[3], c[2]};
    });
    const Point sph = {0.2, 3.0, 0.9, 1.7};
    const JetPoint s = kmns::seed_point(sph, 3);
    const JetPoint pushed =
        kmns::pushforward_vector(rot_x_cart, kmns::spherical_to_cartesian(s));
    // closed form in spherical coordinates: (0, 0, -sin phi, -cot th cos phi)
    const double th = sph[2], ph = sph[3];
    CHECK(pushed[0].value() == doctest::Approx(0.0).scale(1.0));
    CHECK(pushed[1].value() == doctest::Approx(0.0).scale(1.0));
    CHECK(pushed[2].value() == doctest::Approx(-std::sin(ph)));
    CHECK(pushed[3].value() ==
          doctest::Approx(-std::cos(th) / std::sin(th) * std::cos(ph)));
  }

  TEST_CASE("diagonal coframe is orthonormal for the family metric") {
    const JetPoint s = kmns::seed_point({0.0, 6.0, 1.3, 2.0}, 2);
    const Matrix4<Jet> e = kmns::static_spherical_coframe(schw_f, s);
    const Matrix4<Jet> g = kmns::static_spherical_metric(schw_f, s);
    const double eta[4] = {1.0, -1.0, -1.0, -1.0};
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        Jet s2;
        for (int a = 0; a < 4; ++a) s2 += eta[a] * e[a][mu] * e[a][nu];
        check_jets_close(s2, g[mu][nu], 1e-12);
      }
  }
}
