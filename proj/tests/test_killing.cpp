#include "kmns/killing.hpp"

#include <cmath>

#include "doctest.h"
#include "kmns/errors.hpp"
#include "kmns/geometry.hpp"

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

struct PointBundle {
  MetricData<Jet> md;
  CurvatureBundle cb;
  JetPoint x;
};

PointBundle family_bundle(const RadialFn& f, const Point& p) {
  PointBundle pb;
  pb.x = kmns::seed_point(p, 3);
  pb.md = kmns::metric_data_from_g(kmns::static_spherical_metric(f, pb.x));
  pb.cb = kmns::curvature_at(pb.md);
  return pb;
}

PointBundle minkowski_bundle(const Point& p) {
  PointBundle pb;
  pb.x = kmns::seed_point(p, 3);
  Matrix4<Jet> g{};
  g[0][0] = 1.0;
  for (int i = 1; i < 4; ++i) g[i][i] = -1.0;
  pb.md = kmns::metric_data_from_g(g);
  pb.cb = kmns::curvature_at(pb.md);
  return pb;
}

Matrix4<Jet> stress_of_lambda(const MetricData<Jet>& md) {
  Matrix4<Jet> T{};
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) T[m][n] = -kLambda * md.g[m][n];
  return T;
}

// the ten flat-space symmetry generators in the Cartesian chart
std::array<JetPoint, 10> flat_generators(const JetPoint& x) {
  std::array<JetPoint, 10> gens{};
  for (int mu = 0; mu < 4; ++mu) gens[std::size_t(mu)][std::size_t(mu)] = 1.0;
  gens[4] = {Jet{}, Jet{}, -x[3], x[2]};      // rotation about x
  gens[5] = {Jet{}, x[3], Jet{}, -x[1]};      // rotation about y
  gens[6] = {Jet{}, -x[2], x[1], Jet{}};      // rotation about z
  gens[7] = {x[1], x[0], Jet{}, Jet{}};       // boost along x
  gens[8] = {x[2], Jet{}, x[0], Jet{}};       // boost along y
  gens[9] = {x[3], Jet{}, Jet{}, x[0]};       // boost along z
  return gens;
}

JetPoint spherical_dt(const JetPoint&) {
  return {Jet{1.0}, Jet{}, Jet{}, Jet{}};
}
JetPoint spherical_dphi(const JetPoint&) {
  return {Jet{}, Jet{}, Jet{}, Jet{1.0}};
}
JetPoint spherical_rot_x(const JetPoint& x) {
  const Jet cot_theta = kmns::cos(x[2]) * kmns::inv(kmns::sin(x[2]));
  return {Jet{}, Jet{}, -kmns::sin(x[3]), -cot_theta * kmns::cos(x[3])};
}
JetPoint radial_stretch(const JetPoint& x) {
  return {Jet{}, x[1], Jet{}, Jet{}};
}

const std::array<Point, 4> kVacuumPoints = {
    Point{0.2, 4.0, 1.1, 0.7}, Point{1.0, 9.0, 2.0, 3.0},
    Point{0.0, 3.0, 0.8, 5.5}, Point{0.5, 15.0, 2.6, 5.1}};

const std::array<Point, 2> kLambdaPoints = {Point{0.0, 5.0, 1.2, 0.3},
                                            Point{0.4, 2.0, 2.2, 4.0}};

}  // namespace

TEST_SUITE("killing") {
  TEST_CASE("flat chart: all ten generators are exact symmetries") {
    for (const Point p : {Point{0.3, -0.7, 1.1, 0.4}, Point{1.0, 2.0, -1.0, 0.5},
                          Point{0.0, 0.0, 0.0, 0.0}}) {
      const auto pb = minkowski_bundle(p);
      const Matrix4<Jet> T{};  // vacuum
      for (const JetPoint& X : flat_generators(pb.x)) {
        CHECK(kmns::killing_residual_at(pb.md, X) <= 1e-14);
        const auto lem = kmns::lemma_residuals_at(pb.md, pb.cb, X);
        CHECK(lem.lorenz <= 1e-14);
        CHECK(lem.wave_ricci <= 1e-14);
        const auto wav = kmns::wave_residuals_at(pb.md, pb.cb, X, T);
        CHECK(wav.wave <= 1e-14);
        CHECK(wav.lhe_det <= 1e-14);
        const auto max = kmns::maxwell_residuals_at(pb.md, pb.cb, X, T);
        CHECK(max.dF <= 1e-14);
        CHECK(max.deltaF <= 1e-14);
        CHECK(max.dirac_eq <= 1e-14);
        CHECK(max.two_route <= 1e-14);
        CHECK(kmns::mv_norm(max.J) <= 1e-14);
        CHECK(kmns::current_conservation_at(pb.md, X) <= 1e-14);
      }
    }
  }

  TEST_CASE("vacuum family: stationary and axial generators pass") {
    const Matrix4<Jet> T{};
    for (const Point& p : kVacuumPoints) {
      const auto pb = family_bundle(schw_f, p);
      for (auto* gen : {&spherical_dt, &spherical_dphi, &spherical_rot_x}) {
        const JetPoint X = gen(pb.x);
        CHECK(kmns::killing_residual_at(pb.md, X) <= 1e-10);
        const auto lem = kmns::lemma_residuals_at(pb.md, pb.cb, X);
        CHECK(lem.lorenz <= 1e-9);
        CHECK(lem.wave_ricci <= 1e-8);
        const auto wav = kmns::wave_residuals_at(pb.md, pb.cb, X, T);
        CHECK(wav.wave <= 1e-8);
        CHECK(wav.lhe_det <= 1e-12);
        const auto max = kmns::maxwell_residuals_at(pb.md, pb.cb, X, T);
        CHECK(max.dF <= 1e-10);
        CHECK(max.deltaF <= 1e-7);
        CHECK(max.dirac_eq <= max.dF + max.deltaF + 1e-12);
        CHECK(max.two_route <= 1e-8);
        CHECK(kmns::current_conservation_at(pb.md, X) <= 1e-8);
      }
    }
  }

  TEST_CASE("vacuum family: radial stretch is rejected as a symmetry") {
    const auto pb = family_bundle(schw_f, {0.2, 4.0, 1.1, 0.7});
    const double resid = kmns::killing_residual_at(pb.md, radial_stretch(pb.x));
    CHECK(resid > 0.1);
    // theta-theta entry of the symmetry defect dominates: r d_r(-r^2) = -2 r^2
    CHECK(resid == doctest::Approx(32.0));
  }

  TEST_CASE("constant-curvature family: wave equation with source holds") {
    for (const Point& p : kLambdaPoints) {
      const auto pb = family_bundle(desitter_f, p);
      const Matrix4<Jet> T = stress_of_lambda(pb.md);
      const JetPoint X = spherical_dt(pb.x);
      CHECK(kmns::killing_residual_at(pb.md, X) <= 1e-10);
      const auto lem = kmns::lemma_residuals_at(pb.md, pb.cb, X);
      CHECK(lem.lorenz <= 1e-9);
      CHECK(lem.wave_ricci <= 1e-8);
      const auto wav = kmns::wave_residuals_at(pb.md, pb.cb, X, T);
      CHECK(wav.wave <= 1e-8);
      CHECK(wav.lhe_det <= 1e-12);
      CHECK(kmns::current_conservation_at(pb.md, X) <= 1e-8);
    }
  }

  TEST_CASE("constant-curvature family: current value and two routes agree") {
    const auto pb = family_bundle(desitter_f, {0.0, 5.0, 1.2, 0.3});
    const Matrix4<Jet> T = stress_of_lambda(pb.md);
    const auto max =
        kmns::maxwell_residuals_at(pb.md, pb.cb, spherical_dt(pb.x), T);
    CHECK(max.dF <= 1e-10);
    CHECK(max.deltaF <= 1e-7);
    CHECK(max.dirac_eq <= max.dF + max.deltaF + 1e-12);
    CHECK(max.two_route <= 1e-8);
    // A = f dt with f(5) = 0.75: current (4L - 2L) A, curvature part 4L A
    CHECK(max.J.c[1] == doctest::Approx(2.0 * kLambda * 0.75));
    CHECK(max.J_s.c[1] == doctest::Approx(4.0 * kLambda * 0.75));
  }

  TEST_CASE("field-equation determinant flags a wrong source") {
    const auto pb = family_bundle(desitter_f, {0.0, 5.0, 1.2, 0.3});
    const Matrix4<Jet> T{};  // wrong: vacuum source on a Lambda background
    const auto wav =
        kmns::wave_residuals_at(pb.md, pb.cb, spherical_dt(pb.x), T);
    // mixed matrix becomes -Lambda * identity
    CHECK(wav.lhe_det ==
          doctest::Approx(std::pow(kLambda, 4)).epsilon(1e-6));
    CHECK(wav.lhe_det > 1e-7);
    CHECK(wav.wave > 1e-3);
  }

  TEST_CASE("coframe split: global flat coframes give zero torsion source") {
    const Matrix4<Jet> T{};
    for (const Point p :
         {Point{0.3, -0.7, 1.1, 0.4}, Point{1.0, 2.0, -1.0, 0.5}}) {
      const auto pb = minkowski_bundle(p);

      Matrix4<Jet> identity{};
      for (int a = 0; a < 4; ++a) identity[a][a] = 1.0;

      // constant pseudo-rotation mixing the 0 and 1 legs stays admissible
      const double ch = std::cosh(0.3), sh = std::sinh(0.3);
      Matrix4<Jet> boosted{};
      boosted[0][0] = ch;
      boosted[0][1] = -sh;
      boosted[1][0] = -sh;
      boosted[1][1] = ch;
      boosted[2][2] = 1.0;
      boosted[3][3] = 1.0;

      const auto gens = flat_generators(pb.x);
      for (const Matrix4<Jet>* frame : {&identity, &boosted}) {
        for (const JetPoint& X : {gens[6], gens[7], gens[0]}) {
          const auto tp =
              kmns::teleparallel_at(pb.md, pb.cb, X, T, *frame, 1e-8);
          CHECK(tp.ortho <= 1e-14);
          CHECK(tp.gauge <= 1e-14);
          CHECK(tp.gauge_ok);
          CHECK(tp.residual <= 1e-12);
        }
      }
    }
  }

  TEST_CASE("coframe split: diagonal curved coframe fails the gauge test") {
    for (const RadialFn* f : {&schw_f, &desitter_f}) {
      const Point p{0.2, 4.0, 1.1, 0.7};
      const auto pb = family_bundle(*f, p);
      const Matrix4<Jet> frame = kmns::static_spherical_coframe(*f, pb.x);
      const auto tp = kmns::teleparallel_at(pb.md, pb.cb, spherical_dt(pb.x),
                                            Matrix4<Jet>{}, frame, 1e-8);
      CHECK(tp.ortho <= 1e-12);  // it does encode the metric...
      CHECK_FALSE(tp.gauge_ok);  // ...but its legs are not divergence-free
      CHECK(tp.gauge > 0.1);
      CHECK(tp.residual == 0.0);
    }
  }

  TEST_CASE("coframe split: a rescaled coframe is rejected outright") {
    const auto pb = family_bundle(schw_f, {0.2, 4.0, 1.1, 0.7});
    Matrix4<Jet> frame = kmns::static_spherical_coframe(schw_f, pb.x);
    for (int a = 0; a < 4; ++a)
      for (int mu = 0; mu < 4; ++mu) frame[a][mu] = 1.1 * frame[a][mu];
    CHECK_THROWS_AS(kmns::teleparallel_at(pb.md, pb.cb, spherical_dt(pb.x),
                                          Matrix4<Jet>{}, frame, 1e-8),
                    kmns::config_error);
  }
}
