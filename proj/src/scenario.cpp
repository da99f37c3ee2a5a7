#include "kmns/scenario.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "kmns/curvature.hpp"
#include "kmns/errors.hpp"
#include "kmns/killing.hpp"

namespace kmns {

namespace {

constexpr unsigned kValidationSeed = 9176;
constexpr double kFieldEquationTol = 1e-8;
constexpr double kSymmetryTol = 1e-10;

constexpr std::array<int, 4> kHaltonBases = {2, 3, 5, 7};

double halton(std::uint64_t i, int base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * double(i % std::uint64_t(base));
    i /= std::uint64_t(base);
  }
  return r;
}

// ---------------------------------------------------------------------------
// generator component functions

JetPoint cart_const(int mu, const JetPoint&) {
  JetPoint v{};
  v[std::size_t(mu)] = 1.0;
  return v;
}

JetPoint cart_rot_x(const JetPoint& x) { return {Jet{}, Jet{}, -x[3], x[2]}; }
JetPoint cart_rot_y(const JetPoint& x) { return {Jet{}, x[3], Jet{}, -x[1]}; }
JetPoint cart_rot_z(const JetPoint& x) { return {Jet{}, -x[2], x[1], Jet{}}; }
JetPoint cart_boost_x(const JetPoint& x) { return {x[1], x[0], Jet{}, Jet{}}; }
JetPoint cart_boost_y(const JetPoint& x) { return {x[2], Jet{}, x[0], Jet{}}; }
JetPoint cart_boost_z(const JetPoint& x) { return {x[3], Jet{}, Jet{}, x[0]}; }
JetPoint cart_radial(const JetPoint& x) { return {Jet{}, x[1], x[2], x[3]}; }

JetPoint sph_dt(const JetPoint&) { return {Jet{1.0}, Jet{}, Jet{}, Jet{}}; }
JetPoint sph_dphi(const JetPoint&) { return {Jet{}, Jet{}, Jet{}, Jet{1.0}}; }
JetPoint sph_rot_x(const JetPoint& x) {
  const Jet cot_theta = cos(x[2]) * inv(sin(x[2]));
  return {Jet{}, Jet{}, -sin(x[3]), -cot_theta * cos(x[3])};
}
JetPoint sph_rot_y(const JetPoint& x) {
  const Jet cot_theta = cos(x[2]) * inv(sin(x[2]));
  return {Jet{}, Jet{}, cos(x[3]), -cot_theta * sin(x[3])};
}
JetPoint sph_radial(const JetPoint& x) { return {Jet{}, x[1], Jet{}, Jet{}}; }

ScalarFn unit_factor() {
  return [](const JetPoint&) { return Jet{1.0}; };
}

// the lapse profile as a field on the rectangular chart
ScalarFn lapse_factor(const RadialFn& f) {
  return [f](const JetPoint& x) {
    const Jet r = sqrt(x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
    return f(r);
  };
}

StressFn vacuum_stress() {
  return [](const JetPoint&, const MetricData<Jet>&) { return Matrix4<Jet>{}; };
}

StressFn constant_curvature_stress(double lambda) {
  return [lambda](const JetPoint&, const MetricData<Jet>& md) {
    Matrix4<Jet> T{};
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) T[std::size_t(m)][n] = -lambda * md.g[std::size_t(m)][n];
    return T;
  };
}

double spatial_radius(const Point& p) {
  return std::sqrt(p[1] * p[1] + p[2] * p[2] + p[3] * p[3]);
}

// ---------------------------------------------------------------------------
// built-in construction (no validation here)

Chart make_cartesian_flat_chart() {
  Chart c;
  c.name = "cartesian";
  c.metric = std::make_shared<FunctionMetric>(
      "cartesian", [](const JetPoint&) {
        Matrix4<Jet> g{};
        g[0][0] = 1.0;
        for (int i = 1; i < 4; ++i) g[std::size_t(i)][i] = -1.0;
        return g;
      });
  c.variables = cartesian_variables();
  c.box = {{{0.0, 1.0}, {-2.0, 2.0}, {-2.0, 2.0}, {-2.0, 2.0}}};
  c.stress = vacuum_stress();
  c.coframe = [](const JetPoint&) {
    Matrix4<Jet> e{};
    for (int a = 0; a < 4; ++a) e[std::size_t(a)][a] = 1.0;
    return e;
  };
  return c;
}

FunctionMetric::DomainFn spherical_domain(double r_min, double r_max) {
  return [r_min, r_max](const Point& p) {
    if (!(p[1] > r_min))
      throw chart_domain_error("radius " + std::to_string(p[1]) +
                               " is at or below the chart's inner limit " +
                               std::to_string(r_min));
    if (r_max > 0.0 && !(p[1] < r_max))
      throw chart_domain_error("radius " + std::to_string(p[1]) +
                               " is at or beyond the chart's outer limit " +
                               std::to_string(r_max));
    if (!(std::abs(std::sin(p[2])) > 1e-6))
      throw chart_domain_error("polar angle too close to the axis");
  };
}

FunctionMetric::DomainFn cartesian_radial_domain(double r_min, double r_max) {
  return [r_min, r_max](const Point& p) {
    const double r = spatial_radius(p);
    if (!(r > r_min))
      throw chart_domain_error("spatial radius " + std::to_string(r) +
                               " is at or below the chart's inner limit " +
                               std::to_string(r_min));
    if (r_max > 0.0 && !(r < r_max))
      throw chart_domain_error("spatial radius " + std::to_string(r) +
                               " is at or beyond the chart's outer limit " +
                               std::to_string(r_max));
  };
}

Chart make_spherical_family_chart(const RadialFn& f, const SampleBox& box,
                                  FunctionMetric::DomainFn domain,
                                  const StressFn& stress, bool with_coframe) {
  Chart c;
  c.name = "spherical";
  c.metric = std::make_shared<FunctionMetric>(
      "spherical",
      [f](const JetPoint& x) { return static_spherical_metric(f, x); },
      std::move(domain));
  c.variables = spherical_variables();
  c.box = box;
  c.stress = stress;
  if (with_coframe)
    c.coframe = [f](const JetPoint& x) {
      return static_spherical_coframe(f, x);
    };
  return c;
}

Chart make_cartesian_family_chart(const RadialFn& f, const SampleBox& box,
                                  FunctionMetric::DomainFn domain,
                                  const StressFn& stress) {
  Chart c;
  c.name = "cartesian";
  c.metric = std::make_shared<FunctionMetric>(
      "cartesian",
      [f](const JetPoint& x) {
        return static_spherical_metric_cartesian(f, x);
      },
      std::move(domain));
  c.variables = cartesian_variables();
  c.box = box;
  c.stress = stress;
  return c;
}

KillingEntry entry(std::string name, VectorFn cart, VectorFn sph, ScalarFn f,
                   bool is_symmetry = true) {
  KillingEntry e;
  e.name = std::move(name);
  if (cart) e.components["cartesian"] = std::move(cart);
  if (sph) e.components["spherical"] = std::move(sph);
  e.declared_f = std::move(f);
  e.is_symmetry = is_symmetry;
  return e;
}

Scenario make_minkowski(const Params& params) {
  if (!params.empty())
    throw config_error("the flat scenario takes no parameters");
  Scenario s;
  s.name = "minkowski";

  s.charts.push_back(make_cartesian_flat_chart());

  const RadialFn unit_f = [](const Jet&) { return Jet{1.0}; };
  SampleBox sph_box = {{{0.0, 1.0},
                        {0.5, 5.0},
                        {0.3, M_PI - 0.3},
                        {0.1, 2.0 * M_PI - 0.1}}};
  s.charts.push_back(make_spherical_family_chart(
      unit_f, sph_box, spherical_domain(1e-6, 0.0), vacuum_stress(),
      /*with_coframe=*/false));

  s.killing.push_back(entry("dt", [](const JetPoint& x) { return cart_const(0, x); }, sph_dt, unit_factor()));
  s.killing.push_back(entry("dx", [](const JetPoint& x) { return cart_const(1, x); }, {}, unit_factor()));
  s.killing.push_back(entry("dy", [](const JetPoint& x) { return cart_const(2, x); }, {}, unit_factor()));
  s.killing.push_back(entry("dz", [](const JetPoint& x) { return cart_const(3, x); }, {}, unit_factor()));
  s.killing.push_back(entry("rot_x", cart_rot_x, sph_rot_x, unit_factor()));
  s.killing.push_back(entry("rot_y", cart_rot_y, sph_rot_y, unit_factor()));
  s.killing.push_back(entry("rot_z", cart_rot_z, sph_dphi, unit_factor()));
  s.killing.push_back(entry("boost_x", cart_boost_x, {}, unit_factor()));
  s.killing.push_back(entry("boost_y", cart_boost_y, {}, unit_factor()));
  s.killing.push_back(entry("boost_z", cart_boost_z, {}, unit_factor()));
  return s;
}

Scenario make_schwarzschild(const Params& params) {
  double m = 1.0;
  for (const auto& [k, v] : params) {
    if (k == "m")
      m = v;
    else
      throw config_error("unknown parameter \"" + k +
                         "\" for the vacuum black-hole scenario (takes: m)");
  }
  if (!(m > 0.0)) throw config_error("parameter m must be positive");

  Scenario s;
  s.name = "schwarzschild";
  s.params["m"] = m;

  const RadialFn f = [m](const Jet& r) { return 1.0 - (2.0 * m) / r; };
  const double r_min = 2.0 * m * (1.0 + 1e-6);

  SampleBox sph_box = {{{0.0, 1.0},
                        {3.0 * m, 20.0 * m},
                        {0.3, M_PI - 0.3},
                        {0.1, 2.0 * M_PI - 0.1}}};
  s.charts.push_back(make_spherical_family_chart(
      f, sph_box, spherical_domain(r_min, 0.0), vacuum_stress(),
      /*with_coframe=*/true));

  SampleBox cart_box = {{{0.0, 1.0},
                         {2.5 * m, 8.0 * m},
                         {2.5 * m, 8.0 * m},
                         {2.5 * m, 8.0 * m}}};
  s.charts.push_back(make_cartesian_family_chart(
      f, cart_box, cartesian_radial_domain(r_min, 0.0), vacuum_stress()));

  s.killing.push_back(entry("dt", [](const JetPoint& x) { return cart_const(0, x); }, sph_dt, lapse_factor(f)));
  s.killing.push_back(entry("dphi", cart_rot_z, sph_dphi, unit_factor()));
  s.killing.push_back(entry("rot_x", cart_rot_x, sph_rot_x, unit_factor()));
  s.killing.push_back(entry("rot_y", cart_rot_y, sph_rot_y, unit_factor()));
  s.killing.push_back(entry("r_dr", cart_radial, sph_radial, {},
                            /*is_symmetry=*/false));
  return s;
}

Scenario make_de_sitter(const Params& params) {
  double lambda = 0.03;
  for (const auto& [k, v] : params) {
    if (k == "lambda")
      lambda = v;
    else
      throw config_error(
          "unknown parameter \"" + k +
          "\" for the constant-curvature scenario (takes: lambda)");
  }
  if (!(lambda > 0.0)) throw config_error("parameter lambda must be positive");

  Scenario s;
  s.name = "de_sitter";
  s.params["lambda"] = lambda;

  const RadialFn f = [lambda](const Jet& r) {
    return 1.0 - (lambda / 3.0) * r * r;
  };
  const double r_h = std::sqrt(3.0 / lambda);
  const StressFn stress = constant_curvature_stress(lambda);

  SampleBox sph_box = {{{0.0, 1.0},
                        {0.2 * r_h, 0.8 * r_h},
                        {0.3, M_PI - 0.3},
                        {0.1, 2.0 * M_PI - 0.1}}};
  s.charts.push_back(make_spherical_family_chart(
      f, sph_box, spherical_domain(1e-3, r_h * (1.0 - 1e-6)), stress,
      /*with_coframe=*/true));

  SampleBox cart_box = {{{0.0, 1.0},
                         {0.10 * r_h, 0.45 * r_h},
                         {0.10 * r_h, 0.45 * r_h},
                         {0.10 * r_h, 0.45 * r_h}}};
  s.charts.push_back(make_cartesian_family_chart(
      f, cart_box, cartesian_radial_domain(1e-6, r_h * (1.0 - 1e-6)), stress));

  s.killing.push_back(entry("dt", [](const JetPoint& x) { return cart_const(0, x); }, sph_dt, lapse_factor(f)));
  s.killing.push_back(entry("dphi", cart_rot_z, sph_dphi, unit_factor()));
  s.killing.push_back(entry("rot_x", cart_rot_x, sph_rot_x, unit_factor()));
  s.killing.push_back(entry("rot_y", cart_rot_y, sph_rot_y, unit_factor()));
  return s;
}

Scenario make_builtin(const std::string& name, const Params& params) {
  if (name == "minkowski") return make_minkowski(params);
  if (name == "schwarzschild") return make_schwarzschild(params);
  if (name == "de_sitter") return make_de_sitter(params);
  std::string known;
  for (const auto& n : builtin_scenario_names())
    known += (known.empty() ? "" : ", ") + n;
  throw config_error("unknown scenario \"" + name + "\" (built-ins: " + known +
                     ")");
}

// ---------------------------------------------------------------------------
// eager validation

std::string point_string(const Point& p) {
  std::ostringstream os;
  os << "(" << p[0] << ", " << p[1] << ", " << p[2] << ", " << p[3] << ")";
  return os.str();
}

void validate_scenario(const Scenario& s) {
  for (const Chart& chart : s.charts) {
    const auto pts = sample_points(chart.box, 50, kValidationSeed);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Point& p = pts[i];
      const MetricData<Jet> md = metric_data_at(*chart.metric, p, 3);
      const CurvatureBundle cb = curvature_at(md);
      const JetPoint x = seed_point(p, 3);
      const Matrix4<Jet> T =
          chart.stress ? chart.stress(x, md) : Matrix4<Jet>{};
      const double resid = einstein_residual(cb, T);
      if (!(resid < kFieldEquationTol))
        throw config_error("scenario \"" + s.name +
                           "\" violates the field equation on chart " +
                           chart.name + " at " + point_string(p) +
                           " (residual " + std::to_string(resid) + ")");

      if (i % 5 != 0) continue;
      for (const KillingEntry& k : s.killing) {
        if (!k.is_symmetry) continue;
        const VectorFn* fn = k.on(chart.name);
        if (!fn) continue;
        const double kr = killing_residual_at(md, (*fn)(x));
        if (!(kr < kSymmetryTol))
          throw config_error("declared symmetry generator \"" + k.name +
                             "\" of scenario \"" + s.name +
                             "\" fails on chart " + chart.name + " at " +
                             point_string(p) + " (residual " +
                             std::to_string(kr) + ")");
      }
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------

const VectorFn* KillingEntry::on(std::string_view chart) const {
  const auto it = components.find(std::string(chart));
  return it == components.end() ? nullptr : &it->second;
}

const Chart* Scenario::find_chart(std::string_view chart_name) const {
  for (const Chart& c : charts)
    if (c.name == chart_name) return &c;
  return nullptr;
}

const KillingEntry& Scenario::find_killing(
    std::string_view killing_name) const {
  for (const KillingEntry& k : killing)
    if (k.name == killing_name) return k;
  std::string known;
  for (const KillingEntry& k : killing)
    known += (known.empty() ? "" : ", ") + k.name;
  throw config_error("scenario \"" + name + "\" has no generator \"" +
                     std::string(killing_name) + "\" (available: " + known +
                     ")");
}

const VectorFn& Scenario::killing_on(std::string_view chart_name,
                                     std::string_view killing_name) const {
  const KillingEntry& k = find_killing(killing_name);
  const VectorFn* fn = k.on(chart_name);
  if (!fn)
    throw config_error("generator \"" + k.name + "\" of scenario \"" + name +
                       "\" has no components on chart " +
                       std::string(chart_name));
  return *fn;
}

std::vector<std::string> builtin_scenario_names() {
  return {"minkowski", "schwarzschild", "de_sitter"};
}

Scenario load_scenario(const std::string& name, const Params& params) {
  Scenario s = make_builtin(name, params);
  validate_scenario(s);
  return s;
}

Scenario load_scenario_json(const std::string& json_text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("scenario JSON is malformed: ") + e.what());
  }
  if (!j.is_object()) throw config_error("scenario JSON must be an object");

  static const std::set<std::string> kAllowed = {
      "name", "params", "killing_fields", "f_expression", "coframe"};
  for (const auto& item : j.items())
    if (!kAllowed.count(item.key()))
      throw config_error("unknown key \"" + item.key() +
                         "\" in scenario JSON");

  if (!j.contains("name") || !j.at("name").is_string())
    throw config_error("scenario JSON requires a string \"name\"");

  Params params;
  if (j.contains("params")) {
    const json& jp = j.at("params");
    if (!jp.is_object())
      throw config_error("\"params\" must be an object with numeric values");
    for (const auto& item : jp.items()) {
      if (!item.value().is_number())
        throw config_error("parameter \"" + item.key() +
                           "\" must be a number");
      params[item.key()] = item.value().get<double>();
    }
  }

  Scenario s = make_builtin(j.at("name").get<std::string>(), params);

  ScalarFn user_factor;
  if (j.contains("f_expression")) {
    if (!j.at("f_expression").is_string())
      throw config_error("\"f_expression\" must be a string");
    const Expression fe = parse_expression(
        j.at("f_expression").get<std::string>(), cartesian_variables());
    user_factor = [fe](const JetPoint& x) { return fe.eval(x); };
  }

  if (j.contains("killing_fields")) {
    const json& jk = j.at("killing_fields");
    if (!jk.is_array())
      throw config_error("\"killing_fields\" must be an array");
    for (const json& jf : jk) {
      if (!jf.is_object())
        throw config_error("each killing_fields entry must be an object");
      for (const auto& item : jf.items())
        if (item.key() != "name" && item.key() != "components")
          throw config_error("unknown key \"" + item.key() +
                             "\" in a killing_fields entry");
      if (!jf.contains("name") || !jf.at("name").is_string() ||
          jf.at("name").get<std::string>().empty())
        throw config_error(
            "each killing_fields entry requires a nonempty string \"name\"");
      const std::string kname = jf.at("name").get<std::string>();
      for (const KillingEntry& existing : s.killing)
        if (existing.name == kname)
          throw config_error("killing field \"" + kname +
                             "\" is already defined by the scenario");
      if (!jf.contains("components") || !jf.at("components").is_array() ||
          jf.at("components").size() != 4)
        throw config_error("killing field \"" + kname +
                           "\" requires \"components\" with 4 expressions");
      std::array<Expression, 4> comp;
      for (int mu = 0; mu < 4; ++mu) {
        const json& jc = jf.at("components").at(std::size_t(mu));
        if (!jc.is_string())
          throw config_error("components of killing field \"" + kname +
                             "\" must be strings");
        comp[std::size_t(mu)] = parse_expression(jc.get<std::string>(),
                                                 s.primary().variables);
      }
      KillingEntry e;
      e.name = kname;
      e.components[s.primary().name] = [comp](const JetPoint& x) {
        return JetPoint{comp[0].eval(x), comp[1].eval(x), comp[2].eval(x),
                        comp[3].eval(x)};
      };
      e.declared_f = user_factor;
      e.is_symmetry = true;
      s.killing.push_back(std::move(e));
    }
  } else if (user_factor) {
    throw config_error(
        "\"f_expression\" requires at least one entry in \"killing_fields\"");
  }

  if (j.contains("coframe")) {
    const json& jc = j.at("coframe");
    if (!jc.is_array() || jc.size() != 4)
      throw config_error("\"coframe\" must be a 4x4 array of expressions");
    std::array<std::array<Expression, 4>, 4> rows;
    for (int a = 0; a < 4; ++a) {
      const json& jr = jc.at(std::size_t(a));
      if (!jr.is_array() || jr.size() != 4)
        throw config_error("\"coframe\" must be a 4x4 array of expressions");
      for (int mu = 0; mu < 4; ++mu) {
        const json& jcell = jr.at(std::size_t(mu));
        if (!jcell.is_string())
          throw config_error("coframe entries must be expression strings");
        rows[std::size_t(a)][std::size_t(mu)] = parse_expression(
            jcell.get<std::string>(), s.primary().variables);
      }
    }
    s.charts.front().coframe = [rows](const JetPoint& x) {
      Matrix4<Jet> e{};
      for (int a = 0; a < 4; ++a)
        for (int mu = 0; mu < 4; ++mu)
          e[std::size_t(a)][mu] = rows[std::size_t(a)][std::size_t(mu)].eval(x);
      return e;
    };
  }

  validate_scenario(s);
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw config_error("cannot open scenario file \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scenario_json(buf.str());
}

std::vector<Point> sample_points(const SampleBox& box, int count,
                                 unsigned seed) {
  if (count <= 0) throw config_error("sample count must be positive");
  for (int d = 0; d < 4; ++d)
    if (!(box[std::size_t(d)][0] <= box[std::size_t(d)][1]))
      throw config_error("sample box has an empty coordinate range");
  std::vector<Point> out;
  out.reserve(std::size_t(count));
  for (int k = 0; k < count; ++k) {
    Point p{};
    for (int d = 0; d < 4; ++d) {
      const double u = halton(std::uint64_t(seed) + std::uint64_t(k) + 1,
                              kHaltonBases[std::size_t(d)]);
      p[std::size_t(d)] =
          box[std::size_t(d)][0] +
          u * (box[std::size_t(d)][1] - box[std::size_t(d)][0]);
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace kmns
