#pragma once

// Registry of built-in spacetimes: charts with metrics, sample boxes, energy
// tensors, named symmetry generators with per-chart components, declared
// scalar factors for the flat-pairing potential, and optional coframes.
// Loading validates eagerly: the field equation must hold at quasi-random
// domain points and every declared symmetry generator must actually be one.
// User files select a built-in by name and may add generators, a scalar
// factor, and a coframe, all through a strict polynomial whitelist.

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kmns/expr.hpp"
#include "kmns/fluid.hpp"
#include "kmns/geometry.hpp"
#include "kmns/komar.hpp"

namespace kmns {

using SampleBox = std::array<std::array<double, 2>, 4>;  // [coord][lo, hi]
using CoframeFn = std::function<Matrix4<Jet>(const JetPoint&)>;

struct Chart {
  std::string name;  // "cartesian" or "spherical"
  std::shared_ptr<const FunctionMetric> metric;
  VariableMap variables;
  SampleBox box{};
  StressFn stress;     // energy tensor components on this chart
  CoframeFn coframe;   // empty when the scenario declares none here
};

struct KillingEntry {
  std::string name;
  // contravariant components keyed by chart name; a generator may be
  // expressible on a subset of the charts only
  std::map<std::string, VectorFn> components;
  // scalar factor relating the curved potential to its flat-pairing
  // counterpart, as a field on the rectangular chart; empty if undeclared
  ScalarFn declared_f;
  // false marks deliberate non-symmetry probes, which skip load validation
  bool is_symmetry = true;

  const VectorFn* on(std::string_view chart) const;
};

struct Scenario {
  std::string name;
  std::map<std::string, double> params;
  std::vector<Chart> charts;  // [0] is the primary chart
  std::vector<KillingEntry> killing;

  const Chart& primary() const { return charts.front(); }
  // nullptr when the scenario has no chart of that name
  const Chart* find_chart(std::string_view chart_name) const;
  // throws config_error naming the available generators
  const KillingEntry& find_killing(std::string_view killing_name) const;
  // throws config_error when the generator lacks components on the chart
  const VectorFn& killing_on(std::string_view chart_name,
                             std::string_view killing_name) const;
};

std::vector<std::string> builtin_scenario_names();

using Params = std::map<std::string, double>;

// built-ins: "minkowski" (no params), "schwarzschild" (m > 0, default 1),
// "de_sitter" (lambda > 0, default 0.03); throws config_error on unknown
// names/parameters and on any eager-validation failure
Scenario load_scenario(const std::string& name, const Params& params = {});

// user scenario from JSON text / file; schema:
//   {"name": ..., "params": {...}, "killing_fields":
//    [{"name": ..., "components": [4 polynomial strings]}],
//    "f_expression": ..., "coframe": [[4x4 polynomial strings]]}
Scenario load_scenario_json(const std::string& json_text);
Scenario load_scenario_file(const std::string& path);

// deterministic quasi-random points filling the box (van der Corput digit
// reversal in prime bases 2/3/5/7, index-shifted by the seed)
std::vector<Point> sample_points(const SampleBox& box, int count,
                                 unsigned seed);

}  // namespace kmns
