#include "kmns/report.hpp"

#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "kmns/errors.hpp"

namespace {

using kmns::CheckStatus;
using kmns::PointResidual;
using kmns::ResidualReport;

ResidualReport sample_report() {
  ResidualReport r;
  r.check_id = "killing";
  r.scenario = "schwarzschild";
  r.killing_field = "dt";
  r.status = CheckStatus::kOk;
  r.tolerance = 1e-6;
  r.pass = true;
  r.aux.emplace_back("lorenz", 0.5);
  r.aux.emplace_back("wave", 0.25);
  r.set_points({{{0.5, 4.0, 1.0, 2.0}, 0.25},
                {{0.0, 9.0, 2.0, 3.0}, 1.0 / 3.0}});
  return r;
}

}  // namespace

TEST_SUITE("report") {
  TEST_CASE("status names") {
    CHECK(kmns::to_string(CheckStatus::kOk) == "ok");
    CHECK(kmns::to_string(CheckStatus::kGaugeViolated) == "gauge_violated");
    CHECK(kmns::to_string(CheckStatus::kPostulateViolated) ==
          "postulate_violated");
    CHECK(kmns::to_string(CheckStatus::kIdentityGap) == "identity_gap");
    CHECK(kmns::to_string(CheckStatus::kError) == "error");
  }

  TEST_CASE("point aggregation: max and fixed-order compensated mean") {
    ResidualReport r;
    r.set_points({{{0, 0, 0, 0}, 1.0}, {{0, 0, 0, 0}, 2.0},
                  {{0, 0, 0, 0}, 4.0}});
    CHECK(r.max_residual == 4.0);
    CHECK(r.mean_residual == doctest::Approx(7.0 / 3.0).epsilon(1e-15));
    r.set_points({});
    CHECK(r.max_residual == 0.0);
    CHECK(r.mean_residual == 0.0);
  }

  TEST_CASE("empty report list") {
    CHECK(kmns::to_json({}) == "[]");
    CHECK(kmns::to_csv({}) == "check_id,x0,x1,x2,x3,residual,tolerance,pass\n");
  }

  TEST_CASE("serialized structure parses back with the declared content") {
    ResidualReport r = sample_report();
    r.extrapolation = {{50.0, 1.0}, {100.0, 1.0}, {200.0, 1.0}};
    const std::string text = kmns::to_json({r});

    const auto j = nlohmann::json::parse(text);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 1);
    const auto& o = j.at(0);
    CHECK(o.at("check_id") == "killing");
    CHECK(o.at("scenario") == "schwarzschild");
    CHECK(o.at("killing_field") == "dt");
    CHECK(o.at("status") == "ok");
    CHECK(o.at("conventions").at("signature") == "+---");
    CHECK(o.at("conventions").at("orientation") == "dx0^dx1^dx2^dx3");
    CHECK(o.at("conventions").at("units") == "Ricci-(R/2)g=T");
    CHECK(o.at("max_residual").get<double>() == doctest::Approx(1.0 / 3.0));
    CHECK(o.at("mean_residual").get<double>() ==
          doctest::Approx((0.25 + 1.0 / 3.0) / 2.0));
    CHECK(o.at("tolerance").get<double>() == 1e-6);
    CHECK(o.at("pass") == true);
    CHECK(o.at("aux").at("lorenz") == 0.5);
    CHECK(o.at("aux").at("wave") == 0.25);
    REQUIRE(o.at("extrapolation").size() == 3);
    CHECK(o.at("extrapolation").at(0).at("radius") == 50.0);
    CHECK(o.at("extrapolation").at(2).at("estimate") == 1.0);
    REQUIRE(o.at("per_point").size() == 2);
    CHECK(o.at("per_point").at(0).at("coords").at(1) == 4.0);
    CHECK(o.at("per_point").at(1).at("residual").get<double>() ==
          doctest::Approx(1.0 / 3.0));

    // pinned key order in the raw text
    const auto pos = [&](const char* key) { return text.find(key); };
    CHECK(pos("\"check_id\"") < pos("\"scenario\""));
    CHECK(pos("\"scenario\"") < pos("\"killing_field\""));
    CHECK(pos("\"killing_field\"") < pos("\"status\""));
    CHECK(pos("\"status\"") < pos("\"conventions\""));
    CHECK(pos("\"conventions\"") < pos("\"max_residual\""));
    CHECK(pos("\"max_residual\"") < pos("\"mean_residual\""));
    CHECK(pos("\"mean_residual\"") < pos("\"tolerance\""));
    CHECK(pos("\"tolerance\"") < pos("\"pass\""));
    CHECK(pos("\"pass\"") < pos("\"aux\""));
    CHECK(pos("\"aux\"") < pos("\"extrapolation\""));
    CHECK(pos("\"extrapolation\"") < pos("\"per_point\""));

    // aux insertion order survives in the text
    CHECK(pos("\"lorenz\"") < pos("\"wave\""));

    // 17-significant-digit formatting: enough digits to expose that the
    // double nearest to 1e-6 sits just below it
    CHECK(text.find("0.33333333333333331") != std::string::npos);
    CHECK(text.find("9.9999999999999995e-07") != std::string::npos);
  }

  TEST_CASE("optional blocks are omitted when empty") {
    ResidualReport r;
    r.check_id = "wave";
    r.scenario = "minkowski";
    r.status = CheckStatus::kError;
    const std::string text = kmns::to_json({r});
    CHECK(text.find("\"aux\"") == std::string::npos);
    CHECK(text.find("\"extrapolation\"") == std::string::npos);
    CHECK(text.find("\"per_point\": []") != std::string::npos);
    CHECK(text.find("\"status\": \"error\"") != std::string::npos);
    CHECK(text.find("\"pass\": false") != std::string::npos);
    CHECK_NOTHROW((void)nlohmann::json::parse(text).size());
  }

  TEST_CASE("string escaping round-trips") {
    ResidualReport r;
    r.check_id = "we\"ird\\token";
    r.scenario = "line\nbreak\ttab";
    const std::string text = kmns::to_json({r});
    const auto j = nlohmann::json::parse(text);
    CHECK(j.at(0).at("check_id") == "we\"ird\\token");
    CHECK(j.at(0).at("scenario") == "line\nbreak\ttab");
  }

  TEST_CASE("tabular rows: one per sample, exact fields") {
    const ResidualReport r = sample_report();
    const std::string text = kmns::to_csv({r, r});
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "check_id,x0,x1,x2,x3,residual,tolerance,pass");
    CHECK(lines[1] ==
          "killing,0.5,4,1,2,0.25,9.9999999999999995e-07,true");
    CHECK(lines[2] ==
          "killing,0,9,2,3,0.33333333333333331,9.9999999999999995e-07,true");
    CHECK(lines[3] == lines[1]);
    CHECK(text.back() == '\n');
  }

  TEST_CASE("byte-identical serialization across repeated calls") {
    ResidualReport r = sample_report();
    r.extrapolation = {{50.0, 0.9999999999999371}};
    const std::vector<ResidualReport> v = {r, sample_report()};
    CHECK(kmns::to_json(v) == kmns::to_json(v));
    CHECK(kmns::to_csv(v) == kmns::to_csv(v));
  }

  TEST_CASE("file output and failure paths") {
    const std::string path = "/tmp/kmns_report_test.json";
    kmns::write_file(path, "payload-123\n");
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == "payload-123\n");
    std::remove(path.c_str());
    CHECK_THROWS_AS(
        kmns::write_file("/kmns_no_such_dir/out.json", "x"),
        kmns::config_error);
  }
}
