#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "tricomi/error.hpp"
#include "tricomi/harness.hpp"

using namespace tricomi;
using namespace tricomi::harness;

namespace {

SweepPlan ode_plan(Target target, double p, double q, std::vector<double> eps) {
  SweepPlan plan;
  plan.base = solver::default_config({0, 3, p, q, NonlinearityMode::mixed}, 1.0);
  plan.target = target;
  plan.eps_values = std::move(eps);
  return plan;
}

std::string first_line(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  return line;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("H sweep slope follows the closed-form law") {
    const auto res = sweep(ode_plan(Target::ode_h, 1.5, 2.0, {1e-8, 1e-7, 1e-6}));
    CHECK(res.rows.size() == 3);
    CHECK(res.fit.theoretical == doctest::Approx(1.0));
    CHECK(res.fit.slope == doctest::Approx(-1.0).epsilon(1e-2));
  }

  TEST_CASE("results do not depend on the worker count") {
    auto plan = ode_plan(Target::ode_f, 2.0, 2.0, {1e-3, 3e-3, 1e-2, 3e-2, 1e-1});
    plan.threads = 1;
    const auto a = sweep(plan);
    plan.threads = 4;
    const auto b = sweep(plan);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      CHECK(a.rows[i].eps == b.rows[i].eps);
      CHECK(a.rows[i].T_lower == b.rows[i].T_lower);
      CHECK(a.rows[i].T_upper == b.rows[i].T_upper);
    }
    CHECK(a.fit.slope == b.fit.slope);
    for (std::size_t i = 1; i < a.rows.size(); ++i) CHECK(a.rows[i].T_mid() < a.rows[i - 1].T_mid());
  }

  TEST_CASE("plan validation") {
    auto plan = ode_plan(Target::ode_f, 2.0, 2.0, {});
    CHECK_THROWS_AS(plan.validate(), ValidationError);
    plan.eps_values = {0.1, 0.1};
    CHECK_THROWS_AS(plan.validate(), ValidationError);
    plan.eps_values = {-0.1};
    CHECK_THROWS_AS(plan.validate(), ValidationError);
    CHECK(parse_target("ode_h") == Target::ode_h);
    CHECK(to_string(Target::pde) == "pde");
    CHECK_THROWS_AS(parse_target("heat"), ValidationError);
    CHECK(worker_count(3) == 3);
    CHECK(worker_count(0) >= 1);
  }

  TEST_CASE("sweep writes CSV and SVG") {
    const auto dir = std::filesystem::temp_directory_path() / "tricomi_harness_test";
    std::filesystem::remove_all(dir);
    auto plan = ode_plan(Target::ode_h, 1.5, 2.0, {1e-3, 1e-2, 1e-1});
    plan.output_dir = dir.string();
    plan.svg = true;
    sweep(plan);
    CHECK(first_line(dir / "sweep.csv") == "eps,T_lower,T_upper,T_mid,T_width,outcome");
    CHECK(std::filesystem::exists(dir / "sweep.svg"));
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("region map") {
    const auto cells = region_map(3, 0, 1.5, 3.0, 1.5, 3.0, 4);
    REQUIRE(cells.size() == 16);
    CHECK(cells[0].p == 1.5);
    CHECK(cells[1].p == 2.0);
    CHECK(cells[4].q == 2.0);
    for (const auto& c : cells) {
      CHECK(c.lambda == doctest::Approx(exponents::lambda_mixed(c.p, c.q, 3, 0)));
      CHECK(c.verdict.verdict == exponents::classify({0, 3, c.p, c.q, NonlinearityMode::mixed}).verdict);
    }
    CHECK_THROWS_AS(region_map(3, 0, 1.5, 3.0, 1.5, 3.0, 1), ValidationError);
    CHECK_THROWS_AS(region_map(3, 0, 0.5, 3.0, 1.5, 3.0, 4), ValidationError);

    std::FILE* f = std::tmpfile();
    write_region_csv(f, cells);
    std::rewind(f);
    char buf[128] = {};
    REQUIRE(std::fgets(buf, sizeof buf, f));
    CHECK(std::string(buf) == "p,q,lambda,verdict_code,verdict,boundary,law_kind,law_exponent\n");
    std::fclose(f);
  }

  TEST_CASE("number formatting round-trips") {
    for (double x : {0.1, 1.0 / 3.0, 2.974477425402175, 1e-300})
      CHECK(std::stod(fmt(x)) == x);
  }
}
