#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "isodmm/study.hpp"
#include "json.hpp"

using namespace isodmm;

namespace {
StudyConfig parse(const std::string& text) {
  std::istringstream in(text);
  return StudyConfig::parse(in);
}
}  // namespace

TEST_CASE("mass rule labels") {
  CHECK(parse_mass_choice("exact").display(2) == "G3");
  CHECK(parse_mass_choice("G").display(2) == "G2");
  CHECK(parse_mass_choice("L").display(3) == "L4");
  CHECK(parse_mass_choice("R").display(3) == "R3");
  CHECK(parse_mass_choice("dmm").display(3) == "DMM");
  CHECK(parse_mass_choice("dmm-rule:-").branch == -1);
  const auto b = parse_mass_choice("blend:gr:0.25");
  CHECK(b.kind == MassChoice::Kind::blend);
  CHECK(b.pair == BlendPair::gr);
  CHECK(*b.tau == 0.25);
  CHECK_THROWS_AS(parse_mass_choice("Q"), ConfigError);
  CHECK_THROWS_AS(parse_mass_choice("blend:zz"), ConfigError);
  CHECK_THROWS_AS(parse_mass_choice("blend:gl:abc"), ConfigError);
  CHECK_THROWS_AS(parse_mass_choice("blend:lr").check(1), ConfigError);
  CHECK_NOTHROW(parse_mass_choice("blend:lr").check(2));
  CHECK_THROWS_AS(parse_mass_choice("dmm-rule").check(4), ConfigError);
}

TEST_CASE("configuration parsing") {
  const auto c = parse("# comment\np = 2, 3\nN = 4,8 ,16\nrules = exact, dmm\nmodes = 1\n"
                       "dimension = 2\neigenfunctions = false\n");
  CHECK(c.degrees == std::vector<int>{2, 3});
  CHECK(c.meshes == std::vector<int>{4, 8, 16});
  CHECK(c.rules == std::vector<std::string>{"exact", "dmm"});
  CHECK(c.dimension == 2);
  CHECK_FALSE(c.eigenfunctions);
  CHECK_NOTHROW(c.validate());
  CHECK_THROWS_AS(parse("p 2\n"), ConfigError);
  CHECK_THROWS_AS(parse("colour = red\n"), ConfigError);
  CHECK_THROWS_AS(parse("p = two\n"), ConfigError);
  CHECK_THROWS_AS(StudyConfig::load("/nonexistent/config.txt"), ConfigError);
}

TEST_CASE("validation") {
  auto bad = [](const std::string& text) { CHECK_THROWS_AS(parse(text).validate(), ConfigError); };
  bad("p = 2\n");
  bad("p = 2\nN = \n");
  bad("p = 2\nN = 8, 8\n");
  bad("p = 2\nN = 16, 8\n");
  bad("p = 13\nN = 8\n");
  bad("p = 2\nN = 8\nrules = R, R\n");
  bad("p = 1\nN = 8\nrules = blend:lr\n");
  bad("p = 2\nN = 8\ndimension = 3\n");
  bad("p = 2\nN = 8\nmodes = 0\n");
  CHECK_NOTHROW(parse("p = 2\nN = 8\n").validate());
}

TEST_CASE("fitted rates") {
  CHECK(*fitted_rate({8, 16, 32}, {1.0, 1.0 / 16, 1.0 / 256}) == doctest::Approx(4.0));
  CHECK(*fitted_rate({8, 16, 32}, {1.0, NAN, 1.0 / 256}) == doctest::Approx(4.0));
  CHECK_FALSE(fitted_rate({8, 16}, {1.0, NAN}).has_value());
}

TEST_CASE("study is deterministic and ordered") {
  const auto c = parse("p = 1, 2\nN = 8, 16\nrules = exact, R, dmm\nmodes = 1, 2\nthreads = 3\n");
  const auto r1 = run_study(c);
  auto c1 = c;
  c1.threads = 1;
  const auto r2 = run_study(c1);
  std::ostringstream a, b;
  r1.write_csv(a);
  r2.write_csv(b);
  CHECK(a.str() == b.str());
  CHECK(r1.to_json() == r2.to_json());
  REQUIRE(r1.cells.size() == 12);
  CHECK(r1.cells[0].p == 1);
  CHECK(r1.cells[0].N == 8);
  CHECK(r1.cells[0].rule == "G2");
  CHECK(r1.cells[1].rule == "R1");
  CHECK(r1.cells[3].N == 16);
  CHECK(r1.rates.size() == 12);
  CHECK(a.str().find("2,rate,DMM,1,6.0") != std::string::npos);
}

TEST_CASE("failing cells are recorded and the study continues") {
  const auto r = run_study(parse("p = 3\nN = 8, 16\nrules = exact, dmm-rule\nmodes = 1\n"));
  REQUIRE(r.cells.size() == 4);
  CHECK(r.cells[0].error.empty());
  CHECK_FALSE(r.cells[1].error.empty());
  std::ostringstream os;
  r.write_csv(os);
  CHECK(os.str().find("3,8,DMMrule+,1,nan,") != std::string::npos);
  const auto j = nlohmann::json::parse(r.to_json());
  CHECK(j["cells"][1]["error"].is_string());
  CHECK(j["cells"][0]["error"].is_null());
  CHECK(j["rates"][1]["ev_rate"].is_null());
}

TEST_CASE("2D study through both solvers") {
  auto c = parse("p = 2\nN = 4, 8\nrules = dmm\nmodes = 1, 2, 4\ndimension = 2\n");
  const auto tensor = run_study(c);
  c.solver2d = "kronecker";
  const auto kron = run_study(c);
  for (std::size_t i = 0; i < tensor.cells.size(); ++i) {
    for (std::size_t m = 0; m < 3; ++m) {
      CHECK(tensor.cells[i].rel_ev_error[m] ==
            doctest::Approx(kron.cells[i].rel_ev_error[m]).epsilon(1e-4));
    }
    CHECK(tensor.cells[i].ef_energy_error.empty());
  }
}
