#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "heavyloc/error.hpp"
#include "heavyloc/models.hpp"

using namespace heavyloc;

TEST_CASE("model names round-trip") {
  for (Model m : {Model::I, Model::II, Model::III, Model::IV}) CHECK(model_from_string(to_string(m)) == m);
  CHECK_THROWS_AS(model_from_string("V"), ParameterError);
}

TEST_CASE("config diagnostics") {
  ModelConfig c;
  CHECK(config_diagnostics(c).empty());
  c.alpha1 = 1.2;
  auto d = config_diagnostics(c);
  REQUIRE(d.size() == 1);
  CHECK(d[0].find("alpha must lie in (0,1)") != std::string::npos);
  c.alpha1 = 0.5;
  c.energy = 0.0;
  CHECK(config_diagnostics(c).size() == 1);
  c.model = Model::III;
  CHECK(config_diagnostics(c).size() == 1);
  c.model = Model::II;
  CHECK(config_diagnostics(c).empty());
  c.energy = -3.0;
  CHECK(config_diagnostics(c).empty());
  c.theta0 = 4.0;
  CHECK(config_diagnostics(c).size() == 1);
  CHECK_THROWS_AS(require_valid(c), ParameterError);
}

TEST_CASE("Model I and II layouts") {
  const std::vector<double> h{2.0, 0.5, 7.0};
  const Realization r1 = assemble(Model::I, h, {}, {});
  REQUIRE(r1.pieces.size() == 3);
  CHECK(r1.pieces[2].value == 7.0);
  CHECK(r1.offsets[2] == 2.0);
  CHECK(r1.bump_ends == std::vector<double>{1, 2, 3});
  const Realization r2 = assemble(Model::II, h, {}, {});
  CHECK(r2.pieces[0].value == -2.0);
  CHECK(r2.total_length() == 3.0);
  CHECK(r2.pieces_through_bump(2) == 2);
}

TEST_CASE("Model III places a gap before every unit bump") {
  const std::vector<double> y{0.5, 2.0};
  const Realization r = assemble(Model::III, {}, y, {});
  REQUIRE(r.pieces.size() == 4);
  CHECK(r.pieces[0].kind == PieceKind::gap);
  CHECK(r.pieces[1].value == 1.0);
  CHECK(r.pieces[1].index == 1);
  // L_n = S_n + n
  CHECK(r.bump_ends == std::vector<double>{1.5, 4.5});
  CHECK(r.pieces_through_bump(1) == 2);
}

TEST_CASE("Model IV signs") {
  const std::vector<double> h{3.0, 4.0}, y{1.0, 1.0};
  const std::vector<int> s{0, 1};
  const Realization r = assemble(Model::IV, h, y, s);
  CHECK(r.pieces[1].value == 3.0);
  CHECK(r.pieces[3].value == -4.0);
  CHECK(r.total_length() == 4.0);
}

TEST_CASE("overflowing draws are reported as saturation") {
  const std::vector<double> h{std::numeric_limits<double>::infinity()};
  CHECK_THROWS_AS(assemble(Model::I, h, {}, {}), SaturationError);
}

TEST_CASE("generation is reproducible and respects the laws") {
  ModelConfig c;
  c.model = Model::IV;
  c.alpha1 = 0.4;
  c.alpha2 = 0.7;
  RngStream a(4), b(4);
  const Realization r1 = generate(c, 500, a), r2 = generate(c, 500, b);
  CHECK(r1.bump_heights == r2.bump_heights);
  CHECK(r1.gap_lengths == r2.gap_lengths);
  CHECK(r1.signs == r2.signs);
  CHECK(r1.n_bumps() == 500);
  int negatives = 0;
  for (int s : r1.signs) negatives += s;
  CHECK(negatives > 200);
  CHECK(negatives < 300);
  RngStream e(1);
  CHECK_THROWS_AS(generate(c, 0, e), ParameterError);
}

TEST_CASE("piece lookup and truncation") {
  const std::vector<double> y{0.5, 2.0};
  const Realization r = assemble(Model::III, {}, y, {});
  CHECK(l_index(r, 0.0) == 0);
  CHECK(l_index(r, 0.5) == 1);
  CHECK(l_index(r, 1.49) == 1);
  CHECK(l_index(r, 4.5) == 3);
  CHECK_THROWS_AS(l_index(r, 5.0), ParameterError);
  const Realization t = truncate(r, 2.5);
  CHECK(t.total_length() == doctest::Approx(2.5));
  CHECK(t.pieces.size() == 3);
  CHECK(t.n_bumps() == 1);
  CHECK(t.gap_lengths.size() == 1);
}

TEST_CASE("free realization and csv export") {
  const Realization r = free_realization(3, 0.5);
  CHECK(r.total_length() == 1.5);
  std::ostringstream out;
  write_realization_csv(out, assemble(Model::II, std::vector<double>{0.25}, {}, {}));
  CHECK(out.str() == "index,kind,value,length\n1,bump,-0.25,1\n");
}
