#include <doctest.h>

#include "strata/families.hpp"
#include "strata/io.hpp"

using namespace strata;
using cd = std::complex<double>;

TEST_CASE("matrix JSON round trip") {
  RealMatrix r(2, 2);
  r << 1, 2, 2, -1;
  auto jr = matrix_to_json(r);
  CHECK(jr["field"] == "real");
  CHECK(jr["n"] == 2);
  CHECK(jr["entries"][0][1] == 2.0);
  auto back = matrix_from_json(jr);
  CHECK(back.field == FieldCase::Real);
  CHECK(back.real() == r);

  auto jc = matrix_to_json(sigma_y());
  CHECK(jc["field"] == "hermitian");
  CHECK(jc["entries"][0][1] == json::array({0.0, -1.0}));
  auto c = matrix_from_json(jc);
  CHECK(c.entries == sigma_y());
  CHECK_THROWS(c.real());
}

TEST_CASE("matrix JSON validation") {
  CHECK_THROWS(matrix_from_json(json::parse(R"({"field":"real","n":2,"entries":[[1,0]]})")));
  CHECK_THROWS(matrix_from_json(json::parse(R"({"field":"real","n":1,"entries":[[[1,0]]]})")));
  CHECK_THROWS(matrix_from_json(json::parse(R"({"field":"real","n":2,"entries":[[1,1],[0,1]]})")));
  CHECK_THROWS(matrix_from_json(json::parse(R"({"field":"complex","n":1,"entries":[[1]]})")));
  CHECK_THROWS(matrix_from_json(json::parse(R"({"field":"hermitian","n":1,"entries":[[[0,1]]]})")));
  CHECK_THROWS(matrix_from_json(json::parse(R"({"n":1,"entries":[[1]]})")));
  CHECK_NOTHROW(matrix_from_json(json::parse(R"({"field":"hermitian","n":1,"entries":[[2]]})")));
}

TEST_CASE("surface family JSON") {
  auto builtin = surface_from_json(json::parse(R"({"builtin":"pauli_sphere"})"));
  CHECK(builtin.family.has_value());
  CHECK(builtin.family->kind == GridKind::Sphere);

  auto block = surface_from_json(json::parse(R"({"builtin":"block","params":{"below":[-3],"above":[2,3]}})"));
  CHECK(block.family->sampler(0.3, 0.2).rows() == 5);

  auto constant = surface_from_json(json::parse(
      R"({"builtin":"constant","params":{"matrix":{"field":"real","n":2,"entries":[[1,0],[0,-1]]}}})"));
  CHECK(constant.family->kind == GridKind::Closed);

  const std::string grid = R"({"grid":{"Nu":2,"Nv":3,"matrices":[
      [{"field":"real","n":1,"entries":[[1]]},{"field":"real","n":1,"entries":[[2]]},{"field":"real","n":1,"entries":[[3]]}],
      [{"field":"real","n":1,"entries":[[4]]},{"field":"real","n":1,"entries":[[5]]},{"field":"real","n":1,"entries":[[6]]}]]}})";
  auto stored = surface_from_json(json::parse(grid));
  REQUIRE(stored.grid.has_value());
  CHECK(stored.grid->kind == GridKind::Closed);
  CHECK(stored.grid->at(1, 2)(0, 0) == cd(6));
  CHECK(stored.grid->at(0, 1)(0, 0) == cd(2));

  CHECK_THROWS(surface_from_json(json::parse(R"({"builtin":"torus"})")));
  CHECK_THROWS(surface_from_json(json::parse(R"({"grid":{"Nu":1,"Nv":2,"matrices":[[]]}})")));
  CHECK_THROWS(surface_from_json(json::parse(R"({"grid":{"Nu":1,"Nv":1,"kind":"disc","matrices":[[{"field":"real","n":1,"entries":[[1]]}]]}})")));
}

TEST_CASE("loop and path JSON") {
  auto builtin = loop_from_json(json::parse(R"({"builtin":"real_loop_2x2","params":{"winding":2}})"));
  CHECK(sw1_holonomy(sample_loop(*builtin.family, 400), 1) == 1);

  json grid = {{"grid", {{"Nt", 4}, {"matrices", json::array()}}}};
  for (int i = 0; i <= 4; ++i) {
    RealMatrix m = Eigen::Vector2d(-1 - 0.1 * (i % 4 == 1), 1).asDiagonal();
    grid["grid"]["matrices"].push_back(matrix_to_json(m));
  }
  auto closed = loop_from_json(grid);
  REQUIRE(closed.loop.has_value());
  CHECK(closed.loop->samples.size() == 4);
  CHECK(sw1_holonomy(*closed.loop, 1) == 1);

  grid["grid"]["matrices"].back() = matrix_to_json(RealMatrix(Eigen::Vector2d(-5, 1).asDiagonal()));
  CHECK_THROWS(loop_from_json(grid));
  grid["grid"]["matrices"].erase(grid["grid"]["matrices"].end() - 1);
  CHECK_NOTHROW(loop_from_json(grid));
  grid["grid"]["Nt"] = 6;
  CHECK_THROWS(loop_from_json(grid));

  json mixed = {{"grid", {{"matrices", {matrix_to_json(RealMatrix(RealMatrix::Identity(2, 2))), matrix_to_json(sigma_x())}}}}};
  CHECK_THROWS(path_from_json(mixed));
  json path = {{"grid", {{"matrices", {matrix_to_json(sigma_x()), matrix_to_json(sigma_z())}}}}};
  auto p = path_from_json(path);
  CHECK(p.field == FieldCase::Hermitian);
  CHECK(p.samples.size() == 2);
  CHECK_THROWS(read_json_file("/nonexistent/file.json"));
}
