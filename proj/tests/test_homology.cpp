#include <doctest.h>

#include "oracles.hpp"
#include "spgof/homology.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace spgof;

namespace {

std::vector<oracle::Pair> nontrivial(const PersistenceDiagram& d) {
  std::vector<oracle::Pair> out;
  for (const auto& f : d.features)
    if (f.birth < f.death) out.emplace_back(f.dim, f.birth, f.death);
  std::sort(out.begin(), out.end());
  return out;
}

PointPattern random_pattern(std::mt19937_64& gen, int n, bool lattice) {
  std::vector<Point> pts;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> cell(0, 4);
  while (static_cast<int>(pts.size()) < n) {
    const Point p = lattice ? Point(cell(gen) / 4.0, cell(gen) / 4.0) : Point(u(gen), u(gen));
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  }
  return PointPattern(Window(0, 1, 0, 1), pts);
}

}  // namespace

TEST_CASE("persistence of small configurations") {
  SUBCASE("square: one loop from the sides to the diagonal") {
    const auto f = alpha_filtration(PointPattern(Window(0, 1, 0, 1), std::vector<Point>{{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
    const auto d = persistence(f);
    CHECK(d.count(0) == 4);
    const auto pairs = nontrivial(d);
    REQUIRE(pairs.size() == 5);
    const double h = std::sqrt(0.5);
    CHECK(pairs[4] == oracle::Pair{1, 0.5, h});
    CHECK(std::get<2>(pairs[3]) == std::numeric_limits<double>::infinity());
  }
  SUBCASE("equilateral triangle") {
    const auto d = persistence(alpha_filtration(
        PointPattern(Window(0, 1, 0, 1), std::vector<Point>{{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}})));
    const auto loops = d.of_dim(1);
    REQUIRE(loops.size() == 1);
    CHECK(loops[0].birth == doctest::Approx(0.5));
    CHECK(loops[0].death == doctest::Approx(1 / std::sqrt(3.0)));
  }
  SUBCASE("single point") {
    const auto d = persistence(alpha_filtration(PointPattern(Window(0, 1, 0, 1), std::vector<Point>{{0.5, 0.5}})));
    REQUIRE(d.features.size() == 1);
    CHECK(d.features[0].death == std::numeric_limits<double>::infinity());
  }
}

TEST_CASE("persistence matches the rank oracle on small patterns") {
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(gen() % 8);
    const PointPattern pp = random_pattern(gen, n, trial % 3 == 0);
    const auto f = alpha_filtration(pp);
    const auto d = persistence(f);
    CHECK(d.count(0) == static_cast<std::size_t>(n));
    CHECK(nontrivial(d) == oracle::persistence_pairs(f));
  }
}

TEST_CASE("betti, apf and euler curves") {
  std::mt19937_64 gen(99);
  const PointPattern pp = random_pattern(gen, 300, false);
  const auto f = alpha_filtration(pp);
  const auto d = persistence(f);
  const EvalGrid grid = EvalGrid::standard(SummaryKind::Beta0);
  const auto b0 = betti_curve(d, 0, grid), b1 = betti_curve(d, 1, grid);
  const auto chi = euler_curve(f, grid);
  CHECK((chi.values == b0.values - b1.values).all());
  CHECK(b0.values[0] == 300);
  CHECK(b0.values[grid.count() - 1] >= 1);
  // Direct counts at a few radii.
  for (Eigen::Index k : {0, 40, 200, 512}) {
    const double r = grid[k];
    double alive = 0, apf0 = 0, apf1 = 0;
    for (const auto& ft : d.features) {
      if (ft.dim == 1 && ft.birth <= r && r < ft.death) alive += 1;
      if (ft.dim == 0 && ft.death <= r) apf0 += ft.death;
      if (ft.dim == 1 && ft.birth <= r) apf1 += ft.death - ft.birth;
    }
    CHECK(b1.values[k] == alive);
    CHECK(apf(d, 0, grid).values[k] == doctest::Approx(apf0).epsilon(1e-12));
    CHECK(apf(d, 1, grid).values[k] == doctest::Approx(apf1).epsilon(1e-12));
    CHECK(chi.values[k] == static_cast<double>(f.count(0, r)) - static_cast<double>(f.count(1, r)) +
                               static_cast<double>(f.count(2, r)));
  }
}

TEST_CASE("diagram csv writes inf") {
  const auto d = persistence(alpha_filtration(PointPattern(Window(0, 2, 0, 2), std::vector<Point>{{0, 0}, {1, 0}})));
  std::ostringstream out;
  write_diagram_csv(out, d);
  CHECK(out.str() == "dim,birth,death\n0,0,0.5\n0,0,inf\n");
}
