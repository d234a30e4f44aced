#include "spgof/format.hpp"
#include "spgof/homology.hpp"

#include <algorithm>
#include <iterator>
#include <limits>
#include <numeric>
#include <ostream>
#include <unordered_map>

namespace spgof {
namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  // All vertices are born at 0, so the surviving root is the smaller index.
  void unite(int a, int b) {
    if (a < b) parent_[b] = a;
    else parent_[a] = b;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

std::vector<PersistenceFeature> PersistenceDiagram::of_dim(int dim) const {
  std::vector<PersistenceFeature> out;
  std::copy_if(features.begin(), features.end(), std::back_inserter(out),
               [dim](const PersistenceFeature& f) { return f.dim == dim; });
  return out;
}

std::size_t PersistenceDiagram::count(int dim) const {
  return static_cast<std::size_t>(std::count_if(features.begin(), features.end(),
                                                [dim](const PersistenceFeature& f) { return f.dim == dim; }));
}

PersistenceDiagram persistence(const AlphaFiltration& filtration) {
  PersistenceDiagram diagram;
  if (filtration.empty()) return diagram;

  const double inf = std::numeric_limits<double>::infinity();
  const auto n = static_cast<std::size_t>(filtration.vertex_count());
  UnionFind components(n);
  std::size_t merges = 0;

  // Edge positions in filtration order, keyed by vertex pair.
  std::unordered_map<std::int64_t, int> edge_position;
  std::vector<double> edge_radius;
  std::vector<char> edge_paired;
  auto key = [n](int a, int b) { return static_cast<std::int64_t>(a) * static_cast<std::int64_t>(n) + b; };

  std::vector<std::vector<int>> reduced;  // indexed by pivot edge position
  std::unordered_map<int, std::size_t> pivot_owner;
  std::vector<int> column, scratch;

  for (const auto& entry : filtration.entries()) {
    const auto& v = entry.simplex.vertices;
    if (entry.simplex.dim == 1) {
      edge_position.emplace(key(v[0], v[1]), static_cast<int>(edge_radius.size()));
      edge_radius.push_back(entry.radius);
      edge_paired.push_back(0);
      const int ra = components.find(v[0]), rb = components.find(v[1]);
      if (ra != rb) {
        components.unite(ra, rb);
        ++merges;
        edge_paired.back() = 1;  // negative edge: kills a component
        diagram.features.push_back({0, 0.0, entry.radius});
      }
    } else if (entry.simplex.dim == 2) {
      column = {edge_position.at(key(v[0], v[1])), edge_position.at(key(v[0], v[2])),
                edge_position.at(key(v[1], v[2]))};
      std::sort(column.begin(), column.end());
      while (!column.empty()) {
        const auto owner = pivot_owner.find(column.back());
        if (owner == pivot_owner.end()) break;
        const auto& other = reduced[owner->second];
        scratch.clear();
        std::set_symmetric_difference(column.begin(), column.end(), other.begin(), other.end(),
                                      std::back_inserter(scratch));
        column.swap(scratch);
      }
      if (column.empty()) continue;
      const int low = column.back();
      pivot_owner.emplace(low, reduced.size());
      reduced.push_back(column);
      edge_paired[static_cast<std::size_t>(low)] = 1;
      diagram.features.push_back({1, edge_radius[static_cast<std::size_t>(low)], entry.radius});
    }
  }

  for (std::size_t e = 0; e < edge_radius.size(); ++e)
    if (!edge_paired[e]) diagram.features.push_back({1, edge_radius[e], inf});
  for (std::size_t c = 0; c < n - merges; ++c) diagram.features.push_back({0, 0.0, inf});
  return diagram;
}

SummaryCurve betti_curve(const PersistenceDiagram& diagram, int dim, const EvalGrid& grid) {
  const Eigen::Index count = grid.count();
  CurveValues<> delta = CurveValues<>::Zero(count + 1);
  for (const auto& f : diagram.features) {
    if (f.dim != dim) continue;
    const Eigen::Index start = grid.first_at_or_above(f.birth);
    const Eigen::Index stop = f.death == std::numeric_limits<double>::infinity() ? count
                                                                                  : grid.first_at_or_above(f.death);
    if (start < stop) {
      delta[start] += 1.0;
      delta[stop] -= 1.0;
    }
  }
  CurveValues<> values(count);
  double running = 0.0;
  for (Eigen::Index k = 0; k < count; ++k) values[k] = (running += delta[k]);
  return {dim == 0 ? SummaryKind::Beta0 : SummaryKind::Beta1, grid, values};
}

SummaryCurve apf(const PersistenceDiagram& diagram, int dim, const EvalGrid& grid) {
  const Eigen::Index count = grid.count();
  CurveValues<> delta = CurveValues<>::Zero(count + 1);
  for (const auto& f : diagram.features) {
    if (f.dim != dim || f.death == std::numeric_limits<double>::infinity()) continue;
    if (dim == 0) delta[grid.first_at_or_above(f.death)] += f.death;
    else delta[grid.first_at_or_above(f.birth)] += f.death - f.birth;
  }
  CurveValues<> values(count);
  double running = 0.0;
  for (Eigen::Index k = 0; k < count; ++k) values[k] = (running += delta[k]);
  return {dim == 0 ? SummaryKind::APF0 : SummaryKind::APF1, grid, values};
}

SummaryCurve euler_curve(const AlphaFiltration& filtration, const EvalGrid& grid) {
  const Eigen::Index count = grid.count();
  CurveValues<> delta = CurveValues<>::Zero(count + 1);
  for (const auto& e : filtration.entries())
    delta[grid.first_at_or_above(e.radius)] += (e.simplex.dim % 2 == 0) ? 1.0 : -1.0;
  CurveValues<> values(count);
  double running = 0.0;
  for (Eigen::Index k = 0; k < count; ++k) values[k] = (running += delta[k]);
  return {SummaryKind::Euler, grid, values};
}

void write_diagram_csv(std::ostream& out, const PersistenceDiagram& diagram) {
  out << "dim,birth,death\n";
  for (const auto& f : diagram.features)
    out << f.dim << ',' << format_number(f.birth) << ',' << format_number(f.death) << '\n';
}

}  // namespace spgof
