#ifndef SPGOF_HOMOLOGY_HPP
#define SPGOF_HOMOLOGY_HPP

#include "spgof/geometry.hpp"
#include "spgof/curve.hpp"

#include <iosfwd>
#include <vector>

namespace spgof {

struct PersistenceFeature {
  int dim = 0;
  double birth = 0.0;
  double death = 0.0;  ///< +infinity for essential classes
};

/// Birth/death pairs of 0- and 1-dimensional features. Zero-persistence
/// pairs are kept; they do not affect any of the curves below.
struct PersistenceDiagram {
  std::vector<PersistenceFeature> features;

  std::vector<PersistenceFeature> of_dim(int dim) const;
  std::size_t count(int dim) const;
};

/// Persistent homology of an alpha filtration over Z/2.
///
/// Dimension 0 uses union-find over edges in filtration order (elder rule,
/// ties by vertex index); dimension 1 reduces the triangle columns of the
/// boundary matrix.
PersistenceDiagram persistence(const AlphaFiltration& filtration);

/// beta_p(r) = #{ j : b_j <= r < d_j }.
SummaryCurve betti_curve(const PersistenceDiagram& diagram, int dim, const EvalGrid& grid);

/// APF_0(r) = sum d_j 1{d_j <= r};  APF_1(r) = sum (d_j - b_j) 1{b_j <= r}.
SummaryCurve apf(const PersistenceDiagram& diagram, int dim, const EvalGrid& grid);

/// chi(r) = V(r) - E(r) + T(r), counted directly from the filtration.
SummaryCurve euler_curve(const AlphaFiltration& filtration, const EvalGrid& grid);

/// CSV export with columns dim, birth, death (infinite death written `inf`).
void write_diagram_csv(std::ostream& out, const PersistenceDiagram& diagram);

}  // namespace spgof

#endif  // SPGOF_HOMOLOGY_HPP
