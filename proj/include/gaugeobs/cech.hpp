#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gaugeobs/exact_linear.hpp"

namespace gaugeobs::cech {

using lin::FgAbelianGroup;

// Finite simplicial complex given by its maximal simplices; the face closure
// is implicit. Vertex indices are strictly increasing within each simplex.
class SimplicialComplex {
  public:
    SimplicialComplex(std::size_t vertex_count, std::vector<std::vector<int>> maximal);

    std::size_t vertex_count() const { return vertex_count_; }
    const std::vector<std::vector<int>>& maximal_simplices() const { return maximal_; }

    // All k-simplices in lexicographic order (the cochain basis in degree k).
    const std::vector<std::vector<int>>& simplices(std::size_t k) const;
    std::size_t dimension() const;
    std::size_t connected_components() const;

    // delta_k : C^k -> C^{k+1}; rows are (k+1)-simplices, columns k-simplices.
    IntMatrix coboundary(std::size_t k) const;

    std::size_t simplex_index(std::size_t k, const std::vector<int>& s) const;

  private:
    std::size_t vertex_count_;
    std::vector<std::vector<int>> maximal_;
    mutable std::map<std::size_t, std::vector<std::vector<int>>> faces_;
};

// Cohomology described by data alone (no cochain level): rational Betti
// numbers plus an integer presentation per degree. Products and other spaces
// too bulky to triangulate enter scenarios this way.
struct FormalCohomology {
    std::vector<long> betti;                     // betti[k] = dim H^k(*; Q)
    std::vector<std::vector<Int>> torsion;       // torsion invariants per degree
    long betti_at(std::size_t k) const { return k < betti.size() ? betti[k] : 0; }
    std::vector<Int> torsion_at(std::size_t k) const {
        return k < torsion.size() ? torsion[k] : std::vector<Int>{};
    }
};

// A spacetime region reduced to its homotopy/cohomology content plus the
// metadata the observable model needs. dim_m is the spacetime dimension,
// independent of the dimension of the homotopy model.
class SpaceModel {
  public:
    using Body = std::variant<SimplicialComplex, FormalCohomology>;

    SpaceModel(Body body, std::size_t dim_m, bool oriented, bool compact_cauchy);

    const Body& body() const { return body_; }
    bool is_simplicial() const { return std::holds_alternative<SimplicialComplex>(body_); }
    const SimplicialComplex& complex() const { return std::get<SimplicialComplex>(body_); }
    const FormalCohomology& formal() const { return std::get<FormalCohomology>(body_); }

    std::size_t dim_m() const { return dim_m_; }
    bool oriented() const { return true; }
    bool compact_cauchy() const { return compact_cauchy_; }
    std::size_t connected_components() const { return components_; }

    long betti(std::size_t k) const;

  private:
    Body body_;
    std::size_t dim_m_;
    bool compact_cauchy_;
    std::size_t components_;
};

// Vertex map whose simplex images are simplices of the target (possibly of
// lower dimension when vertices collapse).
struct SimplicialMap {
    SimplicialMap(const SimplicialComplex& source, const SimplicialComplex& target,
                  std::vector<int> vertex_map);

    const SimplicialComplex* source;
    const SimplicialComplex* target;
    std::vector<int> vertex_map;
};

enum class Ring { Z, Q };

enum class MapDirection { pullback, compact_pushforward };

// H^k with a fixed representative basis at cochain level. For ring Q the
// stored basis is the image of the integer free generators, so the integer
// lattice has identity coordinates in it.
struct CohomologyGroup {
    std::size_t degree = 0;
    Ring ring = Ring::Q;
    FgAbelianGroup presentation;               // over Z; for Q only free_rank applies
    RatMatrix representatives;                 // columns: free-part cocycles
    RatMatrix torsion_representatives;         // columns: torsion generators (ring Z)
    long dimension() const { return presentation.free_rank; }
};

struct CohomologyMap {
    std::size_t degree = 0;
    Ring ring = Ring::Q;
    MapDirection direction = MapDirection::pullback;
    RatMatrix matrix;
};

// ---- operations on simplicial complexes ----

CohomologyGroup cohomology(const SimplicialComplex& k, std::size_t degree, Ring ring);

// Image of H^k(K;Z) -> H^k(K;Q) modulo torsion, in the coordinates of the
// stored rational basis. A Z-basis whose Q-span is the whole group.
RatMatrix lattice_in_real(const SimplicialComplex& k, std::size_t degree);

// Matrix of f^* : H^k(target) -> H^k(source) in the stored bases
// (rows: source basis, columns: target basis).
CohomologyMap induced_pullback(const SimplicialMap& f, std::size_t degree, Ring ring);

// ---- operations on space models ----

// H^k_c(X; Q), defined through Poincare duality as the dual of H^{m-k}(X; Q).
struct CompactSupportGroup {
    std::size_t degree = 0;
    std::size_t dual_degree = 0;  // m - k
    long dimension = 0;
};

CompactSupportGroup compact_support_group(const SpaceModel& x, std::size_t degree);

// A morphism of space models: either an honest simplicial map or a family of
// matrix-backed rational pullbacks per degree (rows: source basis, columns:
// target basis). Formal bodies always require the matrix-backed form.
class SpaceMorphism {
  public:
    using PullbackFamily = std::map<std::size_t, RatMatrix>;

    SpaceMorphism(std::shared_ptr<const SpaceModel> source,
                  std::shared_ptr<const SpaceModel> target, std::vector<int> vertex_map);
    SpaceMorphism(std::shared_ptr<const SpaceModel> source,
                  std::shared_ptr<const SpaceModel> target, PullbackFamily pullbacks);

    const SpaceModel& source() const { return *source_; }
    const SpaceModel& target() const { return *target_; }
    bool is_simplicial() const { return vertex_map_.has_value(); }

    // f^* : H^k(target; Q) -> H^k(source; Q).
    RatMatrix pullback(std::size_t degree) const;

    static SpaceMorphism identity(std::shared_ptr<const SpaceModel> x);

  private:
    std::shared_ptr<const SpaceModel> source_;
    std::shared_ptr<const SpaceModel> target_;
    std::optional<std::vector<int>> vertex_map_;
    PullbackFamily pullbacks_;
};

// H^k_c(source) -> H^k_c(target): the transpose of the degree-(m-k) pullback.
CohomologyMap pushforward_compact(const SpaceMorphism& f, std::size_t degree);

// ---- builtin space constructors ----

SimplicialComplex point_complex();
SimplicialComplex interval_complex();
SimplicialComplex circle_complex();
// Boundary of the (k+1)-simplex; k >= 1.
SimplicialComplex sphere_complex(std::size_t k);
SimplicialComplex disjoint_union(const std::vector<SimplicialComplex>& parts);

// Kunneth product of torsion-free factors.
FormalCohomology kunneth_product(const std::vector<FormalCohomology>& factors);
FormalCohomology formal_of_complex(const SimplicialComplex& k);

}  // namespace gaugeobs::cech
