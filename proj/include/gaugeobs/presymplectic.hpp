#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gaugeobs/exact_linear.hpp"

namespace gaugeobs::pag {

// Finitely presented mixed subgroup of Q^n: integer combinations of the
// lattice generators plus rational combinations of the divisible generators.
// Held in a canonical normal form, so equal subgroups compare equal:
//   - the divisible subspace is stored as its reduced-echelon basis,
//   - the lattice generators are reduced modulo the divisible subspace
//     (their coordinates at the echelon pivots vanish) and Hermite-normalized.
// Reduction can force rational entries on the lattice part, so both blocks
// are rational matrices; lattice membership still means integer coefficients.
class MixedGroup {
  public:
    MixedGroup() = default;
    explicit MixedGroup(std::size_t ambient_dim)
        : ambient_(ambient_dim),
          free_(RatMatrix::zero(ambient_dim, 0)),
          divisible_(RatMatrix::zero(ambient_dim, 0)) {}
    MixedGroup(std::size_t ambient_dim, RatMatrix free_gens, RatMatrix divisible_gens);

    static MixedGroup lattice(const RatMatrix& gens);
    static MixedGroup subspace(const RatMatrix& gens);
    static MixedGroup full_lattice(std::size_t n);   // Z^n
    static MixedGroup full_space(std::size_t n);     // Q^n

    std::size_t ambient_dim() const { return ambient_; }
    const RatMatrix& free_gens() const { return free_; }
    const RatMatrix& divisible_gens() const { return divisible_; }
    // [free | divisible], the generating set used by pairing conditions.
    RatMatrix generators() const { return free_.augmented(divisible_); }

    bool is_trivial() const { return free_.cols() == 0 && divisible_.cols() == 0; }
    bool contains(const std::vector<Rat>& x) const;
    bool contains(const MixedGroup& other) const;

    bool operator==(const MixedGroup&) const = default;

  private:
    std::size_t ambient_ = 0;
    RatMatrix free_;
    RatMatrix divisible_;
};

// Solution subgroup of  a_free c + a_div w = 0  with c integer and w
// rational; the building block behind radicals, kernels and subspace
// intersections. Returns generators in the ambient space [f | d] act on.
MixedGroup mixed_solve(const RatMatrix& a_free, const RatMatrix& a_div, const RatMatrix& f,
                       const RatMatrix& d);

// (B, tau) with tau(x, y) = 2*pi * x^T S y and S antisymmetric rational.
// All integrality conditions are phrased on x^T S y directly: tau in 2*pi*Z
// is the same as x^T S y integral.
class PresymplecticGroup {
  public:
    PresymplecticGroup(MixedGroup group, RatMatrix s);

    const MixedGroup& group() const { return group_; }
    const RatMatrix& s() const { return s_; }
    std::size_t ambient_dim() const { return group_.ambient_dim(); }

    // x^T S y; tau is 2*pi times this.
    Rat pairing(const std::vector<Rat>& x, const std::vector<Rat>& y) const;

    bool operator==(const PresymplecticGroup&) const = default;

  private:
    MixedGroup group_;
    RatMatrix s_;
};

// {psi in B : tau(B, psi) = 0}
MixedGroup radical(const PresymplecticGroup& b);

// {psi in B : tau(B, psi) in 2*pi*Z}: equalities against divisible
// generators, integralities against lattice generators.
MixedGroup center(const PresymplecticGroup& b);

// Presymplectic-structure-preserving group homomorphism, represented by a
// rational matrix on ambient spaces. Constructed through validate_morphism.
struct PAGMorphism {
    std::shared_ptr<const PresymplecticGroup> source;
    std::shared_ptr<const PresymplecticGroup> target;
    RatMatrix matrix;

    std::vector<Rat> apply(const std::vector<Rat>& x) const { return matrix.apply(x); }
};

// Checks that t maps B1 into B2 (on generators) and preserves the pairing on
// generator pairs; throws PreconditionError with the offending data otherwise.
PAGMorphism validate_morphism(const RatMatrix& t, std::shared_ptr<const PresymplecticGroup> b1,
                              std::shared_ptr<const PresymplecticGroup> b2);

PAGMorphism compose(const PAGMorphism& second, const PAGMorphism& first);

PAGMorphism identity_morphism(std::shared_ptr<const PresymplecticGroup> b);

// {x in B1 : t x = 0}
MixedGroup kernel_of_morphism(const PAGMorphism& phi);

bool is_injective(const PAGMorphism& phi);

// B/Q for a subgroup Q of the radical, presented in a smaller ambient space.
struct Quotient {
    std::shared_ptr<const PresymplecticGroup> group;  // B/Q
    PAGMorphism projection;                           // B -> B/Q, kernel exactly Q
    RatMatrix section;                                // right inverse of the projection matrix
};

// Throws PreconditionError("not quotientable") when q is not inside the
// radical, and reports torsion when B/Q is not representable torsion-free.
Quotient quotient(std::shared_ptr<const PresymplecticGroup> b, const MixedGroup& q);

// {x in B : x in span(v)}
MixedGroup intersect_with_subspace(const MixedGroup& b, const RatMatrix& v);

}  // namespace gaugeobs::pag
