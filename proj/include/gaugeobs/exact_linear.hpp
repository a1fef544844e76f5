#pragma once

#include <optional>
#include <vector>

#include "gaugeobs/matrix.hpp"

namespace gaugeobs::lin {

// U * source * V = D with U, V unimodular and D diagonal, the diagonal
// entries non-negative and forming a divisibility chain with zeros trailing.
struct SmithDecomposition {
    IntMatrix U;       // rows x rows
    IntMatrix D;       // rows x cols
    IntMatrix V;       // cols x cols
    IntMatrix source;  // the decomposed matrix

    std::size_t rank() const;
    std::vector<Int> diagonal() const;
    // Re-checks U*source*V = D, unimodularity and the divisibility chain.
    bool verify() const;
};

// Normal form of a finitely generated Abelian group:
// Z^free_rank (+) Z/t1 (+) Z/t2 (+) ... with t1 | t2 | ...
struct FgAbelianGroup {
    long free_rank = 0;
    std::vector<Int> torsion;

    bool operator==(const FgAbelianGroup&) const = default;
    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
};

SmithDecomposition smith_normal_form(const IntMatrix& a);

// det of a square integer matrix (Bareiss-free: via rational elimination).
Int determinant(const IntMatrix& a);

// Columns form a basis of {x in Z^cols : a x = 0}; always saturated.
IntMatrix integer_kernel_basis(const IntMatrix& a);

// Cokernel of a : Z^cols -> Z^rows in normal form.
FgAbelianGroup cokernel_invariants(const IntMatrix& a);

// Reduced row echelon form data of a rational matrix.
struct Rref {
    RatMatrix r;                      // the reduced matrix
    std::vector<std::size_t> pivots;  // pivot column per pivot row
    std::size_t rank = 0;
};

Rref rational_rref(const RatMatrix& a);

std::size_t rational_rank(const RatMatrix& a);

// Columns form the RREF-derived basis of {x : a x = 0}: one vector per free
// column, with 1 at the free column and the negated pivot-row coefficients
// at the pivot columns.
RatMatrix rational_kernel_basis(const RatMatrix& a);

// Columns of `a` at the RREF pivot positions.
RatMatrix rational_image_basis(const RatMatrix& a);

struct RankKernelImage {
    std::size_t rank = 0;
    RatMatrix kernel;
    RatMatrix image;
};

RankKernelImage rational_rank_kernel_image(const RatMatrix& a);

// One solution of a x = b chosen deterministically (free variables zero),
// or nullopt when inconsistent.
std::optional<std::vector<Rat>> solve_rational(const RatMatrix& a, const std::vector<Rat>& b);

// Integer solution of a x = b over Z, or nullopt when none exists.
std::optional<std::vector<Int>> solve_integer(const IntMatrix& a, const std::vector<Int>& b);

// Inverse of a square rational matrix; fails when singular.
RatMatrix rational_inverse(const RatMatrix& a);

// Canonical column-lattice basis: unique Hermite form of span_Z(columns).
// The zero lattice yields a rows x 0 matrix.
IntMatrix hermite_column_basis(const IntMatrix& a);

// Canonical basis of the rational lattice spanned by integer combinations of
// the columns (a finitely generated subgroup of Q^rows is always free).
RatMatrix hermite_column_basis_rat(const RatMatrix& a);

// Basis of {x in span_Z(L) : m x is integral}. Requires the columns of L to
// be linearly independent; the result is canonical (Hermite form).
IntMatrix integral_preimage_lattice(const RatMatrix& m, const IntMatrix& lattice);

// Same computation for a lattice with rational coordinates.
RatMatrix integral_preimage_lattice_rat(const RatMatrix& m, const RatMatrix& lattice);

}  // namespace gaugeobs::lin
