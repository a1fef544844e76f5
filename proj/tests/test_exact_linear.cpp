#include "gaugeobs/exact_linear.hpp"

#include "doctest.h"
#include "test_support.hpp"

using namespace gaugeobs;
using namespace gaugeobs::lin;
namespace ts = gaugeobs::testsupport;

TEST_CASE("smith normal form: identity") {
    auto s = smith_normal_form(IntMatrix::identity(2));
    CHECK(s.verify());
    CHECK(s.D == IntMatrix::identity(2));
}

TEST_CASE("smith normal form: [[2,4],[6,8]] has diagonal (2,4)") {
    // oracle: d1 = gcd of all entries = 2, d1*d2 = |det| = |16-24| = 8
    IntMatrix a{{Int(2), Int(4)}, {Int(6), Int(8)}};
    auto s = smith_normal_form(a);
    CHECK(s.verify());
    CHECK(s.D(0, 0) == 2);
    CHECK(s.D(1, 1) == 4);
    CHECK(s.U * a * s.V == s.D);
}

TEST_CASE("smith normal form: zero 1x3") {
    auto s = smith_normal_form(IntMatrix::zero(1, 3));
    CHECK(s.verify());
    CHECK(s.rank() == 0);
    CHECK(s.D.is_zero());
}

TEST_CASE("smith normal form: empty shapes are legal") {
    for (auto [r, c] : {std::pair<std::size_t, std::size_t>{0, 0}, {0, 3}, {3, 0}}) {
        auto s = smith_normal_form(IntMatrix::zero(r, c));
        CHECK(s.verify());
        CHECK(s.rank() == 0);
    }
}

TEST_CASE("smith normal form invariants on random matrices") {
    auto rng = ts::make_rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = static_cast<std::size_t>(ts::random_int(rng, 0, 4).get_si());
        std::size_t c = static_cast<std::size_t>(ts::random_int(rng, 0, 4).get_si());
        IntMatrix a = ts::random_int_matrix(rng, r, c, -9, 9);
        auto s = smith_normal_form(a);
        CHECK(s.verify());
        // deterministic: recomputation is identical
        auto s2 = smith_normal_form(a);
        CHECK(s.D == s2.D);
        CHECK(s.U == s2.U);
        CHECK(s.V == s2.V);
    }
}

TEST_CASE("integer kernel basis") {
    SUBCASE("[[1,1]] has rank-1 kernel spanned by (1,-1) up to sign") {
        IntMatrix a{{Int(1), Int(1)}};
        IntMatrix k = integer_kernel_basis(a);
        REQUIRE(k.cols() == 1);
        CHECK((a * k).is_zero());
        CHECK(abs(k(0, 0)) == 1);
        CHECK(k(0, 0) == -k(1, 0));
        // saturation: the kernel lattice has index 1 in its rational span
        auto s = smith_normal_form(k);
        for (const auto& d : s.diagonal()) CHECK(d == 1);
    }
    SUBCASE("identity has empty kernel") {
        CHECK(integer_kernel_basis(IntMatrix::identity(3)).cols() == 0);
    }
    SUBCASE("zero 1x2 has the standard basis as kernel") {
        IntMatrix k = integer_kernel_basis(IntMatrix::zero(1, 2));
        REQUIRE(k.cols() == 2);
        CHECK(abs(determinant(k)) == 1);
    }
    SUBCASE("random matrices: kernel is annihilated and saturated") {
        auto rng = ts::make_rng(12);
        for (int trial = 0; trial < 100; ++trial) {
            IntMatrix a = ts::random_int_matrix(rng, 2, 4, -4, 4);
            IntMatrix k = integer_kernel_basis(a);
            CHECK((a * k).is_zero());
            CHECK(k.cols() == 4 - rational_rank(to_rational(a)));  // rank-nullity
            auto s = smith_normal_form(k);
            for (const auto& d : s.diagonal()) CHECK(d == 1);
        }
    }
}

TEST_CASE("cokernel invariants") {
    CHECK(cokernel_invariants(IntMatrix{{Int(2)}}) == FgAbelianGroup{0, {Int(2)}});
    CHECK(cokernel_invariants(IntMatrix::zero(3, 0)) == FgAbelianGroup{3, {}});
    CHECK(cokernel_invariants(IntMatrix::identity(4)) == FgAbelianGroup{0, {}});
    // Z^2 / <(2,0),(0,2)> = (Z/2)^2
    IntMatrix a{{Int(2), Int(0)}, {Int(0), Int(2)}};
    CHECK(cokernel_invariants(a) == FgAbelianGroup{0, {Int(2), Int(2)}});
}

TEST_CASE("rational rank / kernel / image") {
    SUBCASE("[[1,2],[2,4]] has rank 1") {
        RatMatrix a{{Rat(1), Rat(2)}, {Rat(2), Rat(4)}};
        auto out = rational_rank_kernel_image(a);
        CHECK(out.rank == 1);
        REQUIRE(out.kernel.cols() == 1);
        CHECK((a * out.kernel).is_zero());
        // spans (2,-1)
        CHECK(out.kernel(0, 0) * Rat(-1) == out.kernel(1, 0) * Rat(2));
    }
    SUBCASE("identity") {
        auto out = rational_rank_kernel_image(RatMatrix::identity(3));
        CHECK(out.rank == 3);
        CHECK(out.kernel.cols() == 0);
    }
    SUBCASE("zero matrix") {
        auto out = rational_rank_kernel_image(RatMatrix::zero(2, 3));
        CHECK(out.rank == 0);
        CHECK(out.kernel == RatMatrix::identity(3));
    }
    SUBCASE("rank-nullity on random matrices") {
        auto rng = ts::make_rng(13);
        for (int trial = 0; trial < 100; ++trial) {
            RatMatrix a = ts::random_rat_matrix(rng, 3, 4);
            auto out = rational_rank_kernel_image(a);
            CHECK(out.rank + out.kernel.cols() == 4);
            CHECK((a * out.kernel).is_zero());
            CHECK(rational_rank(out.image) == out.rank);
        }
    }
}

TEST_CASE("solvers") {
    RatMatrix a{{Rat(1), Rat(2)}, {Rat(3), Rat(4)}};
    auto x = solve_rational(a, {Rat(5), Rat(6)});
    REQUIRE(x.has_value());
    CHECK(a.apply(*x) == std::vector<Rat>{Rat(5), Rat(6)});
    CHECK(!solve_rational(RatMatrix::zero(1, 2), {Rat(1)}).has_value());

    IntMatrix b{{Int(2), Int(0)}, {Int(0), Int(3)}};
    auto y = solve_integer(b, {Int(4), Int(9)});
    REQUIRE(y.has_value());
    CHECK((*y)[0] == 2);
    CHECK((*y)[1] == 3);
    CHECK(!solve_integer(b, {Int(1), Int(0)}).has_value());

    RatMatrix inv = rational_inverse(a);
    CHECK(a * inv == RatMatrix::identity(2));
}

TEST_CASE("hermite column basis is canonical") {
    // two generating sets of the same lattice give the same basis
    IntMatrix g1{{Int(2), Int(0)}, {Int(0), Int(3)}};
    IntMatrix g2{{Int(2), Int(2), Int(-4)}, {Int(3), Int(-3), Int(6)}};
    // g2 columns: (2,3),(2,-3),(-4,6); the lattice they span contains (4,0)=(2,3)+(2,-3)
    // and differs from g1's; just check self-consistency instead
    IntMatrix h1 = hermite_column_basis(g1);
    IntMatrix h1b = hermite_column_basis(g1.augmented(g1));
    CHECK(h1 == h1b);
    IntMatrix h2 = hermite_column_basis(g2);
    IntMatrix h2b = hermite_column_basis(g2.columns({2, 0, 1}));
    CHECK(h2 == h2b);
    CHECK(hermite_column_basis(IntMatrix::zero(2, 0)).cols() == 0);
}

namespace {

// brute-force membership of x in the column lattice of basis
bool in_lattice(const RatMatrix& basis, const std::vector<Rat>& x) {
    auto sol = solve_rational(basis, x);
    if (!sol.has_value()) return false;
    // basis columns independent -> solution unique
    for (const auto& c : *sol)
        if (!is_integer(c)) return false;
    return true;
}

}  // namespace

TEST_CASE("integral preimage lattice: worked examples") {
    SUBCASE("half-scaling on Z^2 gives 2Z^2") {
        RatMatrix m{{make_rat(1, 2), Rat(0)}, {Rat(0), make_rat(1, 2)}};
        IntMatrix r = integral_preimage_lattice(m, IntMatrix::identity(2));
        // brute-force oracle over the window [-4,4]^2
        for (long x = -4; x <= 4; ++x)
            for (long y = -4; y <= 4; ++y) {
                std::vector<Rat> v{Rat(x), Rat(y)};
                bool integral = is_integer(m.apply(v)[0]) && is_integer(m.apply(v)[1]);
                CHECK(in_lattice(to_rational(r), v) == integral);
            }
    }
    SUBCASE("integer matrix leaves Z^2 intact") {
        RatMatrix m{{Rat(3), Rat(1)}, {Rat(0), Rat(-2)}};
        IntMatrix r = integral_preimage_lattice(m, IntMatrix::identity(2));
        CHECK(abs(determinant(r)) == 1);
    }
    SUBCASE("congruence condition a+b = 0 mod 3") {
        RatMatrix m{{make_rat(1, 3), make_rat(1, 3)}};
        IntMatrix r = integral_preimage_lattice(m, IntMatrix::identity(2));
        for (long x = -4; x <= 4; ++x)
            for (long y = -4; y <= 4; ++y) {
                std::vector<Rat> v{Rat(x), Rat(y)};
                bool expect = (x + y) % 3 == 0;
                CHECK(in_lattice(to_rational(r), v) == expect);
            }
    }
    SUBCASE("dependent lattice generators are rejected") {
        IntMatrix dep{{Int(1), Int(2)}, {Int(1), Int(2)}};
        CHECK_THROWS_AS(integral_preimage_lattice(RatMatrix::identity(2), dep),
                        PreconditionError);
    }
}

TEST_CASE("integral preimage lattice: random window oracle") {
    auto rng = ts::make_rng(14);
    int points_checked = 0;
    for (int trial = 0; trial < 25; ++trial) {
        RatMatrix m = ts::random_rat_matrix(rng, 2, 2, 3, 4);
        IntMatrix lattice = IntMatrix::identity(2);
        IntMatrix r = integral_preimage_lattice(m, lattice);
        // every result column lies in the lattice and maps to integers
        for (std::size_t j = 0; j < r.cols(); ++j) {
            auto col = to_rational(r.col(j));
            for (const auto& e : m.apply(col)) CHECK(is_integer(e));
        }
        // 40 random window points per instance
        for (int p = 0; p < 40; ++p) {
            std::vector<Rat> v{Rat(ts::random_int(rng, -6, 6)), Rat(ts::random_int(rng, -6, 6))};
            bool integral = true;
            for (const auto& e : m.apply(v))
                if (!is_integer(e)) integral = false;
            CHECK(in_lattice(to_rational(r), v) == integral);
            ++points_checked;
        }
    }
    CHECK(points_checked == 1000);
}
