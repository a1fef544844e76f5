#include "gaugeobs/presymplectic.hpp"

#include <algorithm>

namespace gaugeobs::pag {

namespace {

// Reduced-echelon basis of the column span, returned as columns, plus the
// pivot coordinates. Canonical for the subspace.
std::pair<RatMatrix, std::vector<std::size_t>> subspace_echelon_basis(const RatMatrix& gens) {
    lin::Rref rr = lin::rational_rref(gens.transposed());
    RatMatrix basis(gens.rows(), rr.rank);
    for (std::size_t i = 0; i < rr.rank; ++i)
        for (std::size_t j = 0; j < gens.rows(); ++j) basis(j, i) = rr.r(i, j);
    return {basis, rr.pivots};
}

// x minus its divisible-span component; zeroes the pivot coordinates.
std::vector<Rat> reduce_mod_subspace(const RatMatrix& basis,
                                     const std::vector<std::size_t>& pivots,
                                     std::vector<Rat> x) {
    for (std::size_t k = 0; k < pivots.size(); ++k) {
        Rat coeff = x[pivots[k]];
        if (coeff == 0) continue;
        for (std::size_t j = 0; j < x.size(); ++j) x[j] -= coeff * basis(j, k);
    }
    return x;
}

RatMatrix drop_zero_columns(const RatMatrix& m) {
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        bool zero = true;
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (m(i, j) != 0) {
                zero = false;
                break;
            }
        if (!zero) keep.push_back(j);
    }
    return m.columns(keep);
}

}  // namespace

MixedGroup::MixedGroup(std::size_t ambient_dim, RatMatrix free_gens, RatMatrix divisible_gens)
    : ambient_(ambient_dim) {
    if (free_gens.rows() != ambient_ || divisible_gens.rows() != ambient_)
        throw ValidationError("mixed group generators have wrong ambient dimension");
    auto [dbasis, pivots] = subspace_echelon_basis(divisible_gens);
    divisible_ = dbasis;
    RatMatrix reduced(ambient_, free_gens.cols());
    for (std::size_t j = 0; j < free_gens.cols(); ++j)
        reduced.set_col(j, reduce_mod_subspace(divisible_, pivots, free_gens.col(j)));
    free_ = lin::hermite_column_basis_rat(drop_zero_columns(reduced));
}

MixedGroup MixedGroup::lattice(const RatMatrix& gens) {
    return MixedGroup(gens.rows(), gens, RatMatrix::zero(gens.rows(), 0));
}

MixedGroup MixedGroup::subspace(const RatMatrix& gens) {
    return MixedGroup(gens.rows(), RatMatrix::zero(gens.rows(), 0), gens);
}

MixedGroup MixedGroup::full_lattice(std::size_t n) { return lattice(RatMatrix::identity(n)); }

MixedGroup MixedGroup::full_space(std::size_t n) { return subspace(RatMatrix::identity(n)); }

bool MixedGroup::contains(const std::vector<Rat>& x) const {
    if (x.size() != ambient_) throw ValidationError("membership: dimension mismatch");
    auto [dbasis, pivots] = subspace_echelon_basis(divisible_);
    std::vector<Rat> reduced = reduce_mod_subspace(dbasis, pivots, x);
    if (free_.cols() == 0) {
        for (const auto& v : reduced)
            if (v != 0) return false;
        return true;
    }
    auto sol = lin::solve_rational(free_, reduced);
    if (!sol) return false;
    for (const auto& c : *sol)
        if (!is_integer(c)) return false;
    return true;
}

bool MixedGroup::contains(const MixedGroup& other) const {
    if (other.ambient_ != ambient_) return false;
    // divisible generators must land in the divisible subspace
    for (std::size_t j = 0; j < other.divisible_.cols(); ++j)
        if (!lin::solve_rational(divisible_, other.divisible_.col(j))) return false;
    for (std::size_t j = 0; j < other.free_.cols(); ++j)
        if (!contains(other.free_.col(j))) return false;
    return true;
}

MixedGroup mixed_solve(const RatMatrix& a_free, const RatMatrix& a_div, const RatMatrix& f,
                       const RatMatrix& d) {
    const std::size_t n = f.rows();
    // divisible solutions: a_div w = 0
    RatMatrix wker = lin::rational_kernel_basis(a_div);
    RatMatrix div_gens = d * wker;

    // integer c with a_free c in the column span of a_div
    RatMatrix leftnull = lin::rational_kernel_basis(a_div.transposed()).transposed();
    RatMatrix m = leftnull * a_free;
    Int den = common_denominator(m);
    IntMatrix mi = to_integral(scale(m, Rat(den)));
    IntMatrix cbasis = lin::integer_kernel_basis(mi);

    RatMatrix free_gens(n, cbasis.cols());
    for (std::size_t j = 0; j < cbasis.cols(); ++j) {
        auto c = to_rational(cbasis.col(j));
        auto rhs = a_free.apply(c);
        for (auto& v : rhs) v = -v;
        auto w = lin::solve_rational(a_div, rhs);
        if (!w) throw Error("mixed solve: inconsistent by construction");
        std::vector<Rat> x = f.apply(c);
        auto dx = d.apply(*w);
        for (std::size_t i = 0; i < n; ++i) x[i] += dx[i];
        free_gens.set_col(j, x);
    }
    return MixedGroup(n, free_gens, div_gens);
}

PresymplecticGroup::PresymplecticGroup(MixedGroup group, RatMatrix s)
    : group_(std::move(group)), s_(std::move(s)) {
    if (s_.rows() != group_.ambient_dim() || s_.cols() != group_.ambient_dim())
        throw ValidationError("pairing matrix shape mismatch");
    if (s_.transposed() != -s_) throw ValidationError("pairing matrix must be antisymmetric");
}

Rat PresymplecticGroup::pairing(const std::vector<Rat>& x, const std::vector<Rat>& y) const {
    auto sy = s_.apply(y);
    Rat acc(0);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0 && sy[i] != 0) acc += x[i] * sy[i];
    return acc;
}

MixedGroup radical(const PresymplecticGroup& b) {
    const auto& f = b.group().free_gens();
    const auto& d = b.group().divisible_gens();
    RatMatrix m = b.group().generators().transposed() * b.s();
    return mixed_solve(m * f, m * d, f, d);
}

MixedGroup center(const PresymplecticGroup& b) {
    const auto& f = b.group().free_gens();
    const auto& d = b.group().divisible_gens();
    const std::size_t a = f.cols(), dd = d.cols();

    // equality rows (divisible generators) and integrality rows (lattice
    // generators), both acting on the coefficient space (c, w)
    RatMatrix k0 = (d.transposed() * b.s() * f).augmented(d.transposed() * b.s() * d);
    RatMatrix k1 = (f.transposed() * b.s() * f).augmented(f.transposed() * b.s() * d);

    // L(v) = (c-part of v ; k1 v) must be integral
    RatMatrix lfull(2 * a, a + dd);
    for (std::size_t i = 0; i < a; ++i) lfull(i, i) = 1;
    for (std::size_t j = 0; j < a + dd; ++j)
        for (std::size_t i = 0; i < a; ++i) lfull(a + i, j) = k1(i, j);

    RatMatrix v = lin::rational_kernel_basis(k0);

    // divisible part: kernel of [k0; lfull]
    RatMatrix stacked(k0.rows() + 2 * a, a + dd);
    for (std::size_t j = 0; j < a + dd; ++j) {
        for (std::size_t i = 0; i < k0.rows(); ++i) stacked(i, j) = k0(i, j);
        for (std::size_t i = 0; i < 2 * a; ++i) stacked(k0.rows() + i, j) = lfull(i, j);
    }
    RatMatrix dcen = lin::rational_kernel_basis(stacked);

    // complement of dcen inside v
    std::vector<std::size_t> keep;
    RatMatrix accum = dcen;
    for (std::size_t j = 0; j < v.cols(); ++j) {
        RatMatrix trial = accum.augmented(v.columns({j}));
        if (lin::rational_rank(trial) > lin::rational_rank(accum)) {
            keep.push_back(j);
            accum = trial;
        }
    }
    RatMatrix comp = v.columns(keep);

    RatMatrix lattice_coef(a + dd, 0);
    if (comp.cols() > 0) {
        RatMatrix t = lfull * comp;
        if (lin::rational_rank(t) != t.cols())
            throw Error("center: integrality map unexpectedly degenerate");
        // {y : t y integral} for y rational, t of full column rank
        Int q = common_denominator(t);
        IntMatrix nmat = to_integral(scale(t, Rat(q)));
        auto snf = lin::smith_normal_form(nmat);
        RatMatrix tbasis(comp.cols(), comp.cols());
        for (std::size_t j = 0; j < comp.cols(); ++j) {
            Rat factor = make_rat(q, snf.D(j, j));
            for (std::size_t i = 0; i < comp.cols(); ++i)
                tbasis(i, j) = Rat(snf.V(i, j)) * factor;
        }
        lattice_coef = comp * tbasis;
    }

    RatMatrix gens = f.augmented(d);  // coefficient -> ambient
    return MixedGroup(b.ambient_dim(), gens * lattice_coef, gens * dcen);
}

PAGMorphism validate_morphism(const RatMatrix& t, std::shared_ptr<const PresymplecticGroup> b1,
                              std::shared_ptr<const PresymplecticGroup> b2) {
    if (t.cols() != b1->ambient_dim() || t.rows() != b2->ambient_dim())
        throw ValidationError("morphism matrix shape mismatch");
    const auto& f1 = b1->group().free_gens();
    const auto& d1 = b1->group().divisible_gens();
    for (std::size_t j = 0; j < f1.cols(); ++j)
        if (!b2->group().contains(t.apply(f1.col(j))))
            throw PreconditionError("not a group map into target (lattice generator " +
                                    std::to_string(j) + ")");
    for (std::size_t j = 0; j < d1.cols(); ++j) {
        // divisible elements must stay divisible in the target
        if (!lin::solve_rational(b2->group().divisible_gens(), t.apply(d1.col(j))))
            throw PreconditionError("not a group map into target (divisible generator " +
                                    std::to_string(j) + ")");
    }
    RatMatrix g = b1->group().generators();
    RatMatrix lhs = (t * g).transposed() * b2->s() * (t * g);
    RatMatrix rhs = g.transposed() * b1->s() * g;
    if (lhs != rhs) {
        for (std::size_t i = 0; i < lhs.rows(); ++i)
            for (std::size_t j = 0; j < lhs.cols(); ++j)
                if (lhs(i, j) != rhs(i, j))
                    throw PreconditionError("does not preserve tau (generator pair " +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
    }
    return PAGMorphism{std::move(b1), std::move(b2), t};
}

PAGMorphism compose(const PAGMorphism& second, const PAGMorphism& first) {
    if (first.target.get() != second.source.get() && !(*first.target == *second.source))
        throw ValidationError("morphism composition: middle groups differ");
    return validate_morphism(second.matrix * first.matrix, first.source, second.target);
}

PAGMorphism identity_morphism(std::shared_ptr<const PresymplecticGroup> b) {
    RatMatrix id = RatMatrix::identity(b->ambient_dim());
    auto copy = b;
    return PAGMorphism{std::move(copy), std::move(b), std::move(id)};
}

MixedGroup kernel_of_morphism(const PAGMorphism& phi) {
    const auto& f = phi.source->group().free_gens();
    const auto& d = phi.source->group().divisible_gens();
    return mixed_solve(phi.matrix * f, phi.matrix * d, f, d);
}

bool is_injective(const PAGMorphism& phi) { return kernel_of_morphism(phi).is_trivial(); }

MixedGroup intersect_with_subspace(const MixedGroup& b, const RatMatrix& v) {
    RatMatrix leftnull = lin::rational_kernel_basis(v.transposed()).transposed();
    const auto& f = b.free_gens();
    const auto& d = b.divisible_gens();
    return mixed_solve(leftnull * f, leftnull * d, f, d);
}

Quotient quotient(std::shared_ptr<const PresymplecticGroup> b, const MixedGroup& q) {
    if (q.ambient_dim() != b->ambient_dim())
        throw ValidationError("quotient subgroup lives in a different ambient space");
    MixedGroup rad = radical(*b);
    if (!rad.contains(q)) throw PreconditionError("not quotientable: subgroup not in radical");

    const std::size_t n = b->ambient_dim();
    auto [span_basis, pivots] = subspace_echelon_basis(q.generators());
    const std::size_t r = span_basis.cols();

    // representability: the quotient is torsion-free iff B meets span(Q) in
    // exactly Q
    if (!(intersect_with_subspace(b->group(), span_basis) == q))
        throw PreconditionError("quotient has torsion and is not representable");

    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < n; ++i)
        if (!is_pivot[i]) kept.push_back(i);

    // projection: reduce modulo span(Q), then drop the pivot coordinates
    RatMatrix t(n - r, n);
    for (std::size_t col = 0; col < n; ++col) {
        std::vector<Rat> e(n, Rat(0));
        e[col] = 1;
        auto reduced = reduce_mod_subspace(span_basis, pivots, e);
        for (std::size_t i = 0; i < kept.size(); ++i) t(i, col) = reduced[kept[i]];
    }
    // section: embed the kept coordinates with zeros at the pivots
    RatMatrix sec(n, n - r);
    for (std::size_t i = 0; i < kept.size(); ++i) sec(kept[i], i) = 1;

    MixedGroup qgroup(n - r, t * b->group().free_gens(), t * b->group().divisible_gens());
    RatMatrix s_new = sec.transposed() * b->s() * sec;
    auto target = std::make_shared<PresymplecticGroup>(std::move(qgroup), std::move(s_new));

    PAGMorphism proj = validate_morphism(t, b, target);
    if (!(kernel_of_morphism(proj) == q)) throw Error("quotient projection kernel mismatch");
    return Quotient{std::move(target), std::move(proj), std::move(sec)};
}

}  // namespace gaugeobs::pag
