#include "gaugeobs/cech.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace gaugeobs::cech {

namespace {

bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

void collect_faces(const std::vector<int>& simplex, std::size_t k,
                   std::set<std::vector<int>>& out) {
    // all (k+1)-element subsets, kept in increasing order
    std::size_t n = simplex.size();
    if (k + 1 > n) return;
    std::vector<std::size_t> idx(k + 1);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        std::vector<int> face(k + 1);
        for (std::size_t i = 0; i <= k; ++i) face[i] = simplex[idx[i]];
        out.insert(std::move(face));
        std::size_t i = k + 1;
        while (i > 0 && idx[i - 1] == n - (k + 1) + (i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j <= k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

SimplicialComplex::SimplicialComplex(std::size_t vertex_count,
                                     std::vector<std::vector<int>> maximal)
    : vertex_count_(vertex_count), maximal_(std::move(maximal)) {
    std::vector<bool> seen(vertex_count, false);
    for (auto& s : maximal_) {
        if (s.empty()) throw ValidationError("empty simplex");
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] < 0 || static_cast<std::size_t>(s[i]) >= vertex_count_)
                throw ValidationError("simplex vertex out of range");
            if (i > 0 && s[i] <= s[i - 1])
                throw ValidationError("simplex vertices must be strictly increasing");
            seen[static_cast<std::size_t>(s[i])] = true;
        }
    }
    for (std::size_t v = 0; v < vertex_count_; ++v)
        if (!seen[v]) throw ValidationError("vertex not contained in any simplex");
    std::sort(maximal_.begin(), maximal_.end());
    maximal_.erase(std::unique(maximal_.begin(), maximal_.end()), maximal_.end());
    for (const auto& a : maximal_)
        for (const auto& b : maximal_)
            if (&a != &b && is_subset(a, b))
                throw ValidationError("maximal simplex contained in another");
}

const std::vector<std::vector<int>>& SimplicialComplex::simplices(std::size_t k) const {
    auto it = faces_.find(k);
    if (it != faces_.end()) return it->second;
    std::set<std::vector<int>> acc;
    for (const auto& s : maximal_) collect_faces(s, k, acc);
    auto [ins, _] = faces_.emplace(k, std::vector<std::vector<int>>(acc.begin(), acc.end()));
    return ins->second;
}

std::size_t SimplicialComplex::dimension() const {
    std::size_t d = 0;
    for (const auto& s : maximal_) d = std::max(d, s.size() - 1);
    return d;
}

std::size_t SimplicialComplex::connected_components() const {
    std::vector<std::size_t> parent(vertex_count_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto& s : maximal_)
        for (std::size_t i = 1; i < s.size(); ++i)
            parent[find(static_cast<std::size_t>(s[i]))] = find(static_cast<std::size_t>(s[0]));
    std::set<std::size_t> roots;
    for (std::size_t v = 0; v < vertex_count_; ++v) roots.insert(find(v));
    return roots.size();
}

std::size_t SimplicialComplex::simplex_index(std::size_t k, const std::vector<int>& s) const {
    const auto& all = simplices(k);
    auto it = std::lower_bound(all.begin(), all.end(), s);
    if (it == all.end() || *it != s) throw Error("simplex not in complex");
    return static_cast<std::size_t>(it - all.begin());
}

IntMatrix SimplicialComplex::coboundary(std::size_t k) const {
    const auto& low = simplices(k);
    const auto& high = simplices(k + 1);
    IntMatrix d(high.size(), low.size());
    for (std::size_t r = 0; r < high.size(); ++r) {
        const auto& s = high[r];
        int sign = 1;
        for (std::size_t i = 0; i < s.size(); ++i) {
            std::vector<int> face;
            face.reserve(s.size() - 1);
            for (std::size_t j = 0; j < s.size(); ++j)
                if (j != i) face.push_back(s[j]);
            d(r, simplex_index(k, face)) += sign;
            sign = -sign;
        }
    }
    return d;
}

SpaceModel::SpaceModel(Body body, std::size_t dim_m, bool oriented, bool compact_cauchy)
    : body_(std::move(body)), dim_m_(dim_m), compact_cauchy_(compact_cauchy) {
    if (!oriented) throw ValidationError("non-orientable space models are not supported");
    if (dim_m_ < 2) throw ValidationError("spacetime dimension must be at least 2");
    if (is_simplicial()) {
        components_ = complex().connected_components();
    } else {
        const auto& f = formal();
        if (f.betti.empty() || f.betti[0] < 1)
            throw ValidationError("formal cohomology needs betti[0] >= 1");
        for (long b : f.betti)
            if (b < 0) throw ValidationError("negative betti number");
        components_ = static_cast<std::size_t>(f.betti[0]);
    }
}

long SpaceModel::betti(std::size_t k) const {
    if (!is_simplicial()) return formal().betti_at(k);
    const auto& cx = complex();
    if (k > cx.dimension()) return 0;
    RatMatrix dk = to_rational(cx.coboundary(k));
    std::size_t rk = lin::rational_rank(dk);
    std::size_t rkm1 = 0;
    if (k > 0) rkm1 = lin::rational_rank(to_rational(cx.coboundary(k - 1)));
    return static_cast<long>(cx.simplices(k).size() - rk - rkm1);
}

SimplicialMap::SimplicialMap(const SimplicialComplex& src, const SimplicialComplex& tgt,
                             std::vector<int> vm)
    : source(&src), target(&tgt), vertex_map(std::move(vm)) {
    if (vertex_map.size() != src.vertex_count())
        throw ValidationError("vertex map length mismatch");
    for (int v : vertex_map)
        if (v < 0 || static_cast<std::size_t>(v) >= tgt.vertex_count())
            throw ValidationError("vertex map image out of range");
    for (const auto& s : src.maximal_simplices()) {
        std::set<int> image;
        for (int v : s) image.insert(vertex_map[static_cast<std::size_t>(v)]);
        std::vector<int> img(image.begin(), image.end());
        bool ok = false;
        for (const auto& t : tgt.maximal_simplices())
            if (is_subset(img, t)) {
                ok = true;
                break;
            }
        if (!ok) throw ValidationError("image of a simplex is not a simplex of the target");
    }
}

namespace {

// Integer cohomology of a complex in one degree, with everything needed to
// take class coordinates afterwards.
struct CohomologyData {
    IntMatrix kernel;  // basis of the degree-k integer cocycle lattice
    IntMatrix u;       // SNF row transform of the coboundary-image matrix
    RatMatrix u_inv;
    std::vector<Int> diag;
    std::vector<std::size_t> free_idx;
    std::vector<std::size_t> torsion_idx;
    FgAbelianGroup presentation;
};

CohomologyData compute_cohomology_data(const SimplicialComplex& cx, std::size_t k) {
    IntMatrix dk = cx.coboundary(k);
    std::size_t nk = cx.simplices(k).size();
    IntMatrix dkm1 = k > 0 ? cx.coboundary(k - 1) : IntMatrix::zero(nk, 0);
    if (k > 0 && !(dk * dkm1).is_zero()) throw Error("coboundary composition is nonzero");

    CohomologyData out;
    out.kernel = lin::integer_kernel_basis(dk);
    std::size_t z = out.kernel.cols();
    // express the image of delta^{k-1} in kernel coordinates
    RatMatrix kq = to_rational(out.kernel);
    IntMatrix r(z, dkm1.cols());
    for (std::size_t j = 0; j < dkm1.cols(); ++j) {
        auto sol = lin::solve_rational(kq, to_rational(dkm1.col(j)));
        if (!sol) throw Error("coboundary image escapes the cocycle lattice");
        for (std::size_t i = 0; i < z; ++i) {
            if (!is_integer((*sol)[i])) throw Error("kernel basis is not saturated");
            r(i, j) = (*sol)[i].get_num();
        }
    }
    auto snf = lin::smith_normal_form(r);
    out.u = snf.U;
    out.u_inv = lin::rational_inverse(to_rational(snf.U));
    out.diag.assign(z, Int(0));
    std::size_t n = std::min(snf.D.rows(), snf.D.cols());
    for (std::size_t i = 0; i < n; ++i) out.diag[i] = snf.D(i, i);
    for (std::size_t i = 0; i < z; ++i) {
        if (out.diag[i] == 0)
            out.free_idx.push_back(i);
        else if (out.diag[i] >= 2)
            out.torsion_idx.push_back(i);
    }
    out.presentation.free_rank = static_cast<long>(out.free_idx.size());
    for (auto i : out.torsion_idx) out.presentation.torsion.push_back(out.diag[i]);
    return out;
}

RatMatrix cocycles_from_indices(const CohomologyData& d, const std::vector<std::size_t>& idx) {
    RatMatrix cols = d.u_inv.columns(idx);
    return to_rational(d.kernel) * cols;
}

// coordinates of a cocycle's class w.r.t. the free generators
std::vector<Rat> free_class_coordinates(const CohomologyData& d, const std::vector<Rat>& cocycle) {
    auto y = lin::solve_rational(to_rational(d.kernel), cocycle);
    if (!y) throw Error("vector is not a cocycle of the expected degree");
    RatMatrix uq = to_rational(d.u);
    auto uy = uq.apply(*y);
    std::vector<Rat> coords;
    coords.reserve(d.free_idx.size());
    for (auto i : d.free_idx) coords.push_back(uy[i]);
    return coords;
}

}  // namespace

CohomologyGroup cohomology(const SimplicialComplex& k, std::size_t degree, Ring ring) {
    CohomologyData data = compute_cohomology_data(k, degree);
    CohomologyGroup g;
    g.degree = degree;
    g.ring = ring;
    g.presentation = data.presentation;
    if (ring == Ring::Q) g.presentation.torsion.clear();
    g.representatives = cocycles_from_indices(data, data.free_idx);
    g.torsion_representatives = ring == Ring::Z ? cocycles_from_indices(data, data.torsion_idx)
                                                : RatMatrix::zero(g.representatives.rows(), 0);
    // cross-check the rational dimension against the rank computation
    RatMatrix dk = to_rational(k.coboundary(degree));
    std::size_t rkm1 = degree > 0 ? lin::rational_rank(to_rational(k.coboundary(degree - 1))) : 0;
    long dim_q = static_cast<long>(k.simplices(degree).size() - lin::rational_rank(dk) - rkm1);
    if (dim_q != g.presentation.free_rank) throw Error("betti number mismatch across routes");
    return g;
}

RatMatrix lattice_in_real(const SimplicialComplex& k, std::size_t degree) {
    CohomologyData data = compute_cohomology_data(k, degree);
    RatMatrix gens = cocycles_from_indices(data, data.free_idx);
    RatMatrix lattice(data.free_idx.size(), gens.cols());
    for (std::size_t j = 0; j < gens.cols(); ++j) {
        auto coords = free_class_coordinates(data, gens.col(j));
        for (std::size_t i = 0; i < coords.size(); ++i) lattice(i, j) = coords[i];
    }
    return lattice;
}

CohomologyMap induced_pullback(const SimplicialMap& f, std::size_t degree, Ring ring) {
    const auto& src = *f.source;
    const auto& tgt = *f.target;
    const auto& src_simplices = src.simplices(degree);
    const auto& tgt_simplices = tgt.simplices(degree);

    // cochain-level pullback: rows source simplices, columns target simplices
    IntMatrix p(src_simplices.size(), tgt_simplices.size());
    for (std::size_t r = 0; r < src_simplices.size(); ++r) {
        const auto& s = src_simplices[r];
        std::vector<int> image(s.size());
        for (std::size_t i = 0; i < s.size(); ++i)
            image[i] = f.vertex_map[static_cast<std::size_t>(s[i])];
        // degenerate images contribute zero
        std::vector<int> sorted = image;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
        int sign = 1;  // parity of the sort permutation
        for (std::size_t i = 0; i < image.size(); ++i)
            for (std::size_t j = i + 1; j < image.size(); ++j)
                if (image[i] > image[j]) sign = -sign;
        p(r, tgt.simplex_index(degree, sorted)) = sign;
    }

    CohomologyData src_data = compute_cohomology_data(src, degree);
    CohomologyData tgt_data = compute_cohomology_data(tgt, degree);
    RatMatrix mapped = to_rational(p) * cocycles_from_indices(tgt_data, tgt_data.free_idx);

    CohomologyMap out;
    out.degree = degree;
    out.ring = ring;
    out.direction = MapDirection::pullback;
    out.matrix = RatMatrix(src_data.free_idx.size(), mapped.cols());
    for (std::size_t j = 0; j < mapped.cols(); ++j) {
        auto coords = free_class_coordinates(src_data, mapped.col(j));
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (ring == Ring::Z && !is_integer(coords[i]))
                throw Error("integral pullback came out fractional");
            out.matrix(i, j) = coords[i];
        }
    }
    return out;
}

CompactSupportGroup compact_support_group(const SpaceModel& x, std::size_t degree) {
    if (degree > x.dim_m())
        throw PreconditionError("compact support degree exceeds spacetime dimension");
    CompactSupportGroup g;
    g.degree = degree;
    g.dual_degree = x.dim_m() - degree;
    g.dimension = x.betti(g.dual_degree);
    return g;
}

SpaceMorphism::SpaceMorphism(std::shared_ptr<const SpaceModel> source,
                             std::shared_ptr<const SpaceModel> target,
                             std::vector<int> vertex_map)
    : source_(std::move(source)), target_(std::move(target)), vertex_map_(std::move(vertex_map)) {
    if (!source_->is_simplicial() || !target_->is_simplicial())
        throw ValidationError("simplicial morphism requires simplicial bodies on both sides");
    SimplicialMap check(source_->complex(), target_->complex(), *vertex_map_);
}

SpaceMorphism::SpaceMorphism(std::shared_ptr<const SpaceModel> source,
                             std::shared_ptr<const SpaceModel> target, PullbackFamily pullbacks)
    : source_(std::move(source)), target_(std::move(target)), pullbacks_(std::move(pullbacks)) {
    for (const auto& [deg, m] : pullbacks_) {
        if (m.rows() != static_cast<std::size_t>(source_->betti(deg)) ||
            m.cols() != static_cast<std::size_t>(target_->betti(deg)))
            throw ValidationError("pullback matrix shape mismatch in degree " +
                                  std::to_string(deg));
    }
}

SpaceMorphism SpaceMorphism::identity(std::shared_ptr<const SpaceModel> x) {
    PullbackFamily fam;
    for (std::size_t k = 0; k <= x->dim_m(); ++k) {
        long b = x->betti(k);
        if (b > 0) fam[k] = RatMatrix::identity(static_cast<std::size_t>(b));
    }
    auto copy = x;
    return SpaceMorphism(std::move(copy), std::move(x), std::move(fam));
}

RatMatrix SpaceMorphism::pullback(std::size_t degree) const {
    if (vertex_map_) {
        SimplicialMap f(source_->complex(), target_->complex(), *vertex_map_);
        return induced_pullback(f, degree, Ring::Q).matrix;
    }
    auto it = pullbacks_.find(degree);
    if (it != pullbacks_.end()) return it->second;
    std::size_t rows = static_cast<std::size_t>(source_->betti(degree));
    std::size_t cols = static_cast<std::size_t>(target_->betti(degree));
    if (rows == 0 || cols == 0) return RatMatrix::zero(rows, cols);
    throw ValidationError("missing pullback matrix for degree " + std::to_string(degree));
}

CohomologyMap pushforward_compact(const SpaceMorphism& f, std::size_t degree) {
    if (f.source().dim_m() != f.target().dim_m())
        throw ValidationError("pushforward between different spacetime dimensions");
    CohomologyMap out;
    out.degree = degree;
    out.ring = Ring::Q;
    out.direction = MapDirection::compact_pushforward;
    out.matrix = f.pullback(f.source().dim_m() - degree).transposed();
    return out;
}

SimplicialComplex point_complex() { return SimplicialComplex(1, {{0}}); }

SimplicialComplex interval_complex() { return SimplicialComplex(2, {{0, 1}}); }

SimplicialComplex circle_complex() { return sphere_complex(1); }

SimplicialComplex sphere_complex(std::size_t k) {
    if (k < 1) throw ValidationError("sphere dimension must be >= 1");
    std::size_t n = k + 2;  // vertices of the (k+1)-simplex
    std::vector<std::vector<int>> maximal;
    for (std::size_t omit = 0; omit < n; ++omit) {
        std::vector<int> s;
        for (std::size_t v = 0; v < n; ++v)
            if (v != omit) s.push_back(static_cast<int>(v));
        maximal.push_back(std::move(s));
    }
    return SimplicialComplex(n, std::move(maximal));
}

SimplicialComplex disjoint_union(const std::vector<SimplicialComplex>& parts) {
    std::size_t total = 0;
    std::vector<std::vector<int>> maximal;
    for (const auto& p : parts) {
        for (auto s : p.maximal_simplices()) {
            for (auto& v : s) v += static_cast<int>(total);
            maximal.push_back(std::move(s));
        }
        total += p.vertex_count();
    }
    return SimplicialComplex(total, std::move(maximal));
}

FormalCohomology kunneth_product(const std::vector<FormalCohomology>& factors) {
    FormalCohomology acc;
    acc.betti = {1};
    for (const auto& f : factors) {
        for (const auto& t : f.torsion)
            if (!t.empty())
                throw ValidationError("Kunneth products support torsion-free factors only");
        std::vector<long> next(acc.betti.size() + f.betti.size() - 1, 0);
        for (std::size_t i = 0; i < acc.betti.size(); ++i)
            for (std::size_t j = 0; j < f.betti.size(); ++j)
                next[i + j] += acc.betti[i] * f.betti[j];
        acc.betti = std::move(next);
    }
    return acc;
}

FormalCohomology formal_of_complex(const SimplicialComplex& k) {
    FormalCohomology f;
    for (std::size_t d = 0; d <= k.dimension(); ++d) {
        CohomologyGroup g = cohomology(k, d, Ring::Z);
        f.betti.push_back(g.presentation.free_rank);
        f.torsion.push_back(g.presentation.torsion);
    }
    return f;
}

}  // namespace gaugeobs::cech
