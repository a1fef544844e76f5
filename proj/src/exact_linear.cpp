#include "gaugeobs/exact_linear.hpp"

#include <algorithm>

namespace gaugeobs::lin {

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

void negate_row(IntMatrix& m, std::size_t r) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

// row[a] -= q * row[b]
void add_row_multiple(IntMatrix& m, std::size_t a, std::size_t b, const Int& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < m.cols(); ++j) m(a, j) -= q * m(b, j);
}

void add_col_multiple(IntMatrix& m, std::size_t a, std::size_t b, const Int& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, a) -= q * m(i, b);
}

}  // namespace

std::size_t SmithDecomposition::rank() const {
    std::size_t r = 0;
    std::size_t n = std::min(D.rows(), D.cols());
    for (std::size_t i = 0; i < n; ++i)
        if (D(i, i) != 0) ++r;
    return r;
}

std::vector<Int> SmithDecomposition::diagonal() const {
    std::size_t n = std::min(D.rows(), D.cols());
    std::vector<Int> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = D(i, i);
    return d;
}

bool SmithDecomposition::verify() const {
    if (U * source * V != D) return false;
    Int du = determinant(U);
    Int dv = determinant(V);
    if (du != 1 && du != -1) return false;
    if (dv != 1 && dv != -1) return false;
    for (std::size_t i = 0; i < D.rows(); ++i)
        for (std::size_t j = 0; j < D.cols(); ++j)
            if (i != j && D(i, j) != 0) return false;
    auto d = diagonal();
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] < 0) return false;
        if (i + 1 < d.size()) {
            if (d[i] == 0 && d[i + 1] != 0) return false;
            if (d[i] != 0 && d[i + 1] % d[i] != 0) return false;
        }
    }
    return true;
}

SmithDecomposition smith_normal_form(const IntMatrix& a) {
    const std::size_t rows = a.rows(), cols = a.cols();
    SmithDecomposition s;
    s.source = a;
    s.U = IntMatrix::identity(rows);
    s.V = IntMatrix::identity(cols);
    s.D = a;
    IntMatrix& d = s.D;

    std::size_t t = 0;
    const std::size_t limit = std::min(rows, cols);
    while (t < limit) {
        // deterministic pivot: smallest |entry| in the remaining block,
        // earliest in row-major order among ties
        std::size_t pi = 0, pj = 0;
        bool found = false;
        Int best;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                if (d(i, j) == 0) continue;
                Int v = abs(d(i, j));
                if (!found || v < best) {
                    found = true;
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (!found) break;
        swap_rows(d, t, pi);
        swap_rows(s.U, t, pi);
        swap_cols(d, t, pj);
        swap_cols(s.V, t, pj);
        if (d(t, t) < 0) {
            negate_row(d, t);
            negate_row(s.U, t);
        }

        bool clean = false;
        while (!clean) {
            clean = true;
            // clear column t
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (d(i, t) == 0) continue;
                Int q = int_fdiv(d(i, t), d(t, t));
                add_row_multiple(d, i, t, q);
                add_row_multiple(s.U, i, t, q);
                if (d(i, t) != 0) {
                    // remainder is a smaller positive pivot candidate
                    swap_rows(d, t, i);
                    swap_rows(s.U, t, i);
                    clean = false;
                }
            }
            if (!clean) continue;
            // clear row t
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (d(t, j) == 0) continue;
                Int q = int_fdiv(d(t, j), d(t, t));
                add_col_multiple(d, j, t, q);
                add_col_multiple(s.V, j, t, q);
                if (d(t, j) != 0) {
                    swap_cols(d, t, j);
                    swap_cols(s.V, t, j);
                    clean = false;
                }
            }
            if (!clean) continue;
            // enforce divisibility of the remaining block by the pivot
            for (std::size_t i = t + 1; i < rows && clean; ++i)
                for (std::size_t j = t + 1; j < cols && clean; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        add_row_multiple(d, t, i, Int(-1));
                        add_row_multiple(s.U, t, i, Int(-1));
                        clean = false;
                    }
        }
        ++t;
    }
    return s;
}

Int determinant(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw ValidationError("determinant of non-square matrix");
    std::size_t n = a.rows();
    if (n == 0) return 1;
    RatMatrix m = to_rational(a);
    Rat det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        Rat inv = 1 / m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c) == 0) continue;
            Rat f = m(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    if (!is_integer(det)) throw Error("integer determinant came out fractional");
    return det.get_num();
}

IntMatrix integer_kernel_basis(const IntMatrix& a) {
    SmithDecomposition s = smith_normal_form(a);
    std::size_t r = s.rank();
    std::vector<std::size_t> idx;
    for (std::size_t j = r; j < a.cols(); ++j) idx.push_back(j);
    return s.V.columns(idx);
}

FgAbelianGroup cokernel_invariants(const IntMatrix& a) {
    SmithDecomposition s = smith_normal_form(a);
    FgAbelianGroup g;
    auto d = s.diagonal();
    std::size_t r = 0;
    for (const auto& v : d) {
        if (v != 0) {
            ++r;
            if (v >= 2) g.torsion.push_back(v);
        }
    }
    g.free_rank = static_cast<long>(a.rows() - r);
    return g;
}

Rref rational_rref(const RatMatrix& a) {
    Rref out;
    out.r = a;
    RatMatrix& m = out.r;
    std::size_t lead = 0;
    for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
        std::size_t p = lead;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(lead, j));
        Rat inv = 1 / m(lead, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(lead, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == lead || m(i, c) == 0) continue;
            Rat f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(lead, j);
        }
        out.pivots.push_back(c);
        ++lead;
    }
    out.rank = out.pivots.size();
    return out;
}

std::size_t rational_rank(const RatMatrix& a) { return rational_rref(a).rank; }

RatMatrix rational_kernel_basis(const RatMatrix& a) {
    Rref rr = rational_rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : rr.pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < a.cols(); ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    RatMatrix k(a.cols(), free_cols.size());
    for (std::size_t fi = 0; fi < free_cols.size(); ++fi) {
        std::size_t f = free_cols[fi];
        k(f, fi) = 1;
        for (std::size_t pr = 0; pr < rr.pivots.size(); ++pr) k(rr.pivots[pr], fi) = -rr.r(pr, f);
    }
    return k;
}

RatMatrix rational_image_basis(const RatMatrix& a) {
    Rref rr = rational_rref(a);
    return a.columns(rr.pivots);
}

RankKernelImage rational_rank_kernel_image(const RatMatrix& a) {
    Rref rr = rational_rref(a);
    RankKernelImage out;
    out.rank = rr.rank;
    out.kernel = rational_kernel_basis(a);
    out.image = a.columns(rr.pivots);
    return out;
}

std::optional<std::vector<Rat>> solve_rational(const RatMatrix& a, const std::vector<Rat>& b) {
    if (b.size() != a.rows()) throw ValidationError("solve: rhs size mismatch");
    RatMatrix rhs(a.rows(), 1);
    for (std::size_t i = 0; i < a.rows(); ++i) rhs(i, 0) = b[i];
    Rref rr = rational_rref(a.augmented(rhs));
    // inconsistent iff a pivot lands in the rhs column
    for (auto p : rr.pivots)
        if (p == a.cols()) return std::nullopt;
    std::vector<Rat> x(a.cols(), Rat(0));
    for (std::size_t pr = 0; pr < rr.pivots.size(); ++pr) x[rr.pivots[pr]] = rr.r(pr, a.cols());
    return x;
}

std::optional<std::vector<Int>> solve_integer(const IntMatrix& a, const std::vector<Int>& b) {
    if (b.size() != a.rows()) throw ValidationError("solve: rhs size mismatch");
    SmithDecomposition s = smith_normal_form(a);
    // a x = b  <=>  D y = U b with x = V y
    std::vector<Int> ub(a.rows(), Int(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.rows(); ++j)
            if (s.U(i, j) != 0) ub[i] += s.U(i, j) * b[j];
    std::vector<Int> y(a.cols(), Int(0));
    std::size_t n = std::min(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Int di = i < n ? s.D(i, i) : Int(0);
        if (di == 0) {
            if (ub[i] != 0) return std::nullopt;
        } else {
            if (ub[i] % di != 0) return std::nullopt;
            y[i] = ub[i] / di;
        }
    }
    std::vector<Int> x(a.cols(), Int(0));
    for (std::size_t i = 0; i < a.cols(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (s.V(i, j) != 0) x[i] += s.V(i, j) * y[j];
    return x;
}

RatMatrix rational_inverse(const RatMatrix& a) {
    if (a.rows() != a.cols()) throw ValidationError("inverse of non-square matrix");
    std::size_t n = a.rows();
    Rref rr = rational_rref(a.augmented(RatMatrix::identity(n)));
    if (rr.rank != n || (n > 0 && rr.pivots.back() != n - 1))
        throw ValidationError("matrix is singular");
    RatMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = rr.r(i, n + j);
    return inv;
}

IntMatrix hermite_column_basis(const IntMatrix& a) {
    // row-style Hermite form of the transpose, transposed back
    IntMatrix m = a.transposed();  // rows are generators
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        // gcd all rows >= r into row r at column c
        while (true) {
            std::size_t p = rows;
            Int best;
            for (std::size_t i = r; i < rows; ++i) {
                if (m(i, c) == 0) continue;
                Int v = abs(m(i, c));
                if (p == rows || v < best) {
                    p = i;
                    best = v;
                }
            }
            if (p == rows) break;  // column clear below r
            swap_rows(m, r, p);
            if (m(r, c) < 0) negate_row(m, r);
            bool done = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (m(i, c) == 0) continue;
                Int q = int_fdiv(m(i, c), m(r, c));
                add_row_multiple(m, i, r, q);
                if (m(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (m(r, c) == 0) continue;
        // reduce entries above the pivot into [0, pivot)
        for (std::size_t i = 0; i < r; ++i) {
            Int q = int_fdiv(m(i, c), m(r, c));
            add_row_multiple(m, i, r, q);
        }
        ++r;
    }
    // keep the r nonzero rows
    IntMatrix basis(r, cols);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < cols; ++j) basis(i, j) = m(i, j);
    return basis.transposed();
}

RatMatrix hermite_column_basis_rat(const RatMatrix& a) {
    Int q = common_denominator(a);
    IntMatrix scaled = to_integral(scale(a, Rat(q)));
    IntMatrix h = hermite_column_basis(scaled);
    return scale(to_rational(h), make_rat(1, q));
}

RatMatrix integral_preimage_lattice_rat(const RatMatrix& m, const RatMatrix& lattice) {
    if (m.cols() != lattice.rows()) throw ValidationError("integral preimage: shape mismatch");
    if (rational_rank(lattice) != lattice.cols())
        throw PreconditionError("integral preimage: dependent lattice generators");
    RatMatrix p = m * lattice;  // condition on coefficients c: p c integral
    Int q = common_denominator(p);
    IntMatrix n = to_integral(scale(p, Rat(q)));
    SmithDecomposition s = smith_normal_form(n);
    // n c in q Z^k  <=>  y = V^-1 c with d_i y_i in q Z
    std::size_t r = s.rank();
    auto d = s.diagonal();
    IntMatrix coeff(lattice.cols(), lattice.cols());
    for (std::size_t j = 0; j < lattice.cols(); ++j) {
        Int f = 1;
        if (j < r) f = q / int_gcd(d[j], q);
        for (std::size_t i = 0; i < lattice.cols(); ++i) coeff(i, j) = s.V(i, j) * f;
    }
    return hermite_column_basis_rat(lattice * to_rational(coeff));
}

IntMatrix integral_preimage_lattice(const RatMatrix& m, const IntMatrix& lattice) {
    return to_integral(integral_preimage_lattice_rat(m, to_rational(lattice)));
}

}  // namespace gaugeobs::lin
