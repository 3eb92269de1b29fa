#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace sdp {

using Int = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVector = std::vector<Int>;
using RatVector = std::vector<Rational>;
using IntMatrix = std::vector<IntVector>;
using RatMatrix = std::vector<RatVector>;
using Vec2 = std::array<Int, 2>;

enum class ErrorKind { invalid_input, invariant_violation, overflow, io };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void invalid_input(const std::string& msg) { throw Error(ErrorKind::invalid_input, msg); }
[[noreturn]] inline void invariant_violation(const std::string& msg) {
    throw Error(ErrorKind::invariant_violation, msg);
}

// Checked 64-bit arithmetic. Coordinates stay tiny in practice; overflow is an error, never a wrap.
inline Int add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::overflow, "integer overflow in add");
    return r;
}
inline Int sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorKind::overflow, "integer overflow in sub");
    return r;
}
inline Int mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::overflow, "integer overflow in mul");
    return r;
}
inline Int to_int(const BigInt& x) {
    if (x > std::numeric_limits<Int>::max() || x < std::numeric_limits<Int>::min())
        throw Error(ErrorKind::overflow, "value does not fit in 64 bits");
    return static_cast<Int>(x);
}

inline Int gcd(Int a, Int b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

inline Int content(const IntVector& v) {
    Int g = 0;
    for (Int x : v) g = gcd(g, x);
    return g;
}

inline IntVector primitive(const IntVector& v) {
    Int g = content(v);
    if (g == 0) return v;
    IntVector r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
    return r;
}

inline IntVector operator-(const IntVector& a, const IntVector& b) {
    IntVector r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = sub(a[i], b[i]);
    return r;
}
inline IntVector operator+(const IntVector& a, const IntVector& b) {
    IntVector r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = add(a[i], b[i]);
    return r;
}
inline IntVector scale(Int s, const IntVector& a) {
    IntVector r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = mul(s, a[i]);
    return r;
}
inline Int dot(const IntVector& a, const IntVector& b) {
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s = add(s, mul(a[i], b[i]));
    return s;
}
inline IntVector mat_vec(const IntMatrix& m, const IntVector& v) {
    IntVector r(m.size(), 0);
    for (size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], v);
    return r;
}
inline IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix r(a.size(), IntVector(b.empty() ? 0 : b[0].size(), 0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < b.size(); ++k)
            for (size_t j = 0; j < r[i].size(); ++j) r[i][j] = add(r[i][j], mul(a[i][k], b[k][j]));
    return r;
}
inline IntMatrix identity_matrix(size_t n) {
    IntMatrix m(n, IntVector(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}
inline IntMatrix transpose(const IntMatrix& m) {
    if (m.empty()) return {};
    IntMatrix t(m[0].size(), IntVector(m.size()));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

inline Int lattice_length(const IntVector& a, const IntVector& b) { return content(b - a); }

// Bareiss fraction-free elimination.
inline BigInt determinant_big(const IntMatrix& m) {
    size_t n = m.size();
    if (n == 0) return 1;
    std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
    BigInt prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}
inline Int determinant(const IntMatrix& m) { return to_int(determinant_big(m)); }

inline Int det2(const Vec2& a, const Vec2& b) { return sub(mul(a[0], b[1]), mul(a[1], b[0])); }

// ---------------------------------------------------------------------------
// Exact rational linear algebra

inline Rational dot(const RatVector& a, const RatVector& b) {
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    return s;
}

inline RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix r(m.size());
    for (size_t i = 0; i < m.size(); ++i) r[i].assign(m[i].begin(), m[i].end());
    return r;
}

// In-place reduced row echelon form; returns pivot columns.
inline std::vector<size_t> rref(RatMatrix& a, size_t ncols) {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < ncols && row < a.size(); ++col) {
        size_t p = row;
        while (p < a.size() && a[p][col] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[row], a[p]);
        Rational inv = 1 / a[row][col];
        for (size_t j = col; j < ncols; ++j)
            if (a[row][j] != 0) a[row][j] *= inv;
        for (size_t i = 0; i < a.size(); ++i) {
            if (i == row || a[i][col] == 0) continue;
            Rational f = a[i][col];
            for (size_t j = col; j < ncols; ++j)
                if (a[row][j] != 0) a[i][j] -= f * a[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    a.resize(row);
    return pivots;
}

inline size_t rank(RatMatrix a, size_t ncols) { return rref(a, ncols).size(); }
inline size_t rank(const IntMatrix& a) {
    if (a.empty()) return 0;
    return rank(to_rational(a), a[0].size());
}

// Rank over Q by gcd-normalized integer elimination; falls back to rational elimination on overflow.
inline size_t rank_integer(IntMatrix a) {
    if (a.empty()) return 0;
    try {
        size_t n = a[0].size(), row = 0;
        for (size_t col = 0; col < n && row < a.size(); ++col) {
            size_t p = a.size();
            for (size_t i = row; i < a.size(); ++i)
                if (a[i][col] != 0 && (p == a.size() || std::abs(a[i][col]) < std::abs(a[p][col]))) p = i;
            if (p == a.size()) continue;
            std::swap(a[row], a[p]);
            for (size_t i = row + 1; i < a.size(); ++i) {
                if (a[i][col] == 0) continue;
                Int g = gcd(a[row][col], a[i][col]);
                Int x = a[row][col] / g, y = a[i][col] / g;
                for (size_t j = col; j < n; ++j) a[i][j] = sub(mul(x, a[i][j]), mul(y, a[row][j]));
                Int c = content(a[i]);
                if (c > 1)
                    for (auto& v : a[i]) v /= c;
            }
            ++row;
        }
        return row;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::overflow) throw;
        return rank(to_rational(a), a[0].size());
    }
}

// Basis of {x : A x = 0}.
inline std::vector<RatVector> kernel_basis(RatMatrix a, size_t ncols) {
    auto pivots = rref(a, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (size_t p : pivots) is_pivot[p] = true;
    std::vector<RatVector> basis;
    for (size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        RatVector v(ncols, 0);
        v[f] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Clear denominators and divide by content.
inline IntVector integral_primitive(const RatVector& v) {
    BigInt l = 1;
    for (const auto& x : v) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(x));
    std::vector<BigInt> w(v.size());
    BigInt g = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        w[i] = boost::multiprecision::numerator(v[i]) * (l / boost::multiprecision::denominator(v[i]));
        g = boost::multiprecision::gcd(g, w[i]);
    }
    IntVector r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = to_int(g == 0 ? w[i] : w[i] / g);
    return r;
}

// Kernel basis of an integer matrix, each vector integral and primitive; exact (rational fallback on overflow).
inline std::vector<IntVector> kernel_basis_integer(IntMatrix a, size_t n) {
    try {
        std::vector<size_t> pivots;
        size_t row = 0;
        for (size_t col = 0; col < n && row < a.size(); ++col) {
            size_t p = a.size();
            for (size_t i = row; i < a.size(); ++i)
                if (a[i][col] != 0 && (p == a.size() || std::abs(a[i][col]) < std::abs(a[p][col]))) p = i;
            if (p == a.size()) continue;
            std::swap(a[row], a[p]);
            for (size_t i = 0; i < a.size(); ++i) {
                if (i == row || a[i][col] == 0) continue;
                Int g = gcd(a[row][col], a[i][col]);
                Int x = a[row][col] / g, y = a[i][col] / g;
                for (size_t j = 0; j < n; ++j) a[i][j] = sub(mul(x, a[i][j]), mul(y, a[row][j]));
                Int c = content(a[i]);
                if (c > 1)
                    for (auto& v : a[i]) v /= c;
            }
            pivots.push_back(col);
            ++row;
        }
        std::vector<bool> is_pivot(n, false);
        for (size_t p : pivots) is_pivot[p] = true;
        std::vector<IntVector> basis;
        for (size_t f = 0; f < n; ++f) {
            if (is_pivot[f]) continue;
            // v[f] = L, v[pivot_r] = -a[r][f] * L / a[r][pivot_r] with L the lcm of the pivots involved.
            Int l = 1;
            for (size_t r = 0; r < pivots.size(); ++r)
                if (a[r][f] != 0) l = mul(l / gcd(l, a[r][pivots[r]]), std::abs(a[r][pivots[r]]));
            IntVector v(n, 0);
            v[f] = l;
            for (size_t r = 0; r < pivots.size(); ++r)
                if (a[r][f] != 0) v[pivots[r]] = -mul(a[r][f], l / a[r][pivots[r]]);
            basis.push_back(primitive(v));
        }
        return basis;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::overflow) throw;
        std::vector<IntVector> basis;
        for (const auto& v : kernel_basis(to_rational(a), n)) basis.push_back(integral_primitive(v));
        return basis;
    }
}

// ---------------------------------------------------------------------------
// Integer lattices

// Row Hermite normal form of an integer matrix (zero rows dropped).
inline IntMatrix hermite_rows(IntMatrix a) {
    if (a.empty()) return a;
    size_t n = a[0].size();
    size_t row = 0;
    for (size_t col = 0; col < n && row < a.size(); ++col) {
        while (true) {
            size_t best = a.size();
            for (size_t i = row; i < a.size(); ++i)
                if (a[i][col] != 0 && (best == a.size() || std::abs(a[i][col]) < std::abs(a[best][col]))) best = i;
            if (best == a.size()) break;
            std::swap(a[row], a[best]);
            bool done = true;
            for (size_t i = row + 1; i < a.size(); ++i) {
                if (a[i][col] == 0) continue;
                Int q = a[i][col] / a[row][col];
                for (size_t j = col; j < n; ++j) a[i][j] = sub(a[i][j], mul(q, a[row][j]));
                if (a[i][col] != 0) done = false;
            }
            if (done) break;
        }
        if (row < a.size() && a[row][col] != 0) {
            if (a[row][col] < 0)
                for (size_t j = col; j < n; ++j) a[row][j] = -a[row][j];
            for (size_t i = 0; i < row; ++i) {
                Int q = a[i][col] / a[row][col];
                if (a[i][col] - q * a[row][col] < 0) --q;
                if (q != 0)
                    for (size_t j = col; j < n; ++j) a[i][j] = sub(a[i][j], mul(q, a[row][j]));
            }
            ++row;
        }
    }
    a.resize(row);
    return a;
}

// Z-basis of {x in Z^n : A x = 0}, via unimodular column operations.
inline IntMatrix integer_kernel(const IntMatrix& a, size_t n) {
    IntMatrix m = a;
    IntMatrix u = identity_matrix(n);  // columns track the transformation
    size_t pivot_col = 0;
    for (size_t r = 0; r < m.size() && pivot_col < n; ++r) {
        while (true) {
            size_t best = n;
            for (size_t j = pivot_col; j < n; ++j)
                if (m[r][j] != 0 && (best == n || std::abs(m[r][j]) < std::abs(m[r][best]))) best = j;
            if (best == n) break;
            auto swap_cols = [&](size_t x, size_t y) {
                for (auto& row : m) std::swap(row[x], row[y]);
                for (auto& row : u) std::swap(row[x], row[y]);
            };
            swap_cols(pivot_col, best);
            bool done = true;
            for (size_t j = pivot_col + 1; j < n; ++j) {
                if (m[r][j] == 0) continue;
                Int q = m[r][j] / m[r][pivot_col];
                for (auto& row : m) row[j] = sub(row[j], mul(q, row[pivot_col]));
                for (auto& row : u) row[j] = sub(row[j], mul(q, row[pivot_col]));
                if (m[r][j] != 0) done = false;
            }
            if (done) break;
        }
        if (m[r][pivot_col] != 0) ++pivot_col;
    }
    IntMatrix basis;
    for (size_t j = pivot_col; j < n; ++j) {
        IntVector v(n);
        for (size_t i = 0; i < n; ++i) v[i] = u[i][j];
        basis.push_back(v);
    }
    return basis;
}

// Hermite-reduced Z-basis of span(vectors) ∩ Z^n.
inline IntMatrix saturated_basis(const IntMatrix& vectors, size_t n) {
    IntMatrix nonzero;
    for (const auto& v : vectors)
        if (content(v) != 0) nonzero.push_back(v);
    if (nonzero.empty()) return {};
    auto perp = kernel_basis(to_rational(nonzero), n);
    IntMatrix a;
    for (const auto& p : perp) a.push_back(integral_primitive(p));
    IntMatrix basis = a.empty() ? identity_matrix(n) : integer_kernel(a, n);
    return hermite_rows(basis);
}

// Coordinates of v in a row basis (v must lie in the lattice spanned by the rows).
inline IntVector lattice_coordinates(const IntMatrix& basis, const IntVector& v) {
    size_t k = basis.size(), n = v.size();
    RatMatrix a(n, RatVector(k + 1));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < k; ++j) a[i][j] = basis[j][i];
        a[i][k] = v[i];
    }
    auto piv = rref(a, k + 1);
    if (!piv.empty() && piv.back() == k) invalid_input("vector not in the span of the basis");
    IntVector c(k, 0);
    for (size_t r = 0; r < piv.size(); ++r) {
        const Rational& x = a[r][k];
        if (boost::multiprecision::denominator(x) != 1) invalid_input("vector not in the lattice of the basis");
        c[piv[r]] = to_int(boost::multiprecision::numerator(x));
    }
    return c;
}

// Nonzero invariant factors of an integer matrix.
inline std::vector<BigInt> smith_invariants(const IntMatrix& m) {
    std::vector<std::vector<BigInt>> a(m.size());
    for (size_t i = 0; i < m.size(); ++i) a[i].assign(m[i].begin(), m[i].end());
    size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::vector<BigInt> out;
    size_t t = 0;
    while (t < rows && t < cols) {
        size_t pr = rows, pc = cols;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j)
                if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) pr = i, pc = j;
        if (pr == rows) break;
        std::swap(a[t], a[pr]);
        for (auto& row : a) std::swap(row[t], row[pc]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < rows; ++i) {
                BigInt q = a[i][t] / a[t][t];
                if (q != 0)
                    for (size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) {
                    std::swap(a[t], a[i]);
                    clean = false;
                }
            }
            for (size_t j = t + 1; j < cols; ++j) {
                BigInt q = a[t][j] / a[t][t];
                if (q != 0)
                    for (size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) {
                    for (auto& row : a) std::swap(row[t], row[j]);
                    clean = false;
                }
            }
            if (clean) {
                for (size_t i = t + 1; i < rows && clean; ++i)
                    for (size_t j = t + 1; j < cols && clean; ++j)
                        if (a[i][j] % a[t][t] != 0) {
                            for (size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
                            clean = false;
                        }
            }
        }
        out.push_back(abs(a[t][t]));
        ++t;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Convex hulls by facet enumeration (full-dimensional point sets, d <= 4)

struct Halfspace {
    IntVector normal;  // primitive, inward: normal . x >= offset on the hull
    Int offset = 0;
    std::vector<int> incident;  // indices of input points on the hyperplane
};

namespace detail {

inline Int small_det(const IntMatrix& m) {
    size_t n = m.size();
    if (n == 1) return m[0][0];
    if (n == 2) return sub(mul(m[0][0], m[1][1]), mul(m[0][1], m[1][0]));
    Int s = 0;
    for (size_t c = 0; c < n; ++c) {
        if (m[0][c] == 0) continue;
        IntMatrix minor(n - 1, IntVector(n - 1));
        for (size_t i = 1; i < n; ++i)
            for (size_t j = 0, k = 0; j < n; ++j)
                if (j != c) minor[i - 1][k++] = m[i][j];
        Int term = mul(m[0][c], small_det(minor));
        s = (c % 2 == 0) ? add(s, term) : sub(s, term);
    }
    return s;
}

// Vector orthogonal to d-1 vectors in Z^d (generalized cross product).
inline IntVector cross(const IntMatrix& rows, size_t d) {
    IntVector n(d);
    for (size_t c = 0; c < d; ++c) {
        IntMatrix minor(d - 1, IntVector(d - 1));
        for (size_t i = 0; i < d - 1; ++i)
            for (size_t j = 0, k = 0; j < d; ++j)
                if (j != c) minor[i][k++] = rows[i][j];
        Int v = d == 1 ? 1 : small_det(minor);
        n[c] = (c % 2 == 0) ? v : -v;
    }
    return n;
}

template <class F>
void for_each_combination(int n, int k, F&& f) {
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    if (k > n) return;
    while (true) {
        f(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace detail

inline size_t affine_rank(const std::vector<IntVector>& pts) {
    if (pts.size() <= 1) return 0;
    IntMatrix diffs;
    for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
    return rank(diffs);
}

// All facets of conv(points); points must affinely span Z^d.
inline std::vector<Halfspace> facets(const std::vector<IntVector>& pts) {
    if (pts.empty()) invalid_input("empty point set");
    size_t d = pts[0].size();
    if (affine_rank(pts) != d) invalid_input("point set is not full-dimensional");
    std::vector<Halfspace> out;
    std::set<IntVector> seen;
    int n = static_cast<int>(pts.size());
    detail::for_each_combination(n, static_cast<int>(d), [&](const std::vector<int>& idx) {
        IntMatrix rows;
        for (size_t i = 1; i < idx.size(); ++i) rows.push_back(pts[idx[i]] - pts[idx[0]]);
        IntVector nrm = d == 1 ? IntVector{1} : detail::cross(rows, d);
        if (content(nrm) == 0) return;
        nrm = primitive(nrm);
        Int b = dot(nrm, pts[idx[0]]);
        bool pos = false, neg = false;
        for (const auto& p : pts) {
            Int v = dot(nrm, p);
            if (v > b) pos = true;
            if (v < b) neg = true;
            if (pos && neg) return;
        }
        if (neg) {
            for (auto& x : nrm) x = -x;
            b = -b;
        }
        if (!seen.insert(nrm).second) return;
        Halfspace h{nrm, b, {}};
        for (int i = 0; i < n; ++i)
            if (dot(nrm, pts[i]) == b) h.incident.push_back(i);
        out.push_back(std::move(h));
    });
    std::sort(out.begin(), out.end(), [](const Halfspace& a, const Halfspace& b) { return a.normal < b.normal; });
    return out;
}

// Indices of the points that are vertices of conv(points) (full-dimensional input).
inline std::vector<int> hull_vertex_indices(const std::vector<IntVector>& pts) {
    auto fs = facets(pts);
    size_t d = pts[0].size();
    std::vector<int> out;
    std::set<IntVector> used;
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
        IntMatrix normals;
        for (const auto& f : fs)
            if (std::find(f.incident.begin(), f.incident.end(), i) != f.incident.end()) normals.push_back(f.normal);
        if (rank(normals) == d && used.insert(pts[i]).second) out.push_back(i);
    }
    return out;
}

// Lattice coordinates of a point set in its own affine lattice.
struct AffineLatticeChart {
    IntVector anchor;
    IntMatrix basis;  // rows, Hermite reduced
    IntVector coords(const IntVector& p) const { return lattice_coordinates(basis, p - anchor); }
};

inline AffineLatticeChart affine_chart(const std::vector<IntVector>& pts) {
    AffineLatticeChart c;
    c.anchor = *std::min_element(pts.begin(), pts.end());
    IntMatrix diffs;
    for (const auto& p : pts) diffs.push_back(p - c.anchor);
    c.basis = saturated_basis(diffs, c.anchor.size());
    return c;
}

// d! * volume of conv(points) in the lattice of its affine span.
inline Int normalized_volume(const std::vector<IntVector>& pts, size_t d) {
    if (pts.empty()) invalid_input("empty point set");
    if (affine_rank(pts) != d) invalid_input("point set does not have the stated intrinsic dimension");
    if (d == 0) return 1;
    auto chart = affine_chart(pts);
    std::vector<IntVector> local;
    for (const auto& p : pts) local.push_back(chart.coords(p));
    if (d == 1) {
        Int lo = local[0][0], hi = local[0][0];
        for (const auto& p : local) lo = std::min(lo, p[0]), hi = std::max(hi, p[0]);
        return hi - lo;
    }
    // Pyramid decomposition from an apex: lattice height times normalized facet volume.
    auto fs = facets(local);
    const IntVector& apex = local[0];
    Int total = 0;
    for (const auto& f : fs) {
        Int h = dot(f.normal, apex) - f.offset;
        if (h == 0) continue;
        std::vector<IntVector> facet_pts;
        for (int i : f.incident) facet_pts.push_back(local[i]);
        total = add(total, mul(h, normalized_volume(facet_pts, d - 1)));
    }
    return total;
}

// ---------------------------------------------------------------------------
// Polygons

inline Vec2 to_vec2(const IntVector& v) { return {v.at(0), v.at(1)}; }
inline IntVector to_vector(const Vec2& v) { return {v[0], v[1]}; }

// Counter-clockwise convex hull vertices, starting at the lexicographically least point.
inline std::vector<Vec2> convex_hull_2d(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Vec2> h(2 * pts.size());
    size_t k = 0;
    auto turn = [](const Vec2& o, const Vec2& a, const Vec2& b) {
        return det2({a[0] - o[0], a[1] - o[1]}, {b[0] - o[0], b[1] - o[1]});
    };
    for (size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && turn(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
        while (k >= t && turn(h[k - 2], h[k - 1], pts[i - 1]) <= 0) --k;
        h[k++] = pts[i - 1];
    }
    h.resize(k - 1);
    return h;
}

inline Int twice_area(const std::vector<Vec2>& poly) {
    Int s = 0;
    for (size_t i = 0; i < poly.size(); ++i) s = add(s, det2(poly[i], poly[(i + 1) % poly.size()]));
    return s < 0 ? -s : s;
}

// Lattice points of a convex polygon (closed), in lexicographic order.
inline std::vector<Vec2> polygon_lattice_points(const std::vector<Vec2>& poly) {
    std::vector<Vec2> out;
    if (poly.empty()) return out;
    Int x0 = poly[0][0], x1 = x0, y0 = poly[0][1], y1 = y0;
    for (const auto& p : poly) x0 = std::min(x0, p[0]), x1 = std::max(x1, p[0]), y0 = std::min(y0, p[1]), y1 = std::max(y1, p[1]);
    for (Int x = x0; x <= x1; ++x)
        for (Int y = y0; y <= y1; ++y) {
            bool inside = true;
            if (poly.size() >= 3) {
                for (size_t i = 0; i < poly.size() && inside; ++i) {
                    const Vec2& a = poly[i];
                    const Vec2& b = poly[(i + 1) % poly.size()];
                    if (det2({b[0] - a[0], b[1] - a[1]}, {x - a[0], y - a[1]}) < 0) inside = false;
                }
            } else if (poly.size() == 2) {
                Vec2 d{poly[1][0] - poly[0][0], poly[1][1] - poly[0][1]};
                Vec2 w{x - poly[0][0], y - poly[0][1]};
                inside = det2(d, w) == 0;
            } else {
                inside = (x == poly[0][0] && y == poly[0][1]);
            }
            if (inside) out.push_back({x, y});
        }
    return out;
}

// Boundary lattice points in counter-clockwise order, starting at poly[0].
inline std::vector<Vec2> polygon_boundary_points(const std::vector<Vec2>& poly) {
    std::vector<Vec2> out;
    for (size_t i = 0; i < poly.size(); ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % poly.size()];
        Int g = gcd(b[0] - a[0], b[1] - a[1]);
        for (Int t = 0; t < g; ++t) out.push_back({a[0] + (b[0] - a[0]) / g * t, a[1] + (b[1] - a[1]) / g * t});
    }
    return out;
}

// Counter-clockwise edge vectors, one per edge.
inline std::vector<Vec2> polygon_edges(const std::vector<Vec2>& poly) {
    std::vector<Vec2> e;
    for (size_t i = 0; i < poly.size(); ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % poly.size()];
        e.push_back({b[0] - a[0], b[1] - a[1]});
    }
    return e;
}

struct UnimodularAffineMap {
    IntMatrix linear;
    IntVector translate;
    IntVector operator()(const IntVector& v) const { return mat_vec(linear, v) + translate; }
};

namespace detail {

inline std::optional<IntMatrix> solve_integral_2x2(const Vec2& a1, const Vec2& a2, const Vec2& b1, const Vec2& b2) {
    // L with L a1 = b1, L a2 = b2.
    Int d = det2(a1, a2);
    if (d == 0) return std::nullopt;
    // L = B A^{-1}, A = [a1 a2] as columns.
    Int m00 = sub(mul(b1[0], a2[1]), mul(b2[0], a1[1]));
    Int m01 = sub(mul(b2[0], a1[0]), mul(b1[0], a2[0]));
    Int m10 = sub(mul(b1[1], a2[1]), mul(b2[1], a1[1]));
    Int m11 = sub(mul(b2[1], a1[0]), mul(b1[1], a2[0]));
    if (m00 % d || m01 % d || m10 % d || m11 % d) return std::nullopt;
    IntMatrix l{{m00 / d, m01 / d}, {m10 / d, m11 / d}};
    Int det = sub(mul(l[0][0], l[1][1]), mul(l[0][1], l[1][0]));
    if (det != 1 && det != -1) return std::nullopt;
    return l;
}

inline Vec2 complement(const Vec2& d) {
    // c with det(d, c) = 1 for primitive d.
    Int x = d[0], y = d[1];
    // extended Euclid on (x, y)
    Int old_r = x, r = y, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_s - q * s; old_s = s; s = tmp;
        tmp = old_t - q * t; old_t = t; t = tmp;
    }
    // old_s * x + old_t * y = old_r = +-1
    if (old_r < 0) old_s = -old_s, old_t = -old_t;
    return {-old_t, old_s};
}

}  // namespace detail

// Exact test whether two lattice polygons (or two segments) in Z^2 are unimodularly affinely equivalent.
inline std::optional<UnimodularAffineMap> affine_equivalent(const std::vector<IntVector>& q1,
                                                            const std::vector<IntVector>& q2) {
    std::vector<Vec2> a, b;
    for (const auto& v : q1) {
        if (v.size() != 2) invalid_input("affine_equivalent expects planar input");
        a.push_back(to_vec2(v));
    }
    for (const auto& v : q2) {
        if (v.size() != 2) invalid_input("affine_equivalent expects planar input");
        b.push_back(to_vec2(v));
    }
    size_t da = affine_rank(q1), db = affine_rank(q2);
    if (da != db) invalid_input("dimension mismatch in affine_equivalent");
    if (da == 0) return UnimodularAffineMap{identity_matrix(2), {b[0][0] - a[0][0], b[0][1] - a[0][1]}};
    auto ha = convex_hull_2d(a);
    auto hb = convex_hull_2d(b);
    if (da == 1) {
        Vec2 ea{ha[1][0] - ha[0][0], ha[1][1] - ha[0][1]};
        Vec2 eb{hb[1][0] - hb[0][0], hb[1][1] - hb[0][1]};
        if (gcd(ea[0], ea[1]) != gcd(eb[0], eb[1])) return std::nullopt;
        Int ga = gcd(ea[0], ea[1]), gb = gcd(eb[0], eb[1]);
        Vec2 pa{ea[0] / ga, ea[1] / ga}, pb{eb[0] / gb, eb[1] / gb};
        auto l = detail::solve_integral_2x2(pa, detail::complement(pa), pb, detail::complement(pb));
        IntVector t = to_vector(hb[0]) - mat_vec(*l, to_vector(ha[0]));
        return UnimodularAffineMap{*l, t};
    }
    if (ha.size() != hb.size()) return std::nullopt;
    if (twice_area(ha) != twice_area(hb)) return std::nullopt;
    std::set<Vec2> target(hb.begin(), hb.end());
    size_t n = ha.size();
    for (size_t j = 0; j < n; ++j)
        for (int dir : {1, -1}) {
            Vec2 a1{ha[1][0] - ha[0][0], ha[1][1] - ha[0][1]};
            Vec2 a2{ha[n - 1][0] - ha[0][0], ha[n - 1][1] - ha[0][1]};
            const Vec2& w = hb[j];
            const Vec2& wn = hb[(j + n + dir) % n];
            const Vec2& wp = hb[(j + n - dir) % n];
            Vec2 b1{wn[0] - w[0], wn[1] - w[1]};
            Vec2 b2{wp[0] - w[0], wp[1] - w[1]};
            auto l = detail::solve_integral_2x2(a1, a2, b1, b2);
            if (!l) continue;
            IntVector t = to_vector(w) - mat_vec(*l, to_vector(ha[0]));
            UnimodularAffineMap m{*l, t};
            bool ok = true;
            for (const auto& v : ha)
                if (!target.count(to_vec2(m(to_vector(v))))) {
                    ok = false;
                    break;
                }
            if (ok) return m;
        }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Regular subdivisions of a polygon from heights on its boundary lattice points

struct LiftedHull2D {
    std::vector<Vec2> base;
    std::map<Vec2, Rational> heights;
    std::vector<std::vector<Vec2>> cells;  // counter-clockwise vertex lists
};

inline bool is_empty_cell(const std::vector<Vec2>& cell) {
    return polygon_lattice_points(cell).size() == cell.size();
}

inline bool is_unimodular_triangle(const std::vector<Vec2>& cell) {
    return cell.size() == 3 && twice_area(cell) == 1;
}

inline LiftedHull2D lower_hull_subdivision(const std::vector<Vec2>& base, const std::map<Vec2, Rational>& heights) {
    LiftedHull2D out;
    out.base = convex_hull_2d(base);
    out.heights = heights;
    for (const auto& p : polygon_boundary_points(out.base))
        if (!heights.count(p)) invalid_input("missing height on a boundary lattice point");
    std::vector<std::pair<Vec2, Rational>> pts(heights.begin(), heights.end());
    size_t n = pts.size();
    std::set<std::vector<Vec2>> seen;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k) {
                const Vec2 &p = pts[i].first, &q = pts[j].first, &r = pts[k].first;
                Int d = det2({q[0] - p[0], q[1] - p[1]}, {r[0] - p[0], r[1] - p[1]});
                if (d == 0) continue;
                // z = alpha x + beta y + gamma through the three lifted points.
                Rational dq = pts[j].second - pts[i].second, dr = pts[k].second - pts[i].second;
                Rational alpha = (dq * (r[1] - p[1]) - dr * (q[1] - p[1])) / d;
                Rational beta = (dr * (q[0] - p[0]) - dq * (r[0] - p[0])) / d;
                Rational gamma = pts[i].second - alpha * p[0] - beta * p[1];
                std::vector<Vec2> on;
                bool lower = true;
                for (const auto& [x, h] : pts) {
                    Rational z = alpha * x[0] + beta * x[1] + gamma;
                    if (h < z) {
                        lower = false;
                        break;
                    }
                    if (h == z) on.push_back(x);
                }
                if (!lower) continue;
                if (seen.insert(on).second) out.cells.push_back(convex_hull_2d(on));
            }
    std::sort(out.cells.begin(), out.cells.end());
    return out;
}

}  // namespace sdp
