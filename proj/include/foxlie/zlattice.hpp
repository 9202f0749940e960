#pragma once

#include "foxlie/ints.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace foxlie {

class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(int rows, int cols)
        : rows_(rows), cols_(cols),
          a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), Int(0)) {}

    static IntMatrix identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows) {
        if (rows.empty()) return IntMatrix(0, 0);
        IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
        for (int r = 0; r < m.rows_; ++r) {
            if (rows[static_cast<std::size_t>(r)].size() != static_cast<std::size_t>(m.cols_))
                throw std::invalid_argument("from_rows: ragged rows");
            for (int c = 0; c < m.cols_; ++c)
                m.at(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& at(int r, int c) {
        return a_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
                  static_cast<std::size_t>(c)];
    }
    const Int& at(int r, int c) const {
        return a_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
                  static_cast<std::size_t>(c)];
    }

    std::vector<Int> row(int r) const {
        std::vector<Int> out(static_cast<std::size_t>(cols_));
        for (int c = 0; c < cols_; ++c) out[static_cast<std::size_t>(c)] = at(r, c);
        return out;
    }

    IntMatrix operator*(const IntMatrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product: shape mismatch");
        IntMatrix out(rows_, o.cols_);
        for (int r = 0; r < rows_; ++r)
            for (int k = 0; k < cols_; ++k) {
                const Int& v = at(r, k);
                if (v == 0) continue;
                for (int c = 0; c < o.cols_; ++c) out.at(r, c) += v * o.at(k, c);
            }
        return out;
    }

    IntMatrix operator+(const IntMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix sum: shape mismatch");
        IntMatrix out = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] += o.a_[i];
        return out;
    }

    IntMatrix operator-(const IntMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix difference: shape mismatch");
        IntMatrix out = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] -= o.a_[i];
        return out;
    }

    IntMatrix scaled(const Int& c) const {
        IntMatrix out = *this;
        for (Int& v : out.a_) v *= c;
        return out;
    }

    IntMatrix transpose() const {
        IntMatrix out(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
        return out;
    }

    Int trace() const {
        if (rows_ != cols_) throw std::invalid_argument("trace: matrix not square");
        Int t = 0;
        for (int i = 0; i < rows_; ++i) t += at(i, i);
        return t;
    }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }

    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c)
                if (at(r, c) != (r == c ? 1 : 0)) return false;
        return true;
    }

    std::string str() const {
        std::ostringstream out;
        for (int r = 0; r < rows_; ++r) {
            out << (r == 0 ? "[" : " ");
            out << "[";
            for (int c = 0; c < cols_; ++c) {
                if (c) out << ", ";
                out << at(r, c);
            }
            out << "]";
            if (r + 1 < rows_) out << "\n";
        }
        out << "]";
        return out.str();
    }

private:
    int rows_, cols_;
    std::vector<Int> a_;
};

// Exact determinant by fraction-free (Bareiss) elimination.
inline Int determinant(IntMatrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
    int n = m.rows();
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int piv = -1;
            for (int r = k + 1; r < n; ++r)
                if (m.at(r, k) != 0) { piv = r; break; }
            if (piv < 0) return 0;
            for (int c = 0; c < n; ++c) std::swap(m.at(k, c), m.at(piv, c));
            sign = -sign;
        }
        for (int r = k + 1; r < n; ++r)
            for (int c = k + 1; c < n; ++c)
                m.at(r, c) = (m.at(r, c) * m.at(k, k) - m.at(r, k) * m.at(k, c)) / prev;
        prev = m.at(k, k);
    }
    return sign * m.at(n - 1, n - 1);
}

struct HnfResult {
    IntMatrix h;  // row-style Hermite normal form, zero rows at the bottom
    IntMatrix u;  // unimodular transform with u * input = h
    std::vector<int> pivot_cols;
    int rank = 0;
};

// Row-style Hermite normal form with unimodular transform: pivots positive,
// entries above each pivot reduced into [0, pivot).
inline HnfResult hnf(const IntMatrix& input) {
    HnfResult res;
    IntMatrix h = input;
    IntMatrix u = IntMatrix::identity(input.rows());
    int rows = h.rows(), cols = h.cols();
    int r = 0;
    auto row_op_sub = [&](int dst, int src, const Int& q) {
        for (int c = 0; c < cols; ++c) h.at(dst, c) -= q * h.at(src, c);
        for (int c = 0; c < rows; ++c) u.at(dst, c) -= q * u.at(src, c);
    };
    auto row_swap = [&](int i, int j) {
        for (int c = 0; c < cols; ++c) std::swap(h.at(i, c), h.at(j, c));
        for (int c = 0; c < rows; ++c) std::swap(u.at(i, c), u.at(j, c));
    };
    auto row_negate = [&](int i) {
        for (int c = 0; c < cols; ++c) h.at(i, c) = -h.at(i, c);
        for (int c = 0; c < rows; ++c) u.at(i, c) = -u.at(i, c);
    };
    auto row_combine = [&](int i, int j, const Int& a, const Int& b, const Int& c2,
                           const Int& d) {
        // (row_i, row_j) <- (a*row_i + b*row_j, c2*row_i + d*row_j), ad - bc = +-1
        for (int c = 0; c < cols; ++c) {
            Int x = h.at(i, c), y = h.at(j, c);
            h.at(i, c) = a * x + b * y;
            h.at(j, c) = c2 * x + d * y;
        }
        for (int c = 0; c < rows; ++c) {
            Int x = u.at(i, c), y = u.at(j, c);
            u.at(i, c) = a * x + b * y;
            u.at(j, c) = c2 * x + d * y;
        }
    };
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (h.at(i, c) != 0 &&
                (piv < 0 || abs(h.at(i, c)) < abs(h.at(piv, c))))
                piv = i;
        if (piv < 0) continue;
        row_swap(r, piv);
        for (int i = r + 1; i < rows; ++i) {
            while (h.at(i, c) != 0) {
                Int s, t;
                Int g = xgcd(h.at(r, c), h.at(i, c), s, t);
                row_combine(r, i, s, t, -(h.at(i, c) / g), h.at(r, c) / g);
            }
        }
        if (h.at(r, c) < 0) row_negate(r);
        for (int i = 0; i < r; ++i) {
            Int q = floor_div(h.at(i, c), h.at(r, c));
            if (q != 0) row_op_sub(i, r, q);
        }
        res.pivot_cols.push_back(c);
        ++r;
    }
    res.rank = r;
    res.h = h;
    res.u = u;
    return res;
}

// Incrementally built integer row lattice kept in echelon form; rows are
// sparse (sorted column/value pairs).  Supports membership tests and exact
// canonicalization to the Hermite normal form.
class HnfLattice {
public:
    using SparseRow = std::vector<std::pair<int, Int>>;

    explicit HnfLattice(int cols) : cols_(cols) {}

    int cols() const { return cols_; }
    int rank() const { return static_cast<int>(rows_.size()); }

    static SparseRow sparsify(const std::vector<Int>& dense) {
        SparseRow out;
        for (std::size_t c = 0; c < dense.size(); ++c)
            if (dense[c] != 0) out.emplace_back(static_cast<int>(c), dense[c]);
        return out;
    }

    // Returns true when the row enlarged the lattice.
    bool insert(const std::vector<Int>& dense) { return insert_sparse(sparsify(dense)); }

    bool insert_sparse(SparseRow v) {
        bool changed = false;
        while (!v.empty()) {
            int c = v[0].first;
            auto it = by_col_.find(c);
            if (it == by_col_.end()) {
                if (v[0].second < 0) negate(v);
                int idx = static_cast<int>(rows_.size());
                rows_.push_back(std::move(v));
                by_col_[c] = idx;
                canonical_ = false;
                return true;
            }
            SparseRow& r = rows_[static_cast<std::size_t>(it->second)];
            const Int& pv = r[0].second;
            Int x = v[0].second;
            if (x % pv == 0) {
                axpy(v, -(x / pv), r);
            } else {
                Int s, t;
                Int g = xgcd(pv, x, s, t);
                SparseRow newr = combine(s, r, t, v);       // pivot becomes g
                SparseRow newv = combine(pv / g, v, -(x / g), r);  // leading entry killed
                rows_[static_cast<std::size_t>(it->second)] = std::move(newr);
                v = std::move(newv);
                changed = true;
                canonical_ = false;
            }
        }
        return changed;
    }

    bool contains(const std::vector<Int>& dense) const {
        SparseRow v = sparsify(dense);
        while (!v.empty()) {
            auto it = by_col_.find(v[0].first);
            if (it == by_col_.end()) return false;
            const SparseRow& r = rows_[static_cast<std::size_t>(it->second)];
            if (v[0].second % r[0].second != 0) return false;
            axpy(v, -(v[0].second / r[0].second), r);
        }
        return true;
    }

    // Fully reduced Hermite form: rows sorted by pivot column, entries at
    // other pivot columns reduced into [0, pivot).
    IntMatrix canonical_matrix() const {
        canonicalize();
        IntMatrix m(rank(), cols_);
        for (int i = 0; i < rank(); ++i)
            for (const auto& [c, val] : rows_[static_cast<std::size_t>(i)])
                m.at(i, c) = val;
        return m;
    }

    std::vector<std::vector<Int>> dense_rows() const {
        canonicalize();
        std::vector<std::vector<Int>> out;
        for (const SparseRow& r : rows_) {
            std::vector<Int> d(static_cast<std::size_t>(cols_), Int(0));
            for (const auto& [c, val] : r) d[static_cast<std::size_t>(c)] = val;
            out.push_back(std::move(d));
        }
        return out;
    }

    std::vector<int> pivot_columns() const {
        std::vector<int> out;
        for (const auto& [c, idx] : by_col_) out.push_back(c);
        return out;
    }

private:
    static void negate(SparseRow& v) {
        for (auto& [c, val] : v) val = -val;
    }

    // v += q * r, keeping v sorted and dropping zeros.
    static void axpy(SparseRow& v, const Int& q, const SparseRow& r) {
        if (q == 0) return;
        SparseRow out;
        out.reserve(v.size() + r.size());
        std::size_t i = 0, j = 0;
        while (i < v.size() || j < r.size()) {
            if (j >= r.size() || (i < v.size() && v[i].first < r[j].first)) {
                out.push_back(v[i++]);
            } else if (i >= v.size() || r[j].first < v[i].first) {
                out.emplace_back(r[j].first, q * r[j].second);
                ++j;
            } else {
                Int s = v[i].second + q * r[j].second;
                if (s != 0) out.emplace_back(v[i].first, std::move(s));
                ++i;
                ++j;
            }
        }
        v = std::move(out);
    }

    static SparseRow combine(const Int& a, const SparseRow& x, const Int& b, const SparseRow& y) {
        SparseRow out;
        out.reserve(x.size() + y.size());
        std::size_t i = 0, j = 0;
        while (i < x.size() || j < y.size()) {
            if (j >= y.size() || (i < x.size() && x[i].first < y[j].first)) {
                Int s = a * x[i].second;
                if (s != 0) out.emplace_back(x[i].first, std::move(s));
                ++i;
            } else if (i >= x.size() || y[j].first < x[i].first) {
                Int s = b * y[j].second;
                if (s != 0) out.emplace_back(y[j].first, std::move(s));
                ++j;
            } else {
                Int s = a * x[i].second + b * y[j].second;
                if (s != 0) out.emplace_back(x[i].first, std::move(s));
                ++i;
                ++j;
            }
        }
        return out;
    }

    void canonicalize() const {
        if (canonical_) return;
        std::vector<int> order;
        for (const auto& [c, idx] : by_col_) order.push_back(idx);
        std::vector<SparseRow> sorted;
        sorted.reserve(rows_.size());
        for (int idx : order) sorted.push_back(std::move(rows_[static_cast<std::size_t>(idx)]));
        rows_ = std::move(sorted);
        by_col_.clear();
        for (std::size_t i = 0; i < rows_.size(); ++i) by_col_[rows_[i][0].first] = static_cast<int>(i);
        // reduce entries over later pivots, bottom row first
        for (int i = static_cast<int>(rows_.size()) - 1; i >= 0; --i) {
            for (std::size_t j = static_cast<std::size_t>(i) + 1; j < rows_.size(); ++j) {
                int pc = rows_[j][0].first;
                const Int* entry = find_entry(rows_[static_cast<std::size_t>(i)], pc);
                if (!entry) continue;
                Int q = floor_div(*entry, rows_[j][0].second);
                if (q != 0) axpy(rows_[static_cast<std::size_t>(i)], -q, rows_[j]);
            }
        }
        canonical_ = true;
    }

    static const Int* find_entry(const SparseRow& r, int col) {
        auto it = std::lower_bound(r.begin(), r.end(), col,
                                   [](const std::pair<int, Int>& e, int c) { return e.first < c; });
        if (it == r.end() || it->first != col) return nullptr;
        return &it->second;
    }

    int cols_;
    mutable std::vector<SparseRow> rows_;
    mutable std::map<int, int> by_col_;
    mutable bool canonical_ = true;
};

// Smith normal form divisors: nonnegative, each dividing the next, zeros
// dropped.  The product of the first i divisors is the gcd of the i x i
// minors.
inline std::vector<Int> snf_divisors(IntMatrix m) {
    int rows = m.rows(), cols = m.cols();
    std::vector<Int> divisors;
    int t = 0;
    while (t < rows && t < cols) {
        int pr = -1, pc = -1;
        for (int r = t; r < rows; ++r)
            for (int c = t; c < cols; ++c)
                if (m.at(r, c) != 0 &&
                    (pr < 0 || abs(m.at(r, c)) < abs(m.at(pr, pc)))) {
                    pr = r;
                    pc = c;
                }
        if (pr < 0) break;
        for (int c = 0; c < cols; ++c) std::swap(m.at(t, c), m.at(pr, c));
        for (int r = 0; r < rows; ++r) std::swap(m.at(r, t), m.at(r, pc));
        bool clean = false;
        while (!clean) {
            clean = true;
            for (int r = t + 1; r < rows; ++r) {
                if (m.at(r, t) == 0) continue;
                Int q = m.at(r, t) / m.at(t, t);
                for (int c = t; c < cols; ++c) m.at(r, c) -= q * m.at(t, c);
                if (m.at(r, t) != 0) {
                    for (int c = t; c < cols; ++c) std::swap(m.at(t, c), m.at(r, c));
                    clean = false;
                }
            }
            for (int c = t + 1; c < cols; ++c) {
                if (m.at(t, c) == 0) continue;
                Int q = m.at(t, c) / m.at(t, t);
                for (int r = t; r < rows; ++r) m.at(r, c) -= q * m.at(r, t);
                if (m.at(t, c) != 0) {
                    for (int r = t; r < rows; ++r) std::swap(m.at(r, t), m.at(r, c));
                    clean = false;
                }
            }
            if (clean) {
                // pivot must divide the whole remaining block
                for (int r = t + 1; r < rows && clean; ++r)
                    for (int c = t + 1; c < cols && clean; ++c)
                        if (m.at(r, c) % m.at(t, t) != 0) {
                            for (int cc = t; cc < cols; ++cc) m.at(t, cc) += m.at(r, cc);
                            clean = false;
                        }
            }
        }
        divisors.push_back(abs(m.at(t, t)));
        ++t;
    }
    return divisors;
}

// Basis of the left kernel lattice {v : v * M = 0}; the result is saturated
// (the quotient by it is torsion-free).
inline IntMatrix kernel_lattice(const IntMatrix& m) {
    int rows = m.rows(), cols = m.cols();
    HnfLattice lat(cols + rows);
    std::vector<Int> dense(static_cast<std::size_t>(cols + rows));
    for (int r = 0; r < rows; ++r) {
        std::fill(dense.begin(), dense.end(), Int(0));
        for (int c = 0; c < cols; ++c) dense[static_cast<std::size_t>(c)] = m.at(r, c);
        dense[static_cast<std::size_t>(cols + r)] = 1;
        lat.insert(dense);
    }
    IntMatrix h = lat.canonical_matrix();
    std::vector<std::vector<Int>> kernel_rows;
    for (int r = 0; r < h.rows(); ++r) {
        bool zero_head = true;
        for (int c = 0; c < cols && zero_head; ++c)
            if (h.at(r, c) != 0) zero_head = false;
        if (!zero_head) continue;
        std::vector<Int> v(static_cast<std::size_t>(rows));
        for (int c = 0; c < rows; ++c) v[static_cast<std::size_t>(c)] = h.at(r, cols + c);
        kernel_rows.push_back(std::move(v));
    }
    if (kernel_rows.empty()) return IntMatrix(0, rows);
    return IntMatrix::from_rows(kernel_rows);
}

inline HnfLattice lattice_from_rows(const IntMatrix& m) {
    HnfLattice lat(m.cols());
    for (int r = 0; r < m.rows(); ++r) lat.insert(m.row(r));
    return lat;
}

inline bool lattice_contains(const IntMatrix& big, const IntMatrix& small) {
    if (big.cols() != small.cols()) throw std::invalid_argument("lattice_contains: ambient mismatch");
    HnfLattice lat = lattice_from_rows(big);
    for (int r = 0; r < small.rows(); ++r)
        if (!lat.contains(small.row(r))) return false;
    return true;
}

inline bool lattice_equal(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("lattice_equal: ambient mismatch");
    return lattice_from_rows(a).canonical_matrix() == lattice_from_rows(b).canonical_matrix();
}

// Invariants of the quotient of Z^ambient by the row span: free rank plus
// the full canonical divisor list of the torsion part.
struct QuotientStructure {
    int ambient = 0;
    int free_rank = 0;
    std::vector<Int> divisors;  // nonzero SNF divisors, including 1s

    bool is_free() const {
        for (const Int& d : divisors)
            if (d != 1) return false;
        return true;
    }

    std::string str() const {
        std::ostringstream out;
        out << "Z^" << free_rank;
        for (const Int& d : divisors)
            if (d != 1) out << " + Z/" << d;
        return out.str();
    }
};

inline QuotientStructure quotient_structure(int ambient, const IntMatrix& rows) {
    if (rows.rows() > 0 && rows.cols() != ambient)
        throw std::invalid_argument("quotient_structure: ambient mismatch");
    QuotientStructure q;
    q.ambient = ambient;
    q.divisors = rows.rows() == 0 ? std::vector<Int>{} : snf_divisors(rows);
    q.free_rank = ambient - static_cast<int>(q.divisors.size());
    return q;
}

// ---------------------------------------------------------------------------
// Dense linear algebra over F_p for word-sized primes.

class FpMat {
public:
    FpMat() : p_(2), rows_(0), cols_(0) {}
    FpMat(unsigned p, int rows, int cols)
        : p_(p), rows_(rows), cols_(cols),
          a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0) {
        if (!is_prime(p)) throw std::invalid_argument("FpMat: modulus must be prime");
    }

    unsigned p() const { return p_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    unsigned& at(int r, int c) {
        return a_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
                  static_cast<std::size_t>(c)];
    }
    unsigned at(int r, int c) const {
        return a_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
                  static_cast<std::size_t>(c)];
    }

    std::vector<unsigned> row(int r) const {
        std::vector<unsigned> out(static_cast<std::size_t>(cols_));
        for (int c = 0; c < cols_; ++c) out[static_cast<std::size_t>(c)] = at(r, c);
        return out;
    }

    int rank() const;
    std::vector<std::vector<unsigned>> left_kernel_basis() const;

private:
    unsigned p_;
    int rows_, cols_;
    std::vector<unsigned> a_;
};

inline unsigned fp_inverse(unsigned a, unsigned p) {
    long long t = 0, newt = 1, r = p, newr = a % p;
    while (newr != 0) {
        long long q = r / newr;
        long long tmp = t - q * newt; t = newt; newt = tmp;
        tmp = r - q * newr; r = newr; newr = tmp;
    }
    if (r != 1) throw std::invalid_argument("fp_inverse: not invertible");
    return static_cast<unsigned>((t % p + p) % p);
}

// Incrementally built row space over F_p, kept in reduced echelon form.
class FpSpan {
public:
    FpSpan(unsigned p, int cols) : p_(p), cols_(cols) {
        if (!is_prime(p)) throw std::invalid_argument("FpSpan: modulus must be prime");
    }

    unsigned p() const { return p_; }
    int cols() const { return cols_; }
    int rank() const { return static_cast<int>(rows_.size()); }
    const std::vector<std::vector<unsigned>>& basis() const { return rows_; }

    // Returns true when the vector enlarged the span.
    bool insert(std::vector<unsigned> v) {
        reduce(v);
        int lead = leading(v);
        if (lead < 0) return false;
        unsigned inv = fp_inverse(v[static_cast<std::size_t>(lead)], p_);
        for (unsigned& x : v) x = static_cast<unsigned>((static_cast<unsigned long long>(x) * inv) % p_);
        // back-substitute into the existing basis to keep rows reduced
        for (auto& r : rows_) {
            unsigned c = r[static_cast<std::size_t>(lead)];
            if (c != 0) sub_mul(r, c, v);
        }
        std::size_t pos = 0;
        while (pos < rows_.size() && leading(rows_[pos]) < lead) ++pos;
        rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
        return true;
    }

    bool contains(std::vector<unsigned> v) const {
        reduce(v);
        return leading(v) < 0;
    }

private:
    void reduce(std::vector<unsigned>& v) const {
        for (const auto& r : rows_) {
            int lead = leading(r);
            unsigned c = v[static_cast<std::size_t>(lead)];
            if (c != 0) sub_mul(v, c, r);
        }
    }

    static int leading(const std::vector<unsigned>& v) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) return static_cast<int>(i);
        return -1;
    }

    void sub_mul(std::vector<unsigned>& v, unsigned c, const std::vector<unsigned>& r) const {
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = static_cast<unsigned>(
                (v[i] + static_cast<unsigned long long>(p_ - c) * r[i]) % p_);
    }

    unsigned p_;
    int cols_;
    std::vector<std::vector<unsigned>> rows_;
};

inline int FpMat::rank() const {
    FpSpan span(p_, cols_);
    for (int r = 0; r < rows_; ++r) span.insert(row(r));
    return span.rank();
}

// Basis of {v : v * M = 0} over F_p, by echelon reduction of [M | I].
inline std::vector<std::vector<unsigned>> FpMat::left_kernel_basis() const {
    FpSpan span(p_, cols_ + rows_);
    for (int r = 0; r < rows_; ++r) {
        std::vector<unsigned> v(static_cast<std::size_t>(cols_ + rows_), 0);
        for (int c = 0; c < cols_; ++c) v[static_cast<std::size_t>(c)] = at(r, c);
        v[static_cast<std::size_t>(cols_ + r)] = 1;
        span.insert(std::move(v));
    }
    std::vector<std::vector<unsigned>> out;
    for (const auto& r : span.basis()) {
        bool zero_head = true;
        for (int c = 0; c < cols_ && zero_head; ++c)
            if (r[static_cast<std::size_t>(c)] != 0) zero_head = false;
        if (!zero_head) continue;
        out.emplace_back(r.begin() + cols_, r.end());
    }
    return out;
}

// F_p rank of an integer matrix: the Z-rank minus the number of elementary
// divisors divisible by p.
inline int fp_rank_of_integer_matrix(const IntMatrix& m, unsigned p) {
    std::vector<Int> div = snf_divisors(m);
    int rank = static_cast<int>(div.size());
    for (const Int& d : div)
        if (d % p == 0) --rank;
    return rank;
}

}  // namespace foxlie
