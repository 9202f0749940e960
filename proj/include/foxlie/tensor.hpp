#pragma once

#include "foxlie/group_ring.hpp"

#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace foxlie {

// Monomial in the free associative algebra: sequence of 1-based generator
// indices.  X1X2X1 is {1, 2, 1}; the empty sequence is the unit.
using Mono = std::vector<unsigned char>;

inline std::string mono_str(const Mono& m) {
    if (m.empty()) return "1";
    std::ostringstream out;
    for (unsigned char i : m) out << 'X' << static_cast<int>(i);
    return out.str();
}

// Graded-lexicographic order on monomials (degree first, then lex).
struct MonoLess {
    bool operator()(const Mono& a, const Mono& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

// Element of the tensor algebra truncated in degrees > trunc.  The
// truncation degree travels with the value; products truncate to the
// smaller of the two bounds.
class TensorPoly {
public:
    TensorPoly() : rank_(0), trunc_(0) {}
    TensorPoly(int rank, int trunc, Ring ring = {}) : rank_(rank), trunc_(trunc), ring_(ring) {}

    static TensorPoly zero(int rank, int trunc, Ring ring = {}) {
        return TensorPoly(rank, trunc, ring);
    }
    static TensorPoly unit(int rank, int trunc, Ring ring = {}) {
        TensorPoly t(rank, trunc, ring);
        t.add_term({}, 1);
        return t;
    }
    static TensorPoly variable(int rank, int i, int trunc, Ring ring = {}) {
        if (i < 1 || i > rank) throw std::invalid_argument("variable index out of range");
        TensorPoly t(rank, trunc, ring);
        t.add_term({static_cast<unsigned char>(i)}, 1);
        return t;
    }

    int rank() const { return rank_; }
    int trunc() const { return trunc_; }
    Ring ring() const { return ring_; }
    const std::map<Mono, Int, MonoLess>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Int coeff(const Mono& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Int(0) : it->second;
    }

    void add_term(const Mono& m, const Int& c) {
        if (static_cast<int>(m.size()) > trunc_) return;
        for (unsigned char i : m)
            if (i < 1 || static_cast<int>(i) > rank_)
                throw std::invalid_argument("monomial index out of range");
        Int v = ring_.normalize(terms_[m] + c);
        if (v == 0) terms_.erase(m);
        else terms_[m] = v;
    }

    TensorPoly operator+(const TensorPoly& o) const {
        TensorPoly out = with_trunc(std::min(trunc_, o.trunc_));
        for (const auto& [m, c] : o.terms_) out.add_term(m, c);
        return out;
    }

    TensorPoly operator-(const TensorPoly& o) const {
        TensorPoly out = with_trunc(std::min(trunc_, o.trunc_));
        for (const auto& [m, c] : o.terms_) out.add_term(m, -c);
        return out;
    }

    TensorPoly operator-() const {
        TensorPoly out(rank_, trunc_, ring_);
        for (const auto& [m, c] : terms_) out.add_term(m, -c);
        return out;
    }

    TensorPoly operator*(const TensorPoly& o) const {
        check_compatible(o);
        TensorPoly out(rank_, std::min(trunc_, o.trunc_), ring_);
        for (const auto& [m1, c1] : terms_) {
            if (static_cast<int>(m1.size()) > out.trunc_) continue;
            for (const auto& [m2, c2] : o.terms_) {
                if (static_cast<int>(m1.size() + m2.size()) > out.trunc_) continue;
                Mono m = m1;
                m.insert(m.end(), m2.begin(), m2.end());
                out.add_term(m, c1 * c2);
            }
        }
        return out;
    }

    TensorPoly scaled(const Int& c) const {
        TensorPoly out(rank_, trunc_, ring_);
        for (const auto& [m, v] : terms_) out.add_term(m, v * c);
        return out;
    }

    TensorPoly graded_component(int k) const {
        TensorPoly out(rank_, trunc_, ring_);
        for (const auto& [m, c] : terms_)
            if (static_cast<int>(m.size()) == k) out.add_term(m, c);
        return out;
    }

    // Same terms under a different truncation bound (degrees above the new
    // bound are dropped).
    TensorPoly truncated(int t) const {
        TensorPoly out(rank_, t, ring_);
        for (const auto& [m, c] : terms_) out.add_term(m, c);
        return out;
    }

    bool is_homogeneous(int k) const {
        for (const auto& [m, c] : terms_)
            if (static_cast<int>(m.size()) != k) return false;
        return true;
    }

    // Degree of the lowest nonzero component, or -1 for the zero element.
    int min_degree() const {
        return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first.size());
    }

    bool operator==(const TensorPoly& o) const {
        return rank_ == o.rank_ && ring_ == o.ring_ && terms_ == o.terms_;
    }
    bool operator!=(const TensorPoly& o) const { return !(*this == o); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            Int v = c;
            if (first) {
                if (v < 0) { out << "-"; v = -v; }
            } else {
                out << (v < 0 ? " - " : " + ");
                if (v < 0) v = -v;
            }
            if (m.empty()) out << v;
            else {
                if (v != 1) out << v << "*";
                out << mono_str(m);
            }
            first = false;
        }
        return out.str();
    }

private:
    TensorPoly with_trunc(int t) const {
        TensorPoly out(rank_, t, ring_);
        for (const auto& [m, c] : terms_) out.add_term(m, c);
        return out;
    }
    void check_compatible(const TensorPoly& o) const {
        if (rank_ != o.rank_ || ring_ != o.ring_)
            throw std::invalid_argument("tensor polynomials not compatible");
    }

    int rank_;
    int trunc_;
    Ring ring_;
    std::map<Mono, Int, MonoLess> terms_;
};

namespace detail {

// Dense vector of all monomials of degree <= trunc over the given rank,
// indexed level by level; offsets[k] is the index of the first degree-k
// monomial.  Used for the Magnus expansion of long words, where per-letter
// map updates would dominate.
struct DenseSeries {
    int rank, trunc;
    std::vector<std::size_t> offsets;
    std::vector<Int> coeffs;

    DenseSeries(int n, int d) : rank(n), trunc(d) {
        offsets.assign(static_cast<std::size_t>(d) + 2, 0);
        std::size_t total = 0, level = 1;
        for (int k = 0; k <= d; ++k) {
            offsets[static_cast<std::size_t>(k)] = total;
            total += level;
            level *= static_cast<std::size_t>(n);
        }
        offsets[static_cast<std::size_t>(d) + 1] = total;
        coeffs.assign(total, Int(0));
    }

    std::size_t level_size(int k) const {
        return offsets[static_cast<std::size_t>(k) + 1] - offsets[static_cast<std::size_t>(k)];
    }

    // Right-multiply in place by 1 + X_i (sign +1) or by the expansion of
    // x_i^-1's letter contribution, folded one degree at a time.
    void mul_generator(int i, int sign, const Ring& ring) {
        // new[m] = old[m] + sign_series applied; both cases reduce to
        // iterating degrees top-down and adding shifted copies.
        if (sign > 0) {
            for (int k = trunc; k >= 1; --k) {
                std::size_t dst = offsets[static_cast<std::size_t>(k)];
                std::size_t src = offsets[static_cast<std::size_t>(k) - 1];
                std::size_t nsrc = level_size(k - 1);
                // appending X_i: index(m*X_i) = index(m)*rank + (i-1)
                for (std::size_t s = 0; s < nsrc; ++s) {
                    Int& c = coeffs[src + s];
                    if (c != 0)
                        coeffs[dst + s * static_cast<std::size_t>(rank) +
                               static_cast<std::size_t>(i - 1)] += c;
                }
            }
        } else {
            // (1 - X_i + X_i^2 - ...): new[m] = sum_j (-1)^j old[m / X_i^j];
            // computed as new[m] = old[m] - new[m'] where m = m' * X_i.
            for (int k = 1; k <= trunc; ++k) {
                std::size_t dst = offsets[static_cast<std::size_t>(k)];
                std::size_t src = offsets[static_cast<std::size_t>(k) - 1];
                std::size_t nsrc = level_size(k - 1);
                for (std::size_t s = 0; s < nsrc; ++s) {
                    Int& prev = coeffs[src + s];
                    if (prev != 0)
                        coeffs[dst + s * static_cast<std::size_t>(rank) +
                               static_cast<std::size_t>(i - 1)] -= prev;
                }
            }
        }
        if (ring.is_modular())
            for (Int& c : coeffs) c = ring.normalize(c);
    }
};

inline std::size_t dense_cells(int rank, int trunc) {
    std::size_t total = 1, level = 1;
    for (int k = 1; k <= trunc; ++k) {
        level *= static_cast<std::size_t>(rank);
        total += level;
        if (total > (std::size_t{1} << 22)) return total;
    }
    return total;
}

}  // namespace detail

// Magnus expansion of a word: x_i -> 1 + X_i, x_i^-1 -> 1 - X_i + X_i^2 - ...
inline TensorPoly magnus(const Word& w, int trunc, Ring ring = {}) {
    int n = w.rank();
    if (detail::dense_cells(n, trunc) <= (std::size_t{1} << 22)) {
        detail::DenseSeries s(n, trunc);
        s.coeffs[0] = 1;
        for (int l : w.letters()) s.mul_generator(std::abs(l), l > 0 ? 1 : -1, ring);
        TensorPoly out(n, trunc, ring);
        Mono m;
        for (int k = 0; k <= trunc; ++k) {
            std::size_t base = s.offsets[static_cast<std::size_t>(k)];
            std::size_t count = s.level_size(k);
            for (std::size_t idx = 0; idx < count; ++idx) {
                if (s.coeffs[base + idx] == 0) continue;
                m.assign(static_cast<std::size_t>(k), 1);
                std::size_t rest = idx;
                for (int pos = k - 1; pos >= 0; --pos) {
                    m[static_cast<std::size_t>(pos)] =
                        static_cast<unsigned char>(rest % static_cast<std::size_t>(n) + 1);
                    rest /= static_cast<std::size_t>(n);
                }
                out.add_term(m, s.coeffs[base + idx]);
            }
        }
        return out;
    }
    TensorPoly acc = TensorPoly::unit(n, trunc, ring);
    for (int l : w.letters()) {
        TensorPoly factor = TensorPoly::unit(n, trunc, ring);
        if (l > 0) {
            factor = factor + TensorPoly::variable(n, l, trunc, ring);
        } else {
            TensorPoly xi = TensorPoly::variable(n, -l, trunc, ring);
            TensorPoly pw = xi;
            for (int j = 1; j <= trunc; ++j) {
                factor = (j % 2 == 1) ? factor - pw : factor + pw;
                if (j < trunc) pw = pw * xi;
            }
        }
        acc = acc * factor;
    }
    return acc;
}

inline TensorPoly magnus(const GroupRingElement& e, int trunc) {
    TensorPoly out(e.rank(), trunc, e.ring());
    for (const auto& [w, c] : e.terms()) out = out + magnus(w, trunc, e.ring()).scaled(c);
    return out;
}

// Valuation of an element with respect to the augmentation filtration,
// detected through the Magnus expansion up to degree d_max.
struct Valuation {
    enum Kind { zero_element, exact, beyond } kind;
    int value = 0;  // exact valuation, or d_max for `beyond` (val > d_max)

    bool at_least(int k) const { return kind != exact || value >= k; }
    std::string str() const {
        if (kind == zero_element) return "zero";
        if (kind == beyond) return "> " + std::to_string(value);
        return std::to_string(value);
    }
};

inline Valuation valuation(const GroupRingElement& e, int d_max) {
    if (e.is_zero()) return {Valuation::zero_element, 0};
    TensorPoly t = magnus(e, d_max);
    int d = t.min_degree();
    if (d < 0) return {Valuation::beyond, d_max};
    return {Valuation::exact, d};
}

// Valuation of w - 1, i.e. the lower-central-series degree of w when the
// ring is Z and the mod-p dimension-series degree when the ring is F_p.
inline Valuation word_degree(const Word& w, int d_max, Ring ring = {}) {
    if (w.is_identity()) return {Valuation::zero_element, 0};
    TensorPoly t = magnus(w, d_max, ring);
    t.add_term({}, -1);
    int d = t.min_degree();
    if (d < 0) return {Valuation::beyond, d_max};
    return {Valuation::exact, d};
}

// Last-letter contraction against X_i*: alpha (x) X_{j1}..X_{jk}X_{jk+1}
// maps to X_{j1}..X_{jk} when j_{k+1} = i, to zero otherwise; constants map
// to zero.
inline TensorPoly contract(int i, const TensorPoly& t) {
    if (i < 1 || i > t.rank()) throw std::invalid_argument("contract: index out of range");
    TensorPoly out(t.rank(), t.trunc(), t.ring());
    for (const auto& [m, c] : t.terms()) {
        if (m.empty()) continue;
        if (static_cast<int>(m.back()) == i) out.add_term(Mono(m.begin(), m.end() - 1), c);
    }
    return out;
}

inline Mono rotate(const Mono& m, std::size_t s) {
    Mono out;
    out.reserve(m.size());
    out.insert(out.end(), m.begin() + static_cast<Mono::difference_type>(s), m.end());
    out.insert(out.end(), m.begin(), m.begin() + static_cast<Mono::difference_type>(s));
    return out;
}

// Canonical necklace representative: lexicographically minimal rotation,
// found by trying all k rotations.
inline Mono minimal_rotation(const Mono& m) {
    Mono best = m;
    for (std::size_t s = 1; s < m.size(); ++s) {
        Mono r = rotate(m, s);
        if (r < best) best = r;
    }
    return best;
}

inline std::size_t minimal_period(const Mono& m) {
    for (std::size_t d = 1; d <= m.size(); ++d) {
        if (m.size() % d != 0) continue;
        bool ok = true;
        for (std::size_t i = d; i < m.size() && ok; ++i)
            if (m[i] != m[i - d]) ok = false;
        if (ok) return d;
    }
    return m.size();
}

// A necklace class of degree k is the p-th power of a shorter monomial
// exactly when p divides k / (minimal period).
inline bool is_p_power_class(const Mono& m, unsigned p) {
    if (m.empty()) return false;
    return (m.size() / minimal_period(m)) % p == 0;
}

// Number of length-k necklaces over n letters: (1/k) sum_{d|k} phi(d) n^{k/d}.
inline unsigned long long necklace_count(int n, int k) {
    if (k == 0) return 1;
    auto phi = [](int d) {
        int r = d;
        for (int q = 2; q * q <= d; ++q)
            if (d % q == 0) {
                while (d % q == 0) d /= q;
                r -= r / q;
            }
        if (d > 1) r -= r / d;
        return r;
    };
    unsigned long long total = 0;
    for (int d = 1; d <= k; ++d) {
        if (k % d != 0) continue;
        unsigned long long pw = 1;
        for (int j = 0; j < k / d; ++j) pw *= static_cast<unsigned long long>(n);
        total += static_cast<unsigned long long>(phi(d)) * pw;
    }
    return total / static_cast<unsigned long long>(k);
}

// All degree-k necklace representatives in graded-lex order; with
// p_restricted set, representatives of p-th power classes are dropped.
inline std::vector<Mono> necklace_basis(int n, int k, bool p_restricted = false, unsigned p = 0) {
    std::vector<Mono> out;
    Mono m(static_cast<std::size_t>(k), 1);
    while (true) {
        if (minimal_rotation(m) == m && !(p_restricted && is_p_power_class(m, p)))
            out.push_back(m);
        int pos = k - 1;
        while (pos >= 0 && static_cast<int>(m[static_cast<std::size_t>(pos)]) == n) {
            m[static_cast<std::size_t>(pos)] = 1;
            --pos;
        }
        if (pos < 0) break;
        ++m[static_cast<std::size_t>(pos)];
    }
    return out;
}

// Image of a homogeneous tensor in the degree-k cyclic quotient: coefficients
// grouped by necklace class.  With the p-restricted flag (ring must be F_p),
// classes of p-th power monomials are additionally killed.
class CyclicClassVector {
public:
    CyclicClassVector() : degree_(0), p_restricted_(false) {}
    CyclicClassVector(int degree, Ring ring, bool p_restricted)
        : degree_(degree), ring_(ring), p_restricted_(p_restricted) {}

    int degree() const { return degree_; }
    Ring ring() const { return ring_; }
    bool p_restricted() const { return p_restricted_; }
    const std::map<Mono, Int, MonoLess>& classes() const { return classes_; }
    bool is_zero() const { return classes_.empty(); }

    void add(const Mono& cls, const Int& c) {
        Int v = ring_.normalize(classes_[cls] + c);
        if (v == 0) classes_.erase(cls);
        else classes_[cls] = v;
    }

    bool operator==(const CyclicClassVector& o) const {
        return degree_ == o.degree_ && ring_ == o.ring_ && p_restricted_ == o.p_restricted_ &&
               classes_ == o.classes_;
    }
    bool operator!=(const CyclicClassVector& o) const { return !(*this == o); }

    std::string str() const {
        if (classes_.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        for (const auto& [m, c] : classes_) {
            if (!first) out << " + ";
            out << c << "*(" << mono_str(m) << ")";
            first = false;
        }
        return out.str();
    }

private:
    int degree_;
    Ring ring_;
    bool p_restricted_;
    std::map<Mono, Int, MonoLess> classes_;
};

inline CyclicClassVector cyclic_project(const TensorPoly& t, bool p_restricted = false) {
    if (p_restricted && (!t.ring().is_modular() || !is_prime(t.ring().modulus)))
        throw std::invalid_argument("cyclic_project: p-restricted flag needs a prime modulus");
    int k = t.min_degree();
    if (k < 0) k = 0;
    if (!t.is_homogeneous(k))
        throw std::invalid_argument("cyclic_project: tensor must be homogeneous");
    CyclicClassVector out(k, t.ring(), p_restricted);
    for (const auto& [m, c] : t.terms()) {
        if (p_restricted && is_p_power_class(m, t.ring().modulus)) continue;
        out.add(minimal_rotation(m), c);
    }
    return out;
}

// Membership in the degree-k bracket subspace [TV, TV]_k (plus the span of
// p-th powers when the flag is set): all necklace class sums vanish.
inline bool in_bracket_subspace(const TensorPoly& t, bool p_restricted = false) {
    if (t.is_zero()) return true;
    if (t.min_degree() == 0) return false;  // nonzero constants survive every quotient
    return cyclic_project(t, p_restricted).is_zero();
}

// Square matrices over the coefficient ring, only as big as the tensor
// degree; used for the trace-evaluation membership test.
struct SmallMatrix {
    int n = 0;
    Ring ring;
    std::vector<Int> a;

    SmallMatrix() = default;
    SmallMatrix(int n_, Ring r) : n(n_), ring(r), a(static_cast<std::size_t>(n_) * n_, Int(0)) {}

    Int& at(int r, int c) { return a[static_cast<std::size_t>(r) * n + c]; }
    const Int& at(int r, int c) const { return a[static_cast<std::size_t>(r) * n + c]; }

    static SmallMatrix identity(int n, Ring ring) {
        SmallMatrix m(n, ring);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    SmallMatrix operator*(const SmallMatrix& o) const {
        SmallMatrix out(n, ring);
        for (int r = 0; r < n; ++r)
            for (int k = 0; k < n; ++k) {
                if (at(r, k) == 0) continue;
                for (int c = 0; c < n; ++c)
                    out.at(r, c) = ring.normalize(out.at(r, c) + at(r, k) * o.at(k, c));
            }
        return out;
    }

    Int trace() const {
        Int s = 0;
        for (int i = 0; i < n; ++i) s += at(i, i);
        return ring.normalize(s);
    }
};

// Evaluate a homogeneous degree-k tensor on matrices C_1..C_n and take the
// trace.
inline Int evaluate_trace(const TensorPoly& t, const std::vector<SmallMatrix>& c) {
    int k = t.min_degree();
    if (k <= 0 || !t.is_homogeneous(k))
        throw std::invalid_argument("evaluate_trace: tensor must be homogeneous of degree >= 1");
    Int total = 0;
    for (const auto& [m, coeff] : t.terms()) {
        SmallMatrix prod = c[static_cast<std::size_t>(m[0] - 1)];
        for (std::size_t pos = 1; pos < m.size(); ++pos)
            prod = prod * c[static_cast<std::size_t>(m[pos] - 1)];
        total += coeff * prod.trace();
    }
    return t.ring().normalize(total);
}

// Random element of the cyclic-shift evaluation space: entries on the
// positions (j, j+1 mod k) only.
inline SmallMatrix random_cyclic_shear(Rng& rng, int k, Ring ring) {
    SmallMatrix m(k, ring);
    for (int j = 0; j < k; ++j) {
        Int c = ring.is_modular() ? Int(rng.below(ring.modulus))
                                  : Int(rng.range(-3, 3));
        m.at(j, (j + 1) % k) = ring.normalize(c);
    }
    return m;
}

struct TraceSampleReport {
    bool all_traces_zero = true;
    int refuting_sample = -1;  // 1-based index of the first nonzero trace
    std::string witness;
};

// Evaluate the tensor on random tuples from the cyclic-shift span.  Every
// bracket (and, over F_p, every p-th power) evaluates to trace zero; a
// nonzero trace certifies non-membership.
inline TraceSampleReport bryant_matrix_test(const TensorPoly& t, int samples,
                                            std::uint64_t seed) {
    int k = t.min_degree();
    if (k <= 0 || !t.is_homogeneous(k))
        throw std::invalid_argument("bryant_matrix_test: tensor must be homogeneous, degree >= 1");
    Rng rng(seed);
    TraceSampleReport rep;
    for (int s = 1; s <= samples; ++s) {
        std::vector<SmallMatrix> c;
        c.reserve(static_cast<std::size_t>(t.rank()));
        for (int i = 0; i < t.rank(); ++i) c.push_back(random_cyclic_shear(rng, k, t.ring()));
        Int tr = evaluate_trace(t, c);
        if (tr != 0) {
            rep.all_traces_zero = false;
            rep.refuting_sample = s;
            std::ostringstream w;
            w << "sample " << s << ": trace " << tr;
            rep.witness = w.str();
            return rep;
        }
    }
    return rep;
}

}  // namespace foxlie
