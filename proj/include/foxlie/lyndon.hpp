#pragma once

#include "foxlie/tensor.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <utility>
#include <vector>

namespace foxlie {

// Lyndon words of length k over {1..n} in lexicographic order (Duval).
inline std::vector<Mono> lyndon_words(int n, int k) {
    std::vector<Mono> out;
    if (k <= 0 || n <= 0) return out;
    Mono w{1};
    while (!w.empty()) {
        if (static_cast<int>(w.size()) == k) out.push_back(w);
        // extend periodically to the maximal length, then increment
        Mono t = w;
        while (static_cast<int>(t.size()) < k) t.push_back(t[t.size() % w.size()]);
        while (!t.empty() && static_cast<int>(t.back()) == n) t.pop_back();
        if (!t.empty()) ++t.back();
        w = t;
    }
    return out;
}

inline bool is_lyndon(const Mono& w) {
    if (w.empty()) return false;
    for (std::size_t s = 1; s < w.size(); ++s) {
        Mono r = rotate(w, s);
        if (!(w < r)) return false;
    }
    return true;
}

// Witt formula: dim of the degree-k part of the free Lie ring on n letters.
inline long long witt_dimension(int n, int k) {
    auto mu = [](int d) {
        int m = 1;
        for (int q = 2; q * q <= d; ++q)
            if (d % q == 0) {
                if (d / q % q == 0) return 0;
                d /= q;
                m = -m;
            }
        if (d > 1) m = -m;
        return m;
    };
    long long total = 0;
    for (int d = 1; d <= k; ++d) {
        if (k % d != 0) continue;
        long long pw = 1;
        for (int j = 0; j < k / d; ++j) pw *= n;
        total += mu(d) * pw;
    }
    return total / k;
}

// Standard factorization of a Lyndon word of length >= 2: w = uv with v the
// longest proper Lyndon suffix; u is then Lyndon as well.
inline std::pair<Mono, Mono> standard_factorization(const Mono& w) {
    if (w.size() < 2) throw std::invalid_argument("standard_factorization: need length >= 2");
    for (std::size_t cut = 1; cut < w.size(); ++cut) {
        Mono v(w.begin() + static_cast<Mono::difference_type>(cut), w.end());
        if (is_lyndon(v))
            return {Mono(w.begin(), w.begin() + static_cast<Mono::difference_type>(cut)), v};
    }
    throw std::invalid_argument("standard_factorization: input is not Lyndon");
}

// Lyndon basis of the degree-k part, with index lookups.  Cached per (n, k).
class LyndonBasis {
public:
    static const LyndonBasis& get(int n, int k) {
        static std::mutex mu;
        static std::map<std::pair<int, int>, std::unique_ptr<LyndonBasis>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto key = std::make_pair(n, k);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, std::unique_ptr<LyndonBasis>(new LyndonBasis(n, k))).first;
        return *it->second;
    }

    int rank() const { return rank_; }
    int degree() const { return degree_; }
    std::size_t size() const { return words_.size(); }
    const std::vector<Mono>& words() const { return words_; }
    const Mono& word(std::size_t i) const { return words_[i]; }

    // Index of a Lyndon word in the basis, or -1.
    long index_of(const Mono& w) const {
        auto it = std::lower_bound(words_.begin(), words_.end(), w);
        if (it == words_.end() || *it != w) return -1;
        return static_cast<long>(it - words_.begin());
    }

    // Bracketed string along the standard factorization: "[X1,[X1,X2]]".
    std::string bracket_str(std::size_t i) const { return bracket_str_of(words_[i]); }

    static std::string bracket_str_of(const Mono& w) {
        if (w.size() == 1) return mono_str(w);
        auto [u, v] = standard_factorization(w);
        return "[" + bracket_str_of(u) + "," + bracket_str_of(v) + "]";
    }

private:
    LyndonBasis(int n, int k) : rank_(n), degree_(k), words_(lyndon_words(n, k)) {}

    int rank_;
    int degree_;
    std::vector<Mono> words_;
};

namespace detail {

inline TensorPoly build_bracket_tensor(int n, const Mono& w) {
    if (w.size() == 1) {
        TensorPoly t(n, 1);
        t.add_term(w, 1);
        return t;
    }
    auto [u, v] = standard_factorization(w);
    int k = static_cast<int>(w.size());
    TensorPoly a = build_bracket_tensor(n, u).truncated(k);
    TensorPoly b = build_bracket_tensor(n, v).truncated(k);
    return a * b - b * a;
}

// Tensor expansion over Z of the standard bracketing of a Lyndon word,
// cached per (rank, word).  The expansion is triangular: the word itself is
// the lexicographically least monomial and carries coefficient 1.
inline const TensorPoly& lyndon_bracket_tensor(int n, const Mono& w) {
    static std::mutex mu;
    static std::map<std::pair<int, Mono>, std::unique_ptr<TensorPoly>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, w);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
    auto ins = cache.emplace(key, std::make_unique<TensorPoly>(build_bracket_tensor(n, w)));
    return *ins.first->second;
}

inline TensorPoly to_ring(const TensorPoly& t, Ring ring) {
    if (t.ring() == ring) return t;
    TensorPoly out(t.rank(), t.trunc(), ring);
    for (const auto& [m, c] : t.terms()) out.add_term(m, c);
    return out;
}

}  // namespace detail

// Element of the degree-k part of the free Lie ring, in coordinates over the
// Lyndon basis.
class LieElement {
public:
    LieElement() : rank_(0), degree_(0) {}
    LieElement(int rank, int degree, Ring ring = {})
        : rank_(rank), degree_(degree), ring_(ring) {}

    static LieElement basis_element(int rank, const Mono& w, Ring ring = {}) {
        const LyndonBasis& basis = LyndonBasis::get(rank, static_cast<int>(w.size()));
        long idx = basis.index_of(w);
        if (idx < 0) throw std::invalid_argument("basis_element: not a Lyndon word");
        LieElement e(rank, static_cast<int>(w.size()), ring);
        e.add(static_cast<std::size_t>(idx), 1);
        return e;
    }

    int rank() const { return rank_; }
    int degree() const { return degree_; }
    Ring ring() const { return ring_; }
    const std::map<std::size_t, Int>& coords() const { return coords_; }
    bool is_zero() const { return coords_.empty(); }

    Int coord(std::size_t i) const {
        auto it = coords_.find(i);
        return it == coords_.end() ? Int(0) : it->second;
    }

    void add(std::size_t i, const Int& c) {
        Int v = ring_.normalize(coords_[i] + c);
        if (v == 0) coords_.erase(i);
        else coords_[i] = v;
    }

    LieElement operator+(const LieElement& o) const {
        check_compatible(o);
        LieElement out = *this;
        for (const auto& [i, c] : o.coords_) out.add(i, c);
        return out;
    }
    LieElement operator-(const LieElement& o) const {
        check_compatible(o);
        LieElement out = *this;
        for (const auto& [i, c] : o.coords_) out.add(i, -c);
        return out;
    }
    LieElement scaled(const Int& c) const {
        LieElement out(rank_, degree_, ring_);
        for (const auto& [i, v] : coords_) out.add(i, v * c);
        return out;
    }

    bool operator==(const LieElement& o) const {
        return rank_ == o.rank_ && degree_ == o.degree_ && ring_ == o.ring_ &&
               coords_ == o.coords_;
    }
    bool operator!=(const LieElement& o) const { return !(*this == o); }

    std::string str() const {
        if (coords_.empty()) return "0";
        const LyndonBasis& basis = LyndonBasis::get(rank_, degree_);
        std::ostringstream out;
        bool first = true;
        for (const auto& [i, c] : coords_) {
            Int v = c;
            if (first) {
                if (v < 0) { out << "-"; v = -v; }
            } else {
                out << (v < 0 ? " - " : " + ");
                if (v < 0) v = -v;
            }
            if (v != 1) out << v << "*";
            out << basis.bracket_str(i);
            first = false;
        }
        return out.str();
    }

private:
    void check_compatible(const LieElement& o) const {
        if (rank_ != o.rank_ || degree_ != o.degree_ || ring_ != o.ring_)
            throw std::invalid_argument("lie elements not compatible");
    }

    int rank_;
    int degree_;
    Ring ring_;
    std::map<std::size_t, Int> coords_;
};

inline TensorPoly lie_embed(const LieElement& e) {
    const LyndonBasis& basis = LyndonBasis::get(e.rank(), e.degree());
    TensorPoly out(e.rank(), e.degree(), e.ring());
    for (const auto& [i, c] : e.coords())
        out = out + detail::to_ring(detail::lyndon_bracket_tensor(e.rank(), basis.word(i)),
                                    e.ring())
                        .scaled(c);
    return out;
}

struct LieDecomposition {
    bool ok = false;
    LieElement value;
    TensorPoly residual;  // what was left when decomposition failed
};

// Exact coordinates of a homogeneous tensor in the Lyndon basis, by
// triangular elimination on least monomials.  Leading coefficients are 1, so
// no division is ever needed and the result is exact over Z and over F_p.
inline LieDecomposition lie_decompose(const TensorPoly& t) {
    LieDecomposition res;
    int k = t.min_degree();
    if (k <= 0) {
        if (t.is_zero()) {
            res.ok = true;
            res.value = LieElement(t.rank(), std::max(1, t.trunc()), t.ring());
            res.residual = t;
        } else {
            res.residual = t;
        }
        return res;
    }
    if (!t.is_homogeneous(k)) {
        res.residual = t;
        return res;
    }
    const LyndonBasis& basis = LyndonBasis::get(t.rank(), k);
    LieElement value(t.rank(), k, t.ring());
    TensorPoly rest = t;
    while (!rest.is_zero()) {
        const auto& [m, c] = *rest.terms().begin();
        long idx = basis.index_of(m);
        if (idx < 0) {
            res.residual = rest;
            return res;  // least monomial is not Lyndon: not a Lie element
        }
        value.add(static_cast<std::size_t>(idx), c);
        rest = rest - detail::to_ring(detail::lyndon_bracket_tensor(t.rank(), m), t.ring())
                          .scaled(c);
    }
    res.ok = true;
    res.value = value;
    res.residual = TensorPoly::zero(t.rank(), k, t.ring());
    return res;
}

// Lie bracket computed through the tensor algebra.
inline LieElement lie_bracket(const LieElement& a, const LieElement& b) {
    int k = a.degree() + b.degree();
    TensorPoly ta = lie_embed(a).truncated(k), tb = lie_embed(b).truncated(k);
    LieDecomposition d = lie_decompose(ta * tb - tb * ta);
    if (!d.ok) throw std::logic_error("lie_bracket: commutator failed to decompose");
    if (d.value.is_zero()) return LieElement(a.rank(), a.degree() + b.degree(), a.ring());
    return d.value;
}

// ---------------------------------------------------------------------------
// Free p-restricted Lie ring on n letters inside the mod-p tensor algebra.
// Degree-k basis: p^e-th powers of Lyndon bracketings b_w with |w| p^e = k,
// listed with e ascending and words in lex order.

struct RestrictedBasisKey {
    int e;        // power exponent
    Mono word;    // Lyndon word of length degree / p^e

    bool operator<(const RestrictedBasisKey& o) const {
        if (e != o.e) return e < o.e;
        return word < o.word;
    }
    bool operator==(const RestrictedBasisKey& o) const { return e == o.e && word == o.word; }
};

class RestrictedBasis {
public:
    static const RestrictedBasis& get(int n, int k, unsigned p) {
        static std::mutex mu;
        static std::map<std::tuple<int, int, unsigned>, std::unique_ptr<RestrictedBasis>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto key = std::make_tuple(n, k, p);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, std::unique_ptr<RestrictedBasis>(new RestrictedBasis(n, k, p)))
                     .first;
        return *it->second;
    }

    int rank() const { return rank_; }
    int degree() const { return degree_; }
    unsigned p() const { return p_; }
    std::size_t size() const { return keys_.size(); }
    const std::vector<RestrictedBasisKey>& keys() const { return keys_; }
    const RestrictedBasisKey& key(std::size_t i) const { return keys_[i]; }

    long index_of(const RestrictedBasisKey& k) const {
        auto it = std::lower_bound(keys_.begin(), keys_.end(), k);
        if (it == keys_.end() || !(*it == k)) return -1;
        return static_cast<long>(it - keys_.begin());
    }

private:
    RestrictedBasis(int n, int k, unsigned p) : rank_(n), degree_(k), p_(p) {
        if (!is_prime(p)) throw std::invalid_argument("restricted basis needs a prime p");
        long long pe = 1;
        for (int e = 0; pe <= k; ++e) {
            if (k % pe == 0)
                for (const Mono& w : lyndon_words(n, static_cast<int>(k / pe)))
                    keys_.push_back({e, w});
            pe *= p;
        }
        std::sort(keys_.begin(), keys_.end());
    }

    int rank_;
    int degree_;
    unsigned p_;
    std::vector<RestrictedBasisKey> keys_;
};

// dim of the degree-k part: sum over p^e | k of the Witt numbers in degree
// k / p^e.
inline long long restricted_dimension(int n, int k, unsigned p) {
    long long total = 0, pe = 1;
    while (pe <= k) {
        if (k % pe == 0) total += witt_dimension(n, static_cast<int>(k / pe));
        pe *= p;
    }
    return total;
}

class RestrictedLieElement {
public:
    RestrictedLieElement() : rank_(0), degree_(0), p_(2) {}
    RestrictedLieElement(int rank, int degree, unsigned p)
        : rank_(rank), degree_(degree), p_(p) {
        if (!is_prime(p)) throw std::invalid_argument("restricted element needs a prime p");
    }

    int rank() const { return rank_; }
    int degree() const { return degree_; }
    unsigned p() const { return p_; }
    Ring ring() const { return Ring{p_}; }
    const std::map<std::size_t, Int>& coords() const { return coords_; }
    bool is_zero() const { return coords_.empty(); }

    Int coord(std::size_t i) const {
        auto it = coords_.find(i);
        return it == coords_.end() ? Int(0) : it->second;
    }

    void add(std::size_t i, const Int& c) {
        Int v = ring().normalize(coords_[i] + c);
        if (v == 0) coords_.erase(i);
        else coords_[i] = v;
    }

    RestrictedLieElement operator+(const RestrictedLieElement& o) const {
        check_compatible(o);
        RestrictedLieElement out = *this;
        for (const auto& [i, c] : o.coords_) out.add(i, c);
        return out;
    }
    RestrictedLieElement operator-(const RestrictedLieElement& o) const {
        check_compatible(o);
        RestrictedLieElement out = *this;
        for (const auto& [i, c] : o.coords_) out.add(i, -c);
        return out;
    }
    RestrictedLieElement scaled(const Int& c) const {
        RestrictedLieElement out(rank_, degree_, p_);
        for (const auto& [i, v] : coords_) out.add(i, v * c);
        return out;
    }

    // True when no pure p-th power basis vector (e >= 1) appears, i.e. the
    // element lies in the image of the plain free Lie ring.
    bool in_plain_lie_part() const {
        const RestrictedBasis& basis = RestrictedBasis::get(rank_, degree_, p_);
        for (const auto& [i, c] : coords_)
            if (basis.key(i).e > 0) return false;
        return true;
    }

    bool operator==(const RestrictedLieElement& o) const {
        return rank_ == o.rank_ && degree_ == o.degree_ && p_ == o.p_ && coords_ == o.coords_;
    }
    bool operator!=(const RestrictedLieElement& o) const { return !(*this == o); }

    std::string str() const {
        if (coords_.empty()) return "0";
        const RestrictedBasis& basis = RestrictedBasis::get(rank_, degree_, p_);
        std::ostringstream out;
        bool first = true;
        for (const auto& [i, c] : coords_) {
            if (!first) out << " + ";
            if (c != 1) out << c << "*";
            const RestrictedBasisKey& k = basis.key(i);
            if (k.e == 0) out << LyndonBasis::bracket_str_of(k.word);
            else {
                long long pe = 1;
                for (int j = 0; j < k.e; ++j) pe *= p_;
                out << "(" << LyndonBasis::bracket_str_of(k.word) << ")^" << pe;
            }
            first = false;
        }
        return out.str();
    }

private:
    void check_compatible(const RestrictedLieElement& o) const {
        if (rank_ != o.rank_ || degree_ != o.degree_ || p_ != o.p_)
            throw std::invalid_argument("restricted lie elements not compatible");
    }

    int rank_;
    int degree_;
    unsigned p_;
    std::map<std::size_t, Int> coords_;
};

inline TensorPoly restricted_embed(const RestrictedLieElement& e) {
    const RestrictedBasis& basis = RestrictedBasis::get(e.rank(), e.degree(), e.p());
    TensorPoly out(e.rank(), e.degree(), e.ring());
    for (const auto& [i, c] : e.coords()) {
        const RestrictedBasisKey& k = basis.key(i);
        TensorPoly b =
            detail::to_ring(detail::lyndon_bracket_tensor(e.rank(), k.word), e.ring())
                .truncated(e.degree());
        long long pe = 1;
        for (int j = 0; j < k.e; ++j) pe *= e.p();
        TensorPoly pw = TensorPoly::unit(e.rank(), e.degree(), e.ring());
        for (long long j = 0; j < pe; ++j) pw = pw * b;
        out = out + pw.scaled(c);
    }
    return out;
}

struct RestrictedDecomposition {
    bool ok = false;
    RestrictedLieElement value;
    TensorPoly residual;
};

// Triangular decomposition in the restricted basis: the least monomial of
// (embed b_w)^{p^e} is w repeated p^e times, with coefficient 1, and Lyndon
// words are primitive, so the basis key is read off the least monomial.
inline RestrictedDecomposition restricted_decompose(const TensorPoly& t) {
    RestrictedDecomposition res;
    if (!t.ring().is_modular() || !is_prime(t.ring().modulus)) {
        res.residual = t;
        return res;
    }
    unsigned p = t.ring().modulus;
    int k = t.min_degree();
    if (k <= 0) {
        res.ok = t.is_zero();
        res.value = RestrictedLieElement(t.rank(), std::max(1, t.trunc()), p);
        res.residual = t;
        return res;
    }
    if (!t.is_homogeneous(k)) {
        res.residual = t;
        return res;
    }
    const RestrictedBasis& basis = RestrictedBasis::get(t.rank(), k, p);
    RestrictedLieElement value(t.rank(), k, p);
    TensorPoly rest = t;
    while (!rest.is_zero()) {
        const auto& [m, c] = *rest.terms().begin();
        std::size_t d = minimal_period(m);
        Mono root(m.begin(), m.begin() + static_cast<Mono::difference_type>(d));
        std::size_t reps = m.size() / d;
        int e = 0;
        std::size_t pe = 1;
        while (pe < reps) { pe *= p; ++e; }
        long idx = -1;
        if (pe == reps && is_lyndon(root)) idx = basis.index_of({e, root});
        if (idx < 0) {
            res.residual = rest;
            return res;
        }
        value.add(static_cast<std::size_t>(idx), c);
        RestrictedLieElement unit(t.rank(), k, p);
        unit.add(static_cast<std::size_t>(idx), c);
        rest = rest - restricted_embed(unit);
    }
    res.ok = true;
    res.value = value;
    res.residual = TensorPoly::zero(t.rank(), k, t.ring());
    return res;
}

// ---------------------------------------------------------------------------
// Derivations of the free Lie ring, graded of degree k: determined by the
// values on the generators, which live in degree k+1.

// Substitute: apply the derivation with the given tensor values of the
// generators to a tensor, by the Leibniz rule over each position.
inline TensorPoly apply_tensor_derivation(const std::vector<TensorPoly>& values,
                                          const TensorPoly& t, int out_trunc) {
    TensorPoly out(t.rank(), out_trunc, t.ring());
    for (const auto& [m, c] : t.terms())
        for (std::size_t pos = 0; pos < m.size(); ++pos) {
            const TensorPoly& v = values[static_cast<std::size_t>(m[pos] - 1)];
            for (const auto& [vm, vc] : v.terms()) {
                Mono nm(m.begin(), m.begin() + static_cast<Mono::difference_type>(pos));
                nm.insert(nm.end(), vm.begin(), vm.end());
                nm.insert(nm.end(), m.begin() + static_cast<Mono::difference_type>(pos) + 1,
                          m.end());
                out.add_term(nm, c * vc);
            }
        }
    return out;
}

class Derivation {
public:
    Derivation() : rank_(0), degree_(0) {}
    Derivation(int rank, int degree, Ring ring = {})
        : rank_(rank), degree_(degree), ring_(ring),
          values_(static_cast<std::size_t>(rank), LieElement(rank, degree + 1, ring)) {}

    Derivation(int degree, std::vector<LieElement> values) : degree_(degree) {
        if (values.empty()) throw std::invalid_argument("derivation needs at least one value");
        rank_ = values[0].rank();
        ring_ = values[0].ring();
        for (const LieElement& v : values)
            if (v.rank() != rank_ || v.degree() != degree + 1 || v.ring() != ring_)
                throw std::invalid_argument("derivation value in wrong component");
        values_ = std::move(values);
    }

    int rank() const { return rank_; }
    int degree() const { return degree_; }
    Ring ring() const { return ring_; }
    const LieElement& value(int i) const { return values_.at(static_cast<std::size_t>(i - 1)); }
    const std::vector<LieElement>& values() const { return values_; }
    void set_value(int i, LieElement v) { values_.at(static_cast<std::size_t>(i - 1)) = std::move(v); }

    bool is_zero() const {
        for (const LieElement& v : values_)
            if (!v.is_zero()) return false;
        return true;
    }

    Derivation operator+(const Derivation& o) const {
        check_compatible(o);
        Derivation out = *this;
        for (int i = 1; i <= rank_; ++i) out.set_value(i, value(i) + o.value(i));
        return out;
    }
    Derivation operator-(const Derivation& o) const {
        check_compatible(o);
        Derivation out = *this;
        for (int i = 1; i <= rank_; ++i) out.set_value(i, value(i) - o.value(i));
        return out;
    }
    Derivation scaled(const Int& c) const {
        Derivation out = *this;
        for (int i = 1; i <= rank_; ++i) out.set_value(i, value(i).scaled(c));
        return out;
    }

    std::vector<TensorPoly> embedded_values() const {
        std::vector<TensorPoly> out;
        out.reserve(values_.size());
        for (const LieElement& v : values_) out.push_back(lie_embed(v));
        return out;
    }

    // Flat coordinates in V* (x) L_{k+1}: generator-major, Lyndon index minor.
    std::vector<Int> coordinates() const {
        const LyndonBasis& basis = LyndonBasis::get(rank_, degree_ + 1);
        std::vector<Int> out(static_cast<std::size_t>(rank_) * basis.size(), Int(0));
        for (int i = 0; i < rank_; ++i)
            for (const auto& [j, c] : values_[static_cast<std::size_t>(i)].coords())
                out[static_cast<std::size_t>(i) * basis.size() + j] = c;
        return out;
    }

    static Derivation from_coordinates(int rank, int degree, const std::vector<Int>& coords,
                                       Ring ring = {}) {
        const LyndonBasis& basis = LyndonBasis::get(rank, degree + 1);
        if (coords.size() != static_cast<std::size_t>(rank) * basis.size())
            throw std::invalid_argument("from_coordinates: wrong length");
        Derivation d(rank, degree, ring);
        for (int i = 0; i < rank; ++i) {
            LieElement v(rank, degree + 1, ring);
            for (std::size_t j = 0; j < basis.size(); ++j) {
                const Int& c = coords[static_cast<std::size_t>(i) * basis.size() + j];
                if (c != 0) v.add(j, c);
            }
            d.values_[static_cast<std::size_t>(i)] = v;
        }
        return d;
    }

    bool operator==(const Derivation& o) const {
        return rank_ == o.rank_ && degree_ == o.degree_ && ring_ == o.ring_ &&
               values_ == o.values_;
    }

    std::string str() const {
        std::ostringstream out;
        bool first = true;
        for (int i = 1; i <= rank_; ++i) {
            if (value(i).is_zero()) continue;
            if (!first) out << " + ";
            out << "X" << i << "* (x) (" << value(i).str() << ")";
            first = false;
        }
        return first ? "0" : out.str();
    }

private:
    void check_compatible(const Derivation& o) const {
        if (rank_ != o.rank_ || degree_ != o.degree_ || ring_ != o.ring_)
            throw std::invalid_argument("derivations not compatible");
    }

    int rank_;
    int degree_;
    Ring ring_;
    std::vector<LieElement> values_;
};

// [d1, d2](X_i) = d1(d2(X_i)) - d2(d1(X_i)), computed through tensors.
inline Derivation derivation_bracket(const Derivation& a, const Derivation& b) {
    if (a.rank() != b.rank() || a.ring() != b.ring())
        throw std::invalid_argument("derivation_bracket: not compatible");
    int n = a.rank();
    int k = a.degree() + b.degree();
    std::vector<TensorPoly> av = a.embedded_values(), bv = b.embedded_values();
    Derivation out(n, k, a.ring());
    for (int i = 1; i <= n; ++i) {
        TensorPoly lhs = apply_tensor_derivation(av, bv[static_cast<std::size_t>(i - 1)], k + 1);
        TensorPoly rhs = apply_tensor_derivation(bv, av[static_cast<std::size_t>(i - 1)], k + 1);
        LieDecomposition d = lie_decompose(lhs - rhs);
        if (!d.ok) throw std::logic_error("derivation_bracket: value failed to decompose");
        if (d.value.degree() != k + 1 && !d.value.is_zero())
            throw std::logic_error("derivation_bracket: wrong degree");
        LieElement v = d.value.is_zero() ? LieElement(n, k + 1, a.ring()) : d.value;
        out.set_value(i, v);
    }
    return out;
}

class RestrictedDerivation {
public:
    RestrictedDerivation() : rank_(0), degree_(0), p_(2) {}
    RestrictedDerivation(int rank, int degree, unsigned p)
        : rank_(rank), degree_(degree), p_(p),
          values_(static_cast<std::size_t>(rank), RestrictedLieElement(rank, degree + 1, p)) {}

    RestrictedDerivation(int degree, std::vector<RestrictedLieElement> values) : degree_(degree) {
        if (values.empty()) throw std::invalid_argument("derivation needs at least one value");
        rank_ = values[0].rank();
        p_ = values[0].p();
        for (const RestrictedLieElement& v : values)
            if (v.rank() != rank_ || v.degree() != degree + 1 || v.p() != p_)
                throw std::invalid_argument("derivation value in wrong component");
        values_ = std::move(values);
    }

    int rank() const { return rank_; }
    int degree() const { return degree_; }
    unsigned p() const { return p_; }
    const RestrictedLieElement& value(int i) const {
        return values_.at(static_cast<std::size_t>(i - 1));
    }
    void set_value(int i, RestrictedLieElement v) {
        values_.at(static_cast<std::size_t>(i - 1)) = std::move(v);
    }

    bool is_zero() const {
        for (const auto& v : values_)
            if (!v.is_zero()) return false;
        return true;
    }

    std::vector<TensorPoly> embedded_values() const {
        std::vector<TensorPoly> out;
        out.reserve(values_.size());
        for (const auto& v : values_) out.push_back(restricted_embed(v));
        return out;
    }

    std::vector<Int> coordinates() const {
        const RestrictedBasis& basis = RestrictedBasis::get(rank_, degree_ + 1, p_);
        std::vector<Int> out(static_cast<std::size_t>(rank_) * basis.size(), Int(0));
        for (int i = 0; i < rank_; ++i)
            for (const auto& [j, c] : values_[static_cast<std::size_t>(i)].coords())
                out[static_cast<std::size_t>(i) * basis.size() + j] = c;
        return out;
    }

    static RestrictedDerivation from_coordinates(int rank, int degree, unsigned p,
                                                 const std::vector<Int>& coords) {
        const RestrictedBasis& basis = RestrictedBasis::get(rank, degree + 1, p);
        if (coords.size() != static_cast<std::size_t>(rank) * basis.size())
            throw std::invalid_argument("from_coordinates: wrong length");
        RestrictedDerivation d(rank, degree, p);
        for (int i = 0; i < rank; ++i) {
            RestrictedLieElement v(rank, degree + 1, p);
            for (std::size_t j = 0; j < basis.size(); ++j) {
                const Int& c = coords[static_cast<std::size_t>(i) * basis.size() + j];
                if (c != 0) v.add(j, c);
            }
            d.values_[static_cast<std::size_t>(i)] = v;
        }
        return d;
    }

    bool operator==(const RestrictedDerivation& o) const {
        return rank_ == o.rank_ && degree_ == o.degree_ && p_ == o.p_ && values_ == o.values_;
    }

    std::string str() const {
        std::ostringstream out;
        bool first = true;
        for (int i = 1; i <= rank_; ++i) {
            if (value(i).is_zero()) continue;
            if (!first) out << " + ";
            out << "X" << i << "* (x) (" << value(i).str() << ")";
            first = false;
        }
        return first ? "0" : out.str();
    }

private:
    int rank_;
    int degree_;
    unsigned p_;
    std::vector<RestrictedLieElement> values_;
};

inline RestrictedDerivation restricted_bracket(const RestrictedDerivation& a,
                                               const RestrictedDerivation& b) {
    if (a.rank() != b.rank() || a.p() != b.p())
        throw std::invalid_argument("restricted_bracket: not compatible");
    int n = a.rank();
    int k = a.degree() + b.degree();
    std::vector<TensorPoly> av = a.embedded_values(), bv = b.embedded_values();
    RestrictedDerivation out(n, k, a.p());
    for (int i = 1; i <= n; ++i) {
        TensorPoly lhs = apply_tensor_derivation(av, bv[static_cast<std::size_t>(i - 1)], k + 1);
        TensorPoly rhs = apply_tensor_derivation(bv, av[static_cast<std::size_t>(i - 1)], k + 1);
        RestrictedDecomposition d = restricted_decompose(lhs - rhs);
        if (!d.ok) throw std::logic_error("restricted_bracket: value failed to decompose");
        RestrictedLieElement v =
            d.value.is_zero() ? RestrictedLieElement(n, k + 1, a.p()) : d.value;
        if (!d.value.is_zero() && d.value.degree() != k + 1)
            throw std::logic_error("restricted_bracket: wrong degree");
        out.set_value(i, v);
    }
    return out;
}

// p-th power in the restricted sense: the p-fold composite of the derivation
// as an operator, which is again a derivation in characteristic p.  The
// value on X_i is d^{p-1} applied to d(X_i).
inline RestrictedDerivation restricted_p_power(const RestrictedDerivation& d) {
    int n = d.rank();
    unsigned p = d.p();
    int k = d.degree() * static_cast<int>(p);
    std::vector<TensorPoly> dv = d.embedded_values();
    RestrictedDerivation out(n, k, p);
    for (int i = 1; i <= n; ++i) {
        TensorPoly v = dv[static_cast<std::size_t>(i - 1)];
        for (unsigned j = 1; j < p; ++j)
            v = apply_tensor_derivation(dv, v, d.degree() * static_cast<int>(j + 1) + 1);
        RestrictedDecomposition dec = restricted_decompose(v);
        if (!dec.ok) throw std::logic_error("restricted_p_power: value failed to decompose");
        RestrictedLieElement val =
            dec.value.is_zero() ? RestrictedLieElement(n, k + 1, p) : dec.value;
        out.set_value(i, val);
    }
    return out;
}

}  // namespace foxlie
