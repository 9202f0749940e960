#pragma once

#include "foxlie/word.hpp"

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace foxlie {

// Element of the group ring ZF_n or F_pF_n: a finitely supported map from
// reduced words to nonzero coefficients.
class GroupRingElement {
public:
    GroupRingElement() : rank_(0) {}
    GroupRingElement(int rank, Ring ring) : rank_(rank), ring_(ring) {}

    static GroupRingElement zero(int rank, Ring ring = {}) { return GroupRingElement(rank, ring); }

    static GroupRingElement one(int rank, Ring ring = {}) {
        return from_word(Word::identity(rank), ring);
    }

    static GroupRingElement from_word(const Word& w, Ring ring = {}, Int coeff = 1) {
        GroupRingElement e(w.rank(), ring);
        e.add_term(w, coeff);
        return e;
    }

    static GroupRingElement generator(int rank, int i, Ring ring = {}) {
        return from_word(Word::generator(rank, i), ring);
    }

    // Signed integer coefficients times word expressions, +/- separated:
    // "2*x1*x2^-1 - 1".  A term with no word part is a multiple of 1.
    static GroupRingElement parse(std::string_view text, int rank, Ring ring = {});

    int rank() const { return rank_; }
    Ring ring() const { return ring_; }
    const std::map<Word, Int>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    Int coeff(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? Int(0) : it->second;
    }

    void add_term(const Word& w, const Int& c) {
        if (w.rank() != rank_) throw std::invalid_argument("add_term: rank mismatch");
        Int v = ring_.normalize(terms_[w] + c);
        if (v == 0) terms_.erase(w);
        else terms_[w] = v;
    }

    GroupRingElement operator+(const GroupRingElement& o) const {
        check_compatible(o);
        GroupRingElement out = *this;
        for (const auto& [w, c] : o.terms_) out.add_term(w, c);
        return out;
    }

    GroupRingElement operator-(const GroupRingElement& o) const {
        check_compatible(o);
        GroupRingElement out = *this;
        for (const auto& [w, c] : o.terms_) out.add_term(w, -c);
        return out;
    }

    GroupRingElement operator-() const {
        GroupRingElement out(rank_, ring_);
        for (const auto& [w, c] : terms_) out.add_term(w, -c);
        return out;
    }

    GroupRingElement operator*(const GroupRingElement& o) const {
        check_compatible(o);
        GroupRingElement out(rank_, ring_);
        for (const auto& [w1, c1] : terms_)
            for (const auto& [w2, c2] : o.terms_) out.add_term(w1 * w2, c1 * c2);
        return out;
    }

    GroupRingElement scaled(const Int& c) const {
        GroupRingElement out(rank_, ring_);
        for (const auto& [w, v] : terms_) out.add_term(w, v * c);
        return out;
    }

    bool operator==(const GroupRingElement& o) const {
        return rank_ == o.rank_ && ring_ == o.ring_ && terms_ == o.terms_;
    }
    bool operator!=(const GroupRingElement& o) const { return !(*this == o); }

    // Augmentation: sum of coefficients (image of the map words -> 1).
    Int augmentation() const {
        Int s = 0;
        for (const auto& [w, c] : terms_) s += c;
        return ring_.normalize(s);
    }

    // Fox derivative with respect to xi, extended linearly from words via
    // d(uv) = du * aug(v) + u * dv, d(xj) = delta_ij, d(xi^-1) = -xi^-1.
    GroupRingElement fox_derivative(int i) const {
        if (i < 1 || i > rank_) throw std::invalid_argument("fox_derivative: bad index");
        GroupRingElement out(rank_, ring_);
        for (const auto& [w, c] : terms_) {
            std::vector<int> prefix;
            for (int l : w.letters()) {
                if (l == i) out.add_term(Word::from_letters(rank_, prefix), c);
                prefix.push_back(l);
                if (l == -i) out.add_term(Word::from_letters(rank_, prefix), -c);
            }
        }
        return out;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        for (const auto& [w, c] : terms_) {
            Int v = c;
            if (first) {
                if (v < 0) { out << "-"; v = -v; }
            } else {
                out << (v < 0 ? " - " : " + ");
                if (v < 0) v = -v;
            }
            if (w.is_identity()) out << v;
            else {
                if (v != 1) out << v << "*";
                out << w.str();
            }
            first = false;
        }
        return out.str();
    }

private:
    void check_compatible(const GroupRingElement& o) const {
        if (rank_ != o.rank_ || ring_ != o.ring_)
            throw std::invalid_argument("group ring elements not compatible");
    }

    int rank_;
    Ring ring_;
    std::map<Word, Int> terms_;
};

inline GroupRingElement GroupRingElement::parse(std::string_view text, int rank, Ring ring) {
    GroupRingElement out(rank, ring);
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip_ws();
    if (pos == text.size()) throw std::invalid_argument("group ring syntax error: empty input");
    bool first = true;
    while (pos < text.size()) {
        skip_ws();
        Int sign = 1;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            if (text[pos] == '-') sign = -1;
            ++pos;
        } else if (!first) {
            throw std::invalid_argument("group ring syntax error at position " +
                                        std::to_string(pos) + ": expected '+' or '-'");
        }
        skip_ws();
        Int coeff = 1;
        bool saw_coeff = false;
        std::size_t d0 = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos > d0) {
            coeff = Int(std::string(text.substr(d0, pos - d0)));
            saw_coeff = true;
        }
        skip_ws();
        std::size_t w0 = pos;
        int depth = 0;
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '(' || c == '[') ++depth;
            if (c == ')' || c == ']') --depth;
            if (depth == 0 && (c == '+' || c == '-')) {
                // '^-3' keeps its sign attached to the exponent
                if (!(pos > 0 && text[pos - 1] == '^')) break;
            }
            ++pos;
        }
        std::string_view word_part = text.substr(w0, pos - w0);
        bool blank = true;
        for (char c : word_part)
            if (!std::isspace(static_cast<unsigned char>(c)) && c != '*') blank = false;
        Word w = Word::identity(rank);
        if (!blank) {
            try {
                w = Word::parse(word_part, rank);
            } catch (const std::invalid_argument& e) {
                throw std::invalid_argument("group ring term at position " + std::to_string(w0) +
                                            ": " + e.what());
            }
        } else if (!saw_coeff) {
            throw std::invalid_argument("group ring syntax error at position " +
                                        std::to_string(w0) + ": empty term");
        }
        out.add_term(w, sign * coeff);
        first = false;
        skip_ws();
    }
    return out;
}

// Image of an element under an endomorphism of the group, extended linearly.
inline GroupRingElement apply_endomorphism(const Endomorphism& f, const GroupRingElement& e) {
    GroupRingElement out(e.rank(), e.ring());
    for (const auto& [w, c] : e.terms()) out.add_term(f.apply(w), c);
    return out;
}

// Matrix over the group ring; row r of jacobian(f) holds the Fox derivatives
// of f(x_r) with respect to x_1..x_n.
class GroupRingMatrix {
public:
    GroupRingMatrix(int rows, int cols, int rank, Ring ring)
        : rows_(rows), cols_(cols),
          entries_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
                   GroupRingElement::zero(rank, ring)) {}

    static GroupRingMatrix identity(int n, int rank, Ring ring) {
        GroupRingMatrix m(n, n, rank, ring);
        for (int i = 0; i < n; ++i) m.at(i, i) = GroupRingElement::one(rank, ring);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    GroupRingElement& at(int r, int c) {
        return entries_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
                        static_cast<std::size_t>(c)];
    }
    const GroupRingElement& at(int r, int c) const {
        return entries_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
                        static_cast<std::size_t>(c)];
    }

    GroupRingMatrix operator*(const GroupRingMatrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product: shape mismatch");
        GroupRingMatrix out(rows_, o.cols_, entries_[0].rank(), entries_[0].ring());
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < o.cols_; ++c) {
                GroupRingElement s = out.at(r, c);
                for (int k = 0; k < cols_; ++k) s = s + at(r, k) * o.at(k, c);
                out.at(r, c) = s;
            }
        return out;
    }

    GroupRingMatrix operator-(const GroupRingMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix difference: shape mismatch");
        GroupRingMatrix out = *this;
        for (std::size_t i = 0; i < entries_.size(); ++i)
            out.entries_[i] = entries_[i] - o.entries_[i];
        return out;
    }

    bool operator==(const GroupRingMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
    }

    GroupRingElement trace() const {
        if (rows_ != cols_) throw std::invalid_argument("trace: matrix not square");
        GroupRingElement s = GroupRingElement::zero(entries_[0].rank(), entries_[0].ring());
        for (int i = 0; i < rows_; ++i) s = s + at(i, i);
        return s;
    }

private:
    int rows_, cols_;
    std::vector<GroupRingElement> entries_;
};

inline GroupRingMatrix apply_endomorphism(const Endomorphism& f, const GroupRingMatrix& m) {
    GroupRingMatrix out = m;
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) out.at(r, c) = apply_endomorphism(f, m.at(r, c));
    return out;
}

inline GroupRingMatrix jacobian(const Endomorphism& f, Ring ring = {}) {
    int n = f.rank();
    GroupRingMatrix m(n, n, n, ring);
    for (int r = 1; r <= n; ++r) {
        GroupRingElement img = GroupRingElement::from_word(f.image(r), ring);
        for (int c = 1; c <= n; ++c) m.at(r - 1, c - 1) = img.fox_derivative(c);
    }
    return m;
}

struct ChainRuleReport {
    bool ok = true;
    int row = -1, col = -1;
    std::string lhs, rhs;
};

// D(f o g) = f(Dg) * D(f), checked entrywise.
inline ChainRuleReport verify_chain_rule(const Endomorphism& f, const Endomorphism& g,
                                         Ring ring = {}) {
    GroupRingMatrix lhs = jacobian(f.compose(g), ring);
    GroupRingMatrix rhs = apply_endomorphism(f, jacobian(g, ring)) * jacobian(f, ring);
    ChainRuleReport rep;
    for (int r = 0; r < lhs.rows(); ++r)
        for (int c = 0; c < lhs.cols(); ++c)
            if (!(lhs.at(r, c) == rhs.at(r, c))) {
                rep.ok = false;
                rep.row = r + 1;
                rep.col = c + 1;
                rep.lhs = lhs.at(r, c).str();
                rep.rhs = rhs.at(r, c).str();
                return rep;
            }
    return rep;
}

// f(xi) - 1 = sum_j df(xi)/dxj * (xj - 1) for every generator.
inline bool fundamental_formula_holds(const Endomorphism& f, Ring ring = {}) {
    int n = f.rank();
    for (int i = 1; i <= n; ++i) {
        GroupRingElement img = GroupRingElement::from_word(f.image(i), ring);
        GroupRingElement lhs = img - GroupRingElement::one(n, ring);
        GroupRingElement rhs = GroupRingElement::zero(n, ring);
        for (int j = 1; j <= n; ++j) {
            GroupRingElement dj = img.fox_derivative(j);
            rhs = rhs + dj * (GroupRingElement::generator(n, j, ring) -
                              GroupRingElement::one(n, ring));
        }
        if (!(lhs == rhs)) return false;
    }
    return true;
}

}  // namespace foxlie
