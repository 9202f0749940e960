#pragma once

#include "foxlie/tensor.hpp"
#include "foxlie/word.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <utility>
#include <vector>

namespace foxlie {

enum class DarkVariant { product, commutator };

// Exponent tables for binomial commutator decompositions in F_2 = <x, y>:
//
//   product:     x^a y^a  = prod_{r>=0}       theta(r)^C(a,r)
//   commutator:  [x^a,y^b] = prod_{r,s>=1} theta(r,s)^C(a,r)C(b,s)
//
// with factors ordered by increasing index (lexicographically for pairs).
// Each theta is solved for by induction: the identity at index (a[,b]) has
// theta(a[,b]) as its only new unknown, with exponent 1.  The content of the
// decomposition is the depth of the entries: theta(r) lies in the r-th
// lower-central-series term, theta(r,s) in the (r+s)-th.
class DarkTable {
public:
    // Tables are cached per (variant, r_max) and safe to share across
    // threads once built.
    static const DarkTable& get(DarkVariant variant, int r_max) {
        static std::mutex mu;
        static std::map<std::pair<int, int>, std::unique_ptr<DarkTable>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto key = std::make_pair(static_cast<int>(variant), r_max);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, std::unique_ptr<DarkTable>(new DarkTable(variant, r_max)))
                     .first;
        return *it->second;
    }

    DarkVariant variant() const { return variant_; }
    int r_max() const { return r_max_; }

    const Word& theta(int r) const {
        require(variant_ == DarkVariant::product, "theta(r) needs the product variant");
        require(r >= 0 && r <= r_max_, "theta index out of range");
        return product_[static_cast<std::size_t>(r)];
    }

    const Word& theta(int r, int s) const {
        require(variant_ == DarkVariant::commutator, "theta(r,s) needs the commutator variant");
        require(r >= 1 && r <= r_max_ && s >= 1 && s <= r_max_, "theta index out of range");
        return commutator_[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(s - 1)];
    }

    // Right-hand side of the defining identity at the given exponents,
    // rebuilt from the table entries.
    Word product_side(int a) const {
        Word acc = Word::identity(2);
        for (int r = 0; r <= std::min(a, r_max_); ++r)
            acc = acc * theta(r).pow(binomial(a, r));
        return acc;
    }

    Word commutator_side(int a, int b) const {
        Word acc = Word::identity(2);
        for (int r = 1; r <= std::min(a, r_max_); ++r)
            for (int s = 1; s <= std::min(b, r_max_); ++s)
                acc = acc * theta(r, s).pow(binomial(a, r) * binomial(b, s));
        return acc;
    }

private:
    DarkTable(DarkVariant variant, int r_max) : variant_(variant), r_max_(r_max) {
        require(r_max >= 1, "table bound must be positive");
        Word x = Word::generator(2, 1), y = Word::generator(2, 2);
        if (variant == DarkVariant::product) {
            product_.push_back(Word::identity(2));  // theta(0)
            for (int a = 1; a <= r_max; ++a) {
                Word lhs = x.pow(a) * y.pow(a);
                Word partial = Word::identity(2);
                for (int r = 0; r < a; ++r)
                    partial = partial * product_[static_cast<std::size_t>(r)].pow(binomial(a, r));
                product_.push_back(partial.inverse() * lhs);
            }
        } else {
            commutator_.assign(static_cast<std::size_t>(r_max),
                               std::vector<Word>(static_cast<std::size_t>(r_max)));
            for (int a = 1; a <= r_max; ++a)
                for (int b = 1; b <= r_max; ++b) {
                    Word lhs = Word::commutator(x.pow(a), y.pow(b));
                    Word partial = Word::identity(2);
                    for (int r = 1; r <= a; ++r)
                        for (int s = 1; s <= b; ++s) {
                            if (r == a && s == b) continue;
                            partial = partial *
                                      commutator_[static_cast<std::size_t>(r - 1)]
                                                 [static_cast<std::size_t>(s - 1)]
                                                     .pow(binomial(a, r) * binomial(b, s));
                        }
                    commutator_[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)] =
                        partial.inverse() * lhs;
                }
        }
    }

    static void require(bool cond, const char* msg) {
        if (!cond) throw std::invalid_argument(msg);
    }

    DarkVariant variant_;
    int r_max_;
    std::vector<Word> product_;                // theta(0..r_max)
    std::vector<std::vector<Word>> commutator_;  // theta(r,s), 1-based
};

struct DarkCheck {
    std::string what;
    bool ok;
};

struct DarkReport {
    bool ok = true;
    std::vector<DarkCheck> checks;

    void add(std::string what, bool pass) {
        ok = ok && pass;
        checks.push_back({std::move(what), pass});
    }
};

// Recheck the defining identities by exact word reduction for all exponents
// up to the table bounds, and the depth claims through the Magnus valuation.
inline DarkReport verify_dark(const DarkTable& table, int a_max, int b_max = 0) {
    DarkReport rep;
    Word x = Word::generator(2, 1), y = Word::generator(2, 2);
    if (table.variant() == DarkVariant::product) {
        for (int a = 0; a <= a_max; ++a) {
            bool pass = x.pow(a) * y.pow(a) == table.product_side(a);
            rep.add("x^a y^a identity at a=" + std::to_string(a), pass);
        }
        for (int r = 2; r <= table.r_max(); ++r) {
            Valuation v = word_degree(table.theta(r), r - 1);
            rep.add("theta(" + std::to_string(r) + ") in LCS term " + std::to_string(r),
                    v.at_least(r));
        }
    } else {
        for (int a = 1; a <= a_max; ++a)
            for (int b = 1; b <= b_max; ++b) {
                bool pass = Word::commutator(x.pow(a), y.pow(b)) == table.commutator_side(a, b);
                rep.add("[x^a,y^b] identity at a=" + std::to_string(a) +
                            ", b=" + std::to_string(b),
                        pass);
            }
        for (int r = 1; r <= std::min(a_max, table.r_max()); ++r)
            for (int s = 1; s <= std::min(b_max, table.r_max()); ++s) {
                Valuation v = word_degree(table.theta(r, s), r + s - 1);
                rep.add("theta(" + std::to_string(r) + "," + std::to_string(s) +
                            ") in LCS term " + std::to_string(r + s),
                        v.at_least(r + s));
            }
    }
    return rep;
}

}  // namespace foxlie
