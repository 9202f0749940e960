#pragma once

#include "foxlie/ints.hpp"
#include "foxlie/zlattice.hpp"

#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace foxlie {

inline IntMatrix matrix_mod(const IntMatrix& m, const Int& q) {
    IntMatrix out = m;
    for (int r = 0; r < out.rows(); ++r)
        for (int c = 0; c < out.cols(); ++c) {
            Int v = out.at(r, c) % q;
            if (v < 0) v += q;
            out.at(r, c) = v;
        }
    return out;
}

inline int q_adic_valuation(Int v, const Int& q, int cap) {
    if (v == 0) return cap;
    int k = 0;
    while (k < cap && v % q == 0) {
        v /= q;
        ++k;
    }
    return k;
}

struct CongruenceDepth {
    bool infinite = false;  // the matrix is the identity
    int depth = 0;

    std::string str() const { return infinite ? "inf" : std::to_string(depth); }
};

// Inverse of a unimodular integer matrix: the HNF of such a matrix is the
// identity, so the recorded transform is the inverse.
inline IntMatrix unimodular_inverse(const IntMatrix& m) {
    HnfResult h = hnf(m);
    if (!h.h.is_identity())
        throw std::invalid_argument("unimodular_inverse: matrix is not invertible over Z");
    return h.u;
}

// Integer matrix congruent to the identity modulo q, with exact depth and
// graded-symbol bookkeeping.
class CongruenceMatrix {
public:
    CongruenceMatrix(Int q, IntMatrix m) : q_(std::move(q)), m_(std::move(m)) {
        if (q_ < 2) throw std::invalid_argument("CongruenceMatrix: modulus must be at least 2");
        if (m_.rows() != m_.cols()) throw std::invalid_argument("CongruenceMatrix: not square");
        for (int r = 0; r < m_.rows(); ++r)
            for (int c = 0; c < m_.cols(); ++c)
                if ((m_.at(r, c) - (r == c ? 1 : 0)) % q_ != 0)
                    throw std::invalid_argument("CongruenceMatrix: not congruent to Id");
    }

    static CongruenceMatrix identity(int n, Int q) {
        return CongruenceMatrix(std::move(q), IntMatrix::identity(n));
    }

    // Id + t e_{ab}; requires q | t so the result is a congruence matrix.
    static CongruenceMatrix shear(int n, Int q, int a, int b, const Int& t) {
        if (a == b || a < 1 || b < 1 || a > n || b > n)
            throw std::invalid_argument("shear: need distinct indices in range");
        IntMatrix m = IntMatrix::identity(n);
        m.at(a - 1, b - 1) = t;
        return CongruenceMatrix(std::move(q), std::move(m));
    }

    int size() const { return m_.rows(); }
    const Int& modulus() const { return q_; }
    const IntMatrix& matrix() const { return m_; }
    Int det() const { return determinant(m_); }

    CongruenceMatrix operator*(const CongruenceMatrix& o) const {
        require_same(o);
        return CongruenceMatrix(q_, m_ * o.m_);
    }

    CongruenceMatrix inverse() const { return CongruenceMatrix(q_, unimodular_inverse(m_)); }

    CongruenceMatrix group_commutator(const CongruenceMatrix& o) const {
        require_same(o);
        return *this * o * inverse() * o.inverse();
    }

    // Largest k with M = Id mod q^k, capped; infinite for the identity.
    CongruenceDepth depth(int cap = 64) const {
        CongruenceDepth d;
        int best = cap;
        bool any = false;
        for (int r = 0; r < m_.rows(); ++r)
            for (int c = 0; c < m_.cols(); ++c) {
                Int v = m_.at(r, c) - (r == c ? 1 : 0);
                if (v == 0) continue;
                any = true;
                best = std::min(best, q_adic_valuation(v, q_, cap));
            }
        if (!any) d.infinite = true;
        d.depth = any ? best : cap;
        return d;
    }

    // (M - Id) / q^k mod q; k defaults to the exact depth.
    IntMatrix symbol(int k = -1) const {
        CongruenceDepth d = depth();
        if (k < 0) k = d.depth;
        if (d.infinite) return IntMatrix(m_.rows(), m_.cols());
        if (k > d.depth) throw std::invalid_argument("symbol: requested degree exceeds depth");
        IntMatrix out(m_.rows(), m_.cols());
        Int qk = 1;
        for (int i = 0; i < k; ++i) qk *= q_;
        for (int r = 0; r < m_.rows(); ++r)
            for (int c = 0; c < m_.cols(); ++c)
                out.at(r, c) = (m_.at(r, c) - (r == c ? 1 : 0)) / qk;
        return matrix_mod(out, q_);
    }

private:
    void require_same(const CongruenceMatrix& o) const {
        if (q_ != o.q_ || size() != o.size())
            throw std::invalid_argument("congruence matrices: modulus or size mismatch");
    }

    Int q_;
    IntMatrix m_;
};

// Bracket of symbols in the graded Lie ring: [S,T] = ST - TS mod q.
inline IntMatrix symbol_bracket(const IntMatrix& s, const IntMatrix& t, const Int& q) {
    return matrix_mod(s * t - t * s, q);
}

// Nested commutator expression over shear atoms E(a,b,t); the structural
// depth is the q-valuation of t for atoms and the sum for commutators.
class CommExpr {
public:
    static CommExpr atom(int a, int b, Int t) {
        CommExpr e;
        e.is_atom_ = true;
        e.a_ = a;
        e.b_ = b;
        e.t_ = std::move(t);
        return e;
    }

    static CommExpr comm(CommExpr lhs, CommExpr rhs) {
        CommExpr e;
        e.is_atom_ = false;
        e.lhs_ = std::make_shared<CommExpr>(std::move(lhs));
        e.rhs_ = std::make_shared<CommExpr>(std::move(rhs));
        return e;
    }

    bool is_atom() const { return is_atom_; }

    IntMatrix evaluate(int n) const {
        if (is_atom_) {
            IntMatrix m = IntMatrix::identity(n);
            m.at(a_ - 1, b_ - 1) = t_;
            return m;
        }
        IntMatrix l = lhs_->evaluate(n), r = rhs_->evaluate(n);
        return l * r * unimodular_inverse(l) * unimodular_inverse(r);
    }

    int structural_depth(const Int& q) const {
        if (is_atom_) return q_adic_valuation(t_, q, 64);
        return lhs_->structural_depth(q) + rhs_->structural_depth(q);
    }

    std::string str() const {
        if (is_atom_) {
            std::ostringstream out;
            out << "E(" << a_ << "," << b_ << "," << t_ << ")";
            return out.str();
        }
        return "[" + lhs_->str() + "," + rhs_->str() + "]";
    }

private:
    bool is_atom_ = true;
    int a_ = 0, b_ = 0;
    Int t_;
    std::shared_ptr<CommExpr> lhs_, rhs_;
};

// Commutator word of structural depth k evaluating to Id + t e_{ab},
// built from the exact identity Id + uv e_{ab} = [Id + u e_{ac}, Id + v e_{cb}].
// All leaves are depth-1 shears.
inline CommExpr elementary_witness(int n, const Int& q, int k, int a, int b, const Int& t) {
    if (n < 5) throw std::invalid_argument("elementary_witness: need n >= 5");
    if (a == b || a < 1 || b < 1 || a > n || b > n)
        throw std::invalid_argument("elementary_witness: need distinct indices in range");
    Int qk = 1;
    for (int i = 0; i < k; ++i) qk *= q;
    if (k < 1 || t % qk != 0)
        throw std::invalid_argument("elementary_witness: t must be divisible by q^k");
    if (k == 1) return CommExpr::atom(a, b, t);
    int c = 1;
    while (c == a || c == b) ++c;
    return CommExpr::comm(elementary_witness(n, q, k - 1, a, c, t / q), CommExpr::atom(c, b, q));
}

struct WitnessCheck {
    std::string expr;
    int structural_depth = 0;
    int computed_depth = 0;
    bool product_matches = false;  // evaluation equals Id + t e_{ab}
    bool passed = false;
};

inline WitnessCheck check_elementary_witness(int n, const Int& q, int k, int a, int b,
                                             const Int& t) {
    CommExpr e = elementary_witness(n, q, k, a, b, t);
    WitnessCheck w;
    w.expr = e.str();
    w.structural_depth = e.structural_depth(q);
    IntMatrix expected = IntMatrix::identity(n);
    expected.at(a - 1, b - 1) = t;
    IntMatrix got = e.evaluate(n);
    w.product_matches = got == expected;
    w.computed_depth = CongruenceMatrix(q, got).depth().depth;
    w.passed = w.product_matches && w.structural_depth == k && w.computed_depth >= k;
    return w;
}

// Random product of depth-j shears (and inverses); always determinant 1.
inline CongruenceMatrix random_congruence_element(Rng& rng, int n, const Int& q, int j,
                                                  int length) {
    Int qj = 1;
    for (int i = 0; i < j; ++i) qj *= q;
    CongruenceMatrix m = CongruenceMatrix::identity(n, q);
    for (int s = 0; s < length; ++s) {
        int a = 1 + static_cast<int>(rng.below(static_cast<unsigned long long>(n)));
        int b = 1 + static_cast<int>(rng.below(static_cast<unsigned long long>(n)));
        if (a == b) b = a % n + 1;
        Int coef = Int(rng.range(1, 3)) * qj;
        if (rng.coin()) coef = -coef;
        m = m * CongruenceMatrix::shear(n, q, a, b, coef);
    }
    return m;
}

struct BracketCompatSample {
    int depth_a = 0, depth_b = 0;
    int depth_comm = 0;
    bool depth_additive_ok = false;   // depth([A,B]) >= dA + dB
    bool symbol_matches = false;      // symbol([A,B]) = [sA,sB] when depth lands exactly
    bool congruence_ok = false;       // [A,B]-Id = [A-Id,B-Id] mod q^{dA+dB+1}
    bool exact_depth = false;
};

struct BracketCompatReport {
    int samples = 0;
    int exact_depth_count = 0;
    bool passed = false;
    std::string witness;
};

inline BracketCompatSample bracket_compat_sample(const CongruenceMatrix& a,
                                                 const CongruenceMatrix& b) {
    BracketCompatSample s;
    const Int& q = a.modulus();
    int n = a.size();
    CongruenceDepth da = a.depth(), db = b.depth();
    if (da.infinite || db.infinite) {
        s.depth_additive_ok = s.symbol_matches = s.congruence_ok = true;
        return s;
    }
    s.depth_a = da.depth;
    s.depth_b = db.depth;
    CongruenceMatrix c = a.group_commutator(b);
    CongruenceDepth dc = c.depth();
    int target = da.depth + db.depth;
    s.depth_comm = dc.infinite ? -1 : dc.depth;
    s.depth_additive_ok = dc.infinite || dc.depth >= target;
    s.exact_depth = !dc.infinite && dc.depth == target;
    IntMatrix expected = symbol_bracket(a.symbol(), b.symbol(), q);
    if (s.exact_depth) {
        s.symbol_matches = c.symbol() == expected;
    } else {
        // depth jumped past dA+dB: the bracket of symbols must vanish
        s.symbol_matches = expected == IntMatrix(n, n);
    }
    Int qt = 1;
    for (int i = 0; i < target + 1; ++i) qt *= q;
    IntMatrix lhs = c.matrix() - IntMatrix::identity(n);
    IntMatrix am = a.matrix() - IntMatrix::identity(n);
    IntMatrix bm = b.matrix() - IntMatrix::identity(n);
    IntMatrix rhs = am * bm - bm * am;
    s.congruence_ok = matrix_mod(lhs - rhs, qt) == IntMatrix(n, n);
    return s;
}

inline BracketCompatReport verify_bracket_compat(int n, const Int& q, int samples,
                                                 unsigned long long seed) {
    Rng rng(seed);
    BracketCompatReport rep;
    rep.samples = samples;
    rep.passed = true;
    for (int i = 0; i < samples; ++i) {
        int da = 1 + static_cast<int>(rng.below(2));
        int db = 1 + static_cast<int>(rng.below(2));
        CongruenceMatrix a = random_congruence_element(rng, n, q, da, 3);
        CongruenceMatrix b = random_congruence_element(rng, n, q, db, 3);
        BracketCompatSample s = bracket_compat_sample(a, b);
        if (s.exact_depth) ++rep.exact_depth_count;
        if (!(s.depth_additive_ok && s.symbol_matches && s.congruence_ok)) {
            rep.passed = false;
            rep.witness = "sample " + std::to_string(i);
            break;
        }
    }
    return rep;
}

struct DetTrReport {
    int samples = 0;
    bool passed = false;
    std::string witness;
};

// det(M) = 1 + tr(M - Id) mod q^{2j} for M of depth >= j; determinant-one
// matrices must additionally have traceless symbol when q >= 3.
inline DetTrReport verify_det_tr_square(int n, const Int& q, int j, int samples,
                                        unsigned long long seed) {
    Rng rng(seed);
    DetTrReport rep;
    rep.samples = samples;
    rep.passed = true;
    Int q2j = 1;
    for (int i = 0; i < 2 * j; ++i) q2j *= q;
    for (int i = 0; i < samples; ++i) {
        CongruenceMatrix m = random_congruence_element(rng, n, q, j, 4);
        Int lhs = determinant(m.matrix());
        Int tr = (m.matrix() - IntMatrix::identity(n)).trace();
        Int diff = (lhs - 1 - tr) % q2j;
        bool square_ok = diff == 0;
        bool sl_ok = true;
        if (q >= 3 && lhs == 1 && !m.depth().infinite) {
            Int strace = 0;
            IntMatrix s = m.symbol();
            for (int r = 0; r < n; ++r) strace += s.at(r, r);
            sl_ok = strace % q == 0;
        }
        if (!(square_ok && sl_ok)) {
            rep.passed = false;
            rep.witness = "sample " + std::to_string(i);
            break;
        }
    }
    return rep;
}

// Coordinates of a traceless matrix mod q: off-diagonal entries followed by
// partial diagonal sums against the basis e_{ii} - e_{i+1,i+1}.
inline std::vector<Int> sl_coordinates(const IntMatrix& s, const Int& q) {
    int n = s.rows();
    Int trace = 0;
    for (int i = 0; i < n; ++i) trace += s.at(i, i);
    if (trace % q != 0) throw std::invalid_argument("sl_coordinates: symbol is not traceless");
    std::vector<Int> out;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (r != c) out.push_back(s.at(r, c) % q);
    Int partial = 0;
    for (int i = 0; i + 1 < n; ++i) {
        partial += s.at(i, i);
        out.push_back(partial % q);
    }
    return out;
}

struct LieRingDegreeReport {
    int degree = 0;
    int witness_count = 0;
    bool witnesses_verified = false;  // products and depths check out
    bool spans_sl = false;            // symbols generate all of sl_n(Z/q)
    bool sampled_depths_ok = false;   // random degree-k products have depth >= k
    std::string witness;
};

struct LieRingReport {
    int n = 0;
    Int q = 0;
    int k_max = 0;
    std::vector<LieRingDegreeReport> degrees;
    bool passed = false;
};

// Symbols spanning sl_n(Z/q) in each degree: shear witnesses give the
// off-diagonal part, bracket (or direct nilpotent lifts in degree 1) the
// diagonal differences.  Span is checked integrally against q Z^{n^2-1},
// which stays valid for composite q.
inline LieRingReport verify_lie_ring(int n, const Int& q, int k_max, unsigned long long seed) {
    if (n < 5) throw std::invalid_argument("verify_lie_ring: need n >= 5");
    if (q < 3) throw std::invalid_argument("verify_lie_ring: need q >= 3");
    Rng rng(seed);
    LieRingReport rep;
    rep.n = n;
    rep.q = q;
    rep.k_max = k_max;
    rep.passed = true;
    for (int k = 1; k <= k_max; ++k) {
        LieRingDegreeReport deg;
        deg.degree = k;
        deg.witnesses_verified = true;
        Int qk = 1;
        for (int i = 0; i < k; ++i) qk *= q;
        std::vector<IntMatrix> symbols;
        for (int a = 1; a <= n && deg.witnesses_verified; ++a)
            for (int b = 1; b <= n && deg.witnesses_verified; ++b) {
                if (a == b) continue;
                WitnessCheck w = check_elementary_witness(n, q, k, a, b, qk);
                if (!w.passed) {
                    deg.witnesses_verified = false;
                    deg.witness = "shear witness (" + std::to_string(a) + "," +
                                  std::to_string(b) + ")";
                    break;
                }
                symbols.push_back(
                    CongruenceMatrix(q, elementary_witness(n, q, k, a, b, qk).evaluate(n))
                        .symbol(k));
            }
        for (int al = 2; al <= n && deg.witnesses_verified; ++al) {
            IntMatrix m(n, n);
            if (k == 1) {
                // Id + q(e11 + e_{1a} - e_{a1} - e_{aa}): determinant one, depth 1
                m = IntMatrix::identity(n);
                m.at(0, 0) += q;
                m.at(0, al - 1) += q;
                m.at(al - 1, 0) -= q;
                m.at(al - 1, al - 1) -= q;
            } else {
                CommExpr e = CommExpr::comm(elementary_witness(n, q, k - 1, 1, al, qk / q),
                                            CommExpr::atom(al, 1, q));
                m = e.evaluate(n);
                if (e.structural_depth(q) != k) {
                    deg.witnesses_verified = false;
                    deg.witness = "diagonal witness depth, alpha=" + std::to_string(al);
                    break;
                }
            }
            CongruenceMatrix cm(q, m);
            if (determinant(m) != 1 || cm.depth().depth < k) {
                deg.witnesses_verified = false;
                deg.witness = "diagonal witness, alpha=" + std::to_string(al);
                break;
            }
            symbols.push_back(cm.symbol(k));
        }
        if (deg.witnesses_verified) {
            deg.witness_count = static_cast<int>(symbols.size());
            int dim = n * n - 1;
            HnfLattice lat(dim);
            for (const IntMatrix& s : symbols) lat.insert(sl_coordinates(s, q));
            for (int i = 0; i < dim; ++i) {
                std::vector<Int> unit(static_cast<std::size_t>(dim), Int(0));
                unit[static_cast<std::size_t>(i)] = q;
                lat.insert(unit);
            }
            deg.spans_sl = lat.rank() == dim && lat.canonical_matrix().is_identity();
            deg.sampled_depths_ok = true;
            for (int s = 0; s < 10; ++s) {
                CongruenceMatrix m = random_congruence_element(rng, n, q, k, 4);
                CongruenceDepth d = m.depth();
                if (!d.infinite && d.depth < k) {
                    deg.sampled_depths_ok = false;
                    deg.witness = "sampled product below depth";
                    break;
                }
            }
        }
        bool ok = deg.witnesses_verified && deg.spans_sl && deg.sampled_depths_ok;
        if (!ok) rep.passed = false;
        rep.degrees.push_back(deg);
    }
    return rep;
}

}  // namespace foxlie
