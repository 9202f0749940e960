#pragma once

#include "foxlie/andreadakis.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace foxlie {

// F_p-Magnus valuation of w - 1: the depth of w in the mod-p lower central
// series (dimension series over F_p).
inline Valuation gamma_p_degree(const Word& w, unsigned p, int d_max) {
    if (!is_prime(p)) throw std::invalid_argument("gamma_p_degree: p must be prime");
    return word_degree(w, d_max, mod_p(p));
}

// Word-level left bracketing of a Lyndon word via its standard
// factorization; the Magnus leading term is the Lyndon basis element.
inline Word lyndon_bracket_word(int n, const Mono& w) {
    if (w.size() == 1) return Word::generator(n, w[0]);
    auto [u, v] = standard_factorization(w);
    return Word::commutator(lyndon_bracket_word(n, u), lyndon_bracket_word(n, v));
}

struct GammaPReport {
    int samples = 0;
    bool sampled_degrees_ok = false;  // right-hand-side products reach depth k
    int leading_rank = 0;             // rank of systematic degree-k leading terms
    long long expected_rank = 0;      // dim of the free p-restricted Lie ring part
    bool rank_matches = false;
    bool passed = false;
    std::string witness;
};

// The product formula for the mod-p series: products of p^j-th powers of
// weight-i commutators with i p^j >= k land in depth >= k, and the leading
// terms of the systematic generators span a space of dimension
// dim L^[p]_k.
inline GammaPReport verify_gamma_p_product_formula(int n, unsigned p, int k, int samples,
                                                   unsigned long long seed) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (k < 1 || n < 2) throw std::invalid_argument("need n >= 2, k >= 1");
    Rng rng(seed);
    GammaPReport rep;
    rep.samples = samples;
    rep.sampled_degrees_ok = true;
    Ring ring = mod_p(p);
    auto rand_gen = [&] {
        int g = 1 + static_cast<int>(rng.below(static_cast<unsigned long long>(n)));
        return Word::generator(n, g, rng.coin() ? 1 : -1);
    };
    for (int s = 0; s < samples; ++s) {
        Word prod = Word::identity(n);
        int factors = 1 + static_cast<int>(rng.below(3));
        for (int f = 0; f < factors; ++f) {
            // choose i, j with i p^j >= k
            int i = 1 + static_cast<int>(rng.below(static_cast<unsigned long long>(k)));
            long long pj = 1;
            while (i * pj < k) pj *= p;
            Word c = rand_gen();
            for (int d = 1; d < i; ++d) c = Word::commutator(c, rand_gen());
            prod = prod * c.pow(pj);
        }
        Valuation v = gamma_p_degree(prod, p, k);
        if (!v.at_least(k)) {
            rep.sampled_degrees_ok = false;
            rep.witness = "sample " + std::to_string(s) + ": " + prod.str();
            break;
        }
    }
    const RestrictedBasis& basis = RestrictedBasis::get(n, k, p);
    rep.expected_rank = static_cast<long long>(basis.size());
    long long cols = 1;
    for (int t = 0; t < k; ++t) cols *= n;
    FpSpan span(p, static_cast<int>(cols));
    auto mono_index = [&](const Mono& m) {
        long long idx = 0;
        for (unsigned char l : m) idx = idx * n + (l - 1);
        return static_cast<std::size_t>(idx);
    };
    for (const RestrictedBasisKey& key : basis.keys()) {
        Word w = lyndon_bracket_word(n, key.word);
        long long pe = 1;
        for (int t = 0; t < key.e; ++t) pe *= p;
        Word wp = w.pow(pe);
        TensorPoly lead = magnus(wp, k, ring).graded_component(k);
        std::vector<unsigned> v(static_cast<std::size_t>(cols), 0);
        for (const auto& [m, c] : lead.terms())
            v[mono_index(m)] = static_cast<unsigned>(c % p);
        span.insert(std::move(v));
    }
    rep.leading_rank = span.rank();
    rep.rank_matches = rep.leading_rank == rep.expected_rank;
    rep.passed = rep.sampled_degrees_ok && rep.rank_matches;
    return rep;
}

inline bool is_ia_mod_p(const Endomorphism& f, unsigned p) {
    auto ab = f.abelianization();
    int n = f.rank();
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            long long want = r == c ? 1 : 0;
            if ((ab[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] - want) %
                    static_cast<long long>(p) !=
                0)
                return false;
        }
    return true;
}

inline DepthResult andreadakis_p_depth(const Endomorphism& f, unsigned p, int d_max) {
    if (!is_prime(p)) throw std::invalid_argument("andreadakis_p_depth: p must be prime");
    return andreadakis_depth(f, d_max, mod_p(p));
}

struct PGradedAutClass {
    unsigned p = 2;
    int rank = 0;
    int depth = 0;
    Endomorphism phi;

    PGradedAutClass(unsigned prime, int k, Endomorphism f)
        : p(prime), rank(f.rank()), depth(k), phi(std::move(f)) {
        if (k < 1) throw std::invalid_argument("PGradedAutClass: depth must be positive");
        if (!is_prime(prime)) throw std::invalid_argument("PGradedAutClass: p must be prime");
    }
};

// Mod-p Johnson value: the degree-(k+1) component of x_i^-1 phi(x_i) in the
// free p-restricted Lie ring.
inline RestrictedDerivation johnson_p(const PGradedAutClass& g) {
    int n = g.rank, k = g.depth;
    Ring ring = mod_p(g.p);
    std::vector<RestrictedLieElement> values;
    for (int i = 1; i <= n; ++i) {
        Word w = twisted_image(g.phi, i);
        TensorPoly t = magnus(w, k + 1, ring).graded_component(k + 1);
        RestrictedDecomposition d = restricted_decompose(t);
        if (!d.ok)
            throw std::invalid_argument("johnson_p: leading term outside the restricted Lie ring");
        RestrictedLieElement v =
            d.value.is_zero() ? RestrictedLieElement(n, k + 1, g.p) : d.value;
        values.push_back(v);
    }
    return RestrictedDerivation(k, values);
}

// Mod-p trace through Fox derivatives, landing in the quotient of cyclic
// classes by p-th powers.
inline CyclicClassVector trace_p(const PGradedAutClass& g) {
    int n = g.rank, k = g.depth;
    Ring ring = mod_p(g.p);
    TensorPoly total = TensorPoly::zero(n, k, ring);
    for (int i = 1; i <= n; ++i) {
        GroupRingElement e = GroupRingElement::from_word(twisted_image(g.phi, i), ring);
        total = total + magnus(e.fox_derivative(i), k);
    }
    return cyclic_project(total.graded_component(k), true);
}

struct NontameReport {
    unsigned p = 2;
    int base_degree = 0;      // Gamma-degree of the chosen word
    int expected_depth = 0;   // p * base_degree - 1
    int computed_depth = 0;
    bool depth_matches = false;
    bool value_outside_plain_lie = false;  // Johnson value has a p-power coordinate
    bool passed = false;
    Endomorphism phi;
    std::string johnson_value;
};

// The automorphism x_1 -> w^p x_1 for w avoiding x_1: it sits at depth
// exactly p k - 1, and its mod-p Johnson value on X_1 is the p-th power
// (w-bar - 1)^p, which lies outside the plain free Lie ring.
inline NontameReport nontame_witness(const Word& w, unsigned p) {
    if (!is_prime(p)) throw std::invalid_argument("nontame_witness: p must be prime");
    int n = w.rank();
    for (int l : w.letters())
        if (l == 1 || l == -1)
            throw std::invalid_argument("nontame_witness: word must avoid x1");
    NontameReport rep;
    rep.p = p;
    Valuation deg = word_degree(w, 8);
    if (deg.kind != Valuation::exact)
        throw std::invalid_argument("nontame_witness: word degree out of supported range");
    int k = deg.value;
    rep.base_degree = k;
    rep.expected_depth = static_cast<int>(p) * k - 1;
    std::vector<Word> images;
    images.push_back(w.pow(p) * Word::generator(n, 1));
    for (int i = 2; i <= n; ++i) images.push_back(Word::generator(n, i));
    rep.phi = Endomorphism(images);
    DepthResult d = andreadakis_p_depth(rep.phi, p, rep.expected_depth + 1);
    rep.computed_depth = d.depth;
    rep.depth_matches = !d.at_least && d.depth == rep.expected_depth;
    PGradedAutClass cls(p, rep.expected_depth, rep.phi);
    RestrictedDerivation tau = johnson_p(cls);
    rep.johnson_value = tau.str();
    rep.value_outside_plain_lie =
        !tau.value(1).is_zero() && !tau.value(1).in_plain_lie_part();
    rep.passed = rep.depth_matches && rep.value_outside_plain_lie;
    return rep;
}

// The degree-1 mod-p Johnson values of the IA generators.
inline std::vector<RestrictedDerivation> johnson_p_generators(int n, unsigned p) {
    std::vector<RestrictedDerivation> out;
    for (const IaGenerator& g : ia_generators(n))
        out.push_back(johnson_p(PGradedAutClass(p, 1, g.endo)));
    return out;
}

namespace detail {

inline std::vector<unsigned> fp_coords(const RestrictedDerivation& d) {
    std::vector<Int> c = d.coordinates();
    std::vector<unsigned> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        Int v = c[i] % d.p();
        if (v < 0) v += d.p();
        out[i] = static_cast<unsigned>(v);
    }
    return out;
}

}  // namespace detail

// Basis (as reduced-echelon derivations) of the restricted subalgebra
// generated in degree 1, computed degree by degree: brackets of lower parts
// plus p-th powers of the degree-(k/p) basis.
inline std::vector<std::vector<RestrictedDerivation>> frakJp_filtration(int n, unsigned p,
                                                                        int k_max) {
    std::vector<std::vector<RestrictedDerivation>> parts;  // parts[k-1] = basis of degree k
    std::vector<RestrictedDerivation> gens = johnson_p_generators(n, p);
    auto reduce_to_basis = [&](const std::vector<RestrictedDerivation>& rows, int degree) {
        if (rows.empty()) return std::vector<RestrictedDerivation>{};
        FpSpan span(p, static_cast<int>(detail::fp_coords(rows[0]).size()));
        for (const auto& r : rows) span.insert(detail::fp_coords(r));
        std::vector<RestrictedDerivation> basis;
        for (const auto& v : span.basis()) {
            std::vector<Int> coords(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) coords[i] = v[i];
            basis.push_back(RestrictedDerivation::from_coordinates(n, degree, p, coords));
        }
        return basis;
    };
    parts.push_back(reduce_to_basis(gens, 1));
    for (int k = 2; k <= k_max; ++k) {
        std::vector<RestrictedDerivation> rows;
        for (int a = 1; a <= k / 2; ++a) {
            int b = k - a;
            for (const auto& da : parts[static_cast<std::size_t>(a - 1)])
                for (const auto& db : parts[static_cast<std::size_t>(b - 1)])
                    rows.push_back(restricted_bracket(da, db));
        }
        if (k % static_cast<int>(p) == 0)
            for (const auto& d : parts[static_cast<std::size_t>(k / static_cast<int>(p) - 1)])
                rows.push_back(restricted_p_power(d));
        parts.push_back(reduce_to_basis(rows, k));
    }
    return parts;
}

// Matrix of the mod-p trace map on restricted derivations of degree k:
// rows over the basis (X_i*, restricted key), columns over the p-reduced
// necklace classes.
inline FpMat trace_p_matrix(int n, int k, unsigned p) {
    const RestrictedBasis& basis = RestrictedBasis::get(n, k + 1, p);
    Ring ring = mod_p(p);
    std::vector<Mono> necklaces = necklace_basis(n, k, true, p);
    std::map<Mono, int, MonoLess> col_of;
    for (std::size_t c = 0; c < necklaces.size(); ++c)
        col_of[necklaces[c]] = static_cast<int>(c);
    FpMat m(p, n * static_cast<int>(basis.size()), static_cast<int>(necklaces.size()));
    for (std::size_t j = 0; j < basis.size(); ++j) {
        RestrictedLieElement e(n, k + 1, p);
        e.add(j, 1);
        TensorPoly emb = restricted_embed(e);
        for (int i = 1; i <= n; ++i) {
            CyclicClassVector cls = cyclic_project(contract(i, emb), true);
            int row = (i - 1) * static_cast<int>(basis.size()) + static_cast<int>(j);
            for (const auto& [cl, c] : cls.classes())
                m.at(row, col_of.at(cl)) = static_cast<unsigned>(c);
        }
    }
    return m;
}

struct PConcentrationDegree {
    int degree = 0;
    int frakj_dim = 0;
    int ker_dim = 0;
    bool concentrated = false;   // degree of the form pl-1 or pl
    int gap = 0;
    long long gap_bound = -1;    // -1 when equality is required instead
    bool frakj_in_kernel = false;
    bool ok = false;
    std::string witness;
};

struct PConcentrationReport {
    int n = 0;
    unsigned p = 2;
    int k_max = 0;
    std::vector<PConcentrationDegree> degrees;
    bool passed = false;
};

// Compares the degree-1-generated restricted subalgebra with the kernel of
// the mod-p trace in each degree 2..k_max: equality away from pl-1 and pl,
// bounded gaps at those concentrated degrees.
inline PConcentrationReport verify_p_concentration(int n, unsigned p, int k_max) {
    if (!is_prime(p)) throw std::invalid_argument("verify_p_concentration: p must be prime");
    PConcentrationReport rep;
    rep.n = n;
    rep.p = p;
    rep.k_max = k_max;
    rep.passed = true;
    std::vector<std::vector<RestrictedDerivation>> parts = frakJp_filtration(n, p, k_max);
    for (int k = 2; k <= k_max; ++k) {
        PConcentrationDegree deg;
        deg.degree = k;
        deg.frakj_dim = static_cast<int>(parts[static_cast<std::size_t>(k - 1)].size());
        FpMat tm = trace_p_matrix(n, k, p);
        deg.ker_dim = tm.rows() - tm.rank();
        deg.frakj_in_kernel = true;
        for (const auto& d : parts[static_cast<std::size_t>(k - 1)]) {
            std::vector<unsigned> coords = detail::fp_coords(d);
            for (int c = 0; c < tm.cols(); ++c) {
                unsigned long long acc = 0;
                for (int r = 0; r < tm.rows(); ++r)
                    acc += static_cast<unsigned long long>(coords[static_cast<std::size_t>(r)]) *
                           tm.at(r, c);
                if (acc % p != 0) {
                    deg.frakj_in_kernel = false;
                    deg.witness = "trace does not vanish on a bracket generator";
                    break;
                }
            }
            if (!deg.frakj_in_kernel) break;
        }
        int pi = static_cast<int>(p);
        bool is_plm1 = (k + 1) % pi == 0;
        bool is_pl = k % pi == 0;
        deg.concentrated = is_plm1 || is_pl;
        deg.gap = deg.ker_dim - deg.frakj_dim;
        if (!deg.concentrated) {
            deg.ok = deg.frakj_in_kernel && deg.gap == 0;
            if (!deg.ok && deg.witness.empty())
                deg.witness = "expected equality away from concentrated degrees";
        } else {
            if (is_plm1) {
                long long diff = restricted_dimension(n, k + 1, p) - witt_dimension(n, k + 1);
                deg.gap_bound = static_cast<long long>(n) * diff;
            } else {
                long long bound = 1;
                for (int t = 0; t < k / pi; ++t) bound *= n;
                deg.gap_bound = bound;
            }
            deg.ok = deg.frakj_in_kernel && deg.gap >= 0 && deg.gap <= deg.gap_bound;
            if (!deg.ok && deg.witness.empty()) deg.witness = "gap outside the stated bound";
        }
        if (!deg.ok) rep.passed = false;
        rep.degrees.push_back(deg);
    }
    return rep;
}

}  // namespace foxlie
