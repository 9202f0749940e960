#pragma once

#include "foxlie/group_ring.hpp"
#include "foxlie/lyndon.hpp"
#include "foxlie/zlattice.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace foxlie {

// Generator of the group of automorphisms acting trivially on the
// abelianization, together with its inverse and a printable name.
struct IaGenerator {
    std::string name;
    Endomorphism endo;
    Endomorphism inverse;
};

// The K_{ij} (x_i -> x_j x_i x_j^-1, i != j) followed by the
// K_{ijk} (x_i -> [x_j,x_k] x_i, j < k, j,k != i).
inline std::vector<IaGenerator> ia_generators(int n) {
    if (n < 2) throw std::invalid_argument("ia_generators: rank must be at least 2");
    std::vector<IaGenerator> out;
    auto name = [](const char* base, std::initializer_list<int> idx) {
        std::ostringstream s;
        s << base;
        for (int i : idx) s << i;
        return s.str();
    };
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i == j) continue;
            std::vector<Word> fwd, inv;
            for (int t = 1; t <= n; ++t) {
                Word xt = Word::generator(n, t);
                if (t != i) {
                    fwd.push_back(xt);
                    inv.push_back(xt);
                } else {
                    Word xj = Word::generator(n, j);
                    fwd.push_back(xj * xt * xj.inverse());
                    inv.push_back(xj.inverse() * xt * xj);
                }
            }
            out.push_back({name("K", {i, j}), Endomorphism(fwd), Endomorphism(inv)});
        }
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k) {
                if (j == i || k == i) continue;
                std::vector<Word> fwd, inv;
                for (int t = 1; t <= n; ++t) {
                    Word xt = Word::generator(n, t);
                    if (t != i) {
                        fwd.push_back(xt);
                        inv.push_back(xt);
                    } else {
                        Word c = Word::commutator(Word::generator(n, j), Word::generator(n, k));
                        fwd.push_back(c * xt);
                        inv.push_back(c.inverse() * xt);
                    }
                }
                out.push_back({name("K", {i, j, k}), Endomorphism(fwd), Endomorphism(inv)});
            }
    return out;
}

inline Endomorphism permutation_endomorphism(int n, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != n)
        throw std::invalid_argument("permutation_endomorphism: wrong length");
    std::vector<Word> images;
    for (int i = 0; i < n; ++i) images.push_back(Word::generator(n, perm[static_cast<std::size_t>(i)]));
    return Endomorphism(images);
}

// Words in the generators and their inverses, kept symbolic so that exact
// group inverses and commutators stay available.
using IaLetters = std::vector<int>;  // 1-based generator indices, sign = inversion

inline IaLetters ia_inverse(const IaLetters& w) {
    IaLetters out(w.rbegin(), w.rend());
    for (int& l : out) l = -l;
    return out;
}

inline IaLetters ia_concat(const IaLetters& a, const IaLetters& b) {
    IaLetters out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

inline IaLetters ia_commutator(const IaLetters& a, const IaLetters& b) {
    return ia_concat(ia_concat(a, b), ia_concat(ia_inverse(a), ia_inverse(b)));
}

inline Endomorphism ia_compose(const std::vector<IaGenerator>& gens, const IaLetters& w, int n) {
    Endomorphism out = Endomorphism::identity(n);
    for (int l : w) {
        const IaGenerator& g = gens[static_cast<std::size_t>(std::abs(l) - 1)];
        out = out.compose(l > 0 ? g.endo : g.inverse);
    }
    return out;
}

inline IaLetters random_ia_letters(Rng& rng, std::size_t gen_count, int length) {
    IaLetters out;
    for (int i = 0; i < length; ++i) {
        int idx = 1 + static_cast<int>(rng.below(static_cast<unsigned long long>(gen_count)));
        out.push_back(rng.coin() ? idx : -idx);
    }
    return out;
}

// Invertibility on every nilpotent quotient is decided on the
// abelianization: the induced integer matrix must have determinant +-1.
inline bool is_automorphism_mod_gamma(const Endomorphism& f) {
    auto ab = f.abelianization();
    int n = f.rank();
    IntMatrix m(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            m.at(r, c) = ab[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    Int d = determinant(m);
    return d == 1 || d == -1;
}

struct DepthResult {
    int depth = 0;        // largest k with every x_i^-1 f(x_i) of valuation >= k+1
    bool at_least = false;  // true when the bound d_max was hit
    int witness = 0;      // generator index with the minimal valuation (0 if at_least)

    std::string str() const {
        std::ostringstream out;
        if (at_least) out << ">= " << depth;
        else out << depth;
        return out.str();
    }
};

inline Word twisted_image(const Endomorphism& f, int i) {
    return Word::generator(f.rank(), i).inverse() * f.image(i);
}

// Depth of f in the filtration by action on the lower central quotients,
// measured through the Magnus valuation of x_i^-1 f(x_i) - 1.
inline DepthResult andreadakis_depth(const Endomorphism& f, int d_max, Ring ring = {}) {
    if (d_max < 1) throw std::invalid_argument("andreadakis_depth: bound must be positive");
    int min_val = d_max + 2;  // sentinel for "beyond the bound everywhere"
    int witness = 0;
    for (int i = 1; i <= f.rank(); ++i) {
        Word w = twisted_image(f, i);
        if (w.is_identity()) continue;
        Valuation v = word_degree(w, d_max + 1, ring);
        int val = v.kind == Valuation::exact ? v.value : d_max + 2;
        if (val < min_val) {
            min_val = val;
            witness = i;
        }
    }
    DepthResult res;
    if (min_val >= d_max + 1) {
        res.depth = d_max;
        res.at_least = min_val > d_max + 1;
        res.witness = res.at_least ? 0 : witness;
    } else {
        res.depth = min_val - 1;
        res.at_least = false;
        res.witness = witness;
    }
    return res;
}

// An endomorphism together with the depth it is considered at; the class it
// represents lives in the k-th graded piece of the filtration.
struct GradedAutClass {
    int rank = 0;
    int depth = 0;
    Endomorphism phi;

    GradedAutClass(int k, Endomorphism f) : rank(f.rank()), depth(k), phi(std::move(f)) {
        if (k < 1) throw std::invalid_argument("GradedAutClass: depth must be positive");
    }
};

inline GradedAutClass make_graded_class(const Endomorphism& f, int k, Ring ring = {}) {
    if (!is_automorphism_mod_gamma(f))
        throw std::invalid_argument("make_graded_class: not invertible on the abelianization");
    DepthResult d = andreadakis_depth(f, k, ring);
    if (d.depth < k)
        throw std::invalid_argument("make_graded_class: depth " + d.str() +
                                    " below requested " + std::to_string(k));
    return GradedAutClass(k, f);
}

// Value on X_i is the leading Magnus term of x_i^-1 phi(x_i), decomposed in
// the free Lie ring; the result is a degree-k derivation.
inline Derivation johnson(const GradedAutClass& g, Ring ring = {}) {
    int n = g.rank, k = g.depth;
    std::vector<LieElement> values;
    for (int i = 1; i <= n; ++i) {
        Word w = twisted_image(g.phi, i);
        TensorPoly t = magnus(w, k + 1, ring).graded_component(k + 1);
        LieDecomposition d = lie_decompose(t);
        if (!d.ok)
            throw std::invalid_argument(
                "johnson: leading term is not a Lie element (depth overstated?)");
        LieElement v = d.value.is_zero() ? LieElement(n, k + 1, ring) : d.value;
        values.push_back(v);
    }
    return Derivation(k, values);
}

// Trace through Fox derivatives: the cyclic class of the degree-k part of
// sum_i d(x_i^-1 phi(x_i))/dx_i.
inline CyclicClassVector trace_fox(const GradedAutClass& g, Ring ring = {}) {
    int n = g.rank, k = g.depth;
    TensorPoly total = TensorPoly::zero(n, k, ring);
    for (int i = 1; i <= n; ++i) {
        GroupRingElement e = GroupRingElement::from_word(twisted_image(g.phi, i), ring);
        GroupRingElement d = e.fox_derivative(i);
        total = total + magnus(d, k);
    }
    return cyclic_project(total.graded_component(k));
}

inline TensorPoly contracted_tensor(const Derivation& d) {
    int n = d.rank(), k = d.degree();
    TensorPoly total = TensorPoly::zero(n, k, d.ring());
    for (int i = 1; i <= n; ++i) total = total + contract(i, lie_embed(d.value(i)));
    return total;
}

// The same trace computed on the Lie side: contract each X_i*-component of
// the embedded Johnson value and project cyclically.
inline CyclicClassVector trace_algebraic(const GradedAutClass& g, Ring ring = {}) {
    Derivation tau = johnson(g, ring);
    return cyclic_project(contracted_tensor(tau));
}

// Matrix of the trace map Der_k -> C_k V: rows indexed by the derivation
// basis (generator-major over Lyndon words of degree k+1), columns by
// necklace representatives of degree k.
inline IntMatrix trace_matrix(int n, int k, Ring ring = {}) {
    const LyndonBasis& basis = LyndonBasis::get(n, k + 1);
    std::vector<Mono> necklaces = necklace_basis(n, k);
    std::map<Mono, int, MonoLess> col_of;
    for (std::size_t c = 0; c < necklaces.size(); ++c)
        col_of[necklaces[c]] = static_cast<int>(c);
    IntMatrix m(n * static_cast<int>(basis.size()), static_cast<int>(necklaces.size()));
    for (int i = 1; i <= n; ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) {
            TensorPoly t = contract(i, detail::to_ring(detail::lyndon_bracket_tensor(n, basis.words()[j]), ring));
            CyclicClassVector cls = cyclic_project(t);
            int row = (i - 1) * static_cast<int>(basis.size()) + static_cast<int>(j);
            for (const auto& [cl, c] : cls.classes()) m.at(row, col_of.at(cl)) = c;
        }
    return m;
}

// Matrix of the contraction Der_k -> V^{x k} (no cyclic identification);
// columns indexed by all rank-n degree-k monomials in lexicographic order.
inline IntMatrix contraction_matrix(int n, int k, Ring ring = {}) {
    const LyndonBasis& basis = LyndonBasis::get(n, k + 1);
    auto mono_index = [&](const Mono& m) {
        long long idx = 0;
        for (unsigned char l : m) idx = idx * n + (l - 1);
        return static_cast<int>(idx);
    };
    long long cols = 1;
    for (int t = 0; t < k; ++t) cols *= n;
    IntMatrix m(n * static_cast<int>(basis.size()), static_cast<int>(cols));
    for (int i = 1; i <= n; ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) {
            TensorPoly t = contract(i, detail::to_ring(detail::lyndon_bracket_tensor(n, basis.words()[j]), ring));
            int row = (i - 1) * static_cast<int>(basis.size()) + static_cast<int>(j);
            for (const auto& [mono, c] : t.terms()) m.at(row, mono_index(mono)) = c;
        }
    return m;
}

// The degree-1 derivations attached to the IA generators.
inline std::vector<Derivation> johnson_generators(int n, Ring ring = {}) {
    std::vector<Derivation> out;
    for (const IaGenerator& g : ia_generators(n))
        out.push_back(johnson(GradedAutClass(1, g.endo), ring));
    return out;
}

struct JLattice {
    int rank = 0;
    int degree = 0;
    IntMatrix rows;  // canonical HNF basis in derivation coordinates
};

// Lattice spanned by all iterated brackets of the degree-1 generator
// derivations, in degree k.  Left-normed brackets suffice by the Jacobi
// identity; each level is reduced to a Hermite basis before bracketing on.
inline JLattice frakJ_lattice(int n, int k, Ring ring = {}) {
    if (n < 2 || k < 1) throw std::invalid_argument("frakJ_lattice: need n >= 2, k >= 1");
    std::vector<Derivation> gens = johnson_generators(n, ring);
    auto span_of = [](const std::vector<Derivation>& ds, int width) {
        HnfLattice lat(width);
        for (const Derivation& d : ds) lat.insert(d.coordinates());
        return lat;
    };
    int width1 = static_cast<int>(gens[0].coordinates().size());
    HnfLattice lat = span_of(gens, width1);
    std::vector<Derivation> level;
    for (const auto& row : lat.dense_rows())
        level.push_back(Derivation::from_coordinates(n, 1, row, ring));
    for (int deg = 2; deg <= k; ++deg) {
        std::vector<Derivation> next;
        for (const Derivation& b : level)
            for (const Derivation& g : gens) next.push_back(derivation_bracket(b, g));
        int width = static_cast<int>(next[0].coordinates().size());
        lat = span_of(next, width);
        level.clear();
        for (const auto& row : lat.dense_rows())
            level.push_back(Derivation::from_coordinates(n, deg, row, ring));
    }
    JLattice j;
    j.rank = n;
    j.degree = k;
    j.rows = lat.canonical_matrix();
    return j;
}

// Saturated kernel of the trace map in derivation coordinates.
inline IntMatrix ker_trace_lattice(int n, int k) {
    return kernel_lattice(trace_matrix(n, k));
}

struct StableSurjReport {
    int rank = 0;
    int degree = 0;
    int der_dim = 0;
    int frakj_rank = 0;
    int ker_trace_rank = 0;
    bool lattices_equal = false;
    QuotientStructure quotient;          // Der_k / frakJ_k
    bool quotient_free = false;
    long long expected_corank = 0;       // necklace count
    bool corank_matches = false;
    bool contraction_surjective = false; // SNF of the contraction matrix all 1s
    bool contraction_kernel_in_frakj = false;
    bool passed = false;
    std::string witness;
};

// Checks that the bracket-generated lattice equals the trace kernel, that
// the quotient of Der_k by it is free of necklace rank, and that the
// contraction map is onto with kernel inside the lattice.
inline StableSurjReport verify_stable_surjectivity(int n, int k) {
    if (k < 2 || k > n - 2)
        throw std::invalid_argument("verify_stable_surjectivity: need 2 <= k <= n-2");
    StableSurjReport rep;
    rep.rank = n;
    rep.degree = k;
    rep.der_dim = n * static_cast<int>(witt_dimension(n, k + 1));
    JLattice j = frakJ_lattice(n, k);
    rep.frakj_rank = j.rows.rows();
    IntMatrix ker = ker_trace_lattice(n, k);
    rep.ker_trace_rank = ker.rows();
    HnfLattice jl = lattice_from_rows(j.rows);
    rep.lattices_equal = jl.canonical_matrix() == lattice_from_rows(ker).canonical_matrix();
    if (!rep.lattices_equal) {
        for (int r = 0; r < ker.rows(); ++r)
            if (!jl.contains(ker.row(r))) {
                rep.witness = "trace-kernel row " + std::to_string(r) + " outside bracket lattice";
                break;
            }
        if (rep.witness.empty())
            rep.witness = "bracket lattice strictly inside trace kernel";
    }
    rep.quotient = quotient_structure(rep.der_dim, j.rows);
    rep.quotient_free = rep.quotient.is_free();
    rep.expected_corank = static_cast<long long>(necklace_count(n, k));
    rep.corank_matches = rep.quotient.free_rank == rep.expected_corank;
    IntMatrix phi = contraction_matrix(n, k);
    std::vector<Int> div = snf_divisors(phi);
    rep.contraction_surjective = static_cast<int>(div.size()) == phi.cols();
    for (const Int& d : div)
        if (d != 1) rep.contraction_surjective = false;
    IntMatrix phi_ker = kernel_lattice(phi);
    rep.contraction_kernel_in_frakj = true;
    for (int r = 0; r < phi_ker.rows(); ++r)
        if (!jl.contains(phi_ker.row(r))) {
            rep.contraction_kernel_in_frakj = false;
            if (rep.witness.empty())
                rep.witness = "contraction-kernel row " + std::to_string(r) + " outside bracket lattice";
            break;
        }
    rep.passed = rep.lattices_equal && rep.quotient_free && rep.corank_matches &&
                 rep.contraction_surjective && rep.contraction_kernel_in_frakj;
    return rep;
}

}  // namespace foxlie
