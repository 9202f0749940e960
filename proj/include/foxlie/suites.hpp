#pragma once

#include "foxlie/andreadakis.hpp"
#include "foxlie/congruence.hpp"
#include "foxlie/dark.hpp"
#include "foxlie/p_restricted.hpp"
#include "foxlie/version.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace foxlie {

struct ClaimResult {
    std::string id;         // stable identifier, unique within a suite
    std::string statement;  // the fact being checked
    bool pass = false;
    std::string witness;    // observed values, or failure details
    double seconds = 0.0;   // table output only; kept out of the JSON so
                            // reports stay byte-identical across runs
};

struct ClaimSpec {
    std::string id;
    std::string statement;
    // Returns (pass, witness).  Must be self-contained: any randomness comes
    // from an Rng seeded inside the closure, so results do not depend on the
    // worker count or the dispatch order.
    std::function<std::pair<bool, std::string>()> check;
};

inline int worker_count() {
    if (const char* s = std::getenv("FOXLIE_WORKERS")) {
        int v = std::atoi(s);
        if (v >= 1) return std::min(v, 64);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 16u));
}

// Dispatch the claims to a bounded worker pool and assemble the results in
// claim order.  A throwing check becomes a failed claim, not a crash.
inline std::vector<ClaimResult> run_claims(const std::vector<ClaimSpec>& specs) {
    std::vector<ClaimResult> results(specs.size());
    auto run_one = [&](std::size_t i) {
        ClaimResult& r = results[i];
        r.id = specs[i].id;
        r.statement = specs[i].statement;
        auto start = std::chrono::steady_clock::now();
        try {
            auto [pass, witness] = specs[i].check();
            r.pass = pass;
            r.witness = std::move(witness);
        } catch (const std::exception& e) {
            r.pass = false;
            r.witness = std::string("exception: ") + e.what();
        }
        r.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };
    std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(worker_count()), specs.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < specs.size(); ++i) run_one(i);
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < specs.size();) run_one(i);
        });
    for (auto& t : pool) t.join();
    return results;
}

struct SuiteReport {
    std::string suite;
    std::map<std::string, std::string> parameters;
    std::uint64_t seed = 0;
    std::vector<ClaimResult> claims;
    double total_seconds = 0.0;  // table output only

    bool all_pass() const {
        for (const auto& c : claims)
            if (!c.pass) return false;
        return true;
    }

    const ClaimResult* first_failure() const {
        for (const auto& c : claims)
            if (!c.pass) return &c;
        return nullptr;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["suite"] = suite;
        j["version"] = kVersion;
        j["seed"] = seed;
        nlohmann::json params(nlohmann::json::value_t::object);
        for (const auto& [k, v] : parameters) params[k] = v;
        j["parameters"] = std::move(params);
        j["all_pass"] = all_pass();
        nlohmann::json list(nlohmann::json::value_t::array);
        for (const auto& c : claims) {
            nlohmann::json e;
            e["id"] = c.id;
            e["statement"] = c.statement;
            e["status"] = c.pass ? "pass" : "fail";
            if (!c.witness.empty()) e["witness"] = c.witness;
            list.push_back(std::move(e));
        }
        j["claims"] = std::move(list);
        return j;
    }

    std::string json_text() const { return to_json().dump(2) + "\n"; }

    std::string table() const {
        std::ostringstream out;
        out << "suite " << suite << "  (version " << kVersion << ", seed " << seed << ")\n";
        if (!parameters.empty()) {
            out << "  parameters:";
            for (const auto& [k, v] : parameters) out << ' ' << k << '=' << v;
            out << '\n';
        }
        int passed = 0;
        for (const auto& c : claims) {
            if (c.pass) ++passed;
            out << "  [" << (c.pass ? "pass" : "FAIL") << "] " << std::left << std::setw(44)
                << c.id << std::right << std::fixed << std::setprecision(3) << std::setw(9)
                << c.seconds << "s";
            if (!c.witness.empty()) out << "  " << c.witness;
            out << '\n';
        }
        out << "  " << passed << '/' << claims.size() << " claims passed";
        if (total_seconds > 0.0)
            out << " in " << std::fixed << std::setprecision(3) << total_seconds << "s";
        out << '\n';
        return out.str();
    }
};

namespace detail {

inline std::string pad2(int v) {
    std::string s = std::to_string(v);
    return s.size() < 2 ? "0" + s : s;
}

inline Endomorphism random_endomorphism(Rng& rng, int n, int max_len) {
    std::vector<Word> images;
    images.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) images.push_back(random_word(rng, n, max_len));
    return Endomorphism(std::move(images));
}

template <typename F>
inline double timed(F&& f) {
    auto start = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// chainrule: D(fg) = f(Dg) D(f) and the reconstruction of f from its Jacobian
// on random endomorphisms.
// ---------------------------------------------------------------------------

struct ChainRuleOptions {
    int n = 3;
    int pairs = 200;
    int endos = 100;
    int max_len = 6;
    std::uint64_t seed = 7;
};

inline SuiteReport chainrule_suite(const ChainRuleOptions& opt) {
    if (opt.n < 1 || opt.n > 6)
        throw std::invalid_argument("chainrule: rank n must be between 1 and 6");
    if (opt.pairs < 1 || opt.endos < 0 || opt.max_len < 1)
        throw std::invalid_argument("chainrule: pairs/endos/max-len out of range");
    SuiteReport rep;
    rep.suite = "chainrule";
    rep.seed = opt.seed;
    rep.parameters = {{"endos", std::to_string(opt.endos)},
                      {"max-len", std::to_string(opt.max_len)},
                      {"n", std::to_string(opt.n)},
                      {"pairs", std::to_string(opt.pairs)}};

    std::vector<ClaimSpec> specs;
    const int batch = 25;
    int pair_batches = (opt.pairs + batch - 1) / batch;
    for (int b = 0; b < pair_batches; ++b) {
        int count = std::min(batch, opt.pairs - b * batch);
        specs.push_back(
            {"chain-rule-batch-" + detail::pad2(b + 1),
             "D(fg) = f(Dg) D(f) on " + std::to_string(count) + " random endomorphism pairs",
             [opt, b, count]() -> std::pair<bool, std::string> {
                 Rng rng(opt.seed * 1000003ull + static_cast<std::uint64_t>(b));
                 for (int t = 0; t < count; ++t) {
                     Endomorphism f = detail::random_endomorphism(rng, opt.n, opt.max_len);
                     Endomorphism g = detail::random_endomorphism(rng, opt.n, opt.max_len);
                     ChainRuleReport r = verify_chain_rule(f, g);
                     if (!r.ok)
                         return {false, "pair " + std::to_string(t + 1) + ": entry (" +
                                            std::to_string(r.row) + "," + std::to_string(r.col) +
                                            ") differs for f = " + f.str() + ", g = " + g.str()};
                 }
                 return {true, std::to_string(count) + " pairs agree entrywise"};
             }});
    }
    int endo_batches = (opt.endos + batch - 1) / batch;
    for (int b = 0; b < endo_batches; ++b) {
        int count = std::min(batch, opt.endos - b * batch);
        specs.push_back({"fundamental-formula-batch-" + detail::pad2(b + 1),
                         "w - eps(w) = sum_i dw/dx_i (x_i - 1) recovers f(x_i) for " +
                             std::to_string(count) + " random endomorphisms",
                         [opt, b, count]() -> std::pair<bool, std::string> {
                             Rng rng(opt.seed * 2000003ull + static_cast<std::uint64_t>(b));
                             for (int t = 0; t < count; ++t) {
                                 Endomorphism f =
                                     detail::random_endomorphism(rng, opt.n, opt.max_len);
                                 if (!fundamental_formula_holds(f))
                                     return {false, "endomorphism " + std::to_string(t + 1) +
                                                        ": " + f.str()};
                             }
                             return {true, std::to_string(count) + " endomorphisms verified"};
                         }});
    }
    rep.total_seconds = detail::timed([&] { rep.claims = run_claims(specs); });
    return rep;
}

// ---------------------------------------------------------------------------
// dark: binomial commutator decompositions of x^a y^a and [x^a, y^b] in the
// free group of rank 2, with lower-central depth bounds on each factor.
// ---------------------------------------------------------------------------

struct DarkOptions {
    std::string variant = "both";  // product | commutator | both
    int alpha_max = 4;
    int beta_max = 4;
};

inline SuiteReport dark_suite(const DarkOptions& opt) {
    if (opt.variant != "product" && opt.variant != "commutator" && opt.variant != "both")
        throw std::invalid_argument("dark: variant must be product, commutator or both");
    if (opt.alpha_max < 1 || opt.alpha_max > 8 || opt.beta_max < 1 || opt.beta_max > 8)
        throw std::invalid_argument("dark: exponent bounds must be between 1 and 8");
    SuiteReport rep;
    rep.suite = "dark";
    rep.parameters = {{"alpha-max", std::to_string(opt.alpha_max)},
                      {"beta-max", std::to_string(opt.beta_max)},
                      {"variant", opt.variant}};

    auto summarize = [](const DarkReport& r) -> std::pair<bool, std::string> {
        if (r.ok) return {true, std::to_string(r.checks.size()) + " checks passed"};
        for (const auto& c : r.checks)
            if (!c.ok) return {false, "first failure: " + c.what};
        return {false, "empty report"};
    };

    std::vector<ClaimSpec> specs;
    if (opt.variant != "commutator")
        specs.push_back({"product-decomposition",
                         "x^a y^a = prod theta(r)^C(a,r) with theta(r) of class r, a <= " +
                             std::to_string(opt.alpha_max),
                         [opt, summarize]() {
                             const DarkTable& t =
                                 DarkTable::get(DarkVariant::product, opt.alpha_max);
                             return summarize(verify_dark(t, opt.alpha_max));
                         }});
    if (opt.variant != "product")
        specs.push_back(
            {"commutator-decomposition",
             "[x^a, y^b] = prod theta(r,s)^C(a,r)C(b,s) with theta(r,s) of class r+s, a <= " +
                 std::to_string(opt.alpha_max) + ", b <= " + std::to_string(opt.beta_max),
             [opt, summarize]() {
                 const DarkTable& t = DarkTable::get(DarkVariant::commutator,
                                                     std::max(opt.alpha_max, opt.beta_max));
                 return summarize(verify_dark(t, opt.alpha_max, opt.beta_max));
             }});
    rep.total_seconds = detail::timed([&] { rep.claims = run_claims(specs); });
    return rep;
}

// ---------------------------------------------------------------------------
// stable-surjectivity: in degree k with 2 <= k <= n-2, the bracket span of
// the degree-1 Johnson images equals the kernel of the trace matrix, with a
// free cokernel of necklace rank.
// ---------------------------------------------------------------------------

inline void require_stable_range(int n, int k) {
    if (n < 3 || n > 6) throw std::invalid_argument("rank n must be between 3 and 6");
    if (k < 2 || k > n - 2)
        throw std::invalid_argument("degree k must satisfy 2 <= k <= n-2 (stable range)");
}

inline SuiteReport stable_surjectivity_suite(int n, int k) {
    require_stable_range(n, k);
    SuiteReport rep;
    rep.suite = "stable-surjectivity";
    rep.parameters = {{"k", std::to_string(k)}, {"n", std::to_string(n)}};

    StableSurjReport r;
    double setup = detail::timed([&] { r = verify_stable_surjectivity(n, k); });

    std::vector<ClaimSpec> specs;
    specs.push_back({"johnson-image-equals-trace-kernel",
                     "the degree-" + std::to_string(k) +
                         " bracket span of Johnson images equals ker(trace matrix)",
                     [r]() -> std::pair<bool, std::string> {
                         std::ostringstream w;
                         w << "span rank " << r.frakj_rank << ", kernel rank " << r.ker_trace_rank
                           << " inside derivations of rank " << r.der_dim;
                         if (!r.lattices_equal) w << "; lattices differ: " << r.witness;
                         return {r.lattices_equal, w.str()};
                     }});
    specs.push_back({"cokernel-free-of-necklace-rank",
                     "the quotient of degree-" + std::to_string(k) +
                         " derivations by the Johnson image is free abelian of necklace rank",
                     [r]() -> std::pair<bool, std::string> {
                         std::ostringstream w;
                         w << "quotient " << r.quotient.str() << ", necklace count "
                           << r.expected_corank;
                         return {r.quotient_free && r.corank_matches, w.str()};
                     }});
    rep.claims = run_claims(specs);
    rep.total_seconds = setup;
    return rep;
}

// ---------------------------------------------------------------------------
// satoh: the contraction map is surjective onto the degree-k cyclic classes
// and its kernel lies inside the bracket span of the Johnson images.
// ---------------------------------------------------------------------------

inline SuiteReport satoh_suite(int n, int k) {
    require_stable_range(n, k);
    SuiteReport rep;
    rep.suite = "satoh";
    rep.parameters = {{"k", std::to_string(k)}, {"n", std::to_string(n)}};

    StableSurjReport r;
    double setup = detail::timed([&] { r = verify_stable_surjectivity(n, k); });

    std::vector<ClaimSpec> specs;
    specs.push_back({"contraction-surjective",
                     "the contraction matrix on degree-" + std::to_string(k) +
                         " derivations has Smith divisors all 1",
                     [r]() -> std::pair<bool, std::string> {
                         return {r.contraction_surjective,
                                 r.contraction_surjective ? "all Smith divisors are 1"
                                                          : r.witness};
                     }});
    specs.push_back({"contraction-kernel-in-johnson-image",
                     "ker(contraction) lies inside the bracket span of the Johnson images",
                     [r]() -> std::pair<bool, std::string> {
                         std::ostringstream w;
                         w << "kernel rank " << (r.der_dim - static_cast<int>(r.expected_corank))
                           << " contained in span of rank " << r.frakj_rank;
                         if (!r.contraction_kernel_in_frakj) return {false, r.witness};
                         return {true, w.str()};
                     }});
    rep.claims = run_claims(specs);
    rep.total_seconds = setup;
    return rep;
}

// ---------------------------------------------------------------------------
// congruence: the graded Lie ring of GL_n over the q-adic congruence
// filtration — witness symbols span sl_n(Z/q) in each degree, elementary
// witnesses verify by multiplication, det/tr square, bracket compatibility.
// ---------------------------------------------------------------------------

struct CongruenceOptions {
    int n = 5;
    Int q = 3;
    int k_max = 3;
    int samples = 500;
    std::uint64_t seed = 7;
};

inline SuiteReport congruence_suite(const CongruenceOptions& opt) {
    if (opt.n < 5 || opt.n > 8)
        throw std::invalid_argument("congruence: rank n must be between 5 and 8");
    if (opt.q < 2) throw std::invalid_argument("congruence: modulus q must be at least 2");
    if (opt.k_max < 1 || opt.k_max > 6)
        throw std::invalid_argument("congruence: k-max must be between 1 and 6");
    if (opt.samples < 1) throw std::invalid_argument("congruence: samples must be positive");
    SuiteReport rep;
    rep.suite = "congruence";
    rep.seed = opt.seed;
    rep.parameters = {{"k-max", std::to_string(opt.k_max)},
                      {"n", std::to_string(opt.n)},
                      {"q", opt.q.str()},
                      {"samples", std::to_string(opt.samples)}};

    LieRingReport lie;
    double setup =
        detail::timed([&] { lie = verify_lie_ring(opt.n, opt.q, opt.k_max, opt.seed); });

    std::vector<ClaimSpec> specs;
    for (const auto& deg : lie.degrees) {
        std::string ks = std::to_string(deg.degree);
        specs.push_back({"witness-products-degree-" + ks,
                         "elementary witnesses at depth " + ks +
                             " evaluate to Id + t e_ab and random products respect depth",
                         [deg]() -> std::pair<bool, std::string> {
                             bool ok = deg.witnesses_verified && deg.sampled_depths_ok;
                             std::ostringstream w;
                             w << deg.witness_count << " witnesses";
                             if (!ok) w << "; " << deg.witness;
                             return {ok, w.str()};
                         }});
        specs.push_back({"symbols-span-sl-degree-" + ks,
                         "depth-" + ks + " witness symbols span sl_" + std::to_string(opt.n) +
                             " over Z/" + opt.q.str(),
                         [deg, opt]() -> std::pair<bool, std::string> {
                             long long dim =
                                 static_cast<long long>(opt.n) * opt.n - 1;
                             std::ostringstream w;
                             w << "rank " << dim << " span";
                             if (!deg.spans_sl) return {false, deg.witness};
                             return {true, w.str()};
                         }});
    }
    specs.push_back({"det-tr-square",
                     "det = 1 + tr(M - Id) mod q^2 on depth-1 samples; unit determinant forces "
                     "traceless symbol",
                     [opt]() -> std::pair<bool, std::string> {
                         DetTrReport r =
                             verify_det_tr_square(opt.n, opt.q, 1, opt.samples, opt.seed + 11);
                         if (!r.passed) return {false, r.witness};
                         return {true, std::to_string(r.samples) + " samples"};
                     }});
    specs.push_back({"bracket-compatibility",
                     "symbol of a group commutator matches the matrix bracket of the symbols",
                     [opt]() -> std::pair<bool, std::string> {
                         int count = std::min(opt.samples, 200);
                         BracketCompatReport r =
                             verify_bracket_compat(opt.n, opt.q, count, opt.seed + 13);
                         if (!r.passed) return {false, r.witness};
                         std::ostringstream w;
                         w << r.samples << " samples, " << r.exact_depth_count
                           << " with additive depth";
                         return {true, w.str()};
                     }});
    rep.total_seconds = setup + detail::timed([&] { rep.claims = run_claims(specs); });
    return rep;
}

// ---------------------------------------------------------------------------
// p-concentration: mod-p filtration invariants, tame-range equality of the
// restricted bracket span with the mod-p trace kernel, bounded gaps at the
// concentrated degrees, and non-tame certificates.
// ---------------------------------------------------------------------------

struct PConcentrationOptions {
    int n = 4;
    unsigned p = 3;
    int k_max = 2;
    int samples = 100;
    std::uint64_t seed = 7;
};

inline SuiteReport p_concentration_suite(const PConcentrationOptions& opt) {
    if (opt.n < 3 || opt.n > 6)
        throw std::invalid_argument("p-concentration: rank n must be between 3 and 6");
    if (!is_prime(opt.p)) throw std::invalid_argument("p-concentration: p must be prime");
    if (opt.k_max < 2 || opt.k_max > opt.n - 2)
        throw std::invalid_argument(
            "p-concentration: k-max must satisfy 2 <= k <= n-2 (stable range)");
    if (opt.samples < 1)
        throw std::invalid_argument("p-concentration: samples must be positive");
    SuiteReport rep;
    rep.suite = "p-concentration";
    rep.seed = opt.seed;
    rep.parameters = {{"k-max", std::to_string(opt.k_max)},
                      {"n", std::to_string(opt.n)},
                      {"p", std::to_string(opt.p)},
                      {"samples", std::to_string(opt.samples)}};

    PConcentrationReport conc;
    double setup = detail::timed([&] { conc = verify_p_concentration(opt.n, opt.p, opt.k_max); });

    std::vector<ClaimSpec> specs;
    const int batch = 25;
    int batches = (opt.samples + batch - 1) / batch;
    for (int b = 0; b < batches; ++b) {
        int count = std::min(batch, opt.samples - b * batch);
        specs.push_back(
            {"depth-invariants-batch-" + detail::pad2(b + 1),
             "mod-p depths: commutators add depths, p-th powers multiply depth by p (" +
                 std::to_string(count) + " samples)",
             [opt, b, count]() -> std::pair<bool, std::string> {
                 Rng rng(opt.seed * 3000017ull + static_cast<std::uint64_t>(b));
                 auto gens = ia_generators(opt.n);
                 const int d_max = 4;
                 // Certify depth >= bound as far as the measurement bound can
                 // see: exact values up to d_max, the at_least flag past it.
                 auto meets = [](const DepthResult& d, int bound) {
                     if (bound <= d_max) return d.depth >= bound;
                     return d.depth >= d_max && d.at_least;
                 };
                 for (int t = 0; t < count; ++t) {
                     IaLetters wf = random_ia_letters(rng, gens.size(), 3);
                     IaLetters wg = random_ia_letters(rng, gens.size(), 3);
                     Endomorphism f = ia_compose(gens, wf, opt.n);
                     Endomorphism g = ia_compose(gens, wg, opt.n);
                     DepthResult df = andreadakis_p_depth(f, opt.p, d_max);
                     DepthResult dg = andreadakis_p_depth(g, opt.p, d_max);
                     Endomorphism comm = ia_compose(gens, ia_commutator(wf, wg), opt.n);
                     DepthResult dc = andreadakis_p_depth(comm, opt.p, d_max);
                     if (!meets(dc, df.depth + dg.depth))
                         return {false, "commutator depth " + std::to_string(dc.depth) +
                                            " < " + std::to_string(df.depth + dg.depth) +
                                            " for sample " + std::to_string(t + 1)};
                     // p-th powers on a conjugated generator: words stay short
                     // under iterated composition, so the depth bound p * depth
                     // is still checked by a full Magnus computation.
                     int a = 1 + static_cast<int>(rng.below(gens.size()));
                     int b = 1 + static_cast<int>(rng.below(gens.size()));
                     Endomorphism h =
                         ia_compose(gens, {a, rng.coin() ? b : -b, -a}, opt.n);
                     DepthResult dh = andreadakis_p_depth(h, opt.p, d_max);
                     Endomorphism hp = h.power(static_cast<int>(opt.p));
                     DepthResult dp = andreadakis_p_depth(hp, opt.p, d_max);
                     if (!meets(dp, static_cast<int>(opt.p) * dh.depth))
                         return {false, "p-th power depth " + std::to_string(dp.depth) + " < " +
                                            std::to_string(static_cast<int>(opt.p) * dh.depth) +
                                            " for sample " + std::to_string(t + 1)};
                 }
                 return {true, std::to_string(count) + " samples verified"};
             }});
    }
    specs.push_back(
        {"nontame-certificate-generator",
         "x1 -> x2^p x1 sits at mod-p depth exactly p-1 with Johnson value X2^p",
         [opt]() -> std::pair<bool, std::string> {
             NontameReport r = nontame_witness(Word::generator(opt.n, 2), opt.p);
             std::ostringstream w;
             w << "depth " << r.computed_depth << ", value " << r.johnson_value;
             return {r.passed, w.str()};
         }});
    if (opt.p <= 3)
        specs.push_back(
            {"nontame-certificate-commutator",
             "x1 -> [x2,x3]^p x1 sits at mod-p depth exactly 2p-1 with Johnson value [X2,X3]^p",
             [opt]() -> std::pair<bool, std::string> {
                 Word w23 = Word::commutator(Word::generator(opt.n, 2), Word::generator(opt.n, 3));
                 NontameReport r = nontame_witness(w23, opt.p);
                 std::ostringstream w;
                 w << "depth " << r.computed_depth << ", value " << r.johnson_value;
                 return {r.passed, w.str()};
             }});
    for (const auto& deg : conc.degrees) {
        std::string ks = std::to_string(deg.degree);
        specs.push_back(
            {"trace-kernel-degree-" + ks,
             deg.concentrated
                 ? "restricted bracket span sits inside ker(mod-p trace) with gap within bound"
                 : "restricted bracket span equals ker(mod-p trace)",
             [deg]() -> std::pair<bool, std::string> {
                 std::ostringstream w;
                 w << "span dim " << deg.frakj_dim << ", kernel dim " << deg.ker_dim;
                 if (deg.concentrated) w << ", gap " << deg.gap << " <= bound " << deg.gap_bound;
                 if (!deg.ok) return {false, deg.witness};
                 return {true, w.str()};
             }});
    }
    for (int k = 2; k <= std::min(opt.k_max + 1, 3); ++k)
        specs.push_back(
            {"mod-p-series-product-formula-degree-" + std::to_string(k),
             "p^j-th powers of weight-i basis commutators with i p^j >= k generate the degree-" +
                 std::to_string(k) + " layer of the mod-p series",
             [opt, k]() -> std::pair<bool, std::string> {
                 GammaPReport r = verify_gamma_p_product_formula(
                     opt.n, opt.p, k, std::min(opt.samples, 40), opt.seed + 17);
                 std::ostringstream w;
                 w << "leading rank " << r.leading_rank << " of " << r.expected_rank;
                 if (!r.passed) return {false, r.witness.empty() ? w.str() : r.witness};
                 return {true, w.str()};
             }});
    rep.total_seconds = setup + detail::timed([&] { rep.claims = run_claims(specs); });
    return rep;
}

// ---------------------------------------------------------------------------
// all: one combined report over every suite at default parameters.
// ---------------------------------------------------------------------------

inline SuiteReport all_suites(std::uint64_t seed) {
    SuiteReport rep;
    rep.suite = "all";
    rep.seed = seed;
    auto merge = [&rep](const SuiteReport& s) {
        for (const auto& [k, v] : s.parameters) rep.parameters[s.suite + "." + k] = v;
        for (const auto& c : s.claims) {
            ClaimResult r = c;
            r.id = s.suite + "/" + c.id;
            rep.claims.push_back(std::move(r));
        }
        rep.total_seconds += s.total_seconds;
    };
    ChainRuleOptions cr;
    cr.n = 3;
    cr.pairs = 50;
    cr.endos = 25;
    cr.seed = seed;
    merge(chainrule_suite(cr));
    merge(dark_suite(DarkOptions{}));
    merge(stable_surjectivity_suite(4, 2));
    merge(satoh_suite(4, 2));
    CongruenceOptions co;
    co.samples = 200;
    co.seed = seed;
    merge(congruence_suite(co));
    PConcentrationOptions pc;
    pc.samples = 25;
    pc.seed = seed;
    merge(p_concentration_suite(pc));
    return rep;
}

}  // namespace foxlie
