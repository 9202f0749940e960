#include "foxlie/suites.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace foxlie;

Ring ring_from_modulus(unsigned mod) { return mod == 0 ? integers() : Ring{mod}; }

int run_fox(int n, const std::string& word_text, const std::string& endo_text, unsigned mod) {
    Ring ring = ring_from_modulus(mod);
    if (!word_text.empty()) {
        Word w = Word::parse(word_text, n);
        std::cout << "w = " << w.str() << "\n";
        GroupRingElement e = GroupRingElement::from_word(w, ring);
        for (int i = 1; i <= n; ++i)
            std::cout << "d/dx" << i << ": " << e.fox_derivative(i).str() << "\n";
        return 0;
    }
    Endomorphism f = Endomorphism::parse(endo_text, n);
    GroupRingMatrix jac = jacobian(f, ring);
    for (int r = 0; r < jac.rows(); ++r) {
        std::cout << "f(x" << (r + 1) << ") = " << f.image(r + 1).str() << "\n";
        for (int c = 0; c < jac.cols(); ++c)
            std::cout << "  d/dx" << (c + 1) << ": " << jac.at(r, c).str() << "\n";
    }
    return 0;
}

int run_johnson(int n, const std::string& endo_text, int depth_max, unsigned p) {
    Endomorphism f = Endomorphism::parse(endo_text, n);
    DepthResult d = p == 0 ? andreadakis_depth(f, depth_max)
                           : andreadakis_p_depth(f, p, depth_max);
    std::cout << "depth: " << d.str() << "\n";
    if (d.at_least) {
        std::cout << "johnson: not defined at this bound (raise --depth-max)\n";
        return 0;
    }
    if (p == 0) {
        Derivation tau = johnson(GradedAutClass(d.depth, f));
        std::cout << "johnson: " << tau.str() << "\n";
    } else {
        RestrictedDerivation tau = johnson_p(PGradedAutClass(p, d.depth, f));
        std::cout << "johnson: " << tau.str() << "\n";
        bool plain = true;
        for (int i = 1; i <= n; ++i) plain = plain && tau.value(i).in_plain_lie_part();
        std::cout << "in-plain-lie-part: " << (plain ? "yes" : "no") << "\n";
    }
    return 0;
}

int run_trace(int n, const std::string& endo_text, int depth_max, unsigned p) {
    Endomorphism f = Endomorphism::parse(endo_text, n);
    DepthResult d = p == 0 ? andreadakis_depth(f, depth_max)
                           : andreadakis_p_depth(f, p, depth_max);
    std::cout << "depth: " << d.str() << "\n";
    if (d.at_least) {
        std::cout << "trace: not defined at this bound (raise --depth-max)\n";
        return 0;
    }
    if (p == 0) {
        GradedAutClass g(d.depth, f);
        CyclicClassVector fox = trace_fox(g);
        CyclicClassVector alg = trace_algebraic(g);
        std::cout << "trace-fox:       " << fox.str() << "\n";
        std::cout << "trace-algebraic: " << alg.str() << "\n";
        std::cout << "pipelines-agree: " << (fox == alg ? "yes" : "no") << "\n";
        return fox == alg ? 0 : 1;
    }
    CyclicClassVector tr = trace_p(PGradedAutClass(p, d.depth, f));
    std::cout << "trace-mod-p: " << tr.str() << "\n";
    return 0;
}

int emit_report(const SuiteReport& rep, const std::string& json_path) {
    std::cout << rep.table();
    if (!json_path.empty()) {
        std::ofstream out(json_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << json_path << "\n";
            return 2;
        }
        out << rep.json_text();
        std::cerr << "report written to " << json_path << "\n";
    }
    if (rep.all_pass()) return 0;
    if (const ClaimResult* f = rep.first_failure())
        std::cerr << "claim failed: " << f->id << ": " << f->witness << "\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Fox calculus, free Lie rings and filtration checks for free groups"};
    app.require_subcommand(1);

    // --- fox ---------------------------------------------------------------
    auto* fox = app.add_subcommand("fox", "Fox derivatives of a word or the Jacobian of an "
                                          "endomorphism");
    int fox_n = 2;
    std::string fox_word, fox_endo;
    unsigned fox_mod = 0;
    fox->add_option("--n", fox_n, "rank of the free group")->required()->check(CLI::Range(1, 6));
    auto* fox_word_opt = fox->add_option("--word", fox_word, "word, e.g. \"x1 x2^-1 [x1,x2]\"");
    auto* fox_endo_opt =
        fox->add_option("--endo", fox_endo, "semicolon-separated images, e.g. \"x2 x1 x2^-1; x2\"");
    fox->add_option("--mod", fox_mod, "reduce coefficients modulo this integer (0 = exact)");
    fox_word_opt->excludes(fox_endo_opt);

    // --- johnson -----------------------------------------------------------
    auto* joh = app.add_subcommand("johnson", "filtration depth and Johnson value of an "
                                              "automorphism");
    int joh_n = 3, joh_depth_max = 6;
    unsigned joh_p = 0;
    std::string joh_endo;
    joh->add_option("--n", joh_n, "rank of the free group")->required()->check(CLI::Range(1, 6));
    joh->add_option("--endo", joh_endo, "semicolon-separated generator images")->required();
    joh->add_option("--depth-max", joh_depth_max, "depth search bound")->check(CLI::Range(1, 10));
    joh->add_option("--p", joh_p, "use the mod-p filtration for this prime");

    // --- trace -------------------------------------------------------------
    auto* tra = app.add_subcommand("trace", "trace of an automorphism class, by both pipelines");
    int tra_n = 3, tra_depth_max = 6;
    unsigned tra_p = 0;
    std::string tra_endo;
    tra->add_option("--n", tra_n, "rank of the free group")->required()->check(CLI::Range(1, 6));
    tra->add_option("--endo", tra_endo, "semicolon-separated generator images")->required();
    tra->add_option("--depth-max", tra_depth_max, "depth search bound")->check(CLI::Range(1, 10));
    tra->add_option("--p", tra_p, "use the mod-p filtration for this prime");

    // --- verify ------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "run a named verification suite");
    verify->require_subcommand(1);
    verify->fallthrough();
    std::uint64_t seed = 7;
    std::string json_path;
    verify->add_option("--seed", seed, "seed for randomized claims")->capture_default_str();
    verify->add_option("--json", json_path, "write the byte-stable JSON report to this path");

    auto* v_chain = verify->add_subcommand("chainrule", "Jacobian chain rule and the fundamental "
                                                        "formula on random endomorphisms");
    v_chain->fallthrough();
    ChainRuleOptions chain_opt;
    v_chain->add_option("--n", chain_opt.n, "rank")->capture_default_str()->check(CLI::Range(1, 6));
    v_chain->add_option("--pairs", chain_opt.pairs, "number of random pairs")
        ->capture_default_str();
    v_chain->add_option("--endos", chain_opt.endos, "number of reconstruction samples")
        ->capture_default_str();
    v_chain->add_option("--max-len", chain_opt.max_len, "maximum image length")
        ->capture_default_str();

    auto* v_dark = verify->add_subcommand("dark", "binomial commutator decompositions in rank 2");
    v_dark->fallthrough();
    DarkOptions dark_opt;
    v_dark->add_option("--variant", dark_opt.variant, "product, commutator or both")
        ->capture_default_str()
        ->check(CLI::IsMember({"product", "commutator", "both"}));
    v_dark->add_option("--alpha-max", dark_opt.alpha_max, "bound on the first exponent")
        ->capture_default_str()
        ->check(CLI::Range(1, 8));
    v_dark->add_option("--beta-max", dark_opt.beta_max, "bound on the second exponent")
        ->capture_default_str()
        ->check(CLI::Range(1, 8));

    auto add_nk = [](CLI::App* cmd, int& n, int& k, bool& long_run) {
        cmd->add_option("--n", n, "rank")->capture_default_str()->check(CLI::Range(3, 6));
        cmd->add_option("--k", k, "degree (2 <= k <= n-2)")
            ->capture_default_str()
            ->check(CLI::Range(2, 4));
        cmd->add_flag("--long-run", long_run,
                      "acknowledge the multi-minute budget needed when k >= 3");
    };
    auto* v_stable = verify->add_subcommand(
        "stable-surjectivity", "bracket span of Johnson images vs the trace kernel");
    v_stable->fallthrough();
    int st_n = 4, st_k = 2;
    bool st_long = false;
    add_nk(v_stable, st_n, st_k, st_long);

    auto* v_satoh =
        verify->add_subcommand("satoh", "surjectivity and kernel of the contraction map");
    v_satoh->fallthrough();
    int sa_n = 4, sa_k = 2;
    bool sa_long = false;
    add_nk(v_satoh, sa_n, sa_k, sa_long);

    auto* v_cong = verify->add_subcommand("congruence", "graded Lie ring of the q-adic congruence "
                                                        "filtration");
    v_cong->fallthrough();
    int cg_n = 5, cg_kmax = 3, cg_samples = 500;
    std::string cg_q = "3";
    v_cong->add_option("--n", cg_n, "matrix size")->capture_default_str()->check(CLI::Range(5, 8));
    v_cong->add_option("--q", cg_q, "congruence modulus (>= 2, arbitrary precision)")
        ->capture_default_str();
    v_cong->add_option("--k-max", cg_kmax, "largest filtration degree")
        ->capture_default_str()
        ->check(CLI::Range(1, 6));
    v_cong->add_option("--samples", cg_samples, "random samples per sampled claim")
        ->capture_default_str();

    auto* v_pconc = verify->add_subcommand(
        "p-concentration", "mod-p filtration invariants and the restricted trace kernel");
    v_pconc->fallthrough();
    PConcentrationOptions pc_opt;
    v_pconc->add_option("--n", pc_opt.n, "rank")->capture_default_str()->check(CLI::Range(3, 6));
    v_pconc->add_option("--p", pc_opt.p, "prime")->capture_default_str();
    v_pconc->add_option("--k-max", pc_opt.k_max, "largest degree (k <= n-2)")
        ->capture_default_str();
    v_pconc->add_option("--samples", pc_opt.samples, "depth-invariant samples")
        ->capture_default_str();

    auto* v_all = verify->add_subcommand("all", "every suite at default parameters");
    v_all->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (fox->parsed()) {
            if (fox_word.empty() == fox_endo.empty())
                throw std::invalid_argument("fox: give exactly one of --word or --endo");
            return run_fox(fox_n, fox_word, fox_endo, fox_mod);
        }
        if (joh->parsed()) return run_johnson(joh_n, joh_endo, joh_depth_max, joh_p);
        if (tra->parsed()) return run_trace(tra_n, tra_endo, tra_depth_max, tra_p);

        SuiteReport rep;
        if (v_chain->parsed()) {
            chain_opt.seed = seed;
            std::cerr << "running chainrule (n=" << chain_opt.n << ", pairs=" << chain_opt.pairs
                      << ", endos=" << chain_opt.endos << ")\n";
            rep = chainrule_suite(chain_opt);
        } else if (v_dark->parsed()) {
            std::cerr << "running dark (variant=" << dark_opt.variant << ")\n";
            rep = dark_suite(dark_opt);
        } else if (v_stable->parsed() || v_satoh->parsed()) {
            bool satoh = v_satoh->parsed();
            int n = satoh ? sa_n : st_n, k = satoh ? sa_k : st_k;
            bool long_run = satoh ? sa_long : st_long;
            if (k >= 3 && !long_run)
                throw std::invalid_argument(
                    "degree k >= 3 can take many minutes; pass --long-run to proceed");
            std::cerr << "running " << (satoh ? "satoh" : "stable-surjectivity") << " (n=" << n
                      << ", k=" << k << ")\n";
            rep = satoh ? satoh_suite(n, k) : stable_surjectivity_suite(n, k);
        } else if (v_cong->parsed()) {
            CongruenceOptions co;
            co.n = cg_n;
            co.q = Int(cg_q);
            co.k_max = cg_kmax;
            co.samples = cg_samples;
            co.seed = seed;
            std::cerr << "running congruence (n=" << co.n << ", q=" << co.q.str() << ")\n";
            rep = congruence_suite(co);
        } else if (v_pconc->parsed()) {
            pc_opt.seed = seed;
            std::cerr << "running p-concentration (n=" << pc_opt.n << ", p=" << pc_opt.p << ")\n";
            rep = p_concentration_suite(pc_opt);
        } else if (v_all->parsed()) {
            std::cerr << "running all suites at default parameters\n";
            rep = all_suites(seed);
        } else {
            std::cerr << "error: unknown command\n";
            return 2;
        }
        return emit_report(rep, json_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
