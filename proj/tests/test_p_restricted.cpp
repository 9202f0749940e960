#include "foxlie/p_restricted.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace foxlie;

TEST_CASE("mod-p word degrees see p-th powers") {
    Word x1 = Word::generator(2, 1);
    Valuation v = gamma_p_degree(x1 * x1, 2, 8);
    CHECK(v.kind == Valuation::exact);
    CHECK(v.value == 2);

    Valuation v3 = gamma_p_degree(x1.pow(3), 3, 8);
    CHECK(v3.kind == Valuation::exact);
    CHECK(v3.value == 3);

    Valuation v2 = gamma_p_degree(x1.pow(3), 2, 8);
    CHECK(v2.kind == Valuation::exact);
    CHECK(v2.value == 1);

    CHECK_THROWS_AS(gamma_p_degree(x1, 4, 8), std::invalid_argument);
}

TEST_CASE("word-level bracketing of lyndon words") {
    CHECK(lyndon_bracket_word(2, Mono{1}).str() == "x1");
    CHECK(lyndon_bracket_word(2, Mono{1, 2}).str() == "x1 x2 x1^-1 x2^-1");
    Word w = lyndon_bracket_word(2, Mono{1, 1, 2});
    CHECK(w == Word::commutator(Word::generator(2, 1),
                                Word::commutator(Word::generator(2, 1), Word::generator(2, 2))));
}

TEST_CASE("product formula for the mod-p series") {
    GammaPReport rep = verify_gamma_p_product_formula(2, 2, 4, 30, 7);
    CHECK(rep.sampled_degrees_ok);
    CHECK(rep.leading_rank == 6);
    CHECK(rep.expected_rank == 6);
    CHECK(rep.rank_matches);
    CHECK(rep.passed);

    GammaPReport rep3 = verify_gamma_p_product_formula(3, 3, 3, 30, 7);
    CHECK(rep3.leading_rank == 11);
    CHECK(rep3.expected_rank == 11);
    CHECK(rep3.passed);
}

TEST_CASE("mod-p abelianization membership") {
    Endomorphism f = Endomorphism::parse("x1^4; x2", 2);
    CHECK(is_ia_mod_p(f, 3));
    CHECK_FALSE(is_ia_mod_p(f, 2));
    CHECK(andreadakis_p_depth(f, 3, 4).str() == "2");
    CHECK_THROWS_AS(andreadakis_p_depth(f, 6, 4), std::invalid_argument);
}

TEST_CASE("mod-p johnson values reduce the integral ones") {
    auto gens = ia_generators(3);
    for (const auto& g : gens) {
        Derivation tau = johnson(GradedAutClass(1, g.endo));
        RestrictedDerivation taup = johnson_p(PGradedAutClass(3, 1, g.endo));
        std::vector<Int> zc = tau.coordinates();
        std::vector<unsigned> pc = detail::fp_coords(taup);
        REQUIRE(zc.size() == pc.size());
        for (std::size_t i = 0; i < zc.size(); ++i) {
            Int want = zc[i] % 3;
            if (want < 0) want += 3;
            CHECK(want == pc[i]);
        }
    }

    RestrictedDerivation tau12 = johnson_p(PGradedAutClass(3, 1, gens[0].endo));
    CHECK(tau12.value(1).str() == "2*[X1,X2]");
    CHECK(tau12.value(1).in_plain_lie_part());
    CHECK(tau12.value(2).is_zero());

    CHECK_THROWS_AS(PGradedAutClass(4, 1, gens[0].endo), std::invalid_argument);
}

TEST_CASE("mod-p traces vanish on commutator classes") {
    auto gens = ia_generators(3);
    CHECK(trace_p(PGradedAutClass(3, 1, gens[0].endo)).str() == "1*(X2)");
    Endomorphism h = ia_compose(gens, ia_commutator({1}, {2}), 3);
    CHECK(trace_p(PGradedAutClass(3, 2, h)).is_zero());
}

TEST_CASE("non-tame certificates from p-th power automorphisms") {
    NontameReport nt = nontame_witness(Word::generator(2, 2), 3);
    CHECK(nt.base_degree == 1);
    CHECK(nt.expected_depth == 2);
    CHECK(nt.computed_depth == 2);
    CHECK(nt.depth_matches);
    CHECK(nt.value_outside_plain_lie);
    CHECK(nt.passed);
    CHECK(nt.phi.image(1).str() == "x2^3 x1");
    CHECK(nt.johnson_value == "X1* (x) ((X2)^3)");

    NontameReport nt2 =
        nontame_witness(Word::commutator(Word::generator(3, 2), Word::generator(3, 3)), 2);
    CHECK(nt2.base_degree == 2);
    CHECK(nt2.expected_depth == 3);
    CHECK(nt2.computed_depth == 3);
    CHECK(nt2.passed);
    CHECK(nt2.johnson_value == "X1* (x) (([X2,X3])^2)");

    CHECK_THROWS_AS(nontame_witness(Word::generator(2, 1), 3), std::invalid_argument);
    CHECK_THROWS_AS(nontame_witness(Word::generator(2, 2), 4), std::invalid_argument);
}

TEST_CASE("restricted subalgebra filtration dimensions") {
    auto parts = frakJp_filtration(3, 2, 3);
    REQUIRE(parts.size() == 3);
    CHECK(parts[0].size() == 9);
    CHECK(parts[1].size() == 21);
    CHECK(parts[2].size() == 43);

    FpMat tm = trace_p_matrix(3, 1, 2);
    CHECK(tm.rows() == 18);
    CHECK(tm.cols() == 3);
    CHECK(tm.rank() == 3);
}

TEST_CASE("trace-kernel comparison at a concentrated degree") {
    PConcentrationReport rep = verify_p_concentration(4, 3, 2);
    CHECK(rep.passed);
    REQUIRE(rep.degrees.size() == 1);
    const PConcentrationDegree& d = rep.degrees[0];
    CHECK(d.degree == 2);
    CHECK(d.frakj_dim == 70);
    CHECK(d.ker_dim == 86);
    CHECK(d.concentrated);
    CHECK(d.gap == 16);
    CHECK(d.gap_bound == 16);
    CHECK(d.frakj_in_kernel);
    CHECK(d.ok);
}

TEST_CASE("trace-kernel equality away from concentrated degrees") {
    PConcentrationReport rep = verify_p_concentration(4, 5, 2);
    CHECK(rep.passed);
    REQUIRE(rep.degrees.size() == 1);
    const PConcentrationDegree& d = rep.degrees[0];
    CHECK_FALSE(d.concentrated);
    CHECK(d.frakj_dim == 70);
    CHECK(d.ker_dim == 70);
    CHECK(d.gap == 0);
    CHECK(d.ok);

    CHECK_THROWS_AS(verify_p_concentration(4, 4, 2), std::invalid_argument);
}
