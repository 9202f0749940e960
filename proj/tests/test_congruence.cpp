#include "foxlie/congruence.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace foxlie;

TEST_CASE("q-adic valuations") {
    CHECK(q_adic_valuation(18, 3, 64) == 2);
    CHECK(q_adic_valuation(5, 3, 64) == 0);
    CHECK(q_adic_valuation(54, 3, 64) == 3);
    CHECK(q_adic_valuation(-18, 3, 64) == 2);
    CHECK(q_adic_valuation(0, 3, 64) == 64);
    CHECK(q_adic_valuation(32, 2, 3) == 3);
}

TEST_CASE("unimodular inverses over the integers") {
    IntMatrix u = IntMatrix::from_rows({{Int(1), Int(1)}, {Int(0), Int(1)}});
    IntMatrix inv = unimodular_inverse(u);
    CHECK((u * inv).is_identity());
    CHECK(inv.at(0, 1) == -1);
    IntMatrix bad = IntMatrix::from_rows({{Int(2), Int(0)}, {Int(0), Int(1)}});
    CHECK_THROWS_AS(unimodular_inverse(bad), std::invalid_argument);
}

TEST_CASE("congruence matrices track modulus and depth") {
    CHECK_THROWS_AS(CongruenceMatrix(3, IntMatrix::from_rows({{Int(1), Int(1)}, {Int(0), Int(1)}})),
                    std::invalid_argument);
    CHECK_THROWS_AS(CongruenceMatrix::shear(2, 3, 1, 1, 3), std::invalid_argument);

    CongruenceMatrix id = CongruenceMatrix::identity(2, 3);
    CHECK(id.depth().infinite);
    CHECK(id.depth().str() == "inf");

    CongruenceMatrix a = CongruenceMatrix::shear(2, 3, 1, 2, 3);
    CHECK(a.det() == 1);
    CHECK(a.depth().depth == 1);
    CHECK(a.symbol().str() == "[[0, 1]\n [0, 0]]");
}

TEST_CASE("commutator of transvections lands in depth two") {
    CongruenceMatrix a = CongruenceMatrix::shear(2, 3, 1, 2, 3);
    CongruenceMatrix b = CongruenceMatrix::shear(2, 3, 2, 1, 3);
    CongruenceMatrix c = a.group_commutator(b);
    CHECK(c.matrix().str() == "[[91, -27]\n [27, -8]]");
    CHECK_FALSE(c.depth().infinite);
    CHECK(c.depth().depth == 2);
    CHECK(c.depth().str() == "2");
    CHECK(c.symbol().str() == "[[1, 0]\n [0, 2]]");
    CHECK(c.symbol(1) == IntMatrix(2, 2));
    CHECK_THROWS_AS(c.symbol(3), std::invalid_argument);

    IntMatrix sb = symbol_bracket(a.symbol(), b.symbol(), 3);
    CHECK(sb == c.symbol());

    BracketCompatSample s = bracket_compat_sample(a, b);
    CHECK(s.depth_a == 1);
    CHECK(s.depth_b == 1);
    CHECK(s.depth_comm == 2);
    CHECK(s.depth_additive_ok);
    CHECK(s.exact_depth);
    CHECK(s.symbol_matches);
    CHECK(s.congruence_ok);
}

TEST_CASE("elementary commutator witnesses hit their depth exactly") {
    WitnessCheck w = check_elementary_witness(5, 3, 2, 1, 2, 9);
    CHECK(w.expr == "[E(1,3,3),E(3,2,3)]");
    CHECK(w.structural_depth == 2);
    CHECK(w.computed_depth == 2);
    CHECK(w.product_matches);
    CHECK(w.passed);

    WitnessCheck w3 = check_elementary_witness(5, 3, 3, 2, 4, 27);
    CHECK(w3.expr == "[[E(2,3,3),E(3,1,3)],E(1,4,3)]");
    CHECK(w3.structural_depth == 3);
    CHECK(w3.computed_depth == 3);
    CHECK(w3.passed);

    CHECK_THROWS_AS(elementary_witness(4, 3, 2, 1, 2, 9), std::invalid_argument);
    CHECK_THROWS_AS(elementary_witness(5, 3, 2, 1, 2, 3), std::invalid_argument);
    CHECK_THROWS_AS(elementary_witness(5, 3, 1, 2, 2, 3), std::invalid_argument);
}

TEST_CASE("traceless coordinates mod q") {
    IntMatrix s = IntMatrix::from_rows({{Int(1), Int(0)}, {Int(0), Int(2)}});
    std::vector<Int> coords = sl_coordinates(s, 3);
    CHECK(coords == std::vector<Int>{0, 0, 1});
    CHECK_THROWS_AS(sl_coordinates(IntMatrix::identity(2), 3), std::invalid_argument);
}

TEST_CASE("graded pieces of the congruence filtration span sl_n") {
    LieRingReport rep = verify_lie_ring(5, 3, 2, 7);
    CHECK(rep.passed);
    REQUIRE(rep.degrees.size() == 2);
    for (const auto& deg : rep.degrees) {
        CHECK(deg.witness_count == 24);
        CHECK(deg.witnesses_verified);
        CHECK(deg.spans_sl);
        CHECK(deg.sampled_depths_ok);
        CHECK(deg.witness.empty());
    }
    CHECK_THROWS_AS(verify_lie_ring(4, 3, 2, 7), std::invalid_argument);
    CHECK_THROWS_AS(verify_lie_ring(5, 2, 2, 7), std::invalid_argument);
}

TEST_CASE("composite moduli work throughout") {
    LieRingReport rep = verify_lie_ring(5, 9, 2, 7);
    CHECK(rep.passed);
    CHECK(verify_det_tr_square(5, 9, 1, 100, 11).passed);

    CongruenceMatrix a = CongruenceMatrix::shear(2, 9, 1, 2, 9);
    CongruenceMatrix b = CongruenceMatrix::shear(2, 9, 2, 1, 9);
    BracketCompatSample s = bracket_compat_sample(a, b);
    CHECK(s.depth_additive_ok);
    CHECK(s.symbol_matches);
    CHECK(s.congruence_ok);
}

TEST_CASE("determinant squares against the trace") {
    DetTrReport rep = verify_det_tr_square(5, 3, 1, 100, 11);
    CHECK(rep.samples == 100);
    CHECK(rep.passed);
    CHECK(rep.witness.empty());
}

TEST_CASE("bracket compatibility holds on random samples") {
    BracketCompatReport rep = verify_bracket_compat(5, 3, 50, 13);
    CHECK(rep.samples == 50);
    CHECK(rep.passed);
    CHECK(rep.exact_depth_count == 40);
}

TEST_CASE("random congruence elements are unimodular of the right depth") {
    Rng rng(21);
    for (int j = 1; j <= 2; ++j) {
        CongruenceMatrix m = random_congruence_element(rng, 5, 3, j, 4);
        CHECK(m.det() == 1);
        CongruenceDepth d = m.depth();
        CHECK((d.infinite || d.depth >= j));
    }
}
