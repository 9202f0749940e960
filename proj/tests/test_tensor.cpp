#include "foxlie/tensor.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace foxlie;

namespace {
TensorPoly poly(int rank, int trunc, std::initializer_list<std::pair<Mono, int>> terms,
                Ring ring = {}) {
    TensorPoly t(rank, trunc, ring);
    for (const auto& [m, c] : terms) t.add_term(m, c);
    return t;
}
}  // namespace

TEST_CASE("magnus expansion of generators and inverses") {
    CHECK(magnus(Word::generator(2, 1), 3) ==
          poly(2, 3, {{Mono{}, 1}, {Mono{1}, 1}}));
    CHECK(magnus(Word::generator(2, 1, -1), 3) ==
          poly(2, 3, {{Mono{}, 1}, {Mono{1}, -1}, {Mono{1, 1}, 1}, {Mono{1, 1, 1}, -1}}));
    CHECK(magnus(Word::parse("x1 x1^-1", 2), 4) == poly(2, 4, {{Mono{}, 1}}));
}

TEST_CASE("magnus expansion is multiplicative") {
    Rng rng(5);
    for (int trial = 0; trial < 25; ++trial) {
        Word u = random_word(rng, 3, 6), v = random_word(rng, 3, 6);
        CHECK(magnus(u * v, 4) == (magnus(u, 4) * magnus(v, 4)).truncated(4));
    }
}

TEST_CASE("commutator words start in degree two") {
    Word c = Word::commutator(Word::generator(2, 1), Word::generator(2, 2));
    CHECK(magnus(c, 2).graded_component(2) ==
          poly(2, 2, {{Mono{1, 2}, 1}, {Mono{2, 1}, -1}}));

    Valuation v = word_degree(c, 4);
    CHECK(v.kind == Valuation::exact);
    CHECK(v.value == 2);
    CHECK(v.at_least(2));
    CHECK_FALSE(v.at_least(3));

    CHECK(word_degree(Word::identity(2), 4).kind == Valuation::zero_element);

    Word deep = Word::commutator(c, Word::commutator(c, c * Word::generator(2, 1)));
    Valuation vd = word_degree(deep, 2);
    CHECK(vd.kind == Valuation::beyond);
    CHECK(vd.at_least(3));
}

TEST_CASE("mod-p valuations differ from integral ones") {
    Word square = Word::generator(2, 1).pow(2);
    CHECK(word_degree(square, 4).value == 1);
    CHECK(word_degree(square, 4, mod_p(2)).value == 2);
    Word cube = Word::generator(2, 1).pow(3);
    CHECK(word_degree(cube, 4, mod_p(3)).value == 3);
}

TEST_CASE("contraction keeps monomials ending in the chosen letter") {
    TensorPoly t = poly(2, 3, {{Mono{1, 2, 1}, 2}, {Mono{1, 2}, 5}, {Mono{2, 2, 1}, -1}});
    CHECK(contract(1, t) == poly(2, 2, {{Mono{1, 2}, 2}, {Mono{2, 2}, -1}}));
    CHECK(contract(2, t) == poly(2, 1, {{Mono{1}, 5}}));
}

TEST_CASE("cyclic machinery: rotations, periods, necklaces") {
    CHECK(minimal_rotation(Mono{2, 1, 2}) == Mono{1, 2, 2});
    CHECK(minimal_period(Mono{1, 2, 1, 2}) == 2);
    CHECK(minimal_period(Mono{1, 1, 2}) == 3);
    CHECK(necklace_count(4, 2) == 10);
    CHECK(necklace_count(5, 2) == 15);
    CHECK(necklace_count(5, 3) == 45);
    CHECK(necklace_basis(2, 3).size() == 4);
    CHECK(necklace_basis(2, 4, true, 2).size() == 3);
}

TEST_CASE("cyclic projection is rotation invariant and kills brackets") {
    TensorPoly t = poly(2, 3, {{Mono{1, 1, 2}, 1}});
    TensorPoly rot = poly(2, 3, {{Mono{1, 2, 1}, 1}});
    CHECK(cyclic_project(t) == cyclic_project(rot));

    TensorPoly a = poly(2, 3, {{Mono{1}, 1}});
    TensorPoly b = poly(2, 3, {{Mono{1, 2}, 3}, {Mono{2, 2}, -2}});
    TensorPoly bracket = a * b - b * a;
    CHECK(cyclic_project(bracket).is_zero());
    CHECK(in_bracket_subspace(bracket));
    CHECK_FALSE(in_bracket_subspace(poly(2, 2, {{Mono{1, 2}, 1}})));
}

TEST_CASE("p-restricted classes also kill p-th powers") {
    Ring f2 = mod_p(2);
    TensorPoly a = poly(2, 4, {{Mono{1, 2}, 1}, {Mono{2, 2}, 1}}, f2);
    TensorPoly sq = a * a;
    CHECK(in_bracket_subspace(sq, true));
    CHECK_FALSE(in_bracket_subspace(sq, false));
    CHECK(cyclic_project(sq, true).is_zero());
}

TEST_CASE("matrix trace sampling agrees with class-sum membership") {
    TensorPoly a = poly(2, 4, {{Mono{1}, 1}});
    TensorPoly b = poly(2, 4, {{Mono{2, 1}, 1}, {Mono{1, 2, 2}, -3}});
    TensorPoly member = (a * b - b * a).graded_component(3);
    TraceSampleReport ok = bryant_matrix_test(member, 30, 99);
    CHECK(ok.all_traces_zero);

    TensorPoly nonmember = poly(2, 3, {{Mono{1, 1, 2}, 1}});
    REQUIRE_FALSE(in_bracket_subspace(nonmember));
    TraceSampleReport bad = bryant_matrix_test(nonmember, 50, 99);
    CHECK_FALSE(bad.all_traces_zero);
    CHECK(bad.refuting_sample >= 1);
}
