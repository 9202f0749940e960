#include "foxlie/lyndon.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace foxlie;

TEST_CASE("lyndon word generation matches Witt dimensions") {
    CHECK(lyndon_words(2, 1) == std::vector<Mono>{Mono{1}, Mono{2}});
    CHECK(lyndon_words(2, 2) == std::vector<Mono>{Mono{1, 2}});
    CHECK(lyndon_words(2, 3) == std::vector<Mono>{Mono{1, 1, 2}, Mono{1, 2, 2}});
    CHECK(lyndon_words(2, 4) ==
          std::vector<Mono>{Mono{1, 1, 1, 2}, Mono{1, 1, 2, 2}, Mono{1, 2, 2, 2}});
    for (int n = 2; n <= 4; ++n)
        for (int k = 1; k <= 5; ++k)
            CHECK(lyndon_words(n, k).size() == static_cast<std::size_t>(witt_dimension(n, k)));
    CHECK(witt_dimension(4, 3) == 20);
    CHECK(witt_dimension(5, 3) == 40);
}

TEST_CASE("lyndon predicates and factorization") {
    CHECK(is_lyndon(Mono{1, 1, 2}));
    CHECK_FALSE(is_lyndon(Mono{2, 1}));
    CHECK_FALSE(is_lyndon(Mono{1, 2, 1, 2}));
    auto [u, v] = standard_factorization(Mono{1, 1, 2, 2});
    CHECK(u == Mono{1});
    CHECK(v == Mono{1, 2, 2});
}

TEST_CASE("bracketing of lyndon words expands triangularly") {
    const TensorPoly& b112 = detail::lyndon_bracket_tensor(2, Mono{1, 1, 2});
    TensorPoly expected(2, 3, integers());
    expected.add_term(Mono{1, 1, 2}, 1);
    expected.add_term(Mono{1, 2, 1}, -2);
    expected.add_term(Mono{2, 1, 1}, 1);
    CHECK(b112 == expected);
    CHECK(LyndonBasis::bracket_str_of(Mono{1, 1, 2}) == "[X1,[X1,X2]]");
}

TEST_CASE("decomposition inverts embedding on every basis vector") {
    for (int n = 2; n <= 3; ++n)
        for (int k = 1; k <= 4; ++k) {
            const LyndonBasis& basis = LyndonBasis::get(n, k);
            for (std::size_t i = 0; i < basis.words().size(); ++i) {
                LieElement e(n, k, integers());
                e.add(i, 3 - static_cast<int>(i % 5));
                LieDecomposition d = lie_decompose(lie_embed(e));
                REQUIRE(d.ok);
                CHECK(d.value == e);
            }
        }
    TensorPoly not_lie(2, 2, integers());
    not_lie.add_term(Mono{1, 2}, 1);
    not_lie.add_term(Mono{2, 1}, 1);
    CHECK_FALSE(lie_decompose(not_lie).ok);
}

TEST_CASE("lie bracket is antisymmetric and satisfies Jacobi") {
    Rng rng(17);
    int n = 3;
    auto random_elem = [&](int k) {
        const LyndonBasis& basis = LyndonBasis::get(n, k);
        LieElement e(n, k, integers());
        for (std::size_t i = 0; i < basis.words().size(); ++i)
            e.add(i, static_cast<long long>(rng.range(-2, 2)));
        return e;
    };
    for (int trial = 0; trial < 10; ++trial) {
        LieElement a = random_elem(1), b = random_elem(2), c = random_elem(1);
        LieElement ab = lie_bracket(a, b);
        LieElement ba = lie_bracket(b, a);
        for (const auto& [i, coeff] : ab.coords()) {
            auto it = ba.coords().find(i);
            REQUIRE(it != ba.coords().end());
            CHECK(it->second == -coeff);
        }
        LieElement jac = lie_bracket(a, lie_bracket(b, c));
        LieElement rhs1 = lie_bracket(lie_bracket(a, b), c);
        LieElement rhs2 = lie_bracket(b, lie_bracket(a, c));
        TensorPoly lhs_t = lie_embed(jac);
        TensorPoly rhs_t = lie_embed(rhs1) + lie_embed(rhs2);
        CHECK(lhs_t == rhs_t);
    }
}

TEST_CASE("derivations bracket like commutators of tensor maps") {
    int n = 3;
    Ring z = integers();
    LieElement v12(n, 2, z), v13(n, 2, z);
    v12.add(LyndonBasis::get(n, 2).index_of(Mono{1, 2}), 1);
    v13.add(LyndonBasis::get(n, 2).index_of(Mono{1, 3}), 1);
    std::vector<LieElement> zero2(3, LieElement(n, 2, z));

    std::vector<LieElement> vals_d = zero2, vals_e = zero2;
    vals_d[0] = v12;
    vals_e[1] = v13;
    Derivation d(1, vals_d), e(1, vals_e);
    Derivation de = derivation_bracket(d, e);
    Derivation ed = derivation_bracket(e, d);
    for (int i = 1; i <= n; ++i)
        CHECK(lie_embed(de.value(i)) == -lie_embed(ed.value(i)));

    std::vector<Int> coords = de.coordinates();
    Derivation back = Derivation::from_coordinates(n, de.degree(), coords, z);
    for (int i = 1; i <= n; ++i) CHECK(back.value(i) == de.value(i));
}

TEST_CASE("restricted basis adds p-power columns in divisible degrees") {
    CHECK(restricted_dimension(2, 2, 2) == 3);
    CHECK(restricted_dimension(2, 3, 3) == 4);
    CHECK(restricted_dimension(2, 3, 2) == 2);
    const RestrictedBasis& basis = RestrictedBasis::get(2, 2, 2);
    CHECK(basis.keys().size() == 3);

    for (const RestrictedBasisKey& key : basis.keys()) {
        RestrictedLieElement e(2, 2, 2);
        e.add(basis.index_of(key), 1);
        RestrictedDecomposition d = restricted_decompose(restricted_embed(e));
        REQUIRE(d.ok);
        CHECK(d.value == e);
        CHECK(e.in_plain_lie_part() == (key.e == 0));
    }
}

TEST_CASE("restricted p-power maps degree k to degree pk") {
    RestrictedLieElement x1(2, 1, 2);
    x1.add(RestrictedBasis::get(2, 1, 2).index_of({0, Mono{1}}), 1);
    std::vector<RestrictedLieElement> vals(2, RestrictedLieElement(2, 2, 2));
    RestrictedLieElement v(2, 2, 2);
    v.add(RestrictedBasis::get(2, 2, 2).index_of({0, Mono{1, 2}}), 1);
    vals[0] = v;
    RestrictedDerivation d(1, vals);
    RestrictedDerivation dp = restricted_p_power(d);
    CHECK(dp.degree() == 2);
    RestrictedDerivation db = restricted_bracket(d, d);
    for (int i = 1; i <= 2; ++i) CHECK(db.value(i).coords().empty());
}
