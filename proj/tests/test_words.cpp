#include "foxlie/word.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace foxlie;

TEST_CASE("parsing follows the word grammar") {
    Word w = Word::parse("x1 x2^-1 [x1,x2]", 2);
    Word expected = Word::generator(2, 1) * Word::generator(2, 2, -1) *
                    Word::commutator(Word::generator(2, 1), Word::generator(2, 2));
    CHECK(w == expected);

    CHECK(Word::parse("x1 x1^-1", 2).is_identity());
    CHECK(Word::parse("x1^3", 1) == Word::generator(1, 1).pow(3));
    CHECK(Word::parse("(x1 x2)^2", 2) ==
          (Word::generator(2, 1) * Word::generator(2, 2)).pow(2));
    CHECK(Word::parse("[x1,x2]", 2).size() == 4);
    CHECK_THROWS_AS(Word::parse("x3", 2), std::invalid_argument);
    CHECK_THROWS_AS(Word::parse("x1 )", 2), std::invalid_argument);
}

TEST_CASE("free reduction is confluent under random cancelling insertions") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        Word base = random_word(rng, 3, 8);
        std::vector<int> letters = base.letters();
        for (int ins = 0; ins < 6; ++ins) {
            std::size_t pos = rng.below(letters.size() + 1);
            int l = 1 + static_cast<int>(rng.below(3));
            if (rng.coin()) l = -l;
            letters.insert(letters.begin() + static_cast<long>(pos), {l, -l});
        }
        CHECK(Word::from_letters(3, letters) == base);
    }
}

TEST_CASE("group identities") {
    Word a = Word::parse("x1 x2", 2), b = Word::parse("x2 x1^-1", 2);
    CHECK((a * a.inverse()).is_identity());
    CHECK(Word::commutator(a, a).is_identity());
    CHECK(Word::commutator(a, b).inverse() == Word::commutator(b, a));
    CHECK(a.pow(-2) == (a * a).inverse());
    CHECK(a.pow(0).is_identity());
}

TEST_CASE("endomorphisms act on words and compose") {
    Endomorphism f = Endomorphism::parse("x2 x1 x2^-1; x2", 2);
    CHECK(f.image(1) == Word::parse("x2 x1 x2^-1", 2));
    CHECK(f.apply(Word::parse("x1^-1", 2)) == Word::parse("x2 x1^-1 x2^-1", 2));

    Endomorphism id = Endomorphism::identity(2);
    Word w = Word::parse("x1 x2 x1", 2);
    CHECK(id.apply(w) == w);
    CHECK(f.compose(id).image(1) == f.image(1));
    CHECK(id.compose(f).image(1) == f.image(1));

    Endomorphism g = Endomorphism::parse("x1; x1 x2", 2);
    CHECK(f.compose(g).image(2) == f.apply(g.image(2)));
    CHECK(f.power(3).image(1) == f.compose(f).compose(f).image(1));

    CHECK_THROWS_AS(Endomorphism::parse("x1; x2; x1", 2), std::invalid_argument);
    CHECK_THROWS_AS(Endomorphism::parse("x1", 2), std::invalid_argument);
}

TEST_CASE("abelianization rows are the exponent vectors of the images") {
    Endomorphism f = Endomorphism::parse("x1 x2; x2", 2);
    std::vector<std::vector<long long>> expected = {{1, 1}, {0, 1}};
    CHECK(f.abelianization() == expected);

    Endomorphism k = Endomorphism::parse("x2 x1 x2^-1; x2; x3", 3);
    std::vector<std::vector<long long>> id3 = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    CHECK(k.abelianization() == id3);
}
