#include "foxlie/zlattice.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace foxlie;

namespace {
IntMatrix mat(std::vector<std::vector<long long>> rows) {
    IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            m.at(static_cast<int>(r), static_cast<int>(c)) = rows[r][c];
    return m;
}
}  // namespace

TEST_CASE("bareiss determinant") {
    CHECK(determinant(mat({{1, 2}, {3, 4}})) == -2);
    CHECK(determinant(mat({{2, 4}, {1, 2}})) == 0);
    CHECK(determinant(mat({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}})) == -1);
    CHECK(determinant(mat({{3, 1, 4}, {1, 5, 9}, {2, 6, 5}})) == -90);
    CHECK(determinant(IntMatrix::identity(5)) == 1);
}

TEST_CASE("hermite form is canonical") {
    HnfResult r = hnf(mat({{2, 0, 0}, {0, 3, 0}, {1, 1, 0}}));
    CHECK(r.rank == 2);
    CHECK(r.h.at(0, 0) == 1);
    CHECK(r.h.at(0, 1) == 0);
    CHECK(r.h.at(1, 1) == 1);
    CHECK(r.pivot_cols == std::vector<int>{0, 1});

    HnfResult r2 = hnf(mat({{4, 3}, {1, 0}}));
    CHECK(r2.rank == 2);
    CHECK(r2.h.at(0, 0) == 1);
    CHECK(r2.h.at(0, 1) == 0);
    CHECK(r2.h.at(1, 0) == 0);
    CHECK(r2.h.at(1, 1) == 3);
}

TEST_CASE("incremental lattice insertion matches batch hnf") {
    HnfLattice lat(3);
    CHECK(lat.insert({Int(2), Int(0), Int(0)}));
    CHECK(lat.insert({Int(0), Int(3), Int(0)}));
    CHECK(lat.insert({Int(1), Int(1), Int(0)}));
    CHECK_FALSE(lat.insert({Int(1), Int(0), Int(0)}));
    CHECK(lat.rank() == 2);
    CHECK(lat.contains({Int(1), Int(0), Int(0)}));
    CHECK(lat.contains({Int(0), Int(1), Int(0)}));
    CHECK_FALSE(lat.contains({Int(0), Int(0), Int(1)}));

    IntMatrix canon = lat.canonical_matrix();
    CHECK(canon.at(0, 0) == 1);
    CHECK(canon.at(1, 1) == 1);
    CHECK(canon.at(0, 1) == 0);
}

TEST_CASE("smith divisors") {
    CHECK(snf_divisors(mat({{2, 4}, {6, 8}})) == std::vector<Int>{2, 4});
    CHECK(snf_divisors(mat({{1, 0}, {0, 1}})) == std::vector<Int>{1, 1});
    CHECK(snf_divisors(mat({{2, 0}, {0, 3}})) == std::vector<Int>{1, 6});
    CHECK(snf_divisors(mat({{0, 0}, {0, 0}})).empty());
    std::vector<Int> d = snf_divisors(mat({{6, 0, 0}, {0, 10, 0}, {0, 0, 15}}));
    REQUIRE(d.size() == 3);
    CHECK(d[0] == 1);
    CHECK(d[1] == 30);
    CHECK(d[2] == 30);
    for (std::size_t i = 1; i < d.size(); ++i) CHECK(d[i] % d[i - 1] == 0);
}

TEST_CASE("saturated left kernels") {
    IntMatrix m = mat({{1}, {1}, {1}});
    HnfLattice ker = lattice_from_rows(kernel_lattice(m));
    CHECK(ker.rank() == 2);
    CHECK(ker.contains({Int(1), Int(-1), Int(0)}));
    CHECK(ker.contains({Int(0), Int(1), Int(-1)}));
    CHECK_FALSE(ker.contains({Int(1), Int(1), Int(1)}));

    IntMatrix m2 = mat({{2, 0}, {0, 3}, {2, 3}});
    HnfLattice ker2 = lattice_from_rows(kernel_lattice(m2));
    CHECK(ker2.rank() == 1);
    CHECK(ker2.contains({Int(1), Int(1), Int(-1)}));
}

TEST_CASE("quotient structure reads off freeness and torsion") {
    QuotientStructure q0 = quotient_structure(2, mat({{1, 0}, {0, 1}}));
    CHECK(q0.is_free());
    CHECK(q0.free_rank == 0);

    QuotientStructure q = quotient_structure(3, mat({{2, 0, 0}, {0, 1, 0}}));
    CHECK_FALSE(q.is_free());
    CHECK(q.free_rank == 1);
    REQUIRE(q.divisors.size() == 2);
    CHECK(q.divisors[0] == 1);
    CHECK(q.divisors[1] == 2);
    CHECK(q.str() == "Z^1 + Z/2");

    QuotientStructure qf = quotient_structure(2, mat({{1, 0}}));
    CHECK(qf.is_free());
    CHECK(qf.free_rank == 1);
    CHECK(qf.str() == "Z^1");
}

TEST_CASE("lattice equality and containment helpers") {
    IntMatrix a = mat({{2, 0}, {0, 2}, {1, 1}});
    IntMatrix b = mat({{1, 1}, {1, -1}});
    CHECK(lattice_equal(a, b));
    CHECK(lattice_contains(a, b));
    IntMatrix c = mat({{1, 0}});
    CHECK_FALSE(lattice_equal(a, c));
    CHECK_FALSE(lattice_contains(a, c));
    CHECK(lattice_contains(c, IntMatrix(0, 2)));
}

TEST_CASE("dense F_p machinery") {
    FpMat m(5, 2, 3);
    m.at(0, 0) = 1; m.at(0, 1) = 2; m.at(0, 2) = 3;
    m.at(1, 0) = 2; m.at(1, 1) = 4; m.at(1, 2) = 2;
    CHECK(m.rank() == 2);
    FpMat dep(5, 2, 3);
    dep.at(0, 0) = 1; dep.at(0, 1) = 2; dep.at(0, 2) = 3;
    dep.at(1, 0) = 2; dep.at(1, 1) = 4; dep.at(1, 2) = 6;
    CHECK(dep.rank() == 1);
    auto kb = dep.left_kernel_basis();
    REQUIRE(kb.size() == 1);
    CHECK((kb[0][0] * 1 + kb[0][1] * 2) % 5 == 0);

    FpSpan span(5, 3);
    CHECK(span.insert({1, 2, 3}));
    CHECK_FALSE(span.insert({2, 4, 6}));
    CHECK(span.insert({0, 1, 0}));
    CHECK(span.contains({1, 0, 3}));
    CHECK(span.rank() == 2);

    CHECK_THROWS_AS(FpMat(6, 1, 1), std::invalid_argument);
}

TEST_CASE("scalar inverses and ranks mod p") {
    CHECK(fp_inverse(2, 5) == 3);
    CHECK(fp_inverse(1, 7) == 1);
    CHECK(fp_inverse(4, 7) == 2);
    CHECK_THROWS_AS(fp_inverse(0, 5), std::invalid_argument);
    CHECK(fp_rank_of_integer_matrix(mat({{2, 4}, {1, 2}}), 3) == 1);
    CHECK(fp_rank_of_integer_matrix(mat({{2, 4}, {1, 2}}), 2) == 1);
    CHECK(fp_rank_of_integer_matrix(mat({{1, 0}, {0, 2}}), 2) == 1);
}
