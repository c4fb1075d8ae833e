#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "quadfix/quadric_props.hpp"

using namespace quadfix;

namespace {

Polynomial entry_var(const GenericFixedMatrix& g, std::size_t index, int sign = 1) {
    Polynomial v = Polynomial::variable(g.catalog, index);
    return sign >= 0 ? v : -v;
}

void check_strings(const RingMatrix<Polynomial>& m,
                   const std::vector<std::vector<std::string>>& want) {
    REQUIRE(m.rows() == static_cast<int>(want.size()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            INFO("entry (" << i + 1 << "," << j + 1 << ")");
            CHECK(m.at(i, j).to_string() ==
                  want[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        }
}

}  // namespace

TEST_CASE("corner matrix P") {
    GenericFixedMatrix g = with_letter_names(generic_element(Partition({2, 2, 1, 1})));
    check_strings(upper_right_matrix(g), {
        {"0", "c", "e", "h"},
        {"-c", "0", "f", "i"},
        {"0", "0", "g", "j"},
        {"0", "0", "j", "k"},
    });

    GenericFixedMatrix g2 = with_letter_names(generic_element(Partition({3, 2, 1})));
    check_strings(upper_right_matrix(g2), {
        {"b", "d", "f"},
        {"0", "0", "g"},
        {"0", "0", "h"},
    });

    // one-part corners: a_m when n is odd, 0 when n is even
    GenericFixedMatrix g5 = with_letter_names(generic_element(Partition({5})));
    check_strings(upper_right_matrix(g5), {{"c"}});
    GenericFixedMatrix g4 = generic_element(Partition({4}));
    CHECK(upper_right_matrix(g4).at(0, 0).is_zero());
}

TEST_CASE("determinant factorization goldens") {
    GenericFixedMatrix g = with_letter_names(generic_element(Partition({2, 2, 1, 1})));
    DetFactorization f = det_by_formula(g);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].to_string() == "c^2*g*k - c^2*j^2");
    CHECK(f.factors[1].to_string() == "c^2");
    CHECK(f.product.to_string() == "c^4*g*k - c^4*j^2");

    GenericFixedMatrix g2 = with_letter_names(generic_element(Partition({3, 2, 1})));
    CHECK(det_by_formula(g2).product.is_zero());

    // (3,3): three identical 2x2 factors
    GenericFixedMatrix g3 = with_letter_names(generic_element(Partition({3, 3})));
    DetFactorization f3 = det_by_formula(g3);
    REQUIRE(f3.factors.size() == 3);
    CHECK(f3.factors[0] == f3.factors[1]);
    CHECK(f3.factors[1] == f3.factors[2]);
    Polynomial b = entry_var(g3, 1), e = entry_var(g3, 4), gg = entry_var(g3, 6);
    CHECK(f3.factors[0] == b * gg - e * e);
    CHECK(f3.product == pow(b * gg - e * e, 3));
}

TEST_CASE("direct determinant goldens") {
    GenericFixedMatrix g3 = generic_element(Partition({3}));
    CHECK(det_direct(g3) == pow(entry_var(g3, 1), 3));  // a_2^3
    CHECK(det_direct(generic_element(Partition({2}))).is_zero());
    GenericFixedMatrix g = with_letter_names(generic_element(Partition({2, 2, 1, 1})));
    CHECK(det_direct(g).to_string() == "c^4*g*k - c^4*j^2");
    CHECK_THROWS_AS(det_direct(generic_element(Partition({4, 3, 3}))), BoundExceeded);
}

TEST_CASE("determinant theorem holds symbolically up to n = 7") {
    for (int n = 1; n <= 7; ++n)
        for (const auto& lambda : enumerate_partitions(n)) {
            GenericFixedMatrix g = generic_element(lambda);
            INFO("lambda = " << lambda.to_string());
            CHECK(det_by_formula(g).product == det_direct(g));
        }
}

TEST_CASE("vanishing criterion matches the degeneracy number") {
    for (int n = 1; n <= 8; ++n)
        for (const auto& lambda : enumerate_partitions(n)) {
            GenericFixedMatrix g = generic_element(lambda);
            INFO("lambda = " << lambda.to_string());
            CHECK(formula_det_is_zero(g) == (lambda.degeneracy() > 0));
        }
}

TEST_CASE("corank examples") {
    CHECK(corank_expected(Partition({3, 2, 1})) == 1);
    CHECK(corank_expected(Partition({4, 2, 2, 2})) == 2);
    CHECK(corank_expected(Partition({1, 1, 1, 1})) == 0);

    CHECK(corank_computed(generic_element(Partition({3, 2, 1}))) == 1);
    CHECK(corank_computed(generic_element(Partition({2, 2, 1, 1}))) == 0);
    CHECK(corank_computed(generic_element(Partition({2}))) == 1);
    CHECK(corank_computed(generic_element(Partition({4, 2, 2, 2}))) == 2);
}

TEST_CASE("randomized and exact corank agree with the theorem up to n = 7") {
    for (int n = 1; n <= 7; ++n)
        for (const auto& lambda : enumerate_partitions(n)) {
            GenericFixedMatrix g = generic_element(lambda);
            INFO("lambda = " << lambda.to_string());
            CHECK(corank_randomized(g) == lambda.degeneracy());
            CHECK(corank_exact(g) == lambda.degeneracy());
        }
}

TEST_CASE("false-pass probability bound") {
    CHECK_THAT(corank_false_pass_probability(10, 5, 1'000'000),
               Catch::Matchers::WithinRel(3.125e-27, 1e-9));
}

TEST_CASE("restricted matrices of (4,2,2,2) match the displayed forms") {
    GenericFixedMatrix g = generic_element(Partition({4, 2, 2, 2}));
    RestrictedMatrices rm = restricted_matrices(g);
    CHECK(rm.m_prime.rows() == 10);
    CHECK(rm.m_prime.cols() == 5);
    CHECK(rm.m_double_prime.rows() == 5);
    CHECK(rm.m_double_prime.cols() == 5);
    CHECK(rm.selected_cols == std::vector<int>{2, 3, 5, 7, 9});
    CHECK(rm.selected_rows == std::vector<int>{0, 1, 4, 6, 8});

    // displayed M'' (letters b,d,g,i,l,n,q at catalog positions
    // 1,3,6,8,11,13,15; the display skips the letter o)
    const auto& m = rm.m_double_prime;
    CHECK(m.at(0, 0) == entry_var(g, 1));
    CHECK(m.at(0, 1).is_zero());
    CHECK(m.at(0, 2) == entry_var(g, 3));
    CHECK(m.at(0, 3) == entry_var(g, 6));
    CHECK(m.at(0, 4) == entry_var(g, 11));
    for (int j = 0; j < 5; ++j) CHECK(m.at(1, j).is_zero());
    CHECK(m.at(2, 2).is_zero());
    CHECK(m.at(2, 3) == entry_var(g, 8));
    CHECK(m.at(2, 4) == entry_var(g, 13));
    CHECK(m.at(3, 2) == entry_var(g, 8, -1));
    CHECK(m.at(3, 3).is_zero());
    CHECK(m.at(3, 4) == entry_var(g, 15));
    CHECK(m.at(4, 2) == entry_var(g, 13, -1));
    CHECK(m.at(4, 3) == entry_var(g, 15, -1));
    CHECK(m.at(4, 4).is_zero());
}

TEST_CASE("restricted matrices edge cases") {
    // d_i = 0 everywhere: no columns selected
    RestrictedMatrices rm = restricted_matrices(generic_element(Partition({2, 2, 1, 1})));
    CHECK(rm.m_prime.cols() == 0);
    CHECK(rm.m_double_prime.rows() == 0);
    CHECK(null_basis(generic_element(Partition({2, 2, 1, 1}))).empty());

    RestrictedMatrices rm2 = restricted_matrices(generic_element(Partition({2})));
    CHECK(rm2.m_prime.cols() == 1);
    CHECK(rm2.m_prime.is_zero());
    CHECK(rm2.m_double_prime.rows() == 1);
    CHECK(rm2.m_double_prime.at(0, 0).is_zero());
}

TEST_CASE("rows dropped from M' are zero rows") {
    for (int n = 1; n <= 8; ++n)
        for (const auto& lambda : enumerate_partitions(n)) {
            RestrictedMatrices rm = restricted_matrices(generic_element(lambda));
            std::vector<bool> kept(static_cast<std::size_t>(lambda.n()), false);
            for (int r : rm.selected_rows) kept[static_cast<std::size_t>(r)] = true;
            for (int r = 0; r < lambda.n(); ++r) {
                if (kept[static_cast<std::size_t>(r)]) continue;
                for (int c = 0; c < rm.m_prime.cols(); ++c)
                    CHECK(rm.m_prime.at(r, c).is_zero());
            }
        }
}

TEST_CASE("null basis of (3,2,1): one relation between columns 3 and 5") {
    GenericFixedMatrix g = with_letter_names(generic_element(Partition({3, 2, 1})));
    auto basis = null_basis(g);
    REQUIRE(basis.size() == 1);
    const auto& v = basis[0];
    CHECK(v[2] == entry_var(g, 3));       // d
    CHECK(v[4] == entry_var(g, 1, -1));   // -b
    for (std::size_t i : {0u, 1u, 3u, 5u}) CHECK(v[i].is_zero());
}

TEST_CASE("null basis of (4,2,2,2) spans the displayed relations") {
    GenericFixedMatrix g = generic_element(Partition({4, 2, 2, 2}));
    auto basis = null_basis(g);
    REQUIRE(basis.size() == 2);

    // the displayed relations: C_4 = 0, and
    // (qd - ng + il) C_3 - bq C_6 + bn C_8 - bi C_10 = 0
    // (letters d,n,g,i,l,b,q at catalog positions 3,13,6,8,11,1,15)
    auto V = [&](std::size_t i) { return Polynomial::variable(g.catalog, i); };
    std::vector<Polynomial> w1(10), w2(10);
    w1[3] = Polynomial::constant(1);
    w2[2] = V(15) * V(3) - V(13) * V(6) + V(8) * V(11);
    w2[5] = -(V(1) * V(15));
    w2[7] = V(1) * V(13);
    w2[9] = -(V(1) * V(8));

    // both displayed vectors annihilate M
    for (const auto& w : {w1, w2})
        for (int i = 0; i < 10; ++i) {
            Polynomial s;
            for (int j = 0; j < 10; ++j) s += g.matrix.at(i, j) * w[static_cast<std::size_t>(j)];
            CHECK(s.is_zero());
        }

    // span equality: stacking either displayed vector on the computed
    // basis does not raise the rank
    for (const auto& w : {w1, w2}) {
        RingMatrix<Polynomial> stack(3, 10);
        for (int j = 0; j < 10; ++j) {
            stack.at(0, j) = basis[0][static_cast<std::size_t>(j)];
            stack.at(1, j) = basis[1][static_cast<std::size_t>(j)];
            stack.at(2, j) = w[static_cast<std::size_t>(j)];
        }
        CHECK(exact_rank(stack) == 2);
    }
}

TEST_CASE("null witnesses annihilate M and are independent") {
    for (int n = 1; n <= 7; ++n)
        for (const auto& lambda : enumerate_partitions(n)) {
            GenericFixedMatrix g = generic_element(lambda);
            auto basis = null_basis(g);
            INFO("lambda = " << lambda.to_string());
            CHECK(static_cast<int>(basis.size()) == lambda.degeneracy());
            for (const auto& v : basis)
                for (int i = 0; i < n; ++i) {
                    Polynomial s;
                    for (int j = 0; j < n; ++j)
                        s += g.matrix.at(i, j) * v[static_cast<std::size_t>(j)];
                    CHECK(s.is_zero());
                }
            if (!basis.empty()) {
                RingMatrix<Polynomial> stack(static_cast<int>(basis.size()), n);
                for (std::size_t i = 0; i < basis.size(); ++i)
                    for (int j = 0; j < n; ++j)
                        stack.at(static_cast<int>(i), j) = basis[i][static_cast<std::size_t>(j)];
                CHECK(exact_rank(stack) == static_cast<int>(basis.size()));
            }
        }
}

TEST_CASE("witness minor of (4,2,2,2)") {
    GenericFixedMatrix g = generic_element(Partition({4, 2, 2, 2}));
    RankWitness w = witness_minor(g);
    CHECK(w.rows == std::vector<int>{0, 1, 2, 4, 5, 6, 8, 9});
    CHECK(w.cols == std::vector<int>{0, 1, 2, 4, 5, 6, 8, 9});
    CHECK(w.symbolic);
    REQUIRE(w.minor_det.has_value());
    CHECK(!w.minor_det->is_zero());

    // the distinguished entries multiply to -b^3*j*n^4 exactly as
    // displayed (letters b,j,n at catalog positions 1,9,13) ...
    std::vector<std::pair<int, int>> cells = {{0, 2}, {1, 1}, {2, 0}, {4, 9},
                                              {5, 8}, {6, 6}, {8, 5}, {9, 4}};
    Polynomial prod = Polynomial::constant(1);
    for (auto [r, c] : cells) prod = prod * g.matrix.at(r, c);
    Polynomial bjn = Polynomial::term(g.catalog, BigInt(-1), {{1, 3}, {9, 1}, {13, 4}});
    CHECK(prod == bjn);

    // ... and the permutation placing them is odd, so the minor carries
    // the monomial b^3*j*n^4 with coefficient +1
    CHECK(w.minor_det->coefficient(
              {{g.catalog->name(1), 3}, {g.catalog->name(9), 1}, {g.catalog->name(13), 4}}) == 1);
}

TEST_CASE("witness minor small goldens") {
    GenericFixedMatrix g3 = generic_element(Partition({3}));
    RankWitness w3 = witness_minor(g3);
    CHECK(w3.rows == std::vector<int>{0, 1, 2});
    REQUIRE(w3.minor_det.has_value());
    CHECK(*w3.minor_det == pow(entry_var(g3, 1), 3));

    GenericFixedMatrix g2 = generic_element(Partition({2}));
    RankWitness w2 = witness_minor(g2);
    CHECK(w2.rows == std::vector<int>{0});
    CHECK(w2.cols == std::vector<int>{0});
    REQUIRE(w2.minor_det.has_value());
    CHECK(*w2.minor_det == entry_var(g2, 0));

    GenericFixedMatrix g1111 = generic_element(Partition({1, 1, 1, 1}));
    RankWitness w4 = witness_minor(g1111);
    CHECK(w4.rows == std::vector<int>{0, 1, 2, 3});
    CHECK(*w4.minor_det == det(g1111.matrix));
}

TEST_CASE("witness sandwich up to n = 7") {
    for (int n = 1; n <= 7; ++n)
        for (const auto& lambda : enumerate_partitions(n)) {
            GenericFixedMatrix g = generic_element(lambda);
            RankWitness w = witness_minor(g);
            int target = n - lambda.degeneracy();
            INFO("lambda = " << lambda.to_string());
            CHECK(static_cast<int>(w.rows.size()) == target);
            CHECK(static_cast<int>(w.cols.size()) == target);
            CHECK(w.symbolic);
            REQUIRE(w.minor_det.has_value());
            CHECK(!w.minor_det->is_zero());
        }
}

TEST_CASE("witness verification by specialization beyond the symbolic bound") {
    GenericFixedMatrix g = generic_element(Partition({4, 2, 2, 2}));
    RankWitness w = witness_minor(g, 4);
    CHECK(w.rows.size() == 8);
    CHECK(!w.symbolic);
    CHECK(!w.minor_det.has_value());
}

TEST_CASE("witness fallback search and exhaustion") {
    // hand-built fixed matrices that defeat the antidiagonal candidate
    Partition two({2});
    auto cat = make_catalog({"b"});
    GenericFixedMatrix g(two);
    g.catalog = cat;
    g.matrix = RingMatrix<Polynomial>(2, 2);
    g.matrix.at(0, 1) = Polynomial::variable(cat, "b");
    g.matrix.at(1, 0) = Polynomial::variable(cat, "b");
    // the candidate 1x1 corner minor is zero; the pivot search must find
    // a verified off-diagonal certificate
    RankWitness w = witness_minor(g);
    CHECK(w.rows == std::vector<int>{1});
    CHECK(w.cols == std::vector<int>{0});
    REQUIRE(w.minor_det.has_value());
    CHECK(*w.minor_det == Polynomial::variable(cat, "b"));

    GenericFixedMatrix z(two);
    z.catalog = cat;
    z.matrix = RingMatrix<Polynomial>(2, 2);  // all zero: no size-1 minor exists
    CHECK_THROWS_AS(witness_minor(z), WitnessNotFound);
}
