#include "doctest.h"

#include <random>

#include "helpers.hpp"
#include "matrix.hpp"

using namespace rgc;
using rgc_test::raises;

TEST_SUITE("matrix") {

TEST_CASE("identity and zero behave under multiplication") {
    PrimeField f7(7);
    std::mt19937_64 rng(1);
    Matrix a = rgc_test::random_matrix(3, 4, f7, rng);
    CHECK(Matrix::identity(3, f7) * a == a);
    Matrix zero(4, 2, f7);
    CHECK((a * zero).is_zero());
}

TEST_CASE("multiplication picks columns as expected") {
    PrimeField f7(7);
    Matrix a = Matrix::from_rows({{5, 4}, {2, 5}}, f7);
    Matrix e1 = Matrix::from_rows({{1}, {0}}, f7);
    Matrix prod = a * e1;
    CHECK(prod.at(0, 0) == 5);
    CHECK(prod.at(1, 0) == 2);
}

TEST_CASE("fixed inverses") {
    PrimeField f7(7);
    Matrix id = Matrix::identity(3, f7);
    CHECK(id.inverse() == id);
    Matrix twos = Matrix::from_rows({{2, 0}, {0, 2}}, f7);
    Matrix inv = twos.inverse();
    CHECK(inv == Matrix::from_rows({{4, 0}, {0, 4}}, f7));
}

TEST_CASE("rank on fixed matrices") {
    PrimeField f7(7);
    CHECK(Matrix(3, 3, f7).rank() == 0);
    CHECK(Matrix::identity(4, f7).rank() == 4);
    Matrix degenerate = Matrix::from_rows({{1, 2}, {2, 4}}, f7);
    CHECK(degenerate.rank() == 1);
}

TEST_CASE("nullspace basis") {
    PrimeField f7(7);
    CHECK(Matrix::identity(3, f7).nullspace().cols() == 0);
    Matrix zero(2, 2, f7);
    CHECK(zero.nullspace().cols() == 2);

    Matrix degenerate = Matrix::from_rows({{1, 2}, {2, 4}}, f7);
    Matrix ns = degenerate.nullspace();
    REQUIRE(ns.cols() == 1);
    // Basis vector annihilates the matrix and is proportional to (5, 1).
    std::vector<uint32_t> v = ns.col(0);
    std::vector<uint32_t> prod = degenerate.right_mul(v);
    CHECK(prod[0] == 0);
    CHECK(prod[1] == 0);
    uint32_t scale = f7.mul(5, f7.inv(v[0] != 0 ? v[0] : 1));
    CHECK(v[0] != 0);
    CHECK(f7.mul(v[0], scale) == 5);
    CHECK(f7.mul(v[1], scale) == 1);
}

TEST_CASE("submatrix selections") {
    PrimeField f7(7);
    Matrix psi = Matrix::from_rows({{5, 4, 1}, {2, 5, 4}, {3, 2, 5}}, f7);
    CHECK(psi.submatrix({0, 1, 2}, {0, 1, 2}) == psi);
    Matrix cell = psi.submatrix({0}, {0});
    CHECK(cell.rows() == 1);
    CHECK(cell.at(0, 0) == 5);
    Matrix corner = psi.submatrix({1, 2}, {0, 1});
    CHECK(corner == Matrix::from_rows({{2, 5}, {3, 2}}, f7));
    CHECK(raises(ErrorCode::index_out_of_range, [&] { psi.submatrix({3}, {0}); }));
}

TEST_CASE("shape and index errors") {
    PrimeField f7(7);
    Matrix a(2, 3, f7);
    Matrix b(2, 3, f7);
    CHECK(raises(ErrorCode::shape_mismatch, [&] { (void)(a * b); }));
    CHECK(raises(ErrorCode::index_out_of_range, [&] { a.at(2, 0); }));
    CHECK(raises(ErrorCode::index_out_of_range, [&] { a.at(0, 3); }));
    CHECK(raises(ErrorCode::shape_mismatch, [&] { a.inverse(); }));
    PrimeField f5(5);
    Matrix c(2, 3, f5);
    CHECK(raises(ErrorCode::field_mismatch, [&] { (void)(a + c); }));
    CHECK(raises(ErrorCode::invalid_argument, [&] { a.set(0, 0, 7); }));
}

TEST_CASE("singular matrices refuse to invert") {
    PrimeField f7(7);
    Matrix degenerate = Matrix::from_rows({{1, 2}, {2, 4}}, f7);
    CHECK(raises(ErrorCode::singular_matrix, [&] { degenerate.inverse(); }));
    CHECK(raises(ErrorCode::singular_matrix, [&] { Matrix(3, 3, f7).inverse(); }));
}

TEST_CASE("random invertible matrices invert from both sides") {
    std::mt19937_64 rng(20240812);
    for (uint32_t q : {5u, 7u, 11u, 257u}) {
        PrimeField f(q);
        for (std::size_t n : {1u, 2u, 5u, 12u}) {
            Matrix a = rgc_test::random_invertible(n, f, rng);
            Matrix inv = a.inverse();
            Matrix id = Matrix::identity(n, f);
            CHECK(a * inv == id);
            CHECK(inv * a == id);
        }
    }
}

TEST_CASE("rank plus nullity equals column count") {
    std::mt19937_64 rng(20240813);
    PrimeField f11(11);
    for (int iter = 0; iter < 30; ++iter) {
        std::uniform_int_distribution<std::size_t> dim(1, 8);
        std::size_t r = dim(rng), c = dim(rng);
        Matrix a = rgc_test::random_matrix(r, c, f11, rng);
        Matrix ns = a.nullspace();
        CHECK(a.rank() + ns.cols() == c);
        for (std::size_t j = 0; j < ns.cols(); ++j) {
            std::vector<uint32_t> prod = a.right_mul(ns.col(j));
            for (uint32_t v : prod) CHECK(v == 0);
        }
    }
}

TEST_CASE("inverse exists exactly when rank is full") {
    std::mt19937_64 rng(20240814);
    PrimeField f7(7);
    for (int iter = 0; iter < 50; ++iter) {
        Matrix a = rgc_test::random_matrix(4, 4, f7, rng);
        bool invertible = true;
        try {
            (void)a.inverse();
        } catch (const Error& e) {
            REQUIRE(e.code() == ErrorCode::singular_matrix);
            invertible = false;
        }
        CHECK(invertible == (a.rank() == 4));
    }
}

TEST_CASE("stacking and vector products") {
    PrimeField f7(7);
    Matrix a = Matrix::from_rows({{1, 2}}, f7);
    Matrix b = Matrix::from_rows({{3, 4}}, f7);
    CHECK(Matrix::vstack({a, b}) == Matrix::from_rows({{1, 2}, {3, 4}}, f7));
    CHECK(Matrix::hstack({a, b}) == Matrix::from_rows({{1, 2, 3, 4}}, f7));
    Matrix m = Matrix::from_rows({{1, 2}, {3, 4}}, f7);
    std::vector<uint32_t> left = m.left_mul({1, 1});
    CHECK(left == std::vector<uint32_t>{4, 6});
    std::vector<uint32_t> right = m.right_mul({1, 1});
    CHECK(right == std::vector<uint32_t>{3, 0});
    CHECK(m.transpose() == Matrix::from_rows({{1, 3}, {2, 4}}, f7));
}

TEST_CASE("permutations reorder, invert and compose") {
    Permutation perm({2, 0, 1});
    std::vector<uint32_t> v{10, 20, 30};
    std::vector<uint32_t> moved = perm.apply(v);
    CHECK(moved == std::vector<uint32_t>{20, 30, 10});
    CHECK(perm.inverse().apply(moved) == v);
    Permutation both = perm.then(perm.inverse());
    CHECK(both.apply(v) == v);
    PrimeField f7(7);
    Matrix m = Matrix::from_rows({{1, 2, 3}}, f7);
    CHECK(perm.apply_to_cols(m) == Matrix::from_rows({{2, 3, 1}}, f7));
    CHECK(raises(ErrorCode::invalid_argument, [] { Permutation({0, 0, 1}); }));
}

} // TEST_SUITE
