// Copyright 2026 The hopfrep Authors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <hopfrep/poly.hpp>
#include <hopfrep/rng.hpp>
#include <hopfrep/sparse.hpp>

using namespace hopfrep;

namespace {

Matrix random_matrix(Rng& rng, std::size_t r, std::size_t c, long lo = -3, long hi = 3) {
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = Scalar(rng.range(lo, hi));
    return m;
}

// Low rank matrices show up more often when built as products.
Matrix random_low_rank(Rng& rng, std::size_t n) {
    std::size_t k = static_cast<std::size_t>(rng.range(0, static_cast<long>(n)));
    if (k == 0) return Matrix(n, n);
    return random_matrix(rng, n, k) * random_matrix(rng, k, n);
}

}  // namespace

TEST_CASE("scalar arithmetic") {
    CHECK(Scalar(1, 2) + Scalar(1, 3) == Scalar(5, 6));
    Scalar s2 = Scalar::sqrt_d(2);
    CHECK((Scalar(1) + s2) * (Scalar(1) - s2) == Scalar(-1));
    CHECK_THROWS_AS(Scalar(0).inv(), MathError);
    CHECK_THROWS_AS(Scalar::sqrt_d(2) + Scalar::sqrt_d(3), MathError);
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        Scalar x(mpq_class(rng.range(-9, 9), rng.range(1, 5)), mpq_class(rng.range(-9, 9), rng.range(1, 5)), 5);
        if (x.is_zero()) continue;
        CHECK((x * x.inv()).is_one());
    }
}

TEST_CASE("scalar square roots") {
    CHECK_FALSE(sqrt_in_field(Scalar(2), FieldDesc{}).has_value());
    auto r = sqrt_in_field(Scalar(2), FieldDesc{2});
    REQUIRE(r.has_value());
    CHECK(*r * *r == Scalar(2));
    auto q = sqrt_in_field(Scalar(9, 4), FieldDesc{});
    REQUIRE(q.has_value());
    CHECK(*q * *q == Scalar(9, 4));
    // (1+sqrt2)^2 = 3+2sqrt2
    Scalar t(mpq_class(3), mpq_class(2), 2);
    auto u = sqrt_in_field(t, FieldDesc{2});
    REQUIRE(u.has_value());
    CHECK(*u * *u == t);
}

TEST_CASE("scalar text grammar") {
    for (const char* s : {"0", "-3", "7/2", "1/2+3/4*sqrt(2)", "-1-sqrt(5)", "0+sqrt(-1)", "2-1/3*sqrt(3)"}) {
        Scalar x = Scalar::parse(s);
        CHECK(Scalar::parse(x.str()) == x);
    }
    CHECK(Scalar::parse("6/4").str() == "3/2");
    CHECK(Scalar::parse("sqrt(2)").str() == "0+1*sqrt(2)");
    CHECK(Scalar::parse("1+2*sqrt(2)") == Scalar(mpq_class(1), mpq_class(2), 2));
    CHECK_THROWS_AS(Scalar::parse("1/0"), MathError);
    CHECK_THROWS_AS(Scalar::parse("sqrt(4)"), MathError);
    CHECK_THROWS_AS(Scalar::parse("1.5"), MathError);
    CHECK_THROWS_AS(make_field(8), MathError);
}

TEST_CASE("rref kernel image") {
    Matrix a{{1, 1}, {1, 1}};
    CHECK(rank(a) == 1);
    auto k = kernel(a);
    REQUIRE(k.size() == 1);
    CHECK(a * k[0] == Vec{0, 0});
    CHECK(k[0][0] == -k[0][1]);

    auto kz = kernel(Matrix(3, 3));
    CHECK(kz.size() == 3);
    CHECK(rank(Matrix(3, 3)) == 0);

    auto im = image(Matrix{{0, 1}, {0, 0}});
    REQUIRE(im.size() == 1);
    CHECK(im[0] == Vec{1, 0});
}

TEST_CASE("rank plus nullity on random matrices") {
    Rng rng(11);
    for (std::size_t n = 1; n <= 8; ++n)
        for (int t = 0; t < 500; ++t) {
            std::size_t c = static_cast<std::size_t>(rng.range(1, 8));
            Matrix m = random_matrix(rng, n, 1) * random_matrix(rng, 1, c) + random_matrix(rng, n, c, -1, 1);
            auto ker = kernel(m);
            CHECK(rank(m) + ker.size() == c);
            for (auto& v : ker) CHECK(m * v == Vec(n));
        }
}

TEST_CASE("sparse nullspace agrees with dense kernel") {
    Rng rng(12);
    for (int t = 0; t < 200; ++t) {
        std::size_t r = static_cast<std::size_t>(rng.range(1, 9)), c = static_cast<std::size_t>(rng.range(1, 9));
        Matrix m = random_matrix(rng, r, c, -1, 1);
        SparseSystem sys(c);
        for (std::size_t i = 0; i < r; ++i) {
            SparseRow row;
            for (std::size_t j = 0; j < c; ++j)
                if (!m(i, j).is_zero()) row.emplace_back(j, m(i, j));
            sys.add(row);
        }
        auto ns = sys.nullspace();
        auto dk = kernel(m);
        REQUIRE(ns.size() == dk.size());
        for (std::size_t i = 0; i < ns.size(); ++i) CHECK(ns[i] == dk[i]);
    }
}

TEST_CASE("characteristic and minimal polynomials") {
    Matrix m{{0, 4}, {1, 0}};
    CHECK(minpoly(m) == Poly(Vec{-4, 0, 1}));
    auto f = factor(minpoly(m), FieldDesc{});
    REQUIRE(f.size() == 2);
    CHECK(f[0].root() == Scalar(-2));
    CHECK(f[1].root() == Scalar(2));

    CHECK(minpoly(Matrix::jordan(2, 3)) == Poly::linear(3) * Poly::linear(3));

    Matrix m2{{0, 2}, {1, 0}};
    auto f2 = factor(charpoly(m2), FieldDesc{});
    REQUIRE(f2.size() == 1);
    CHECK(f2[0].p.str() == "x^2-2");
    auto f3 = factor(charpoly(m2), FieldDesc{2});
    REQUIRE(f3.size() == 2);
    CHECK(f3[0].root() * f3[0].root() == Scalar(2));
    CHECK(f3[0].root() == -f3[1].root());
}

TEST_CASE("charpoly matches determinant at sample points") {
    Rng rng(13);
    for (int t = 0; t < 100; ++t) {
        std::size_t n = static_cast<std::size_t>(rng.range(1, 7));
        Matrix m = t % 2 ? random_low_rank(rng, n) : random_matrix(rng, n, n);
        Poly p = charpoly(m);
        CHECK(p.degree() == static_cast<int>(n));
        for (long x = -2; x <= 2; ++x)
            CHECK(p.eval(Scalar(x)) == determinant(Matrix::identity(n) * Scalar(x) - m));
        Poly mp = minpoly(m);
        CHECK(mp.eval(m).is_zero());
        CHECK((p % mp).is_zero());
    }
}

TEST_CASE("minimal polynomial of block matrices") {
    // J3(2) + J1(2) + J2(-1): (x-2)^3 (x+1)^2
    Matrix m = direct_sum(direct_sum(Matrix::jordan(3, 2), Matrix::jordan(1, 2)), Matrix::jordan(2, -1));
    CHECK(minpoly(m) == poly_pow(Poly::linear(2), 3) * poly_pow(Poly::linear(-1), 2));
    CHECK(charpoly(m) == poly_pow(Poly::linear(2), 4) * poly_pow(Poly::linear(-1), 2));
}

TEST_CASE("generalized eigenspaces") {
    auto es = generalized_eigenspaces(Matrix::diag({1, 1, -1}), FieldDesc{});
    REQUIRE(es.size() == 2);
    CHECK(es[0].value == Scalar(-1));
    CHECK(es[0].basis.cols() == 1);
    CHECK(es[1].basis.cols() == 2);

    auto es2 = generalized_eigenspaces(direct_sum(Matrix::jordan(2, 1), Matrix::jordan(1, -1)), FieldDesc{});
    REQUIRE(es2.size() == 2);
    CHECK(es2[1].value == Scalar(1));
    CHECK(es2[1].basis.cols() == 2);

    try {
        generalized_eigenspaces(Matrix{{0, 2}, {1, 0}}, FieldDesc{});
        FAIL("expected a field extension error");
    } catch (const MathError& e) {
        CHECK(std::string(e.what()).find("x^2-2") != std::string::npos);
    }

    Rng rng(14);
    for (int t = 0; t < 50; ++t) {
        // conjugates of matrices with rational spectrum
        std::size_t n = static_cast<std::size_t>(rng.range(1, 6));
        Matrix d(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            d(i, i) = Scalar(rng.range(-2, 2));
            if (i + 1 < n && rng.range(0, 1)) d(i, i + 1) = 1;
        }
        Matrix p = random_matrix(rng, n, n);
        auto pi = inverse(p);
        if (!pi) continue;
        auto sp = generalized_eigenspaces(p * d * *pi, FieldDesc{});
        std::size_t sum = 0;
        for (auto& e : sp) sum += e.basis.cols();
        CHECK(sum == n);
    }
}

TEST_CASE("factorization over a quadratic field") {
    // (x - (1+sqrt3)) (x - 2) (x^2 + 1) over Q(sqrt3)
    Scalar r(mpq_class(1), mpq_class(1), 3);
    Poly p = Poly::linear(r) * Poly::linear(Scalar(2).in_field(FieldDesc{3})) * Poly(Vec{1, 0, 1});
    auto f = factor(p, FieldDesc{3});
    int linear = 0, other = 0;
    for (auto& x : f) (x.linear() ? linear : other)++;
    CHECK(linear == 2);
    CHECK(other == 1);
    auto roots = field_roots(p, FieldDesc{3});
    CHECK(std::find(roots.begin(), roots.end(), r) != roots.end());
}

TEST_CASE("kronecker products") {
    CHECK(kronecker(Matrix::identity(2), Matrix::identity(3)) == Matrix::identity(6));
    CHECK(kronecker(Matrix::diag({2, -2}), Matrix::diag({2, -2})) == Matrix::diag({4, -4, -4, 4}));
    Matrix e11{{1, 0}, {0, 0}}, e22{{0, 0}, {0, 1}};
    CHECK(rank(kronecker(e11, e22)) == 1);
    Rng rng(15);
    for (int t = 0; t < 100; ++t) {
        auto sz = [&] { return static_cast<std::size_t>(rng.range(1, 4)); };
        std::size_t a = sz(), b = sz(), c = sz(), d = sz(), e = sz(), f = sz();
        Matrix A = random_matrix(rng, a, b), C = random_matrix(rng, b, c);
        Matrix B = random_matrix(rng, d, e), D = random_matrix(rng, e, f);
        CHECK(kronecker(A, B) * kronecker(C, D) == kronecker(A * C, B * D));
    }
}
