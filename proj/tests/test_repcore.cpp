// Copyright 2026 The hopfrep Authors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <hopfrep/catalog.hpp>
#include <hopfrep/io.hpp>
#include <hopfrep/module.hpp>

using namespace hopfrep;

namespace {

Matrix diag(std::initializer_list<long> xs) {
    Matrix m(xs.size(), xs.size());
    std::size_t i = 0;
    for (long x : xs) m(i, i) = Scalar(x), ++i;
    return m;
}

Matrix mat(std::size_t n, std::initializer_list<long> xs) {
    Matrix m(n, n);
    std::size_t k = 0;
    for (long x : xs) m(k / n, k % n) = Scalar(x), ++k;
    return m;
}

// x(v (x) w) = xv (x) w + gv (x) xw entry by entry, with v (x) w at index i*dim W + j.
Matrix skew_primitive_on_tensor(const Matrix& Xv, const Matrix& Gv, const Matrix& Xw) {
    std::size_t n = Xv.rows(), m = Xw.rows();
    Matrix T(n * m, n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < m; ++l) {
                    Scalar s = (j == l ? Xv(k, i) : Scalar(0)) + Gv(k, i) * Xw(l, j);
                    T(k * m + l, i * m + j) = s;
                }
    return T;
}

}  // namespace

TEST_CASE("certification names the broken relation") {
    // g y + y g = 0 fails for y commuting with g
    Module V;
    V.algebra = "L";
    V.dim = 2;
    V.action = {{"g", diag({1, -1})}, {"y", diag({1, 1})}};
    Certificate c = certify(V);
    CHECK_FALSE(c.ok);
    REQUIRE(c.violations.size() == 1);
    CHECK(c.violations[0].relation == "gy+yg");
    CHECK_THROWS_AS(certified(V), CertificationError);

    Module K;
    K.algebra = "K";
    K.dim = 2;
    K.action = {{"g", diag({1, -1})}, {"x1", mat(2, {0, 1, 1, 0})}, {"x2", Matrix(2, 2)}};
    Certificate ck = certify(K);
    CHECK_FALSE(ck.ok);
    CHECK(std::find(ck.block_constraints.begin(), ck.block_constraints.end(), "CD=0") != ck.block_constraints.end());

    Module sing = V;
    sing.action = {{"g", Matrix(2, 2)}, {"y", Matrix(2, 2)}};
    CHECK_FALSE(certify(sing).ok);
    Module missing = V;
    missing.action.erase("y");
    CHECK_FALSE(certify(missing).ok);
}

TEST_CASE("json round trip") {
    for (const char* tag : {"U(a=1,b=2)", "W(a=-1/2)", "L3_2(a=2)", "F(j=1,n=4,a=1)"}) {
        Module V = make(tag);
        json j = to_json(V);
        Module W = module_from_json(json::parse(j.dump()));
        CHECK(W.action == V.action);
        CHECK(W.algebra == V.algebra);
    }
    Module E = make(make_tag("U", {{"a", Scalar(1)}, {"b", Scalar(1) + Scalar::sqrt_d(2)}}));
    Module E2 = module_from_json(to_json(E));
    CHECK(E2.field == E.field);
    CHECK(E2.action == E.action);
    CHECK_THROWS(module_from_json(json::parse(R"({"algebra":"L","dim":1})")));
    CHECK_THROWS(module_from_json(json::parse(R"({"algebra":"Q","dim":1,"action":{}})")));
}

TEST_CASE("tensor action follows the coproduct") {
    Module V = make("U(a=2,b=3)"), W = make("W(a=-1)");
    Module T = tensor(V, W);
    CHECK(T.dim == 4);
    CHECK(T.at("g") == kronecker(V.at("g"), W.at("g")));
    CHECK(T.at("y") == skew_primitive_on_tensor(V.at("y"), V.at("g"), W.at("y")));

    Module A = make("L3_1(a=1)"), B = make("L3_2(a=-1)");
    Module AB = tensor(A, B);
    for (const char* x : {"x1", "x2"}) CHECK(AB.at(x) == skew_primitive_on_tensor(A.at(x), A.at("g"), B.at(x)));
}

// The evaluation map V* (x) V -> k is a module map exactly when the dual
// action uses the antipode.
TEST_CASE("dual pairs with evaluation") {
    for (const char* tag : {"U(a=2,b=3)", "W(a=1)", "L3_1(a=2)", "E(j=1,n=3,a=1)"}) {
        Module V = make(tag), D = dual(V);
        INFO(tag);
        CHECK(D.at("g").transpose() * V.at("g") == Matrix::identity(V.dim));
        for (auto& x : stored_generators(V.algebra)) {
            if (x == "g") continue;
            CHECK((D.at(x).transpose() + D.at("g").transpose() * V.at(x)).is_zero());
        }
        Module DD = dual(D);
        CHECK(DD.dim == V.dim);
    }
}

TEST_CASE("inflation, deflation and restriction") {
    Module U = make("U(a=1,b=-2)");
    Module K = inflate_L_to_K(U);
    CHECK(K.at("x1").is_zero());
    Module back = deflate_K_to_L(K);
    CHECK(back.action == U.action);
    CHECK_THROWS_AS(deflate_K_to_L(make("L3_1(a=1)")), MathError);

    Module L = make("L3_2(a=2)");
    Module H = restrict_K_to_H(L);
    Matrix x21 = L.at("x1") * L.at("x2") + L.at("x2") * L.at("x1");
    CHECK(H.at("a1") == x21);
    CHECK(H.at("g") == L.at("g") * L.at("g"));
    CHECK(H.at("a2") == L.at("x2") * L.at("x2") * Scalar(-1, 2));
}

TEST_CASE("x1 homology dimensions") {
    for (const char* tag : {"L3_1(a=1)", "L3_2(a=2)", "Ln_1(n=4,a=1,b=1)", "Ln_2(n=5,a=-1,b=0)"}) {
        Module V = make(tag);
        INFO(tag);
        Homology h = x1_homology(V);
        std::size_t r = rank(V.at("x1"));
        CHECK(h.ig.dim == r);
        CHECK(h.kg.dim == V.dim - r);
        CHECK(h.hg.dim == V.dim - 2 * r);
    }
    CHECK_THROWS(x1_homology(make("U(a=1,b=1)")));
}

TEST_CASE("g^2 grading splits modules") {
    Module S = direct_sum(make("U(a=1,b=1)"), make("U(a=2,b=1)"));
    GradingReport r = g2_grading(S);
    CHECK(r.blocks.size() == 2);
    CHECK(grading_is_module_decomposition(S, r));
    std::size_t total = 0;
    for (auto& b : r.blocks) total += b.dim;
    CHECK(total == S.dim);
    CHECK(g2_grading(make("L3_1(a=1)")).blocks.size() == 1);
}

TEST_CASE("quadratic field change") {
    // g semisimple with eigenvalues 1, -1 and DC with characteristic polynomial x^2 - 2x + 2
    Matrix g = diag({1, 1, -1, -1});
    Matrix y(4, 4);
    y(0, 2) = Scalar(-1), y(1, 3) = Scalar(-1);
    y(2, 0) = Scalar(-2), y(2, 1) = Scalar(-1), y(3, 0) = Scalar(2);
    Module V = make_module("L", {{"g", g}, {"y", y}});
    auto d = quadratic_splitting_d(V);
    REQUIRE(d.has_value());
    CHECK(*d == -1);
    Module W = with_field(V, make_field(*d));
    CHECK(W.field.d == -1);
    CHECK(W.action == V.action);
    CHECK(quadratic_splitting_d(make("U(a=1,b=4)")) == std::optional<long>(0));
    CHECK(detail::squarefree_part(mpz_class(72)) == std::optional<long>(2));
    CHECK(detail::squarefree_part(mpz_class(-12)) == std::optional<long>(-3));
}
