// Copyright 2026 The hopfrep Authors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <hopfrep/catalog.hpp>
#include <hopfrep/module.hpp>
#include <hopfrep/presentation.hpp>

using namespace hopfrep;

namespace {

// Modules used as a second opinion: an identity of the algebra must act by
// zero on each of them.
std::vector<Module> witnesses(const std::string& algebra) {
    if (algebra == "L") return {make("U(a=1,b=2)"), make("W(a=-1)"), tensor(make("U(a=2,b=1)"), make("W(a=1)"))};
    if (algebra == "K") {
        Module L31 = make("L3_1(a=1)"), L32 = make("L3_2(a=2)");
        return {L31, L32, tensor(L31, L32), inflate_L_to_K(make("U(a=1,b=-1)"))};
    }
    return {restrict_K_to_H(tensor(make("L3_1(a=1)"), make("L3_2(a=-1)"))), restrict_K_to_H(make("L3_1(a=2)"))};
}

bool holds_on(const std::vector<Module>& ms, const NcPoly& p) {
    for (auto& V : ms)
        if (!evaluate(V, p).is_zero()) return false;
    return true;
}

}  // namespace

TEST_CASE("hand identities reduce and act by zero") {
    struct Case {
        const char* algebra;
        const char* lhs;
        const char* rhs;
    };
    // derived by hand from the defining relations
    std::vector<Case> cases{
        {"L", "g y^2", "y^2 g"},
        {"L", "y^3 g", "-g y^3"},
        {"L", "g y ginv", "-y"},
        {"H", "g a2^2 ginv", "(a1 + a2)^2"},
        {"H", "g a1", "a1 g"},
        {"K", "g x21 ginv", "x21"},
        {"K", "x1 x21", "x21 x1"},
        {"K", "x2 x21", "x21 x2 + x1 x21"},
        {"K", "x1 x1", "0"},
    };
    for (auto& c : cases) {
        INFO(c.algebra << ": " << c.lhs << " == " << c.rhs);
        const Presentation& P = presentation(c.algebra);
        NcPoly l = parse_expr(P, c.lhs), r = parse_expr(P, c.rhs);
        CHECK(verify_identity(P, l, r).ok);
        CHECK(holds_on(witnesses(c.algebra), l - r));
    }
}

TEST_CASE("false identities are rejected both ways") {
    std::vector<std::pair<const char*, const char*>> cases{
        {"L", "g y - y g"}, {"K", "x1 x2 - x2 x1"}, {"K", "g x2 ginv - x2"}, {"H", "g a2 - a2 g"}};
    for (auto& [alg, expr] : cases) {
        INFO(alg << ": " << expr);
        const Presentation& P = presentation(alg);
        NcPoly p = parse_expr(P, expr);
        CHECK_FALSE(verify_identity(P, p, NcPoly()).ok);
        CHECK_FALSE(holds_on(witnesses(alg), p));
    }
}

TEST_CASE("identity lines and comments") {
    const Presentation& K = presentation("K");
    CHECK_FALSE(verify_identity_line(K, "   # only a comment").has_value());
    auto r = verify_identity_line(K, "x1^2 == 0  # nilpotent");
    REQUIRE(r.has_value());
    CHECK(r->ok);
    CHECK_THROWS(verify_identity_line(K, "x1 == "));
    CHECK_THROWS(parse_expr(K, "z1"));
}

TEST_CASE("identity suites pass up to n = 8") {
    for (const char* alg : {"L", "H", "Hbar", "K"}) {
        INFO(alg);
        auto res = identity_suite(presentation(alg), 8, default_identity_params());
        CHECK_FALSE(res.empty());
        for (auto& r : res) {
            INFO(r.label);
            CHECK(r.ok);
        }
    }
}

TEST_CASE("Hopf axioms and the maps between the algebras") {
    for (const char* alg : {"L", "H", "Hbar", "K"})
        for (auto& c : check_hopf_axioms(presentation(alg))) {
            INFO(alg << " " << c.axiom << " " << c.element);
            CHECK(c.ok);
        }
    const Presentation &H = presentation("H"), &K = presentation("K"), &L = presentation("L");
    for (auto& c : phi_map(H, K).check()) CHECK(c.ok);
    for (auto& c : pi_map(K, L).check()) CHECK(c.ok);
}

// The comultiplication is an algebra map exactly when tensor products of
// modules satisfy the relations again.
TEST_CASE("tensor products of modules are modules") {
    for (const char* alg : {"L", "K"}) {
        auto ms = witnesses(alg);
        for (auto& V : ms)
            for (auto& W : ms) {
                if (V.dim * W.dim > 40) continue;
                CHECK(certify(tensor(V, W)).ok);
            }
    }
    auto hs = witnesses("H");
    CHECK(certify(tensor(hs[1], hs[1])).ok);
}
