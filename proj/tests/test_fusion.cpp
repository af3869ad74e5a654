// Copyright 2026 The hopfrep Authors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <hopfrep/fusion.hpp>

#include <filesystem>

using namespace hopfrep;

namespace {

std::multiset<std::string> result_tags(const FusionRecord& r) {
    std::multiset<std::string> s;
    for (auto& t : r.result) s.insert(t.str());
    return s;
}

}  // namespace

// Products of simple modules worked out by hand: on k(a) x k(b) the element g
// acts by ab; U(1,c) x U(1,d) has g^2 = 1 and y^2 = c + d, of rank 2 when
// c + d = 0. U(a,b) and U(-a,b) are the same module in another basis.
TEST_CASE("hand computed products") {
    Options opt;
    auto product_is = [&](const char* l, const char* r, std::vector<const char*> parts) {
        Module want = make(parts[0]);
        for (std::size_t i = 1; i < parts.size(); ++i) want = direct_sum(want, make(parts[i]));
        return are_isomorphic(tensor(make(l), make(r)), want, opt).verdict == Verdict::yes;
    };
    CHECK(product_is("k(a=2)", "k(a=-3)", {"k(a=-6)"}));
    CHECK(product_is("U(a=1,b=1)", "U(a=1,b=-1)", {"W(a=1)", "W(a=-1)"}));
    CHECK(product_is("U(a=1,b=1)", "U(a=1,b=2)", {"U(a=1,b=3)", "U(a=1,b=3)"}));
    CHECK(product_is("W(a=1)", "W(a=1)", {"W(a=1)", "W(a=-1)"}));
    CHECK(are_isomorphic(make("U(a=1,b=3)"), make("U(a=-1,b=3)"), opt).verdict == Verdict::yes);
    CHECK(result_tags(fuse(parse_tag("U(a=1,b=1)"), parse_tag("U(a=1,b=-1)"), opt)) ==
          std::multiset<std::string>{"W(a=1)", "W(a=-1)"});
}

TEST_CASE("products conserve dimension and grade") {
    Options opt;
    auto members = family_members({"k", "U", "W"}, {Scalar(1), Scalar(-2)});
    for (auto& l : members)
        for (auto& r : members) {
            FusionRecord rec = fuse(l, r, opt);
            INFO(l.str() << " x " << r.str());
            CHECK(rec.dim() == rec.left.dim * rec.right.dim);
            CHECK(rec.grading_ok);
            CHECK(rec.witness.certified);
        }
}

TEST_CASE("fusion table cells") {
    for (auto& c : verify_fusion_table({Scalar(1), Scalar(-1), Scalar(2)})) {
        INFO(c.cell << " " << c.instance << ": " << c.detail);
        CHECK(c.ok);
    }
}

TEST_CASE("Jordan block products") {
    // V(n) x V(m) splits into blocks of sizes n - m + 1, n - m + 3, ..., n + m - 1
    for (auto [n, m] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}, {3, 2}, {4, 3}}) {
        auto c = verify_V_formula(n, m);
        std::vector<std::size_t> want;
        for (std::size_t k = 1; k <= m; ++k) want.push_back(n - m + 2 * k - 1);
        CHECK(c.dims == want);
        CHECK(c.ok());
    }
}

TEST_CASE("duals, associativity and closure") {
    Options opt;
    CHECK(dual_compatible(parse_tag("U(a=1,b=2)"), parse_tag("W(a=-1)"), opt));
    CHECK(dual_compatible(parse_tag("k(a=2)"), parse_tag("U(a=1,b=1)"), opt));
    CHECK(associativity_spot_check(opt));
    CHECK(monoidal_closure({"k", "W"}, {Scalar(1), Scalar(-1)}, opt).closed());
    auto u = monoidal_closure({"U"}, {Scalar(1), Scalar(-1)}, opt);
    CHECK_FALSE(u.closed());
    for (auto& e : u.escapes) CHECK(e.find("-> W(") != std::string::npos);
    CHECK_THROWS(family_members({"L3_1"}, {Scalar(1)}));
}

TEST_CASE("super Jordan tensor products") {
    for (auto& item : super_jordan_tensors()) {
        INFO(item.label << ": " << item.detail);
        CHECK(item.ok);
    }
}

TEST_CASE("fusion store reuses records") {
    auto dir = std::filesystem::temp_directory_path() / "hopfrep_store_test";
    std::filesystem::remove_all(dir);
    FusionStore store(dir);
    Options opt{4};
    FamilyTag l = parse_tag("U(a=1,b=1)"), r = parse_tag("W(a=1)");
    bool hit = true;
    json first = store.get(l, r, opt, &hit);
    CHECK_FALSE(hit);
    json second = store.get(l, r, opt, &hit);
    CHECK(hit);
    CHECK(first == second);
    CHECK(first["seed"] == 4);
    CHECK(FusionStore::key(l, r, 4) != FusionStore::key(r, l, 4));
    std::filesystem::remove_all(dir);
}
