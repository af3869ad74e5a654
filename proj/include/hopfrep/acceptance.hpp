// Copyright 2026 The hopfrep Authors.
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance suite. Each criterion yields one report line; the
// line text depends only on the seed, timings go to a separate channel.

#ifndef HOPFREP_ACCEPTANCE_HPP
#define HOPFREP_ACCEPTANCE_HPP

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "catalog.hpp"
#include "fusion.hpp"

namespace hopfrep {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool ok = false;
    std::string summary;
    std::vector<std::string> failures;  // full list, for the json report
    double seconds = 0;
    double limit = 0;

    std::string line() const {
        return std::string(ok ? "PASS" : "FAIL") + " " + std::to_string(id) + " " + title + ": " + summary;
    }
};

inline json to_json(const CriterionResult& c) {
    return json{{"id", c.id}, {"title", c.title}, {"ok", c.ok}, {"summary", c.summary}, {"failures", c.failures}};
}

namespace detail {

inline Scalar pick(Rng& rng, const std::vector<Scalar>& xs) {
    return xs[static_cast<std::size_t>(rng.range(0, static_cast<long>(xs.size()) - 1))];
}

// Solutions X (rows of P by rows of Q) of P X + X Q = 0.
inline std::vector<Matrix> anticommutant(const Matrix& P, const Matrix& Q) {
    const std::size_t r = P.rows(), c = Q.rows();
    Matrix M = kronecker(P, Matrix::identity(c)) + kronecker(Matrix::identity(r), Q.transpose());
    std::vector<Matrix> out;
    for (auto& v : kernel(M)) {
        Matrix X(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) X(i, j) = v[i * c + j];
        out.push_back(std::move(X));
    }
    return out;
}

// Each coefficient vanishes with probability one half, so degenerate
// configurations come up often.
inline Matrix sparse_combination(Rng& rng, const std::vector<Matrix>& basis, std::size_t r, std::size_t c) {
    Matrix X(r, c);
    for (auto& b : basis) {
        if (rng.range(0, 1) == 0) continue;
        long k = rng.range(1, 4);
        X += b * Scalar(k <= 2 ? k : 2 - k);
    }
    return X;
}

inline Module lmod(const Matrix& A, const Matrix& B, const Matrix& C, const Matrix& D) {
    return make_module("L", {{"g", direct_sum(A, B)}, {"y", offdiag(C, D)}});
}

inline Module scramble(Rng& rng, const Module& V) { return conjugate(V, random_invertible(rng, V.dim)); }

// Random L-module: g a sum of Jordan blocks with eigenvalues in {a, -a} and
// sometimes a second pair, y a sparse solution of gy + yg = 0.
inline Module random_L_module(Rng& rng, std::size_t d, const std::vector<Scalar>& grid) {
    Scalar a = pick(rng, grid), a2 = a;
    bool two_pairs = d >= 3 && rng.range(0, 3) == 0;
    if (two_pairs)
        while (a2 * a2 == a * a) a2 = pick(rng, grid);
    Matrix g(0, 0);
    std::size_t left = d;
    while (left > 0) {
        auto s = static_cast<std::size_t>(rng.range(1, static_cast<long>(std::min<std::size_t>(left, 3))));
        Scalar e = two_pairs && rng.range(0, 2) == 0 ? a2 : a;
        if (rng.range(0, 1)) e = -e;
        g = g.rows() == 0 ? Matrix::jordan(s, e) : direct_sum(g, Matrix::jordan(s, e));
        left -= s;
    }
    Matrix y = sparse_combination(rng, anticommutant(g, g), d, d);
    return scramble(rng, make_module("L", {{"g", g}, {"y", y}}));
}

inline std::string count_str(std::size_t good, std::size_t total) {
    return std::to_string(good) + "/" + std::to_string(total);
}

// Up to `cap` distinct failure labels, in first-seen order.
inline std::string first_failures(const std::vector<std::string>& f, std::size_t cap = 3) {
    std::string s;
    for (std::size_t i = 0; i < f.size() && i < cap; ++i) s += (i ? "; " : "") + f[i];
    if (f.size() > cap) s += "; ...";
    return s;
}

inline std::vector<FamilyTag> roundtrip_tags(const std::vector<Scalar>& grid) {
    auto S = [](long n) { return Scalar(n); };
    std::vector<FamilyTag> tags;
    const std::vector<Scalar> cs{Scalar(1), Scalar(-2)};
    for (auto& a : grid) {
        tags.push_back(make_tag("k", {{"a", a}}));
        tags.push_back(make_tag("W", {{"a", a}}));
        for (long n = 1; n <= 5; ++n) tags.push_back(make_tag("V", {{"n", S(n)}, {"a", a}}));
        tags.push_back(make_tag("C", {{"n", S(3)}, {"a", a}}));
        for (auto f : {"D1", "D3", "D4"}) tags.push_back(make_tag(f, {{"a", a}}));
        for (long n = 3; n <= 5; ++n)
            for (auto f : {"E1", "E2"}) tags.push_back(make_tag(f, {{"n", S(n)}, {"a", a}}));
        for (long n = 4; n <= 5; ++n) {
            for (auto f : {"F1", "F2", "F3", "G", "H1", "H2"}) tags.push_back(make_tag(f, {{"n", S(n)}, {"a", a}}));
            for (long i = 1; i <= n - 3; ++i) tags.push_back(make_tag("F4", {{"i", S(i)}, {"n", S(n)}, {"a", a}}));
        }
        tags.push_back(make_tag("I", {{"n", S(5)}, {"a", a}}));
        for (auto& b : grid) {
            tags.push_back(make_tag("U", {{"a", a}, {"b", b}}));
            tags.push_back(make_tag("D2", {{"a", a}, {"b", b}}));
            for (long n = 3; n <= 5; ++n) tags.push_back(make_tag("E3", {{"n", S(n)}, {"a", a}, {"b", b}}));
            for (long n = 4; n <= 5; ++n) tags.push_back(make_tag("H3", {{"n", S(n)}, {"a", a}, {"b", b}}));
            for (auto& c : cs)
                for (long n = 4; n <= 5; ++n) {
                    for (auto f : {"F5", "F7"})
                        tags.push_back(make_tag(f, {{"n", S(n)}, {"a", a}, {"b", b}, {"c", c}}));
                    for (long i = 1; i <= n - 3; ++i)
                        for (auto f : {"F6", "F8"})
                            tags.push_back(make_tag(f, {{"i", S(i)}, {"n", S(n)}, {"a", a}, {"b", b}, {"c", c}}));
                }
        }
    }
    return tags;
}

}  // namespace detail

// ------------------------------------------------------------- criteria

inline CriterionResult criterion_identities() {
    CriterionResult r{1, "identity suite"};
    r.limit = 30;
    std::size_t total = 0;
    for (auto name : {"L", "H", "K"}) {
        for (auto& res : identity_suite(presentation(name), 8, default_identity_params())) {
            ++total;
            if (!res.ok) r.failures.push_back(std::string(name) + ": " + res.label);
        }
    }
    r.ok = r.failures.empty();
    r.summary = detail::count_str(total - r.failures.size(), total) + " identities in L, H, K reduce to 0";
    return r;
}

inline CriterionResult criterion_hopf() {
    CriterionResult r{2, "Hopf axioms and algebra maps"};
    r.limit = 5;
    std::size_t total = 0;
    for (auto name : {"L", "H", "K"})
        for (auto& c : check_hopf_axioms(presentation(name))) {
            ++total;
            if (!c.ok) r.failures.push_back(std::string(name) + ": " + c.axiom + " on " + c.element);
        }
    const auto &H = presentation("H"), &K = presentation("K"), &L = presentation("L");
    std::size_t maps = 0;
    for (auto& [label, m] : {std::pair{"phi", phi_map(H, K)}, std::pair{"pi", pi_map(K, L)}})
        for (auto& c : m.check()) {
            ++maps;
            if (!c.ok) r.failures.push_back(std::string(label) + " does not kill " + c.element);
        }
    r.ok = r.failures.empty();
    r.summary = std::to_string(total) + " axiom checks, " + std::to_string(maps) + " relation images, " +
                std::to_string(r.failures.size()) + " failures";
    return r;
}

inline CriterionResult criterion_simples(const Options& opt) {
    CriterionResult r{3, "simple L-modules"};
    r.limit = 60;
    auto S = [](long p, long q = 1) { return Scalar(p, q); };
    const std::vector<Scalar> grid{S(1), S(-1), S(2), S(-2), S(1, 2), S(3)};
    auto U = [](const Scalar& a, const Scalar& b) { return make(make_tag("U", {{"a", a}, {"b", b}})); };
    std::size_t simple_ok = 0, iso_ok = 0, iso_total = 0;
    for (auto& a : grid)
        for (auto& b : grid) {
            Module Uab = U(a, b);
            if (is_simple(Uab, opt).simple) ++simple_ok;
            else r.failures.push_back("U(a=" + a.str() + ",b=" + b.str() + ") not simple");
            for (auto& c : grid) {
                ++iso_total;
                // y^2 acts by the scalar b on U(a,b), so b is an invariant
                bool want = b == c;
                if (isomorphic(Uab, U(a, c), opt) == want) ++iso_ok;
                else r.failures.push_back("U(a,b) vs U(a,c) at a=" + a.str() + ",b=" + b.str() + ",c=" + c.str());
            }
        }
    Rng rng = Rng(opt.seed).fork("simples");
    std::size_t found = 0, matched = 0;
    for (int k = 0; k < 200; ++k) {
        Module V = detail::random_L_module(rng, static_cast<std::size_t>(2 + k % 4), grid);
        for (auto& p : decompose(V, opt).parts) {
            const Module& M = p.module;
            if (M.dim > 4 || !is_simple(M, opt).simple) continue;
            ++found;
            bool ok = false;
            if (M.dim == 1) {
                ok = isomorphic(M, make(make_tag("k", {{"a", M.at("g")(0, 0)}})), opt);
            } else if (M.dim == 2) {
                Matrix y2 = M.at("y") * M.at("y");
                Scalar b = y2(0, 0);
                auto roots = field_roots(charpoly(M.at("g")), M.field);
                ok = !roots.empty() && y2 == Matrix::identity(2) * b && !b.is_zero() && isomorphic(M, U(roots[0], b), opt);
            }
            if (ok) ++matched;
            else r.failures.push_back("random simple of dim " + std::to_string(M.dim) + " is neither k nor U");
        }
    }
    r.ok = r.failures.empty();
    r.summary = detail::count_str(simple_ok, grid.size() * grid.size()) + " U(a,b) simple, " +
                detail::count_str(iso_ok, iso_total) + " U(a,b) vs U(a,c) verdicts, " +
                detail::count_str(matched, found) + " random simples are k or U";
    return r;
}

// One lemma instance: the lemma's own criterion against is_indecomposable.
struct LemmaCase {
    std::string lemma;
    std::string instance;
    bool expected = false;
    bool got = false;
};

inline std::vector<LemmaCase> indecomposability_cases(const Options& opt, int samples = 16) {
    std::vector<LemmaCase> out;
    auto S = [](long p, long q = 1) { return Scalar(p, q); };
    const std::vector<Scalar> grid{S(1), S(-1), S(2), S(-2), S(1, 2), S(3)};
    Rng rng = Rng(opt.seed).fork("lemmas");
    auto add = [&](const std::string& lemma, const std::string& inst, bool expected, const Module& V) {
        out.push_back({lemma, inst, expected, is_indecomposable(detail::scramble(rng, V), opt)});
    };
    auto tagmod = [](const std::string& f, std::map<std::string, Scalar> p) { return make(make_tag(f, std::move(p))); };
    auto iso = [&](const Module& V, const Module& W) { return isomorphic(V, W, opt); };
    auto dims = [](std::size_t l, std::size_t p) { return "l=" + std::to_string(l) + ",p=" + std::to_string(p); };

    // g semisimple, one of y_a, y_-a zero
    {
        const std::string lemma = "g semisimple with y_a or y_-a zero";
        for (auto [l, p] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 1}, {1, 2}, {2, 2}, {3, 2}, {3, 3}})
            for (int s = 0; s < samples; ++s) {
                Scalar a = detail::pick(rng, grid);
                Matrix A = detail::scalar_id(l, a), B = detail::scalar_id(p, -a);
                Matrix C = detail::sparse_combination(rng, detail::anticommutant(A, B), l, p);
                Matrix D = detail::sparse_combination(rng, detail::anticommutant(B, A), p, l);
                if (s % 2) C = Matrix(l, p);
                else D = Matrix(p, l);
                add(lemma, dims(l, p), false, detail::lmod(A, B, C, D));
            }
    }
    // g semisimple, l = n-1
    {
        const std::string lemma = "g semisimple with l = n-1";
        for (std::size_t n = 3; n <= 6; ++n)
            for (int s = 0; s < samples; ++s) {
                std::size_t l = n - 1;
                Scalar a = detail::pick(rng, grid);
                Matrix A = detail::scalar_id(l, a), B = detail::scalar_id(1, -a);
                Matrix C = detail::sparse_combination(rng, detail::anticommutant(A, B), l, 1);
                Matrix D = detail::sparse_combination(rng, detail::anticommutant(B, A), 1, l);
                bool want = !C.is_zero() && !D.is_zero() && (D * C).is_zero() && n == 3;
                add(lemma, "n=" + std::to_string(n), want, detail::lmod(A, B, C, D));
            }
        for (long n = 3; n <= 7; ++n)
            add(lemma, "C(n=" + std::to_string(n) + ")", n == 3, tagmod("C", {{"n", S(n)}, {"a", S(2)}}));
    }
    // g semisimple, p = 2
    {
        const std::string lemma = "g semisimple with p = 2";
        for (std::size_t n = 4; n <= 7; ++n)
            for (int s = 0; s < samples; ++s) {
                std::size_t l = n - 2;
                Scalar a = detail::pick(rng, grid);
                Matrix A = detail::scalar_id(l, a), B = detail::scalar_id(2, -a);
                Matrix C = detail::sparse_combination(rng, detail::anticommutant(A, B), l, 2);
                Matrix D = detail::sparse_combination(rng, detail::anticommutant(B, A), 2, l);
                Module V = detail::lmod(A, B, C, D);
                bool want = false;
                if (n == 4) {
                    // the normal forms assume the eigenvalues of DC are in the field
                    if (auto d = quadratic_splitting_d(V); d && *d != 0) V = with_field(V, make_field(*d));
                    auto in = [&](const std::string& f, std::map<std::string, Scalar> p) {
                        return make(make_tag(f, std::move(p)), V.field);
                    };
                    want = iso(V, in("D1", {{"a", a}})) || iso(V, in("D3", {{"a", a}}));
                    for (auto& b : field_roots(charpoly(D * C), V.field))
                        if (!b.is_zero() && iso(V, in("D2", {{"a", a}, {"b", b}}))) want = true;
                } else if (n == 5) {
                    want = iso(V, tagmod("D4", {{"a", a}}));
                }
                add(lemma, "n=" + std::to_string(n), want, V);
            }
        // the n = 5 pattern continued to n = 6, 7
        for (std::size_t l : {4u, 5u}) {
            Matrix A = detail::scalar_id(l, S(1)), B = detail::scalar_id(2, S(-1));
            Matrix C = hconcat(detail::ecol(l, 1), detail::ecol(l, 2));
            Matrix D = detail::vconcat(detail::erow(l, 2), detail::erow(l, 3));
            add(lemma, "extended D4 pattern n=" + std::to_string(l + 2), false, detail::lmod(A, B, C, D));
            Matrix D2 = detail::vconcat(detail::erow(l, 2) + detail::erow(l, l), detail::erow(l, 3));
            add(lemma, "extended D4 pattern with tail n=" + std::to_string(l + 2), false, detail::lmod(A, B, C, D2));
        }
    }
    // A and B Jordan blocks
    {
        const std::string lemma = "A and B Jordan blocks";
        for (auto [l, p] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}, {2, 1}, {2, 2}, {3, 2}, {3, 3}, {4, 2}})
            for (int s = 0; s < samples; ++s) {
                Scalar a = detail::pick(rng, grid);
                Matrix A = Matrix::jordan(l, a), B = Matrix::jordan(p, -a);
                Matrix C = detail::sparse_combination(rng, detail::anticommutant(A, B), l, p);
                Matrix D = detail::sparse_combination(rng, detail::anticommutant(B, A), p, l);
                add(lemma, dims(l, p), !C.is_zero() || !D.is_zero(), detail::lmod(A, B, C, D));
            }
    }
    // A a Jordan block, B = -a; indecomposables match the E normal forms
    {
        const std::string lemma = "A a Jordan block, B = -a";
        for (std::size_t n = 3; n <= 6; ++n)
            for (int s = 0; s < samples; ++s) {
                std::size_t l = n - 1;
                Scalar a = detail::pick(rng, grid);
                Matrix A = Matrix::jordan(l, a), B = detail::scalar_id(1, -a);
                Matrix C = detail::sparse_combination(rng, detail::anticommutant(A, B), l, 1);
                Matrix D = detail::sparse_combination(rng, detail::anticommutant(B, A), 1, l);
                Module V = detail::lmod(A, B, C, D);
                bool want = !C.is_zero() || !D.is_zero();
                if (want) {
                    Scalar b = C(0, 0), c = D(0, l - 1);
                    auto nn = S(static_cast<long>(n));
                    Module E = c.is_zero()   ? tagmod("E1", {{"n", nn}, {"a", a}})
                               : b.is_zero() ? tagmod("E2", {{"n", nn}, {"a", a}})
                                             : tagmod("E3", {{"n", nn}, {"a", a}, {"b", b * c}});
                    out.push_back({lemma, "normal form n=" + std::to_string(n), true, iso(V, E)});
                }
                add(lemma, "n=" + std::to_string(n), want, V);
            }
    }
    // A a Jordan block, B a Jordan block of size 2
    {
        const std::string lemma = "A a Jordan block, B of size 2";
        for (std::size_t n = 4; n <= 6; ++n) {
            std::size_t l = n - 2;
            for (int s = 0; s < samples; ++s) {
                Scalar a = detail::pick(rng, grid);
                Matrix A = Matrix::jordan(l, a), B = Matrix::jordan(2, -a);
                Matrix C = detail::sparse_combination(rng, detail::anticommutant(A, B), l, 2);
                Matrix D = detail::sparse_combination(rng, detail::anticommutant(B, A), 2, l);
                add(lemma, "n=" + std::to_string(n), !C.is_zero() || !D.is_zero(), detail::lmod(A, B, C, D));
            }
            // every displayed F4 with i in 1..l-1 should be a module
            for (std::size_t i = 1; i + 1 <= l; ++i) {
                FamilyTag t = make_tag("F4", {{"i", S(static_cast<long>(i))}, {"n", S(static_cast<long>(n))}, {"a", S(1)}});
                bool module = certify(detail::raw_module(t, {})).ok;
                out.push_back({lemma, "displayed " + t.str() + " satisfies gy + yg = 0", true, module});
            }
        }
    }
    // A a Jordan block, B = -a Id_p with l, p >= 2
    {
        const std::string lemma = "A a Jordan block, B = -a Id_p";
        for (auto [l, p] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}, {3, 2}, {4, 2}, {2, 3}, {3, 3}, {2, 4}})
            for (int s = 0; s < samples; ++s) {
                Scalar a = detail::pick(rng, grid);
                Matrix A = Matrix::jordan(l, a), B = detail::scalar_id(p, -a);
                Matrix C = detail::sparse_combination(rng, detail::anticommutant(A, B), l, p);
                Matrix D = detail::sparse_combination(rng, detail::anticommutant(B, A), p, l);
                Module V = detail::lmod(A, B, C, D);
                bool want = p == 2 && iso(V, tagmod("G", {{"n", S(static_cast<long>(l + 2))}, {"a", a}}));
                add(lemma, dims(l, p), want, V);
            }
        for (long n = 4; n <= 7; ++n) add(lemma, "G(n=" + std::to_string(n) + ")", true, tagmod("G", {{"n", S(n)}, {"a", S(-2)}}));
    }
    // A a Jordan block plus a line, B = -a
    {
        const std::string lemma = "A a Jordan block plus a line";
        for (std::size_t n = 4; n <= 6; ++n) {
            std::size_t l = n - 1;
            for (int s = 0; s < samples; ++s) {
                Scalar a = detail::pick(rng, grid);
                Matrix A = direct_sum(Matrix::jordan(n - 2, a), detail::scalar_id(1, a)), B = detail::scalar_id(1, -a);
                Matrix C = detail::sparse_combination(rng, detail::anticommutant(A, B), l, 1);
                Matrix D = detail::sparse_combination(rng, detail::anticommutant(B, A), 1, l);
                // C = b e_1 + c e_(n-1), D = d e_(n-2)^t + f e_(n-1)^t. When cf != 0
                // the span of e_n and y e_n splits off with complement ker D.
                Scalar b = C(0, 0), c = C(l - 1, 0), d = D(0, l - 2), f = D(0, l - 1);
                bool stated = !(b * f).is_zero() || !(c * d).is_zero();
                Module V = detail::lmod(A, B, C, D);
                add(lemma, "n=" + std::to_string(n) + " as stated", stated, V);
                add(lemma, "n=" + std::to_string(n) + " with cf = 0 added", stated && (c * f).is_zero(), V);
            }
            auto nn = S(static_cast<long>(n));
            add(lemma, "H1(n=" + std::to_string(n) + ")", true, tagmod("H1", {{"n", nn}, {"a", S(1)}}));
            add(lemma, "H2(n=" + std::to_string(n) + ")", true, tagmod("H2", {{"n", nn}, {"a", S(1)}}));
            // listed as indecomposable alongside H1 and H2
            add(lemma, "H3(n=" + std::to_string(n) + ",b=2)", true, tagmod("H3", {{"n", nn}, {"a", S(1)}, {"b", S(2)}}));
        }
    }
    // A a sum of t Jordan blocks of size r, B = -a
    {
        const std::string lemma = "A with t equal Jordan blocks, p = 1";
        for (auto [r, t] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}, {3, 2}, {2, 3}})
            for (int s = 0; s < samples; ++s) {
                std::size_t l = r * t;
                Scalar a = detail::pick(rng, grid);
                Matrix A = Matrix::jordan(r, a);
                for (std::size_t k = 1; k < t; ++k) A = direct_sum(A, Matrix::jordan(r, a));
                Matrix B = detail::scalar_id(1, -a);
                Matrix C = detail::sparse_combination(rng, detail::anticommutant(A, B), l, 1);
                Matrix D = detail::sparse_combination(rng, detail::anticommutant(B, A), 1, l);
                // for r >= 2 the product y_a y_-a always vanishes; the relevant
                // pairing is y_a on the top w_1 = sum c_j e_(jr) of the block generated by C
                Scalar pairing(0);
                for (std::size_t j = 0; j < t; ++j) pairing += C(j * r, 0) * D(0, j * r + r - 1);
                bool nonzero = !C.is_zero() && !D.is_zero() && t == 2;
                Module V = detail::lmod(A, B, C, D);
                std::string inst = "r=" + std::to_string(r) + ",t=" + std::to_string(t);
                add(lemma, inst + " as stated", nonzero && (D * C).is_zero(), V);
                add(lemma, inst + " with y_a(w_1) = 0", nonzero && pairing.is_zero(), V);
            }
        for (long n : {5L, 7L}) add(lemma, "I(n=" + std::to_string(n) + ")", true, tagmod("I", {{"n", S(n)}, {"a", S(3)}}));
    }
    return out;
}

inline CriterionResult criterion_indecomposability(const Options& opt) {
    CriterionResult r{4, "indecomposability lemmas"};
    r.limit = 120;
    auto cases = indecomposability_cases(opt);
    std::map<std::string, std::pair<std::size_t, std::size_t>> per;  // lemma -> (agree, total)
    std::vector<std::string> order;
    std::set<std::string> seen_fail;
    for (auto& c : cases) {
        if (!per.count(c.lemma)) order.push_back(c.lemma);
        auto& [ok, tot] = per[c.lemma];
        ++tot;
        if (c.expected == c.got) {
            ++ok;
            continue;
        }
        std::string f = c.lemma + ": " + c.instance + " expected " + (c.expected ? "true" : "false");
        if (seen_fail.insert(f).second) r.failures.push_back(f);
    }
    std::size_t good = 0;
    for (auto& [k, v] : per) good += v.first;
    r.ok = r.failures.empty();
    r.summary = detail::count_str(good, cases.size()) + " instances agree over " + std::to_string(per.size()) + " lemmas";
    if (!r.ok) {
        r.summary += "; disagreements:";
        for (auto& l : order)
            if (per[l].first != per[l].second)
                r.summary += " [" + l + ": " + std::to_string(per[l].second - per[l].first) + "]";
    }
    return r;
}

inline CriterionResult criterion_roundtrip(const Options& opt) {
    CriterionResult r{5, "classification round trip"};
    r.limit = 300;
    auto S = [](long p, long q = 1) { return Scalar(p, q); };
    const std::vector<Scalar> grid{S(1), S(-1), S(2), S(-2), S(1, 2), S(3)};
    Rng rng = Rng(opt.seed).fork("roundtrip");
    auto tags = detail::roundtrip_tags(grid);
    std::size_t good = 0;
    std::map<std::string, std::size_t> bad_by_kind;
    for (auto& t : tags) {
        std::string why;
        try {
            Module M = make(t);
            auto got = classify_L(detail::scramble(rng, M), opt);
            if (got.size() != 1) why = "splits into " + std::to_string(got.size()) + " summands";
            else if (got[0].unclassified()) why = "unclassified";
            else if (!isomorphic(make(got[0]), M, opt)) why = "recovered " + got[0].str();
        } catch (const std::exception& e) {
            why = e.what();
        }
        if (why.empty()) {
            ++good;
            continue;
        }
        r.failures.push_back(t.str() + ": " + why);
        ++bad_by_kind[t.family + (why.rfind("splits", 0) == 0 ? " splits" : " cannot be built")];
    }
    std::size_t unclassified = 0, widened = 0, randoms = 0;
    for (std::size_t d = 2; d <= 5; ++d)
        for (int k = 0; k < 200; ++k) {
            ++randoms;
            Module V = detail::random_L_module(rng, d, grid);
            for (auto& part : decompose(V, opt).parts) {
                auto ts = classify_L(part.module, opt);
                if (!ts[0].unclassified()) continue;
                // retry over the field where g and y^2 split
                if (auto e = quadratic_splitting_d(part.module); e && *e != 0) {
                    auto wide = classify_L(with_field(part.module, make_field(*e)), opt);
                    if (std::none_of(wide.begin(), wide.end(), [](auto& t) { return t.unclassified(); })) {
                        ++widened;
                        continue;
                    }
                }
                ++unclassified;
                bool local = detail::residue_dim(end_space(part.module).basis) == 1;
                r.failures.push_back("random dim " + std::to_string(d) + " summand " + ts[0].str() + " [" + ts[0].profile +
                                     "]" + (local ? " End local" : " End not local"));
            }
        }
    std::size_t coinc = 0, coinc_ok = 0;
    for (auto& c : catalog_identities(opt)) {
        if (c.label[0] != 'F' && c.label[0] != 'D') continue;
        ++coinc;
        if (c.ok()) ++coinc_ok;
        else r.failures.push_back(c.label + ": " + c.reason);
    }
    r.ok = r.failures.empty();
    r.summary = detail::count_str(good, tags.size()) + " catalog tags recovered, " + std::to_string(unclassified) +
                " unclassified summands in " + std::to_string(randoms) + " random modules (" + std::to_string(widened) +
                " more classified after a quadratic extension), " +
                detail::count_str(coinc_ok, coinc) + " dimension-4 coincidences";
    if (!bad_by_kind.empty()) {
        r.summary += "; failing:";
        for (auto& [k, v] : bad_by_kind) r.summary += " " + k + " x" + std::to_string(v);
    }
    return r;
}

inline CriterionResult criterion_fusion(const Options& opt) {
    CriterionResult r{6, "fusion table and V formula"};
    r.limit = 180;
    auto S = [](long p, long q = 1) { return Scalar(p, q); };
    auto cells = verify_fusion_table({S(1), S(-1), S(2), S(-2), S(1, 2)}, opt);
    std::size_t cells_ok = 0;
    for (auto& c : cells) {
        if (c.ok) ++cells_ok;
        else r.failures.push_back(c.cell + " at " + c.instance + ": " + c.detail);
    }
    std::size_t v_ok = 0, v_total = 0;
    for (std::size_t n = 2; n <= 5; ++n)
        for (std::size_t m = 2; m <= n; ++m) {
            ++v_total;
            if (verify_V_formula(n, m, opt).ok()) ++v_ok;
            else r.failures.push_back("V(" + std::to_string(n) + ") x V(" + std::to_string(m) + ")");
        }
    bool assoc = associativity_spot_check(opt);
    if (!assoc) r.failures.push_back("associativity spot check");
    r.ok = r.failures.empty();
    r.summary = detail::count_str(cells_ok, cells.size()) + " table cells, " + detail::count_str(v_ok, v_total) +
                " V(n) x V(m) decompositions, associativity " + (assoc ? "holds" : "fails");
    return r;
}

// Every two-dimensional H-module has a1 = 0. The trace of
// a2 a1^n - a1^n a2 = -n/2 a1^(n+1) vanishes, so a1 is nilpotent; a nonzero
// nilpotent 2x2 matrix is conjugate to N = e12, and the relations are then
// solved for g and a2.
struct A1Check {
    bool ok = false;
    std::string detail;
};

inline A1Check two_dim_H_modules_have_a1_zero() {
    A1Check out;
    const Matrix N = Matrix::jordan(2, Scalar(0));
    auto basis4 = [] {
        std::vector<Matrix> b;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                Matrix e(2, 2);
                e(i, j) = 1;
                b.push_back(e);
            }
        return b;
    }();
    // linear solve of T(X) = 0 over 2x2 matrices X
    auto solve_linear = [&](const std::function<Matrix(const Matrix&)>& T, const std::vector<Matrix>& dom) {
        Matrix M(4, dom.size());
        for (std::size_t k = 0; k < dom.size(); ++k) {
            Matrix im = T(dom[k]);
            for (std::size_t i = 0; i < 4; ++i) M(i, k) = im(i / 2, i % 2);
        }
        std::vector<Matrix> sol;
        for (auto& v : kernel(M)) {
            Matrix X(2, 2);
            for (std::size_t k = 0; k < dom.size(); ++k) X += dom[k] * v[k];
            sol.push_back(X);
        }
        return sol;
    };
    // g a1 = a1 g and a2 a1 - a1 a2 + 1/2 a1^2 = 0 (N^2 = 0, so homogeneous)
    auto gs = solve_linear([&](const Matrix& X) { return X * N - N * X; }, basis4);
    auto a2s = solve_linear([&](const Matrix& X) { return X * N - N * X + N * N * Scalar(1, 2); }, basis4);
    // g a2 - (a1 + a2) g = [g, a2] - N g; the bracket vanishes on all pairs,
    // leaving N g = 0, linear in g
    bool brackets_vanish = true;
    for (auto& G : gs)
        for (auto& A2 : a2s)
            if (!(G * A2 - A2 * G).is_zero()) brackets_vanish = false;
    auto gfinal = solve_linear([&](const Matrix& X) { return N * X; }, gs);
    bool all_singular = gfinal.size() <= 1;
    for (auto& G : gfinal)
        if (!determinant(G).is_zero()) all_singular = false;
    out.ok = brackets_vanish && all_singular && gs.size() == 2 && a2s.size() == 2;
    out.detail = "g in a " + std::to_string(gs.size()) + "-dim space, a2 in a " + std::to_string(a2s.size()) +
                 "-dim space, brackets " + (brackets_vanish ? "vanish" : "do not vanish") + ", remaining g space of dim " +
                 std::to_string(gfinal.size()) + (all_singular ? " is singular" : " contains invertibles");
    return out;
}

inline CriterionResult criterion_H(const Options& opt) {
    CriterionResult r{7, "H results"};
    r.limit = 60;
    auto a1 = two_dim_H_modules_have_a1_zero();
    if (!a1.ok) r.failures.push_back("a1 = 0 on 2-dim modules: " + a1.detail);
    auto S = [](long p, long q = 1) { return Scalar(p, q); };
    const std::vector<std::pair<Scalar, Scalar>> pts{{S(1), S(0)}, {S(-1), S(0)}, {S(2), S(1)}, {S(1), S(1)}, {S(1, 2), S(-1)}};
    std::size_t ext_ok = 0, ext_total = 0;
    std::set<std::size_t> diag_dims;
    for (auto alg : {"H", "Hbar"})
        for (auto& [ga, gb] : pts)
            for (auto& [ea, eb] : pts) {
                Module kg = make(make_tag("kGamma", {{"a", ga}, {"b", gb}}, alg));
                Module ke = make(make_tag("kGamma", {{"a", ea}, {"b", eb}}, alg));
                std::size_t d = ext1(kg, ke).dim;
                bool same = ga == ea && gb == eb;
                if (same) diag_dims.insert(d);
                ++ext_total;
                if (d == (same ? 1u : 0u)) ++ext_ok;
                else
                    r.failures.push_back(std::string("Ext1_") + alg + "(k(" + ga.str() + "," + gb.str() + "), k(" + ea.str() +
                                         "," + eb.str() + ")) has dim " + std::to_string(d));
            }
    std::size_t id_ok = 0, id_total = 0;
    for (auto& c : catalog_identities(opt)) {
        if (c.label.find("J(") == std::string::npos && c.label.find("K(") == std::string::npos) continue;
        ++id_total;
        if (c.ok()) ++id_ok;
        else r.failures.push_back(c.label + ": " + c.reason);
    }
    r.ok = r.failures.empty();
    std::string dd;
    for (auto d : diag_dims) dd += (dd.empty() ? "" : ",") + std::to_string(d);
    r.summary = std::string("a1 = 0 on every 2-dim module ") + (a1.ok ? "proved" : "not proved") + ", " +
                detail::count_str(ext_ok, ext_total) + " Ext1 dims equal delta (diagonal dims {" + dd + "}), " +
                detail::count_str(id_ok, id_total) + " J/K identities";
    return r;
}

inline CriterionResult criterion_K(const Options& opt) {
    CriterionResult r{8, "K results"};
    r.limit = 300;
    auto S = [](long p, long q = 1) { return Scalar(p, q); };
    const std::vector<Scalar> as{S(1), S(-1), S(2), S(1, 2)};
    const std::vector<Scalar> bs{S(0), S(1), S(-2)};
    std::vector<FamilyTag> ktags;
    for (auto& a : as) {
        ktags.push_back(make_tag("L3_1", {{"a", a}}));
        ktags.push_back(make_tag("L3_2", {{"a", a}}));
        for (long n = 4; n <= 6; ++n)
            for (auto& b : bs)
                for (auto f : {"Ln_1", "Ln_2"}) ktags.push_back(make_tag(f, {{"n", S(n)}, {"a", a}, {"b", b}}));
    }
    Rng rng = Rng(opt.seed).fork("K");
    std::size_t nonsimple = 0, graded = 0, round = 0;
    std::vector<Module> with_x1;
    for (auto& t : ktags) {
        Module M = make(t);
        with_x1.push_back(M);
        auto s = is_simple(M, opt);
        if (!s.simple && s.witness && s.witness->cols() > 0 && s.witness->cols() < M.dim) ++nonsimple;
        else r.failures.push_back(t.str() + " has no proper submodule");
        auto got = classify_K(detail::scramble(rng, M), opt);
        if (got.size() == 1 && got[0] == normalize(t)) ++round;
        else r.failures.push_back(t.str() + " round trip gives " + (got.empty() ? std::string("nothing") : got[0].str()));
    }
    std::size_t inflated = 0, inflated_total = 0;
    for (auto& a : as) {
        ++inflated_total;
        if (is_simple(inflate_L_to_K(make(make_tag("k", {{"a", a}}))), opt).simple) ++inflated;
        else r.failures.push_back("inflated k(" + a.str() + ") not simple");
        for (auto& b : as) {
            ++inflated_total;
            if (is_simple(inflate_L_to_K(make(make_tag("U", {{"a", a}, {"b", b}}))), opt).simple) ++inflated;
            else r.failures.push_back("inflated U(" + a.str() + "," + b.str() + ") not simple");
        }
    }
    // gradings on modules with x1 != 0, including tensor products and sums
    with_x1.push_back(tensor(make("L3_2(a=1)"), make("L3_2(a=1)")));
    with_x1.push_back(tensor(make("L3_2(a=1)"), make("L3_1(a=1)")));
    with_x1.push_back(direct_sum(make("L3_1(a=2)"), make("Ln_2(n=4,a=1,b=1)")));
    for (auto& M : with_x1) {
        auto tg = t_grading(M), gg = g2_grading(M);
        bool ok = grading_is_module_decomposition(M, tg) && grading_is_module_decomposition(M, gg);
        if (ok && is_indecomposable(M, opt)) {
            ok = tg.blocks.size() == 1 && gg.blocks.size() == 1;
            auto spec = field_roots(charpoly(M.at("g")), M.field);
            std::set<Scalar> sq;
            for (auto& s : spec) sq.insert(s * s);
            ok = ok && sq.size() == 1;
        }
        if (ok) ++graded;
        else r.failures.push_back("grading of a module of dim " + std::to_string(M.dim) + " [" + invariant_profile(M) + "]");
    }
    std::size_t sj_ok = 0;
    auto items = super_jordan_tensors(opt);
    for (auto& it : items) {
        if (it.ok) ++sj_ok;
        else r.failures.push_back(it.label + ": " + it.detail);
    }
    std::size_t id_ok = 0, id_total = 0;
    for (auto& c : catalog_identities(opt)) {
        if (c.label.rfind("L3_", 0) != 0 && c.label.rfind("k(a) x L3", 0) != 0) continue;
        ++id_total;
        if (c.ok()) ++id_ok;
        else r.failures.push_back(c.label + ": " + c.reason);
    }
    r.ok = r.failures.empty();
    r.summary = detail::count_str(nonsimple, ktags.size()) + " catalog modules with x1 != 0 not simple, " +
                detail::count_str(inflated, inflated_total) + " inflated simples simple, " +
                detail::count_str(graded, with_x1.size()) + " gradings certified, " + detail::count_str(round, ktags.size()) +
                " K round trips, " + detail::count_str(sj_ok, items.size()) + " tensor product results, " +
                detail::count_str(id_ok, id_total) + " duality and twist identities";
    return r;
}

// ----------------------------------------------------------------- suite

struct AcceptanceReport {
    std::uint64_t seed = 0;
    std::vector<CriterionResult> criteria;

    bool ok() const {
        for (auto& c : criteria)
            if (!c.ok) return false;
        return true;
    }
    std::string text() const {
        std::string s;
        for (auto& c : criteria) s += c.line() + "\n";
        return s;
    }
};

inline json to_json(const AcceptanceReport& r) {
    json j{{"seed", r.seed}, {"ok", r.ok()}};
    j["criteria"] = json::array();
    for (auto& c : r.criteria) j["criteria"].push_back(to_json(c));
    return j;
}

// Criteria 1-8. Timings are written to `log` when given.
inline std::vector<CriterionResult> run_criteria(const Options& opt, std::ostream* log = nullptr) {
    std::vector<std::function<CriterionResult()>> steps{
        [] { return criterion_identities(); },         [] { return criterion_hopf(); },
        [&] { return criterion_simples(opt); },        [&] { return criterion_indecomposability(opt); },
        [&] { return criterion_roundtrip(opt); },      [&] { return criterion_fusion(opt); },
        [&] { return criterion_H(opt); },              [&] { return criterion_K(opt); },
    };
    std::vector<CriterionResult> out;
    for (auto& step : steps) {
        auto t0 = std::chrono::steady_clock::now();
        CriterionResult c = step();
        c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.seconds > c.limit) {
            c.ok = false;
            c.failures.push_back("over the time limit");
            c.summary += "; over the time limit";
        }
        if (log) *log << "criterion " << c.id << ": " << c.seconds << " s (limit " << c.limit << " s)\n" << std::flush;
        out.push_back(std::move(c));
    }
    return out;
}

// Runs criteria 1-8 twice and compares the report bytes for criterion 9.
inline AcceptanceReport run_acceptance(const Options& opt, std::ostream* log = nullptr) {
    AcceptanceReport rep;
    rep.seed = opt.seed;
    rep.criteria = run_criteria(opt, log);
    AcceptanceReport again;
    again.criteria = run_criteria(opt, log);
    bool same = rep.text() == again.text() && to_json(rep).dump() == to_json(again).dump();
    CriterionResult det{9, "determinism"};
    det.ok = same;
    det.summary = std::string("second run with seed ") + std::to_string(opt.seed) + (same ? " is byte-identical" : " differs");
    if (!same) det.failures.push_back("reports differ");
    rep.criteria.push_back(det);
    return rep;
}

}  // namespace hopfrep

#endif  // HOPFREP_ACCEPTANCE_HPP
