// Copyright 2026 The hopfrep Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Named module families, the tag grammar, and recognizers for small
// indecomposables.
//
// Tag grammar:
//   tag    := [alg ":"] name ["(" key "=" scalar {"," key "=" scalar} ")"]
//   alg    := L | Lq | H | Hbar | K
//   key    := j | i | n | q | a | b | c
// F, D, E and H accept the member index as j, so "F(j=6,i=1,n=5,a=1,b=2,c=3)"
// and "F6(i=1,n=5,a=1,b=2,c=3)" name the same module. The algebra prefix is
// needed only to inflate an L family to K or to read an H family over Hbar.

#ifndef HOPFREP_CATALOG_HPP
#define HOPFREP_CATALOG_HPP

#include <hopfrep/module.hpp>
#include <hopfrep/structure.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hopfrep {

struct FamilyTag {
    std::string algebra;
    std::string family;
    std::map<std::string, Scalar> params;
    std::size_t dim = 0;
    std::string profile;  // unclassified summands only

    bool has(const std::string& k) const { return params.count(k) != 0; }
    const Scalar& at(const std::string& k) const {
        auto it = params.find(k);
        if (it == params.end()) throw MathError(family + " has no parameter " + k);
        return it->second;
    }
    bool unclassified() const { return family == "unclassified"; }
    std::string str() const;

    friend bool operator==(const FamilyTag& x, const FamilyTag& y) {
        return x.algebra == y.algebra && x.family == y.family && x.params == y.params;
    }
    friend bool operator!=(const FamilyTag& x, const FamilyTag& y) { return !(x == y); }
};

namespace detail {

struct FamilySpec {
    std::string name;
    std::string algebra;
    std::vector<std::string> keys;
};

inline const std::vector<FamilySpec>& family_specs() {
    static const std::vector<FamilySpec> specs = {
        {"k", "L", {"a"}},
        {"U", "L", {"a", "b"}},
        {"V", "L", {"n", "a"}},
        {"W", "L", {"a"}},
        {"C", "L", {"n", "a"}},
        {"D1", "L", {"a"}},
        {"D2", "L", {"a", "b"}},
        {"D3", "L", {"a"}},
        {"D4", "L", {"a"}},
        {"E1", "L", {"n", "a"}},
        {"E2", "L", {"n", "a"}},
        {"E3", "L", {"n", "a", "b"}},
        {"F1", "L", {"n", "a"}},
        {"F2", "L", {"n", "a"}},
        {"F3", "L", {"n", "a"}},
        {"F4", "L", {"i", "n", "a"}},
        {"F5", "L", {"n", "a", "b", "c"}},
        {"F6", "L", {"i", "n", "a", "b", "c"}},
        {"F7", "L", {"n", "a", "b", "c"}},
        {"F8", "L", {"i", "n", "a", "b", "c"}},
        {"G", "L", {"n", "a"}},
        {"H1", "L", {"n", "a"}},
        {"H2", "L", {"n", "a"}},
        {"H3", "L", {"n", "a", "b"}},
        {"I", "L", {"n", "a"}},
        {"Uq", "Lq", {"n", "q", "a", "b"}},
        {"kGamma", "H", {"a", "b"}},
        {"J", "H", {"a", "b"}},
        {"K3", "H", {"a", "b", "c"}},
        {"L3_1", "K", {"a"}},
        {"L3_2", "K", {"a"}},
        {"Ln_1", "K", {"n", "a", "b"}},
        {"Ln_2", "K", {"n", "a", "b"}},
    };
    return specs;
}

inline const FamilySpec& family_spec(const std::string& name) {
    for (auto& s : family_specs())
        if (s.name == name) return s;
    throw MathError("unknown family '" + name + "'");
}

inline const std::vector<std::string>& key_order() {
    static const std::vector<std::string> k = {"j", "i", "n", "q", "a", "b", "c"};
    return k;
}

inline bool indexed_group(const std::string& f) { return f == "F" || f == "D" || f == "E" || f == "H"; }

inline std::string trim(std::string s) {
    auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
    while (!s.empty() && ws(s.front())) s.erase(s.begin());
    while (!s.empty() && ws(s.back())) s.pop_back();
    return s;
}

inline long int_param(const FamilyTag& t, const std::string& k) {
    const Scalar& v = t.at(k);
    if (!v.is_rational() || v.r().get_den() != 1 || !v.r().get_num().fits_slong_p())
        throw MathError(t.family + ": " + k + " must be an integer, got " + v.str());
    return v.r().get_num().get_si();
}

}  // namespace detail

inline std::string FamilyTag::str() const {
    if (unclassified()) return "unclassified(n=" + std::to_string(dim) + ")";
    std::string name = family;
    std::vector<std::pair<std::string, std::string>> kv;
    if (family.size() == 2 && family[0] == 'F') {
        name = "F";
        kv.emplace_back("j", family.substr(1));
    }
    for (auto& k : detail::key_order())
        if (auto it = params.find(k); it != params.end()) kv.emplace_back(k, it->second.str());
    std::string out;
    if (algebra != detail::family_spec(family).algebra) out = algebra + ":";
    out += name;
    if (!kv.empty()) {
        out += "(";
        for (std::size_t i = 0; i < kv.size(); ++i) out += (i ? "," : "") + kv[i].first + "=" + kv[i].second;
        out += ")";
    }
    return out;
}

inline FamilyTag parse_tag(const std::string& text) {
    std::string s = detail::trim(text);
    FamilyTag t;
    std::string head = s, body;
    if (auto p = s.find('('); p != std::string::npos) {
        if (s.back() != ')') throw MathError("tag '" + text + "': missing closing parenthesis");
        head = detail::trim(s.substr(0, p));
        body = s.substr(p + 1, s.size() - p - 2);
    }
    if (auto c = head.find(':'); c != std::string::npos) {
        t.algebra = detail::trim(head.substr(0, c));
        head = detail::trim(head.substr(c + 1));
    }
    std::map<std::string, Scalar> kv;
    int depth = 0;
    std::string cur;
    auto flush = [&]() {
        std::string item = detail::trim(cur);
        cur.clear();
        if (item.empty()) return;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw MathError("tag '" + text + "': expected key=value, got '" + item + "'");
        std::string k = detail::trim(item.substr(0, eq));
        if (kv.count(k)) throw MathError("tag '" + text + "': repeated key " + k);
        kv[k] = Scalar::parse(detail::trim(item.substr(eq + 1)));
    };
    for (char ch : body) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0) flush();
        else cur += ch;
    }
    flush();
    if (detail::indexed_group(head)) {
        if (!kv.count("j")) throw MathError("tag '" + text + "': " + head + " needs j");
        FamilyTag probe;
        probe.family = head;
        probe.params["j"] = kv.at("j");
        head += std::to_string(detail::int_param(probe, "j"));
        kv.erase("j");
    } else if (kv.count("j")) {
        throw MathError("tag '" + text + "': j is only used with F, D, E and H");
    }
    const auto& spec = detail::family_spec(head);
    t.family = head;
    if (t.algebra.empty()) t.algebra = spec.algebra;
    for (auto& [k, v] : kv)
        if (std::find(spec.keys.begin(), spec.keys.end(), k) == spec.keys.end())
            throw MathError("tag '" + text + "': " + head + " takes no parameter " + k);
    for (auto& k : spec.keys)
        if (!kv.count(k)) throw MathError("tag '" + text + "': " + head + " needs " + k);
    t.params = std::move(kv);
    return t;
}

inline FamilyTag make_tag(const std::string& family, std::map<std::string, Scalar> params, std::string algebra = "") {
    FamilyTag t;
    t.family = family;
    t.algebra = algebra.empty() ? detail::family_spec(family).algebra : algebra;
    t.params = std::move(params);
    return t;
}

// ------------------------------------------------------------ constructors

namespace detail {

inline Matrix ecol(std::size_t m, std::size_t i) {
    Matrix v(m, 1);
    v(i - 1, 0) = Scalar(1);
    return v;
}
inline Matrix erow(std::size_t m, std::size_t i) { return ecol(m, i).transpose(); }

inline Matrix vconcat(const Matrix& x, const Matrix& y) { return hconcat(x.transpose(), y.transpose()).transpose(); }

inline Matrix offdiag(const Matrix& C, const Matrix& D) {
    std::size_t l = C.rows(), p = C.cols();
    Matrix y(l + p, l + p);
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < p; ++j) y(i, l + j) = C(i, j);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < l; ++j) y(l + i, j) = D(i, j);
    return y;
}

inline Matrix scalar_id(std::size_t n, const Scalar& a) { return Matrix::identity(n) * a; }

inline Scalar param_or(const FamilyTag& t, const std::string& k, long dflt) {
    return t.has(k) ? t.at(k) : Scalar(dflt);
}

inline void require(bool ok, const std::string& family, const std::string& what) {
    if (!ok) throw MathError(family + " needs " + what);
}

// Dimension implied by the parameters; checks n ranges.
inline std::size_t family_dim(const FamilyTag& t) {
    const std::string& f = t.family;
    if (f == "k" || f == "kGamma") return 1;
    if (f == "U" || f == "W" || f == "J" || f == "K3") return 2;
    if (f == "D1" || f == "D2" || f == "D3") return 4;
    if (f == "D4") return 5;
    if (f == "L3_1" || f == "L3_2") return 3;
    long n = int_param(t, "n");
    if (f == "V" || f == "Uq") require(n >= 1, f, "n >= 1");
    if (f == "C" || f[0] == 'E') require(n >= 3, f, "n >= 3");
    if (f[0] == 'F' || f == "G" || f[0] == 'H') require(n >= 4, f, "n >= 4");
    if (f == "I") require(n >= 5 && n % 2 == 1, f, "odd n >= 5");
    if (f == "Ln_1" || f == "Ln_2") require(n >= 4, f, "n >= 4");
    if (f == "F4" || f == "F6" || f == "F8") {
        long i = int_param(t, "i");
        require(i >= 1 && i <= n - 3, f, "1 <= i <= n-3");
    }
    return static_cast<std::size_t>(n);
}

// Matrices of the family at the given parameters, without domain checks.
inline std::map<std::string, Matrix> family_action(const FamilyTag& t) {
    const std::string& f = t.family;
    const std::size_t n = family_dim(t);
    const Scalar a = param_or(t, "a", 1), b = param_or(t, "b", 0), c = param_or(t, "c", 0);
    auto Lmod = [](const Matrix& A, const Matrix& B, const Matrix& C, const Matrix& D) {
        return std::map<std::string, Matrix>{{"g", direct_sum(A, B)}, {"y", offdiag(C, D)}};
    };
    auto one = [](const Scalar& x) { return scalar_id(1, x); };

    if (f == "k") return {{"g", one(a)}, {"y", Matrix(1, 1)}};
    if (f == "U") return Lmod(one(a), one(-a), one(b), one(Scalar(1)));
    if (f == "W") return Lmod(one(a), one(-a), one(Scalar(1)), Matrix(1, 1));
    if (f == "V") return {{"g", Matrix::jordan(n, a)}, {"y", Matrix(n, n)}};
    if (f == "C") {
        std::size_t l = n - 1;
        return Lmod(scalar_id(l, a), one(-a), ecol(l, 1), erow(l, l));
    }
    if (f[0] == 'D') {
        std::size_t l = (f == "D4") ? 3 : 2;
        Matrix A = scalar_id(l, a), B = scalar_id(2, -a), N = Matrix::jordan(2, Scalar(0));
        if (f == "D1") return Lmod(A, B, N, Matrix::identity(2));
        if (f == "D2") return Lmod(A, B, Matrix::identity(2), Matrix::jordan(2, b));
        if (f == "D3") return Lmod(A, B, Matrix::identity(2), N);
        return Lmod(A, B, hconcat(ecol(3, 1), ecol(3, 2)), vconcat(erow(3, 2), erow(3, 3)));
    }
    if (f[0] == 'E') {
        std::size_t l = n - 1;
        Matrix A = Matrix::jordan(l, a), B = one(-a);
        if (f == "E1") return Lmod(A, B, ecol(l, 1), Matrix(1, l));
        if (f == "E2") return Lmod(A, B, Matrix(l, 1), erow(l, l));
        return Lmod(A, B, ecol(l, 1) * b, erow(l, l));
    }
    if (f[0] == 'F' || f == "G") {
        std::size_t l = n - 2;
        Matrix A = Matrix::jordan(l, a);
        Matrix C1 = hconcat(Matrix(l, 1), ecol(l, 1));
        Matrix D = vconcat(erow(l, l), Matrix(1, l));
        if (f == "G") return Lmod(A, scalar_id(2, -a), C1, D);
        Matrix B = Matrix::jordan(2, -a);
        Matrix C2 = hconcat(ecol(l, 1), -ecol(l, 2));
        Matrix Di;
        if (t.has("i")) {
            auto i = static_cast<std::size_t>(int_param(t, "i"));
            Di = vconcat(erow(l, i), -erow(l, i + 1));
        }
        Matrix Z(l, 2), Zt(2, l);
        if (f == "F1") return Lmod(A, B, C1, Zt);
        if (f == "F2") return Lmod(A, B, C2, Zt);
        if (f == "F3") return Lmod(A, B, Z, D);
        if (f == "F4") return Lmod(A, B, Z, Di);
        if (f == "F5") return Lmod(A, B, C1 * b, D * c);
        if (f == "F6") return Lmod(A, B, C1 * b, Di * c);
        if (f == "F7") return Lmod(A, B, C2 * b, D * c);
        return Lmod(A, B, C2 * b, Di * c);
    }
    if (f[0] == 'H') {
        std::size_t l = n - 1;
        Matrix A = direct_sum(Matrix::jordan(n - 2, a), one(a)), B = one(-a);
        if (f == "H1") return Lmod(A, B, ecol(l, 1), erow(l, n - 1));
        if (f == "H2") return Lmod(A, B, ecol(l, n - 1), erow(l, n - 2));
        return Lmod(A, B, ecol(l, n - 1), erow(l, n - 1) * b);
    }
    if (f == "I") {
        std::size_t r = (n - 1) / 2;
        return Lmod(direct_sum(Matrix::jordan(r, a), Matrix::jordan(r, a)), one(-a), ecol(2 * r, 1),
                    erow(2 * r, 2 * r));
    }
    if (f == "Uq") {
        const Scalar q = t.at("q");
        Matrix g(n, n), y(n, n);
        Scalar w = a;
        for (std::size_t i = 0; i < n; ++i, w *= q) g(i, i) = w;
        for (std::size_t j = 0; j + 1 < n; ++j) y(j + 1, j) = Scalar(1);
        y(0, n - 1) += b;
        return {{"g", g}, {"y", y}};
    }
    if (f == "kGamma") return {{"g", one(a)}, {"a1", Matrix(1, 1)}, {"a2", one(b)}};
    if (f == "J") return {{"g", scalar_id(2, a)}, {"a1", Matrix(2, 2)}, {"a2", Matrix::jordan(2, b)}};
    if (f == "K3") {
        Matrix a2 = scalar_id(2, b);
        a2(0, 1) = c;
        return {{"g", Matrix::jordan(2, a)}, {"a1", Matrix(2, 2)}, {"a2", a2}};
    }
    // K families
    std::size_t l = n - 1;
    Matrix A = Matrix::jordan(l, a), B = one(-a);
    Matrix g = direct_sum(A, B);
    if (f == "L3_1") return {{"g", g}, {"x1", offdiag(Matrix(2, 1), erow(2, 2))}, {"x2", offdiag(Matrix(2, 1), erow(2, 1) * a)}};
    if (f == "L3_2") return {{"g", g}, {"x1", offdiag(ecol(2, 1), Matrix(1, 2))}, {"x2", offdiag(-a * ecol(2, 2), Matrix(1, 2))}};
    if (f == "Ln_1")
        return {{"g", g}, {"x1", offdiag(Matrix(l, 1), erow(l, l))}, {"x2", offdiag(ecol(l, 1) * b, erow(l, l - 1) * a)}};
    if (f == "Ln_2")
        return {{"g", g}, {"x1", offdiag(ecol(l, 1), Matrix(1, l))}, {"x2", offdiag(-a * ecol(l, 2), erow(l, l) * b)}};
    throw MathError("no constructor for family " + f);
}

inline void check_domain(const FamilyTag& t) {
    const std::string& f = t.family;
    const auto& spec = family_spec(f);
    for (auto& k : spec.keys)
        if (!t.has(k)) throw MathError(f + " needs parameter " + k);
    for (auto& [k, v] : t.params)
        if (std::find(spec.keys.begin(), spec.keys.end(), k) == spec.keys.end())
            throw MathError(f + " takes no parameter " + k);
    family_dim(t);
    auto nonzero = [&](const char* k) { require(!t.at(k).is_zero(), f, std::string(k) + " != 0"); };
    nonzero("a");
    if (f == "U" || f == "E3" || f == "H3" || f == "D2" || f == "Uq") nonzero("b");
    if (f == "F5" || f == "F6" || f == "F7" || f == "F8") {
        nonzero("b");
        nonzero("c");
    }
    if (f == "Uq") {
        long n = int_param(t, "n");
        const Scalar& q = t.at("q");
        Scalar w = q;
        for (long k = 1; k < n; ++k, w *= q)
            require(!w.is_one(), f, "q a primitive root of unity of order " + std::to_string(n) + "; q^" + std::to_string(k) + " = 1");
        require(w.is_one(), f, "q^n = 1; q^" + std::to_string(n) + " = " + w.str());
    }
    if (f == "F4" || f == "F6" || f == "F8") {
        long n = int_param(t, "n"), i = int_param(t, "i");
        require(i == n - 3, f,
                "i = n-3; for i = " + std::to_string(i) + " the displayed D_i gives gy + yg != 0");
    }
    const std::string& home = spec.algebra;
    bool ok = t.algebra == home || (home == "L" && t.algebra == "K") || (home == "H" && t.algebra == "Hbar");
    if (!ok) throw MathError(f + " is not available over " + t.algebra);
}

inline FieldDesc tag_field(const FamilyTag& t) {
    long d = 0;
    for (auto& [k, v] : t.params) {
        if (v.is_rational()) continue;
        if (d != 0 && d != v.d()) throw MathError("tag parameters live in different fields");
        d = v.d();
    }
    return d ? make_field(d) : FieldDesc{};
}

inline Module raw_module(const FamilyTag& t, const FieldDesc& field) {
    Module V;
    V.algebra = family_spec(t.family).algebra;
    V.field = field;
    V.action = family_action(t);
    for (auto& [g, m] : V.action)
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = m(i, j).in_field(field);
    V.dim = V.action.at("g").rows();
    if (t.family == "Uq") V.q = t.at("q").in_field(field);
    return V;
}

}  // namespace detail

// Certified module in the standard basis. `field` widens the field of the
// parameters, e.g. to match a module being compared against.
inline Module make(const FamilyTag& t, std::optional<FieldDesc> field = std::nullopt) {
    detail::check_domain(t);
    FieldDesc pf = detail::tag_field(t);
    FieldDesc f = field ? *field : pf;
    if (pf.d != 0 && pf.d != f.d) throw MathError(t.str() + ": parameters lie outside the requested field");
    Module V = certified(detail::raw_module(t, f));
    if (t.algebra == "K" && V.algebra == "L") return inflate_L_to_K(V);
    if (t.algebra == "Hbar" && V.algebra == "H") {
        V.algebra = "Hbar";
        V.action.erase("a1");
        return certified(std::move(V));
    }
    return V;
}

inline Module make(const std::string& tag) { return make(parse_tag(tag)); }

inline Module make_Uq(long n, const Scalar& q, const Scalar& a, const Scalar& b) {
    return make(make_tag("Uq", {{"n", Scalar(n)}, {"q", q}, {"a", a}, {"b", b}}));
}

// F5..F8 depend on b and c only through bc.
inline FamilyTag normalize(FamilyTag t) {
    const std::string& f = t.family;
    if (f == "F5" || f == "F6" || f == "F7" || f == "F8") {
        t.params["c"] = t.at("b") * t.at("c");
        t.params["b"] = Scalar(1);
    }
    return t;
}

inline json to_json(const FamilyTag& t) {
    json j;
    j["tag"] = t.str();
    j["algebra"] = t.algebra;
    j["family"] = t.family;
    j["dim"] = t.dim;
    if (t.unclassified()) j["profile"] = t.profile;
    return j;
}

// ------------------------------------------------------- invariant profile

namespace detail {

// Block sizes of the nilpotent part of X - lambda from the rank sequence.
inline std::vector<std::size_t> jordan_type(const Matrix& X, const Scalar& lambda) {
    const std::size_t n = X.rows();
    Matrix N = X - Matrix::identity(n) * lambda;
    std::vector<std::size_t> ranks{n};
    Matrix P = N;
    while (true) {
        std::size_t r = rank(P);
        ranks.push_back(r);
        if (r == ranks[ranks.size() - 2]) break;
        P = P * N;
    }
    // ranks[k] = rank N^k; blocks of size >= k: ranks[k-1] - ranks[k]
    std::vector<std::size_t> sizes;
    for (std::size_t k = 1; k + 1 < ranks.size(); ++k) {
        std::size_t ge = ranks[k - 1] - ranks[k];
        std::size_t gt = ranks[k] - ranks[k + 1];
        for (std::size_t c = 0; c < ge - gt; ++c) sizes.push_back(k);
    }
    std::sort(sizes.rbegin(), sizes.rend());
    return sizes;
}

}  // namespace detail

// Jordan type of g per eigenvalue and ranks of the other stored generators
// and their squares.
inline std::string invariant_profile(const Module& V) {
    std::string out = "g:";
    bool first = true;
    for (auto& fac : factor(charpoly(V.at("g")), V.field)) {
        out += first ? "" : ";";
        first = false;
        if (!fac.linear()) {
            out += "(" + fac.p.str() + ")^" + std::to_string(fac.mult);
            continue;
        }
        out += fac.root().str() + "[";
        auto js = detail::jordan_type(V.at("g"), fac.root());
        for (std::size_t i = 0; i < js.size(); ++i) out += (i ? "," : "") + std::to_string(js[i]);
        out += "]";
    }
    for (auto& gname : stored_generators(V.algebra)) {
        if (gname == "g") continue;
        const Matrix& X = V.at(gname);
        out += " rk(" + gname + ")=" + std::to_string(rank(X)) + " rk(" + gname + "^2)=" + std::to_string(rank(X * X));
    }
    return out;
}

inline FamilyTag unclassified_tag(const Module& V) {
    FamilyTag t;
    t.algebra = V.algebra;
    t.family = "unclassified";
    t.dim = V.dim;
    t.profile = invariant_profile(V);
    return t;
}

// ----------------------------------------------------------- field change

namespace detail {

// Square-free part of a nonzero integer of moderate size.
inline std::optional<long> squarefree_part(mpz_class m) {
    long sign = m < 0 ? -1 : 1;
    if (m < 0) m = -m;
    if (m == 0 || m > mpz_class("1000000000000")) return std::nullopt;
    mpz_class out = 1;
    for (mpz_class p = 2; p * p <= m; ++p) {
        while (m % (p * p) == 0) m /= p * p;
        if (m % p == 0) {
            m /= p;
            out *= p;
        }
    }
    out *= m;
    return sign * out.get_si();
}

}  // namespace detail

// The same module with its entries read in f, which must contain V's field.
inline Module with_field(const Module& V, const FieldDesc& f) {
    if (V.field.d != 0 && V.field != f) throw MathError("with_field: cannot move between quadratic fields");
    Module W = V;
    W.field = f;
    for (auto& [g, m] : W.action)
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = m(i, j).in_field(f);
    if (W.q) W.q = W.q->in_field(f);
    return certified(std::move(W));
}

// d such that the characteristic polynomials of g and of the squares of the
// other generators split over Q(sqrt d); 0 means Q. Empty when a single
// quadratic extension does not suffice.
inline std::optional<long> quadratic_splitting_d(const Module& V) {
    if (V.field.d != 0) return std::nullopt;
    long d = 0;
    std::vector<Matrix> ops{V.at("g")};
    for (auto& gname : stored_generators(V.algebra))
        if (gname != "g") ops.push_back(V.at(gname) * V.at(gname));
    for (auto& X : ops)
        for (auto& fac : factor(charpoly(X), V.field)) {
            if (fac.linear()) continue;
            if (fac.p.degree() != 2) return std::nullopt;
            Poly mp = fac.p.monic();
            Scalar b = mp.coeff(1), c = mp.coeff(0);
            Scalar disc = b * b - Scalar(4) * c;
            auto e = detail::squarefree_part(disc.r().get_num() * disc.r().get_den());
            if (!e || (d != 0 && *e != d)) return std::nullopt;
            d = *e;
        }
    return d;
}

// ------------------------------------------------------------- recognizer

namespace detail {

// Intertwiners T: V -> W for a subset of the generators.
inline std::vector<Matrix> partial_intertwiners(const Module& V, const Module& W, const std::vector<std::string>& gens) {
    const std::size_t n = V.dim, m = W.dim;
    SparseSystem sys(m * n);
    auto idx = [n](std::size_t i, std::size_t j) { return i * n + j; };
    for (auto& gname : gens) {
        const Matrix &X = V.at(gname), &Y = W.at(gname);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                SparseRow row;
                for (std::size_t k = 0; k < n; ++k)
                    if (!X(k, j).is_zero()) row.emplace_back(idx(i, k), X(k, j));
                for (std::size_t k = 0; k < m; ++k)
                    if (!Y(i, k).is_zero()) row.emplace_back(idx(k, j), -Y(i, k));
                if (!row.empty()) sys.add(std::move(row));
            }
    }
    std::vector<Matrix> out;
    for (auto& v : sys.nullspace()) {
        Matrix T(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) T(i, j) = v[idx(i, j)];
        out.push_back(std::move(T));
    }
    return out;
}

// Family matrices are affine in one parameter p: X(p) = X0 + p X1. Returns the
// p at which Hom(V, M(p)) jumps, as roots of a maximal minor of the pencil
// P - p Q acting on the intertwiners of the p-free generators.
inline std::vector<Scalar> pencil_parameters(const Module& V, const Module& M0, const Module& M1) {
    const std::size_t n = V.dim;
    std::vector<std::string> fixed, moving;
    for (auto& gname : stored_generators(V.algebra)) (M1.at(gname) == M0.at(gname) ? fixed : moving).push_back(gname);
    if (moving.empty()) return {};
    auto S = partial_intertwiners(V, M0, fixed);
    if (S.empty()) return {};
    const std::size_t rows = moving.size() * n * n, s = S.size();
    Matrix P(rows, s), Q(rows, s);
    for (std::size_t c = 0; c < s; ++c) {
        const Matrix& T = S[c];
        std::size_t r = 0;
        for (auto& gname : moving) {
            Matrix p = T * V.at(gname) - M0.at(gname) * T;
            Matrix q = (M1.at(gname) - M0.at(gname)) * T;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j, ++r) {
                    P(r, c) = p(i, j);
                    Q(r, c) = q(i, j);
                }
        }
    }
    static const long sigmas[][2] = {{2, 1}, {-3, 1}, {5, 2}, {7, 1}, {-11, 3}, {13, 5}};
    std::size_t best = 0;
    Scalar sigma;
    for (auto& sg : sigmas) {
        Scalar x(sg[0], sg[1]);
        std::size_t r = rank(P - Q * x);
        if (r > best) {
            best = r;
            sigma = x;
        }
    }
    if (best == 0) return {};
    Matrix N = P - Q * sigma;
    auto cols = rref(N).pivots;
    Matrix Nc(rows, best), Qc(rows, best);
    for (std::size_t j = 0; j < best; ++j)
        for (std::size_t i = 0; i < rows; ++i) {
            Nc(i, j) = N(i, cols[j]);
            Qc(i, j) = Q(i, cols[j]);
        }
    auto rws = rref(Nc.transpose()).pivots;
    Matrix Ms(best, best), Qs(best, best);
    for (std::size_t i = 0; i < best; ++i)
        for (std::size_t j = 0; j < best; ++j) {
            Ms(i, j) = Nc(rws[i], j);
            Qs(i, j) = Qc(rws[i], j);
        }
    auto Mi = inverse(Ms);
    if (!Mi) return {};
    std::vector<Scalar> out;
    for (auto& mu : field_roots(charpoly(*Mi * Qs), V.field))
        if (!mu.is_zero()) out.push_back(sigma + mu.inv());
    return out;
}

struct Template {
    std::string family;
    std::map<std::string, Scalar> fixed;
    std::string param;  // empty when the family has no free parameter besides a
    bool param_may_vanish = false;
};

inline std::vector<Template> L_templates(std::size_t n) {
    auto N = [n]() { return Scalar(static_cast<long>(n)); };
    std::vector<Template> t;
    auto E = [&]() {
        t.push_back({"E1", {{"n", N()}}, ""});
        t.push_back({"E2", {{"n", N()}}, ""});
        t.push_back({"E3", {{"n", N()}}, "b"});
    };
    auto F = [&](const std::string& fam, long i, bool param) {
        std::map<std::string, Scalar> fx{{"n", N()}};
        if (i) fx["i"] = Scalar(i);
        if (param) fx["b"] = Scalar(1);
        t.push_back({fam, fx, param ? "c" : ""});
    };
    auto GH = [&]() {
        t.push_back({"G", {{"n", N()}}, ""});
        t.push_back({"H1", {{"n", N()}}, ""});
        t.push_back({"H2", {{"n", N()}}, ""});
    };
    switch (n) {
        case 2:
            t.push_back({"U", {}, "b"});
            t.push_back({"W", {}, ""});
            break;
        case 3:
            t.push_back({"C", {{"n", N()}}, ""});
            E();
            break;
        case 4:
            t.push_back({"D1", {}, ""});
            t.push_back({"D2", {}, "b"});
            t.push_back({"D3", {}, ""});
            E();
            F("F1", 0, false);
            F("F2", 0, false);
            F("F5", 0, true);
            F("F6", 1, true);
            F("F8", 1, true);
            GH();
            break;
        case 5:
            t.push_back({"D4", {}, ""});
            E();
            F("F1", 0, false);
            F("F2", 0, false);
            F("F3", 0, false);
            F("F4", 2, false);
            F("F5", 0, true);
            F("F7", 0, true);
            F("F6", 2, true);
            F("F8", 2, true);
            GH();
            t.push_back({"I", {{"n", N()}}, ""});
            break;
        default:
            break;
    }
    return t;
}

inline std::vector<Template> K_templates(std::size_t n) {
    if (n == 3) return {{"L3_1", {}, ""}, {"L3_2", {}, ""}};
    if (n >= 4) {
        Scalar N(static_cast<long>(n));
        return {{"Ln_1", {{"n", N}}, "b", true}, {"Ln_2", {{"n", N}}, "b", true}};
    }
    return {};
}

// Tries each template with the given value of a.
inline std::optional<FamilyTag> match_templates(const Module& V, const std::vector<Template>& temps, const Scalar& a,
                                                const Options& opt) {
    for (auto& tp : temps) {
        FamilyTag t = make_tag(tp.family, tp.fixed);
        t.params["a"] = a;
        std::vector<Scalar> cands;
        if (!tp.param.empty()) {
            FamilyTag t0 = t, t1 = t;
            t0.params[tp.param] = Scalar(0);
            t1.params[tp.param] = Scalar(1);
            Module M0 = raw_module(t0, V.field), M1 = raw_module(t1, V.field);
            if (!same_spectral_profile(V.at("g"), M1.at("g"), V.field)) continue;
            cands = pencil_parameters(V, M0, M1);
            if (tp.param_may_vanish && std::find(cands.begin(), cands.end(), Scalar(0)) == cands.end())
                cands.push_back(Scalar(0));
            std::sort(cands.begin(), cands.end());
        } else {
            if (!same_spectral_profile(V.at("g"), raw_module(t, V.field).at("g"), V.field)) continue;
            cands.push_back(Scalar(0));
        }
        for (auto& p : cands) {
            FamilyTag c = t;
            if (!tp.param.empty()) {
                if (p.is_zero() && !tp.param_may_vanish) continue;
                c.params[tp.param] = p;
            }
            Module M = make(c, V.field);
            if (are_isomorphic(V, M, opt).verdict == Verdict::yes) {
                c.dim = V.dim;
                return c;
            }
        }
    }
    return std::nullopt;
}

// Candidate values of a: eigenvalues s of g with mult(s) >= mult(-s), ascending.
inline std::vector<Scalar> orientations(const Module& V) {
    auto facs = factor(charpoly(V.at("g")), V.field);
    std::map<Scalar, int> mult;
    for (auto& f : facs) {
        if (!f.linear()) throw MathError("needs field extension: g has irreducible factor " + f.p.str());
        mult[f.root()] = f.mult;
    }
    std::vector<Scalar> out;
    for (auto& [s, m] : mult) {
        auto it = mult.find(-s);
        int other = it == mult.end() ? 0 : it->second;
        if (m >= other) out.push_back(s);
    }
    return out;
}

}  // namespace detail

// Tag of an indecomposable L-module.
inline FamilyTag classify_indecomposable_L(const Module& V, const Options& opt = {}) {
    if (V.algebra != "L") throw MathError("classify_L expects an L-module, got " + V.algebra);
    if (V.dim > 5) return unclassified_tag(V);
    auto ors = detail::orientations(V);
    if (V.dim == 1) {
        FamilyTag t = make_tag("k", {{"a", V.at("g")(0, 0)}});
        t.dim = 1;
        return t;
    }
    if (V.at("y").is_zero()) {
        if (ors.size() != 1) throw MathError("classify_L: summand is decomposable");
        FamilyTag t = make_tag("V", {{"n", Scalar(static_cast<long>(V.dim))}, {"a", ors[0]}});
        if (are_isomorphic(V, make(t, V.field), opt).verdict != Verdict::yes)
            throw MathError("classify_L: summand is decomposable");
        t.dim = V.dim;
        return t;
    }
    auto temps = detail::L_templates(V.dim);
    for (auto& s : ors)
        if (auto t = detail::match_templates(V, temps, s, opt)) return *t;
    return unclassified_tag(V);
}

inline std::vector<FamilyTag> classify_L(const Module& V, const Options& opt = {}) {
    if (V.algebra != "L") throw MathError("classify_L expects an L-module, got " + V.algebra);
    std::vector<FamilyTag> out;
    for (auto& p : decompose(V, opt).parts) out.push_back(classify_indecomposable_L(p.module, opt));
    return out;
}

inline FamilyTag classify_indecomposable_K(const Module& V, const Options& opt = {}) {
    if (V.algebra != "K") throw MathError("classify_K expects a K-module, got " + V.algebra);
    if (V.at("x1").is_zero()) {
        FamilyTag t = classify_indecomposable_L(deflate_K_to_L(V), opt);
        t.algebra = "K";
        return t;
    }
    auto temps = detail::K_templates(V.dim);
    for (auto& s : detail::orientations(V))
        if (auto t = detail::match_templates(V, temps, s, opt)) return *t;
    return unclassified_tag(V);
}

inline std::vector<FamilyTag> classify_K(const Module& V, const Options& opt = {}) {
    if (V.algebra != "K") throw MathError("classify_K expects a K-module, got " + V.algebra);
    std::vector<FamilyTag> out;
    for (auto& p : decompose(V, opt).parts) out.push_back(classify_indecomposable_K(p.module, opt));
    return out;
}

inline FamilyTag classify_H_dim_le2(const Module& V) {
    if (V.algebra != "H" && V.algebra != "Hbar") throw MathError("classify_H_dim_le2 expects an H- or Hbar-module");
    if (V.dim == 0 || V.dim > 2) throw MathError("classify_H_dim_le2 needs 1 <= dim <= 2, got " + std::to_string(V.dim));
    const Matrix &g = V.at("g"), &a2 = V.at("a2");
    if (V.algebra == "H" && !V.at("a1").is_zero())
        throw MathError("a1 acts nontrivially, which contradicts V = V0 for finite-dimensional modules");
    FamilyTag t;
    if (V.dim == 1) {
        t = make_tag("kGamma", {{"a", g(0, 0)}, {"b", a2(0, 0)}}, V.algebra);
        t.dim = 1;
        return t;
    }
    auto geig = field_roots(charpoly(g), V.field);
    auto beig = field_roots(charpoly(a2), V.field);
    if (geig.empty() || beig.empty()) throw MathError("needs field extension: spectrum of g or a2 is not in the field");
    if (geig.size() > 1 || beig.size() > 1) throw MathError("module is decomposable");
    const Scalar a = geig[0], b = beig[0];
    Matrix Ng = g - Matrix::identity(2) * a, Nb = a2 - Matrix::identity(2) * b;
    if (Ng.is_zero()) {
        if (Nb.is_zero()) throw MathError("module is decomposable");
        t = make_tag("J", {{"a", a}, {"b", b}}, V.algebra);
    } else {
        Scalar c;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                if (!Ng(i, j).is_zero()) c = Nb(i, j) / Ng(i, j);
        if (Nb != Ng * c) throw MathError("a2 does not commute with g");
        t = make_tag("K3", {{"a", a}, {"b", b}, {"c", c}}, V.algebra);
    }
    t.dim = 2;
    return t;
}

// ------------------------------------------------------ displayed identities

struct IdentityCheck {
    std::string label;
    Verdict verdict = Verdict::undetermined;
    Verdict expected = Verdict::yes;  // no for displayed claims that do not hold
    std::string reason;
    bool ok() const { return verdict == expected; }
};

inline std::vector<IdentityCheck> catalog_identities(const Options& opt = {}) {
    std::vector<IdentityCheck> out;
    auto check = [&](const std::string& label, const Module& x, const Module& y, Verdict expected = Verdict::yes) {
        IdentityCheck c;
        c.label = label;
        c.expected = expected;
        try {
            auto r = are_isomorphic(x, y, opt);
            c.verdict = r.verdict;
            c.reason = r.reason;
        } catch (const std::exception& e) {
            c.verdict = Verdict::no;
            c.reason = e.what();
        }
        out.push_back(std::move(c));
    };
    auto S = [](long p, long q = 1) { return Scalar(p, q); };
    auto tag = [](const std::string& f, std::map<std::string, Scalar> p) { return make(make_tag(f, std::move(p))); };
    const std::vector<Scalar> as{S(1), S(-1), S(2), S(1, 2), S(-2), S(3)};
    const std::vector<Scalar> bs{S(0), S(1), S(-1), S(2), S(3)};
    const std::vector<Scalar> cs{S(0), S(1), S(-2), S(1, 2)};

    // J and K over H
    for (auto& a : as)
        for (auto& b : bs) {
            std::string ab = "a=" + a.str() + ",b=" + b.str();
            Module Jab = tag("J", {{"a", a}, {"b", b}});
            check("k(a,b-a) x J(1,1) = J(a,b) at " + ab,
                  tensor(tag("kGamma", {{"a", a}, {"b", b - a}}), tag("J", {{"a", S(1)}, {"b", S(1)}})), Jab);
            check("J(1,1) x k(a,b-1) = J(a,b) at " + ab,
                  tensor(tag("J", {{"a", S(1)}, {"b", S(1)}}), tag("kGamma", {{"a", a}, {"b", b - S(1)}})), Jab);
            check("J(a,b)* = J(1/a,-b/a) at " + ab, dual(Jab), tag("J", {{"a", a.inv()}, {"b", -b / a}}));
            for (auto& c : cs) {
                std::string abc = ab + ",c=" + c.str();
                Module Kabc = tag("K3", {{"a", a}, {"b", b}, {"c", c}});
                check("k(a,b-a) x K(1,1,c) = K(a,b,c) at " + abc,
                      tensor(tag("kGamma", {{"a", a}, {"b", b - a}}), tag("K3", {{"a", S(1)}, {"b", S(1)}, {"c", c}})),
                      Kabc);
                check("K(1,1,ac-(b-1)) x k(a,b-1) = K(a,b,c) at " + abc,
                      tensor(tag("K3", {{"a", S(1)}, {"b", S(1)}, {"c", a * c - (b - S(1))}}),
                             tag("kGamma", {{"a", a}, {"b", b - S(1)}})),
                      Kabc);
                check("K(a,b,c)* = K(1/a,-b/a,ca-b) at " + abc, dual(Kabc),
                      tag("K3", {{"a", a.inv()}, {"b", -b / a}, {"c", c * a - b}}));
            }
        }

    // coincidences among the four-dimensional F modules
    const std::vector<Scalar> fb{S(1), S(2), S(-1, 2)};
    for (auto& a : as) {
        std::string sa = "a=" + a.str();
        Scalar n4(4);
        // as displayed the first coincidence compares y of rank 2 with y of rank 1
        check("F4(i=1,n=4) at a is not F3(n=4) at -a, " + sa, tag("F4", {{"i", S(1)}, {"n", n4}, {"a", a}}),
              tag("F3", {{"n", n4}, {"a", -a}}), Verdict::no);
        check("F1(n=4) at a equals F3(n=4) at -a, " + sa, tag("F1", {{"n", n4}, {"a", a}}),
              tag("F3", {{"n", n4}, {"a", -a}}));
        check("F2(n=4) at a equals F4(i=1,n=4) at -a, " + sa, tag("F2", {{"n", n4}, {"a", a}}),
              tag("F4", {{"i", S(1)}, {"n", n4}, {"a", -a}}));
        for (auto& b : fb)
            for (auto& c : fb)
                check("F7(n=4,a,b,c) = F6(i=1,n=4,-a,c,b) at " + sa + ",b=" + b.str() + ",c=" + c.str(),
                      tag("F7", {{"n", n4}, {"a", a}, {"b", b}, {"c", c}}),
                      tag("F6", {{"i", S(1)}, {"n", n4}, {"a", -a}, {"b", c}, {"c", b}}));
        check("D3 at a equals the dual of D1 at 1/a, " + sa, tag("D3", {{"a", a}}), dual(tag("D1", {{"a", a.inv()}})));
    }

    // super Jordan families of dimension three
    Module L31 = tag("L3_1", {{"a", S(1)}}), L32 = tag("L3_2", {{"a", S(1)}});
    for (auto& a : as) {
        std::string sa = "a=" + a.str();
        Module ka = inflate_L_to_K(tag("k", {{"a", a}})), kma = inflate_L_to_K(tag("k", {{"a", -a}}));
        check("L3_2(a)* = L3_1(1/a) at " + sa, dual(tag("L3_2", {{"a", a}})), tag("L3_1", {{"a", a.inv()}}));
        check("L3_2(1) x k(a) = L3_2(a) at " + sa, tensor(L32, ka), tag("L3_2", {{"a", a}}));
        // twisting by k(-a) moves the double eigenvalue of g to -a
        check("L3_1(1) x k(-a) is not L3_1(a) at " + sa, tensor(L31, kma), tag("L3_1", {{"a", a}}), Verdict::no);
        check("L3_1(1) x k(a) = L3_1(a) at " + sa, tensor(L31, ka), tag("L3_1", {{"a", a}}));
        check("k(a) x L3_1(1) = L3_1(a) at " + sa, tensor(ka, L31), tag("L3_1", {{"a", a}}));
        check("k(a) x L3_2(1) = L3_2(a) at " + sa, tensor(ka, L32), tag("L3_2", {{"a", a}}));
    }
    return out;
}

}  // namespace hopfrep

#endif  // HOPFREP_CATALOG_HPP
