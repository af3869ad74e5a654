// Copyright 2026 The hopfrep Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Presentations of L, Lq, H, Hbar and K, noncommutative polynomials, rewriting
// to PBW normal form, Hopf structure maps and the algebra maps H -> K -> L.

#ifndef HOPFREP_PRESENTATION_HPP
#define HOPFREP_PRESENTATION_HPP

#include <hopfrep/scalar.hpp>

#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hopfrep {

using Word = std::vector<std::uint8_t>;

class NcPoly {
public:
    using Terms = std::map<Word, Scalar>;

    NcPoly() = default;
    NcPoly(const Scalar& c) {  // NOLINT
        if (!c.is_zero()) t_[Word{}] = c;
    }
    static NcPoly word(Word w, const Scalar& c = Scalar(1)) {
        NcPoly p;
        if (!c.is_zero()) p.t_[std::move(w)] = c;
        return p;
    }
    static NcPoly gen(std::uint8_t g) { return word(Word{g}); }

    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t size() const { return t_.size(); }

    void add(const Word& w, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = t_.find(w);
        if (it == t_.end()) {
            t_.emplace(w, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }

    friend bool operator==(const NcPoly& a, const NcPoly& b) { return a.t_ == b.t_; }
    friend bool operator!=(const NcPoly& a, const NcPoly& b) { return !(a == b); }

    NcPoly& operator+=(const NcPoly& o) {
        for (auto& [w, c] : o.t_) add(w, c);
        return *this;
    }
    NcPoly& operator-=(const NcPoly& o) {
        for (auto& [w, c] : o.t_) add(w, -c);
        return *this;
    }
    friend NcPoly operator+(NcPoly a, const NcPoly& b) { return a += b; }
    friend NcPoly operator-(NcPoly a, const NcPoly& b) { return a -= b; }
    NcPoly operator-() const { return NcPoly() - *this; }
    friend NcPoly operator*(const NcPoly& a, const NcPoly& b) {
        NcPoly out;
        for (auto& [u, c] : a.t_)
            for (auto& [v, d] : b.t_) {
                Word w = u;
                w.insert(w.end(), v.begin(), v.end());
                out.add(w, c * d);
            }
        return out;
    }
    friend NcPoly operator*(const Scalar& s, const NcPoly& a) { return NcPoly(s) * a; }

private:
    Terms t_;
};

enum class GenKind { grouplike, grouplike_inverse, skew_primitive, derived };

// Left side is always a pair of letters.
struct Rule {
    std::array<std::uint8_t, 2> lhs;
    NcPoly rhs;
};

enum class Strategy { leftmost, rightmost };

struct NamedPoly {
    std::string name;
    NcPoly poly;
};

class Presentation {
public:
    std::string name;
    std::vector<std::string> gens;
    std::vector<GenKind> kinds;
    std::optional<Scalar> q;
    std::vector<Rule> rules;
    std::vector<NamedPoly> relations;         // defining relations, ginv allowed
    std::vector<NamedPoly> module_relations;  // ginv-free forms used to certify matrices
    std::map<std::uint8_t, NcPoly> expansion; // derived letter -> expression in the others
    std::string pbw;

    // Rule lookup by left-hand pair; call after the rules are final.
    void index_rules() {
        const std::size_t n = gens.size();
        table_.assign(n * n, -1);
        for (std::size_t r = rules.size(); r-- > 0;) table_[rules[r].lhs[0] * n + rules[r].lhs[1]] = static_cast<int>(r);
    }

    // Normal form by folding letters into memoized products (normal word) x
    // (letter). Same result as the rewriting engine; much faster on long words.
    NcPoly reduce(const NcPoly& p) const {
        std::lock_guard<std::recursive_mutex> lock(cache_->mu);
        NcPoly out;
        for (auto& [w, c] : p.terms()) {
            NcPoly acc(c);
            for (auto x : w) acc = times_letter(acc, x);
            out += acc;
        }
        return out;
    }

    // Product of normal forms, kept in normal form.
    NcPoly mul(const NcPoly& a, const NcPoly& b) const {
        std::lock_guard<std::recursive_mutex> lock(cache_->mu);
        NcPoly out;
        for (auto& [w, c] : b.terms()) {
            NcPoly acc = c * a;
            for (auto x : w) acc = times_letter(acc, x);
            out += acc;
        }
        return out;
    }
    NcPoly power(const NcPoly& a, int n) const {
        NcPoly acc(Scalar(1));
        for (int i = 0; i < n; ++i) acc = mul(acc, a);
        return acc;
    }

    std::uint8_t g() const { return index("g"); }
    std::uint8_t ginv() const { return index("ginv"); }

    std::optional<std::uint8_t> find(const std::string& s) const {
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (gens[i] == s) return static_cast<std::uint8_t>(i);
        return std::nullopt;
    }
    std::uint8_t index(const std::string& s) const {
        if (auto i = find(s)) return *i;
        throw MathError("algebra " + name + " has no generator '" + s + "'");
    }
    NcPoly operator()(const std::string& s) const { return NcPoly::gen(index(s)); }

    // Transcript: number of applications per rule index.
    using Transcript = std::map<std::size_t, std::size_t>;

    NcPoly normal_form(const NcPoly& p) const { return reduce(p); }

    // One redex per term per round, chosen by the strategy.
    NcPoly rewrite(const NcPoly& p, Strategy s, Transcript* tr = nullptr) const {
        NcPoly result;
        NcPoly::Terms pending = p.terms();
        while (!pending.empty()) {
            NcPoly next;
            for (auto& [w, c] : pending) {
                auto hit = match(w, s);
                if (!hit) {
                    result.add(w, c);
                    continue;
                }
                auto [pos, ri] = *hit;
                if (tr) ++(*tr)[ri];
                for (auto& [rw, rc] : rules[ri].rhs.terms()) {
                    Word nw(w.begin(), w.begin() + static_cast<long>(pos));
                    nw.insert(nw.end(), rw.begin(), rw.end());
                    nw.insert(nw.end(), w.begin() + static_cast<long>(pos) + 2, w.end());
                    next.add(nw, c * rc);
                }
            }
            pending = next.terms();
        }
        return result;
    }

    bool is_normal(const Word& w) const { return !match(w, Strategy::leftmost).has_value(); }

    std::string word_str(const Word& w) const {
        std::string s;
        for (std::size_t i = 0; i < w.size();) {
            std::size_t j = i;
            while (j < w.size() && w[j] == w[i]) ++j;
            if (!s.empty()) s += ' ';
            s += gens[w[i]];
            if (j - i > 1) s += "^" + std::to_string(j - i);
            i = j;
        }
        return s;
    }

    std::string str(const NcPoly& p) const {
        if (p.is_zero()) return "0";
        std::string s;
        for (auto& [w, c] : p.terms()) {
            bool neg = c.is_rational() && sgn(c.r()) < 0;
            Scalar a = neg ? -c : c;
            std::string coef = a.is_rational() ? a.str() : "(" + a.str() + ")";
            std::string term;
            if (w.empty()) term = coef;
            else if (a.is_one()) term = word_str(w);
            else term = coef + " " + word_str(w);
            if (s.empty()) s = neg ? "-" + term : term;
            else s += (neg ? " - " : " + ") + term;
        }
        return s;
    }

    // Product of generators written by name, e.g. word({"x1","x2"}).
    NcPoly word(std::initializer_list<const char*> names) const {
        Word w;
        for (auto* n : names) w.push_back(index(n));
        return NcPoly::word(w);
    }

private:
    struct Cache {
        std::recursive_mutex mu;
        std::map<std::pair<Word, std::uint8_t>, NcPoly> prod;
    };

    NcPoly times_letter(const NcPoly& a, std::uint8_t x) const {
        NcPoly out;
        for (auto& [u, c] : a.terms()) out += c * word_times_letter(u, x);
        return out;
    }

    // nf(u x) for a normal word u.
    NcPoly word_times_letter(const Word& u, std::uint8_t x) const {
        const std::size_t n = gens.size();
        int r = (u.empty() || table_.empty()) ? -1 : table_[u.back() * n + x];
        if (r < 0) {
            Word w = u;
            w.push_back(x);
            return NcPoly::word(w);
        }
        auto key = std::make_pair(u, x);
        if (auto it = cache_->prod.find(key); it != cache_->prod.end()) return it->second;
        Word head(u.begin(), u.end() - 1);
        NcPoly out;
        for (auto& [rw, rc] : rules[static_cast<std::size_t>(r)].rhs.terms()) {
            NcPoly acc = NcPoly::word(head, rc);
            for (auto y : rw) acc = times_letter(acc, y);
            out += acc;
        }
        cache_->prod.emplace(std::move(key), out);
        return out;
    }

    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();

    std::optional<std::pair<std::size_t, std::size_t>> match(const Word& w, Strategy s) const {
        if (w.size() < 2) return std::nullopt;
        const std::size_t n = gens.size();
        auto rule_at = [&](std::size_t i) -> std::optional<std::size_t> {
            if (!table_.empty()) {
                int r = table_[w[i] * n + w[i + 1]];
                if (r < 0) return std::nullopt;
                return static_cast<std::size_t>(r);
            }
            for (std::size_t r = 0; r < rules.size(); ++r)
                if (rules[r].lhs[0] == w[i] && rules[r].lhs[1] == w[i + 1]) return r;
            return std::nullopt;
        };
        if (s == Strategy::leftmost) {
            for (std::size_t i = 0; i + 1 < w.size(); ++i)
                if (auto r = rule_at(i)) return std::make_pair(i, *r);
        } else {
            for (std::size_t i = w.size() - 1; i-- > 0;)
                if (auto r = rule_at(i)) return std::make_pair(i, *r);
        }
        return std::nullopt;
    }

    std::vector<int> table_;
};

inline NcPoly pow(const NcPoly& p, int n) {
    NcPoly acc(Scalar(1));
    for (int i = 0; i < n; ++i) acc = acc * p;
    return acc;
}

// ------------------------------------------------------------- construction

namespace detail {

inline void add_rule(Presentation& P, const char* a, const char* b, NcPoly rhs) {
    P.rules.push_back({{P.index(a), P.index(b)}, std::move(rhs)});
}

inline void add_group_rules(Presentation& P) {
    add_rule(P, "g", "ginv", NcPoly(Scalar(1)));
    add_rule(P, "ginv", "g", NcPoly(Scalar(1)));
    P.relations.push_back({"g ginv - 1", P("g") * P("ginv") - Scalar(1)});
    P.relations.push_back({"ginv g - 1", P("ginv") * P("g") - Scalar(1)});
}

}  // namespace detail

inline Presentation build_presentation(const std::string& name, std::optional<Scalar> q = std::nullopt) {
    using detail::add_rule;
    Presentation P;
    P.name = name;
    if (name == "L" || name == "Lq") {
        P.gens = {"g", "ginv", "y"};
        P.kinds = {GenKind::grouplike, GenKind::grouplike_inverse, GenKind::skew_primitive};
        Scalar qq(-1);
        if (name == "Lq") {
            if (!q || q->is_zero()) throw MathError("Lq needs a nonzero parameter q");
            qq = *q;
            P.q = q;
        }
        auto g = P("g"), gi = P("ginv"), y = P("y");
        add_rule(P, "g", "y", qq * (y * g));
        add_rule(P, "ginv", "y", qq.inv() * (y * gi));
        detail::add_group_rules(P);
        P.relations.push_back({"g y ginv - q y", g * y * gi - qq * y});
        P.module_relations.push_back({name == "L" ? "gy+yg" : "gy-q*yg", g * y - qq * (y * g)});
        P.pbw = "y^a g^b";
    } else if (name == "H") {
        P.gens = {"g", "ginv", "a1", "a2"};
        P.kinds = {GenKind::grouplike, GenKind::grouplike_inverse, GenKind::skew_primitive,
                   GenKind::skew_primitive};
        auto g = P("g"), gi = P("ginv"), a1 = P("a1"), a2 = P("a2");
        Scalar half(1, 2);
        add_rule(P, "a2", "a1", a1 * a2 - half * (a1 * a1));
        add_rule(P, "g", "a1", a1 * g);
        add_rule(P, "g", "a2", (a1 + a2) * g);
        add_rule(P, "ginv", "a1", a1 * gi);
        add_rule(P, "ginv", "a2", (a2 - a1) * gi);
        detail::add_group_rules(P);
        P.relations.push_back({"a2 a1 - a1 a2 + 1/2 a1^2", a2 * a1 - a1 * a2 + half * (a1 * a1)});
        P.relations.push_back({"g a1 ginv - a1", g * a1 * gi - a1});
        P.relations.push_back({"g a2 ginv - a1 - a2", g * a2 * gi - a1 - a2});
        P.module_relations = {{"a2a1-a1a2+1/2a1^2", a2 * a1 - a1 * a2 + half * (a1 * a1)},
                              {"ga1-a1g", g * a1 - a1 * g},
                              {"ga2-(a1+a2)g", g * a2 - (a1 + a2) * g}};
        P.pbw = "a1^a a2^b g^c";
    } else if (name == "Hbar") {
        P.gens = {"g", "ginv", "a2"};
        P.kinds = {GenKind::grouplike, GenKind::grouplike_inverse, GenKind::skew_primitive};
        auto g = P("g"), gi = P("ginv"), a2 = P("a2");
        add_rule(P, "g", "a2", a2 * g);
        add_rule(P, "ginv", "a2", a2 * gi);
        detail::add_group_rules(P);
        P.relations.push_back({"g a2 ginv - a2", g * a2 * gi - a2});
        P.module_relations = {{"ga2-a2g", g * a2 - a2 * g}};
        P.pbw = "a2^a g^b";
    } else if (name == "K") {
        P.gens = {"g", "ginv", "x1", "x2", "x21"};
        P.kinds = {GenKind::grouplike, GenKind::grouplike_inverse, GenKind::skew_primitive,
                   GenKind::skew_primitive, GenKind::derived};
        auto g = P("g"), gi = P("ginv"), x1 = P("x1"), x2 = P("x2"), x21 = P("x21");
        add_rule(P, "x2", "x1", x21 - x1 * x2);
        add_rule(P, "x21", "x1", x1 * x21);
        add_rule(P, "x2", "x21", x21 * x2 + x1 * x21);
        add_rule(P, "x1", "x1", NcPoly());
        add_rule(P, "g", "x1", -(x1 * g));
        add_rule(P, "g", "x2", (x1 - x2) * g);
        add_rule(P, "g", "x21", x21 * g);
        add_rule(P, "ginv", "x1", -(x1 * gi));
        add_rule(P, "ginv", "x2", (-x1 - x2) * gi);
        add_rule(P, "ginv", "x21", x21 * gi);
        detail::add_group_rules(P);
        P.expansion[P.index("x21")] = x1 * x2 + x2 * x1;
        P.relations.push_back({"x21 - x1 x2 - x2 x1", x21 - x1 * x2 - x2 * x1});
        P.relations.push_back({"x1^2", x1 * x1});
        P.relations.push_back({"x2 x21 - x21 x2 - x1 x21", x2 * x21 - x21 * x2 - x1 * x21});
        P.relations.push_back({"g x1 ginv + x1", g * x1 * gi + x1});
        P.relations.push_back({"g x2 ginv - x1 + x2", g * x2 * gi - x1 + x2});
        P.module_relations = {{"x1^2", x1 * x1},
                              {"x2x21-x21x2-x1x21", x2 * x21 - x21 * x2 - x1 * x21},
                              {"gx1+x1g", g * x1 + x1 * g},
                              {"gx2-(x1-x2)g", g * x2 - (x1 - x2) * g}};
        P.pbw = "x1^a x21^b x2^c g^d, a in {0,1}";
    } else {
        throw MathError("unknown algebra '" + name + "'");
    }
    P.index_rules();
    return P;
}

// ------------------------------------------------------------------ parsing

// Expression grammar: sums of products of generators, scalar literals,
// sqrt(d), parenthesized expressions and integer powers.
class ExprParser {
public:
    ExprParser(const Presentation& P, std::string text) : P_(P), s_(std::move(text)) {}

    NcPoly parse() {
        NcPoly p = expr();
        skip();
        if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw MathError("parse error in '" + s_ + "' at " + std::to_string(i_) + ": " + why);
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool peek(char c) {
        skip();
        return i_ < s_.size() && s_[i_] == c;
    }
    bool at_factor() {
        skip();
        if (i_ >= s_.size()) return false;
        char c = s_[i_];
        return std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '*';
    }

    NcPoly expr() {
        NcPoly acc;
        bool first = true;
        while (true) {
            int sign = 1;
            if (peek('+') || peek('-')) {
                sign = s_[i_] == '-' ? -1 : 1;
                ++i_;
            } else if (!first) {
                break;
            }
            NcPoly t = term();
            acc += sign < 0 ? -t : t;
            first = false;
        }
        return acc;
    }

    NcPoly term() {
        NcPoly acc(Scalar(1));
        bool any = false;
        while (at_factor()) {
            if (s_[i_] == '*') {
                if (!any) fail("dangling '*'");
                ++i_;
                continue;
            }
            acc = acc * factor();
            any = true;
        }
        if (!any) fail("expected a term");
        return acc;
    }

    NcPoly factor() {
        NcPoly base = atom();
        if (peek('^')) {
            ++i_;
            skip();
            std::size_t st = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            if (st == i_) fail("expected exponent");
            base = pow(base, std::stoi(s_.substr(st, i_ - st)));
        }
        return base;
    }

    NcPoly atom() {
        skip();
        if (s_[i_] == '(') {
            ++i_;
            NcPoly e = expr();
            if (!peek(')')) fail("expected ')'");
            ++i_;
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            std::size_t st = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            if (i_ < s_.size() && s_[i_] == '/') {
                ++i_;
                std::size_t d = i_;
                while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
                if (d == i_) fail("expected denominator");
            }
            return NcPoly(Scalar::parse(s_.substr(st, i_ - st)));
        }
        if (s_.compare(i_, 5, "sqrt(") == 0) {
            std::size_t close = s_.find(')', i_);
            if (close == std::string::npos) fail("unclosed sqrt");
            Scalar v = Scalar::parse(s_.substr(i_, close - i_ + 1));
            i_ = close + 1;
            return NcPoly(v);
        }
        // longest generator name match
        std::size_t best = 0;
        std::optional<std::uint8_t> which;
        for (std::size_t k = 0; k < P_.gens.size(); ++k) {
            const auto& n = P_.gens[k];
            if (n.size() > best && s_.compare(i_, n.size(), n) == 0) {
                best = n.size();
                which = static_cast<std::uint8_t>(k);
            }
        }
        if (!which) fail("unknown symbol for algebra " + P_.name);
        i_ += best;
        return NcPoly::gen(*which);
    }

    const Presentation& P_;
    std::string s_;
    std::size_t i_ = 0;
};

inline NcPoly parse_expr(const Presentation& P, const std::string& text) { return ExprParser(P, text).parse(); }

// ------------------------------------------------------- identity checking

struct IdentityResult {
    std::string label;
    bool ok = false;
    NcPoly residual;                     // nf(lhs - rhs)
    std::vector<std::string> transcript;  // rule applications
};

inline IdentityResult verify_identity(const Presentation& P, const NcPoly& lhs, const NcPoly& rhs,
                                      std::string label = {}) {
    IdentityResult r;
    r.label = std::move(label);
    Presentation::Transcript tr;
    r.residual = P.rewrite(lhs - rhs, Strategy::leftmost, &tr);
    r.ok = r.residual.is_zero();
    for (auto& [ri, count] : tr) {
        const Rule& rule = P.rules[ri];
        r.transcript.push_back(P.gens[rule.lhs[0]] + " " + P.gens[rule.lhs[1]] + " -> " + P.str(rule.rhs) + " x" +
                               std::to_string(count));
    }
    return r;
}

// A line "lhs == rhs"; '#' starts a comment. Returns nothing for blank lines.
inline std::optional<IdentityResult> verify_identity_line(const Presentation& P, std::string line) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto blank = line.find_first_not_of(" \t\r");
    if (blank == std::string::npos) return std::nullopt;
    auto eq = line.find("==");
    if (eq == std::string::npos) throw MathError("identity line without '==': " + line);
    auto lhs = parse_expr(P, line.substr(0, eq));
    auto rhs = parse_expr(P, line.substr(eq + 2));
    auto trim = [](std::string s) {
        auto a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    return verify_identity(P, lhs, rhs, trim(line));
}

// ------------------------------------------------------------- Hopf structure

// Element of A^{\otimes k}: map from k-tuples of words.
using TensorPoly = std::map<std::vector<Word>, Scalar>;

class HopfOps {
public:
    explicit HopfOps(const Presentation& P) : P_(P) {}

    NcPoly nf(const NcPoly& p) const { return P_.normal_form(p); }

    TensorPoly delta_gen(std::uint8_t x) const {
        TensorPoly t;
        switch (P_.kinds[x]) {
            case GenKind::grouplike:
            case GenKind::grouplike_inverse:
                t[{Word{x}, Word{x}}] = 1;
                break;
            case GenKind::skew_primitive:
                t[{Word{x}, Word{}}] = 1;
                t[{Word{P_.g()}, Word{x}}] = 1;
                break;
            case GenKind::derived:
                return delta(P_.expansion.at(x));
        }
        return t;
    }

    TensorPoly delta(const NcPoly& p) const {
        TensorPoly out;
        for (auto& [w, c] : p.terms()) {
            TensorPoly acc;
            acc[{Word{}, Word{}}] = c;
            for (auto x : w) acc = normalize(mul(acc, delta_gen(x)));
            add_into(out, acc);
        }
        return out;
    }

    // Apply delta to tensor slot k of a tensor element.
    TensorPoly delta_at(const TensorPoly& t, std::size_t k) const {
        TensorPoly out;
        for (auto& [tup, c] : t) {
            for (auto& [d, e] : delta(NcPoly::word(tup[k]))) {
                std::vector<Word> nt;
                for (std::size_t i = 0; i < tup.size(); ++i) {
                    if (i == k) {
                        nt.push_back(d[0]);
                        nt.push_back(d[1]);
                    } else {
                        nt.push_back(tup[i]);
                    }
                }
                add_term(out, nt, c * e);
            }
        }
        return out;
    }

    Scalar counit(const NcPoly& p) const {
        Scalar s;
        for (auto& [w, c] : p.terms()) {
            Scalar t = c;
            for (auto x : w) {
                if (P_.kinds[x] == GenKind::derived) t *= counit(P_.expansion.at(x));
                else if (P_.kinds[x] == GenKind::skew_primitive) t = Scalar(0);
            }
            s += t;
        }
        return s;
    }

    NcPoly antipode_gen(std::uint8_t x) const {
        switch (P_.kinds[x]) {
            case GenKind::grouplike: return NcPoly::gen(P_.ginv());
            case GenKind::grouplike_inverse: return NcPoly::gen(P_.g());
            case GenKind::skew_primitive: return -(NcPoly::gen(P_.ginv()) * NcPoly::gen(x));
            case GenKind::derived: return antipode(P_.expansion.at(x));
        }
        return NcPoly();
    }

    // Anti-multiplicative.
    NcPoly antipode(const NcPoly& p) const {
        NcPoly out;
        for (auto& [w, c] : p.terms()) {
            NcPoly acc(c);
            for (auto it = w.rbegin(); it != w.rend(); ++it) acc = acc * antipode_gen(*it);
            out += acc;
        }
        return nf(out);
    }

    // slot-wise counit of a 2-tensor on one side
    NcPoly counit_left(const TensorPoly& t) const {
        NcPoly out;
        for (auto& [tup, c] : t) out += counit(NcPoly::word(tup[0])) * c * NcPoly::word(tup[1]);
        return nf(out);
    }
    NcPoly counit_right(const TensorPoly& t) const {
        NcPoly out;
        for (auto& [tup, c] : t) out += counit(NcPoly::word(tup[1])) * c * NcPoly::word(tup[0]);
        return nf(out);
    }
    // m(S (x) id) and m(id (x) S)
    NcPoly antipode_left(const TensorPoly& t) const {
        NcPoly out;
        for (auto& [tup, c] : t) out += c * (antipode(NcPoly::word(tup[0])) * NcPoly::word(tup[1]));
        return nf(out);
    }
    NcPoly antipode_right(const TensorPoly& t) const {
        NcPoly out;
        for (auto& [tup, c] : t) out += c * (NcPoly::word(tup[0]) * antipode(NcPoly::word(tup[1])));
        return nf(out);
    }

    TensorPoly normalize(const TensorPoly& t) const {
        // normal form slot by slot, multilinear expansion
        TensorPoly cur = t;
        std::size_t k = cur.empty() ? 0 : cur.begin()->first.size();
        for (std::size_t slot = 0; slot < k; ++slot) {
            TensorPoly next;
            for (auto& [tup, c] : cur) {
                NcPoly red = nf(NcPoly::word(tup[slot]));
                for (auto& [w, d] : red.terms()) {
                    auto nt = tup;
                    nt[slot] = w;
                    add_term(next, nt, c * d);
                }
            }
            cur = std::move(next);
        }
        return cur;
    }

    static TensorPoly mul(const TensorPoly& a, const TensorPoly& b) {
        TensorPoly out;
        for (auto& [u, c] : a)
            for (auto& [v, d] : b) {
                std::vector<Word> w = u;
                for (std::size_t i = 0; i < w.size(); ++i) w[i].insert(w[i].end(), v[i].begin(), v[i].end());
                add_term(out, w, c * d);
            }
        return out;
    }

    static void add_term(TensorPoly& t, const std::vector<Word>& k, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = t.find(k);
        if (it == t.end()) {
            t.emplace(k, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) t.erase(it);
    }
    static void add_into(TensorPoly& t, const TensorPoly& o) {
        for (auto& [k, c] : o) add_term(t, k, c);
    }

private:
    const Presentation& P_;
};

struct AxiomCheck {
    std::string axiom;
    std::string element;
    bool ok = false;
};

// Hopf axioms on the generators and on all words of length <= max_len, plus
// compatibility of counit, comultiplication and antipode with every relation.
inline std::vector<AxiomCheck> check_hopf_axioms(const Presentation& P, int max_len = 2) {
    HopfOps H(P);
    std::vector<AxiomCheck> out;
    std::vector<Word> elems;
    std::vector<Word> layer{Word{}};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Word> nl;
        for (auto& w : layer)
            for (std::uint8_t x = 0; x < P.gens.size(); ++x) {
                Word v = w;
                v.push_back(x);
                nl.push_back(v);
                elems.push_back(v);
            }
        layer = std::move(nl);
    }
    for (auto& w : elems) {
        NcPoly u = P.normal_form(NcPoly::word(w));
        std::string name = P.word_str(w);
        TensorPoly d = H.delta(u);
        TensorPoly l = H.normalize(H.delta_at(d, 0)), r = H.normalize(H.delta_at(d, 1));
        out.push_back({"coassociativity", name, l == r});
        out.push_back({"counit", name, H.counit_left(d) == u && H.counit_right(d) == u});
        NcPoly e(H.counit(u));
        out.push_back({"antipode", name, H.antipode_left(d) == e && H.antipode_right(d) == e});
    }
    for (auto& rel : P.relations) {
        out.push_back({"delta respects relation", rel.name, H.normalize(H.delta(rel.poly)).empty()});
        out.push_back({"counit respects relation", rel.name, H.counit(rel.poly).is_zero()});
        out.push_back({"antipode respects relation", rel.name, H.antipode(rel.poly).is_zero()});
    }
    return out;
}

// ------------------------------------------------------------- algebra maps

struct AlgebraMap {
    const Presentation* from;
    const Presentation* to;
    std::vector<NcPoly> images;  // one per generator of `from`

    NcPoly operator()(const NcPoly& p) const {
        NcPoly out;
        for (auto& [w, c] : p.terms()) {
            NcPoly acc(c);
            for (auto x : w) acc = to->normal_form(acc * images[x]);
            out += acc;
        }
        return to->normal_form(out);
    }

    // Every relation of the source maps to zero.
    std::vector<AxiomCheck> check() const {
        std::vector<AxiomCheck> out;
        for (auto& rel : from->relations) out.push_back({"kills relation", rel.name, (*this)(rel.poly).is_zero()});
        return out;
    }
};

// H -> K: a1 -> x21, a2 -> -1/2 x2^2, g -> g^2.
inline AlgebraMap phi_map(const Presentation& H, const Presentation& K) {
    AlgebraMap m{&H, &K, std::vector<NcPoly>(H.gens.size())};
    m.images[H.index("g")] = K("g") * K("g");
    m.images[H.index("ginv")] = K("ginv") * K("ginv");
    m.images[H.index("a1")] = K("x21");
    m.images[H.index("a2")] = Scalar(-1, 2) * (K("x2") * K("x2"));
    return m;
}

// K -> L: x1 -> 0, x2 -> y, g -> g.
inline AlgebraMap pi_map(const Presentation& K, const Presentation& L) {
    AlgebraMap m{&K, &L, std::vector<NcPoly>(K.gens.size())};
    m.images[K.index("g")] = L("g");
    m.images[K.index("ginv")] = L("ginv");
    m.images[K.index("x1")] = NcPoly();
    m.images[K.index("x2")] = L("y");
    m.images[K.index("x21")] = NcPoly();
    return m;
}

// -------------------------------------------------------- identity families

namespace detail {

inline Scalar falling(int n, int j) {  // n!/(n-j)!
    Scalar r(1);
    for (int i = 0; i < j; ++i) r *= Scalar(n - i);
    return r;
}

}  // namespace detail

// x1 x2^n = (-1)^n x2^n x1 + P_n x21, with P_1 = 1 and
// P_n = (-1)^(n-1) x2^(n-1) + P_(n-1) r for r = x2 - x1.
inline NcPoly x1_x2n_coefficient(const Presentation& K, int n) {
    NcPoly x1 = K("x1"), x2 = K("x2"), r = x2 - x1;
    NcPoly p(Scalar(1));
    for (int k = 2; k <= n; ++k) p = Scalar(k % 2 == 0 ? -1 : 1) * pow(x2, k - 1) + p * r;
    return p;
}

inline std::vector<IdentityResult> identity_suite(const Presentation& P, int n_max,
                                                  const std::vector<Scalar>& params) {
    std::vector<IdentityResult> out;
    auto add = [&](const NcPoly& l, const NcPoly& r, const std::string& label) {
        out.push_back(verify_identity(P, l, r, label));
    };
    auto ns = [](Scalar s) { return s.str(); };
    if (P.name == "L" || P.name == "Lq") {
        auto g = P("g"), y = P("y"), gi = P("ginv");
        Scalar q = P.q.value_or(Scalar(-1));
        add(g * y * gi, q * y, "g y ginv == q y");
        for (int n = 1; n <= n_max; ++n) {
            add(pow(g, n) * y, q.pow(n) * (y * pow(g, n)), "g^" + std::to_string(n) + " y == q^n y g^n");
            add(pow(gi, n) * y, q.pow(-n) * (y * pow(gi, n)), "ginv^" + std::to_string(n) + " y == q^-n y ginv^n");
        }
        if (P.name == "L") {
            add(g * y * y, y * y * g, "g y^2 == y^2 g");
            add(pow(g, 2) * y, y * pow(g, 2), "g^2 y == y g^2");
        }
    } else if (P.name == "H") {
        auto g = P("g"), a1 = P("a1"), a2 = P("a2"), gi = P("ginv");
        for (auto& rel : P.relations) add(rel.poly, NcPoly(), rel.name + " == 0");
        for (int n = 1; n <= n_max; ++n) {
            std::string s = std::to_string(n);
            add(a2 * pow(a1, n), pow(a1, n) * a2 - Scalar(n, 2) * pow(a1, n + 1), "a2 a1^" + s + " == a1^n a2 - n/2 a1^(n+1)");
            add(pow(g, n) * a2, (a2 + Scalar(n) * a1) * pow(g, n), "g^" + s + " a2 == (a2 + n a1) g^n");
            add(pow(gi, n) * a2, (a2 - Scalar(n) * a1) * pow(gi, n), "ginv^" + s + " a2 == (a2 - n a1) ginv^n");
        }
    } else if (P.name == "Hbar") {
        for (auto& rel : P.relations) add(rel.poly, NcPoly(), rel.name + " == 0");
    } else if (P.name == "K") {
        auto g = P("g"), x1 = P("x1"), x2 = P("x2"), x21 = P("x21");
        for (auto& rel : P.relations) add(rel.poly, NcPoly(), rel.name + " == 0");
        NcPoly x12 = x1 * x2 + x2 * x1;
        add(x12 * x1, x1 * x12, "x21 x1 == x1 x21");
        add(x2 * x2 * x1, x1 * x2 * x2 + x1 * x2 * x1, "x2^2 x1 == x1 x2^2 + x1 x2 x1");
        add(x12 * x2 * x2, (x2 * x2 - x12) * x12, "x21 x2^2 == (x2^2 - x21) x21");
        add(g * x12, x12 * g, "g x21 == x21 g");
        add(g * x2 * x2, (x2 * x2 - x12) * g, "g x2^2 == (x2^2 - x21) g");
        for (int n = 1; n <= n_max; ++n) {
            Scalar sign(n % 2 == 0 ? 1 : -1);
            add(x1 * pow(x2, n), sign * (pow(x2, n) * x1) + x1_x2n_coefficient(P, n) * x12,
                "x1 x2^" + std::to_string(n) + " == (-1)^n x2^n x1 + P_n x21");
        }
        // Products below are formed in normal form step by step, which is sound
        // because nf(uv) = nf(nf(u) nf(v)).
        auto M = [&](const NcPoly& a, const NcPoly& b) { return P.mul(a, b); };
        auto Pw = [&](const NcPoly& a, int n) { return P.power(a, n); };
        NcPoly s = P.normal_form(x12), t = P.normal_form(x2 * x2);
        for (auto& a : params) {
            NcPoly z = t - a, w = s - a;
            std::vector<NcPoly> zp{NcPoly(Scalar(1))}, sp{NcPoly(Scalar(1))}, wp{NcPoly(Scalar(1))};
            for (int k = 1; k <= n_max; ++k) {
                zp.push_back(M(zp.back(), z));
                sp.push_back(M(sp.back(), s));
                wp.push_back(M(wp.back(), w));
            }
            for (int n = 1; n <= n_max; ++n) {
                std::string tag = " (n=" + std::to_string(n) + ", a=" + ns(a) + ")";
                NcPoly sum;
                for (int j = 0; j <= n; ++j) sum += detail::falling(n, j) * M(sp[j], zp[n - j]);
                add(M(zp[n], x1), M(x1, sum), "z^n x1 == x1 sum zeta s^j z^(n-j)" + tag);
                add(M(zp[n], g), M(g, Pw(z + s, n)), "z^n g == g (z+s)^n" + tag);
                add(Pw(z + s, n), sum, "(z+s)^n == sum zeta s^j z^(n-j)" + tag);
                add(M(wp[n], x2), M(x2, wp[n]) - Scalar(n) * M(M(x1, s), wp[n - 1]),
                    "w^n x2 == x2 w^n - n x1 s w^(n-1)" + tag);
            }
            const Scalar& b = a;
            NcPoly gm = g - b, gp = g + b;
            for (int n = 1; n <= n_max; ++n) {
                std::string btag = " (n=" + std::to_string(n) + ", b=" + ns(b) + ")";
                Scalar sg(n % 2 == 0 ? 1 : -1);
                add(M(Pw(gm, n), x1), sg * M(x1, Pw(gp, n)), "(g-b)^n x1 == (-1)^n x1 (g+b)^n" + btag);
                add(M(Pw(gm, n), x2), -sg * M(Scalar(n) * M(x1, g) - M(x2, gp), Pw(gp, n - 1)),
                    "(g-b)^n x2 == (-1)^(n-1) (n x1 g - x2 (g+b)) (g+b)^(n-1)" + btag);
            }
        }
    }
    return out;
}

inline std::vector<Scalar> default_identity_params() {
    return {Scalar(0), Scalar(1), Scalar(-1), Scalar(2), Scalar(-2), Scalar(1, 2)};
}

}  // namespace hopfrep

#endif  // HOPFREP_PRESENTATION_HPP
