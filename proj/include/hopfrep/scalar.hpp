// Copyright 2026 The hopfrep Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Exact scalars in Q or a single quadratic extension Q(sqrt(d)).

#ifndef HOPFREP_SCALAR_HPP
#define HOPFREP_SCALAR_HPP

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace hopfrep {

struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// d == 0 means the base field Q.
struct FieldDesc {
    long d = 0;
    bool operator==(const FieldDesc&) const = default;
};

inline bool is_square_free(long d) {
    if (d == 0 || d == 1) return false;
    long m = d < 0 ? -d : d;
    for (long p = 2; p * p <= m; ++p)
        if (m % (p * p) == 0) return false;
    return true;
}

inline FieldDesc make_field(long d) {
    if (d != 0 && !is_square_free(d))
        throw MathError("field extension d=" + std::to_string(d) + " is not square-free");
    return FieldDesc{d};
}

class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : r_(v) {}  // NOLINT: implicit from integers is convenient
    Scalar(const mpq_class& r) : r_(r) { r_.canonicalize(); }  // NOLINT
    Scalar(long p, long q) : r_(p, q) { r_.canonicalize(); }
    Scalar(const mpq_class& r, const mpq_class& s, long d) : r_(r), s_(s), d_(d) {
        r_.canonicalize();
        s_.canonicalize();
        if (sgn(s_) != 0 && d_ == 0) throw MathError("irrational part without field extension");
    }

    static Scalar sqrt_d(long d) { return Scalar(mpq_class(0), mpq_class(1), d); }

    const mpq_class& r() const { return r_; }
    const mpq_class& s() const { return s_; }
    long d() const { return d_; }
    bool is_rational() const { return sgn(s_) == 0; }
    bool is_zero() const { return sgn(r_) == 0 && sgn(s_) == 0; }
    bool is_one() const { return sgn(s_) == 0 && r_ == 1; }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.r_ == b.r_ && a.s_ == b.s_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    // Lexicographic on (r, s); used only for canonical ordering.
    friend bool operator<(const Scalar& a, const Scalar& b) {
        int c = cmp(a.r_, b.r_);
        if (c != 0) return c < 0;
        return cmp(a.s_, b.s_) < 0;
    }

    Scalar operator-() const {
        Scalar t = *this;
        t.r_ = -t.r_;
        t.s_ = -t.s_;
        return t;
    }

    Scalar& operator+=(const Scalar& o) {
        long d = join(o);
        r_ += o.r_;
        if (sgn(o.s_) != 0) s_ += o.s_;
        d_ = d;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        long d = join(o);
        r_ -= o.r_;
        if (sgn(o.s_) != 0) s_ -= o.s_;
        d_ = d;
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        long d = join(o);
        if (sgn(s_) == 0 && sgn(o.s_) == 0) {
            r_ *= o.r_;
        } else {
            mpq_class nr = r_ * o.r_ + mpq_class(d) * s_ * o.s_;
            mpq_class ns = r_ * o.s_ + s_ * o.r_;
            r_ = nr;
            s_ = ns;
        }
        d_ = d;
        return *this;
    }
    Scalar& operator/=(const Scalar& o) { return *this *= o.inv(); }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    Scalar inv() const {
        if (is_zero()) throw MathError("division by zero");
        if (sgn(s_) == 0) return Scalar(mpq_class(1) / r_, mpq_class(0), d_);
        mpq_class n = r_ * r_ - mpq_class(d_) * s_ * s_;
        return Scalar(r_ / n, -s_ / n, d_);
    }

    Scalar conj() const { return Scalar(r_, -s_, d_); }
    // r^2 - d s^2, always rational.
    mpq_class norm() const { return r_ * r_ - mpq_class(d_) * s_ * s_; }

    Scalar pow(long e) const {
        if (e < 0) return inv().pow(-e);
        Scalar acc(1), b = *this;
        while (e) {
            if (e & 1) acc *= b;
            b *= b;
            e >>= 1;
        }
        return acc;
    }

    // Tag the scalar as living in Q(sqrt(d)); harmless for rationals.
    Scalar in_field(const FieldDesc& f) const {
        Scalar t = *this;
        if (f.d != 0 && t.d_ != 0 && t.d_ != f.d && !t.is_rational())
            throw MathError("mixed field extensions");
        if (t.is_rational()) t.d_ = f.d;
        return t;
    }

    std::string str() const {
        std::string a = rat_str(r_);
        if (sgn(s_) == 0) return a;
        std::string b = rat_str(abs(s_));
        return a + (sgn(s_) < 0 ? "-" : "+") + b + "*sqrt(" + std::to_string(d_) + ")";
    }

    static std::string rat_str(const mpq_class& q) {
        if (q.get_den() == 1) return q.get_num().get_str();
        return q.get_num().get_str() + "/" + q.get_den().get_str();
    }

    // Grammar: "p/q" or "p/q+r/s*sqrt(d)"; integers may drop "/q"; signs allowed.
    static Scalar parse(const std::string& text) {
        std::size_t pos = 0;
        auto fail = [&](const std::string& why) -> Scalar {
            throw MathError("bad scalar '" + text + "': " + why);
        };
        auto read_rat = [&](mpq_class& out) -> bool {
            std::size_t start = pos;
            if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
            std::size_t digits = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == digits) {
                pos = start;
                return false;
            }
            if (pos < text.size() && text[pos] == '/') {
                ++pos;
                std::size_t dd = pos;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
                if (pos == dd) return false;
            }
            try {
                std::string lit = text.substr(start, pos - start);
                if (lit[0] == '+') lit.erase(0, 1);
                out = mpq_class(lit);
            } catch (const std::invalid_argument&) {
                return false;
            }
            if (out.get_den() == 0) return false;
            out.canonicalize();
            return true;
        };
        auto read_sqrt = [&](long& d) -> bool {
            const std::string key = "sqrt(";
            if (text.compare(pos, key.size(), key) != 0) return false;
            pos += key.size();
            std::size_t start = pos;
            if (pos < text.size() && text[pos] == '-') ++pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == start || pos >= text.size() || text[pos] != ')') return false;
            d = std::stol(text.substr(start, pos - start));
            ++pos;
            return true;
        };
        if (text.empty()) return fail("empty");
        mpq_class r(0), s(0);
        long d = 0;
        // Leading bare sqrt term: "sqrt(d)", "-sqrt(d)".
        if (text.rfind("sqrt(", 0) == 0 || text.rfind("-sqrt(", 0) == 0 || text.rfind("+sqrt(", 0) == 0) {
            int sign = text[0] == '-' ? -1 : 1;
            if (text[0] == '-' || text[0] == '+') ++pos;
            if (!read_sqrt(d)) return fail("sqrt");
            s = sign;
        } else {
            mpq_class a;
            if (!read_rat(a)) return fail("rational");
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                if (!read_sqrt(d)) return fail("sqrt");
                s = a;
            } else {
                r = a;
                if (pos < text.size()) {
                    if (text[pos] != '+' && text[pos] != '-') return fail("trailing text");
                    int sign = text[pos] == '-' ? -1 : 1;
                    mpq_class b;
                    if (text.compare(pos + 1, 5, "sqrt(") == 0) {
                        ++pos;
                        b = 1;
                    } else if (!read_rat(b)) {
                        return fail("irrational coefficient");
                    } else {
                        b = abs(b);
                        if (pos >= text.size() || text[pos] != '*') return fail("expected '*'");
                        ++pos;
                    }
                    if (!read_sqrt(d)) return fail("sqrt");
                    s = sign * b;
                }
            }
        }
        if (pos != text.size()) return fail("trailing text");
        if (sgn(s) == 0) return Scalar(r);
        if (!is_square_free(d)) return fail("d must be square-free and not 0 or 1");
        return Scalar(r, s, d);
    }

private:
    long join(const Scalar& o) const {
        if (d_ == o.d_) return d_;
        bool mine = sgn(s_) != 0, theirs = sgn(o.s_) != 0;
        if (d_ != 0 && o.d_ != 0 && (mine || theirs)) throw MathError("mixed field extensions");
        return d_ != 0 ? d_ : o.d_;
    }

    mpq_class r_{0};
    mpq_class s_{0};
    long d_ = 0;
};

inline std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
    if (sgn(q) < 0) return std::nullopt;
    if (sgn(q) == 0) return mpq_class(0);
    mpz_class n = q.get_num(), m = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(m.get_mpz_t())) return std::nullopt;
    mpz_class a, b;
    mpz_sqrt(a.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(b.get_mpz_t(), m.get_mpz_t());
    return mpq_class(a, b);
}

// A square root inside the field, or nothing.
inline std::optional<Scalar> sqrt_in_field(const Scalar& x, const FieldDesc& f) {
    long d = f.d;
    if (!x.is_rational() && x.d() != d) throw MathError("mixed field extensions");
    if (x.is_rational()) {
        if (auto q = rational_sqrt(x.r())) return Scalar(*q).in_field(f);
        if (d != 0) {
            if (auto q = rational_sqrt(x.r() / d)) return Scalar(mpq_class(0), *q, d);
        }
        return std::nullopt;
    }
    // (u + v sqrt d)^2 = r + s sqrt d  =>  u^2 + d v^2 = r, 2uv = s.
    auto m = rational_sqrt(x.norm());
    if (!m) return std::nullopt;
    for (int sign : {1, -1}) {
        mpq_class u2 = (x.r() + sign * (*m)) / 2;
        if (sgn(u2) == 0) continue;
        if (auto u = rational_sqrt(u2)) {
            mpq_class v = x.s() / (2 * (*u));
            Scalar cand(*u, v, d);
            if (cand * cand == x) return cand;
        }
    }
    return std::nullopt;
}

}  // namespace hopfrep

#endif  // HOPFREP_SCALAR_HPP
