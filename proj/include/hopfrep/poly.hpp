// Copyright 2026 The hopfrep Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Univariate polynomials over Scalar, characteristic and minimal polynomials,
// factorization (rational roots plus quadratic splitting) and generalized
// eigenspaces.

#ifndef HOPFREP_POLY_HPP
#define HOPFREP_POLY_HPP

#include <hopfrep/matrix.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace hopfrep {

class Poly {
public:
    Poly() = default;
    Poly(const Scalar& c) : c_{c} { trim(); }  // NOLINT
    explicit Poly(Vec coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly x() { return Poly(Vec{Scalar(0), Scalar(1)}); }
    static Poly linear(const Scalar& root) { return Poly(Vec{-root, Scalar(1)}); }  // x - root

    int degree() const { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const Vec& coeffs() const { return c_; }
    Scalar coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Scalar(0); }
    Scalar lead() const { return c_.empty() ? Scalar(0) : c_.back(); }

    bool rational_coeffs() const {
        for (auto& x : c_)
            if (!x.is_rational()) return false;
        return true;
    }

    Poly monic() const {
        if (c_.empty()) return *this;
        Scalar inv = lead().inv();
        Poly p = *this;
        for (auto& x : p.c_) x *= inv;
        return p;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        Vec out(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                if (!b.c_[j].is_zero()) out[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(out));
    }

    // Quotient and remainder.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw MathError("polynomial division by zero");
        Poly r = a;
        if (a.degree() < b.degree()) return {Poly(), r};
        Vec q(a.degree() - b.degree() + 1);
        Scalar inv = b.lead().inv();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            int shift = r.degree() - b.degree();
            Scalar f = r.lead() * inv;
            q[shift] = f;
            for (std::size_t i = 0; i < b.c_.size(); ++i)
                if (!b.c_[i].is_zero()) r.c_[i + shift] -= f * b.c_[i];
            r.c_.pop_back();
            r.trim();
        }
        return {Poly(std::move(q)), r};
    }
    friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        Vec d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Scalar(static_cast<long>(i));
        return Poly(std::move(d));
    }

    Poly conj() const {
        Poly p = *this;
        for (auto& x : p.c_) x = x.conj();
        return p;
    }

    Scalar eval(const Scalar& x) const {
        Scalar acc;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    Matrix eval(const Matrix& m) const {
        Matrix acc(m.rows(), m.cols());
        const Matrix id = Matrix::identity(m.rows());
        for (std::size_t i = c_.size(); i-- > 0;) {
            acc = acc * m;
            if (!c_[i].is_zero()) acc += id * c_[i];
        }
        return acc;
    }

    std::string str() const {
        if (c_.empty()) return "0";
        std::string s;
        for (std::size_t i = c_.size(); i-- > 0;) {
            const Scalar& a = c_[i];
            if (a.is_zero()) continue;
            std::string coef = a.str();
            bool complex_coef = !a.is_rational();
            bool neg = !complex_coef && sgn(a.r()) < 0;
            if (neg) coef = Scalar(-a).str();
            if (complex_coef) coef = "(" + coef + ")";
            std::string mono = i == 0 ? "" : (i == 1 ? "x" : "x^" + std::to_string(i));
            std::string term;
            if (i == 0) term = coef;
            else if (coef == "1") term = mono;
            else term = coef + "*" + mono;
            if (s.empty()) s = (neg ? "-" : "") + term;
            else s += (neg ? "-" : "+") + term;
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    Vec c_;
};

inline Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline Poly poly_lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    return ((a * b) / poly_gcd(a, b)).monic();
}

inline Poly poly_pow(const Poly& p, int e) {
    Poly acc(Scalar(1));
    for (int i = 0; i < e; ++i) acc = acc * p;
    return acc;
}

// Characteristic polynomial det(xI - M) via reduction to Hessenberg form.
inline Poly charpoly(const Matrix& m) {
    if (!m.square()) throw MathError("charpoly of a non-square matrix");
    Matrix h = m;
    const std::size_t n = h.rows();
    for (std::size_t c = 1; c + 1 < n; ++c) {
        std::size_t i = c;
        while (i < n && h(i, c - 1).is_zero()) ++i;
        if (i == n) continue;
        if (i != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(h(i, j), h(c, j));
            for (std::size_t j = 0; j < n; ++j) std::swap(h(j, i), h(j, c));
        }
        Scalar inv = h(c, c - 1).inv();
        for (std::size_t k = c + 1; k < n; ++k) {
            if (h(k, c - 1).is_zero()) continue;
            Scalar f = h(k, c - 1) * inv;
            for (std::size_t j = 0; j < n; ++j)
                if (!h(c, j).is_zero()) h(k, j) -= f * h(c, j);
            for (std::size_t j = 0; j < n; ++j)
                if (!h(j, k).is_zero()) h(j, c) += f * h(j, k);
        }
    }
    auto H = [&](std::size_t i, std::size_t j) -> const Scalar& { return h(i - 1, j - 1); };
    std::vector<Poly> p(n + 1);
    p[0] = Poly(Scalar(1));
    for (std::size_t k = 1; k <= n; ++k) {
        p[k] = Poly::linear(H(k, k)) * p[k - 1];
        Scalar t(1);
        for (std::size_t i = k - 1; i >= 1; --i) {
            t *= H(i + 1, i);
            if (t.is_zero()) break;
            if (!H(i, k).is_zero()) p[k] -= Poly(H(i, k) * t) * p[i - 1];
        }
    }
    return p[n];
}

// Minimal polynomial as the lcm of local minimal polynomials of vectors whose
// cyclic subspaces together span the space.
inline Poly minpoly(const Matrix& m) {
    if (!m.square()) throw MathError("minpoly of a non-square matrix");
    const std::size_t n = m.rows();
    Poly result(Scalar(1));
    std::vector<Vec> span_rows;  // echelon rows of the accumulated span
    std::vector<std::size_t> span_piv;
    auto reduce_into = [](Vec v, const std::vector<Vec>& rows, const std::vector<std::size_t>& piv) {
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (v[piv[k]].is_zero()) continue;
            Scalar f = v[piv[k]];
            for (std::size_t j = 0; j < v.size(); ++j)
                if (!rows[k][j].is_zero()) v[j] -= f * rows[k][j];
        }
        return v;
    };
    auto first_nz = [](const Vec& v) {
        for (std::size_t j = 0; j < v.size(); ++j)
            if (!v[j].is_zero()) return j;
        return v.size();
    };
    for (std::size_t i = 0; i < n; ++i) {
        Vec e(n);
        e[i] = 1;
        if (first_nz(reduce_into(e, span_rows, span_piv)) == n) continue;
        // Local Krylov elimination with polynomial bookkeeping.
        std::vector<Vec> rows;
        std::vector<std::size_t> piv;
        std::vector<Poly> expr;
        Vec w = e;
        for (std::size_t k = 0;; ++k) {
            Vec red = w;
            Poly pe = poly_pow(Poly::x(), static_cast<int>(k));
            for (std::size_t t = 0; t < rows.size(); ++t) {
                if (red[piv[t]].is_zero()) continue;
                Scalar f = red[piv[t]];
                for (std::size_t j = 0; j < n; ++j)
                    if (!rows[t][j].is_zero()) red[j] -= f * rows[t][j];
                pe -= Poly(f) * expr[t];
            }
            std::size_t p = first_nz(red);
            if (p == n) {
                result = poly_lcm(result, pe);
                break;
            }
            Scalar inv = red[p].inv();
            for (auto& x : red) x *= inv;
            pe = Poly(inv) * pe;
            rows.push_back(red);
            piv.push_back(p);
            expr.push_back(pe);
            // keep the global span echelon current
            Vec g = reduce_into(red, span_rows, span_piv);
            std::size_t gp = first_nz(g);
            if (gp < n) {
                Scalar gi = g[gp].inv();
                for (auto& x : g) x *= gi;
                for (auto& r : span_rows)
                    if (!r[gp].is_zero()) {
                        Scalar f = r[gp];
                        for (std::size_t j = 0; j < n; ++j)
                            if (!g[j].is_zero()) r[j] -= f * g[j];
                    }
                span_rows.push_back(g);
                span_piv.push_back(gp);
            }
            w = m * w;
        }
    }
    return result;
}

// ---------------------------------------------------------------- factoring

namespace detail {

// Divisors of n; `complete` is cleared when the list may miss some (too many
// divisors, or a large cofactor left unfactored).
inline std::vector<mpz_class> divisors(mpz_class n, std::size_t cap, bool* complete = nullptr) {
    if (complete) *complete = true;
    if (n < 0) n = -n;
    std::vector<std::pair<mpz_class, int>> fac;
    for (mpz_class p = 2; p * p <= n && p < 200000; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) fac.push_back({p, e});
    }
    if (n > 1) {
        if (complete && n >= mpz_class(200000) * 200000) *complete = false;
        fac.push_back({n, 1});
    }
    std::vector<mpz_class> out{1};
    for (auto& [p, e] : fac) {
        std::size_t sz = out.size();
        mpz_class pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < sz; ++i) {
                out.push_back(out[i] * pk);
                if (out.size() > cap) {
                    if (complete) *complete = false;
                    return out;
                }
            }
        }
    }
    return out;
}

// Integer coefficients of a rational polynomial, primitive.
inline std::vector<mpz_class> integerize(const Poly& p) {
    mpz_class l = 1;
    for (auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.r().get_den_mpz_t());
    std::vector<mpz_class> out;
    mpz_class g = 0;
    for (auto& c : p.coeffs()) {
        mpq_class v = c.r() * l;
        out.push_back(v.get_num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
    }
    if (g > 1)
        for (auto& x : out) x /= g;
    return out;
}

inline bool int_root(const std::vector<mpz_class>& a, const mpz_class& p, const mpz_class& q) {
    // sum a_i p^i q^(n-i) == 0
    const std::size_t n = a.size() - 1;
    mpz_class acc = 0, pp = 1;
    std::vector<mpz_class> qpow(n + 1);
    qpow[0] = 1;
    for (std::size_t i = 1; i <= n; ++i) qpow[i] = qpow[i - 1] * q;
    for (std::size_t i = 0; i <= n; ++i) {
        acc += a[i] * pp * qpow[n - i];
        pp *= p;
    }
    return acc == 0;
}

// Candidate rational roots from complex approximations of all roots
// (Durand-Kerner), rounded by continued fractions and verified exactly.
inline std::vector<mpq_class> numeric_rational_roots(const std::vector<mpz_class>& a) {
    using cx = std::complex<long double>;
    const std::size_t n = a.size() - 1;
    std::vector<mpq_class> out;
    if (n == 0) return out;
    std::vector<long double> c(n + 1);
    for (std::size_t i = 0; i <= n; ++i) c[i] = static_cast<long double>(mpf_class(a[i]).get_d());
    for (std::size_t i = 0; i <= n; ++i) c[i] /= c[n];
    auto eval = [&](cx z) {
        cx v = 0;
        for (std::size_t i = n + 1; i-- > 0;) v = v * z + c[i];
        return v;
    };
    long double radius = 1;
    for (std::size_t i = 0; i < n; ++i) radius = std::max(radius, 1 + std::abs(c[i]));
    std::vector<cx> z(n);
    for (std::size_t k = 0; k < n; ++k) z[k] = std::polar(radius * 0.9L, 0.4L + 6.283185307179586L * k / n);
    for (int it = 0; it < 2000; ++it) {
        long double delta = 0;
        for (std::size_t k = 0; k < n; ++k) {
            cx den = 1;
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) den *= (z[k] - z[j]);
            if (std::abs(den) == 0) den = 1e-30L;
            cx step = eval(z[k]) / den;
            z[k] -= step;
            delta = std::max(delta, std::abs(step));
        }
        if (delta < 1e-16L) break;
    }
    for (auto& r : z) {
        long double x = r.real();
        if (std::abs(r.imag()) > 1e-6L * std::max(1.0L, std::abs(x))) continue;
        // continued fraction convergents of x
        mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
        long double f = x;
        for (int step = 0; step < 40; ++step) {
            long double fl = std::floor(f);
            mpz_class ai(static_cast<double>(fl));
            mpz_class h2 = ai * h1 + h0, k2 = ai * k1 + k0;
            h0 = h1, h1 = h2, k0 = k1, k1 = k2;
            if (abs(k1) > mpz_class("1000000000000")) break;
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), h1.get_mpz_t(), k1.get_mpz_t());
            if (g == 1 && k1 != 0 && int_root(a, h1 * sgn(k1), abs(k1))) {
                mpq_class q(h1, k1);
                q.canonicalize();
                out.push_back(q);
                break;
            }
            long double frac = f - fl;
            if (frac < 1e-18L) break;
            f = 1 / frac;
        }
    }
    return out;
}

// Rational roots of a polynomial with rational coefficients.
inline std::vector<mpq_class> rational_roots(const Poly& p) {
    std::vector<mpq_class> roots;
    if (p.degree() <= 0) return roots;
    std::vector<mpz_class> a = integerize(p);
    std::size_t low = 0;
    while (low < a.size() && a[low] == 0) ++low;
    if (low > 0) {
        roots.push_back(0);
        a.erase(a.begin(), a.begin() + static_cast<long>(low));
    }
    if (a.size() <= 1) return roots;
    bool cp = true, cq = true;
    auto ps = divisors(a.front(), 4096, &cp);
    auto qs = divisors(a.back(), 4096, &cq);
    std::vector<mpq_class> found;
    if (!cp || !cq) found = numeric_rational_roots(a);
    for (auto& q : qs)
        for (auto& pv : ps)
            for (int sign : {1, -1}) {
                mpz_class pn = sign * pv;
                mpz_class g;
                mpz_gcd(g.get_mpz_t(), pn.get_mpz_t(), q.get_mpz_t());
                if (g != 1) continue;
                if (int_root(a, pn, q)) {
                    mpq_class r(pn, q);
                    r.canonicalize();
                    found.push_back(r);
                }
            }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    roots.insert(roots.end(), found.begin(), found.end());
    return roots;
}

inline Poly rational_part(const Poly& p) {
    Vec c;
    for (auto& x : p.coeffs()) c.push_back(Scalar(x.r()));
    return Poly(c);
}

}  // namespace detail

namespace detail {

// Rational roots, pure sqrt(d) multiples, and anything recovered through the
// norm polynomial.
inline std::vector<Scalar> simple_roots(const Poly& p, const FieldDesc& f) {
    std::vector<Scalar> cands;
    Poly base = p.rational_coeffs() ? p : p * p.conj();
    base = detail::rational_part(base);
    for (auto& r : detail::rational_roots(base)) cands.push_back(Scalar(r).in_field(f));
    if (f.d != 0) {
        // base(sqrt(d) y) = E(y) + sqrt(d) O(y)
        Vec ev, od;
        mpq_class dp = 1;
        for (std::size_t i = 0; i < base.coeffs().size(); ++i) {
            mpq_class c = base.coeffs()[i].r();
            mpq_class scaled = c * dp;  // coefficient times d^(floor(i/2))
            if (i % 2 == 0) {
                ev.push_back(Scalar(scaled));
                od.push_back(Scalar(0));
            } else {
                ev.push_back(Scalar(0));
                od.push_back(Scalar(scaled));
            }
            if (i % 2 == 1) dp *= f.d;
        }
        Poly g = poly_gcd(Poly(ev), Poly(od));
        if (Poly(od).is_zero()) g = Poly(ev).monic();
        if (g.degree() >= 1)
            for (auto& y : detail::rational_roots(g))
                if (sgn(y) != 0) cands.push_back(Scalar(mpq_class(0), y, f.d));
    }
    std::vector<Scalar> roots;
    for (auto& c : cands)
        if (p.eval(c).is_zero() && std::find(roots.begin(), roots.end(), c) == roots.end()) roots.push_back(c);
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace detail

struct Factor {
    Poly p;        // monic
    int mult = 1;  // multiplicity
    bool linear() const { return p.degree() == 1; }
    Scalar root() const { return -p.coeff(0); }
};

// Square-free decomposition (Yun): p = prod a_i^i.
inline std::vector<std::pair<Poly, int>> squarefree(const Poly& p) {
    std::vector<std::pair<Poly, int>> out;
    Poly f = p.monic();
    if (f.degree() <= 0) return out;
    Poly a = poly_gcd(f, f.derivative());
    Poly b = f / a;
    Poly c = f.derivative() / a - b.derivative();
    for (int i = 1; b.degree() > 0; ++i) {
        Poly d = poly_gcd(b, c);
        if (d.degree() > 0) out.push_back({d, i});
        b = b / d;
        c = c / d - b.derivative();
    }
    return out;
}

namespace detail {

inline void factor_squarefree(const Poly& a, int mult, const FieldDesc& f, std::vector<Factor>& out) {
    if (!a.rational_coeffs()) {
        // the part shared with the conjugate has rational coefficients
        Poly g = poly_gcd(a, a.conj());
        if (g.degree() > 0 && g.degree() < a.degree()) {
            factor_squarefree(g, mult, f, out);
            factor_squarefree((a / g).monic(), mult, f, out);
            return;
        }
    }
    Poly rest = a;
    for (auto& r : simple_roots(a, f)) {
        out.push_back({Poly::linear(r), mult});
        rest = rest / Poly::linear(r);
    }
    rest = rest.monic();
    if (rest.degree() == 2) {
        Scalar b = rest.coeff(1), c = rest.coeff(0);
        Scalar disc = b * b - Scalar(4) * c;
        if (auto s = sqrt_in_field(disc, f)) {
            Scalar half(1, 2);
            out.push_back({Poly::linear((-b + *s) * half), mult});
            out.push_back({Poly::linear((-b - *s) * half), mult});
            return;
        }
    }
    if (rest.degree() >= 1) out.push_back({rest, mult});
}

}  // namespace detail

// Factorization over the field: linear factors are split out; a quadratic
// remainder is split by the quadratic formula when its discriminant has a root
// in the field; anything else is reported unsplit.
inline std::vector<Factor> factor(const Poly& p, const FieldDesc& f) {
    std::vector<Factor> out;
    for (auto& [a, mult] : squarefree(p)) detail::factor_squarefree(a, mult, f, out);
    std::sort(out.begin(), out.end(), [](const Factor& x, const Factor& y) {
        if (x.p.degree() != y.p.degree()) return x.p.degree() < y.p.degree();
        if (x.linear()) return x.root() < y.root();
        return x.p.coeffs() < y.p.coeffs();
    });
    return out;
}

// Roots of p lying in the field, ascending.
inline std::vector<Scalar> field_roots(const Poly& p, const FieldDesc& f) {
    std::vector<Scalar> out;
    for (auto& fac : factor(p, f))
        if (fac.linear()) out.push_back(fac.root());
    std::sort(out.begin(), out.end());
    return out;
}

struct Eigenspace {
    Scalar value;
    Matrix basis;  // columns
};

// Generalized eigenspaces; throws when the spectrum leaves the field.
inline std::vector<Eigenspace> generalized_eigenspaces(const Matrix& m, const FieldDesc& f) {
    std::vector<Eigenspace> out;
    for (auto& fac : factor(charpoly(m), f)) {
        if (!fac.linear()) throw MathError("needs field extension: irreducible factor " + fac.p.str());
        Matrix t = m - Matrix::identity(m.rows()) * fac.root();
        auto ker = kernel(t.pow(static_cast<unsigned>(fac.mult)));
        out.push_back({fac.root(), Matrix::from_columns(ker, m.rows())});
    }
    return out;
}

}  // namespace hopfrep

#endif  // HOPFREP_POLY_HPP
