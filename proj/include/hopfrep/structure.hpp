// Copyright 2026 The hopfrep Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Hom and End spaces, spinning, simplicity, Fitting splitting, Krull-Schmidt
// decomposition, isomorphism testing and Ext^1.

#ifndef HOPFREP_STRUCTURE_HPP
#define HOPFREP_STRUCTURE_HPP

#include <hopfrep/io.hpp>
#include <hopfrep/module.hpp>
#include <hopfrep/rng.hpp>
#include <hopfrep/sparse.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace hopfrep {

struct Options {
    std::uint64_t seed = 0;
    int trials = kDefaultRandomTrials;
};

// ------------------------------------------------------------------ Hom

struct HomSpace {
    std::vector<Matrix> basis;  // dim W x dim V intertwiners
    std::size_t dim() const { return basis.size(); }
};

inline HomSpace hom_space(const Module& V, const Module& W) {
    require_same_category(V, W, "hom");
    const std::size_t n = V.dim, m = W.dim;
    SparseSystem sys(m * n);
    auto idx = [n](std::size_t i, std::size_t j) { return i * n + j; };
    for (auto& gname : stored_generators(V.algebra)) {
        const Matrix& X = V.at(gname);
        const Matrix& Y = W.at(gname);
        // (T X - Y T)(i, j) = 0
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
    HomSpace H;
    for (auto& v : sys.nullspace()) {
        Matrix T(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) T(i, j) = v[idx(i, j)];
        H.basis.push_back(std::move(T));
    }
    return H;
}

inline HomSpace end_space(const Module& V) { return hom_space(V, V); }

inline bool is_intertwiner(const Module& V, const Module& W, const Matrix& T) {
    for (auto& gname : stored_generators(V.algebra))
        if (T * V.at(gname) != W.at(gname) * T) return false;
    return true;
}

// ----------------------------------------------------------------- spinning

namespace detail {

// Echelon accumulator for spans.
class SpanBuilder {
public:
    explicit SpanBuilder(std::size_t n) : n_(n) {}
    // Adds v; returns true when it enlarged the span.
    bool add(Vec v) {
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const Scalar& f = v[piv_[k]];
            if (f.is_zero()) continue;
            Scalar ff = f;
            for (std::size_t j = 0; j < n_; ++j)
                if (!rows_[k][j].is_zero()) v[j] -= ff * rows_[k][j];
        }
        std::size_t p = 0;
        while (p < n_ && v[p].is_zero()) ++p;
        if (p == n_) return false;
        Scalar inv = v[p].inv();
        for (auto& x : v) x *= inv;
        rows_.push_back(std::move(v));
        piv_.push_back(p);
        return true;
    }
    std::size_t dim() const { return rows_.size(); }

private:
    std::size_t n_;
    std::vector<Vec> rows_;
    std::vector<std::size_t> piv_;
};

}  // namespace detail

// Smallest subspace containing the vectors and stable under the matrices.
inline Matrix spin_matrices(const std::vector<Matrix>& mats, const std::vector<Vec>& vectors, std::size_t n) {
    detail::SpanBuilder sb(n);
    std::vector<Vec> basis, queue;
    for (auto& v : vectors)
        if (sb.add(v)) queue.push_back(v);
    std::size_t head = 0;
    while (head < queue.size()) {
        Vec v = queue[head++];
        basis.push_back(v);
        for (auto& M : mats) {
            Vec w = M * v;
            if (sb.add(w)) queue.push_back(w);
        }
    }
    return canonical_span(Matrix::from_columns(basis, n));
}

inline std::vector<Matrix> action_matrices(const Module& V) {
    std::vector<Matrix> mats;
    for (auto& gname : stored_generators(V.algebra)) mats.push_back(V.at(gname));
    return mats;
}

// g-stable subspaces of a finite-dimensional space are g^-1-stable, so the
// stored generators suffice.
inline Matrix spin(const Module& V, const std::vector<Vec>& vectors) {
    return spin_matrices(action_matrices(V), vectors, V.dim);
}

// ---------------------------------------------------------------- Fitting

// Primary components of an endomorphism, as column bases.
inline std::vector<Matrix> fitting_components(const Module& V, const Matrix& endo) {
    auto facs = factor(charpoly(endo), V.field);
    if (facs.size() <= 1) return {Matrix::identity(V.dim)};
    std::vector<Matrix> comps;
    for (auto& f : facs) {
        Matrix fm = poly_pow(f.p, f.mult).eval(endo);
        comps.push_back(Matrix::from_columns(kernel(fm), V.dim));
    }
    return comps;
}

inline std::vector<Module> fitting_split(const Module& V, const Matrix& endo) {
    if (!is_intertwiner(V, V, endo)) throw MathError("fitting_split: matrix is not an endomorphism");
    std::vector<Module> out;
    for (auto& c : fitting_components(V, endo)) out.push_back(submodule(V, canonical_span(c)));
    return out;
}

// ------------------------------------------------------------ decomposition

struct Summand {
    Module module;      // action in the basis below
    Matrix basis;       // columns in the coordinates of the decomposed module
    std::size_t multiplicity_class = 0;  // index of the isomorphism class
};

struct DecompositionReport {
    std::vector<Summand> parts;  // witness order
    Matrix witness;              // hconcat of the part bases
    bool certified = false;
    bool relative_to_field = true;
    std::vector<std::size_t> multiplicities;  // per isomorphism class
    std::vector<std::size_t> class_representative;

    std::vector<std::size_t> dims() const {
        std::vector<std::size_t> d;
        for (auto& p : parts) d.push_back(p.module.dim);
        return d;
    }
};

namespace detail {

inline Matrix random_combination(Rng& rng, const std::vector<Matrix>& basis, long range = 3) {
    Matrix m(basis[0].rows(), basis[0].cols());
    bool nonzero = false;
    while (!nonzero) {
        m = Matrix(basis[0].rows(), basis[0].cols());
        for (auto& b : basis) {
            long c = rng.range(-range, range);
            if (c == 0) continue;
            nonzero = true;
            m += b * Scalar(c);
        }
    }
    return m;
}

inline Matrix random_invertible(Rng& rng, std::size_t n, long range = 3) {
    for (;;) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = Scalar(rng.range(-range, range));
        if (invertible(m)) return m;
    }
}

// A proper primary split of V, or nothing after exhausting the candidates.
inline std::optional<std::vector<Matrix>> find_split(const Module& V, Rng& rng, int trials) {
    if (V.dim <= 1) return std::nullopt;
    HomSpace E = end_space(V);
    if (E.dim() <= 1) return std::nullopt;
    auto attempt = [&](const Matrix& phi) -> std::optional<std::vector<Matrix>> {
        auto comps = fitting_components(V, phi);
        if (comps.size() > 1) return comps;
        return std::nullopt;
    };
    for (auto& b : E.basis)
        if (auto s = attempt(b)) return s;
    for (int t = 0; t < trials; ++t)
        if (auto s = attempt(random_combination(rng, E.basis))) return s;
    return std::nullopt;
}

}  // namespace detail

inline bool module_less(const Module& a, const Module& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    for (auto& gname : stored_generators(a.algebra)) {
        const Matrix &x = a.at(gname), &y = b.at(gname);
        if (x != y) return x < y;
    }
    return false;
}

enum class Verdict { yes, no, undetermined };

struct IsoResult {
    Verdict verdict = Verdict::undetermined;
    std::optional<Matrix> witness;  // T with T X_V = X_W T, invertible
    std::string reason;
    int samples = 0;
};

inline IsoResult are_isomorphic(const Module& V, const Module& W, const Options& opt = {});

inline DecompositionReport decompose(const Module& V, const Options& opt = {}) {
    Rng rng = Rng(opt.seed).fork("decompose");
    struct Block {
        Matrix basis;
        Module module;
        bool done;
    };
    std::vector<Block> blocks{{Matrix::identity(V.dim), V, V.dim == 0}};
    while (true) {
        // largest open block first
        std::optional<std::size_t> pick;
        for (std::size_t i = 0; i < blocks.size(); ++i)
            if (!blocks[i].done && (!pick || blocks[i].module.dim > blocks[*pick].module.dim)) pick = i;
        if (!pick) break;
        Block cur = blocks[*pick];
        auto split = detail::find_split(cur.module, rng, opt.trials);
        if (!split) {
            blocks[*pick].done = true;
            continue;
        }
        std::vector<Block> repl;
        for (auto& c : *split) {
            Matrix b = canonical_span(cur.basis * c);
            repl.push_back({b, submodule(V, b), false});
        }
        blocks.erase(blocks.begin() + static_cast<long>(*pick));
        blocks.insert(blocks.begin() + static_cast<long>(*pick), repl.begin(), repl.end());
    }
    DecompositionReport rep;
    for (auto& b : blocks)
        if (b.module.dim > 0) rep.parts.push_back({b.module, b.basis, 0});
    std::stable_sort(rep.parts.begin(), rep.parts.end(),
                     [](const Summand& a, const Summand& b) { return module_less(a.module, b.module); });
    // isomorphism classes
    for (std::size_t i = 0; i < rep.parts.size(); ++i) {
        std::optional<std::size_t> cls;
        for (std::size_t c = 0; c < rep.class_representative.size() && !cls; ++c) {
            const Module& r = rep.parts[rep.class_representative[c]].module;
            if (r.dim != rep.parts[i].module.dim) continue;
            if (r == rep.parts[i].module || are_isomorphic(r, rep.parts[i].module, opt).verdict == Verdict::yes) cls = c;
        }
        if (!cls) {
            cls = rep.class_representative.size();
            rep.class_representative.push_back(i);
            rep.multiplicities.push_back(0);
        }
        rep.parts[i].multiplicity_class = *cls;
        ++rep.multiplicities[*cls];
    }
    Matrix T(V.dim, 0);
    for (auto& p : rep.parts) T = hconcat(T, p.basis);
    rep.witness = T;
    // certification: the witness block-diagonalizes the action
    rep.certified = false;
    if (auto Ti = inverse(T)) {
        bool ok = true;
        for (auto& gname : stored_generators(V.algebra)) {
            Matrix conj = *Ti * V.at(gname) * T;
            Matrix expect(V.dim, 0);
            Matrix bd(0, 0);
            for (auto& p : rep.parts) bd = bd.rows() == 0 ? p.module.at(gname) : direct_sum(bd, p.module.at(gname));
            if (V.dim > 0 && conj != bd) ok = false;
        }
        rep.certified = ok;
    }
    return rep;
}

inline bool is_indecomposable(const Module& V, const Options& opt = {}) {
    return V.dim > 0 && decompose(V, opt).parts.size() == 1;
}

// --------------------------------------------------------------- isomorphism

namespace detail {

// Ranks of powers of (X - lambda) over the eigenvalues of X in the field plus
// the characteristic polynomial; equal for isomorphic modules.
inline bool same_spectral_profile(const Matrix& X, const Matrix& Y, const FieldDesc& f) {
    Poly cx = charpoly(X);
    if (cx != charpoly(Y)) return false;
    for (auto& fac : factor(cx, f)) {
        Matrix a = fac.p.eval(X), b = fac.p.eval(Y);
        Matrix pa = a, pb = b;
        for (int k = 1; k <= fac.mult * fac.p.degree(); ++k) {
            if (rank(pa) != rank(pb)) return false;
            pa = pa * a;
            pb = pb * b;
        }
    }
    return true;
}

// dim A / rad A for a matrix algebra A given by a basis. In characteristic 0
// the radical is the kernel of the trace form.
inline std::size_t residue_dim(const std::vector<Matrix>& basis) {
    const std::size_t m = basis.size();
    Matrix G(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) G(i, j) = G(j, i) = (basis[i] * basis[j]).trace();
    return rank(G);
}

}  // namespace detail

inline IsoResult are_isomorphic(const Module& V, const Module& W, const Options& opt) {
    require_same_category(V, W, "isomorphism test");
    IsoResult r;
    if (V.dim != W.dim) {
        r.verdict = Verdict::no;
        r.reason = "dimensions differ";
        return r;
    }
    if (V.dim == 0) {
        r.verdict = Verdict::yes;
        r.witness = Matrix(0, 0);
        return r;
    }
    for (auto& gname : stored_generators(V.algebra))
        if (!detail::same_spectral_profile(V.at(gname), W.at(gname), V.field)) {
            r.verdict = Verdict::no;
            r.reason = "Jordan profile of " + gname + " differs";
            return r;
        }
    HomSpace H = hom_space(V, W);
    if (H.dim() == 0) {
        r.verdict = Verdict::no;
        r.reason = "Hom(V,W) = 0";
        return r;
    }
    HomSpace E = end_space(V);
    std::size_t ev = E.dim();
    if (H.dim() != ev) {
        r.verdict = Verdict::no;
        r.reason = "dim Hom(V,W) = " + std::to_string(H.dim()) + " differs from dim End(V) = " + std::to_string(ev);
        return r;
    }
    if (hom_space(W, V).dim() != ev) {
        r.verdict = Verdict::no;
        r.reason = "dim Hom(W,V) differs from dim End(V)";
        return r;
    }
    for (auto& b : H.basis) {
        ++r.samples;
        if (invertible(b)) {
            r.verdict = Verdict::yes;
            r.witness = b;
            return r;
        }
    }
    // With End(V) local with residue field k, an isomorphism V -> W exists
    // iff some basis vector of Hom(V,W) is one.
    if (detail::residue_dim(E.basis) == 1) {
        r.verdict = Verdict::no;
        r.reason = "End(V) is local and no basis vector of Hom(V,W) is invertible";
        return r;
    }
    Rng rng = Rng(opt.seed).fork("isomorphism");
    for (int t = 0; t < opt.trials; ++t) {
        ++r.samples;
        Matrix c = detail::random_combination(rng, H.basis);
        if (invertible(c)) {
            r.verdict = Verdict::yes;
            r.witness = c;
            return r;
        }
    }
    // Match indecomposable summands one by one.
    auto dv = decompose(V, opt), dw = decompose(W, opt);
    if (dv.parts.size() > 1 && dv.parts.size() == dw.parts.size()) {
        std::vector<bool> used(dw.parts.size(), false);
        std::vector<Matrix> blocks;
        Matrix bw(V.dim, 0);
        bool open = false;
        for (auto& p : dv.parts) {
            bool found = false;
            for (std::size_t k = 0; k < dw.parts.size() && !found; ++k) {
                if (used[k]) continue;
                auto sub = are_isomorphic(p.module, dw.parts[k].module, opt);
                if (sub.verdict == Verdict::undetermined) open = true;
                if (sub.verdict != Verdict::yes) continue;
                used[k] = found = true;
                blocks.push_back(*sub.witness);
                bw = hconcat(bw, dw.parts[k].basis);
            }
            if (!found) break;
        }
        if (blocks.size() == dv.parts.size()) {
            Matrix D(0, 0);
            for (auto& b : blocks) D = direct_sum(D, b);
            Matrix T = bw * D * *inverse(dv.witness);
            if (is_intertwiner(V, W, T) && invertible(T)) {
                r.verdict = Verdict::yes;
                r.witness = T;
                return r;
            }
        } else if (!open) {
            r.verdict = Verdict::no;
            r.reason = "indecomposable summands of V and W do not match";
            return r;
        }
    }
    r.reason = "no invertible element among " + std::to_string(r.samples) + " sampled homomorphisms";
    return r;
}

inline bool isomorphic(const Module& V, const Module& W, const Options& opt = {}) {
    auto r = are_isomorphic(V, W, opt);
    if (r.verdict == Verdict::undetermined) throw MathError("isomorphism undetermined: " + r.reason);
    return r.verdict == Verdict::yes;
}

// ---------------------------------------------------------------- simplicity

struct SimplicityResult {
    bool simple = false;
    std::optional<Matrix> witness;  // basis of a proper nonzero submodule
    std::string method;
};

inline SimplicityResult is_simple(const Module& V, const Options& opt = {}) {
    SimplicityResult r;
    if (V.dim == 0) {
        r.method = "zero module";
        return r;
    }
    if (V.dim == 1) {
        r.simple = true;
        r.method = "dimension 1";
        return r;
    }
    auto mats = action_matrices(V);
    std::vector<Matrix> tmats;
    for (auto& m : mats) tmats.push_back(m.transpose());
    // short words in the generators
    std::vector<Matrix> words = mats;
    for (auto& a : mats)
        for (auto& b : mats) words.push_back(a * b);
    Rng rng = Rng(opt.seed).fork("simple");
    const std::size_t n = V.dim;
    for (int t = 0; t < opt.trials + static_cast<int>(words.size()); ++t) {
        Matrix theta = t < static_cast<int>(words.size()) ? words[static_cast<std::size_t>(t)]
                                                           : detail::random_combination(rng, words);
        std::vector<Scalar> roots;
        try {
            roots = field_roots(charpoly(theta), V.field);
        } catch (const MathError&) {
            continue;
        }
        for (auto& lam : roots) {
            Matrix s = theta - Matrix::identity(n) * lam;
            auto ker = kernel(s);
            if (ker.size() != 1) continue;
            Matrix sp = spin_matrices(mats, ker, n);
            if (sp.cols() < n) {
                r.witness = sp;
                r.method = "spin of a kernel vector";
                return r;
            }
            auto kt = kernel(s.transpose());
            Matrix st = spin_matrices(tmats, kt, n);
            if (st.cols() < n) {
                r.witness = canonical_span(Matrix::from_columns(kernel(st.transpose()), n));
                r.method = "annihilator of a dual spin";
                return r;
            }
            r.simple = true;
            r.method = "kernel of nullity one spins both ways";
            return r;
        }
    }
    auto d = decompose(V, opt);
    if (d.parts.size() > 1) {
        r.witness = d.parts[0].basis;
        r.method = "decomposable";
        return r;
    }
    // spin every vector of small kernels as a last resort
    for (auto& w : words) {
        auto es_roots = field_roots(charpoly(w), V.field);
        for (auto& lam : es_roots)
            for (auto& v : kernel(w - Matrix::identity(n) * lam)) {
                Matrix sp = spin_matrices(mats, {v}, n);
                if (sp.cols() < n) {
                    r.witness = sp;
                    r.method = "spin of an eigenvector";
                    return r;
                }
            }
    }
    throw MathError("simplicity undetermined: no element with a one-dimensional eigenspace found");
}

// ------------------------------------------------------------------ Ext^1

struct ExtResult {
    std::size_t dim = 0;
    std::size_t cocycles = 0;
    std::size_t coboundaries = 0;
    std::vector<Module> representatives;  // extension modules E with W as submodule, V as quotient
};

// Extensions 0 -> W -> E -> V -> 0 as block upper triangular structures.
inline ExtResult ext1(const Module& V, const Module& W) {
    require_same_category(V, W, "ext1");
    const auto gens = stored_generators(V.algebra);
    const std::size_t n = V.dim, m = W.dim, blk = m * n, N = gens.size() * blk;
    const Presentation& P = V.pres();
    std::map<std::uint8_t, std::size_t> slot;
    for (std::size_t k = 0; k < gens.size(); ++k) slot[P.index(gens[k])] = k;
    auto var = [&](std::size_t k, std::size_t a, std::size_t b) { return k * blk + a * n + b; };

    SparseSystem sys(N);
    for (auto& rel : P.module_relations) {
        // upper-right block of rel, linear in the unknown blocks
        std::map<std::pair<std::size_t, std::size_t>, std::map<std::size_t, Scalar>> rows;
        for (auto& [w, c] : rel.poly.terms()) {
            for (std::size_t t = 0; t < w.size(); ++t) {
                Matrix pre = Matrix::identity(m), suf = Matrix::identity(n);
                for (std::size_t u = 0; u < t; ++u) pre = pre * W.act(P.gens[w[u]]);
                for (std::size_t u = t + 1; u < w.size(); ++u) suf = suf * V.act(P.gens[w[u]]);
                auto it = slot.find(w[t]);
                if (it == slot.end()) throw MathError("ext1: relation uses a derived generator");
                for (std::size_t i = 0; i < m; ++i)
                    for (std::size_t a = 0; a < m; ++a) {
                        if (pre(i, a).is_zero()) continue;
                        for (std::size_t b = 0; b < n; ++b)
                            for (std::size_t j = 0; j < n; ++j) {
                                if (suf(b, j).is_zero()) continue;
                                auto& e = rows[{i, j}][var(it->second, a, b)];
                                e += c * pre(i, a) * suf(b, j);
                            }
                    }
            }
        }
        for (auto& [ij, entries] : rows) {
            SparseRow row;
            for (auto& [col, val] : entries)
                if (!val.is_zero()) row.emplace_back(col, val);
            if (!row.empty()) sys.add(std::move(row));
        }
    }
    auto z1 = sys.nullspace();

    // coboundaries: Z_X = X_W T - T X_V for T in Hom_k(V, W)
    std::vector<Vec> b1;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            Matrix T(m, n);
            T(a, b) = 1;
            Vec v(N);
            for (std::size_t k = 0; k < gens.size(); ++k) {
                Matrix z = W.at(gens[k]) * T - T * V.at(gens[k]);
                for (std::size_t i = 0; i < m; ++i)
                    for (std::size_t j = 0; j < n; ++j) v[var(k, i, j)] = z(i, j);
            }
            b1.push_back(std::move(v));
        }
    detail::SpanBuilder span(N);
    std::size_t bdim = 0;
    for (auto& v : b1)
        if (span.add(v)) ++bdim;
    ExtResult r;
    r.cocycles = z1.size();
    r.coboundaries = bdim;
    r.dim = z1.size() - bdim;
    for (auto& z : z1) {
        if (!span.add(z)) continue;
        Module E;
        E.algebra = V.algebra;
        E.q = V.q;
        E.field = V.field;
        E.dim = m + n;
        for (std::size_t k = 0; k < gens.size(); ++k) {
            Matrix M(m + n, m + n);
            M.set_block(0, 0, W.at(gens[k]));
            M.set_block(m, m, V.at(gens[k]));
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < n; ++j) M(i, m + j) = z[var(k, i, j)];
            E.action[gens[k]] = M;
        }
        r.representatives.push_back(certified(std::move(E)));
    }
    return r;
}

// ------------------------------------------------------------ serialization

inline json to_json(const DecompositionReport& d) {
    json j;
    j["certified"] = d.certified;
    j["relative_to_field"] = d.relative_to_field;
    json parts = json::array();
    for (auto& p : d.parts) {
        json e;
        e["module"] = to_json(p.module);
        e["class"] = p.multiplicity_class;
        parts.push_back(e);
    }
    j["summands"] = parts;
    j["multiplicities"] = d.multiplicities;
    j["witness"] = to_json(d.witness);
    return j;
}

}  // namespace hopfrep

#endif  // HOPFREP_STRUCTURE_HPP
