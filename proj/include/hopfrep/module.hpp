// Copyright 2026 The hopfrep Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Matrix modules certified against the defining relations, and the functorial
// constructions: tensor, dual, inflation K <- L, restriction H <- K,
// x1-homology, gradings, sub- and quotient modules.

#ifndef HOPFREP_MODULE_HPP
#define HOPFREP_MODULE_HPP

#include <hopfrep/matrix.hpp>
#include <hopfrep/poly.hpp>
#include <hopfrep/presentation.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace hopfrep {

// Generators whose matrices are stored; ginv and x21 are derived.
inline std::vector<std::string> stored_generators(const std::string& algebra) {
    if (algebra == "L" || algebra == "Lq") return {"g", "y"};
    if (algebra == "H") return {"g", "a1", "a2"};
    if (algebra == "Hbar") return {"g", "a2"};
    if (algebra == "K") return {"g", "x1", "x2"};
    throw MathError("unknown algebra '" + algebra + "'");
}

inline const Presentation& presentation(const std::string& algebra, const std::optional<Scalar>& q = std::nullopt) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<Presentation>> cache;
    std::lock_guard<std::mutex> lock(mu);
    std::string key = algebra + (q ? "|" + q->str() : "");
    auto& slot = cache[key];
    if (!slot) slot = std::make_unique<Presentation>(build_presentation(algebra, q));
    return *slot;
}

struct Module {
    std::string algebra;
    std::optional<Scalar> q;  // Lq only
    FieldDesc field;
    std::size_t dim = 0;
    std::map<std::string, Matrix> action;

    const Matrix& at(const std::string& gen) const {
        auto it = action.find(gen);
        if (it == action.end()) throw MathError("module over " + algebra + " has no action for '" + gen + "'");
        return it->second;
    }
    const Presentation& pres() const { return presentation(algebra, q); }

    // Matrix of any generator, derived ones included.
    Matrix act(const std::string& gen) const {
        if (gen == "ginv") {
            auto inv = inverse(at("g"));
            if (!inv) throw MathError("g acts by a singular matrix");
            return *inv;
        }
        if (gen == "x21" && algebra == "K") return at("x1") * at("x2") + at("x2") * at("x1");
        return at(gen);
    }

    friend bool operator==(const Module& a, const Module& b) {
        return a.algebra == b.algebra && a.q == b.q && a.field == b.field && a.dim == b.dim && a.action == b.action;
    }
};

inline bool same_category(const Module& a, const Module& b) {
    return a.algebra == b.algebra && a.q == b.q && a.field == b.field;
}

inline void require_same_category(const Module& a, const Module& b, const char* op) {
    if (a.algebra != b.algebra) throw MathError(std::string(op) + ": algebra mismatch " + a.algebra + " vs " + b.algebra);
    if (!(a.q == b.q)) throw MathError(std::string(op) + ": parameter q mismatch");
    if (!(a.field == b.field)) throw MathError(std::string(op) + ": field mismatch");
}

// Value of a noncommutative polynomial on the module.
inline Matrix evaluate(const Module& V, const NcPoly& p) {
    const Presentation& P = V.pres();
    std::vector<std::optional<Matrix>> mats(P.gens.size());
    Matrix out(V.dim, V.dim);
    for (auto& [w, c] : p.terms()) {
        Matrix acc = Matrix::identity(V.dim);
        for (auto x : w) {
            if (!mats[x]) mats[x] = V.act(P.gens[x]);
            acc = acc * *mats[x];
        }
        out += acc * c;
    }
    return out;
}

struct Violation {
    std::string relation;
    Matrix residual;
};

struct Certificate {
    bool ok = true;
    std::vector<Violation> violations;
    std::vector<std::string> block_constraints;  // failed block conditions, K only
    std::string note;
};

namespace detail {

inline bool scalars_in_field(const Matrix& m, const FieldDesc& f) {
    for (auto& x : m.data())
        if (!x.is_rational() && x.d() != f.d) return false;
    return true;
}

// Failed block conditions for a K-module written over V_g^(a) + V_g^(-a).
inline std::vector<std::string> k_block_constraints(const Module& V, std::string& note) {
    std::vector<std::string> failed;
    std::vector<Eigenspace> es;
    try {
        es = generalized_eigenspaces(V.at("g"), V.field);
    } catch (const MathError& e) {
        note = e.what();
        return failed;
    }
    if (es.size() != 2 || es[0].value != -es[1].value) {
        note = "block analysis needs spec(g) = {a, -a}";
        return failed;
    }
    // A on the eigenvalue listed second (positive side), B on its negative.
    const Matrix& pb = es[1].basis;
    const Matrix& nb = es[0].basis;
    std::size_t l = pb.cols(), p = nb.cols();
    Matrix T = hconcat(pb, nb);
    Matrix Ti = *inverse(T);
    Matrix G = Ti * V.at("g") * T, X1 = Ti * V.at("x1") * T, X2 = Ti * V.at("x2") * T;
    if (!X1.block(0, 0, l, l).is_zero() || !X1.block(l, l, p, p).is_zero() || !X2.block(0, 0, l, l).is_zero() ||
        !X2.block(l, l, p, p).is_zero()) {
        note = "x1 or x2 does not swap the g-eigenspaces";
        return failed;
    }
    Matrix A = G.block(0, 0, l, l), B = G.block(l, l, p, p);
    Matrix C = X1.block(0, l, l, p), D = X1.block(l, 0, p, l);
    Matrix E = X2.block(0, l, l, p), F = X2.block(l, 0, p, l);
    auto check = [&](const char* name, const Matrix& lhs, const Matrix& rhs) {
        if (lhs != rhs) failed.push_back(name);
    };
    check("CD=0", C * D, Matrix(l, l));
    check("DC=0", D * C, Matrix(p, p));
    check("CF(C+E)=EFC", C * F * (C + E), E * F * C);
    check("AC=-CB", A * C, -(C * B));
    check("BD=-DA", B * D, -(D * A));
    check("(C-E)B=AE", (C - E) * B, A * E);
    check("DE(D+F)=FED", D * E * (D + F), F * E * D);
    check("(D-F)A=BF", (D - F) * A, B * F);
    return failed;
}

}  // namespace detail

inline Certificate certify(const Module& V) {
    Certificate c;
    auto fail = [&](const std::string& rel, Matrix res) {
        c.ok = false;
        c.violations.push_back({rel, std::move(res)});
    };
    std::vector<std::string> gens;
    try {
        gens = stored_generators(V.algebra);
    } catch (const MathError& e) {
        c.ok = false;
        c.note = e.what();
        return c;
    }
    if (V.algebra == "Lq" && !V.q) {
        c.ok = false;
        c.note = "Lq module without q";
        return c;
    }
    for (auto& gname : gens) {
        auto it = V.action.find(gname);
        if (it == V.action.end()) {
            c.ok = false;
            c.note = "missing action for " + gname;
            return c;
        }
        if (it->second.rows() != V.dim || it->second.cols() != V.dim) {
            c.ok = false;
            c.note = "action of " + gname + " is not " + std::to_string(V.dim) + "x" + std::to_string(V.dim);
            return c;
        }
        if (!detail::scalars_in_field(it->second, V.field)) {
            c.ok = false;
            c.note = "entries of " + gname + " leave the field";
            return c;
        }
    }
    for (auto& [gname, m] : V.action)
        if (std::find(gens.begin(), gens.end(), gname) == gens.end()) {
            c.ok = false;
            c.note = "unexpected generator " + gname;
            return c;
        }
    if (V.dim > 0 && !invertible(V.at("g"))) fail("g invertible", V.at("g"));
    for (auto& rel : V.pres().module_relations) {
        Matrix r = evaluate(V, rel.poly);
        if (!r.is_zero()) fail(rel.name, r);
    }
    if (!c.ok && V.algebra == "K" && V.dim > 0 && invertible(V.at("g")))
        c.block_constraints = detail::k_block_constraints(V, c.note);
    return c;
}

struct CertificationError : MathError {
    Certificate cert;
    CertificationError(const std::string& what, Certificate c) : MathError(what), cert(std::move(c)) {}
};

inline Module certified(Module V) {
    Certificate c = certify(V);
    if (!c.ok) {
        std::string msg = "module over " + V.algebra + " fails certification";
        if (!c.note.empty()) msg += ": " + c.note;
        for (auto& v : c.violations) msg += "; relation " + v.relation + " has residual " + v.residual.str();
        for (auto& b : c.block_constraints) msg += "; block condition " + b + " fails";
        throw CertificationError(msg, std::move(c));
    }
    return V;
}

inline Module make_module(const std::string& algebra, std::map<std::string, Matrix> action, FieldDesc field = {},
                          std::optional<Scalar> q = std::nullopt) {
    Module V;
    V.algebra = algebra;
    V.q = q;
    V.field = field;
    V.dim = action.count("g") ? action.at("g").rows() : 0;
    V.action = std::move(action);
    return certified(std::move(V));
}

// ---------------------------------------------------------- basic operations

// New basis given by the columns of P: matrices become P^-1 X P.
inline Module conjugate(const Module& V, const Matrix& P) {
    auto Pi = inverse(P);
    if (!Pi) throw MathError("conjugate: change of basis is singular");
    Module W = V;
    for (auto& [g, m] : W.action) m = *Pi * m * P;
    return W;
}

inline Module direct_sum(const Module& V, const Module& W) {
    require_same_category(V, W, "direct sum");
    Module S = V;
    S.dim = V.dim + W.dim;
    for (auto& [g, m] : S.action) m = direct_sum(V.at(g), W.at(g));
    return S;
}

inline Module tensor(const Module& V, const Module& W) {
    require_same_category(V, W, "tensor");
    Module T;
    T.algebra = V.algebra;
    T.q = V.q;
    T.field = V.field;
    T.dim = V.dim * W.dim;
    const Matrix& Gv = V.at("g");
    Matrix Iw = Matrix::identity(W.dim);
    for (auto& gname : stored_generators(V.algebra)) {
        if (gname == "g") T.action["g"] = kronecker(Gv, W.at("g"));
        else T.action[gname] = kronecker(V.at(gname), Iw) + kronecker(Gv, W.at(gname));
    }
    return certified(std::move(T));
}

// u acts on V* by the transpose of S(u) acting on V.
inline Module dual(const Module& V) {
    Module D = V;
    Matrix Gi = V.act("ginv");
    for (auto& gname : stored_generators(V.algebra)) {
        if (gname == "g") D.action["g"] = Gi.transpose();
        else D.action[gname] = (-(Gi * V.at(gname))).transpose();
    }
    return certified(std::move(D));
}

inline Module inflate_L_to_K(const Module& V) {
    if (V.algebra != "L") throw MathError("inflate expects an L-module");
    Module K;
    K.algebra = "K";
    K.field = V.field;
    K.dim = V.dim;
    K.action["g"] = V.at("g");
    K.action["x1"] = Matrix(V.dim, V.dim);
    K.action["x2"] = V.at("y");
    return certified(std::move(K));
}

inline Module restrict_K_to_H(const Module& V) {
    if (V.algebra != "K") throw MathError("restrict expects a K-module");
    Module H;
    H.algebra = "H";
    H.field = V.field;
    H.dim = V.dim;
    H.action["g"] = V.at("g") * V.at("g");
    H.action["a1"] = V.act("x21");
    H.action["a2"] = V.at("x2") * V.at("x2") * Scalar(-1, 2);
    return certified(std::move(H));
}

// Restriction along K -> L is only defined when x1 acts by 0.
inline Module deflate_K_to_L(const Module& V) {
    if (V.algebra != "K") throw MathError("deflate expects a K-module");
    if (!V.at("x1").is_zero()) throw MathError("x1 acts nontrivially; not an L-module");
    Module L;
    L.algebra = "L";
    L.field = V.field;
    L.dim = V.dim;
    L.action["g"] = V.at("g");
    L.action["y"] = V.at("x2");
    return certified(std::move(L));
}

// Module structure on the span of the columns of `basis` (independent columns).
inline std::optional<Module> try_submodule(const Module& V, const Matrix& basis) {
    Module S = V;
    S.dim = basis.cols();
    for (auto& [g, m] : S.action) {
        auto sol = solve(basis, V.at(g) * basis);
        if (!sol) return std::nullopt;
        m = *sol;
    }
    return certified(std::move(S));
}

inline Module submodule(const Module& V, const Matrix& basis) {
    auto S = try_submodule(V, basis);
    if (!S) throw MathError("subspace is not invariant");
    return *S;
}

// Quotient by an invariant subspace, written in the complement basis.
inline Module quotient(const Module& V, const Matrix& sub) {
    Matrix comp = complement_basis(sub);
    Matrix T = hconcat(sub, comp);
    auto Ti = inverse(T);
    if (!Ti) throw MathError("quotient: subspace basis is not independent");
    std::size_t k = sub.cols(), m = comp.cols();
    Module Q = V;
    Q.dim = m;
    for (auto& [g, mat] : Q.action) {
        Matrix c = *Ti * V.at(g) * T;
        if (!c.block(k, 0, m, k).is_zero()) throw MathError("quotient by a subspace that is not invariant");
        mat = c.block(k, k, m, m);
    }
    return certified(std::move(Q));
}

// ------------------------------------------------------------ x1-homology

struct Homology {
    Module kg;  // ker x1 as an H-module
    Module ig;  // im x1
    Module hg;  // ker / im
    Matrix ker_basis, im_basis;
};

inline Homology x1_homology(const Module& V) {
    if (V.algebra != "K") throw MathError("homology expects a K-module");
    const Matrix& X1 = V.at("x1");
    if (!(X1 * X1).is_zero()) throw MathError("x1 does not square to zero");
    Module R = restrict_K_to_H(V);
    Homology h;
    h.ker_basis = canonical_span(Matrix::from_columns(kernel(X1), V.dim));
    h.im_basis = canonical_span(Matrix::from_columns(image(X1), V.dim));
    auto kg = try_submodule(R, h.ker_basis);
    auto ig = try_submodule(R, h.im_basis);
    if (!kg || !ig) throw MathError("ker x1 or im x1 is not H-invariant");
    h.kg = *kg;
    h.ig = *ig;
    // im inside ker, expressed in ker coordinates
    auto coords = solve(h.ker_basis, h.im_basis);
    if (!coords) throw MathError("im x1 is not contained in ker x1");
    h.hg = quotient(h.kg, *coords);
    return h;
}

// --------------------------------------------------------------- gradings

struct GradeBlock {
    Scalar lambda;
    std::size_t dim = 0;
    Matrix projector;
};

struct GradingReport {
    std::vector<GradeBlock> blocks;
};

namespace detail {

inline GradingReport grading_from_spaces(const Module& V, const std::vector<std::pair<Scalar, Matrix>>& spaces) {
    GradingReport rep;
    if (V.dim == 0) return rep;
    std::vector<Matrix> cols;
    Matrix T(V.dim, 0);
    for (auto& [lam, b] : spaces) T = hconcat(T, b);
    auto Ti = inverse(T);
    if (!Ti) throw MathError("grading: eigenspaces do not span");
    std::size_t off = 0;
    for (auto& [lam, b] : spaces) {
        Matrix sel(V.dim, V.dim);
        for (std::size_t i = 0; i < b.cols(); ++i) sel(off + i, off + i) = 1;
        off += b.cols();
        rep.blocks.push_back({lam, b.cols(), T * sel * *Ti});
    }
    return rep;
}

}  // namespace detail

// V[lambda] = V_g^(b) + V_g^(-b) with lambda = b^2.
inline GradingReport g2_grading(const Module& V) {
    auto es = generalized_eigenspaces(V.at("g"), V.field);
    std::map<Scalar, Matrix> by_lambda;
    for (auto& e : es) {
        Scalar lam = e.value * e.value;
        auto it = by_lambda.find(lam);
        if (it == by_lambda.end()) by_lambda.emplace(lam, e.basis);
        else it->second = hconcat(it->second, e.basis);
    }
    std::vector<std::pair<Scalar, Matrix>> spaces(by_lambda.begin(), by_lambda.end());
    return detail::grading_from_spaces(V, spaces);
}

// Generalized eigenspaces of t = x2^2 on a K-module.
inline GradingReport t_grading(const Module& V) {
    if (V.algebra != "K") throw MathError("t-grading expects a K-module");
    Matrix t = V.at("x2") * V.at("x2");
    std::vector<std::pair<Scalar, Matrix>> spaces;
    for (auto& e : generalized_eigenspaces(t, V.field)) spaces.emplace_back(e.value, e.basis);
    return detail::grading_from_spaces(V, spaces);
}

// Projectors are idempotent, sum to the identity and commute with the action.
inline bool grading_is_module_decomposition(const Module& V, const GradingReport& r) {
    Matrix sum(V.dim, V.dim);
    for (auto& b : r.blocks) {
        if (b.projector * b.projector != b.projector) return false;
        for (auto& [g, m] : V.action)
            if (b.projector * m != m * b.projector) return false;
        sum += b.projector;
    }
    return V.dim == 0 || sum == Matrix::identity(V.dim);
}

inline bool is_in_rep_Ln(const Module& V, unsigned n) {
    if (V.algebra != "L") throw MathError("membership in rep L^(n) is defined for L-modules");
    return V.at("g").pow(2 * n) == Matrix::identity(V.dim);
}

}  // namespace hopfrep

#endif  // HOPFREP_MODULE_HPP
