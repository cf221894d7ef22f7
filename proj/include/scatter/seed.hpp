#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "scatter/matrix.hpp"
#include "scatter/scattering.hpp"
#include "scatter/series.hpp"

namespace scat {

// Seed datum (P, Q): matrices P, Q^bullet into mutually dual lattices plus a
// positive diagonal D with Q = Q^bullet D.  P and Q^bullet are stored as
// rational matrices with their denominators tracked implicitly; Q must be
// integral and B^bullet = (Q^bullet)^T P skew-symmetric.
struct SeedDatum {
    MatQ P;       // d x r
    MatQ Qbullet; // d x r
    QVec D;       // r positive diagonal entries

    int d() const { return P.rows(); }
    int r() const { return P.cols(); }

    MatQ Q() const { return Qbullet * MatQ::diagonal(D); }
    MatQ Pbullet() const { return P * MatQ::diagonal(D); }
    MatQ B() const { return Q().transpose() * P; }
    MatQ Bbullet() const { return Qbullet.transpose() * P; }

    QVec2 P_col2(int i) const {
        if (d() != 2) throw dimension_error("seed: ambient rank is not 2");
        return qvec2(P(0, i), P(1, i));
    }
    QVec2 Q_col2(int i) const {
        MatQ q = Q();
        if (d() != 2) throw dimension_error("seed: ambient rank is not 2");
        return qvec2(q(0, i), q(1, i));
    }
};

inline void validate_seed(const SeedDatum& s) {
    if (s.P.rows() != s.Qbullet.rows() || s.P.cols() != s.Qbullet.cols())
        throw dimension_error("seed: P and Qbullet shapes differ");
    if (static_cast<int>(s.D.size()) != s.r()) throw dimension_error("seed: D size mismatch");
    for (const auto& di : s.D)
        if (di <= 0) throw domain_error("seed: D entries must be positive");
    MatQ q = s.Q();
    if (!q.is_integral()) throw domain_error("seed: Q = Qbullet*D is not integral");
    for (int i = 0; i < s.r(); ++i) {
        bool zero = true;
        for (int row = 0; row < s.d(); ++row)
            if (q(row, i) != 0) zero = false;
        if (zero) throw domain_error("seed: column " + std::to_string(i) + " of Q is zero");
    }
    MatQ bb = s.Bbullet();
    if (!(bb == -bb.transpose())) throw domain_error("seed: Bbullet is not skew-symmetric");
}

inline SeedDatum make_seed(MatQ P, MatQ Qbullet, QVec D) {
    SeedDatum s{std::move(P), std::move(Qbullet), std::move(D)};
    validate_seed(s);
    return s;
}

// Rescales (D, Qbullet) |-> (kD, Qbullet/k) so D has positive integer entries
// with gcd 1.  P and Q are unchanged.
inline SeedDatum normalize_scale(const SeedDatum& s) {
    if (s.D.empty()) return s;
    Int l = 1, g = 0;
    for (const auto& di : s.D) l = boost::multiprecision::lcm(l, denominator(di));
    for (const auto& di : s.D) g = boost::multiprecision::gcd(g, numerator(di) * (l / denominator(di)));
    Rat k(l, g);
    if (k == 1) return s;
    SeedDatum out = s;
    for (auto& di : out.D) di *= k;
    out.Qbullet = out.Qbullet * (Rat(1) / k);
    return out;
}

// Initial walls of eq-style cluster scattering data: for each i, the full line
// (Qe_i)^perp with function 1 + x^{Pe_i} y^{e_i} and normal Qe_i, normalized
// so the stored normal is primitive (E_{kn,f} = E_{n,f^k}).
inline std::vector<Wall> initial_diagram(const SeedDatum& s, int order) {
    if (s.d() != 2) throw dimension_error("initial_diagram: ambient rank must be 2");
    if (!s.P.is_integral()) throw domain_error("initial_diagram: P is not integral");
    std::vector<Wall> walls;
    for (int i = 0; i < s.r(); ++i) {
        QVec2 qi = s.Q_col2(i);
        IVec2 n = {numerator(qi[0]), numerator(qi[1])};
        auto [nu, g] = primitive_part(n);
        QVec2 pi = s.P_col2(i);
        IVec2 m = {numerator(pi[0]), numerator(pi[1])};
        if (dot(m, nu) != 0) throw internal_error("initial_diagram: Pe_i not orthogonal to Qe_i");
        Wall w;
        w.support = {qvec2(Rat(0), Rat(0)), rot90(nu), SupportKind::Line};
        w.normal = nu;
        w.qdual = (Rat(1) / s.D[i]) * qi; // Q^bullet e_i
        ScatFunction f(ExponentPair(m, unit_y(i, s.r()).q), {Int(1)});
        w.func = g == 1 ? f : f.powered(static_cast<long>(g), order);
        w.validate();
        walls.push_back(std::move(w));
    }
    return walls;
}

inline std::vector<QVec2> ydual_of(const SeedDatum& s) {
    std::vector<QVec2> v;
    for (int i = 0; i < s.r(); ++i) {
        QVec2 qi = s.Q_col2(i);
        v.push_back((Rat(1) / s.D[i]) * qi);
    }
    return v;
}

// Chiral dual (Q^bullet, P^bullet), same D.  Defined when P^bullet = PD has
// no zero column (its columns become the dual normals).
inline SeedDatum chiral_dual(const SeedDatum& s0) {
    SeedDatum s = normalize_scale(s0);
    SeedDatum out{s.Qbullet, s.P, s.D};
    validate_seed(out);
    return out;
}

// Chiral-Langlands dual (Q, P); carries D^{-1} so that the stored
// Q^bullet = PD stays rational with controlled denominators.
inline SeedDatum chiral_langlands_dual(const SeedDatum& s0) {
    SeedDatum s = normalize_scale(s0);
    QVec dinv(s.D.size());
    for (std::size_t i = 0; i < s.D.size(); ++i) dinv[i] = Rat(1) / s.D[i];
    SeedDatum out{s.Q(), s.Pbullet(), dinv};
    validate_seed(out);
    return normalize_scale(out);
}

// Langlands dual (Q, -P).
inline SeedDatum langlands_dual(const SeedDatum& s0) {
    SeedDatum s = normalize_scale(s0);
    QVec dinv(s.D.size());
    for (std::size_t i = 0; i < s.D.size(); ++i) dinv[i] = Rat(1) / s.D[i];
    SeedDatum out{s.Q(), -s.Pbullet(), dinv};
    validate_seed(out);
    return normalize_scale(out);
}

// Linear morphism A : (P,Q) -> (P',Q'), i.e. AP = P' and A^T Q' = Q.
struct LinearMorphism {
    MatQ A;
    SeedDatum source, target;
    bool integral = false;
};

inline LinearMorphism check_linear_morphism(const MatQ& A, const SeedDatum& s,
                                            const SeedDatum& t) {
    if (s.B() != t.B())
        throw domain_error("linear morphism: exchange matrices differ (QtP != Q't P')");
    if (s.D != t.D) throw domain_error("linear morphism: diagonal matrices differ");
    if (!(A * s.P == t.P)) throw domain_error("linear morphism: AP != P'");
    if (!(A.transpose() * t.Q() == s.Q())) throw domain_error("linear morphism: A^T Q' != Q");
    return {A, s, t, A.is_integral()};
}

// rho_A(x^m y^q) = x^{Am} y^q applied termwise; exponent collisions are
// summed (A need not be injective).
inline TruncatedSeries rho_transport(const MatQ& A, const TruncatedSeries& f) {
    if (A.rows() != 2 || A.cols() != 2)
        throw dimension_error("rho_transport: planar series need a 2x2 matrix");
    TruncatedSeries out(f.order(), f.nvars());
    for (const auto& [u, c] : f.terms()) {
        QVec img = A * QVec{Rat(u.m[0]), Rat(u.m[1])};
        if (denominator(img[0]) != 1 || denominator(img[1]) != 1)
            throw domain_error("rho_transport: non-lattice image exponent");
        out.add_term(ExponentPair(ivec2(numerator(img[0]), numerator(img[1])), u.q), c);
    }
    return out;
}

// Rational Lambda-structure: L with LP = Q^bullet and L^T P = -Q^bullet.
struct LambdaStructure {
    MatQ L;
};

struct LambdaWitness {
    QVec kernel_vector; // in ker(P) but not in ker(Q^bullet)
};

// Solves the defining linear system; free parameters are set to zero.
// Returns a witness vector when no solution exists (ker P not in ker Qbullet).
inline std::variant<LambdaStructure, LambdaWitness> lambda_find(const SeedDatum& s) {
    const int d = s.d(), r = s.r();
    MatQ sys(2 * d * r, d * d);
    QVec rhs(2 * d * r, Rat(0));
    auto eq = [&](int row, int i, int t, const Rat& coef) { sys(row, i * d + t) += coef; };
    int row = 0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < r; ++j, ++row) {
            for (int t = 0; t < d; ++t) eq(row, i, t, s.P(t, j));
            rhs[row] = s.Qbullet(i, j);
        }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < r; ++j, ++row) {
            for (int t = 0; t < d; ++t) eq(row, t, i, s.P(t, j));
            rhs[row] = -s.Qbullet(i, j);
        }
    auto x = solve_linear(sys, rhs);
    if (!x) {
        for (const auto& v : s.P.kernel()) {
            QVec qv = s.Qbullet * v;
            for (const auto& e : qv)
                if (e != 0) return LambdaWitness{v};
        }
        throw internal_error("lambda_find: unsolvable without a kernel witness");
    }
    MatQ L(d, d);
    for (int i = 0; i < d; ++i)
        for (int t = 0; t < d; ++t) L(i, t) = (*x)[i * d + t];
    return LambdaStructure{L};
}

inline void validate_lambda(const SeedDatum& s, const LambdaStructure& l) {
    if (!(l.L * s.P == s.Qbullet)) throw domain_error("lambda: LP != Qbullet");
    if (!(l.L.transpose() * s.P == -s.Qbullet)) throw domain_error("lambda: L^T P != -Qbullet");
}

struct LambdaExtension {
    SeedDatum seed;        // (P', Q') on M + N^bullet
    LambdaStructure lambda; // invertible
    MatQ A;                 // injection m -> (m, 0)
};

// Embeds (s, L) into a seed with an invertible Lambda-structure:
// P' = [P; 0], Q'^bullet = [Q^bullet; P], Lambda' = [[L, -I], [I, 0]],
// with A = [I; 0] satisfying the congruence A^T Lambda' A = L.
inline LambdaExtension lambda_invertible_extension(const SeedDatum& s, const LambdaStructure& l) {
    validate_lambda(s, l);
    const int d = s.d(), r = s.r();
    MatQ P2(2 * d, r), Qb2(2 * d, r), L2(2 * d, 2 * d), A(2 * d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < r; ++j) {
            P2(i, j) = s.P(i, j);
            Qb2(i, j) = s.Qbullet(i, j);
            Qb2(d + i, j) = s.P(i, j);
        }
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) L2(i, j) = l.L(i, j);
        L2(i, d + i) = -1;
        L2(d + i, i) = 1;
        A(i, i) = 1;
    }
    SeedDatum s2{P2, Qb2, s.D};
    validate_seed(s2);
    LambdaStructure l2{L2};
    validate_lambda(s2, l2);
    if (L2.det() == 0) throw internal_error("lambda extension: Lambda' is singular");
    if (!(A.transpose() * L2 * A == l.L))
        throw internal_error("lambda extension: congruence A^T Lambda' A = Lambda fails");
    // Inverse formula (n, m) -> (m, Lm - n) round-trips.
    MatQ Inv(2 * d, 2 * d);
    for (int i = 0; i < d; ++i) {
        Inv(i, d + i) = 1;
        Inv(d + i, i) = -1;
        for (int j = 0; j < d; ++j) Inv(d + i, d + j) = l.L(i, j);
    }
    if (!(L2 * Inv == MatQ::identity(2 * d)))
        throw internal_error("lambda extension: stated inverse fails");
    return {std::move(s2), std::move(l2), std::move(A)};
}

// Saturated resolution of Lemma-style form: (P,Q) -A-> (P',Q') <-B- (P'',Q'')
// with A injective, B surjective, (P'',Q'') saturated-injective.
struct SaturatedResolution {
    SeedDatum mid;    // (P', Q')
    SeedDatum sat;    // (P'', Q'')
    MatQ A;           // M -> M'
    MatQ B;           // M'' -> M'
};

inline SaturatedResolution saturated_resolution(const SeedDatum& s) {
    const int d = s.d(), r = s.r();
    MatQ P1(d + r, r), Qb1(d + r, r), P2(d + 2 * r, r), Qb2(d + 2 * r, r);
    for (int j = 0; j < r; ++j) {
        for (int i = 0; i < d; ++i) {
            P1(i, j) = s.P(i, j);
            P2(i, j) = s.P(i, j);
            Qb1(i, j) = s.Qbullet(i, j);
            Qb2(i, j) = s.Qbullet(i, j);
        }
        // Q' v = (Qv, v); store bullets so that Qbullet * D reproduces them.
        Qb1(d + j, j) = Rat(1) / s.D[j];
        Qb2(d + j, j) = Rat(1) / s.D[j];
        P2(d + r + j, j) = 1;
    }
    MatQ A(d + r, d), B(d + r, d + 2 * r);
    for (int i = 0; i < d; ++i) A(i, i) = 1;
    for (int i = 0; i < d + r; ++i) B(i, i) = 1;
    SeedDatum mid{P1, Qb1, s.D}, sat{P2, Qb2, s.D};
    validate_seed(mid);
    validate_seed(sat);
    check_linear_morphism(A, s, mid);
    check_linear_morphism(B, sat, mid);
    return {std::move(mid), std::move(sat), std::move(A), std::move(B)};
}

} // namespace scat
