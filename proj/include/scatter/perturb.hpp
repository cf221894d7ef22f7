#pragma once

#include <string>
#include <utility>

#include "scatter/numeric.hpp"

namespace scat {

// Value of a rational quantity at a point perturbed to second order:
// c0 + c1*eps + c2*eps^2 for an infinitesimal eps > 0.
struct Eps {
    Rat c0, c1, c2;

    Eps() : c0(0), c1(0), c2(0) {}
    Eps(Rat a) : c0(std::move(a)), c1(0), c2(0) {}
    Eps(Rat a, Rat b, Rat c) : c0(std::move(a)), c1(std::move(b)), c2(std::move(c)) {}

    // Lexicographic sign; 0 only if all three components vanish.
    int sign() const {
        if (c0 != 0) return sign_of(c0);
        if (c1 != 0) return sign_of(c1);
        return sign_of(c2);
    }
    bool is_zero() const { return c0 == 0 && c1 == 0 && c2 == 0; }

    Eps operator+(const Eps& o) const { return {c0 + o.c0, c1 + o.c1, c2 + o.c2}; }
    Eps operator-(const Eps& o) const { return {c0 - o.c0, c1 - o.c1, c2 - o.c2}; }
    Eps operator-() const { return {-c0, -c1, -c2}; }
    Eps operator*(const Rat& s) const { return {c0 * s, c1 * s, c2 * s}; }
    Eps operator/(const Rat& s) const {
        if (s == 0) throw domain_error("Eps: division by zero");
        return {c0 / s, c1 / s, c2 / s};
    }
    bool operator==(const Eps& o) const { return c0 == o.c0 && c1 == o.c1 && c2 == o.c2; }
    bool operator<(const Eps& o) const { return (*this - o).sign() < 0; }
};

inline std::string to_string(const Eps& e) {
    return to_string(e.c0) + " + " + to_string(e.c1) + "e + " + to_string(e.c2) + "e^2";
}

// A point base + eps*eps1 + eps^2*eps2 of M_R, eps an infinitesimal.
// Comparisons against rational linear functionals are lexicographic in the
// three levels, realizing the generic basepoints of broken-line theory.
struct PerturbedPoint {
    QVec2 base{Rat(0), Rat(0)};
    QVec2 eps1{Rat(0), Rat(0)};
    QVec2 eps2{Rat(0), Rat(0)};

    Eps pair_with(const QVec2& functional) const {
        return {dot(functional, base), dot(functional, eps1), dot(functional, eps2)};
    }
    Eps pair_with(const IVec2& functional) const {
        QVec2 f = to_rational(functional);
        return pair_with(f);
    }
    Eps coord(int i) const { return {base[i], eps1[i], eps2[i]}; }

    PerturbedPoint operator+(const QVec2& v) const { return {base + v, eps1, eps2}; }
    PerturbedPoint operator-(const PerturbedPoint& o) const {
        return {base - o.base, eps1 - o.eps1, eps2 - o.eps2};
    }
    bool operator==(const PerturbedPoint& o) const {
        return base == o.base && eps1 == o.eps1 && eps2 == o.eps2;
    }

    // this + s*m for an exact direction m; stays within second order.
    PerturbedPoint advance(const Eps& s, const IVec2& m) const {
        QVec2 mq = to_rational(m);
        return {base + s.c0 * mq, eps1 + s.c1 * mq, eps2 + s.c2 * mq};
    }
};

// Default perturbation levels; fixed so runs are reproducible.
inline const QVec2 kDefaultEps1 = qvec2(Rat(1), Rat(7));
inline const QVec2 kDefaultEps2 = qvec2(Rat(3), Rat(1));

inline PerturbedPoint perturbed(QVec2 base) { return {std::move(base), kDefaultEps1, kDefaultEps2}; }
inline PerturbedPoint perturbed(Rat x, Rat y) { return perturbed(qvec2(std::move(x), std::move(y))); }

inline std::string to_string(const PerturbedPoint& p) {
    return to_string(p.base) + " + e*" + to_string(p.eps1) + " + e^2*" + to_string(p.eps2);
}

// Lexicographic sign of functional . p over (base, eps1, eps2).
// Zero signals a degenerate perturbation; callers must reject it.
inline int perturbed_sign(const QVec& functional, const QVec& base, const QVec& eps1,
                          const QVec& eps2) {
    Eps v{dual_pair(functional, base), dual_pair(functional, eps1), dual_pair(functional, eps2)};
    return v.sign();
}

inline int perturbed_sign(const QVec2& functional, const PerturbedPoint& p) {
    return p.pair_with(functional).sign();
}

} // namespace scat
