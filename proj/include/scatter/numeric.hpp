#pragma once

#include <array>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "scatter/errors.hpp"

namespace scat {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;

// Fixed-size vectors for the rank-2 ambient lattice M = Z^2 and its dual.
using IVec2 = std::array<Int, 2>;
using QVec2 = std::array<Rat, 2>;

inline IVec2 ivec2(Int a, Int b) { return {std::move(a), std::move(b)}; }
inline QVec2 qvec2(Rat a, Rat b) { return {std::move(a), std::move(b)}; }

inline IVec2 operator+(const IVec2& a, const IVec2& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline IVec2 operator-(const IVec2& a, const IVec2& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline IVec2 operator-(const IVec2& a) { return {-a[0], -a[1]}; }
inline IVec2 operator*(const Int& s, const IVec2& a) { return {s * a[0], s * a[1]}; }

inline QVec2 operator+(const QVec2& a, const QVec2& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline QVec2 operator-(const QVec2& a, const QVec2& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline QVec2 operator-(const QVec2& a) { return {-a[0], -a[1]}; }
inline QVec2 operator*(const Rat& s, const QVec2& a) { return {s * a[0], s * a[1]}; }

inline QVec2 to_rational(const IVec2& a) { return {Rat(a[0]), Rat(a[1])}; }

inline Int dot(const IVec2& a, const IVec2& b) { return a[0] * b[0] + a[1] * b[1]; }
inline Rat dot(const QVec2& a, const QVec2& b) { return a[0] * b[0] + a[1] * b[1]; }
inline Rat dot(const QVec2& a, const IVec2& b) { return a[0] * Rat(b[0]) + a[1] * Rat(b[1]); }

// cross(a, b) = a_x b_y - a_y b_x; positive when b is counterclockwise of a.
inline Int cross(const IVec2& a, const IVec2& b) { return a[0] * b[1] - a[1] * b[0]; }
inline Rat cross(const QVec2& a, const QVec2& b) { return a[0] * b[1] - a[1] * b[0]; }

// Rotation by +90 degrees; maps a normal to a direction along its kernel.
inline IVec2 rot90(const IVec2& a) { return {-a[1], a[0]}; }
inline QVec2 rot90(const QVec2& a) { return {-a[1], a[0]}; }

inline bool is_zero(const IVec2& a) { return a[0] == 0 && a[1] == 0; }
inline bool is_zero(const QVec2& a) { return a[0] == 0 && a[1] == 0; }

inline int sign_of(const Int& a) { return a == 0 ? 0 : (a > 0 ? 1 : -1); }
inline int sign_of(const Rat& a) { return a == 0 ? 0 : (a > 0 ? 1 : -1); }

// Dual pairing between M_Q and N_Q (arbitrary equal rank).
inline Rat dual_pair(const QVec& a, const QVec& b) {
    if (a.size() != b.size())
        throw dimension_error("dual_pair: lengths " + std::to_string(a.size()) + " vs " +
                              std::to_string(b.size()));
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Int dual_pair(const IVec& a, const IVec& b) {
    if (a.size() != b.size())
        throw dimension_error("dual_pair: lengths " + std::to_string(a.size()) + " vs " +
                              std::to_string(b.size()));
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// v = g * nu with nu primitive and g = gcd of the entries.
inline std::pair<IVec, Int> primitive_part(const IVec& v) {
    Int g = 0;
    for (const Int& e : v) g = boost::multiprecision::gcd(g, e);
    if (g == 0) throw domain_error("primitive_part: zero vector");
    IVec nu(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) nu[i] = v[i] / g;
    return {std::move(nu), std::move(g)};
}

inline std::pair<IVec2, Int> primitive_part(const IVec2& v) {
    auto [nu, g] = primitive_part(IVec{v[0], v[1]});
    return {ivec2(nu[0], nu[1]), g};
}

// Rational vector as (primitive lattice vector) * (positive rational scale).
inline std::pair<IVec2, Rat> primitive_direction(const QVec2& v) {
    if (is_zero(v)) throw domain_error("primitive_direction: zero vector");
    Int d = boost::multiprecision::lcm(denominator(v[0]), denominator(v[1]));
    IVec2 w = {numerator(v[0]) * (d / denominator(v[0])),
               numerator(v[1]) * (d / denominator(v[1]))};
    auto [nu, g] = primitive_part(w);
    return {nu, Rat(g, d)};
}

inline std::string to_string(const Int& a) { return a.str(); }
inline std::string to_string(const Rat& a) {
    if (denominator(a) == 1) return numerator(a).str();
    return numerator(a).str() + "/" + denominator(a).str();
}
inline std::string to_string(const IVec2& a) { return "(" + a[0].str() + "," + a[1].str() + ")"; }
inline std::string to_string(const QVec2& a) {
    return "(" + to_string(a[0]) + "," + to_string(a[1]) + ")";
}

inline Rat parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (den == 0) throw domain_error("parse_rational: zero denominator in '" + s + "'");
    return Rat(num, den);
}

} // namespace scat
