#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "scatter/numeric.hpp"

namespace scat {

// An element (m, q) of M + Q: x-exponent in Z^2, y-exponent in N^r.
struct ExponentPair {
    IVec2 m{Int(0), Int(0)};
    std::vector<int> q;

    ExponentPair() = default;
    ExponentPair(IVec2 mm, std::vector<int> qq) : m(std::move(mm)), q(std::move(qq)) {}

    int ydeg() const { return std::accumulate(q.begin(), q.end(), 0); }
    bool q_is_zero() const {
        return std::all_of(q.begin(), q.end(), [](int e) { return e == 0; });
    }
    bool is_zero() const { return scat::is_zero(m) && q_is_zero(); }

    ExponentPair operator+(const ExponentPair& o) const {
        ExponentPair r(m + o.m, q);
        for (std::size_t i = 0; i < q.size(); ++i) r.q[i] += o.q[i];
        return r;
    }
    ExponentPair scaled(int t) const {
        ExponentPair r(Int(t) * m, q);
        for (auto& e : r.q) e *= t;
        return r;
    }
    bool operator==(const ExponentPair& o) const { return m == o.m && q == o.q; }
    bool operator!=(const ExponentPair& o) const { return !(*this == o); }
};

// Canonical term order: lexicographic in (q, m).  Serialization and the
// internal map share it so printed output is deterministic.
struct ExpLess {
    bool operator()(const ExponentPair& a, const ExponentPair& b) const {
        if (a.q != b.q) return a.q < b.q;
        if (a.m[0] != b.m[0]) return a.m[0] < b.m[0];
        return a.m[1] < b.m[1];
    }
};

inline std::string to_string(const ExponentPair& u) {
    std::string s = "x^" + to_string(u.m) + " y^(";
    for (std::size_t i = 0; i < u.q.size(); ++i) s += (i ? "," : "") + std::to_string(u.q[i]);
    return s + ")";
}

inline ExponentPair unit_y(int i, int nvars) {
    std::vector<int> q(nvars, 0);
    q[i] = 1;
    return {ivec2(0, 0), std::move(q)};
}

// Sparse element of Z[x^M][[y^Q]] reduced modulo total-y-degree >= k.
class TruncatedSeries {
  public:
    TruncatedSeries(int order, int nvars) : order_(order), nvars_(nvars) {}

    static TruncatedSeries one(int order, int nvars) {
        TruncatedSeries s(order, nvars);
        s.add_term(ExponentPair(ivec2(0, 0), std::vector<int>(nvars, 0)), 1);
        return s;
    }
    static TruncatedSeries monomial(const ExponentPair& u, Int c, int order) {
        TruncatedSeries s(order, static_cast<int>(u.q.size()));
        s.add_term(u, std::move(c));
        return s;
    }

    int order() const { return order_; }
    int nvars() const { return nvars_; }
    const std::map<ExponentPair, Int, ExpLess>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Int coeff(const ExponentPair& u) const {
        auto it = terms_.find(u);
        return it == terms_.end() ? Int(0) : it->second;
    }

    // Adds c*z^u, dropping terms with |q| >= k and pruning zeros.
    void add_term(const ExponentPair& u, Int c) {
        if (c == 0 || u.ydeg() >= order_) return;
        if (static_cast<int>(u.q.size()) != nvars_)
            throw dimension_error("TruncatedSeries: y-exponent rank mismatch");
        auto [it, fresh] = terms_.emplace(u, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    TruncatedSeries truncated(int new_order) const {
        TruncatedSeries r(new_order, nvars_);
        for (const auto& [u, c] : terms_) r.add_term(u, c);
        return r;
    }

    TruncatedSeries operator-() const {
        TruncatedSeries r(order_, nvars_);
        for (const auto& [u, c] : terms_) r.terms_.emplace(u, -c);
        return r;
    }

    bool operator==(const TruncatedSeries& o) const {
        return order_ == o.order_ && nvars_ == o.nvars_ && terms_ == o.terms_;
    }

    friend TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b) {
        if (a.order_ != b.order_) throw order_error("add: truncation orders differ");
        if (a.nvars_ != b.nvars_) throw dimension_error("add: coefficient ranks differ");
        TruncatedSeries r = a;
        for (const auto& [u, c] : b.terms_) r.add_term(u, c);
        return r;
    }

    friend TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b) {
        return add(a, -b);
    }

    friend TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) {
        if (a.order_ != b.order_) throw order_error("mul: truncation orders differ");
        if (a.nvars_ != b.nvars_) throw dimension_error("mul: coefficient ranks differ");
        TruncatedSeries r(a.order_, a.nvars_);
        for (const auto& [ua, ca] : a.terms_) {
            int da = ua.ydeg();
            for (const auto& [ub, cb] : b.terms_) {
                if (da + ub.ydeg() >= a.order_) continue;
                r.add_term(ua + ub, ca * cb);
            }
        }
        return r;
    }

    friend TruncatedSeries scale(const TruncatedSeries& a, const Int& s) {
        TruncatedSeries r(a.order_, a.nvars_);
        if (s == 0) return r;
        for (const auto& [u, c] : a.terms_) r.terms_.emplace(u, c * s);
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [u, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += c.str() + "*" + to_string(u);
        }
        return s;
    }

  private:
    int order_;
    int nvars_;
    std::map<ExponentPair, Int, ExpLess> terms_;
};

// f^e mod I^k for f in 1 + I and any integer e, via binary powering and
// geometric-series inversion.
inline TruncatedSeries pow_unit(const TruncatedSeries& f, long e) {
    const int k = f.order(), r = f.nvars();
    ExponentPair zero(ivec2(0, 0), std::vector<int>(r, 0));
    if (f.coeff(zero) != 1) throw domain_error("pow_unit: constant term is not 1");

    TruncatedSeries result = TruncatedSeries::one(k, r);
    if (e == 0) return result;

    TruncatedSeries base = f;
    if (e < 0) {
        // f^-1 = sum (-h)^j for f = 1 + h; h is nilpotent mod I^k.
        TruncatedSeries h = sub(f, result);
        TruncatedSeries inv = TruncatedSeries::one(k, r);
        TruncatedSeries pw = TruncatedSeries::one(k, r);
        for (int j = 1; j < k; ++j) {
            pw = mul(pw, h);
            if (pw.is_zero()) break;
            inv = (j % 2) ? sub(inv, pw) : add(inv, pw);
        }
        base = inv;
        e = -e;
    }
    unsigned long n = static_cast<unsigned long>(e);
    while (n) {
        if (n & 1) result = mul(result, base);
        base = (n >>= 1) ? mul(base, base) : base;
    }
    return result;
}

// Scattering function 1 + sum_j coeffs[j-1] z^{j*base} with base.q != 0.
// The single-variable form suffices for cluster diagrams; a general wall is a
// product of these on one support.
struct ScatFunction {
    ExponentPair base;
    std::vector<Int> coeffs; // coeffs[j-1] multiplies z^{j*base}

    ScatFunction() = default;
    ScatFunction(ExponentPair b, std::vector<Int> c) : base(std::move(b)), coeffs(std::move(c)) {
        if (base.ydeg() == 0) throw domain_error("ScatFunction: base y-exponent is zero");
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    }

    int nvars() const { return static_cast<int>(base.q.size()); }
    bool is_trivial(int order) const {
        for (std::size_t j = 0; j < coeffs.size(); ++j)
            if (coeffs[j] != 0 && static_cast<int>(j + 1) * base.ydeg() < order) return true;
        return false;
    }
    // Largest power of z^base present (mod I^order).
    int degree(int order) const {
        int d = 0;
        for (std::size_t j = 0; j < coeffs.size(); ++j)
            if (coeffs[j] != 0 && static_cast<int>(j + 1) * base.ydeg() < order)
                d = static_cast<int>(j + 1);
        return d;
    }
    // Whether terms beyond the last stored slot would be visible at `order`:
    // if not, the degree read off above could be an artifact of truncation.
    bool degree_is_certain(int order) const { return (degree(order) + 1) * base.ydeg() < order; }

    Int coeff(int j) const {
        if (j == 0) return 1;
        if (j < 1 || j > static_cast<int>(coeffs.size())) return 0;
        return coeffs[j - 1];
    }
    void set_coeff(int j, Int c) {
        if (j < 1) throw domain_error("ScatFunction: power must be >= 1");
        if (static_cast<int>(coeffs.size()) < j) coeffs.resize(j, Int(0));
        coeffs[j - 1] = std::move(c);
    }

    TruncatedSeries to_series(int order) const {
        TruncatedSeries s = TruncatedSeries::one(order, nvars());
        for (std::size_t j = 0; j < coeffs.size(); ++j)
            s.add_term(base.scaled(static_cast<int>(j + 1)), coeffs[j]);
        return s;
    }

    // Coefficients of f(T)^e mod T^(slots+1), e any integer (f(0) = 1).
    std::vector<Int> power_coeffs(long e, int slots) const {
        std::vector<Int> f(slots + 1, Int(0)), res(slots + 1, Int(0));
        f[0] = 1;
        for (int j = 1; j <= slots && j <= static_cast<int>(coeffs.size()); ++j)
            f[j] = coeffs[j - 1];
        res[0] = 1;
        auto mul_poly = [slots](const std::vector<Int>& a, const std::vector<Int>& b) {
            std::vector<Int> c(slots + 1, Int(0));
            for (int i = 0; i <= slots; ++i) {
                if (a[i] == 0) continue;
                for (int j = 0; i + j <= slots; ++j)
                    if (b[j] != 0) c[i + j] += a[i] * b[j];
            }
            return c;
        };
        std::vector<Int> base_poly = f;
        if (e < 0) {
            std::vector<Int> inv(slots + 1, Int(0));
            inv[0] = 1;
            // Newton-free direct recursion: inv[n] = -sum_{j>=1} f[j]*inv[n-j].
            for (int n = 1; n <= slots; ++n) {
                Int acc = 0;
                for (int j = 1; j <= n; ++j) acc += f[j] * inv[n - j];
                inv[n] = -acc;
            }
            base_poly = inv;
            e = -e;
        }
        unsigned long n = static_cast<unsigned long>(e);
        while (n) {
            if (n & 1) res = mul_poly(res, base_poly);
            if (n >>= 1) base_poly = mul_poly(base_poly, base_poly);
        }
        return res;
    }

    ScatFunction merged_with(const ScatFunction& o, int order) const {
        if (!(base == o.base)) throw wall_error("merge: scattering functions have different bases");
        int slots = std::max(0, (order - 1) / base.ydeg());
        std::vector<Int> a(slots + 1, Int(0)), b(slots + 1, Int(0));
        a[0] = 1;
        b[0] = 1;
        for (int j = 1; j <= slots; ++j) {
            a[j] = coeff(j);
            b[j] = o.coeff(j);
        }
        std::vector<Int> c(slots + 1, Int(0));
        for (int i = 0; i <= slots; ++i)
            for (int j = 0; i + j <= slots; ++j) c[i + j] += a[i] * b[j];
        return ScatFunction(base, std::vector<Int>(c.begin() + 1, c.end()));
    }

    ScatFunction powered(long e, int order) const {
        int slots = std::max(0, (order - 1) / base.ydeg());
        auto pc = power_coeffs(e, slots);
        return ScatFunction(base, std::vector<Int>(pc.begin() + 1, pc.end()));
    }

    std::string str() const {
        std::string s = "1";
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            if (coeffs[j] == 0) continue;
            s += " + " + coeffs[j].str() + "*z^[" + std::to_string(j + 1) + "*" + to_string(base) +
                 "]";
        }
        return s;
    }
};

// E_{n,f}(x^m y^q) = x^m y^q f^{m.n}, extended linearly and reduced mod I^k.
// Requires the base x-exponent of f to be orthogonal to n.
inline TruncatedSeries elementary_transform(const IVec2& n, const ScatFunction& f,
                                            const TruncatedSeries& g) {
    if (dot(f.base.m, n) != 0)
        throw wall_error("elementary_transform: function exponent not orthogonal to the normal");
    const int k = g.order();
    const int bdeg = f.base.ydeg();
    TruncatedSeries out(k, g.nvars());
    std::map<Int, std::vector<Int>> pow_cache;
    const int max_slots = std::max(0, (k - 1) / bdeg);
    for (const auto& [u, c] : g.terms()) {
        Int e = dot(u.m, n);
        if (e == 0) {
            out.add_term(u, c);
            continue;
        }
        auto it = pow_cache.find(e);
        if (it == pow_cache.end())
            it = pow_cache.emplace(e, f.power_coeffs(static_cast<long>(e), max_slots)).first;
        const auto& pw = it->second;
        const int room = (k - 1 - u.ydeg()) / bdeg;
        for (int j = 0; j <= room && j < static_cast<int>(pw.size()); ++j) {
            if (pw[j] == 0) continue;
            out.add_term(u + f.base.scaled(j), c * pw[j]);
        }
    }
    return out;
}

// Laurent polynomial in x over Z; the target of coefficient specialization.
using LaurentPoly = std::map<IVec2, Int>;

inline void laurent_add(LaurentPoly& p, const IVec2& m, const Int& c) {
    if (c == 0) return;
    auto [it, fresh] = p.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

// A ring map Z[y^Q] -> Z[x^M] sending y^{e_i} to a nonzero monomial c_i x^{m_i};
// never maps monomials to zero or zero divisors.
struct Specialization {
    struct Image {
        Int c;
        IVec2 m;
    };
    std::vector<Image> images; // one per coordinate of Q

    static Specialization all_ones(int nvars) {
        Specialization nu;
        nu.images.assign(nvars, {Int(1), ivec2(0, 0)});
        return nu;
    }

    void validate() const {
        for (const auto& im : images)
            if (im.c == 0) throw domain_error("Specialization: zero image");
    }
};

inline LaurentPoly specialize(const TruncatedSeries& f, const Specialization& nu) {
    nu.validate();
    if (static_cast<int>(nu.images.size()) != f.nvars())
        throw dimension_error("specialize: wrong number of images");
    LaurentPoly out;
    for (const auto& [u, c] : f.terms()) {
        Int coeff = c;
        IVec2 m = u.m;
        for (std::size_t i = 0; i < u.q.size(); ++i) {
            for (int t = 0; t < u.q[i]; ++t) {
                coeff *= nu.images[i].c;
                m = m + nu.images[i].m;
            }
        }
        laurent_add(out, m, coeff);
    }
    return out;
}

} // namespace scat
