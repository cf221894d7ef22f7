#pragma once

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "scatter/hull.hpp"
#include "scatter/tropical.hpp"

namespace scat {

struct CheckFailure {
    std::string inputs;
    std::string expected;
    std::string got;
};

struct CheckSkip {
    std::string inputs;
    std::string reason;
};

// Theorem-level verification record: failures empty <=> pass; skipped entries
// carry machine-readable reasons (non-finite values, uncertified instances).
struct CheckReport {
    std::string name;
    std::string params;
    long instances = 0;
    long passes = 0;
    std::vector<CheckFailure> failures;
    std::vector<CheckSkip> skipped;

    bool pass() const { return failures.empty(); }
    void ok() {
        ++instances;
        ++passes;
    }
    void fail(std::string inputs, std::string expected, std::string got) {
        ++instances;
        failures.push_back({std::move(inputs), std::move(expected), std::move(got)});
    }
    void skip(std::string inputs, std::string reason) {
        ++instances;
        skipped.push_back({std::move(inputs), std::move(reason)});
    }
};

// The default covector grid: 24 primitive integer directions around the
// circle (6 slopes x 4 symmetries), deterministic.
inline std::vector<QVec2> covector_rays(int count = 24) {
    std::vector<QVec2> rays;
    std::vector<std::pair<int, int>> base = {{1, 0}, {3, 1}, {2, 1}, {1, 1}, {1, 2}, {1, 3}};
    for (auto [a, b] : base) {
        rays.push_back(qvec2(Rat(a), Rat(b)));
        rays.push_back(qvec2(Rat(-b), Rat(a)));
        rays.push_back(qvec2(Rat(-a), Rat(-b)));
        rays.push_back(qvec2(Rat(b), Rat(-a)));
    }
    if (count < static_cast<int>(rays.size())) rays.resize(count);
    return rays;
}

// ---------------------------------------------------------------------------
// Valuative independence (VIT)
// ---------------------------------------------------------------------------

// Checks val(sum c_u theta_u) = min_u val(theta_u) for one coefficient vector
// over a grid of covectors.  Inputs must stabilize (finite Laurent series) so
// both sides are exact; unstabilized terms skip the whole combination.
inline CheckReport vit_check(ClusterEngine& eng,
                             const std::vector<std::pair<ExponentPair, Int>>& coeffs,
                             const std::vector<QVec2>& rays, int order) {
    CheckReport rep;
    rep.name = "vit";
    rep.params = "order=" + std::to_string(order) + " terms=" + std::to_string(coeffs.size());

    int work_order = order;
    std::vector<std::pair<TruncatedSeries, Int>> parts;
    for (const auto& [u, c] : coeffs) {
        if (c == 0) continue;
        auto [theta, ok] = eng.theta_plus_stabilized(u, order);
        if (!ok) {
            for (std::size_t i = 0; i < rays.size(); ++i)
                rep.skip(to_string(u), "theta did not stabilize by the order cap");
            return rep;
        }
        work_order = std::max(work_order, theta.series.order());
    }
    for (const auto& [u, c] : coeffs) {
        if (c == 0) continue;
        parts.emplace_back(eng.theta_plus(u, work_order).series, c);
    }

    TruncatedSeries comb(work_order, eng.seed().r());
    for (const auto& [s, c] : parts) comb = add(comb, scale(s, c));

    for (const auto& ray : rays) {
        std::optional<Rat> rhs;
        for (const auto& [s, c] : parts) {
            ValuationResult r = valuation(s, ray);
            if (!r.finite) continue;
            if (!rhs || r.value < *rhs) rhs = r.value;
        }
        if (!rhs) {
            rep.skip(to_string(ray), "right-hand side not finite");
            continue;
        }
        ValuationResult lhs = valuation(comb, ray);
        if (lhs.finite && lhs.value == *rhs)
            rep.ok();
        else
            rep.fail("ray=" + to_string(ray), to_string(*rhs),
                     lhs.finite ? to_string(lhs.value) : "+inf");
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Theta reciprocity
// ---------------------------------------------------------------------------

struct ReciprocityOptions {
    int box = 3;        // indices range over [-box, box]^2
    int order = 6;
    bool lambda_form = true;    // Claim "version 2" when a Lambda-structure exists
    bool langlands_form = true; // Langlands-dual form when D and Bbullet are integral
};

inline CheckReport reciprocity_check(const SeedDatum& s, const ReciprocityOptions& opt = {}) {
    CheckReport rep;
    rep.name = "reciprocity";
    rep.params = "box=" + std::to_string(opt.box) + " order=" + std::to_string(opt.order);

    ClusterEngine eng(s);
    ClusterEngine dual(chiral_dual(s));
    const int B = opt.box;

    auto certified = [&](ClusterEngine& e, const IVec2& idx, const QVec2& cov) {
        return certified_val_theta_plus(e, e.index(idx),
                                        PerturbedCovector::generic(cov, e.seed().r()), opt.order);
    };

    for (long m1 = -B; m1 <= B; ++m1)
        for (long m2 = -B; m2 <= B; ++m2)
            for (long n1 = -B; n1 <= B; ++n1)
                for (long n2 = -B; n2 <= B; ++n2) {
                    IVec2 m = ivec2(m1, m2), n = ivec2(n1, n2);
                    CertifiedVal lhs = certified(eng, m, to_rational(n));
                    CertifiedVal rhs = certified(dual, n, to_rational(m));
                    std::string inputs = "m=" + to_string(m) + " n=" + to_string(n);
                    if (!lhs.exact || !rhs.exact) {
                        rep.skip(inputs, "uncertified valuation");
                        continue;
                    }
                    if (lhs.value == rhs.value)
                        rep.ok();
                    else
                        rep.fail(inputs, to_string(lhs.value), to_string(rhs.value));
                }

    if (opt.lambda_form) {
        auto found = lambda_find(s);
        if (std::holds_alternative<LambdaStructure>(found)) {
            MatQ L = std::get<LambdaStructure>(found).L;
            ClusterEngine& neg = eng.negative(); // theta_{m,-} via the swap lemma
            for (long a1 = -B; a1 <= B; ++a1)
                for (long a2 = -B; a2 <= B; ++a2)
                    for (long b1 = -B; b1 <= B; ++b1)
                        for (long b2 = -B; b2 <= B; ++b2) {
                            QVec lm1 = L * QVec{Rat(a1), Rat(a2)};
                            QVec ltm2 = L.transpose() * QVec{Rat(b1), Rat(b2)};
                            CertifiedVal lhs = certified_val_theta_plus(
                                eng, eng.index(b1, b2),
                                PerturbedCovector::generic(qvec2(lm1[0], lm1[1]), s.r()),
                                opt.order);
                            CertifiedVal rhs = certified_val_theta_plus(
                                neg, neg.index(a1, a2),
                                PerturbedCovector::generic(qvec2(ltm2[0], ltm2[1]), s.r()),
                                opt.order);
                            std::string inputs = "lambda m1=(" + std::to_string(a1) + "," +
                                                 std::to_string(a2) + ") m2=(" +
                                                 std::to_string(b1) + "," + std::to_string(b2) +
                                                 ")";
                            if (!lhs.exact || !rhs.exact) {
                                rep.skip(inputs, "uncertified valuation");
                                continue;
                            }
                            if (lhs.value == rhs.value)
                                rep.ok();
                            else
                                rep.fail(inputs, to_string(lhs.value), to_string(rhs.value));
                        }
        }
    }

    if (opt.langlands_form && MatQ::diagonal(s.D).is_integral() && s.Bbullet().is_integral()) {
        ClusterEngine lang(langlands_dual(s));
        ClusterEngine& langneg = lang.negative();
        for (long m1 = -B; m1 <= B; ++m1)
            for (long m2 = -B; m2 <= B; ++m2)
                for (long n1 = -B; n1 <= B; ++n1)
                    for (long n2 = -B; n2 <= B; ++n2) {
                        IVec2 m = ivec2(m1, m2), n = ivec2(n1, n2);
                        CertifiedVal lhs = certified(eng, m, to_rational(n));
                        CertifiedVal rhs = certified(langneg, n, to_rational(m));
                        std::string inputs =
                            "langlands m=" + to_string(m) + " n=" + to_string(n);
                        if (!lhs.exact || !rhs.exact) {
                            rep.skip(inputs, "uncertified valuation");
                            continue;
                        }
                        if (lhs.value == rhs.value)
                            rep.ok();
                        else
                            rep.fail(inputs, to_string(lhs.value), to_string(rhs.value));
                    }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Theta basis expansion and the extension theorem
// ---------------------------------------------------------------------------

// Expands f in the theta basis at p using leading-term triangularity:
// subtracting c * theta_{u'} for the minimal-ydeg term u' strictly raises the
// remaining y-degrees, so the loop terminates mod I^k.
inline std::map<ExponentPair, Int, ExpLess> expand_in_theta_basis(ClusterEngine& eng,
                                                                  TruncatedSeries f,
                                                                  const PerturbedPoint& p,
                                                                  int order) {
    std::map<ExponentPair, Int, ExpLess> coeffs;
    while (!f.is_zero()) {
        const auto& [u, c] = *f.terms().begin(); // minimal in (q, m) order
        coeffs[u] = c;
        f = sub(f, scale(eng.theta_at(u, p, order).series, c));
    }
    return coeffs;
}

// Whether (P2, Q2) extends (P1, Q1): r2 > r1 columns, the first r1 of which
// agree, with matching diagonal entries.
inline bool is_seed_extension(const SeedDatum& s1, const SeedDatum& s2) {
    if (s2.r() <= s1.r() || s1.d() != s2.d()) return false;
    for (int i = 0; i < s1.r(); ++i) {
        if (s1.D[i] != s2.D[i]) return false;
        for (int row = 0; row < s1.d(); ++row)
            if (s1.P(row, i) != s2.P(row, i) || s1.Qbullet(row, i) != s2.Qbullet(row, i))
                return false;
    }
    return true;
}

// Theta function extension: for each index m, expand theta^{s1}_{m,p} in the
// s2 theta basis; when the expansion is resolved away from the truncation
// boundary, assert the two theta functions agree termwise.
inline CheckReport extension_check(const SeedDatum& s1, const SeedDatum& s2,
                                   const std::vector<IVec2>& indices, const PerturbedPoint& p,
                                   int order) {
    CheckReport rep;
    rep.name = "extension";
    rep.params = "order=" + std::to_string(order);
    if (!is_seed_extension(s1, s2)) throw domain_error("extension_check: s2 does not extend s1");

    // The comparison is between the conical completions at one shared
    // basepoint; the positive-chamber workaround plays no role here.
    ClusterEngine e1(s1, true), e2(s2, true);
    for (const IVec2& m : indices) {
        ThetaFunction t1 = e1.theta_at(e1.index(m), p, order);
        ThetaFunction t2 = e2.theta_at(e2.index(m), p, order);
        // embed the s1 series into the larger coefficient monoid
        TruncatedSeries embedded(order, s2.r());
        for (const auto& [u, c] : t1.series.terms()) {
            std::vector<int> q(s2.r(), 0);
            for (int i = 0; i < s1.r(); ++i) q[i] = u.q[i];
            embedded.add_term(ExponentPair(u.m, std::move(q)), c);
        }
        auto expansion = expand_in_theta_basis(e2, embedded, p, order);
        bool boundary = false;
        for (const auto& [u, c] : expansion)
            if (u.ydeg() >= order - 1) boundary = true;
        std::string inputs = "m=" + to_string(m);
        if (boundary) {
            rep.skip(inputs, "expansion not resolvable below the truncation boundary");
            continue;
        }
        if (embedded == t2.series)
            rep.ok();
        else
            rep.fail(inputs, "theta^{s1} termwise equal to theta^{s2}",
                     "expansion size " + std::to_string(expansion.size()));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Newton polytope vertices
// ---------------------------------------------------------------------------

// Every vertex of the Newton polytope of a stabilized theta function (or a
// sum of distinct theta functions) carries coefficient exactly 1.
inline CheckReport newton_monic_check(const ThetaFunction& theta) {
    CheckReport rep;
    rep.name = "newton";
    rep.params = "index=" + to_string(theta.index);
    if (!theta.stabilized) {
        rep.skip(to_string(theta.index), "theta not stabilized");
        return rep;
    }
    std::vector<QVec> pts;
    std::vector<Int> cs;
    for (const auto& [u, c] : theta.series.terms()) {
        QVec v{Rat(u.m[0]), Rat(u.m[1])};
        for (int e : u.q) v.push_back(Rat(e));
        pts.push_back(std::move(v));
        cs.push_back(c);
    }
    for (int vi : hull_vertices(pts)) {
        if (cs[vi] == 1)
            rep.ok();
        else
            rep.fail("vertex #" + std::to_string(vi), "coefficient 1", cs[vi].str());
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Specialization independence
// ---------------------------------------------------------------------------

inline CheckReport specialization_independence_check(ClusterEngine& eng,
                                                     const std::vector<IVec2>& indices,
                                                     const Specialization& nu,
                                                     const std::vector<QVec2>& rays, int order) {
    CheckReport rep;
    rep.name = "specialize";
    rep.params = "order=" + std::to_string(order) + " thetas=" + std::to_string(indices.size());
    nu.validate();

    std::vector<TruncatedSeries> thetas;
    std::vector<LaurentPoly> spec;
    for (const IVec2& m : indices) {
        auto [theta, ok] = eng.theta_plus_stabilized(eng.index(m), order);
        if (!ok) throw domain_error("specialization check: unstabilized theta " + to_string(m));
        thetas.push_back(theta.series);
        spec.push_back(specialize(theta.series, nu));
    }

    // tropicalization is unchanged by the specialization
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        for (const auto& n : rays) {
            ValuationResult pre = valuation(thetas[i], n);
            auto post = laurent_valuation(spec[i], n);
            std::string inputs = "m=" + to_string(indices[i]) + " n=" + to_string(n);
            if (!pre.finite || !post) {
                rep.skip(inputs, "empty series");
                continue;
            }
            if (pre.value == *post)
                rep.ok();
            else
                rep.fail(inputs, to_string(pre.value), to_string(*post));
        }
    }

    // exact linear independence of the specialized thetas
    {
        std::set<IVec2> monos;
        for (const auto& f : spec)
            for (const auto& [m, c] : f) monos.insert(m);
        MatQ M(static_cast<int>(spec.size()), static_cast<int>(monos.size()));
        int col = 0;
        for (const auto& mono : monos) {
            for (std::size_t i = 0; i < spec.size(); ++i) {
                auto it = spec[i].find(mono);
                M(static_cast<int>(i), col) = it == spec[i].end() ? Rat(0) : Rat(it->second);
            }
            ++col;
        }
        if (M.rank() == static_cast<int>(spec.size()))
            rep.ok();
        else
            rep.fail("rank", std::to_string(spec.size()), std::to_string(M.rank()));
    }

    // valuative independence of specialized combinations, random coefficients
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<int> cdist(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Int> c(spec.size());
        bool allzero = true;
        for (auto& x : c) {
            x = cdist(rng);
            if (x != 0) allzero = false;
        }
        if (allzero) c[0] = 1;
        LaurentPoly comb;
        for (std::size_t i = 0; i < spec.size(); ++i)
            for (const auto& [m, coeff] : spec[i]) laurent_add(comb, m, c[i] * coeff);
        for (const auto& n : rays) {
            std::optional<Rat> rhs;
            for (std::size_t i = 0; i < spec.size(); ++i) {
                if (c[i] == 0) continue;
                auto v = laurent_valuation(spec[i], n);
                if (v && (!rhs || *v < *rhs)) rhs = *v;
            }
            if (!rhs) {
                rep.skip("trial " + std::to_string(trial), "right-hand side not finite");
                continue;
            }
            auto lhs = laurent_valuation(comb, n);
            if (lhs && *lhs == *rhs)
                rep.ok();
            else
                rep.fail("trial " + std::to_string(trial) + " n=" + to_string(n),
                         to_string(*rhs), lhs ? to_string(*lhs) : "+inf");
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Adjunction
// ---------------------------------------------------------------------------

inline CheckReport adjunction_check(const LinearMorphism& mor, const std::vector<IVec2>& m_list,
                                    const std::vector<IVec2>& n_list, int order) {
    CheckReport rep;
    rep.name = "adjunction";
    rep.params = "order=" + std::to_string(order);
    if (mor.source.d() != 2 || mor.target.d() != 2)
        throw domain_error("adjunction_check: both seeds must be planar");
    ClusterEngine src(mor.source), tgt(mor.target);

    for (const IVec2& m : m_list) {
        QVec am = mor.A * QVec{Rat(m[0]), Rat(m[1])};
        if (denominator(am[0]) != 1 || denominator(am[1]) != 1) {
            rep.skip("m=" + to_string(m), "A m is not integral");
            continue;
        }
        IVec2 Am = ivec2(numerator(am[0]), numerator(am[1]));
        for (const IVec2& n : n_list) {
            QVec atn = mor.A.transpose() * QVec{Rat(n[0]), Rat(n[1])};
            CertifiedVal lhs = certified_val_theta_plus(
                tgt, tgt.index(Am), PerturbedCovector::generic(to_rational(n), mor.target.r()),
                order);
            CertifiedVal rhs = certified_val_theta_plus(
                src, src.index(m),
                PerturbedCovector::generic(qvec2(atn[0], atn[1]), mor.source.r()), order);
            std::string inputs = "m=" + to_string(m) + " n=" + to_string(n);
            if (!lhs.exact || !rhs.exact) {
                rep.skip(inputs, "uncertified valuation");
                continue;
            }
            if (lhs.value == rhs.value)
                rep.ok();
            else
                rep.fail(inputs, to_string(rhs.value), to_string(lhs.value));
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Superlevel polytope sampling
// ---------------------------------------------------------------------------

struct SuperlevelResult {
    std::vector<IVec2> points;
    CheckReport report; // cross-check of the two reciprocity routes
};

// Lattice points m in the box with min_i val_{n_i}(theta_m) >= r, where the
// n_i are the dual-side indices of the potential's terms.  Both reciprocity
// routes are computed and compared: val_{n_i}(theta_{m,+}) on the seed and
// val_m(theta_{n_i,+}) on the chiral dual.
inline SuperlevelResult superlevel_points(const SeedDatum& s, const std::vector<IVec2>& w_indices,
                                          const Rat& r, int box, int order) {
    SuperlevelResult out;
    out.report.name = "superlevel";
    out.report.params = "box=" + std::to_string(box) + " order=" + std::to_string(order);
    ClusterEngine eng(s);
    ClusterEngine dual(chiral_dual(s));
    for (long x = -box; x <= box; ++x)
        for (long y = -box; y <= box; ++y) {
            IVec2 m = ivec2(x, y);
            std::optional<Rat> wtrop;
            bool certified = true;
            for (const IVec2& n : w_indices) {
                CertifiedVal own = certified_val_theta_plus(
                    eng, eng.index(m), PerturbedCovector::generic(to_rational(n), s.r()), order);
                CertifiedVal mirror = certified_val_theta_plus(
                    dual, dual.index(n), PerturbedCovector::generic(to_rational(m), dual.seed().r()),
                    order);
                std::string inputs = "m=" + to_string(m) + " n=" + to_string(n);
                if (!own.exact || !mirror.exact) {
                    certified = false;
                    out.report.skip(inputs, "uncertified valuation");
                    continue;
                }
                if (own.value == mirror.value)
                    out.report.ok();
                else
                    out.report.fail(inputs, to_string(own.value), to_string(mirror.value));
                if (!wtrop || own.value < *wtrop) wtrop = own.value;
            }
            if (certified && wtrop && *wtrop >= r) out.points.push_back(m);
        }
    return out;
}

} // namespace scat
