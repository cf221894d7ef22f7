#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scatter/engine.hpp"

namespace scat {

// Covector v = (w, s) with the M-part carried to second perturbation order
// for genericity; the coefficient part s stays exact (it defaults to zero,
// the restricted setting of the seed-datum theorems).
struct PerturbedCovector {
    QVec2 base{Rat(0), Rat(0)};
    QVec2 eps1{Rat(0), Rat(0)};
    QVec2 eps2{Rat(0), Rat(0)};
    QVec s;

    static PerturbedCovector exact(QVec2 w, int nvars) {
        return {std::move(w), qvec2(Rat(0), Rat(0)), qvec2(Rat(0), Rat(0)),
                QVec(nvars, Rat(0))};
    }
    static PerturbedCovector generic(QVec2 w, int nvars) {
        return {std::move(w), kDefaultEps1, kDefaultEps2, QVec(nvars, Rat(0))};
    }

    Eps pair(const ExponentPair& u) const {
        QVec2 mq = to_rational(u.m);
        Rat sdot = 0;
        for (std::size_t i = 0; i < s.size(); ++i) sdot += Rat(u.q[i]) * s[i];
        return {dot(mq, base) + sdot, dot(mq, eps1), dot(mq, eps2)};
    }
    bool is_generic_level() const { return !(is_zero(eps1) && is_zero(eps2)); }
};

enum class ValCertainty { Exact, UpperBoundAtOrder };

// Valuation value with its certification status.  "Exact" requires a
// straight-line (dual-cone) certificate or stabilization across orders;
// otherwise the truncated minimum is only an upper bound.
struct ValuationResult {
    bool finite = false; // false means +infinity (zero input)
    Rat value = 0;
    ValCertainty certainty = ValCertainty::UpperBoundAtOrder;
    int order = 0;
    bool unbounded_suspected = false;
    std::optional<ExponentPair> witness;
};

// val_{(w,s)}(f): minimum of (m,q).(w,s) over the stored terms.
inline ValuationResult valuation(const TruncatedSeries& f, const QVec2& w, const QVec& s) {
    if (static_cast<int>(s.size()) != f.nvars())
        throw dimension_error("valuation: coefficient covector rank mismatch");
    ValuationResult res;
    res.order = f.order();
    for (const auto& [u, c] : f.terms()) {
        Rat val = dot(w, to_rational(u.m));
        for (std::size_t i = 0; i < s.size(); ++i) val += Rat(u.q[i]) * s[i];
        if (!res.finite || val < res.value) {
            res.finite = true;
            res.value = val;
            res.witness = u;
        }
    }
    return res;
}

inline ValuationResult valuation(const TruncatedSeries& f, const QVec2& w) {
    return valuation(f, w, QVec(f.nvars(), Rat(0)));
}

// Valuation of a Laurent polynomial (e.g. after coefficient specialization).
inline std::optional<Rat> laurent_valuation(const LaurentPoly& f, const QVec2& n) {
    std::optional<Rat> best;
    for (const auto& [m, c] : f) {
        Rat v = dot(n, to_rational(m));
        if (!best || v < *best) best = v;
    }
    return best;
}

// Raw valuation of a theta function at order k: the minimum of u_Gamma . v
// over the enumerated broken lines.  Certification is layered on top by
// certified_val_theta below.
inline ValuationResult val_theta_raw(const ScatteringDiagram& d, const ExponentPair& u,
                                     const PerturbedCovector& v, const PerturbedPoint& p,
                                     std::vector<BrokenLine>* lines_out = nullptr,
                                     BrokenLine* witness_line = nullptr) {
    auto lines = enumerate_broken_lines(d, u, p);
    ValuationResult res;
    res.order = d.order;
    std::optional<Eps> best;
    for (const auto& line : lines) {
        Eps val = v.pair(line.final_exp);
        if (!best || val < *best) {
            best = val;
            res.finite = true;
            res.value = val.c0;
            res.witness = line.final_exp;
            if (witness_line) *witness_line = line;
        }
    }
    if (lines_out) *lines_out = std::move(lines);
    return res;
}

// ---------------------------------------------------------------------------
// Taut traces
// ---------------------------------------------------------------------------

struct TautCrossing {
    int wall_index;
    PerturbedPoint point;
    int chosen_multiple;   // t in base-exponent units (0 or e*K for taut lines)
    int max_multiple;      // e*K available mod I^k
    Eps pairing;           // u0 . v on the endpoint side of the crossing
    bool truncation_certain; // wall degree fully visible at this order
};

struct TautCertificate {
    BrokenLine line;
    std::vector<PerturbedCovector> covectors; // transported, endpoint side first
    std::vector<TautCrossing> crossings;
};

enum class TraceStatus { Ok, UnboundedBend, AmbiguousTruncation, NoLine };

struct TautTraceResult {
    TraceStatus status = TraceStatus::NoLine;
    std::optional<BrokenLine> line;
    std::optional<TautCertificate> certificate;
};

namespace detail {

inline PerturbedCovector transport_covector(const PerturbedCovector& v, const Wall& w, int t,
                                            const Int& m_before_n) {
    // T(x) = x + kappa (x.n) u0 with kappa = t / (m_before . n);
    // the adjoint adds kappa (u0 . v) n to the M-part.
    Rat kappa = Rat(t) / Rat(m_before_n);
    QVec2 nq = to_rational(w.normal);
    const ExponentPair& u0 = w.func.base;
    QVec2 u0m = to_rational(u0.m);
    Rat sdot = 0;
    for (std::size_t i = 0; i < v.s.size(); ++i) sdot += Rat(u0.q[i]) * v.s[i];
    PerturbedCovector out = v;
    out.base = out.base + (kappa * (dot(u0m, v.base) + sdot)) * nq;
    out.eps1 = out.eps1 + (kappa * dot(u0m, v.eps1)) * nq;
    out.eps2 = out.eps2 + (kappa * dot(u0m, v.eps2)) * nq;
    return out;
}

} // namespace detail

// Greedy backward construction of the unique v-taut broken line ending at p
// with final x-exponent m_final: at each crossing the bend minimizing the
// pairing with the transported covector is extreme (t = 0 or the largest
// available bend), and genericity of v makes the choice unique.
inline TautTraceResult taut_trace(const ScatteringDiagram& d, const PerturbedCovector& v,
                                  const PerturbedPoint& p, const IVec2& m_final) {
    TautTraceResult result;
    if (is_zero(m_final)) return result;

    for (const auto& w : d.walls)
        if (w.side(p).sign() == 0)
            throw genericity_error("taut_trace: endpoint degenerate on a wall");

    struct Rec {
        int wall_index;
        PerturbedPoint point;
        int t;
        int max_t;
        Eps delta;
        bool certain;
        Int coeff;
    };
    std::vector<Rec> recs; // backward order
    std::vector<PerturbedCovector> covs{v};

    PerturbedPoint pos = p;
    IVec2 m_cur = m_final;
    PerturbedCovector vcur = v;
    long cap = 64 + static_cast<long>(d.walls.size() + 1) * (d.order + 2) * 8;
    bool ambiguous = false;

    for (long steps = 0;; ++steps) {
        if (steps > cap) {
            result.status = TraceStatus::UnboundedBend;
            return result;
        }
        std::optional<Eps> best;
        std::vector<int> group;
        for (int i = 0; i < static_cast<int>(d.walls.size()); ++i) {
            const Wall& w = d.walls[i];
            Int den = dot(m_cur, w.normal);
            Eps side = w.side(pos);
            if (den == 0) {
                if (side.sign() == 0)
                    throw genericity_error("taut_trace: trace runs along a wall");
                continue;
            }
            Eps sF = -side / Rat(den);
            if (sF.sign() <= 0) continue;
            if (w.support.kind == SupportKind::Ray) {
                QVec2 dq = to_rational(w.support.dir);
                Eps along =
                    Eps{dot(pos.base - w.support.base, dq), dot(pos.eps1, dq), dot(pos.eps2, dq)} +
                    sF * dot(to_rational(m_cur), dq);
                int sg = along.sign();
                if (sg < 0) continue;
                if (sg == 0) throw genericity_error("taut_trace: trace through a ray apex");
            }
            if (!best || sF < *best) {
                best = sF;
                group.assign(1, i);
            } else if (!(*best < sF)) {
                group.push_back(i);
            }
        }
        if (!best) break; // initial unbounded segment reached

        PerturbedPoint pt = pos.advance(*best, m_cur);
        for (int wi : group) {
            const Wall& w = d.walls[wi];
            long e = static_cast<long>(dot(m_cur, w.normal));
            long e_abs = e < 0 ? -e : e;
            int K = w.func.degree(d.order);
            int max_t = static_cast<int>(e_abs) * K;
            Eps delta = vcur.pair(w.func.base);
            int sgn = delta.sign();
            if (sgn == 0)
                throw genericity_error("taut_trace: covector tie at wall crossing (both t=0 and "
                                       "t=" +
                                       std::to_string(max_t) + " minimize)");
            int t = sgn > 0 ? 0 : max_t;
            bool certain = w.func.degree_is_certain(d.order);
            if (sgn < 0 && !certain) ambiguous = true;
            Int coeff = 1;
            if (t > 0) {
                auto pw = w.func.power_coeffs(e_abs, t);
                coeff = pw[t];
                if (coeff == 0)
                    throw internal_error("taut_trace: extreme bend has zero coefficient");
                Int m_before_n = dot(m_cur - Int(t) * w.func.base.m, w.normal);
                vcur = detail::transport_covector(vcur, w, t, m_before_n);
                m_cur = m_cur - Int(t) * w.func.base.m;
            }
            recs.push_back({wi, pt, t, max_t, delta, certain, coeff});
            covs.push_back(vcur);
        }
        pos = pt;
    }

    // Assemble the line forward.
    BrokenLine line;
    line.endpoint = p;
    std::reverse(recs.begin(), recs.end());
    std::vector<int> q0(d.nvars, 0);
    ExponentPair cur(m_cur, q0);
    line.initial = cur;
    Int coeff = 1;
    for (auto it = recs.begin(); it != recs.end(); ++it) {
        BendEvent ev;
        ev.wall_index = it->wall_index;
        ev.bend_multiple = it->t;
        ev.coeff_factor = it->coeff;
        ev.point = it->point;
        ev.in_exp = cur;
        cur = cur + d.walls[it->wall_index].func.base.scaled(it->t);
        ev.out_exp = cur;
        coeff *= it->coeff;
        line.events.push_back(std::move(ev));
    }
    line.final_exp = cur;
    line.coeff = coeff;
    if (cur.m != m_final) throw internal_error("taut_trace: reassembled final exponent mismatch");

    if (cur.ydeg() >= d.order) {
        result.status = TraceStatus::AmbiguousTruncation;
        result.line = std::move(line);
        return result;
    }

    TautCertificate cert;
    cert.line = line;
    std::reverse(covs.begin(), covs.end());
    cert.covectors = std::move(covs);
    for (auto it = recs.begin(); it != recs.end(); ++it)
        cert.crossings.push_back({it->wall_index, it->point, it->t, it->max_t, it->delta,
                                  it->certain});
    result.status = ambiguous ? TraceStatus::AmbiguousTruncation : TraceStatus::Ok;
    result.line = std::move(line);
    result.certificate = std::move(cert);
    return result;
}

// Verifies the tautness inequality at every crossing of an enumerated line:
// the chosen bend pairs no worse than either extreme option (t = 0 and the
// maximal bend visible mod I^k).  Returns the certificate, or nullopt with
// the first violated crossing index.
inline std::optional<TautCertificate> check_taut(const ScatteringDiagram& d, const BrokenLine& line,
                                                 const PerturbedCovector& v,
                                                 int* violated_at = nullptr) {
    TautCertificate cert;
    cert.line = line;
    // transport the covector backward to each segment
    std::vector<PerturbedCovector> covs(line.events.size() + 1);
    covs[line.events.size()] = v;
    for (int i = static_cast<int>(line.events.size()) - 1; i >= 0; --i) {
        const BendEvent& ev = line.events[i];
        const Wall& w = d.walls[ev.wall_index];
        if (ev.bend_multiple == 0) {
            covs[i] = covs[i + 1];
            continue;
        }
        Int m_before_n = dot(ev.in_exp.m, w.normal);
        covs[i] = detail::transport_covector(covs[i + 1], w, ev.bend_multiple, m_before_n);
    }
    for (std::size_t i = 0; i < line.events.size(); ++i) {
        const BendEvent& ev = line.events[i];
        const Wall& w = d.walls[ev.wall_index];
        const PerturbedCovector& vafter = covs[i + 1];
        Eps delta = vafter.pair(w.func.base);
        long e = static_cast<long>(dot(ev.in_exp.m, w.normal));
        long e_abs = e < 0 ? -e : e;
        int max_t = static_cast<int>(e_abs) * w.func.degree(d.order);
        int t = ev.bend_multiple;
        // t*delta <= 0 and t*delta <= max_t*delta
        Eps lhs = delta * Rat(t);
        if (lhs.sign() > 0 || (lhs - delta * Rat(max_t)).sign() > 0) {
            if (violated_at) *violated_at = static_cast<int>(i);
            return std::nullopt;
        }
        cert.crossings.push_back({ev.wall_index, ev.point, t, max_t, delta,
                                  w.func.degree_is_certain(d.order)});
    }
    cert.covectors = std::move(covs);
    return cert;
}

// ---------------------------------------------------------------------------
// Lambda-tautness (positional characterization) and momentum
// ---------------------------------------------------------------------------

enum class LambdaMode { Lambda, LambdaTranspose };

// Lambda-taut lines take the largest possible bend when crossing from the
// positive side of a wall to the negative side and none in the other
// direction; LambdaTranspose swaps the two rules.
inline TautTraceResult lambda_taut_trace(const ScatteringDiagram& d, LambdaMode mode,
                                         const PerturbedPoint& p, const IVec2& m_final) {
    TautTraceResult result;
    if (is_zero(m_final)) return result;
    for (const auto& w : d.walls)
        if (w.side(p).sign() == 0)
            throw genericity_error("lambda_taut_trace: endpoint degenerate on a wall");

    struct Rec {
        int wall_index;
        PerturbedPoint point;
        int t;
        Int coeff;
    };
    std::vector<Rec> recs;
    PerturbedPoint pos = p;
    IVec2 m_cur = m_final;
    long cap = 64 + static_cast<long>(d.walls.size() + 1) * (d.order + 2) * 8;
    bool ambiguous = false;

    for (long steps = 0;; ++steps) {
        if (steps > cap) {
            result.status = TraceStatus::UnboundedBend;
            return result;
        }
        std::optional<Eps> best;
        std::vector<int> group;
        for (int i = 0; i < static_cast<int>(d.walls.size()); ++i) {
            const Wall& w = d.walls[i];
            Int den = dot(m_cur, w.normal);
            Eps side = w.side(pos);
            if (den == 0) {
                if (side.sign() == 0)
                    throw genericity_error("lambda_taut_trace: trace runs along a wall");
                continue;
            }
            Eps sF = -side / Rat(den);
            if (sF.sign() <= 0) continue;
            if (w.support.kind == SupportKind::Ray) {
                QVec2 dq = to_rational(w.support.dir);
                Eps along =
                    Eps{dot(pos.base - w.support.base, dq), dot(pos.eps1, dq), dot(pos.eps2, dq)} +
                    sF * dot(to_rational(m_cur), dq);
                int sg = along.sign();
                if (sg < 0) continue;
                if (sg == 0)
                    throw genericity_error("lambda_taut_trace: trace through a ray apex");
            }
            if (!best || sF < *best) {
                best = sF;
                group.assign(1, i);
            } else if (!(*best < sF)) {
                group.push_back(i);
            }
        }
        if (!best) break;

        PerturbedPoint pt = pos.advance(*best, m_cur);
        for (int wi : group) {
            const Wall& w = d.walls[wi];
            long e = static_cast<long>(dot(m_cur, w.normal));
            long e_abs = e < 0 ? -e : e;
            // sigma > 0 means the forward line crosses from the positive side.
            int sigma = sign_of(dot(m_cur, w.normal)) * (dot(w.qdual, w.normal) > 0 ? 1 : -1);
            bool big = (mode == LambdaMode::Lambda) ? sigma > 0 : sigma < 0;
            int t = 0;
            Int coeff = 1;
            if (big) {
                int K = w.func.degree(d.order);
                if (!w.func.degree_is_certain(d.order)) ambiguous = true;
                if (K == 0 && !w.func.degree_is_certain(d.order)) {
                    result.status = TraceStatus::UnboundedBend;
                    return result;
                }
                t = static_cast<int>(e_abs) * K;
                if (t > 0) {
                    auto pw = w.func.power_coeffs(e_abs, t);
                    coeff = pw[t];
                    m_cur = m_cur - Int(t) * w.func.base.m;
                }
            }
            recs.push_back({wi, pt, t, coeff});
        }
        pos = pt;
    }

    BrokenLine line;
    line.endpoint = p;
    std::reverse(recs.begin(), recs.end());
    ExponentPair cur(m_cur, std::vector<int>(d.nvars, 0));
    line.initial = cur;
    Int coeff = 1;
    for (const auto& r : recs) {
        BendEvent ev;
        ev.wall_index = r.wall_index;
        ev.bend_multiple = r.t;
        ev.coeff_factor = r.coeff;
        ev.point = r.point;
        ev.in_exp = cur;
        cur = cur + d.walls[r.wall_index].func.base.scaled(r.t);
        ev.out_exp = cur;
        coeff *= r.coeff;
        line.events.push_back(std::move(ev));
    }
    line.final_exp = cur;
    line.coeff = coeff;
    result.line = std::move(line);
    result.status = (ambiguous || cur.ydeg() >= d.order) ? TraceStatus::AmbiguousTruncation
                                                         : TraceStatus::Ok;
    return result;
}

// Per-segment Lambda-momentum m_t . L Gamma(t), sampled once per straight
// segment; constant along broken lines of conical diagrams.
inline std::vector<Eps> momentum(const BrokenLine& line, const MatQ& L) {
    if (L.rows() != 2 || L.cols() != 2) throw dimension_error("momentum: L must be 2x2");
    auto apply = [&](const PerturbedPoint& pt) {
        auto lv = [&](const QVec2& v) {
            QVec r = L * QVec{v[0], v[1]};
            return qvec2(r[0], r[1]);
        };
        return PerturbedPoint{lv(pt.base), lv(pt.eps1), lv(pt.eps2)};
    };
    std::vector<Eps> vals;
    auto samples = line.segment_samples();
    for (std::size_t i = 0; i < samples.size(); ++i) {
        IVec2 m = line.segment_dir(i);
        PerturbedPoint lpt = apply(samples[i]);
        vals.push_back(lpt.pair_with(m));
    }
    return vals;
}

// ---------------------------------------------------------------------------
// Certified valuations through a ClusterEngine
// ---------------------------------------------------------------------------

struct CertifiedVal {
    bool finite = false;
    Rat value = 0;
    bool exact = false;
    int order = 0;
    bool unbounded_suspected = false;
    std::optional<ExponentPair> witness;
};

// True when v pairs non-negatively with every initial wall exponent; then
// the dual-cone argument makes the straight line minimizing and the value
// u.v exact at every order.
inline bool in_dual_cone(const SeedDatum& s, const PerturbedCovector& v) {
    for (int i = 0; i < s.r(); ++i) {
        QVec pi = s.P.col(i);
        Rat val = pi[0] * v.base[0] + pi[1] * v.base[1];
        if (static_cast<int>(v.s.size()) == s.r()) val += v.s[i];
        if (val < 0) return false;
    }
    return true;
}

// Valuation of theta_{u} at the engine's positive basepoint, certified
// either by the dual-cone straight-line argument or by stabilization of the
// value and witness across two order increments.  The minimum is taken over
// the cached theta support, which equals the set of broken-line final
// exponents because cluster diagrams are positive (no cancellation).
inline CertifiedVal certified_val_theta_plus(ClusterEngine& eng, const ExponentPair& u,
                                             const PerturbedCovector& v, int order) {
    CertifiedVal out;
    out.order = order;
    if (in_dual_cone(eng.seed(), v)) {
        Eps val = v.pair(u);
        out.finite = true;
        out.exact = true;
        out.value = val.c0;
        out.witness = u;
        return out;
    }
    auto eval = [&](const TruncatedSeries& s, int k) {
        ValuationResult res;
        res.order = k;
        std::optional<Eps> best;
        for (const auto& [w, c] : s.terms()) {
            Eps val = v.pair(w);
            if (!best || val < *best) {
                best = val;
                res.finite = true;
                res.value = val.c0;
                res.witness = w;
            }
        }
        return res;
    };
    // Exact values need the full term set: require the theta itself to
    // stabilize (a paused valuation can resume dropping at higher order).
    auto [theta, stabilized] = eng.theta_plus_stabilized(u, order);
    ValuationResult r = eval(theta.series, theta.series.order());
    out.finite = r.finite;
    out.value = r.value;
    out.witness = r.witness;
    out.order = r.order;
    if (stabilized) {
        out.exact = true;
        return out;
    }
    // Monotone per-order upper bounds; flag a linear drop over three orders.
    ValuationResult r0 = eval(eng.theta_plus(u, order).series, order);
    ValuationResult r1 = eval(eng.theta_plus(u, order + 2).series, order + 2);
    out.unbounded_suspected = r.value < r1.value && r1.value < r0.value;
    return out;
}

// Theta-set valuation for a rational index: clear denominators to an
// integral index and scale the valuation back.
inline CertifiedVal theta_set_valuation_plus(ClusterEngine& eng, const QVec2& m,
                                             const PerturbedCovector& v, int order) {
    Int kappa = boost::multiprecision::lcm(denominator(m[0]), denominator(m[1]));
    IVec2 km = {numerator(m[0]) * (kappa / denominator(m[0])),
                numerator(m[1]) * (kappa / denominator(m[1]))};
    CertifiedVal val = certified_val_theta_plus(eng, eng.index(km), v, order);
    val.value /= Rat(kappa);
    return val;
}

// f^trop sampled along rays: values at scales 1..S together with the scale-1
// value, flagged where homogeneity breaks (it cannot, for exact inputs; the
// flag guards the sampling itself).
struct TropSample {
    QVec2 ray;
    std::vector<std::pair<int, ValuationResult>> values;
    bool homogeneous = true;
};

inline TropSample tropicalize_along_ray(const TruncatedSeries& f, const QVec2& ray, int scales) {
    TropSample sample;
    sample.ray = ray;
    for (int t = 1; t <= scales; ++t) {
        ValuationResult r = valuation(f, Rat(t) * ray);
        if (r.finite && t >= 2) {
            const auto& first = sample.values.front().second;
            if (first.finite && r.value != Rat(t) * first.value) sample.homogeneous = false;
        }
        sample.values.emplace_back(t, r);
    }
    return sample;
}

} // namespace scat
