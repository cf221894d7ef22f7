#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "scatter/scattering.hpp"

namespace scat {

// One wall crossing of a broken line, in forward (infinity -> endpoint) sense.
// bend_multiple = 0 records a plain crossing with no bend; t >= 1 multiplies
// the attached monomial by the T^t term of f^{|m.n|}.
struct BendEvent {
    int wall_index = -1;
    int bend_multiple = 0;
    Int coeff_factor = 1;      // [T^t] f^{|m.n|}
    PerturbedPoint point;      // crossing location
    ExponentPair in_exp;       // attached exponent before the crossing
    ExponentPair out_exp;      // attached exponent after the crossing
};

struct BrokenLine {
    ExponentPair initial;      // u with Ends(line) = (u, endpoint)
    PerturbedPoint endpoint;
    std::vector<BendEvent> events; // forward order; includes t = 0 crossings
    Int coeff = 1;             // c_Gamma
    ExponentPair final_exp;    // u_Gamma

    int bends() const {
        int b = 0;
        for (const auto& e : events)
            if (e.bend_multiple > 0) ++b;
        return b;
    }

    // Attached x-exponent of the segment ending at event i (or at the
    // endpoint for i == events.size()).
    IVec2 segment_dir(std::size_t i) const {
        return i == 0 ? initial.m : events[i - 1].out_exp.m;
    }

    // A representative interior point of each straight segment, for momentum
    // sampling and rendering; segments follow the forward order.
    std::vector<PerturbedPoint> segment_samples() const {
        std::vector<PerturbedPoint> samples;
        if (events.empty()) {
            samples.push_back(endpoint.advance(Eps(Rat(1)), initial.m));
            return samples;
        }
        samples.push_back(events.front().point.advance(Eps(Rat(1)), initial.m));
        for (std::size_t i = 0; i + 1 < events.size(); ++i) {
            PerturbedPoint mid{Rat(1, 2) * (events[i].point.base + events[i + 1].point.base),
                               Rat(1, 2) * (events[i].point.eps1 + events[i + 1].point.eps1),
                               Rat(1, 2) * (events[i].point.eps2 + events[i + 1].point.eps2)};
            samples.push_back(mid);
        }
        PerturbedPoint last{Rat(1, 2) * (events.back().point.base + endpoint.base),
                            Rat(1, 2) * (events.back().point.eps1 + endpoint.eps1),
                            Rat(1, 2) * (events.back().point.eps2 + endpoint.eps2)};
        samples.push_back(last);
        return samples;
    }
};

namespace detail {

struct BackEvent { // backward-discovered crossing, later reversed
    int wall_index;
    int bend_multiple;
    Int coeff_factor;
    PerturbedPoint point;
};

struct LineSearch {
    const ScatteringDiagram& d;
    ExponentPair u;
    PerturbedPoint p;
    std::vector<BrokenLine>* out;
    IVec2 m_fin{Int(0), Int(0)}; // final-exponent candidate of the current sweep
    long cap = 0;
    long used = 0;

    void ensure_generic_endpoint() const {
        for (const auto& w : d.walls)
            if (w.side(p).sign() == 0)
                throw genericity_error("broken line endpoint degenerate on wall through " +
                                       point_str(w.support.base));
    }

    void accept(std::vector<BackEvent> trail) const {
        BrokenLine line;
        line.initial = u;
        line.endpoint = p;
        std::reverse(trail.begin(), trail.end()); // forward order
        ExponentPair cur = u;
        Int coeff = 1;
        for (const auto& ev : trail) {
            BendEvent fev;
            fev.wall_index = ev.wall_index;
            fev.bend_multiple = ev.bend_multiple;
            fev.coeff_factor = ev.coeff_factor;
            fev.point = ev.point;
            fev.in_exp = cur;
            cur = cur + d.walls[ev.wall_index].func.base.scaled(ev.bend_multiple);
            fev.out_exp = cur;
            coeff *= ev.coeff_factor;
            line.events.push_back(std::move(fev));
        }
        if (cur.m != m_fin)
            throw internal_error("broken line assembly: final exponent mismatch");
        line.final_exp = cur;
        line.coeff = coeff;
        out->push_back(std::move(line));
    }

    // Backward walk: the ray {pos + s*m_cur : s > 0} is the segment carrying
    // x-exponent m_cur, traced away from the endpoint.
    void step(const PerturbedPoint& pos, const IVec2& m_cur, int spent,
              std::vector<BackEvent>& trail) {
        if (++used > cap)
            throw internal_error("broken line search exceeded the winding cap (geometry bug?)");

        // Nearest backward crossing.
        std::optional<Eps> best;
        std::vector<int> group;
        for (int i = 0; i < static_cast<int>(d.walls.size()); ++i) {
            const Wall& w = d.walls[i];
            Int den = dot(m_cur, w.normal);
            Eps side = w.side(pos);
            if (den == 0) {
                if (side.sign() == 0)
                    throw genericity_error("broken line runs along a wall through " +
                                           point_str(w.support.base));
                continue;
            }
            Eps s = -side / Rat(den);
            if (s.sign() <= 0) continue;
            if (w.support.kind == SupportKind::Ray) {
                QVec2 dq = to_rational(w.support.dir);
                Eps along =
                    Eps{dot(pos.base - w.support.base, dq), dot(pos.eps1, dq), dot(pos.eps2, dq)} +
                    s * dot(to_rational(m_cur), dq);
                int sg = along.sign();
                if (sg < 0) continue;
                if (sg == 0)
                    throw genericity_error("broken line through ray apex " +
                                           point_str(w.support.base));
            }
            if (!best || s < *best) {
                best = s;
                group.assign(1, i);
            } else if (!(*best < s)) {
                group.push_back(i);
            }
        }

        if (!best) {
            if (m_cur == u.m) accept(trail);
            return;
        }
        for (std::size_t a = 0; a + 1 < group.size(); ++a)
            if (cross(d.walls[group[a]].normal, d.walls[group[a + 1]].normal) != 0)
                throw genericity_error("broken line through a joint of non-parallel walls");

        PerturbedPoint pt = pos.advance(*best, m_cur);
        branch_group(pt, m_cur, spent, group, 0, m_cur, Int(1), trail);
    }

    // Branch over bend multiples for the (mutually parallel) walls crossed at
    // one point.  m_entry is the exponent on the endpoint side; the pairing
    // with each wall's normal is unchanged within the group.
    void branch_group(const PerturbedPoint& pt, const IVec2& m_entry, int spent,
                      const std::vector<int>& group, std::size_t gi, IVec2 m_cur, Int factor,
                      std::vector<BackEvent>& trail) {
        if (gi == group.size()) {
            step(pt, m_cur, spent, trail);
            return;
        }
        const Wall& w = d.walls[group[gi]];
        long e = static_cast<long>(dot(m_entry, w.normal));
        long e_abs = e < 0 ? -e : e;
        const int bdeg = w.func.base.ydeg();
        int t_max = (d.order - 1 - u.ydeg() - spent) / bdeg;
        int fn_deg = w.func.degree(d.order);
        if (t_max > static_cast<int>(e_abs) * fn_deg) t_max = static_cast<int>(e_abs) * fn_deg;
        std::vector<Int> pw = w.func.power_coeffs(e_abs, std::max(0, t_max));
        for (int t = 0; t <= t_max; ++t) {
            if (pw[t] == 0) continue;
            if (t > 0) trail.push_back({group[gi], t, pw[t], pt});
            branch_group(pt, m_entry, spent + t * bdeg, group, gi + 1,
                         m_cur - Int(t) * w.func.base.m, t > 0 ? factor * pw[t] : factor, trail);
            if (t > 0) trail.pop_back();
        }
    }
};

inline std::set<IVec2> final_exponent_candidates(const ScatteringDiagram& d, const ExponentPair& u) {
    std::vector<ExponentPair> bases;
    {
        std::set<std::pair<IVec2, std::vector<int>>> seen;
        for (const auto& w : d.walls)
            if (seen.insert({w.func.base.m, w.func.base.q}).second) bases.push_back(w.func.base);
    }
    std::set<IVec2> cands;
    int budget = d.order - 1 - u.ydeg();
    std::function<void(std::size_t, int, IVec2)> rec = [&](std::size_t i, int left, IVec2 acc) {
        if (i == bases.size()) {
            cands.insert(acc);
            return;
        }
        int bd = bases[i].ydeg();
        for (int t = 0; t * bd <= left; ++t) rec(i + 1, left - t * bd, acc + Int(t) * bases[i].m);
    };
    if (budget >= 0) rec(0, budget, u.m);
    return cands;
}

} // namespace detail

// All broken lines with Ends = (u, p) whose final monomial is nonzero mod I^k,
// found by depth-first search backward from the endpoint.  The y-degree budget
// prunes the search; a winding cap guards against geometry bugs.
inline std::vector<BrokenLine> enumerate_broken_lines(const ScatteringDiagram& d,
                                                      const ExponentPair& u,
                                                      const PerturbedPoint& p) {
    if (static_cast<int>(u.q.size()) != d.nvars)
        throw dimension_error("enumerate_broken_lines: index rank mismatch");
    std::vector<BrokenLine> lines;
    if (u.ydeg() >= d.order) return lines;

    if (is_zero(u.m)) {
        // Stationary case u = (0, q): only the constant broken line exists and
        // theta_{(0,q)} = y^q.
        BrokenLine line;
        line.initial = u;
        line.endpoint = p;
        line.final_exp = u;
        line.coeff = 1;
        lines.push_back(std::move(line));
        return lines;
    }

    detail::LineSearch search{d, u, p, &lines};
    search.cap = 64 + static_cast<long>(d.walls.size() + 1) * (d.order + 2) * 64;
    search.ensure_generic_endpoint();
    for (const IVec2& m_fin : detail::final_exponent_candidates(d, u)) {
        if (is_zero(m_fin)) continue;
        search.m_fin = m_fin;
        std::vector<detail::BackEvent> trail;
        search.step(p, m_fin, 0, trail);
    }
    std::stable_sort(lines.begin(), lines.end(), [](const BrokenLine& a, const BrokenLine& b) {
        ExpLess lt;
        if (a.final_exp != b.final_exp) return lt(a.final_exp, b.final_exp);
        return a.events.size() < b.events.size();
    });
    return lines;
}

struct ThetaFunction {
    TruncatedSeries series;
    ExponentPair index;
    PerturbedPoint basepoint;
    bool stabilized = false;
};

// theta_{u,p} = sum over broken lines of the final monomials.
inline ThetaFunction theta_function(const ScatteringDiagram& d, const ExponentPair& u,
                                    const PerturbedPoint& p) {
    auto lines = enumerate_broken_lines(d, u, p);
    TruncatedSeries s(d.order, d.nvars);
    for (const auto& line : lines) s.add_term(line.final_exp, line.coeff);
    if (u.ydeg() < d.order) {
        if (s.coeff(u) != 1)
            throw internal_error("theta: leading coefficient at z^u is not 1 for " + to_string(u));
        for (const auto& [w, c] : s.terms()) {
            if (w == u) continue;
            bool dominates = w.ydeg() > u.ydeg();
            for (std::size_t i = 0; i < w.q.size() && dominates; ++i)
                if (w.q[i] < u.q[i]) dominates = false;
            if (!dominates)
                throw internal_error("theta: term outside z^u(1+I) for " + to_string(u));
        }
    }
    return {std::move(s), u, p, false};
}

// Lemma-CPS transport: push a theta function along a generic path; the result
// equals direct enumeration at the path's end.
inline ThetaFunction transport(const ScatteringDiagram& d, const ThetaFunction& theta,
                               const PlanarPath& path) {
    if (!path.points.empty() && !(path.points.front() == theta.basepoint))
        throw domain_error("transport: path must start at the theta basepoint");
    TruncatedSeries s = path_ordered_product(d, path, theta.series);
    return {std::move(s), theta.index, path.points.empty() ? theta.basepoint : path.points.back(),
            theta.stabilized};
}

// Structure constant alpha(u_1,...,u_s; u): the z^u-coefficient of the product
// of theta expansions at a basepoint infinitesimally close to u_M.  Closeness
// is certified by recomputing with the perturbation pushed one epsilon-order
// deeper and demanding agreement.
inline Int structure_constants(const ScatteringDiagram& d, const std::vector<ExponentPair>& u_list,
                               const ExponentPair& u) {
    if (is_zero(u.m) && !u.q_is_zero())
        throw domain_error("structure_constants: basepoint near u needs u_M != 0 (or u = 0)");
    auto eval = [&](const PerturbedPoint& p) {
        TruncatedSeries prod = TruncatedSeries::one(d.order, d.nvars);
        for (const auto& ui : u_list) prod = mul(prod, theta_function(d, ui, p).series);
        return prod.coeff(u);
    };
    QVec2 base = qvec2(Rat(u.m[0]), Rat(u.m[1]));
    Int a1 = eval(PerturbedPoint{base, kDefaultEps1, kDefaultEps2});
    Int a2 = eval(PerturbedPoint{base, qvec2(Rat(0), Rat(0)), kDefaultEps1});
    if (a1 != a2)
        throw internal_error("structure_constants: basepoint certification failed at " +
                             to_string(u));
    return a1;
}

// Limiting theta function at a possibly non-generic basepoint p, approached
// from the generic direction mu (the eps^2 level keeps ties resolved).
inline ThetaFunction limit_theta(const ScatteringDiagram& d, const ExponentPair& u,
                                 const QVec2& p, const QVec2& mu) {
    for (const auto& w : d.walls) {
        if (w.side(p) != 0) continue;
        if (dot(mu, to_rational(w.normal)) == 0)
            throw genericity_error("limit_theta: mu not generic for the local diagram at " +
                                   detail::point_str(p));
    }
    PerturbedPoint pp{p, mu, kDefaultEps2};
    return theta_function(d, u, pp);
}

// Recomputes theta at increasing orders until the term set stops changing
// across two consecutive increases; detects finite Laurent polynomials.
using DiagramBuilder = std::function<ScatteringDiagram(int)>;

inline std::pair<ThetaFunction, bool> stabilize(const DiagramBuilder& builder,
                                                const ExponentPair& u, const PerturbedPoint& p,
                                                int k_start, int k_cap = 0) {
    if (k_cap <= 0) k_cap = k_start + 8;
    ThetaFunction prev = theta_function(builder(k_start), u, p);
    int agreements = 0;
    for (int k = k_start + 2; k <= k_cap; k += 2) {
        ThetaFunction cur = theta_function(builder(k), u, p);
        bool same = cur.series.terms() == prev.series.terms();
        agreements = same ? agreements + 1 : 0;
        prev = std::move(cur);
        if (agreements >= 2) {
            prev.stabilized = true;
            return {std::move(prev), true};
        }
    }
    return {std::move(prev), false};
}

} // namespace scat
