#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "scatter/perturb.hpp"
#include "scatter/series.hpp"

namespace scat {

enum class SupportKind { Ray, Line };

// Support of a planar wall: a full line {base + t*dir} or a ray
// {base + t*dir : t >= 0} with apex `base`.  `dir` is primitive.
struct WallSupport {
    QVec2 base{Rat(0), Rat(0)};
    IVec2 dir{Int(1), Int(0)};
    SupportKind kind = SupportKind::Line;

    bool operator==(const WallSupport& o) const {
        return base == o.base && dir == o.dir && kind == o.kind;
    }
};

// Wall (W, f, n): support W in a translate of n^perp, primitive normal n, and
// scattering function f in one composite variable.  `qdual` is the rational
// normal Q^bullet(v) carried along from the seed; it is a positive multiple of
// n and fixes which side of the wall is positive.
struct Wall {
    WallSupport support;
    IVec2 normal{Int(0), Int(1)};
    QVec2 qdual{Rat(0), Rat(1)};
    ScatFunction func;

    void validate() const {
        if (is_zero(support.dir)) throw wall_error("wall: zero direction");
        if (is_zero(normal)) throw wall_error("wall: zero normal");
        if (dot(support.dir, normal) != 0)
            throw wall_error("wall: direction not annihilated by the normal");
        if (dot(func.base.m, normal) != 0)
            throw wall_error("wall: function exponent not orthogonal to the normal");
        if (cross(qdual, to_rational(normal)) != 0 || dot(qdual, normal) <= 0)
            throw wall_error("wall: qdual is not a positive multiple of the normal");
        if (func.base.ydeg() == 0) throw wall_error("wall: function has no coefficient variable");
    }

    // Incoming walls are those whose support is closed under adding
    // R_{>=0} * v for v the function's x-exponent direction.
    bool incoming() const {
        if (support.kind == SupportKind::Line) return true;
        if (is_zero(func.base.m)) return false;
        return support.dir == primitive_part(func.base.m).first;
    }

    // Signed distance functional of a point from the wall's line.
    Rat side(const QVec2& p) const { return dot(p - support.base, to_rational(normal)); }
    Eps side(const PerturbedPoint& p) const {
        QVec2 nq = to_rational(normal);
        return {dot(p.base - support.base, nq), dot(p.eps1, nq), dot(p.eps2, nq)};
    }

    bool contains(const QVec2& p) const {
        if (side(p) != 0) return false;
        if (support.kind == SupportKind::Line) return true;
        return dot(p - support.base, to_rational(support.dir)) >= 0;
    }
};

// A finite order-k wall collection.  Strict convexity of the exponent cone
// M^+ is witnessed by the total-y-degree functional: every scattering
// function's base exponent has |q| >= 1, a ScatFunction invariant.
struct ScatteringDiagram {
    int order = 2;
    int nvars = 0;
    std::vector<Wall> walls;

    void validate() const {
        for (const auto& w : walls) {
            w.validate();
            if (w.func.nvars() != nvars)
                throw dimension_error("diagram: wall coefficient rank mismatch");
        }
    }

    std::vector<ExponentPair> exponent_cone() const {
        std::vector<ExponentPair> gens;
        for (const auto& w : walls) gens.push_back(w.func.base);
        return gens;
    }

    ScatteringDiagram truncated(int new_order) const {
        ScatteringDiagram d{new_order, nvars, {}};
        for (const auto& w : walls) {
            if (!w.func.is_trivial(new_order)) continue;
            Wall t = w;
            int slots = std::max(0, (new_order - 1) / w.func.base.ydeg());
            if (static_cast<int>(t.func.coeffs.size()) > slots) t.func.coeffs.resize(slots);
            while (!t.func.coeffs.empty() && t.func.coeffs.back() == 0) t.func.coeffs.pop_back();
            d.walls.push_back(std::move(t));
        }
        return d;
    }
};

namespace detail {

// Total order on spoke directions by angle in (0, 2pi]; the loop basepoint
// sits just counterclockwise of the positive x-axis.
inline int angle_sector(const IVec2& e) {
    if (e[1] == 0) return e[0] > 0 ? 3 : 1; // +x axis crossed last, -x axis mid
    return e[1] > 0 ? 0 : 2;
}

inline bool angle_less(const IVec2& a, const IVec2& b) {
    int sa = angle_sector(a), sb = angle_sector(b);
    if (sa != sb) return sa < sb;
    return cross(a, b) > 0;
}

inline std::string point_str(const QVec2& p) { return to_string(p); }

} // namespace detail

// Canonical ordering of walls for deterministic output.
inline void canonical_sort(std::vector<Wall>& walls) {
    std::stable_sort(walls.begin(), walls.end(), [](const Wall& a, const Wall& b) {
        if (a.support.kind != b.support.kind) return a.support.kind < b.support.kind;
        if (a.support.dir != b.support.dir)
            return detail::angle_less(a.support.dir, b.support.dir);
        if (a.support.base != b.support.base) return a.support.base < b.support.base;
        ExpLess lt;
        if (a.func.base != b.func.base) return lt(a.func.base, b.func.base);
        return a.normal < b.normal;
    });
}

// Merges walls with identical support, equal primitive normals and equal
// composite base exponents (E_{kn,f} = E_{n,f^k} is applied first to make
// normals primitive); drops walls acting trivially mod I^order.
inline ScatteringDiagram normalize(const ScatteringDiagram& d) {
    using Key = std::tuple<int, QVec2, IVec2, IVec2, IVec2, std::vector<int>>;
    std::map<Key, Wall> merged;
    for (const auto& wall : d.walls) {
        Wall w = wall;
        auto [nu, g] = primitive_part(w.normal);
        if (g != 1) {
            w.func = w.func.powered(static_cast<long>(g), d.order);
            w.normal = nu;
        }
        if (!w.func.is_trivial(d.order)) continue;
        QVec2 anchor = w.support.base;
        if (w.support.kind == SupportKind::Line) {
            // canonical point on the line: foot of the perpendicular from 0
            QVec2 nq = to_rational(w.normal);
            Rat c = dot(anchor, nq) / dot(nq, nq);
            anchor = c * nq;
            // canonical direction sign for lines
            if (w.support.dir[0] < 0 || (w.support.dir[0] == 0 && w.support.dir[1] < 0))
                w.support.dir = -w.support.dir;
            w.support.base = anchor;
        }
        Key key{static_cast<int>(w.support.kind), anchor,        w.support.dir,
                w.normal,                         w.func.base.m, w.func.base.q};
        auto it = merged.find(key);
        if (it == merged.end())
            merged.emplace(key, std::move(w));
        else
            it->second.func = it->second.func.merged_with(w.func, d.order);
    }
    ScatteringDiagram out{d.order, d.nvars, {}};
    for (auto& [k, w] : merged)
        if (w.func.is_trivial(d.order)) out.walls.push_back(std::move(w));
    canonical_sort(out.walls);
    out.validate();
    return out;
}

// ---------------------------------------------------------------------------
// Loop products around a joint
// ---------------------------------------------------------------------------

struct LoopCrossing {
    int wall_index;
    IVec2 spoke;   // direction in which the support leaves the joint
    int sign;      // sign of the elementary transformation for a ccw loop
};

// Walls through `joint` listed as spokes in counterclockwise crossing order,
// starting just above the positive x-axis direction.
inline std::vector<LoopCrossing> loop_crossings(const ScatteringDiagram& d, const QVec2& joint) {
    std::vector<LoopCrossing> spokes;
    for (int i = 0; i < static_cast<int>(d.walls.size()); ++i) {
        const Wall& w = d.walls[i];
        if (w.side(joint) != 0) continue;
        int s_plus = sign_of(cross(w.normal, w.support.dir));
        if (w.support.kind == SupportKind::Line) {
            spokes.push_back({i, w.support.dir, s_plus});
            spokes.push_back({i, -w.support.dir, -s_plus});
        } else {
            Rat t = dot(joint - w.support.base, to_rational(w.support.dir));
            if (t < 0) continue;
            spokes.push_back({i, w.support.dir, s_plus});
            if (t > 0) spokes.push_back({i, -w.support.dir, -s_plus});
        }
    }
    std::stable_sort(spokes.begin(), spokes.end(), [](const LoopCrossing& a, const LoopCrossing& b) {
        return detail::angle_less(a.spoke, b.spoke);
    });
    return spokes;
}

// Full counterclockwise loop product around `joint` applied to g.
inline TruncatedSeries loop_product(const ScatteringDiagram& d, const QVec2& joint,
                                    const TruncatedSeries& g) {
    TruncatedSeries out = g;
    for (const auto& c : loop_crossings(d, joint)) {
        const Wall& w = d.walls[c.wall_index];
        out = elementary_transform(Int(c.sign) * w.normal, w.func, out);
    }
    return out;
}

struct ConsistencyReport {
    QVec2 joint;
    TruncatedSeries image_x, image_y; // loop images of x^(1,0) and x^(0,1)
    bool consistent;
};

// Computes the loop around `joint` on the generators; consistent iff both
// come back unchanged mod I^k.
inline ConsistencyReport check_consistency(const ScatteringDiagram& d, const QVec2& joint) {
    TruncatedSeries gx =
        TruncatedSeries::monomial({ivec2(1, 0), std::vector<int>(d.nvars, 0)}, 1, d.order);
    TruncatedSeries gy =
        TruncatedSeries::monomial({ivec2(0, 1), std::vector<int>(d.nvars, 0)}, 1, d.order);
    TruncatedSeries ix = loop_product(d, joint, gx);
    TruncatedSeries iy = loop_product(d, joint, gy);
    bool ok = (ix == gx) && (iy == gy);
    return {joint, std::move(ix), std::move(iy), ok};
}

// All joints of the diagram: pairwise transverse support intersections,
// including ray apexes lying on other walls.
inline std::vector<QVec2> collect_joints(const ScatteringDiagram& d) {
    std::set<QVec2> pts;
    auto on_support = [](const Wall& w, const QVec2& p) {
        if (w.support.kind == SupportKind::Line) return true;
        return dot(p - w.support.base, to_rational(w.support.dir)) >= 0;
    };
    for (std::size_t i = 0; i < d.walls.size(); ++i) {
        for (std::size_t j = i + 1; j < d.walls.size(); ++j) {
            const Wall &a = d.walls[i], &b = d.walls[j];
            Int det = cross(a.normal, b.normal);
            if (det == 0) continue;
            // Solve (p-ba).na = 0, (p-bb).nb = 0.
            Rat ca = dot(a.support.base, to_rational(a.normal));
            Rat cb = dot(b.support.base, to_rational(b.normal));
            Rat dq(det);
            QVec2 p = {(ca * Rat(b.normal[1]) - cb * Rat(a.normal[1])) / dq,
                       (Rat(a.normal[0]) * cb - Rat(b.normal[0]) * ca) / dq};
            if (on_support(a, p) && on_support(b, p)) pts.insert(p);
        }
    }
    return {pts.begin(), pts.end()};
}

// ---------------------------------------------------------------------------
// Consistent completion
// ---------------------------------------------------------------------------

// Order-by-order completion in ambient rank 2: at each order j and joint, the
// loop discrepancy is an order-j derivation sum of terms z^(w,v) @ d_n; each
// term is cancelled by one outgoing ray from the joint in direction -w.
// `ydual` maps each y-coordinate i to Q^bullet(e_i); when absent it is read
// off the initial walls (whose coefficient variables must be distinct units).
inline ScatteringDiagram consistent_completion(const std::vector<Wall>& initial, int order,
                                               int nvars,
                                               std::optional<std::vector<QVec2>> ydual = {}) {
    std::vector<QVec2> qdual_of_var;
    if (ydual) {
        qdual_of_var = *ydual;
        if (static_cast<int>(qdual_of_var.size()) != nvars)
            throw dimension_error("consistent_completion: ydual rank mismatch");
    } else {
        // Infer Q^bullet e_i from walls whose coefficient variable is the unit e_i.
        qdual_of_var.assign(nvars, qvec2(Rat(0), Rat(0)));
        std::vector<bool> appears(nvars, false), inferred(nvars, false);
        for (const auto& w : initial) {
            const auto& q = w.func.base.q;
            int idx = -1;
            bool unit = true;
            for (int i = 0; i < nvars; ++i) {
                if (q[i] == 0) continue;
                appears[i] = true;
                if (q[i] != 1 || idx != -1) unit = false;
                idx = i;
            }
            if (!unit || idx < 0) continue;
            if (inferred[idx] && !(qdual_of_var[idx] == w.qdual))
                throw domain_error("consistent_completion: conflicting duals for variable " +
                                   std::to_string(idx) + "; pass ydual explicitly");
            qdual_of_var[idx] = w.qdual;
            inferred[idx] = true;
        }
        for (int i = 0; i < nvars; ++i)
            if (appears[i] && !inferred[i])
                throw domain_error("consistent_completion: cannot infer ydual; pass it explicitly");
    }

    ScatteringDiagram diagram{order, nvars, initial};
    diagram = normalize(diagram);

    for (int j = 2; j < order; ++j) {
        ScatteringDiagram active = diagram.truncated(j + 1);
        std::vector<QVec2> joints = collect_joints(active);
        struct NewWall {
            QVec2 joint;
            IVec2 dir; // ray direction (-w primitive)
            IVec2 normal;
            QVec2 qdual;
            ExponentPair u0; // primitive composite exponent
            int slot;
            Int coeff;
        };
        std::vector<NewWall> emitted;

        for (const QVec2& joint : joints) {
            ConsistencyReport rep = check_consistency(active, joint);
            // Degree-exactly-j parts of the discrepancies on both generators.
            std::map<ExponentPair, std::pair<Int, Int>, ExpLess> disc;
            auto gather = [&](const TruncatedSeries& img, const IVec2& gen, bool first) {
                for (const auto& [u, c] : img.terms()) {
                    if (u.ydeg() != j) continue;
                    ExponentPair key(u.m - gen, u.q);
                    auto& slot = disc[key];
                    (first ? slot.first : slot.second) = c;
                }
            };
            gather(rep.image_x, ivec2(1, 0), true);
            gather(rep.image_y, ivec2(0, 1), false);

            for (const auto& [wv, c12] : disc) {
                IVec2 nbar = {c12.first, c12.second}; // the derivation direction a_v * Q^bullet v
                if (is_zero(nbar)) continue;
                if (is_zero(wv.m))
                    throw internal_error("completion: pure-coefficient discrepancy at joint " +
                                         detail::point_str(joint));
                if (dot(wv.m, nbar) != 0)
                    throw internal_error("completion: discrepancy not tangent to a wall at " +
                                         detail::point_str(joint));
                // Oriented normal from the seed data.
                QVec2 qd = qvec2(Rat(0), Rat(0));
                for (int i = 0; i < nvars; ++i)
                    if (wv.q[i] != 0) qd = qd + Rat(wv.q[i]) * qdual_of_var[i];
                if (is_zero(qd))
                    throw internal_error("completion: trivial dual direction carries discrepancy");
                if (cross(qd, to_rational(nbar)) != 0)
                    throw internal_error("completion: discrepancy direction disagrees with seed "
                                         "duals at " +
                                         detail::point_str(joint));
                auto [nu, g] = primitive_direction(qd);
                // lambda with nbar = lambda * nu
                Rat lambda = nu[0] != 0 ? Rat(nbar[0]) / Rat(nu[0]) : Rat(nbar[1]) / Rat(nu[1]);

                // Primitive composite exponent and correction slot.
                Int content = boost::multiprecision::gcd(boost::multiprecision::gcd(wv.m[0], wv.m[1]),
                                                         [&] {
                                                             Int gq = 0;
                                                             for (int e : wv.q)
                                                                 gq = boost::multiprecision::gcd(
                                                                     gq, Int(e));
                                                             return gq;
                                                         }());
                int t = static_cast<int>(content);
                ExponentPair u0(ivec2(wv.m[0] / content, wv.m[1] / content), wv.q);
                for (auto& e : u0.q) e /= t;

                IVec2 ray_dir = primitive_part(-wv.m).first;
                int s = sign_of(cross(nu, ray_dir));
                if (s == 0) throw internal_error("completion: degenerate spoke sign");
                Rat coeff_q = -Rat(s) * lambda;
                if (denominator(coeff_q) != 1)
                    throw internal_error("completion: non-integral wall coefficient " +
                                         to_string(coeff_q) + " at " + detail::point_str(joint));
                emitted.push_back(
                    {joint, ray_dir, nu, qd, std::move(u0), t, numerator(coeff_q)});
            }
        }

        for (auto& nw : emitted) {
            Wall* host = nullptr;
            for (auto& w : diagram.walls) {
                if (w.support.kind == SupportKind::Ray && w.support.base == nw.joint &&
                    w.support.dir == nw.dir && w.func.base == nw.u0 && w.normal == nw.normal) {
                    host = &w;
                    break;
                }
            }
            if (host) {
                if (host->func.coeff(nw.slot) != 0)
                    throw internal_error("completion: correction slot already filled");
                host->func.set_coeff(nw.slot, nw.coeff);
            } else {
                Wall w;
                w.support = {nw.joint, nw.dir, SupportKind::Ray};
                w.normal = nw.normal;
                w.qdual = nw.qdual;
                std::vector<Int> coeffs(nw.slot, Int(0));
                coeffs[nw.slot - 1] = nw.coeff;
                w.func = ScatFunction(nw.u0, std::move(coeffs));
                w.validate();
                diagram.walls.push_back(std::move(w));
            }
        }
    }

    // Drop walls that became trivial and fix a canonical order.
    ScatteringDiagram out{order, nvars, {}};
    for (auto& w : diagram.walls)
        if (w.func.is_trivial(order)) out.walls.push_back(std::move(w));
    canonical_sort(out.walls);
    out.validate();
    return out;
}

// ---------------------------------------------------------------------------
// Paths and chambers
// ---------------------------------------------------------------------------

struct PlanarPath {
    std::vector<PerturbedPoint> points; // polyline; consecutive eps parts must agree
};

// Path-ordered product along a polyline, applied to g.  Crossings are
// transverse by the symbolic perturbation; a crossing through a joint or ray
// apex raises a genericity error.
inline TruncatedSeries path_ordered_product(const ScatteringDiagram& d, const PlanarPath& path,
                                            const TruncatedSeries& g) {
    if (path.points.size() < 2) return g;
    TruncatedSeries out = g;
    for (std::size_t seg = 0; seg + 1 < path.points.size(); ++seg) {
        const PerturbedPoint& a = path.points[seg];
        const PerturbedPoint& b = path.points[seg + 1];
        if (a.eps1 != b.eps1 || a.eps2 != b.eps2)
            throw genericity_error("path: segment endpoints carry different perturbations");
        QVec2 dir = b.base - a.base;
        if (is_zero(dir)) continue;

        struct Crossing {
            Eps t;
            int wall_index;
            int sign;
        };
        std::vector<Crossing> crossings;
        for (int i = 0; i < static_cast<int>(d.walls.size()); ++i) {
            const Wall& w = d.walls[i];
            Rat dn = dot(dir, to_rational(w.normal));
            Eps a_side = w.side(a);
            if (dn == 0) {
                if (a_side.sign() == 0)
                    throw genericity_error("path: segment runs along wall through " +
                                           detail::point_str(w.support.base));
                continue;
            }
            Eps t = -a_side / dn; // (a + t*dir - base).n = 0
            if (t.sign() <= 0) continue;
            Eps one_minus = Eps(Rat(1)) - t;
            if (one_minus.sign() <= 0) continue;
            if (w.support.kind == SupportKind::Ray) {
                QVec2 dq = to_rational(w.support.dir);
                // (a + t*dir - apex).dir
                Eps along = Eps{dot(a.base - w.support.base, dq), dot(a.eps1, dq), dot(a.eps2, dq)} +
                            t * dot(dir, dq);
                int sg = along.sign();
                if (sg < 0) continue;
                if (sg == 0)
                    throw genericity_error("path: crossing through ray apex " +
                                           detail::point_str(w.support.base));
            }
            crossings.push_back({t, i, -sign_of(dn)});
        }
        std::sort(crossings.begin(), crossings.end(), [](const Crossing& x, const Crossing& y) {
            if (x.t < y.t) return true;
            if (y.t < x.t) return false;
            return x.wall_index < y.wall_index;
        });
        for (std::size_t i = 0; i + 1 < crossings.size(); ++i) {
            if (crossings[i].t == crossings[i + 1].t) {
                const Wall& wa = d.walls[crossings[i].wall_index];
                const Wall& wb = d.walls[crossings[i + 1].wall_index];
                if (cross(wa.normal, wb.normal) != 0)
                    throw genericity_error("path: crossing through a joint of non-parallel walls");
            }
        }
        for (const auto& c : crossings) {
            const Wall& w = d.walls[c.wall_index];
            out = elementary_transform(Int(c.sign) * w.normal, w.func, out);
        }
    }
    return out;
}

// Sign vector of p against every wall; equal signatures identify a chamber of
// the order-k diagram.
inline std::vector<int> locate_chamber(const ScatteringDiagram& d, const PerturbedPoint& p) {
    std::vector<int> sig;
    sig.reserve(d.walls.size());
    for (const auto& w : d.walls) {
        int s = w.side(p).sign();
        if (s == 0)
            throw genericity_error("locate_chamber: point degenerate on wall through " +
                                   detail::point_str(w.support.base));
        sig.push_back(s);
    }
    return sig;
}

// A rational point strictly on the positive side of every wall in `walls`,
// if one exists (rank-2 cone feasibility via the clockwise-most normal).
inline std::optional<QVec2> positive_direction(const std::vector<Wall>& walls) {
    std::vector<QVec2> normals;
    for (const auto& w : walls) {
        if (dot(w.support.base, w.qdual) != 0)
            return std::nullopt; // affine configuration; callers handle separately
        normals.push_back(w.qdual);
    }
    if (normals.empty()) return qvec2(Rat(1), Rat(1));
    for (const auto& n : normals) {
        bool extreme = true;
        for (const auto& m : normals) {
            Rat c = cross(n, m);
            if (c < 0 || (c == 0 && dot(n, m) < 0)) {
                extreme = false;
                break;
            }
        }
        if (!extreme) continue;
        // d = n + t*rot90(n) with t big enough that every m.d > 0.
        Rat t(1);
        for (const auto& m : normals) {
            Rat c = cross(n, m);
            if (c > 0) {
                Rat need = -dot(n, m) / c + 1;
                if (need > t) t = need;
            } else if (dot(n, m) <= 0) {
                extreme = false;
                break;
            }
        }
        if (!extreme) continue;
        QVec2 dvec = n + t * rot90(n);
        bool ok = true;
        for (const auto& m : normals)
            if (dot(dvec, m) <= 0) ok = false;
        if (ok) return dvec;
    }
    return std::nullopt;
}

// Rigid translation of initial full-line walls so the origin is strictly on
// the positive side of each; offsets are distinct to keep joints simple.
inline std::vector<Wall> translate_for_positive_chamber(const std::vector<Wall>& initial) {
    int r = static_cast<int>(initial.size());
    for (int attempt = 0;; ++attempt) {
        std::vector<Wall> out = initial;
        for (int i = 0; i < r; ++i) {
            Wall& w = out[i];
            if (w.support.kind != SupportKind::Line)
                throw domain_error("translate_for_positive_chamber: expected full lines");
            auto [nu, g] = primitive_part(w.normal);
            if (g != 1) throw domain_error("translate_for_positive_chamber: normalize first");
            // c with n.c = 1 via the extended gcd.
            Int x0, y0;
            {
                Int a = nu[0], b = nu[1];
                Int old_r = a, rr = b, old_s = 1, ss = 0, old_t = 0, tt = 1;
                while (rr != 0) {
                    Int quo = old_r / rr;
                    Int nr = old_r - quo * rr, ns = old_s - quo * ss, nt = old_t - quo * tt;
                    old_r = rr;
                    rr = nr;
                    old_s = ss;
                    ss = ns;
                    old_t = tt;
                    tt = nt;
                }
                if (old_r < 0) {
                    old_s = -old_s;
                    old_t = -old_t;
                }
                x0 = old_s;
                y0 = old_t;
            }
            Rat delta = Rat(1) + Rat(i + 1, r + 2 + attempt);
            w.support.base = qvec2(-delta * Rat(x0), -delta * Rat(y0));
        }
        // Reject translations with coincident pairwise joints (triple points).
        ScatteringDiagram probe{2, initial.empty() ? 0 : initial[0].func.nvars(), out};
        auto joints = collect_joints(probe);
        std::size_t expected = 0;
        for (std::size_t i = 0; i < out.size(); ++i)
            for (std::size_t j = i + 1; j < out.size(); ++j)
                if (cross(out[i].normal, out[j].normal) != 0) ++expected;
        if (joints.size() == expected || r < 2) return out;
        if (attempt > 16)
            throw internal_error("translate_for_positive_chamber: could not avoid triple points");
    }
}

} // namespace scat
