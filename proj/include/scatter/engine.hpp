#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>

#include "scatter/broken_lines.hpp"
#include "scatter/seed.hpp"

namespace scat {

// Bundles a seed with its completed diagrams at the orders visited so far,
// the positive-chamber basepoint (translating the initial walls when no
// conical positive chamber exists), and cached theta expansions.
class ClusterEngine {
  public:
    // By default the initial walls are rigidly translated whenever no conical
    // positive chamber exists (the workaround defining theta_{m,+}).  Pass
    // force_conical = true to keep the conical diagram regardless; the
    // positive basepoint is then only meaningful if a chamber exists.
    explicit ClusterEngine(SeedDatum s, bool force_conical = false) : seed_(std::move(s)) {
        validate_seed(seed_);
        auto initial = initial_diagram(seed_, 2);
        ScatteringDiagram probe{2, seed_.r(), initial};
        probe = normalize(probe);
        auto dir = positive_direction(probe.walls);
        if (dir) {
            translated_ = false;
            basepoint_ = perturbed(*dir);
        } else if (force_conical) {
            translated_ = false;
            basepoint_ = perturbed(qvec2(Rat(1), Rat(1)));
        } else {
            translated_ = true;
            basepoint_ = perturbed(qvec2(Rat(0), Rat(0)));
        }
    }

    const SeedDatum& seed() const { return seed_; }
    bool translated() const { return translated_; }
    const PerturbedPoint& positive_basepoint() const { return basepoint_; }

    const ScatteringDiagram& diagram(int order) {
        auto it = diagrams_.find(order);
        if (it != diagrams_.end()) return it->second;
        auto initial = initial_diagram(seed_, order);
        if (translated_) initial = translate_for_positive_chamber(initial);
        ScatteringDiagram d = consistent_completion(initial, order, seed_.r(), ydual_of(seed_));
        return diagrams_.emplace(order, std::move(d)).first->second;
    }

    DiagramBuilder builder() {
        return [this](int order) { return diagram(order); };
    }

    ExponentPair index(long mx, long my) const {
        return ExponentPair(ivec2(mx, my), std::vector<int>(seed_.r(), 0));
    }
    ExponentPair index(const IVec2& m) const {
        return ExponentPair(m, std::vector<int>(seed_.r(), 0));
    }

    const ThetaFunction& theta_at(const ExponentPair& u, const PerturbedPoint& p, int order) {
        std::string key = std::to_string(order) + "|" + to_string(u) + "|" + to_string(p);
        auto it = thetas_.find(key);
        if (it != thetas_.end()) return it->second;
        ThetaFunction t = theta_function(diagram(order), u, p);
        return thetas_.emplace(std::move(key), std::move(t)).first->second;
    }

    const ThetaFunction& theta_plus(const ExponentPair& u, int order) {
        return theta_at(u, basepoint_, order);
    }

    std::vector<BrokenLine> lines_plus(const ExponentPair& u, int order) {
        return enumerate_broken_lines(diagram(order), u, basepoint_);
    }

    // theta_{m,-} via the swap lemma: the negative-chamber expansion equals
    // the positive-chamber expansion for the seed (P, -Q).
    ClusterEngine& negative() {
        if (!negative_) {
            SeedDatum neg{seed_.P, -seed_.Qbullet, seed_.D};
            validate_seed(neg);
            negative_ = std::make_unique<ClusterEngine>(std::move(neg));
        }
        return *negative_;
    }

    const ThetaFunction& theta_minus(const ExponentPair& u, int order) {
        ClusterEngine& neg = negative();
        return neg.theta_plus(u, order);
    }

    // Recompute at k, k+2, ... until the term set repeats twice.  The default
    // cap leaves room for slowly-growing affine-type thetas.
    std::pair<ThetaFunction, bool> theta_plus_stabilized(const ExponentPair& u, int k_start,
                                                         int k_cap = 0) {
        if (k_cap <= 0) k_cap = k_start + 12;
        std::string key = std::to_string(k_start) + "s" + std::to_string(k_cap) + "|" + to_string(u);
        auto it = stabilized_.find(key);
        if (it != stabilized_.end()) return it->second;
        auto res = stabilize(builder(), u, basepoint_, k_start, k_cap);
        stabilized_.emplace(std::move(key), res);
        return res;
    }

    // True when the order-k completion already equals the order-(k+2) one,
    // i.e. the diagram is finite and fully known at order k.
    bool diagram_stabilized(int order) {
        const ScatteringDiagram& a = diagram(order);
        const ScatteringDiagram& b = diagram(order + 2);
        if (a.walls.size() != b.walls.size()) return false;
        for (std::size_t i = 0; i < a.walls.size(); ++i) {
            const Wall &wa = a.walls[i], &wb = b.walls[i];
            if (!(wa.support == wb.support) || wa.normal != wb.normal ||
                !(wa.func.base == wb.func.base) || wa.func.coeffs != wb.func.coeffs)
                return false;
        }
        return true;
    }

  private:
    SeedDatum seed_;
    bool translated_ = false;
    PerturbedPoint basepoint_;
    std::map<int, ScatteringDiagram> diagrams_;
    std::map<std::string, ThetaFunction> thetas_;
    std::map<std::string, std::pair<ThetaFunction, bool>> stabilized_;
    std::unique_ptr<ClusterEngine> negative_;
};

} // namespace scat
