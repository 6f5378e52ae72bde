#pragma once

// Brute-force reference evaluators.  They share no code with the library
// beyond the cube and sequence containers: containment is decided by
// integer interval arithmetic, integrals by summing over the finest pixels.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "dspaces/dyadic.hpp"
#include "dspaces/sequence.hpp"

namespace oracle {

using dspaces::CubeSequence;
using dspaces::DyadicCube;

inline constexpr double inf = std::numeric_limits<double>::infinity();

/// Q ⊆ P by comparing the half-open intervals [k 2^{-j}, (k+1) 2^{-j})
/// scaled to a common integer grid.
inline bool interval_contains(const DyadicCube& p, const DyadicCube& q) {
    const int lo = std::min(p.level(), q.level());
    const int hi = std::max(p.level(), q.level());
    if (hi - lo > 40) return false;
    for (int i = 0; i < p.dim(); ++i) {
        // endpoints multiplied by 2^{hi}
        const std::int64_t sp = std::int64_t{1} << (hi - p.level());
        const std::int64_t sq = std::int64_t{1} << (hi - q.level());
        const std::int64_t p0 = p.index()[i] * sp, p1 = (p.index()[i] + 1) * sp;
        const std::int64_t q0 = q.index()[i] * sq, q1 = (q.index()[i] + 1) * sq;
        if (q0 < p0 || q1 > p1) return false;
    }
    return true;
}

/// Componentwise floor division k / 2^d.
inline std::vector<std::int64_t> floor_div(const std::vector<std::int64_t>& k, int d) {
    std::vector<std::int64_t> out;
    const std::int64_t den = std::int64_t{1} << d;
    for (auto v : k) {
        std::int64_t qt = v / den;
        if (v % den != 0 && v < 0) --qt;
        out.push_back(qt);
    }
    return out;
}

/// Linear weights w_Q = |Q|^{-s/n-1/2} |t_Q| keyed by cube.
inline std::map<DyadicCube, double> weights(const CubeSequence& t, double s) {
    std::map<DyadicCube, double> w;
    const int n = t.dim();
    for (const auto& e : t.entries()) {
        const double vol_log2 = -static_cast<double>(e.cube.level()) * n;
        w[e.cube] = std::exp2(e.log2_magnitude + vol_log2 * (-s / n - 0.5));
    }
    return w;
}

/// Every dyadic cube inside `root` down to `depth` levels below it.
inline std::vector<DyadicCube> all_subcubes(const DyadicCube& root, int depth) {
    std::vector<DyadicCube> out{root};
    std::vector<DyadicCube> layer{root};
    for (int d = 0; d < depth; ++d) {
        std::vector<DyadicCube> next;
        for (const auto& c : layer) {
            for (auto& ch : c.children()) next.push_back(ch);
        }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

/// Finest pixels inside the root.
inline std::vector<DyadicCube> pixels(const CubeSequence& t) {
    const auto& root = t.tree().root();
    std::vector<DyadicCube> layer{root};
    for (int d = 0; d < t.tree().max_depth(); ++d) {
        std::vector<DyadicCube> next;
        for (const auto& c : layer) {
            for (auto& ch : c.children()) next.push_back(ch);
        }
        layer = std::move(next);
    }
    return layer;
}

/// Candidate cubes: every subcube of the root plus `ancestors` ancestors.
inline std::vector<DyadicCube> candidates(const CubeSequence& t, int ancestors) {
    auto out = all_subcubes(t.tree().root(), t.tree().max_depth());
    for (int a = 1; a <= ancestors; ++a) out.push_back(t.tree().root().ancestor_at(t.tree().root().level() - a));
    return out;
}

inline double pixel_volume(const CubeSequence& t) {
    return std::exp2(-static_cast<double>(t.tree().root().level() + t.tree().max_depth()) * t.dim());
}

inline double volume(const DyadicCube& q) { return std::exp2(-static_cast<double>(q.level()) * q.dim()); }

/// |P|^{-tau} (∫_P (Σ_{Q⊆P} [w_Q χ_Q]^q)^{p/q})^{1/p} by pixel summation;
/// levels below `min_level` are skipped (inhomogeneous variant).
inline double f_value(const CubeSequence& t, double s, double tau, double p, double q, const DyadicCube& P,
                      int min_level = std::numeric_limits<int>::min()) {
    const auto w = weights(t, s);
    const double pv = pixel_volume(t);
    double integral = 0.0;
    for (const auto& x : pixels(t)) {
        if (!interval_contains(P, x)) continue;
        double inner = 0.0;
        for (const auto& [cube, wq] : w) {
            if (cube.level() < min_level || !interval_contains(P, cube) || !interval_contains(cube, x)) continue;
            inner = q == inf ? std::max(inner, wq) : inner + std::pow(wq, q);
        }
        const double g = q == inf ? inner : std::pow(inner, 1.0 / q);
        integral += std::pow(g, p) * pv;
    }
    return std::pow(volume(P), -tau) * std::pow(integral, 1.0 / p);
}

/// |P|^{-tau} (Σ_{j>=j_P} (∫_P [Σ_{ℓ(Q)=2^{-j}} w_Q χ_Q]^p)^{q/p})^{1/q} by pixel summation.
inline double b_value(const CubeSequence& t, double s, double tau, double p, double q, const DyadicCube& P,
                      int min_level = std::numeric_limits<int>::min()) {
    const auto w = weights(t, s);
    const double pv = pixel_volume(t);
    const int top = t.tree().root().level() + t.tree().max_depth();
    double outer = 0.0;
    for (int j = std::max(P.level(), min_level); j <= top; ++j) {
        double level_norm = 0.0;  // (∫_P g^p)^{1/p}, or ess sup at p = inf
        double integral = 0.0;
        for (const auto& x : pixels(t)) {
            if (!interval_contains(P, x)) continue;
            double g = 0.0;
            for (const auto& [cube, wq] : w) {
                if (cube.level() == j && interval_contains(P, cube) && interval_contains(cube, x)) g += wq;
            }
            if (p == inf) {
                level_norm = std::max(level_norm, g);
            } else {
                integral += std::pow(g, p) * pv;
            }
        }
        if (p != inf) level_norm = std::pow(integral, 1.0 / p);
        outer = q == inf ? std::max(outer, level_norm) : outer + std::pow(level_norm, q);
    }
    const double agg = q == inf ? outer : std::pow(outer, 1.0 / q);
    return std::pow(volume(P), -tau) * agg;
}

template <class Value>
double sup_over(const std::vector<DyadicCube>& cands, Value&& value) {
    double best = 0.0;
    for (const auto& P : cands) best = std::max(best, value(P));
    return best;
}

inline double f_norm(const CubeSequence& t, double s, double tau, double p, double q, int ancestors = 3) {
    return sup_over(candidates(t, ancestors), [&](const DyadicCube& P) { return f_value(t, s, tau, p, q, P); });
}

inline double b_norm(const CubeSequence& t, double s, double tau, double p, double q, int ancestors = 3) {
    return sup_over(candidates(t, ancestors), [&](const DyadicCube& P) { return b_value(t, s, tau, p, q, P); });
}

inline double inf_inf_norm(const CubeSequence& t, double s_eff) {
    double best = 0.0;
    for (const auto& [cube, wq] : weights(t, s_eff)) best = std::max(best, wq);
    return best;
}

/// CMO value, literally: sup_P {|P|^{-r} ∫_P Σ_{Q⊆P} [w_Q χ_Q]^q}^{1/q}.
inline double cmo(const CubeSequence& t, double s, double q, double r, int ancestors = 3) {
    const auto w = weights(t, s);
    const double pv = pixel_volume(t);
    return sup_over(candidates(t, ancestors), [&](const DyadicCube& P) {
        double integral = 0.0;
        for (const auto& x : pixels(t)) {
            if (!interval_contains(P, x)) continue;
            for (const auto& [cube, wq] : w) {
                if (interval_contains(P, cube) && interval_contains(cube, x)) integral += std::pow(wq, q) * pv;
            }
        }
        return std::pow(std::pow(volume(P), -r) * integral, 1.0 / q);
    });
}

/// BBMO value, literally, for finite p and q.
inline double bbmo(const CubeSequence& t, double s, double p, double q, int ancestors = 3) {
    const int n = t.dim();
    return sup_over(candidates(t, ancestors), [&](const DyadicCube& P) {
        std::map<int, double> per_level;
        for (const auto& e : t.entries()) {
            if (!interval_contains(P, e.cube)) continue;
            const double vq = volume(e.cube);
            const double a = std::pow(vq, -s / n - 0.5 + 1.0 / p) * std::exp2(e.log2_magnitude);
            per_level[e.cube.level()] += std::pow(a, p) / volume(P);
        }
        double total = 0.0;
        for (const auto& [lvl, v] : per_level) total += std::pow(v, q / p);
        return std::pow(total, 1.0 / q);
    });
}

/// Equal-weight tower: R_0..R_J with |R_j|^{-(tau-1/p)} w_{R_j} = 1, i.e. w_j = 2^{-j n delta}.
/// Returns the F-type value sup_k over P = R_k, from the shell formula
/// |R_k|^{-tau} (Σ_{m>=k} |R_m \ R_{m+1}| S_m^{p/q})^{1/p}, S_m = Σ_{j=k}^m w_j^q.
inline double equal_weight_tower_f(int n, int J, double delta, double tau, double p, double q) {
    double best = 0.0;
    for (int k = 0; k <= J; ++k) {
        double total = 0.0;
        double s_m = 0.0;
        for (int m = k; m <= J; ++m) {
            const double w = std::exp2(-m * n * delta);
            s_m = q == inf ? std::max(s_m, w) : s_m + std::pow(w, q);
            const double shell = m < J ? std::exp2(-m * n) * (1 - std::exp2(-n)) : std::exp2(-J * n);
            const double g = q == inf ? s_m : std::pow(s_m, 1.0 / q);
            total += shell * std::pow(g, p);
        }
        best = std::max(best, std::exp2(k * n * tau) * std::pow(total, 1.0 / p));
    }
    return best;
}

}  // namespace oracle
