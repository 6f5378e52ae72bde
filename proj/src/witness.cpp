#include "dspaces/witness.hpp"

#include <cmath>
#include <limits>

#include "dspaces/errors.hpp"
#include "dspaces/log_sum.hpp"
#include "dspaces/parallel.hpp"

namespace dspaces {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double slope(const std::vector<int>& depths, const std::vector<double>& values) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < depths.size(); ++i) {
        if (depths[i] <= 0 || !std::isfinite(values[i])) continue;
        const double x = std::log2(static_cast<double>(depths[i]));
        sx += x;
        sy += values[i];
        sxx += x * x;
        sxy += x * values[i];
        ++m;
    }
    if (m < 2) return 0.0;
    const double den = m * sxx - sx * sx;
    return den == 0.0 ? 0.0 : (m * sxy - sx * sy) / den;
}

}  // namespace

std::string to_string(Verdict v) { return v == Verdict::bounded ? "bounded" : "diverges"; }

CubeSequence tower_sequence(int dim, int depth, double exponent) {
    if (depth < 0) throw ParameterError("tower depth must be >= 0");
    std::vector<CubeSequence::Entry> entries;
    entries.reserve(static_cast<std::size_t>(depth) + 1);
    for (int j = 0; j <= depth; ++j) {
        entries.push_back({DyadicCube::corner(dim, j), -static_cast<double>(j) * dim * exponent});
    }
    return CubeSequence(DyadicCube::unit(dim), depth, std::move(entries));
}

TowerWitness build_tower(double s, double tau, double p, int dim, int depth) {
    if (!(p > 0)) throw ParameterError("tower: p must be positive");
    const double exponent = s / dim + 0.5 + tau - 1.0 / p;
    return TowerWitness{s, tau, p, dim, depth, tower_sequence(dim, depth, exponent)};
}

GrowthReport make_growth_report(std::string space, std::vector<int> depths, std::vector<double> log2_values,
                                std::optional<double> theoretical_exponent, std::optional<double> log2_bound) {
    GrowthReport r;
    r.space = std::move(space);
    r.depths = std::move(depths);
    r.log2_values = std::move(log2_values);
    r.theoretical_exponent = theoretical_exponent;
    r.log2_bound = log2_bound;
    r.fitted_exponent = slope(r.depths, r.log2_values);

    if (log2_bound) {
        const double slack = std::log2(1.0 + 1e-12);
        for (double v : r.log2_values) {
            if (v > *log2_bound + slack) r.within_bound = false;
        }
        r.verdict = r.within_bound ? Verdict::bounded : Verdict::diverges;
        return r;
    }
    if (r.log2_values.size() < 2) {
        r.verdict = Verdict::bounded;
        return r;
    }
    const double first = r.log2_values.front();
    const double last = r.log2_values.back();
    const double margin = 10.0 * kEps * std::max({1.0, std::abs(first), std::abs(last)});
    const bool grows = (last - first) > margin && r.fitted_exponent > 0.0;
    const bool fast_enough = !theoretical_exponent || r.fitted_exponent >= 0.8 * *theoretical_exponent;
    r.verdict = (grows && fast_enough) ? Verdict::diverges : Verdict::bounded;
    return r;
}

void check_witness_hypotheses(const WitnessParams& wp, WitnessTarget target) {
    if (wp.dim < 1) throw ParameterError("witness: dimension must be >= 1");
    if (!(wp.p > 0) || wp.p == kInf) throw ParameterError("witness: p must be in (0, inf)");
    if (!(wp.q > wp.p)) throw ParameterError("witness: the counterexample requires q > p");
    const double inv_p = 1.0 / wp.p;
    const double tol = 1e-12 * std::max(1.0, inv_p);
    if (wp.q < kInf) {
        const double top = inv_p - 1.0 / wp.q;
        if (!(wp.tau > 0) || wp.tau > top + tol) {
            throw ParameterError("witness: need tau in (0, 1/p - 1/q] = (0, " + std::to_string(top) + "] for q < inf");
        }
        return;
    }
    const bool low_ok = target == WitnessTarget::f_type ? wp.tau > 0 : wp.tau >= 0;
    if (!low_ok || !(wp.tau < inv_p)) {
        throw ParameterError(std::string("witness: need tau in ") + (target == WitnessTarget::f_type ? "(0" : "[0") +
                             ", 1/p) for q = inf");
    }
}

double witness_target_log2_bound(const WitnessParams& wp, WitnessTarget target) {
    const double n = wp.dim;
    if (target == WitnessTarget::f_type) {
        return -std::log2(1.0 - std::exp2(-n * wp.tau * wp.p)) / wp.p;
    }
    if (wp.q == kInf) return 0.0;
    return -std::log2(1.0 - std::exp2(-n * wp.tau * wp.q)) / wp.q;
}

double witness_reference_log2_closed_form(const WitnessParams& wp, int depth) {
    const double n = wp.dim;
    const double inv_q = wp.q == kInf ? 0.0 : 1.0 / wp.q;
    const double a_shift = wp.tau + inv_q - 1.0 / wp.p;
    double best = kNegInf;
    for (int k = 0; k <= depth; ++k) {
        double inner;
        if (wp.q == kInf) {
            inner = kNegInf;
            for (int j = k; j <= depth; ++j) inner = std::max(inner, -j * n * (wp.tau - 1.0 / wp.p));
        } else {
            Log2Sum sum;
            const double a = wp.q * a_shift;
            for (int j = k; j <= depth; ++j) sum.add(-j * n * a);
            inner = sum.value() / wp.q;
        }
        best = std::max(best, k * n * a_shift + inner);
    }
    return best;
}

std::vector<int> default_witness_depths(int dim) {
    if (dim == 1) return {4, 8, 16, 32, 64};
    return {4, 8, 16};
}

Prop4Certificate certify_prop4(const WitnessParams& wp, WitnessTarget target, const std::vector<int>& depths) {
    check_witness_hypotheses(wp, target);
    const double inv_q = wp.q == kInf ? 0.0 : 1.0 / wp.q;
    const NormParams reference{wp.s, wp.tau + inv_q - 1.0 / wp.p, wp.q, wp.q, true};
    const NormParams tp{wp.s, wp.tau, wp.p, wp.q, true};

    std::vector<double> ref_vals(depths.size()), tgt_vals(depths.size());
    parallel_for(
        depths.size(),
        [&](std::size_t i) {
            const auto tower = build_tower(wp.s, wp.tau, wp.p, wp.dim, depths[i]);
            ref_vals[i] = b_type_norm_local(tower.sequence, reference).log2_value;
            tgt_vals[i] = target == WitnessTarget::f_type ? f_type_norm(tower.sequence, tp).log2_value
                                                           : b_type_norm(tower.sequence, tp).log2_value;
        },
        2);

    // (J+1)^{1/q} growth when the shifted tau vanishes; exponential otherwise.
    std::optional<double> theory;
    if (wp.q < kInf && std::abs(reference.tau) <= 1e-12) theory = 1.0 / wp.q;

    Prop4Certificate cert;
    cert.params = wp;
    cert.target = target;
    cert.reference = make_growth_report("b_qq", depths, std::move(ref_vals), theory, std::nullopt);
    cert.target_report = make_growth_report(target == WitnessTarget::f_type ? "f_type" : "b_type", depths,
                                            std::move(tgt_vals), std::nullopt, witness_target_log2_bound(wp, target));
    return cert;
}

}  // namespace dspaces
