#include "dspaces/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "dspaces/errors.hpp"
#include "dspaces/log_sum.hpp"
#include "dspaces/parallel.hpp"

namespace dspaces {

namespace {

double inv(double x) { return x == kInf ? 0.0 : 1.0 / x; }

void theorem1_range(double tau, double p, double q, const char* what) {
    if (!(p > 0) || !(q > 0)) throw ParameterError(std::string(what) + ": p and q must be positive");
    const bool ok = q < kInf ? tau > inv(p) : tau >= inv(p);
    if (!ok) {
        throw ParameterError(std::string(what) + ": need tau > 1/p for q < inf, or tau >= 1/p for q = inf (tau = " +
                             std::to_string(tau) + ", 1/p = " + std::to_string(inv(p)) + ")");
    }
}

// Records A/B given log2 A and log2 B; both zero is vacuous.
void record_log_ratio(EquivalenceReport& r, double log2_a, double log2_b) {
    if (log2_a == kNegInf && log2_b == kNegInf) return;
    r.record(std::exp2(log2_a - log2_b));
}

EquivalenceReport make_report(std::string name, double lower, double upper, double tol) {
    EquivalenceReport r;
    r.check = std::move(name);
    r.lower_constant = lower;
    r.upper_constant = upper;
    r.tolerance = tol;
    return r;
}

EquivalenceReport theorem1_common(const CubeSequence& t, double s, double tau, double p, double q, double tol,
                                  TypeVariant variant, bool homogeneous, std::string name) {
    const double s_eff = s + t.dim() * (tau - inv(p));
    const NormParams np{s, tau, p, q, homogeneous};
    const double lhs = variant == TypeVariant::f_type ? f_type_norm(t, np).log2_value : b_type_norm(t, np).log2_value;
    const double rhs = f_inf_inf_norm(t, s_eff, homogeneous).log2_value;
    auto r = make_report(std::move(name), 1.0, theorem1_constant(t.dim(), tau, p, q), tol);
    record_log_ratio(r, lhs, rhs);
    return r;
}

}  // namespace

void EquivalenceReport::record(double ratio) {
    if (samples == 0) {
        worst_ratio_low = worst_ratio_high = ratio;
    } else {
        worst_ratio_low = std::min(worst_ratio_low, ratio);
        worst_ratio_high = std::max(worst_ratio_high, ratio);
    }
    ++samples;
    lower_ok = worst_ratio_low >= lower_constant * (1.0 - tolerance);
    upper_ok = worst_ratio_high <= upper_constant * (1.0 + tolerance);
}

void EquivalenceReport::merge(const EquivalenceReport& other) {
    if (other.samples == 0) return;
    if (samples == 0) {
        worst_ratio_low = other.worst_ratio_low;
        worst_ratio_high = other.worst_ratio_high;
    } else {
        worst_ratio_low = std::min(worst_ratio_low, other.worst_ratio_low);
        worst_ratio_high = std::max(worst_ratio_high, other.worst_ratio_high);
    }
    samples += other.samples;
    lower_constant = other.lower_constant;
    upper_constant = std::max(upper_constant, other.upper_constant);
    lower_ok = lower_ok && other.lower_ok && worst_ratio_low >= lower_constant * (1.0 - tolerance);
    upper_ok = upper_ok && other.upper_ok;
}

double theorem1_constant(int dim, double tau, double p, double q) {
    if (q == kInf) return 1.0;
    return std::pow(1.0 - std::exp2(-dim * (tau - inv(p)) * q), -1.0 / q);
}

EquivalenceReport check_theorem1_f(const CubeSequence& t, double s, double tau, double p, double q, double tol) {
    if (p == kInf) throw ParameterError("theorem-1 F check: p must be finite");
    theorem1_range(tau, p, q, "theorem-1 F check");
    return theorem1_common(t, s, tau, p, q, tol, TypeVariant::f_type, true, "theorem1_f");
}

EquivalenceReport check_theorem1_b(const CubeSequence& t, double s, double tau, double p, double q, double tol) {
    theorem1_range(tau, p, q, "theorem-1 B check");
    return theorem1_common(t, s, tau, p, q, tol, TypeVariant::b_type, true, "theorem1_b");
}

EquivalenceReport check_theorem2(const CubeSequence& t, double s, double tau, double p, double q, TypeVariant variant,
                                 double tol) {
    for (const auto& cube : t.tree().nodes()) {
        if (cube.level() < 0) {
            throw ParameterError("theorem-2 check: support cube " + cube.to_string() + " lies at a negative level");
        }
    }
    if (variant == TypeVariant::f_type && p == kInf) throw ParameterError("theorem-2 F check: p must be finite");
    theorem1_range(tau, p, q, "theorem-2 check");
    return theorem1_common(t, s, tau, p, q, tol, variant, false,
                           variant == TypeVariant::f_type ? "theorem2_f" : "theorem2_b");
}

EquivalenceReport check_holder_embeddings(const CubeSequence& t, double s, double tau, double p, double q, double tol) {
    if (!(q > p)) throw ParameterError("Hoelder embedding check: need q in (p, inf]");
    if (p == kInf) throw ParameterError("Hoelder embedding check: p must be finite");
    double shifted = tau + inv(q) - inv(p);
    if (shifted < -1e-12) throw ParameterError("Hoelder embedding check: need tau + 1/q - 1/p >= 0");
    shifted = std::max(shifted, 0.0);
    const NormParams np{s, tau, p, q, true};
    const NormParams big{s, shifted, q, q, true};
    const double rhs = b_type_norm(t, big).log2_value;
    auto r = make_report("holder", 0.0, 1.0, tol);
    record_log_ratio(r, f_type_norm(t, np).log2_value, rhs);
    record_log_ratio(r, b_type_norm(t, np).log2_value, rhs);
    return r;
}

EquivalenceReport check_prop3(const CubeSequence& t, double s, double p, double q, double r, double tol) {
    if (r < 0) throw ParameterError("identity check: r must be >= 0");
    auto rep = make_report("prop3", 1.0, 1.0, tol);
    if (q < kInf) {
        const NormParams fp{s, r / q, q, q, true};
        record_log_ratio(rep, cmo_norm(t, s, q, r).log2_value, f_type_norm(t, fp).log2_value);
    } else {
        // q = inf: both sides reduce to sup_Q w_Q
        record_log_ratio(rep, cmo_norm(t, s, q, r).log2_value, f_inf_inf_norm(t, s).log2_value);
    }
    const NormParams bp{s, inv(p), p, q, true};
    record_log_ratio(rep, bbmo_norm(t, s, p, q).log2_value, b_type_norm(t, bp).log2_value);
    return rep;
}

CubeSequence sweep_sample(const SweepConfig& config, std::size_t index) {
    if (config.dims.empty()) throw ParameterError("sweep needs at least one dimension");
    if (config.min_depth < 0 || config.max_depth < config.min_depth) throw ParameterError("sweep depth range is empty");
    const std::uint64_t sample_seed = derive_seed(config.seed, index);
    std::mt19937_64 rng(sample_seed);
    std::uniform_int_distribution<int> depth(config.min_depth, config.max_depth);
    const int dim = config.dims[index % config.dims.size()];
    const int d = depth(rng);
    return random_sequence(DyadicCube::unit(dim), d, derive_seed(sample_seed, 1), config.generator);
}

SweepResult run_sweep(const SweepConfig& config, const SampleCheck& check) {
    std::vector<EquivalenceReport> per(config.samples);
    parallel_for(config.samples, [&](std::size_t i) { per[i] = check(sweep_sample(config, i), i); }, 2);
    SweepResult out;
    out.rows.reserve(per.size());
    for (std::size_t i = 0; i < per.size(); ++i) {
        if (i == 0) {
            out.report = per[i];
        } else {
            out.report.merge(per[i]);
        }
        out.rows.push_back({i, per[i].worst_ratio_low, per[i].worst_ratio_high});
    }
    return out;
}

}  // namespace dspaces
