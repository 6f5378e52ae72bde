#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dspaces/sequence.hpp"
#include "dspaces/seqspace.hpp"

namespace dspaces {

/// Truncated tower R_j = [0,2^{-j})^n, j = 0..J, with
/// t_{R_j} = |R_j|^{s/n+1/2+tau-1/p}.
struct TowerWitness {
    double s = 0.0;
    double tau = 0.0;
    double p = 1.0;
    int dim = 1;
    int depth = 0;
    CubeSequence sequence;
};

TowerWitness build_tower(double s, double tau, double p, int dim, int depth);

/// Tower with log2 t_{R_j} = -j n * exponent.  build_tower uses
/// exponent = s/n + 1/2 + tau - 1/p.
CubeSequence tower_sequence(int dim, int depth, double exponent);

enum class Verdict { bounded, diverges };
std::string to_string(Verdict v);

struct GrowthReport {
    std::string space;
    std::vector<int> depths;
    std::vector<double> log2_values;
    double fitted_exponent = 0.0;                // slope of log2 norm against log2 J
    std::optional<double> theoretical_exponent;  // known polynomial growth rate, if any
    std::optional<double> log2_bound;            // known uniform bound, if any
    bool within_bound = true;
    Verdict verdict = Verdict::bounded;
};

/// Fits the growth exponent and decides the verdict.  With a known bound the
/// verdict is "bounded" iff every value respects it; otherwise "diverges"
/// needs positive growth beyond rounding and a fitted exponent of at least
/// 0.8x the theoretical one when known.
GrowthReport make_growth_report(std::string space, std::vector<int> depths, std::vector<double> log2_values,
                                std::optional<double> theoretical_exponent, std::optional<double> log2_bound);

/// Which target space the ḃ^{s,tau+1/q-1/p}_{q,q} reference is compared with.
enum class WitnessTarget { f_type, b_type };

struct WitnessParams {
    double s = 0.0;
    double p = 1.0;
    double q = 2.0;  // may be +inf
    double tau = 0.5;
    int dim = 1;
};

struct Prop4Certificate {
    WitnessParams params;
    WitnessTarget target = WitnessTarget::f_type;
    GrowthReport reference;  // ḃ^{s,tau+1/q-1/p}_{q,q}
    GrowthReport target_report;
    bool certified() const {
        return reference.verdict == Verdict::diverges && target_report.verdict == Verdict::bounded;
    }
};

/// Throws ParameterError unless q in (p, inf) with tau in (0, 1/p-1/q], or
/// q = inf with tau in (0, 1/p) (f target) / [0, 1/p) (b target).
void check_witness_hypotheses(const WitnessParams& wp, WitnessTarget target);

/// Uniform bound on the target norm of every truncated tower:
/// (1-2^{-n tau p})^{-1/p} for the f target, (1-2^{-n tau q})^{-1/q} for the b target.
double witness_target_log2_bound(const WitnessParams& wp, WitnessTarget target);

/// Closed form of the truncated reference norm,
/// sup_k 2^{k n a'} (Σ_{j=k}^J 2^{-j n a})^{1/q} with a' = tau+1/q-1/p, a = q a'.
double witness_reference_log2_closed_form(const WitnessParams& wp, int depth);

std::vector<int> default_witness_depths(int dim);

Prop4Certificate certify_prop4(const WitnessParams& wp, WitnessTarget target, const std::vector<int>& depths);

}  // namespace dspaces
