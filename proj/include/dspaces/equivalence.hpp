#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dspaces/sequence.hpp"
#include "dspaces/seqspace.hpp"

namespace dspaces {

/// Two-sided check lower_constant * B <= A <= upper_constant * B, recorded
/// through the ratio A/B.  Zero sequences count as vacuous passes and do not
/// add to `samples`.
struct EquivalenceReport {
    std::string check;
    bool lower_ok = true;
    bool upper_ok = true;
    double lower_constant = 1.0;
    double upper_constant = 1.0;
    double worst_ratio_low = 1.0;
    double worst_ratio_high = 1.0;
    std::size_t samples = 0;
    double tolerance = 1e-9;

    bool ok() const { return lower_ok && upper_ok; }
    /// Folds one measured ratio in and refreshes the flags.
    void record(double ratio);
    void merge(const EquivalenceReport& other);
};

inline constexpr double kEquivalenceTolerance = 1e-9;
inline constexpr double kIdentityTolerance = 1e-12;

/// (1 - 2^{-n(tau-1/p) q})^{-1/q} for q < inf, 1 for q = inf.
double theorem1_constant(int dim, double tau, double p, double q);

/// ḟ^{s,tau}_{p,q} against ḟ^{s+n(tau-1/p)}_{∞,∞}; needs p < inf and
/// tau > 1/p (q < inf) or tau >= 1/p (q = inf).
EquivalenceReport check_theorem1_f(const CubeSequence& t, double s, double tau, double p, double q,
                                   double tol = kEquivalenceTolerance);
/// ḃ^{s,tau}_{p,q} against ḃ^{s+n(tau-1/p)}_{∞,∞}; p may be inf.
EquivalenceReport check_theorem1_b(const CubeSequence& t, double s, double tau, double p, double q,
                                   double tol = kEquivalenceTolerance);

/// ḟ^{s,tau}_{p,q} <= ḃ^{s,tau+1/q-1/p}_{q,q} and ḃ^{s,tau}_{p,q} <= ḃ^{s,tau+1/q-1/p}_{q,q},
/// both with constant 1, for q in (p, inf] and tau + 1/q - 1/p >= 0.
EquivalenceReport check_holder_embeddings(const CubeSequence& t, double s, double tau, double p, double q,
                                          double tol = kIdentityTolerance);

/// CMO^{s,q}_r = ḟ^{s,r/q}_{q,q} and ḂBMO^{s,q}_p = ḃ^{s,1/p}_{p,q}, both exactly.
EquivalenceReport check_prop3(const CubeSequence& t, double s, double p, double q, double r,
                              double tol = kIdentityTolerance);

enum class TypeVariant { f_type, b_type };

/// Inhomogeneous analogue of the theorem-1 checks.  Support must sit at levels >= 0.
EquivalenceReport check_theorem2(const CubeSequence& t, double s, double tau, double p, double q,
                                 TypeVariant variant = TypeVariant::f_type, double tol = kEquivalenceTolerance);

/// Seeded sweep over random sequences.  Sample i uses dimension
/// dims[i % dims.size()], a depth drawn from [min_depth, max_depth] and the
/// random-subtree generator, all from derive_seed(seed, i).
struct SweepConfig {
    std::size_t samples = 1000;
    std::uint64_t seed = 1;
    std::vector<int> dims{1, 2};
    int min_depth = 0;
    int max_depth = 10;
    RandomSequenceOptions generator{};
};

struct SampleRatio {
    std::size_t sample_id = 0;
    double ratio_low = 1.0;
    double ratio_high = 1.0;
};

struct SweepResult {
    EquivalenceReport report;
    std::vector<SampleRatio> rows;
};

CubeSequence sweep_sample(const SweepConfig& config, std::size_t index);

using SampleCheck = std::function<EquivalenceReport(const CubeSequence&, std::size_t)>;
SweepResult run_sweep(const SweepConfig& config, const SampleCheck& check);

}  // namespace dspaces
