#pragma once

#include <string>

#include "dspaces/dyadic.hpp"
#include "dspaces/sequence.hpp"

namespace dspaces {

enum class Family { F_type, B_type, CMO, BBMO, F_inf_inf, B_inf_inf };

std::string to_string(Family f);
/// "f", "b", "cmo", "bbmo", "finf", "binf" and the enum spellings.
Family parse_family(const std::string& name);

/// Parameters of the ḟ/ḃ-type sequence norms.  p and q may be +inf.
struct NormParams {
    double s = 0.0;
    double tau = 0.0;
    double p = 2.0;
    double q = 2.0;
    bool homogeneous = true;
};

/// A full parameter tuple.  CMO reads (s, q, r); BBMO reads (s, p, q);
/// the ∞,∞ families read s as the effective smoothness.
struct SpaceParams {
    Family family = Family::F_type;
    double s = 0.0;
    double tau = 0.0;
    double p = 2.0;
    double q = 2.0;
    double r = 0.0;
    bool homogeneous = true;

    NormParams as_norm_params() const { return {s, tau, p, q, homogeneous}; }
};

/// A norm in log2 form with a linear view and the cube attaining the outer sup.
struct NormValue {
    double log2_value = 0.0;
    double linear_value = 0.0;
    DyadicCube attained_at;

    static NormValue from_log2(double log2_value, DyadicCube at);
    bool is_zero() const;
};

/// log2 |Q|^{-s/n-1/2} |t_Q| for each node; levels below 0 are dropped
/// (set to -inf) for the inhomogeneous variant.
std::vector<double> log2_weights(const CubeSequence& t, double s, bool homogeneous = true);

// Triebel-Lizorkin-type norm: sup over P of |P|^{-tau} (∫_P (Σ_{Q⊆P} [w_Q χ_Q]^q)^{p/q})^{1/p},
// integrated exactly over the shell decomposition.  Requires p < inf, tau >= 0.
NormValue f_type_norm(const CubeSequence& t, const NormParams& params);
// Besov-type norm with the per-level reduction ∫_P [Σ a_Q χ_Q]^p = Σ a_Q^p |Q|.
NormValue b_type_norm(const CubeSequence& t, const NormParams& params);

/// Same suprema restricted to P inside the root, with any sign of tau.  These
/// are the truncated norms used by the witness towers, where the shifted tau
/// can be negative.
NormValue f_type_norm_local(const CubeSequence& t, const NormParams& params);
NormValue b_type_norm_local(const CubeSequence& t, const NormParams& params);

/// log2 of the inner expression at one cube P (P inside or containing the root).
double f_type_value_at(const CubeSequence& t, const NormParams& params, const DyadicCube& p);
double b_type_value_at(const CubeSequence& t, const NormParams& params, const DyadicCube& p);

/// sup_Q |Q|^{-s_eff/n-1/2} |t_Q|; serves both ḟ^{s_eff}_{∞,∞} and ḃ^{s_eff}_{∞,∞}.
NormValue f_inf_inf_norm(const CubeSequence& t, double s_eff, bool homogeneous = true);
inline NormValue b_inf_inf_norm(const CubeSequence& t, double s_eff, bool homogeneous = true) {
    return f_inf_inf_norm(t, s_eff, homogeneous);
}

/// sup_P {|P|^{-r} ∫_P Σ_{Q⊆P} [w_Q χ_Q]^q}^{1/q}; at q = inf this is sup_Q w_Q.
NormValue cmo_norm(const CubeSequence& t, double s, double q, double r, bool homogeneous = true);
/// sup_P {Σ_v [|P|^{-1} Σ_{Q⊆P, ℓ(Q)=2^{-v}} (|Q|^{-s/n-1/2+1/p}|t_Q|)^p]^{q/p}}^{1/q}.
NormValue bbmo_norm(const CubeSequence& t, double s, double p, double q, bool homogeneous = true);

/// Dispatch on params.family; validates the tuple.
NormValue norm(const CubeSequence& t, const SpaceParams& params);

/// Throws ParameterError when the tuple is outside the defining range.
void validate(const SpaceParams& params);

}  // namespace dspaces
