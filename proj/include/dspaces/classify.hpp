#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dspaces/exponent.hpp"
#include "dspaces/seqspace.hpp"
#include "dspaces/witness.hpp"

namespace dspaces {

/// A space to classify.  F_type/B_type read (s, tau, p, q); CMO reads
/// (s, q, r); BBMO reads (s, p, q).  tau and r may have any sign.
struct SpaceDescriptor {
    Family family = Family::F_type;
    Exponent s;
    Exponent tau;
    Exponent p = Exponent::exact(2);
    Exponent q = Exponent::exact(2);
    Exponent r;
    bool homogeneous = true;
    int dim = 1;
};

enum class SpaceVerdict {
    trivial_polynomials,
    classical_F,
    classical_B,
    F_inf_q,
    F_inf_inf,
    B_inf_inf,
    morrey_E,
    morrey_N,
    morrey_N_superset,
    strict_superset_B_inf_q,
    q_alpha,
    no_known_coincidence,
};

std::string to_string(SpaceVerdict v);

using TargetParams = std::vector<std::pair<std::string, Exponent>>;

struct ClassificationReport {
    SpaceVerdict verdict = SpaceVerdict::no_known_coincidence;
    std::string space;                         // readable name of the coincident space
    std::optional<TargetParams> target_params;  // present iff the verdict names a concrete space
    std::string rule;                          // citation tag
    std::vector<std::string> notes;
    std::vector<std::string> warnings;  // boundary decisions taken with a float tolerance
};

/// Throws ParameterError for malformed descriptors (non-positive p/q,
/// infinite s/tau/r, F with p = inf, dim < 1).
void validate(const SpaceDescriptor& d);

ClassificationReport classify(const SpaceDescriptor& d);

/// CMO^{s,q}_r, classified through tau = r/q, p = q when q < inf.
ClassificationReport classify_cmo(const Exponent& s, const Exponent& q, const Exponent& r, int dim = 1,
                                  bool homogeneous = true);

/// r = tau q + 1 - q/p; q must be finite.
Exponent cmo_param_of(const Exponent& tau, const Exponent& p, const Exponent& q);

/// Non-equivalence certificate for ḟ^{s,tau}_{p,q} against ḃ^{s,tau+1/q-1/p}_{q,q}.
struct Refutation {
    Prop4Certificate f_certificate;  // ḟ target
    Prop4Certificate b_certificate;  // ḃ target
    ClassificationReport target;     // ḟ^{s,tau}_{p,q}
    ClassificationReport reference;  // ḃ^{s,tau+1/q-1/p}_{q,q}
    bool certified() const {
        return f_certificate.certified() && b_certificate.certified();
    }
};

/// Rejects tuples where the equivalence actually holds
/// and tuples outside the counterexample hypotheses.
Refutation refute_claim(const Exponent& s, const Exponent& tau, const Exponent& p, const Exponent& q, int dim,
                        const std::vector<int>& depths);

}  // namespace dspaces
