#include "dspaces/classify.hpp"

#include <algorithm>

#include "dspaces/errors.hpp"

namespace dspaces {

namespace {

const Exponent kZero = Exponent::exact(0);
const Exponent kOne = Exponent::exact(1);

// Records a warning whenever a float tolerance decided a comparison.
class Comparer {
public:
    explicit Comparer(std::vector<std::string>& warnings) : warnings_(warnings) {}

    int operator()(const Exponent& a, const Exponent& b, const std::string& what) {
        const Comparison c = compare(a, b);
        if (c.inexact && c.sign == 0) {
            warnings_.push_back(what + " decided with tolerance " + std::to_string(kBoundaryTolerance) +
                                " on inexact input (" + a.to_string() + " vs " + b.to_string() + ")");
        }
        return c.sign;
    }

private:
    std::vector<std::string>& warnings_;
};

std::string dot(const std::string& letter) { return letter == "F" ? "Ḟ" : "Ḃ"; }

ClassificationReport concrete(SpaceVerdict v, std::string space, TargetParams params, std::string rule) {
    ClassificationReport r;
    r.verdict = v;
    r.space = std::move(space);
    r.target_params = std::move(params);
    r.rule = std::move(rule);
    return r;
}

ClassificationReport inclusion_only(SpaceVerdict v, std::string space, std::string rule) {
    ClassificationReport r;
    r.verdict = v;
    r.space = std::move(space);
    r.rule = std::move(rule);
    return r;
}

std::string name(const std::string& letter, const Exponent& s, const std::string& p, const std::string& q,
                 bool homogeneous, const std::optional<Exponent>& tau = std::nullopt) {
    std::string out = homogeneous ? dot(letter) : letter;
    out += "^{" + s.to_string();
    if (tau) out += "," + tau->to_string();
    out += "}_{" + p + "," + q + "}";
    return out;
}

ClassificationReport inf_inf(const std::string& letter, const Exponent& s_eff, bool homogeneous, std::string rule,
                             SpaceVerdict v) {
    auto r = concrete(v, name(letter, s_eff, "inf", "inf", homogeneous), {{"s_eff", s_eff}}, std::move(rule));
    if (!homogeneous && s_eff.value() > 0) {
        r.notes.push_back("B^{" + s_eff.to_string() + "}_{inf,inf} is the Hoelder-Zygmund space of order " +
                          s_eff.to_string() + " (Remark 6)");
    }
    return r;
}

ClassificationReport classify_f(const SpaceDescriptor& d, Comparer& cmp) {
    const Exponent inv_p = d.p.reciprocal();
    const bool hom = d.homogeneous;
    const int tau_vs_0 = cmp(d.tau, kZero, "tau = 0");
    if (tau_vs_0 < 0) {
        return inclusion_only(SpaceVerdict::trivial_polynomials, "P (polynomials)", "Prop 1(iv)");
    }
    if (tau_vs_0 == 0) {
        return concrete(SpaceVerdict::classical_F, name("F", d.s, d.p.to_string(), d.q.to_string(), hom),
                        {{"s", d.s}, {"p", d.p}, {"q", d.q}}, "Prop 1(i)");
    }
    const int tau_vs_inv_p = cmp(d.tau, inv_p, "tau = 1/p");
    const bool q_inf = d.q.is_inf();
    if (tau_vs_inv_p < 0) {
        const Exponent u = (inv_p - d.tau).reciprocal();
        const std::string morrey = "Ė^{" + d.s.to_string() + "}_{" + u.to_string() + "," + d.p.to_string() +
                                   "," + d.q.to_string() + "}";
        // Q_alpha = ḟ^{alpha,1/2-alpha/n}_{2,2} for alpha in (0, min{1, n/2})
        const Exponent two = Exponent::exact(2);
        const Exponent n = Exponent::exact(d.dim);
        if (hom && cmp(d.p, two, "p = 2") == 0 && cmp(d.q, two, "q = 2") == 0 &&
            cmp(d.tau, Exponent::exact(1, 2) - d.s / n, "tau = 1/2 - s/n") == 0 && cmp(d.s, kZero, "s > 0") > 0 &&
            cmp(d.s, d.dim >= 2 ? kOne : Exponent::exact(1, 2), "s < min{1, n/2}") < 0) {
            auto r = concrete(SpaceVerdict::q_alpha, "Q_{" + d.s.to_string() + "}", {{"alpha", d.s}}, "Prop 1(v)");
            r.notes.push_back("also " + morrey + " with 1/u = 1/p - tau (Prop 1(vi))");
            return r;
        }
        auto r = concrete(SpaceVerdict::morrey_E, morrey, {{"s", d.s}, {"u", u}, {"p", d.p}, {"q", d.q}}, "Prop 1(vi)");
        if (!hom) r.notes.push_back("inhomogeneous analogue of the homogeneous identification");
        return r;
    }
    if (tau_vs_inv_p == 0 && !q_inf) {
        auto r = concrete(SpaceVerdict::F_inf_q, name("F", d.s, "inf", d.q.to_string(), hom), {{"s", d.s}, {"q", d.q}},
                          "Prop 1(ii)");
        return r;
    }
    const Exponent s_eff = d.s + Exponent::exact(d.dim) * (d.tau - inv_p);
    auto r = inf_inf("F", s_eff, hom, hom ? "Theorem 1(i)" : "Theorem 2(i)", SpaceVerdict::F_inf_inf);
    if (tau_vs_inv_p == 0) r.notes.push_back("at tau = 1/p, q = inf this is also the Prop 1(ii) space");
    if (!q_inf) {
        r.notes.push_back("= CMO^{" + d.s.to_string() + "," + d.q.to_string() + "}_{" +
                          cmo_param_of(d.tau, d.p, d.q).to_string() + "} (Corollary 4(i))");
    }
    return r;
}

ClassificationReport classify_b(const SpaceDescriptor& d, Comparer& cmp) {
    const Exponent inv_p = d.p.reciprocal();
    const bool hom = d.homogeneous;
    const int tau_vs_0 = cmp(d.tau, kZero, "tau = 0");
    if (tau_vs_0 < 0) {
        return inclusion_only(SpaceVerdict::trivial_polynomials, "P (polynomials)", "Prop 1(iv)");
    }
    if (tau_vs_0 == 0) {
        return concrete(SpaceVerdict::classical_B, name("B", d.s, d.p.to_string(), d.q.to_string(), hom),
                        {{"s", d.s}, {"p", d.p}, {"q", d.q}}, "Prop 1(i)");
    }
    const int tau_vs_inv_p = cmp(d.tau, inv_p, "tau = 1/p");
    const bool q_inf = d.q.is_inf();
    if (tau_vs_inv_p > 0 || (tau_vs_inv_p == 0 && q_inf)) {
        const Exponent s_eff = d.s + Exponent::exact(d.dim) * (d.tau - inv_p);
        std::string rule = tau_vs_inv_p == 0 ? "Corollary 2" : (hom ? "Theorem 1(ii)" : "Theorem 2(ii)");
        auto r = inf_inf("B", s_eff, hom, std::move(rule), SpaceVerdict::B_inf_inf);
        if (!q_inf) {
            r.notes.push_back("= CMO^{" + d.s.to_string() + "," + d.q.to_string() + "}_{" +
                              cmo_param_of(d.tau, d.p, d.q).to_string() + "} (Corollary 4(ii))");
        }
        return r;
    }
    if (tau_vs_inv_p == 0) {
        auto r = inclusion_only(SpaceVerdict::strict_superset_B_inf_q,
                                "strict superset of " + name("B", d.s, "inf", d.q.to_string(), hom), "Prop 1(iii)");
        const std::string self = name("B", d.s, d.p.to_string(), d.q.to_string(), hom, inv_p);
        const std::string other = name("B", d.s, d.q.to_string(), d.q.to_string(), hom, d.q.reciprocal());
        r.notes.push_back(name("B", d.s, "inf", d.q.to_string(), hom) + " is a proper subspace of " + self +
                          " (strict)");
        if (cmp(d.p, d.q, "p vs q") >= 0) {
            r.notes.push_back(self + " is contained in " + other + " since p >= q (strictness unknown)");
        }
        if (cmp(d.p, d.q, "p vs q") <= 0) {
            r.notes.push_back(other + " is contained in " + self + " since p <= q (strictness unknown)");
        }
        r.notes.push_back("unlike the F scale, no coincidence with " + name("B", d.s, "inf", d.q.to_string(), hom) +
                          " (Remark 4)");
        return r;
    }
    // 0 < tau < 1/p
    const Exponent u = (inv_p - d.tau).reciprocal();
    const std::string morrey = "Ṅ^{" + d.s.to_string() + "}_{" + u.to_string() + "," + d.p.to_string() + "," +
                               d.q.to_string() + "}";
    if (q_inf) {
        return concrete(SpaceVerdict::morrey_N, morrey, {{"s", d.s}, {"u", u}, {"p", d.p}}, "Prop 1(vi)");
    }
    auto r = inclusion_only(SpaceVerdict::morrey_N_superset, "strict superset of " + morrey, "Prop 1(vi)");
    r.notes.push_back(morrey + " is a proper subspace of " +
                      name("B", d.s, d.p.to_string(), d.q.to_string(), hom, d.tau) + ", 1/u = 1/p - tau");
    return r;
}

}  // namespace

std::string to_string(SpaceVerdict v) {
    switch (v) {
        case SpaceVerdict::trivial_polynomials: return "trivial_polynomials";
        case SpaceVerdict::classical_F: return "classical_F";
        case SpaceVerdict::classical_B: return "classical_B";
        case SpaceVerdict::F_inf_q: return "F_inf_q";
        case SpaceVerdict::F_inf_inf: return "F_inf_inf";
        case SpaceVerdict::B_inf_inf: return "B_inf_inf";
        case SpaceVerdict::morrey_E: return "morrey_E";
        case SpaceVerdict::morrey_N: return "morrey_N";
        case SpaceVerdict::morrey_N_superset: return "morrey_N_superset";
        case SpaceVerdict::strict_superset_B_inf_q: return "strict_superset_B_inf_q";
        case SpaceVerdict::q_alpha: return "q_alpha";
        case SpaceVerdict::no_known_coincidence: return "no_known_coincidence";
    }
    return "unknown";
}

void validate(const SpaceDescriptor& d) {
    if (d.dim < 1) throw ParameterError("dimension must be >= 1");
    if (d.s.is_inf()) throw ParameterError("s must be finite");
    const bool needs_p = d.family != Family::CMO;
    const bool needs_tau = d.family == Family::F_type || d.family == Family::B_type;
    if (needs_p && !(d.p.value() > 0)) throw ParameterError("p must be in (0, inf] (Definition 1)");
    if (!(d.q.value() > 0)) throw ParameterError("q must be in (0, inf] (Definition 1)");
    if (needs_tau && d.tau.is_inf()) throw ParameterError("tau must be finite");
    if (d.family == Family::CMO && d.r.is_inf()) throw ParameterError("r must be finite (Definition 4(i))");
    if (d.family == Family::F_type && d.p.is_inf()) {
        throw ParameterError("F-type spaces need p < inf (Definition 1(i))");
    }
    if (d.family == Family::F_inf_inf || d.family == Family::B_inf_inf) {
        throw ParameterError("the classifier takes F_type, B_type, CMO or BBMO descriptors");
    }
}

ClassificationReport classify(const SpaceDescriptor& d) {
    validate(d);
    if (d.family == Family::CMO) return classify_cmo(d.s, d.q, d.r, d.dim, d.homogeneous);
    std::vector<std::string> warnings;
    Comparer cmp(warnings);
    ClassificationReport r;
    if (d.family == Family::BBMO) {
        SpaceDescriptor b = d;
        b.family = Family::B_type;
        b.tau = d.p.reciprocal();
        r = classify_b(b, cmp);
        r.notes.insert(r.notes.begin(), "BBMO^{s,q}_p = " + name("B", d.s, d.p.to_string(), d.q.to_string(),
                                                                 d.homogeneous, b.tau) + " (Prop 3(ii))");
    } else if (d.family == Family::F_type) {
        r = classify_f(d, cmp);
    } else {
        r = classify_b(d, cmp);
    }
    r.warnings = std::move(warnings);
    return r;
}

ClassificationReport classify_cmo(const Exponent& s, const Exponent& q, const Exponent& r, int dim,
                                  bool homogeneous) {
    if (!(q.value() > 0)) throw ParameterError("q must be in (0, inf] (Definition 4(i))");
    if (r.is_inf()) throw ParameterError("r must be finite (Definition 4(i))");
    if (q.is_inf()) {
        std::vector<std::string> warnings;
        Comparer cmp(warnings);
        ClassificationReport out;
        if (cmp(r, kZero, "r >= 0") >= 0) {
            out = inf_inf("F", s, homogeneous, cmp(r, kOne, "r >= 1") >= 0 ? "Corollary 3" : "Prop 3(i)",
                          SpaceVerdict::F_inf_inf);
            out.notes.push_back("q = inf: CMO^{s,inf}_r reduces to the sup of the weighted coefficients");
        } else {
            out = inclusion_only(SpaceVerdict::no_known_coincidence, "CMO^{" + s.to_string() + ",inf}_{" +
                                 r.to_string() + "}", "Prop 3(i)");
            out.notes.push_back("no identification is stated for r < 0 with q = inf");
        }
        out.warnings = std::move(warnings);
        return out;
    }
    SpaceDescriptor f;
    f.family = Family::F_type;
    f.s = s;
    f.tau = r / q;
    f.p = q;
    f.q = q;
    f.dim = dim;
    f.homogeneous = homogeneous;
    auto out = classify(f);
    if (out.verdict == SpaceVerdict::morrey_E) out.rule = "Prop 3(i)";
    if (out.verdict == SpaceVerdict::F_inf_inf) out.rule = "Corollary 3";
    out.notes.insert(out.notes.begin(), "CMO^{s,q}_r = " + name("F", s, q.to_string(), q.to_string(), homogeneous,
                                                              f.tau) + " (Prop 3(i))");
    return out;
}

Exponent cmo_param_of(const Exponent& tau, const Exponent& p, const Exponent& q) {
    if (q.is_inf()) throw ParameterError("r = tau q + 1 - q/p is undefined for q = inf (Corollary 4)");
    return tau * q + Exponent::exact(1) - q * p.reciprocal();
}

Refutation refute_claim(const Exponent& s, const Exponent& tau, const Exponent& p, const Exponent& q, int dim,
                        const std::vector<int>& depths) {
    if (!(p.value() > 0) || p.is_inf()) throw ParameterError("refutation needs p in (0, inf)");
    if (!(q.value() > 0)) throw ParameterError("refutation needs q in (0, inf]");
    const Exponent inv_p = p.reciprocal();
    const Comparison c = compare(tau, inv_p);
    if (c.sign > 0 || (c.sign == 0 && q.is_inf())) {
        throw ParameterError("the equivalence holds for these parameters (Corollary 4): tau = " + tau.to_string() +
                             (c.sign > 0 ? " > " : " >= ") + "1/p = " + inv_p.to_string());
    }
    if (compare(q, p).sign <= 0) throw ParameterError("Prop 4 requires q > p");

    WitnessParams wp{s.value(), p.value(), q.value(), tau.value(), dim};
    check_witness_hypotheses(wp, WitnessTarget::f_type);

    SpaceDescriptor target;
    target.family = Family::F_type;
    target.s = s;
    target.tau = tau;
    target.p = p;
    target.q = q;
    target.dim = dim;
    SpaceDescriptor reference = target;
    reference.family = Family::B_type;
    reference.tau = tau + q.reciprocal() - inv_p;
    reference.p = q;

    return Refutation{certify_prop4(wp, WitnessTarget::f_type, depths),
                      certify_prop4(wp, WitnessTarget::b_type, depths), classify(target), classify(reference)};
}

}  // namespace dspaces
