#include "dspaces/seqspace.hpp"

#include <algorithm>
#include <cmath>

#include "dspaces/errors.hpp"
#include "dspaces/log_sum.hpp"
#include "dspaces/parallel.hpp"

namespace dspaces {

namespace {

bool is_inf(double x) { return x == kInf; }

void require_positive(double v, const char* name, bool allow_inf, const char* where) {
    if (!(v > 0) || std::isnan(v) || (!allow_inf && is_inf(v))) {
        throw ParameterError(std::string(where) + ": " + name + " must be in (0," + (allow_inf ? "inf]" : "inf)") +
                             ", got " + std::to_string(v));
    }
}

void require_finite(double v, const char* name, const char* where) {
    if (!std::isfinite(v)) throw ParameterError(std::string(where) + ": " + name + " must be finite");
}

void check_f(const NormParams& np, bool allow_negative_tau) {
    require_finite(np.s, "s", "F-type norm");
    require_positive(np.p, "p", false, "F-type norm (Definition 3, p < inf)");
    require_positive(np.q, "q", true, "F-type norm");
    require_finite(np.tau, "tau", "F-type norm");
    if (!allow_negative_tau && np.tau < 0) {
        throw ParameterError("F-type norm: tau must be >= 0 (tau < 0 gives the polynomial space, see classify)");
    }
}

void check_b(const NormParams& np, bool allow_negative_tau) {
    require_finite(np.s, "s", "B-type norm");
    require_positive(np.p, "p", true, "B-type norm");
    require_positive(np.q, "q", true, "B-type norm");
    require_finite(np.tau, "tau", "B-type norm");
    if (!allow_negative_tau && np.tau < 0) {
        throw ParameterError("B-type norm: tau must be >= 0 (tau < 0 gives the polynomial space, see classify)");
    }
}

// Depth-first walk over every node inside P.
template <class Visit>
void for_each_node_in(const SupportTree& tree, const DyadicCube& p, Visit&& visit) {
    std::vector<std::size_t> stack = tree.maximal_nodes_in(p);
    while (!stack.empty()) {
        const std::size_t i = stack.back();
        stack.pop_back();
        visit(i);
        for (auto c : tree.children(i)) stack.push_back(c);
    }
}

double f_value(const SupportTree& tree, const std::vector<double>& lw, const NormParams& np, const DyadicCube& p) {
    const bool q_inf = is_inf(np.q);
    auto term = [&](std::size_t i) { return q_inf ? lw[i] : np.q * lw[i]; };
    // acc = log2 Σ_{active} w^q, or log2 max w at q = inf
    struct Item {
        std::size_t node;
        double acc;
    };
    std::vector<Item> stack;
    for (auto top : tree.maximal_nodes_in(p)) stack.push_back({top, term(top)});
    Log2Sum total;
    const double power = q_inf ? np.p : np.p / np.q;
    while (!stack.empty()) {
        const Item it = stack.back();
        stack.pop_back();
        if (it.acc != kNegInf) total.add(tree.shell_log2_measure(it.node) + power * it.acc);
        for (auto c : tree.children(it.node)) {
            const double t = term(c);
            stack.push_back({c, q_inf ? std::max(it.acc, t) : log2_add(it.acc, t)});
        }
    }
    if (total.empty()) return kNegInf;
    return -np.tau * p.volume_log2() + total.value() / np.p;
}

// log2 of (∫_P [Σ_{ℓ(Q)=2^{-j}} w_Q χ_Q]^p)^{1/p} for each level j >= level(P).
std::vector<double> per_level_lp(const SupportTree& tree, const std::vector<double>& lw, double p_exp,
                                 const DyadicCube& p) {
    const int levels = tree.root().level() + tree.max_depth() - p.level() + 1;
    std::vector<double> out(static_cast<std::size_t>(std::max(levels, 0)), kNegInf);
    if (is_inf(p_exp)) {
        for_each_node_in(tree, p, [&](std::size_t i) {
            auto& slot = out[static_cast<std::size_t>(tree.node(i).level() - p.level())];
            slot = std::max(slot, lw[i]);
        });
        return out;
    }
    std::vector<Log2Sum> sums(out.size());
    for_each_node_in(tree, p, [&](std::size_t i) {
        const auto& q = tree.node(i);
        sums[static_cast<std::size_t>(q.level() - p.level())].add(p_exp * lw[i] + q.volume_log2());
    });
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = sums[k].value() / p_exp;
    return out;
}

// log2 of the ℓ^q norm of per-level values.
double lq_of(const std::vector<double>& levels, double q) {
    if (is_inf(q)) {
        double m = kNegInf;
        for (double v : levels) m = std::max(m, v);
        return m;
    }
    Log2Sum total;
    for (double v : levels) total.add(q * v);
    return total.value() / q;
}

double b_value(const SupportTree& tree, const std::vector<double>& lw, const NormParams& np, const DyadicCube& p) {
    const double inner = lq_of(per_level_lp(tree, lw, np.p, p), np.q);
    if (inner == kNegInf) return kNegInf;
    return -np.tau * p.volume_log2() + inner;
}

template <class ValueAt>
NormValue sup_over_candidates(const SupportTree& tree, ValueAt&& value_at) {
    const auto& cands = tree.candidate_cubes();
    std::vector<double> vals(cands.size(), kNegInf);
    parallel_for(cands.size(), [&](std::size_t i) { vals[i] = value_at(cands[i]); });
    // candidates are sorted coarsest first, so strict > keeps the tie-break
    std::size_t best = 0;
    double best_val = kNegInf;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (vals[i] > best_val) {
            best_val = vals[i];
            best = i;
        }
    }
    return NormValue::from_log2(best_val, best_val == kNegInf ? tree.root() : cands[best]);
}

}  // namespace

std::string to_string(Family f) {
    switch (f) {
        case Family::F_type: return "F_type";
        case Family::B_type: return "B_type";
        case Family::CMO: return "CMO";
        case Family::BBMO: return "BBMO";
        case Family::F_inf_inf: return "F_inf_inf";
        case Family::B_inf_inf: return "B_inf_inf";
    }
    return "?";
}

Family parse_family(const std::string& name) {
    std::string s;
    for (char c : name) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (s == "f" || s == "f_type") return Family::F_type;
    if (s == "b" || s == "b_type") return Family::B_type;
    if (s == "cmo") return Family::CMO;
    if (s == "bbmo") return Family::BBMO;
    if (s == "finf" || s == "f_inf_inf") return Family::F_inf_inf;
    if (s == "binf" || s == "b_inf_inf") return Family::B_inf_inf;
    throw ParameterError("unknown family '" + name + "'");
}

NormValue NormValue::from_log2(double log2_value, DyadicCube at) {
    return NormValue{log2_value, log2_value == kNegInf ? 0.0 : std::exp2(log2_value), std::move(at)};
}

bool NormValue::is_zero() const { return log2_value == kNegInf; }

std::vector<double> log2_weights(const CubeSequence& t, double s, bool homogeneous) {
    const auto& tree = t.tree();
    const double n = tree.dim();
    std::vector<double> lw(tree.size());
    for (std::size_t i = 0; i < tree.size(); ++i) {
        const int j = tree.node(i).level();
        lw[i] = (!homogeneous && j < 0) ? kNegInf : j * (s + n / 2.0) + t.log2_magnitude(i);
    }
    return lw;
}

NormValue f_type_norm_local(const CubeSequence& t, const NormParams& params) {
    check_f(params, true);
    const auto lw = log2_weights(t, params.s, params.homogeneous);
    return sup_over_candidates(t.tree(), [&](const DyadicCube& p) { return f_value(t.tree(), lw, params, p); });
}

NormValue b_type_norm_local(const CubeSequence& t, const NormParams& params) {
    check_b(params, true);
    const auto lw = log2_weights(t, params.s, params.homogeneous);
    return sup_over_candidates(t.tree(), [&](const DyadicCube& p) { return b_value(t.tree(), lw, params, p); });
}

NormValue f_type_norm(const CubeSequence& t, const NormParams& params) {
    check_f(params, false);
    return f_type_norm_local(t, params);
}

NormValue b_type_norm(const CubeSequence& t, const NormParams& params) {
    check_b(params, false);
    return b_type_norm_local(t, params);
}

double f_type_value_at(const CubeSequence& t, const NormParams& params, const DyadicCube& p) {
    check_f(params, true);
    return f_value(t.tree(), log2_weights(t, params.s, params.homogeneous), params, p);
}

double b_type_value_at(const CubeSequence& t, const NormParams& params, const DyadicCube& p) {
    check_b(params, true);
    return b_value(t.tree(), log2_weights(t, params.s, params.homogeneous), params, p);
}

NormValue f_inf_inf_norm(const CubeSequence& t, double s_eff, bool homogeneous) {
    require_finite(s_eff, "s_eff", "inf,inf norm");
    const auto lw = log2_weights(t, s_eff, homogeneous);
    std::size_t best = 0;
    double best_val = kNegInf;
    for (std::size_t i = 0; i < lw.size(); ++i) {
        if (lw[i] > best_val) {
            best_val = lw[i];
            best = i;
        }
    }
    return NormValue::from_log2(best_val, best_val == kNegInf ? t.tree().root() : t.tree().node(best));
}

NormValue cmo_norm(const CubeSequence& t, double s, double q, double r, bool homogeneous) {
    require_finite(s, "s", "CMO norm");
    require_positive(q, "q", true, "CMO norm");
    require_finite(r, "r", "CMO norm");
    if (r < 0) throw ParameterError("CMO norm: r must be >= 0 (r < 0 is handled by classify)");
    const auto lw = log2_weights(t, s, homogeneous);
    const auto& tree = t.tree();
    return sup_over_candidates(tree, [&](const DyadicCube& p) {
        if (is_inf(q)) {
            double m = kNegInf;
            for_each_node_in(tree, p, [&](std::size_t i) { m = std::max(m, lw[i]); });
            return m;
        }
        // ∫_P Σ_Q [w_Q χ_Q]^q = Σ_Q w_Q^q |Q|
        Log2Sum sum;
        for_each_node_in(tree, p, [&](std::size_t i) { sum.add(q * lw[i] + tree.node(i).volume_log2()); });
        if (sum.empty()) return kNegInf;
        return (-r * p.volume_log2() + sum.value()) / q;
    });
}

NormValue bbmo_norm(const CubeSequence& t, double s, double p, double q, bool homogeneous) {
    require_finite(s, "s", "BBMO norm");
    require_positive(p, "p", true, "BBMO norm");
    require_positive(q, "q", true, "BBMO norm");
    const auto lw = log2_weights(t, s, homogeneous);
    const auto& tree = t.tree();
    const bool p_inf = is_inf(p);
    return sup_over_candidates(tree, [&](const DyadicCube& cube) {
        const int levels = tree.root().level() + tree.max_depth() - cube.level() + 1;
        std::vector<Log2Sum> sums(static_cast<std::size_t>(levels));
        std::vector<double> maxes(static_cast<std::size_t>(levels), kNegInf);
        for_each_node_in(tree, cube, [&](std::size_t i) {
            const auto& qc = tree.node(i);
            const auto v = static_cast<std::size_t>(qc.level() - cube.level());
            if (p_inf) {
                maxes[v] = std::max(maxes[v], lw[i]);
            } else {
                // (|Q|^{-s/n-1/2+1/p} |t_Q|)^p
                sums[v].add(p * (lw[i] + qc.volume_log2() / p));
            }
        });
        // log2 [|P|^{-1} Σ ...]^{1/p} per level
        std::vector<double> bracket(static_cast<std::size_t>(levels), kNegInf);
        for (std::size_t v = 0; v < bracket.size(); ++v) {
            bracket[v] = p_inf ? maxes[v] : (sums[v].empty() ? kNegInf : (sums[v].value() - cube.volume_log2()) / p);
        }
        return lq_of(bracket, q);
    });
}

void validate(const SpaceParams& sp) {
    const NormParams np = sp.as_norm_params();
    switch (sp.family) {
        case Family::F_type: check_f(np, false); break;
        case Family::B_type: check_b(np, false); break;
        case Family::CMO:
            require_finite(sp.s, "s", "CMO norm");
            require_positive(sp.q, "q", true, "CMO norm (Definition 4(i))");
            require_finite(sp.r, "r", "CMO norm");
            if (sp.r < 0) throw ParameterError("CMO norm (Definition 4(i)): r must be >= 0");
            break;
        case Family::BBMO:
            require_finite(sp.s, "s", "BBMO norm");
            require_positive(sp.p, "p", true, "BBMO norm (Definition 4(ii))");
            require_positive(sp.q, "q", true, "BBMO norm (Definition 4(ii))");
            break;
        case Family::F_inf_inf:
        case Family::B_inf_inf: require_finite(sp.s, "s", "inf,inf norm"); break;
    }
}

NormValue norm(const CubeSequence& t, const SpaceParams& sp) {
    validate(sp);
    switch (sp.family) {
        case Family::F_type: return f_type_norm(t, sp.as_norm_params());
        case Family::B_type: return b_type_norm(t, sp.as_norm_params());
        case Family::CMO: return cmo_norm(t, sp.s, sp.q, sp.r, sp.homogeneous);
        case Family::BBMO: return bbmo_norm(t, sp.s, sp.p, sp.q, sp.homogeneous);
        case Family::F_inf_inf:
        case Family::B_inf_inf: return f_inf_inf_norm(t, sp.s, sp.homogeneous);
    }
    throw ParameterError("unknown family");
}

}  // namespace dspaces
