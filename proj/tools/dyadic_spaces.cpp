// Command-line front end: norms, witnesses, equivalence checks, classification,
// parameter sweeps and phi-transform analysis.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "dspaces/analyze.hpp"
#include "dspaces/classify.hpp"
#include "dspaces/equivalence.hpp"
#include "dspaces/errors.hpp"
#include "dspaces/exponent.hpp"
#include "dspaces/log_sum.hpp"
#include "dspaces/parallel.hpp"
#include "dspaces/report.hpp"
#include "dspaces/seqspace.hpp"
#include "dspaces/sequence.hpp"
#include "dspaces/witness.hpp"

using nlohmann::json;
using namespace dspaces;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitIo = 2;
constexpr int kExitParams = 3;

// Raw option text; parsed after CLI11 so literal errors map to exit code 3.
struct Options {
    std::string family = "f";
    std::string s = "0";
    std::string tau = "0";
    std::string p = "2";
    std::string q = "2";
    std::string r = "0";
    std::string in;
    std::string sidecar;
    std::string out;
    std::string format = "json";
    std::string check = "theorem1-f";
    std::string target = "both";
    std::string function = "random-bandlimited";
    std::string coeff_out;
    std::vector<int> depths;
    std::vector<int> dims{1, 2};
    std::vector<std::string> taus{"-1/4", "0", "1/4", "1/2", "1", "3/2", "2"};
    std::vector<std::string> ps{"1/2", "1", "2"};
    std::vector<std::string> qs{"1/2", "1", "2", "inf"};
    std::vector<std::string> families{"f", "b"};
    int dim = 1;
    int depth = 10;
    int log_resolution = 9;
    int band_level = 4;
    int max_level = -1;
    std::size_t samples = 1000;
    std::size_t sweep_samples = 50;
    std::uint64_t seed = 1;
    double tol = -1.0;
    bool inhomogeneous = false;
    bool tower = false;
    unsigned threads = 0;
};

Exponent param(const std::string& text, const char* name) {
    try {
        return Exponent::parse(text);
    } catch (const ParseError& e) {
        throw ParameterError(std::string("--") + name + ": " + e.what());
    }
}

double value(const std::string& text, const char* name) { return param(text, name).value(); }

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw ParseError("cannot write " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

void emit_json(const Options& o, const json& config, json result) {
    Output out(o.out);
    json doc{{"config", config}, {"result", std::move(result)}};
    out.stream() << doc.dump(2) << '\n';
}

void csv_header(std::ostream& os, const json& config) { os << "# config: " << config.dump() << "\r\n"; }

void check_format(const Options& o) {
    if (o.format != "json" && o.format != "csv") throw ParameterError("--format must be json or csv");
}

CubeSequence load_sequence(const std::string& path) {
    if (path.empty()) throw ParameterError("--in is required");
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return read_sequence_jsonl(in);
}

json exponent_echo(const std::string& text, const char* name) { return param(text, name).to_string(); }

// ---------------------------------------------------------------- norm

int cmd_norm(const Options& o) {
    check_format(o);
    SpaceParams sp;
    sp.family = parse_family(o.family);
    sp.s = value(o.s, "s");
    sp.tau = value(o.tau, "tau");
    sp.p = value(o.p, "p");
    sp.q = value(o.q, "q");
    sp.r = value(o.r, "r");
    sp.homogeneous = !o.inhomogeneous;
    validate(sp);
    const CubeSequence t = load_sequence(o.in);
    const NormValue v = norm(t, sp);

    json config{{"command", "norm"},
                {"family", to_string(sp.family)},
                {"s", exponent_echo(o.s, "s")},
                {"tau", exponent_echo(o.tau, "tau")},
                {"p", exponent_echo(o.p, "p")},
                {"q", exponent_echo(o.q, "q")},
                {"r", exponent_echo(o.r, "r")},
                {"homogeneous", sp.homogeneous},
                {"in", o.in}};
    if (o.format == "csv") {
        Output out(o.out);
        auto& os = out.stream();
        csv_header(os, config);
        os << "log2_value,linear_value,attained_j,attained_k\r\n";
        std::string k;
        for (auto c : v.attained_at.index()) k += (k.empty() ? "" : " ") + std::to_string(c);
        os << format_double(v.log2_value) << ',' << format_double(v.linear_value) << ','
           << v.attained_at.level() << ',' << k << "\r\n";
    } else {
        emit_json(o, config, to_json(v));
    }
    return kExitOk;
}

// ---------------------------------------------------------------- witness

int cmd_witness(const Options& o) {
    check_format(o);
    WitnessParams wp{value(o.s, "s"), value(o.p, "p"), value(o.q, "q"), value(o.tau, "tau"), o.dim};
    const std::vector<int> depths = o.depths.empty() ? default_witness_depths(o.dim) : o.depths;
    std::vector<WitnessTarget> targets;
    if (o.target == "f" || o.target == "both") targets.push_back(WitnessTarget::f_type);
    if (o.target == "b" || o.target == "both") targets.push_back(WitnessTarget::b_type);
    if (targets.empty()) throw ParameterError("--target must be f, b or both");

    std::vector<Prop4Certificate> certs;
    for (auto t : targets) certs.push_back(certify_prop4(wp, t, depths));
    bool ok = true;
    for (const auto& c : certs) ok = ok && c.certified();

    json config{{"command", "witness"},
                {"s", exponent_echo(o.s, "s")},
                {"tau", exponent_echo(o.tau, "tau")},
                {"p", exponent_echo(o.p, "p")},
                {"q", exponent_echo(o.q, "q")},
                {"dim", o.dim},
                {"depths", depths},
                {"target", o.target}};
    if (o.format == "csv") {
        Output out(o.out);
        auto& os = out.stream();
        csv_header(os, config);
        os << "target,space,depth,log2_norm\r\n";
        for (const auto& c : certs) {
            const std::string tgt = c.target == WitnessTarget::f_type ? "f_type" : "b_type";
            for (const GrowthReport* g : {&c.reference, &c.target_report}) {
                for (std::size_t i = 0; i < g->depths.size(); ++i) {
                    os << tgt << ',' << g->space << ',' << g->depths[i] << ',' << format_double(g->log2_values[i])
                       << "\r\n";
                }
            }
        }
    } else {
        json result = json::array();
        for (const auto& c : certs) result.push_back(to_json(c));
        emit_json(o, config, {{"certificates", result}, {"certified", ok}});
    }
    return ok ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------- equiv

SampleCheck make_check(const std::string& name, double s, double tau, double p, double q, double r, double tol) {
    if (name == "theorem1-f") {
        return [=](const CubeSequence& t, std::size_t) { return check_theorem1_f(t, s, tau, p, q, tol); };
    }
    if (name == "theorem1-b") {
        return [=](const CubeSequence& t, std::size_t) { return check_theorem1_b(t, s, tau, p, q, tol); };
    }
    if (name == "theorem2-f") {
        return [=](const CubeSequence& t, std::size_t) {
            return check_theorem2(t, s, tau, p, q, TypeVariant::f_type, tol);
        };
    }
    if (name == "theorem2-b") {
        return [=](const CubeSequence& t, std::size_t) {
            return check_theorem2(t, s, tau, p, q, TypeVariant::b_type, tol);
        };
    }
    if (name == "holder") {
        return [=](const CubeSequence& t, std::size_t) { return check_holder_embeddings(t, s, tau, p, q, tol); };
    }
    if (name == "prop3") {
        return [=](const CubeSequence& t, std::size_t) { return check_prop3(t, s, p, q, r, tol); };
    }
    throw ParameterError("--check must be theorem1-f, theorem1-b, theorem2-f, theorem2-b, holder or prop3");
}

double default_tol(const std::string& check) {
    return check == "holder" || check == "prop3" ? kIdentityTolerance : kEquivalenceTolerance;
}

int cmd_equiv(const Options& o) {
    check_format(o);
    const double tol = o.tol > 0 ? o.tol : default_tol(o.check);
    const double s = value(o.s, "s"), tau = value(o.tau, "tau"), p = value(o.p, "p"), q = value(o.q, "q"),
                 r = value(o.r, "r");
    const SampleCheck check = make_check(o.check, s, tau, p, q, r, tol);
    // validate the parameters once before the sweep
    check(CubeSequence::zero(DyadicCube::unit(1), 0), 0);

    SweepConfig cfg;
    cfg.samples = o.samples;
    cfg.seed = o.seed;
    cfg.dims = o.dims;
    cfg.max_depth = o.depth;
    const SweepResult res = run_sweep(cfg, check);

    json config{{"command", "equiv"},
                {"check", o.check},
                {"s", exponent_echo(o.s, "s")},
                {"tau", exponent_echo(o.tau, "tau")},
                {"p", exponent_echo(o.p, "p")},
                {"q", exponent_echo(o.q, "q")},
                {"r", exponent_echo(o.r, "r")},
                {"samples", o.samples},
                {"seed", o.seed},
                {"dims", o.dims},
                {"depth", o.depth},
                {"tol", tol}};
    if (o.format == "csv") {
        Output out(o.out);
        csv_header(out.stream(), config);
        write_ratio_csv(out.stream(), res.rows);
    } else {
        emit_json(o, config, to_json(res.report));
    }
    return res.report.ok() ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------- classify / refute

SpaceDescriptor descriptor(const Options& o, const std::string& family_text, const std::string& tau_text,
                           const std::string& p_text, const std::string& q_text) {
    SpaceDescriptor d;
    d.family = parse_family(family_text);
    d.s = param(o.s, "s");
    d.tau = param(tau_text, "tau");
    d.p = param(p_text, "p");
    d.q = param(q_text, "q");
    d.r = param(o.r, "r");
    d.dim = o.dim;
    d.homogeneous = !o.inhomogeneous;
    return d;
}

int cmd_classify(const Options& o) {
    if (o.format != "json") throw ParameterError("classify reports are JSON only");
    const SpaceDescriptor d = descriptor(o, o.family, o.tau, o.p, o.q);
    const ClassificationReport rep = classify(d);
    json config{{"command", "classify"},
                {"family", to_string(d.family)},
                {"s", d.s.to_string()},
                {"tau", d.tau.to_string()},
                {"p", d.p.to_string()},
                {"q", d.q.to_string()},
                {"r", d.r.to_string()},
                {"dim", d.dim},
                {"homogeneous", d.homogeneous}};
    emit_json(o, config, to_json(rep));
    return kExitOk;
}

int cmd_refute(const Options& o) {
    if (o.format != "json") throw ParameterError("refute reports are JSON only");
    const std::vector<int> depths = o.depths.empty() ? default_witness_depths(o.dim) : o.depths;
    const Refutation ref =
        refute_claim(param(o.s, "s"), param(o.tau, "tau"), param(o.p, "p"), param(o.q, "q"), o.dim, depths);
    json config{{"command", "refute"},
                {"s", exponent_echo(o.s, "s")},
                {"tau", exponent_echo(o.tau, "tau")},
                {"p", exponent_echo(o.p, "p")},
                {"q", exponent_echo(o.q, "q")},
                {"dim", o.dim},
                {"depths", depths}};
    emit_json(o, config, to_json(ref));
    return ref.certified() ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------- sweep

int cmd_sweep(const Options& o) {
    check_format(o);
    struct Row {
        std::string family, tau, p, q, verdict, rule;
        std::size_t samples = 0;
        double low = 0, high = 0, constant = 0;
        bool checked = false, ok = true;
    };
    std::vector<Row> rows;
    bool all_ok = true;
    for (const auto& fam : o.families) {
        for (const auto& tau_text : o.taus) {
            for (const auto& p_text : o.ps) {
                for (const auto& q_text : o.qs) {
                    SpaceDescriptor d = descriptor(o, fam, tau_text, p_text, q_text);
                    if (d.family != Family::F_type && d.family != Family::B_type) {
                        throw ParameterError("sweep families must be f or b");
                    }
                    Row row;
                    row.family = to_string(d.family);
                    row.tau = d.tau.to_string();
                    row.p = d.p.to_string();
                    row.q = d.q.to_string();
                    if (d.family == Family::F_type && d.p.is_inf()) {
                        row.verdict = "undefined";
                        row.rule = "Definition 1(i)";
                        rows.push_back(row);
                        continue;
                    }
                    const ClassificationReport rep = classify(d);
                    row.verdict = to_string(rep.verdict);
                    row.rule = rep.rule;
                    if (rep.verdict == SpaceVerdict::F_inf_inf || rep.verdict == SpaceVerdict::B_inf_inf) {
                        const double s = d.s.value(), tau = d.tau.value(), p = d.p.value(), q = d.q.value();
                        SampleCheck check =
                            d.family == Family::F_type
                                ? SampleCheck([=](const CubeSequence& t, std::size_t) {
                                      return check_theorem1_f(t, s, tau, p, q);
                                  })
                                : SampleCheck([=](const CubeSequence& t, std::size_t) {
                                      return check_theorem1_b(t, s, tau, p, q);
                                  });
                        SweepConfig cfg;
                        cfg.samples = o.sweep_samples;
                        cfg.seed = derive_seed(o.seed, rows.size());
                        cfg.dims = o.dims;
                        cfg.max_depth = o.depth;
                        const SweepResult res = run_sweep(cfg, check);
                        row.checked = true;
                        row.samples = res.report.samples;
                        row.low = res.report.worst_ratio_low;
                        row.high = res.report.worst_ratio_high;
                        row.constant = res.report.upper_constant;
                        row.ok = res.report.ok();
                        all_ok = all_ok && row.ok;
                    }
                    rows.push_back(row);
                }
            }
        }
    }
    json config{{"command", "sweep"},
                {"families", o.families},
                {"s", exponent_echo(o.s, "s")},
                {"taus", o.taus},
                {"ps", o.ps},
                {"qs", o.qs},
                {"dim", o.dim},
                {"dims", o.dims},
                {"samples", o.sweep_samples},
                {"seed", o.seed},
                {"depth", o.depth}};
    if (o.format == "csv") {
        Output out(o.out);
        auto& os = out.stream();
        csv_header(os, config);
        os << "family,tau,p,q,verdict,rule,samples,ratio_low,ratio_high,upper_constant,ok\r\n";
        for (const auto& r : rows) {
            os << r.family << ',' << r.tau << ',' << r.p << ',' << r.q << ',' << r.verdict << ",\"" << r.rule
               << "\"," << r.samples << ',' << (r.checked ? format_double(r.low) : "") << ','
               << (r.checked ? format_double(r.high) : "") << ',' << (r.checked ? format_double(r.constant) : "")
               << ',' << (r.ok ? "true" : "false") << "\r\n";
        }
    } else {
        json cells = json::array();
        for (const auto& r : rows) {
            json c{{"family", r.family}, {"tau", r.tau}, {"p", r.p}, {"q", r.q}, {"verdict", r.verdict},
                   {"rule", r.rule}, {"ok", r.ok}};
            if (r.checked) {
                c["samples"] = r.samples;
                c["ratio_low"] = json_number(r.low);
                c["ratio_high"] = json_number(r.high);
                c["upper_constant"] = json_number(r.constant);
            }
            cells.push_back(c);
        }
        emit_json(o, config, {{"cells", cells}, {"ok", all_ok}});
    }
    return all_ok ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------- analyze

int cmd_analyze(const Options& o) {
    if (o.format != "json") throw ParameterError("analyze reports are JSON only");
    GridFunction f = o.in.empty()
                         ? make_family(o.function, o.dim, o.log_resolution, o.band_level, o.seed)
                         : read_grid(o.in, o.sidecar.empty() ? o.in + ".json" : o.sidecar);
    const FilterBank bank = build_filter_bank(f.log_resolution());
    const int max_level = o.max_level < 0 ? bank.max_level() : o.max_level;
    SpaceParams sp;
    sp.family = parse_family(o.family);
    sp.s = value(o.s, "s");
    sp.tau = value(o.tau, "tau");
    sp.p = value(o.p, "p");
    sp.q = value(o.q, "q");
    sp.homogeneous = !o.inhomogeneous;

    const Prop2Report rep = prop2_consistency(f, bank, sp, max_level);
    const CubeSequence coeffs = coefficients(f, bank, max_level, o.inhomogeneous);
    if (!o.coeff_out.empty()) {
        std::ofstream co(o.coeff_out);
        if (!co) throw ParseError("cannot write " + o.coeff_out);
        write_sequence_jsonl(co, coeffs);
    }

    json config{{"command", "analyze"},
                {"function", o.in.empty() ? o.function : o.in},
                {"dim", f.dim()},
                {"L", f.log_resolution()},
                {"band_level", o.band_level},
                {"max_level", max_level},
                {"family", to_string(sp.family)},
                {"s", exponent_echo(o.s, "s")},
                {"tau", exponent_echo(o.tau, "tau")},
                {"p", exponent_echo(o.p, "p")},
                {"q", exponent_echo(o.q, "q")},
                {"homogeneous", sp.homogeneous},
                {"seed", o.seed}};
    json result{{"filter_bank",
                 {{"lower_bound_constant", json_number(bank.lower_bound_constant)},
                  {"valid_levels", {0, bank.max_level()}}}},
                {"coefficients", coeffs.size()},
                {"prop2", to_json(rep)}};
    emit_json(o, config, result);
    return kExitOk;
}

// ---------------------------------------------------------------- generate

int cmd_generate(const Options& o) {
    Output out(o.out);
    if (o.tower) {
        const auto w = build_tower(value(o.s, "s"), value(o.tau, "tau"), value(o.p, "p"), o.dim, o.depth);
        write_sequence_jsonl(out.stream(), w.sequence);
    } else {
        if (o.depth < 0) throw ParameterError("--depth must be >= 0");
        write_sequence_jsonl(out.stream(), random_sequence(DyadicCube::unit(o.dim), o.depth, o.seed));
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Besov-type, Triebel-Lizorkin-type and Carleson sequence-space norms on dyadic cubes"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--threads", o.threads, "worker cap (default: DYADIC_SPACES_THREADS or hardware)");

    auto params = [&o](CLI::App* c, bool with_r = true) {
        c->add_option("--family", o.family, "f, b, cmo, bbmo, finf, binf")->capture_default_str();
        c->add_option("--s", o.s, "smoothness")->capture_default_str();
        c->add_option("--tau", o.tau, "Morrey-type exponent (rational, decimal)")->capture_default_str();
        c->add_option("--p", o.p, "integrability, or inf")->capture_default_str();
        c->add_option("--q", o.q, "summability, or inf")->capture_default_str();
        if (with_r) c->add_option("--r", o.r, "CMO exponent")->capture_default_str();
        c->add_flag("--inhomogeneous", o.inhomogeneous, "levels j >= max{0, j_P} only");
    };
    auto output = [&o](CLI::App* c) {
        c->add_option("--format", o.format, "json or csv")->capture_default_str();
        c->add_option("--out", o.out, "output path (default stdout)");
    };

    auto* norm_cmd = app.add_subcommand("norm", "evaluate one sequence norm");
    params(norm_cmd);
    output(norm_cmd);
    norm_cmd->add_option("--in", o.in, "CubeSequence JSONL file")->required();

    auto* witness_cmd = app.add_subcommand("witness", "tower counterexample certificates");
    params(witness_cmd, false);
    output(witness_cmd);
    witness_cmd->add_option("--dim", o.dim)->capture_default_str();
    witness_cmd->add_option("--depths", o.depths, "truncation depths")->delimiter(',');
    witness_cmd->add_option("--target", o.target, "f, b or both")->capture_default_str();

    auto* equiv_cmd = app.add_subcommand("equiv", "equivalence check over random sequences");
    params(equiv_cmd);
    output(equiv_cmd);
    equiv_cmd->add_option("--check", o.check, "theorem1-f, theorem1-b, theorem2-f, theorem2-b, holder, prop3")
        ->capture_default_str();
    equiv_cmd->add_option("--samples", o.samples)->capture_default_str();
    equiv_cmd->add_option("--seed", o.seed)->capture_default_str();
    equiv_cmd->add_option("--dims", o.dims)->delimiter(',');
    equiv_cmd->add_option("--depth", o.depth, "maximum random depth")->capture_default_str();
    equiv_cmd->add_option("--tol", o.tol, "relative tolerance");

    auto* classify_cmd = app.add_subcommand("classify", "name the classical space a tuple coincides with");
    params(classify_cmd);
    output(classify_cmd);
    classify_cmd->add_option("--dim", o.dim)->capture_default_str();

    auto* refute_cmd = app.add_subcommand("refute", "non-equivalence of the F-type norm and the shifted B-type norm");
    params(refute_cmd, false);
    output(refute_cmd);
    refute_cmd->add_option("--dim", o.dim)->capture_default_str();
    refute_cmd->add_option("--depths", o.depths)->delimiter(',');

    auto* sweep_cmd = app.add_subcommand("sweep", "grid sweep over (tau, p, q)");
    output(sweep_cmd);
    sweep_cmd->add_option("--s", o.s)->capture_default_str();
    sweep_cmd->add_option("--families", o.families)->delimiter(',');
    sweep_cmd->add_option("--taus", o.taus)->delimiter(',');
    sweep_cmd->add_option("--ps", o.ps)->delimiter(',');
    sweep_cmd->add_option("--qs", o.qs)->delimiter(',');
    sweep_cmd->add_option("--dim", o.dim, "dimension for the classifier")->capture_default_str();
    sweep_cmd->add_option("--dims", o.dims, "dimensions of random sequences")->delimiter(',');
    sweep_cmd->add_option("--samples", o.sweep_samples, "random sequences per checked cell")->capture_default_str();
    sweep_cmd->add_option("--seed", o.seed)->capture_default_str();
    sweep_cmd->add_option("--depth", o.depth)->capture_default_str();

    auto* analyze_cmd = app.add_subcommand("analyze", "phi-transform analysis of a sampled periodic function");
    params(analyze_cmd, false);
    output(analyze_cmd);
    analyze_cmd->add_option("--in", o.in, "raw float64 grid file");
    analyze_cmd->add_option("--sidecar", o.sidecar, "JSON sidecar (default <in>.json)");
    analyze_cmd->add_option("--function", o.function, "harmonic, random-bandlimited, sawtooth-smoothed")
        ->capture_default_str();
    analyze_cmd->add_option("--dim", o.dim)->capture_default_str();
    analyze_cmd->add_option("--L", o.log_resolution, "log2 of samples per axis")->capture_default_str();
    analyze_cmd->add_option("--band-level", o.band_level, "modes up to 2^band_level")->capture_default_str();
    analyze_cmd->add_option("--max-level", o.max_level, "finest analysed level (default L-2)");
    analyze_cmd->add_option("--seed", o.seed)->capture_default_str();
    analyze_cmd->add_option("--coeff-out", o.coeff_out, "write the coefficients as JSONL");

    auto* gen_cmd = app.add_subcommand("generate", "write a random or tower sequence as JSONL");
    gen_cmd->add_option("--dim", o.dim)->capture_default_str();
    gen_cmd->add_option("--depth", o.depth)->capture_default_str();
    gen_cmd->add_option("--seed", o.seed)->capture_default_str();
    gen_cmd->add_flag("--tower", o.tower, "tower witness instead of a random subtree");
    gen_cmd->add_option("--s", o.s)->capture_default_str();
    gen_cmd->add_option("--tau", o.tau)->capture_default_str();
    gen_cmd->add_option("--p", o.p)->capture_default_str();
    gen_cmd->add_option("--out", o.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParams;
    }

    try {
        if (o.threads > 0) set_thread_count(o.threads);
        if (*norm_cmd) return cmd_norm(o);
        if (*witness_cmd) return cmd_witness(o);
        if (*equiv_cmd) return cmd_equiv(o);
        if (*classify_cmd) return cmd_classify(o);
        if (*refute_cmd) return cmd_refute(o);
        if (*sweep_cmd) return cmd_sweep(o);
        if (*analyze_cmd) return cmd_analyze(o);
        if (*gen_cmd) return cmd_generate(o);
    } catch (const ParameterError& e) {
        std::cerr << "invalid parameters: " << e.what() << '\n';
        return kExitParams;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitParams;
}
