#include "dspaces/analyze.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <random>

#include <nlohmann/json.hpp>
#include <unsupported/Eigen/FFT>

#include "dspaces/errors.hpp"
#include "dspaces/log_sum.hpp"
#include "dspaces/parallel.hpp"

namespace dspaces {

namespace {

using Complex = std::complex<double>;

static_assert(std::endian::native == std::endian::little, "grid files are raw little-endian float64");

void check_dim(int dim, int L) {
    if (dim != 1 && dim != 2) throw ParameterError("the analyzer supports n = 1 and n = 2");
    if (L < 1 || L > (dim == 1 ? 24 : 12)) throw ParameterError("log resolution out of range");
}

// Signed frequency of DFT bin k.
std::int64_t freq(std::int64_t k, std::int64_t n) { return k < n / 2 ? k : k - n; }

double radius(const GridFunction& f, Eigen::Index idx) {
    const std::int64_t n = f.side();
    const double m0 = static_cast<double>(freq(idx % n, n));
    if (f.dim() == 1) return std::abs(m0);
    const double m1 = static_cast<double>(freq(idx / n, n));
    return std::sqrt(m0 * m0 + m1 * m1);
}

// In-place DFT along every axis.  Eigen's inverse carries the 1/N factor.
void transform(Eigen::VectorXcd& data, int dim, std::int64_t n, bool inverse) {
    Eigen::FFT<double> fft;
    std::vector<Complex> in(static_cast<std::size_t>(n)), out(static_cast<std::size_t>(n));
    auto run = [&] { inverse ? fft.inv(out, in) : fft.fwd(out, in); };
    const std::int64_t rows = dim == 1 ? 1 : n;
    for (std::int64_t r = 0; r < rows; ++r) {
        for (std::int64_t i = 0; i < n; ++i) in[i] = data[r * n + i];
        run();
        for (std::int64_t i = 0; i < n; ++i) data[r * n + i] = out[i];
    }
    if (dim == 2) {
        for (std::int64_t c = 0; c < n; ++c) {
            for (std::int64_t i = 0; i < n; ++i) in[i] = data[i * n + c];
            run();
            for (std::int64_t i = 0; i < n; ++i) data[i * n + c] = out[i];
        }
    }
}

Eigen::VectorXcd spectrum(const GridFunction& f) {
    Eigen::VectorXcd s = f.samples();
    transform(s, f.dim(), f.side(), false);
    return s;
}

Eigen::VectorXcd filtered(const GridFunction& f, const Eigen::VectorXcd& spec, const FilterBank& bank, int level,
                          bool base) {
    const double scale = std::ldexp(1.0, -level);
    Eigen::VectorXcd out(spec.size());
    for (Eigen::Index i = 0; i < spec.size(); ++i) {
        const double r = radius(f, i) * scale;
        const double m = base ? bank.base_profile(r) : bank.profile(r);
        out[i] = m == 0.0 ? Complex(0.0) : spec[i] * m;
    }
    transform(out, f.dim(), f.side(), true);
    return out;
}

void check_level(const FilterBank& bank, int level, const char* what) {
    if (level < 0 || level > bank.max_level()) {
        throw ParameterError(std::string(what) + ": level " + std::to_string(level) + " outside [0, " +
                             std::to_string(bank.max_level()) + "]");
    }
}

// log2 |2^{js} (phi_j * f)(x)| at every grid point, levels 0..max_level.
std::vector<std::vector<double>> weighted_levels(const GridFunction& f, const FilterBank& bank, double s,
                                                 int max_level, bool inhomogeneous) {
    const Eigen::VectorXcd spec = spectrum(f);
    std::vector<std::vector<double>> out(static_cast<std::size_t>(max_level) + 1);
    parallel_for(
        out.size(),
        [&](std::size_t j) {
            const int level = static_cast<int>(j);
            const Eigen::VectorXcd g = filtered(f, spec, bank, level, inhomogeneous && level == 0);
            auto& row = out[j];
            row.resize(static_cast<std::size_t>(g.size()));
            for (Eigen::Index i = 0; i < g.size(); ++i) {
                const double a = std::abs(g[i]);
                row[static_cast<std::size_t>(i)] = a == 0.0 ? kNegInf : level * s + std::log2(a);
            }
        },
        2);
    return out;
}

// Cube index (lexicographic over (k0, k1)) of grid point i at cube level j.
std::size_t cube_of(std::int64_t i, int dim, int L, int j) {
    const std::int64_t n = std::int64_t{1} << L;
    const int shift = L - j;
    const std::int64_t k0 = (i % n) >> shift;
    if (dim == 1) return static_cast<std::size_t>(k0);
    const std::int64_t k1 = (i / n) >> shift;
    return static_cast<std::size_t>((k0 << j) + k1);
}

DyadicCube cube_at(int dim, int j, std::size_t c) {
    if (dim == 1) return DyadicCube(j, {static_cast<std::int64_t>(c)});
    const std::int64_t side = std::int64_t{1} << j;
    return DyadicCube(j, {static_cast<std::int64_t>(c) / side, static_cast<std::int64_t>(c) % side});
}

std::size_t cube_count(int dim, int j) { return std::size_t{1} << (dim * j); }

NormValue pick_best(const std::vector<std::vector<double>>& values, int dim) {
    double best = kNegInf;
    DyadicCube at = DyadicCube::unit(dim);
    for (std::size_t j = 0; j < values.size(); ++j) {
        for (std::size_t c = 0; c < values[j].size(); ++c) {
            if (values[j][c] > best) {
                best = values[j][c];
                at = cube_at(dim, static_cast<int>(j), c);
            }
        }
    }
    return NormValue::from_log2(best, at);
}

NormValue f_function_norm(const GridFunction& f, const std::vector<std::vector<double>>& lg, const NormParams& np,
                          int max_level) {
    const int dim = f.dim();
    const int L = f.log_resolution();
    const bool q_inf = np.q == kInf;
    const double cell = -static_cast<double>(dim * L);
    const std::size_t points = static_cast<std::size_t>(f.size());
    std::vector<double> acc(points, kNegInf);
    std::vector<std::vector<double>> values(static_cast<std::size_t>(max_level) + 1);
    for (int jp = max_level; jp >= 0; --jp) {
        const auto& row = lg[static_cast<std::size_t>(jp)];
        std::vector<Log2Sum> sums(cube_count(dim, jp));
        for (std::size_t i = 0; i < points; ++i) {
            acc[i] = q_inf ? std::max(acc[i], row[i]) : log2_add(acc[i], np.q * row[i]);
            if (acc[i] == kNegInf) continue;
            const double inner = q_inf ? np.p * acc[i] : (np.p / np.q) * acc[i];
            sums[cube_of(static_cast<std::int64_t>(i), dim, L, jp)].add(cell + inner);
        }
        auto& out = values[static_cast<std::size_t>(jp)];
        out.resize(sums.size());
        for (std::size_t c = 0; c < sums.size(); ++c) {
            out[c] = sums[c].empty() ? kNegInf : np.tau * jp * dim + sums[c].value() / np.p;
        }
    }
    return pick_best(values, dim);
}

NormValue b_function_norm(const GridFunction& f, const std::vector<std::vector<double>>& lg, const NormParams& np,
                          int max_level) {
    const int dim = f.dim();
    const int L = f.log_resolution();
    const bool p_inf = np.p == kInf;
    const bool q_inf = np.q == kInf;
    const double cell = -static_cast<double>(dim * L);
    const std::size_t points = static_cast<std::size_t>(f.size());
    // outer[jp][c]: log2 of Σ_{j>=jp} I_j(P)^{q/p} (max at q = inf)
    std::vector<std::vector<double>> outer(static_cast<std::size_t>(max_level) + 1);
    for (int jp = 0; jp <= max_level; ++jp) outer[static_cast<std::size_t>(jp)].assign(cube_count(dim, jp), kNegInf);

    for (int j = 0; j <= max_level; ++j) {
        const auto& row = lg[static_cast<std::size_t>(j)];
        // log2 ∫_P |g_j|^p over cubes at level j, then coarser levels by merging children
        std::vector<double> level(cube_count(dim, j), kNegInf);
        for (std::size_t i = 0; i < points; ++i) {
            if (row[i] == kNegInf) continue;
            auto& slot = level[cube_of(static_cast<std::int64_t>(i), dim, L, j)];
            slot = p_inf ? std::max(slot, row[i]) : log2_add(slot, cell + np.p * row[i]);
        }
        for (int jp = j; jp >= 0; --jp) {
            auto& o = outer[static_cast<std::size_t>(jp)];
            for (std::size_t c = 0; c < level.size(); ++c) {
                if (level[c] == kNegInf) continue;
                const double norm_j = p_inf ? level[c] : level[c] / np.p;
                o[c] = q_inf ? std::max(o[c], norm_j) : log2_add(o[c], np.q * norm_j);
            }
            if (jp == 0) break;
            std::vector<double> coarser(cube_count(dim, jp - 1), kNegInf);
            const std::int64_t side = std::int64_t{1} << jp;
            for (std::size_t c = 0; c < level.size(); ++c) {
                std::size_t parent;
                if (dim == 1) {
                    parent = c >> 1;
                } else {
                    const std::int64_t k0 = static_cast<std::int64_t>(c) / side;
                    const std::int64_t k1 = static_cast<std::int64_t>(c) % side;
                    parent = static_cast<std::size_t>((k0 >> 1) * (side >> 1) + (k1 >> 1));
                }
                coarser[parent] = p_inf ? std::max(coarser[parent], level[c]) : log2_add(coarser[parent], level[c]);
            }
            level = std::move(coarser);
        }
    }
    for (int jp = 0; jp <= max_level; ++jp) {
        for (auto& v : outer[static_cast<std::size_t>(jp)]) {
            if (v == kNegInf) continue;
            v = np.tau * jp * dim + (q_inf ? v : v / np.q);
        }
    }
    return pick_best(outer, dim);
}

// Place a cos(2 pi m.x + phase) term with amplitude a in a spectrum.
void add_mode(Eigen::VectorXcd& spec, int dim, std::int64_t n, std::int64_t m0, std::int64_t m1, double a,
              double phase) {
    auto bin = [n](std::int64_t m) { return ((m % n) + n) % n; };
    const double total = std::pow(static_cast<double>(n), dim);
    const Complex c = std::polar(0.5 * a * total, phase);
    const std::int64_t plus = bin(m0) + (dim == 2 ? n * bin(m1) : 0);
    const std::int64_t minus = bin(-m0) + (dim == 2 ? n * bin(-m1) : 0);
    spec[plus] += c;
    spec[minus] += std::conj(c);
}

GridFunction from_spectrum(int dim, int L, Eigen::VectorXcd spec) {
    transform(spec, dim, std::int64_t{1} << L, true);
    for (auto& v : spec) v = Complex(v.real(), 0.0);
    return GridFunction(dim, L, std::move(spec));
}

void check_band(int dim, int L, int band_level) {
    check_dim(dim, L);
    if (band_level < 0 || band_level > L - 2) throw ParameterError("band level must lie in [0, L-2]");
}

}  // namespace

GridFunction::GridFunction(int dim, int log_resolution)
    : dim_(dim), L_(log_resolution), samples_() {
    check_dim(dim, log_resolution);
    samples_ = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(std::int64_t{1} << (dim * log_resolution)));
}

GridFunction::GridFunction(int dim, int log_resolution, Eigen::VectorXcd samples)
    : dim_(dim), L_(log_resolution), samples_(std::move(samples)) {
    check_dim(dim, log_resolution);
    if (samples_.size() != static_cast<Eigen::Index>(std::int64_t{1} << (dim * log_resolution))) {
        throw ParameterError("grid sample count must be N^n");
    }
}

bool GridFunction::is_real(double tol) const {
    for (const auto& v : samples_) {
        if (std::abs(v.imag()) > tol) return false;
    }
    return true;
}

GridFunction read_grid(const std::string& raw_path, const std::string& sidecar_path) {
    std::ifstream side(sidecar_path);
    if (!side) throw ParseError("cannot open " + sidecar_path);
    nlohmann::json meta;
    try {
        side >> meta;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(sidecar_path + ": " + e.what());
    }
    int dim = 0, L = 0;
    bool cplx = false;
    try {
        dim = meta.at("dim").get<int>();
        L = meta.at("L").get<int>();
        cplx = meta.value("complex", false);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(sidecar_path + ": " + e.what());
    }
    GridFunction f(dim, L);
    std::ifstream raw(raw_path, std::ios::binary);
    if (!raw) throw ParseError("cannot open " + raw_path);
    const std::size_t count = static_cast<std::size_t>(f.size()) * (cplx ? 2 : 1);
    std::vector<double> buf(count);
    raw.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(count * sizeof(double)));
    if (raw.gcount() != static_cast<std::streamsize>(count * sizeof(double)) || raw.peek() != EOF) {
        throw ParseError(raw_path + ": expected " + std::to_string(count) + " float64 values");
    }
    for (Eigen::Index i = 0; i < f.size(); ++i) {
        f.samples()[i] = cplx ? Complex(buf[2 * i], buf[2 * i + 1]) : Complex(buf[i], 0.0);
    }
    return f;
}

void write_grid(const GridFunction& f, const std::string& raw_path, const std::string& sidecar_path) {
    const bool cplx = !f.is_real();
    std::vector<double> buf;
    buf.reserve(static_cast<std::size_t>(f.size()) * (cplx ? 2 : 1));
    for (const auto& v : f.samples()) {
        buf.push_back(v.real());
        if (cplx) buf.push_back(v.imag());
    }
    std::ofstream raw(raw_path, std::ios::binary);
    if (!raw) throw ParseError("cannot write " + raw_path);
    raw.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size() * sizeof(double)));
    std::ofstream side(sidecar_path);
    if (!side) throw ParseError("cannot write " + sidecar_path);
    side << nlohmann::json{{"dim", f.dim()}, {"L", f.log_resolution()}, {"complex", cplx}}.dump() << '\n';
}

double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

double FilterBank::profile(double r) const {
    r = std::abs(r);
    if (r <= 0.5 || r >= 2.0) return 0.0;
    if (r < kInner) return smooth_step((r - 0.5) / (kInner - 0.5));
    if (r <= kOuter) return 1.0;
    return smooth_step((2.0 - r) / (2.0 - kOuter));
}

double FilterBank::base_profile(double r) const {
    r = std::abs(r);
    if (r >= 2.0) return 0.0;
    if (r <= kOuter) return 1.0;
    return smooth_step((2.0 - r) / (2.0 - kOuter));
}

FilterBank build_filter_bank(int log_resolution) {
    if (log_resolution < 3) {
        throw ParameterError("filter bank needs L >= 3 so that the annulus fits below Nyquist");
    }
    FilterBank bank;
    bank.log_resolution = log_resolution;
    bank.lower_bound_constant =
        std::min({bank.profile(0.6), bank.profile(5.0 / 3.0), bank.base_profile(5.0 / 3.0)});
    return bank;
}

GridFunction lp_convolve(const GridFunction& f, const FilterBank& bank, int level, bool base) {
    check_level(bank, level, "lp_convolve");
    if (f.log_resolution() != bank.log_resolution) throw ParameterError("grid and filter bank resolutions differ");
    return GridFunction(f.dim(), f.log_resolution(), filtered(f, spectrum(f), bank, level, base));
}

CubeSequence coefficients(const GridFunction& f, const FilterBank& bank, int max_level, bool inhomogeneous) {
    check_level(bank, max_level, "coefficients");
    if (f.log_resolution() != bank.log_resolution) throw ParameterError("grid and filter bank resolutions differ");
    const auto lg = weighted_levels(f, bank, 0.0, max_level, inhomogeneous);
    const int dim = f.dim();
    const int L = f.log_resolution();
    const std::int64_t n = f.side();
    std::vector<CubeSequence::Entry> entries;
    for (int j = 0; j <= max_level; ++j) {
        const std::int64_t side = std::int64_t{1} << j;
        const std::int64_t stride = std::int64_t{1} << (L - j);
        const std::int64_t count = dim == 1 ? side : side * side;
        for (std::int64_t c = 0; c < count; ++c) {
            const std::int64_t k0 = dim == 1 ? c : c / side;
            const std::int64_t k1 = dim == 1 ? 0 : c % side;
            const std::int64_t idx = k0 * stride + (dim == 2 ? n * k1 * stride : 0);
            const double v = lg[static_cast<std::size_t>(j)][static_cast<std::size_t>(idx)];
            if (v == kNegInf) continue;
            DyadicCube q = dim == 1 ? DyadicCube(j, {k0}) : DyadicCube(j, {k0, k1});
            entries.push_back({std::move(q), v - 0.5 * j * dim});
        }
    }
    return CubeSequence(DyadicCube::unit(dim), max_level, std::move(entries));
}

NormValue function_norm(const GridFunction& f, const FilterBank& bank, const SpaceParams& params, int max_level) {
    check_level(bank, max_level, "function_norm");
    if (f.log_resolution() != bank.log_resolution) throw ParameterError("grid and filter bank resolutions differ");
    if (params.family != Family::F_type && params.family != Family::B_type) {
        throw ParameterError("function_norm evaluates the F-type and B-type families");
    }
    validate(params);
    const NormParams np = params.as_norm_params();
    const auto lg = weighted_levels(f, bank, np.s, max_level, !np.homogeneous);
    return params.family == Family::F_type ? f_function_norm(f, lg, np, max_level)
                                           : b_function_norm(f, lg, np, max_level);
}

Prop2Report prop2_consistency(const GridFunction& f, const FilterBank& bank, const SpaceParams& params,
                              int max_level) {
    Prop2Report r;
    r.log2_function_norm = function_norm(f, bank, params, max_level).log2_value;
    const CubeSequence t = coefficients(f, bank, max_level, !params.homogeneous);
    r.log2_sequence_norm = norm(t, params).log2_value;
    if (r.log2_function_norm != kNegInf && r.log2_sequence_norm != kNegInf) {
        r.ratio = std::exp2(r.log2_function_norm - r.log2_sequence_norm);
    }
    const Eigen::VectorXcd spec = spectrum(f);
    const double lo = params.homogeneous ? 0.6 : 0.0;
    const double hi = 5.0 / 3.0 * std::ldexp(1.0, max_level);
    double total = 0.0, outside = 0.0;
    for (Eigen::Index i = 0; i < spec.size(); ++i) {
        const double e = std::norm(spec[i]);
        total += e;
        const double m = radius(f, i);
        if (m < lo || m > hi) outside += e;
    }
    r.out_of_band_energy = total > 0.0 ? outside / total : 0.0;
    r.band_limited = r.out_of_band_energy <= 1e-12;
    return r;
}

GridFunction harmonic(int dim, int log_resolution, int level) {
    check_band(dim, log_resolution, level);
    Eigen::VectorXcd spec = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(std::int64_t{1}
                                                                             << (dim * log_resolution)));
    add_mode(spec, dim, std::int64_t{1} << log_resolution, std::int64_t{1} << level, 0, 1.0, 0.0);
    return from_spectrum(dim, log_resolution, std::move(spec));
}

GridFunction random_bandlimited(int dim, int log_resolution, int band_level, std::uint64_t seed, int modes) {
    check_band(dim, log_resolution, band_level);
    std::mt19937_64 rng(seed);
    const std::int64_t cap = std::int64_t{1} << band_level;
    std::uniform_int_distribution<std::int64_t> comp(dim == 1 ? 1 : -cap, cap);
    std::uniform_real_distribution<double> amp(0.5, 1.5), phase(0.0, 2.0 * std::numbers::pi);
    Eigen::VectorXcd spec = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(std::int64_t{1}
                                                                             << (dim * log_resolution)));
    for (int k = 0; k < modes; ++k) {
        std::int64_t m0, m1;
        do {
            m0 = comp(rng);
            m1 = dim == 2 ? comp(rng) : 0;
        } while ((m0 == 0 && m1 == 0) || static_cast<double>(m0 * m0 + m1 * m1) > static_cast<double>(cap * cap));
        const double a = amp(rng);
        add_mode(spec, dim, std::int64_t{1} << log_resolution, m0, m1, a, phase(rng));
    }
    return from_spectrum(dim, log_resolution, std::move(spec));
}

GridFunction sawtooth_smoothed(int dim, int log_resolution, int band_level) {
    check_band(dim, log_resolution, band_level);
    const std::int64_t top = std::int64_t{1} << band_level;
    Eigen::VectorXcd spec = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(std::int64_t{1}
                                                                             << (dim * log_resolution)));
    for (std::int64_t m = 1; m <= top; ++m) {
        // Lanczos sigma factor tames the Gibbs ripple of the truncated series
        const double x = std::numbers::pi * static_cast<double>(m) / static_cast<double>(top + 1);
        const double sigma = std::sin(x) / x;
        add_mode(spec, dim, std::int64_t{1} << log_resolution, m, 0, sigma / static_cast<double>(m),
                 -std::numbers::pi / 2);
    }
    return from_spectrum(dim, log_resolution, std::move(spec));
}

GridFunction make_family(const std::string& name, int dim, int log_resolution, int band_level, std::uint64_t seed) {
    if (name == "harmonic") return harmonic(dim, log_resolution, band_level);
    if (name == "random-bandlimited") return random_bandlimited(dim, log_resolution, band_level, seed);
    if (name == "sawtooth-smoothed") return sawtooth_smoothed(dim, log_resolution, band_level);
    throw ParameterError("unknown function family '" + name + "'");
}

}  // namespace dspaces
