#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dspaces/sequence.hpp"
#include "dspaces/seqspace.hpp"

namespace dspaces {

/// Samples of a [0,1)^n-periodic function on the uniform N^n grid, N = 2^L.
/// Index i0 + N*i1 holds the sample at (i0/N, i1/N).
class GridFunction {
public:
    GridFunction(int dim, int log_resolution);
    GridFunction(int dim, int log_resolution, Eigen::VectorXcd samples);

    int dim() const { return dim_; }
    int log_resolution() const { return L_; }
    std::int64_t side() const { return std::int64_t{1} << L_; }
    Eigen::Index size() const { return samples_.size(); }
    const Eigen::VectorXcd& samples() const { return samples_; }
    Eigen::VectorXcd& samples() { return samples_; }
    bool is_real(double tol = 0.0) const;

private:
    int dim_;
    int L_;
    Eigen::VectorXcd samples_;
};

/// Raw little-endian float64 data (interleaved re/im when complex) plus a
/// JSON sidecar {"dim","L","complex"}.
GridFunction read_grid(const std::string& raw_path, const std::string& sidecar_path);
void write_grid(const GridFunction& f, const std::string& raw_path, const std::string& sidecar_path);

/// Smooth step rho(t) = sigma(t)/(sigma(t)+sigma(1-t)), sigma(t) = exp(-1/t) for t > 0.
double smooth_step(double t);

/// Radial filter profiles.  profile is 1 on [0.63, 1.58333...] and vanishes
/// outside (1/2, 2); base_profile is 1 on [0, 1.58333...] and vanishes for
/// r >= 2.
struct FilterBank {
    int log_resolution = 0;
    double lower_bound_constant = 0.0;

    static constexpr double kInner = 0.6 * 1.05;
    static constexpr double kOuter = 5.0 / 3.0 * 0.95;

    double profile(double r) const;
    double base_profile(double r) const;
    int max_level() const { return log_resolution - 2; }
};

FilterBank build_filter_bank(int log_resolution);

/// phi_j * f by multiplication with profile(|m|/2^j) on the frequency lattice;
/// base = true uses base_profile (the Phi filter of the inhomogeneous scale).
GridFunction lp_convolve(const GridFunction& f, const FilterBank& bank, int level, bool base = false);

/// |Q|^{1/2} |phi_j * f(x_Q)| for every cube Q at levels 0..max_level inside
/// [0,1)^n; exact zeros are left out of the support.
CubeSequence coefficients(const GridFunction& f, const FilterBank& bank, int max_level, bool inhomogeneous = false);

/// Riemann-sum value of the F/B-type function norm with P over levels
/// 0..max_level inside [0,1)^n and frequency levels truncated at max_level.
NormValue function_norm(const GridFunction& f, const FilterBank& bank, const SpaceParams& params, int max_level);

struct Prop2Report {
    double log2_function_norm = 0.0;
    double log2_sequence_norm = 0.0;
    std::optional<double> ratio;  // function / sequence; empty for the zero function
    bool band_limited = true;
    double out_of_band_energy = 0.0;  // relative spectral energy outside the analysed bands
};

Prop2Report prop2_consistency(const GridFunction& f, const FilterBank& bank, const SpaceParams& params,
                              int max_level);

/// Test families.  Modes are capped at |m| <= 2^band_level so a family member
/// is the same trigonometric polynomial at every resolution.
GridFunction harmonic(int dim, int log_resolution, int level);
GridFunction random_bandlimited(int dim, int log_resolution, int band_level, std::uint64_t seed, int modes = 20);
GridFunction sawtooth_smoothed(int dim, int log_resolution, int band_level);
/// By family name: "harmonic" (level = band_level), "random-bandlimited", "sawtooth-smoothed".
GridFunction make_family(const std::string& name, int dim, int log_resolution, int band_level, std::uint64_t seed);

}  // namespace dspaces
