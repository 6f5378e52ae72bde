#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "dspaces/dyadic.hpp"

namespace dspaces {

/// Finitely supported field of magnitudes |t_Q| on dyadic cubes.
///
/// Magnitudes are stored as log2 values (-inf for zero) aligned with
/// tree().nodes(); every norm depends on t only through |t_Q|.
class CubeSequence {
public:
    struct Entry {
        DyadicCube cube;
        double log2_magnitude;
    };

    CubeSequence(DyadicCube root, int depth, std::vector<Entry> entries);

    static CubeSequence zero(DyadicCube root, int depth) { return CubeSequence(std::move(root), depth, {}); }
    /// Builds from linear values; signs are dropped.
    static CubeSequence from_values(DyadicCube root, int depth, const std::vector<std::pair<DyadicCube, double>>& values);

    const SupportTree& tree() const { return tree_; }
    int dim() const { return tree_.dim(); }
    std::size_t size() const { return tree_.size(); }
    double log2_magnitude(std::size_t i) const { return log2_magnitudes_[i]; }
    const std::vector<double>& log2_magnitudes() const { return log2_magnitudes_; }
    /// -inf when q is not in the support.
    double log2_magnitude_of(const DyadicCube& q) const;
    bool is_zero() const;

    std::vector<Entry> entries() const;
    /// c * t with log2|c| = log2_factor.
    CubeSequence scaled(double log2_factor) const;
    /// Copy with one entry added or replaced.
    CubeSequence with_entry(const DyadicCube& q, double log2_magnitude) const;

private:
    CubeSequence(SupportTree tree, std::vector<double> log2_magnitudes)
        : tree_(std::move(tree)), log2_magnitudes_(std::move(log2_magnitudes)) {}

    SupportTree tree_;
    std::vector<double> log2_magnitudes_;
};

/// JSON Lines: a header {"dim","root":{"j","k"},"depth"} followed by one
/// {"j","k","v"[,"log2v"]} record per cube; "log2v" wins over "v".
CubeSequence read_sequence_jsonl(std::istream& in);
void write_sequence_jsonl(std::ostream& out, const CubeSequence& t);

/// Random connected support below `root`: every child of a retained cube is
/// kept with probability `keep`, down to `depth` levels; log2-magnitudes are
/// uniform in [log2_lo, log2_hi].
struct RandomSequenceOptions {
    double keep = 0.6;
    double log2_lo = -20.0;
    double log2_hi = 20.0;
};
CubeSequence random_sequence(const DyadicCube& root, int depth, std::uint64_t seed,
                             const RandomSequenceOptions& options = {});

/// Per-sample seed derived from a sweep seed, independent of evaluation order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace dspaces
