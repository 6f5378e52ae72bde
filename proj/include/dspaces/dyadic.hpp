#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dspaces/dyadic_rational.hpp"

namespace dspaces {

/// The half-open cube 2^{-j}([0,1)^n + k).
class DyadicCube {
public:
    DyadicCube() = default;
    DyadicCube(int level, std::vector<std::int64_t> index);

    /// [0,1)^n
    static DyadicCube unit(int dim);
    /// [0, 2^{-level})^n
    static DyadicCube corner(int dim, int level);

    int dim() const { return static_cast<int>(index_.size()); }
    int level() const { return level_; }
    const std::vector<std::int64_t>& index() const { return index_; }

    /// log2 of the side length, i.e. -level.
    double side_log2() const { return -static_cast<double>(level_); }
    /// log2 |Q| = -level * n.
    double volume_log2() const { return -static_cast<double>(level_) * dim(); }
    DyadicRational volume() const { return DyadicRational::pow2(-static_cast<std::int64_t>(level_) * dim()); }
    std::vector<double> lower_corner() const;

    DyadicCube parent() const { return ancestor_at(level_ - 1); }
    /// The unique cube at `level` containing this one; throws for level > this->level().
    DyadicCube ancestor_at(int level) const;
    std::vector<DyadicCube> children() const;

    /// True iff `q` is a subset of this cube. Throws on dimension mismatch.
    bool contains(const DyadicCube& q) const;

    std::string to_string() const;

    friend auto operator<=>(const DyadicCube&, const DyadicCube&) = default;
    friend bool operator==(const DyadicCube&, const DyadicCube&) = default;

private:
    int level_ = 0;
    std::vector<std::int64_t> index_;
};

inline bool contains(const DyadicCube& outer, const DyadicCube& inner) { return outer.contains(inner); }
inline DyadicCube ancestor_at(const DyadicCube& q, int level) { return q.ancestor_at(level); }

struct DyadicCubeHash {
    std::size_t operator()(const DyadicCube& q) const noexcept;
};

/// A piece of a cube P on which the set of support cubes covering each point
/// is constant.
struct Shell {
    DyadicCube region;                // the cube whose shell this is (P itself for the uncovered part)
    std::vector<DyadicCube> active;  // support cubes inside P containing the shell, coarsest first
    DyadicRational measure;
};

/// Finite set of dyadic cubes below a root, with nearest-ancestor links.
///
/// Nodes are kept sorted by (level, index).  Parent links follow geometric
/// containment restricted to the support: the parent of a node is its nearest
/// strict ancestor that is also a node.
class SupportTree {
public:
    static constexpr std::ptrdiff_t kNoParent = -1;

    SupportTree(DyadicCube root, int max_depth, std::vector<DyadicCube> nodes);

    const DyadicCube& root() const { return root_; }
    int max_depth() const { return max_depth_; }
    int dim() const { return root_.dim(); }

    std::size_t size() const { return nodes_.size(); }
    bool empty() const { return nodes_.empty(); }
    const DyadicCube& node(std::size_t i) const { return nodes_[i]; }
    const std::vector<DyadicCube>& nodes() const { return nodes_; }
    std::ptrdiff_t find(const DyadicCube& q) const;

    std::ptrdiff_t parent(std::size_t i) const { return parent_[i]; }
    std::span<const std::size_t> children(std::size_t i) const { return children_[i]; }

    /// |Q| minus the volume of the node's maximal support descendants.
    const DyadicRational& shell_measure(std::size_t i) const { return shell_measure_[i]; }
    double shell_log2_measure(std::size_t i) const { return shell_log2_measure_[i]; }

    /// Every dyadic subcube of the root containing at least one node, plus the
    /// root itself, sorted coarsest first.
    const std::vector<DyadicCube>& candidate_cubes() const { return candidates_; }

    /// Indices of the maximal nodes contained in P (P arbitrary).
    std::vector<std::size_t> maximal_nodes_in(const DyadicCube& p) const;

private:
    DyadicCube root_;
    int max_depth_ = 0;
    std::vector<DyadicCube> nodes_;
    std::unordered_map<DyadicCube, std::size_t, DyadicCubeHash> lookup_;
    std::vector<std::ptrdiff_t> parent_;
    std::vector<std::vector<std::size_t>> children_;
    std::vector<DyadicRational> shell_measure_;
    std::vector<double> shell_log2_measure_;
    std::vector<DyadicCube> candidates_;
    // Maximal nodes of each candidate that is not itself a node.
    std::unordered_map<DyadicCube, std::vector<std::size_t>, DyadicCubeHash> candidate_tops_;
};

/// Partition of P into shells.  P must lie inside the root or contain it.
/// Shells of measure zero are omitted; measures sum to |P| exactly.
std::vector<Shell> shell_decomposition(const SupportTree& tree, const DyadicCube& p);

}  // namespace dspaces
