#include "dspaces/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dspaces/errors.hpp"

namespace dspaces {

namespace {

// floor(k / 2^shift)
std::int64_t floor_shift(std::int64_t k, int shift) {
    if (shift >= 63) return k < 0 ? -1 : 0;
    return k >> shift;  // arithmetic shift is floor division
}

void require_same_dim(const DyadicCube& a, const DyadicCube& b) {
    if (a.dim() != b.dim()) {
        throw ParameterError("dyadic cubes of different dimension (" + std::to_string(a.dim()) + " vs " +
                             std::to_string(b.dim()) + ")");
    }
}

}  // namespace

DyadicCube::DyadicCube(int level, std::vector<std::int64_t> index) : level_(level), index_(std::move(index)) {
    if (index_.empty()) throw ParameterError("dyadic cube needs dimension >= 1");
}

DyadicCube DyadicCube::unit(int dim) { return corner(dim, 0); }

DyadicCube DyadicCube::corner(int dim, int level) {
    if (dim < 1) throw ParameterError("dyadic cube needs dimension >= 1");
    return DyadicCube(level, std::vector<std::int64_t>(static_cast<std::size_t>(dim), 0));
}

std::vector<double> DyadicCube::lower_corner() const {
    std::vector<double> x(index_.size());
    for (std::size_t i = 0; i < index_.size(); ++i) {
        x[i] = std::ldexp(static_cast<double>(index_[i]), -level_);
    }
    return x;
}

DyadicCube DyadicCube::ancestor_at(int level) const {
    if (level > level_) {
        throw ParameterError("ancestor level " + std::to_string(level) + " is finer than cube level " +
                             std::to_string(level_));
    }
    const int shift = level_ - level;
    std::vector<std::int64_t> k(index_.size());
    for (std::size_t i = 0; i < k.size(); ++i) k[i] = floor_shift(index_[i], shift);
    return DyadicCube(level, std::move(k));
}

std::vector<DyadicCube> DyadicCube::children() const {
    constexpr std::int64_t kLimit = std::int64_t{1} << 61;
    for (auto k : index_) {
        if (k >= kLimit || k < -kLimit) throw std::overflow_error("dyadic index overflow at level " + std::to_string(level_ + 1));
    }
    const std::size_t n = index_.size();
    std::vector<DyadicCube> out;
    out.reserve(std::size_t{1} << n);
    for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
        std::vector<std::int64_t> k(n);
        for (std::size_t i = 0; i < n; ++i) k[i] = 2 * index_[i] + static_cast<std::int64_t>((bits >> (n - 1 - i)) & 1);
        out.emplace_back(level_ + 1, std::move(k));
    }
    return out;
}

bool DyadicCube::contains(const DyadicCube& q) const {
    require_same_dim(*this, q);
    if (q.level_ < level_) return false;
    const int shift = q.level_ - level_;
    for (std::size_t i = 0; i < index_.size(); ++i) {
        if (floor_shift(q.index_[i], shift) != index_[i]) return false;
    }
    return true;
}

std::string DyadicCube::to_string() const {
    std::ostringstream os;
    os << "(j=" << level_ << ",k=[";
    for (std::size_t i = 0; i < index_.size(); ++i) os << (i ? "," : "") << index_[i];
    os << "])";
    return os.str();
}

std::size_t DyadicCubeHash::operator()(const DyadicCube& q) const noexcept {
    std::size_t h = std::hash<int>{}(q.level()) * 0x9e3779b97f4a7c15ULL;
    for (auto k : q.index()) {
        h ^= std::hash<std::int64_t>{}(k) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

SupportTree::SupportTree(DyadicCube root, int max_depth, std::vector<DyadicCube> nodes)
    : root_(std::move(root)), max_depth_(max_depth), nodes_(std::move(nodes)) {
    if (max_depth_ < 0) throw ParameterError("support tree depth must be >= 0");
    std::sort(nodes_.begin(), nodes_.end());
    if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end()) {
        throw ParameterError("duplicate cube in support");
    }
    for (const auto& q : nodes_) {
        if (!root_.contains(q)) throw ParameterError("support cube " + q.to_string() + " lies outside root " + root_.to_string());
        if (q.level() > root_.level() + max_depth_) {
            throw ParameterError("support cube " + q.to_string() + " is deeper than the declared depth");
        }
    }

    lookup_.reserve(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) lookup_.emplace(nodes_[i], i);

    parent_.assign(nodes_.size(), kNoParent);
    children_.assign(nodes_.size(), {});
    shell_measure_.resize(nodes_.size());
    shell_log2_measure_.resize(nodes_.size());

    // Walk up from every node: the first node met is its parent, every
    // non-node passed on the way is a candidate with this node as a maximal
    // descendant.
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const DyadicCube& q = nodes_[i];
        for (int lvl = q.level() - 1; lvl >= root_.level(); --lvl) {
            DyadicCube a = q.ancestor_at(lvl);
            if (auto it = lookup_.find(a); it != lookup_.end()) {
                parent_[i] = static_cast<std::ptrdiff_t>(it->second);
                break;
            }
            candidate_tops_[a].push_back(i);
        }
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (parent_[i] != kNoParent) children_[static_cast<std::size_t>(parent_[i])].push_back(i);
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        DyadicRational covered;
        for (auto c : children_[i]) covered += nodes_[c].volume();
        shell_measure_[i] = nodes_[i].volume() - covered;
        shell_log2_measure_[i] = shell_measure_[i].log2();
    }

    candidates_ = nodes_;
    for (auto& [cube, tops] : candidate_tops_) {
        candidates_.push_back(cube);
        std::sort(tops.begin(), tops.end());
    }
    if (!lookup_.contains(root_) && !candidate_tops_.contains(root_)) candidates_.push_back(root_);
    std::sort(candidates_.begin(), candidates_.end());
}

std::ptrdiff_t SupportTree::find(const DyadicCube& q) const {
    auto it = lookup_.find(q);
    return it == lookup_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

std::vector<std::size_t> SupportTree::maximal_nodes_in(const DyadicCube& p) const {
    require_same_dim(p, root_);
    if (p.contains(root_) && p != root_) return maximal_nodes_in(root_);
    if (!root_.contains(p)) return {};
    if (auto i = find(p); i >= 0) return {static_cast<std::size_t>(i)};
    if (auto it = candidate_tops_.find(p); it != candidate_tops_.end()) return it->second;
    return {};
}

std::vector<Shell> shell_decomposition(const SupportTree& tree, const DyadicCube& p) {
    if (!tree.root().contains(p) && !p.contains(tree.root())) {
        throw ParameterError("shell decomposition: " + p.to_string() + " is neither inside nor above the root");
    }
    std::vector<Shell> shells;
    const auto tops = tree.maximal_nodes_in(p);

    DyadicRational residual = p.volume();
    for (auto t : tops) residual -= tree.node(t).volume();
    if (!residual.is_zero()) shells.push_back(Shell{p, {}, residual});

    struct Frame {
        std::size_t node;
        std::vector<DyadicCube> active;
    };
    std::vector<Frame> stack;
    for (auto it = tops.rbegin(); it != tops.rend(); ++it) stack.push_back({*it, {tree.node(*it)}});
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        if (!tree.shell_measure(f.node).is_zero()) {
            shells.push_back(Shell{tree.node(f.node), f.active, tree.shell_measure(f.node)});
        }
        const auto kids = tree.children(f.node);
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
            auto active = f.active;
            active.push_back(tree.node(*it));
            stack.push_back({*it, std::move(active)});
        }
    }
    return shells;
}

}  // namespace dspaces
