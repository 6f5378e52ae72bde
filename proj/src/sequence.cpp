#include "dspaces/sequence.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <string>

#include <nlohmann/json.hpp>

#include "dspaces/errors.hpp"
#include "dspaces/log_sum.hpp"

namespace dspaces {

using nlohmann::json;

namespace {

SupportTree tree_of(const DyadicCube& root, int depth, const std::vector<CubeSequence::Entry>& entries) {
    std::vector<DyadicCube> cubes;
    cubes.reserve(entries.size());
    for (const auto& e : entries) cubes.push_back(e.cube);
    return SupportTree(root, depth, std::move(cubes));
}

DyadicCube cube_from_json(const json& j, int dim) {
    if (!j.contains("j") || !j.contains("k")) throw ParseError("cube record needs \"j\" and \"k\"");
    auto k = j.at("k").get<std::vector<std::int64_t>>();
    if (static_cast<int>(k.size()) != dim) {
        throw ParseError("cube index has " + std::to_string(k.size()) + " components, expected " + std::to_string(dim));
    }
    return DyadicCube(j.at("j").get<int>(), std::move(k));
}

}  // namespace

CubeSequence::CubeSequence(DyadicCube root, int depth, std::vector<Entry> entries)
    : tree_(tree_of(root, depth, entries)), log2_magnitudes_(tree_.size(), kNegInf) {
    for (const auto& e : entries) {
        if (std::isnan(e.log2_magnitude) || e.log2_magnitude == kInf) {
            throw ParameterError("magnitude at " + e.cube.to_string() + " is not finite");
        }
        log2_magnitudes_[static_cast<std::size_t>(tree_.find(e.cube))] = e.log2_magnitude;
    }
}

CubeSequence CubeSequence::from_values(DyadicCube root, int depth,
                                       const std::vector<std::pair<DyadicCube, double>>& values) {
    std::vector<Entry> entries;
    entries.reserve(values.size());
    for (const auto& [q, v] : values) {
        if (!std::isfinite(v)) throw ParameterError("coefficient at " + q.to_string() + " is not finite");
        entries.push_back({q, std::log2(std::abs(v))});
    }
    return CubeSequence(std::move(root), depth, std::move(entries));
}

double CubeSequence::log2_magnitude_of(const DyadicCube& q) const {
    const auto i = tree_.find(q);
    return i < 0 ? kNegInf : log2_magnitudes_[static_cast<std::size_t>(i)];
}

bool CubeSequence::is_zero() const {
    for (double v : log2_magnitudes_) {
        if (v != kNegInf) return false;
    }
    return true;
}

std::vector<CubeSequence::Entry> CubeSequence::entries() const {
    std::vector<Entry> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back({tree_.node(i), log2_magnitudes_[i]});
    return out;
}

CubeSequence CubeSequence::scaled(double log2_factor) const {
    auto mags = log2_magnitudes_;
    for (auto& v : mags) v += log2_factor;  // -inf stays -inf
    return CubeSequence(tree_, std::move(mags));
}

CubeSequence CubeSequence::with_entry(const DyadicCube& q, double log2_magnitude) const {
    auto es = entries();
    bool replaced = false;
    for (auto& e : es) {
        if (e.cube == q) {
            e.log2_magnitude = log2_magnitude;
            replaced = true;
        }
    }
    if (!replaced) es.push_back({q, log2_magnitude});
    return CubeSequence(tree_.root(), tree_.max_depth(), std::move(es));
}

CubeSequence read_sequence_jsonl(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    auto next_record = [&](json& out) {
        while (std::getline(in, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            try {
                out = json::parse(line);
            } catch (const json::exception& e) {
                throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
            }
            return true;
        }
        return false;
    };

    json header;
    if (!next_record(header)) throw ParseError("empty sequence file");
    try {
        const int dim = header.at("dim").get<int>();
        if (dim < 1) throw ParseError("header: dim must be >= 1");
        const DyadicCube root = cube_from_json(header.at("root"), dim);
        const int depth = header.at("depth").get<int>();

        std::vector<CubeSequence::Entry> entries;
        json rec;
        while (next_record(rec)) {
            DyadicCube q = cube_from_json(rec, dim);
            double log2v = 0;
            if (rec.contains("log2v")) {
                log2v = rec.at("log2v").get<double>();
            } else if (rec.contains("v")) {
                const double v = rec.at("v").get<double>();
                if (!std::isfinite(v)) throw ParseError("line " + std::to_string(line_no) + ": non-finite value");
                log2v = std::log2(std::abs(v));
            } else {
                throw ParseError("line " + std::to_string(line_no) + ": record needs \"v\" or \"log2v\"");
            }
            entries.push_back({std::move(q), log2v});
        }
        return CubeSequence(root, depth, std::move(entries));
    } catch (const json::exception& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const ParameterError& e) {
        throw ParseError(e.what());
    }
}

void write_sequence_jsonl(std::ostream& out, const CubeSequence& t) {
    const auto& root = t.tree().root();
    json header = {{"dim", t.dim()},
                   {"root", {{"j", root.level()}, {"k", root.index()}}},
                   {"depth", t.tree().max_depth()}};
    out << header.dump() << '\n';
    for (std::size_t i = 0; i < t.size(); ++i) {
        const auto& q = t.tree().node(i);
        const double l = t.log2_magnitude(i);
        json rec = {{"j", q.level()}, {"k", q.index()}, {"v", l == kNegInf ? 0.0 : std::exp2(l)}};
        if (l != kNegInf) rec["log2v"] = l;
        out << rec.dump() << '\n';
    }
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finalizer over the combined words
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

CubeSequence random_sequence(const DyadicCube& root, int depth, std::uint64_t seed, const RandomSequenceOptions& options) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution keep(options.keep);
    std::uniform_real_distribution<double> mag(options.log2_lo, options.log2_hi);

    std::vector<CubeSequence::Entry> entries;
    std::vector<DyadicCube> frontier{root};
    entries.push_back({root, mag(rng)});
    for (int d = 0; d < depth && !frontier.empty(); ++d) {
        std::vector<DyadicCube> next;
        for (const auto& q : frontier) {
            for (auto& c : q.children()) {
                if (keep(rng)) {
                    entries.push_back({c, mag(rng)});
                    next.push_back(std::move(c));
                }
            }
        }
        frontier = std::move(next);
    }
    return CubeSequence(root, depth, std::move(entries));
}

}  // namespace dspaces
