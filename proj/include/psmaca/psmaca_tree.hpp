#pragma once

// Recursive MACA classifier. Each internal node holds a GA-evolved MACA whose
// basins partition the node's training patterns; single-class basins become
// leaves and mixed basins are partitioned again.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "psmaca/evolve.hpp"
#include "psmaca/maca.hpp"

namespace psmaca::maca {

struct TreeConfig {
    std::size_t max_depth = 8;
    /// Nodes holding fewer patterns become majority leaves.
    std::size_t min_samples = 2;
    /// Segments per node; 0 selects ceil(log2 K') for a node with K' classes.
    std::size_t segments = 0;
    evolve::GaConfig ga;

    void validate() const;
    bool operator==(const TreeConfig&) const = default;
};

struct TreeNode {
    std::size_t depth = 0;
    std::size_t samples = 0;
    /// Leaf class, or the node's majority class used for unseen signatures.
    ClassId label = 0;
    /// Present on internal nodes only.
    std::optional<Maca> maca;
    std::optional<DependencyVector> classifier2;
    double fitness = 0.0;
    std::map<Signature, std::size_t> children;

    bool is_leaf() const { return !maca.has_value(); }
    bool operator==(const TreeNode&) const = default;
};

class PsmacaTree {
public:
    PsmacaTree(std::size_t width, TreeConfig config, std::vector<TreeNode> nodes);

    std::size_t width() const { return width_; }
    const TreeConfig& config() const { return config_; }
    const std::vector<TreeNode>& nodes() const { return nodes_; }
    const TreeNode& root() const { return nodes_.front(); }

    /// Throws std::invalid_argument when pattern.size() != width().
    ClassId classify(const BitVector& pattern) const;

    /// Longest root-to-leaf path, counted in edges.
    std::size_t depth() const;
    std::size_t leaf_count() const;

    bool operator==(const PsmacaTree&) const = default;

private:
    std::size_t width_;
    TreeConfig config_;
    std::vector<TreeNode> nodes_;
};

struct BuildOptions {
    /// Receives the GA history of every internal node, in node order.
    std::vector<evolve::FitnessHistory>* histories = nullptr;
};

/// Throws std::invalid_argument for an empty training set or patterns of
/// differing lengths.
PsmacaTree build_tree(std::span<const LabeledPattern> training, const TreeConfig& config,
                      std::uint64_t rng_seed, BuildOptions options = {});

inline constexpr int kTreeFormatVersion = 1;

nlohmann::json to_json(const TreeConfig& config);
TreeConfig tree_config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PsmacaTree& tree);
/// Throws std::runtime_error on unknown versions or malformed documents.
PsmacaTree tree_from_json(const nlohmann::json& j);

}  // namespace psmaca::maca
