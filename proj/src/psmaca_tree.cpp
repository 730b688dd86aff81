#include "psmaca/psmaca_tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace psmaca::maca {

void TreeConfig::validate() const {
    if (min_samples < 1) throw std::invalid_argument("min_samples must be at least 1");
    if (segments > kMaxSegments) throw std::invalid_argument("segments exceeds the supported maximum");
    ga.validate();
}

PsmacaTree::PsmacaTree(std::size_t width, TreeConfig config, std::vector<TreeNode> nodes)
    : width_(width), config_(std::move(config)), nodes_(std::move(nodes)) {
    if (nodes_.empty()) throw std::invalid_argument("tree needs a root node");
}

ClassId PsmacaTree::classify(const BitVector& pattern) const {
    if (pattern.size() != width_)
        throw std::invalid_argument("pattern length " + std::to_string(pattern.size()) +
                                    " does not match tree width " + std::to_string(width_));
    const TreeNode* node = &nodes_.front();
    while (!node->is_leaf()) {
        auto it = node->children.find(node->maca->ds.signature(pattern));
        if (it == node->children.end()) return node->label;
        node = &nodes_[it->second];
    }
    return node->label;
}

std::size_t PsmacaTree::depth() const {
    std::size_t d = 0;
    for (const auto& n : nodes_)
        if (n.is_leaf()) d = std::max(d, n.depth);
    return d;
}

std::size_t PsmacaTree::leaf_count() const {
    return static_cast<std::size_t>(
        std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

namespace {

std::size_t ceil_log2(std::size_t k) {
    std::size_t m = 0;
    while ((std::size_t{1} << m) < k) ++m;
    return m;
}

bool all_identical(std::span<const LabeledPattern> patterns) {
    return std::all_of(patterns.begin(), patterns.end(),
                       [&](const LabeledPattern& p) { return p.bits == patterns.front().bits; });
}

class TreeBuilder {
public:
    TreeBuilder(std::size_t width, const TreeConfig& config, std::uint64_t seed, BuildOptions options)
        : width_(width), config_(config), seed_(seed), options_(options) {}

    std::vector<TreeNode> run(std::vector<LabeledPattern> training) {
        nodes_.emplace_back();
        partition(0, std::move(training), 0);
        return std::move(nodes_);
    }

private:
    void partition(std::size_t index, std::vector<LabeledPattern> patterns, std::size_t depth) {
        std::map<ClassId, std::size_t> counts;
        for (const auto& p : patterns) ++counts[p.label];
        {
            TreeNode& node = nodes_[index];
            node.depth = depth;
            node.samples = patterns.size();
            node.label = majority_label(counts);
        }
        if (counts.size() == 1) return;
        if (depth >= config_.max_depth || patterns.size() < config_.min_samples || all_identical(patterns))
            return;

        std::size_t m = config_.segments ? config_.segments : std::max<std::size_t>(1, ceil_log2(counts.size()));
        m = std::min({m, width_, kMaxSegments});

        evolve::GaConfig ga = config_.ga;
        ga.rng_seed = derive_seed(seed_, index);
        auto evolved = evolve::evolve_maca(patterns, width_, m, ga);
        if (options_.histories) options_.histories->push_back(std::move(evolved.history));

        Distribution buckets = distribute(evolved.best.classifier1, patterns);
        patterns.clear();
        {
            TreeNode& node = nodes_[index];
            node.maca = Maca{evolved.best.classifier1, label_basins(buckets)};
            node.classifier2 = evolved.best.classifier2;
            node.fitness = evolved.best_fitness;
        }
        for (auto& [sig, bucket] : buckets) {
            const std::size_t child = nodes_.size();
            nodes_.emplace_back();
            nodes_[index].children.emplace(sig, child);
            partition(child, std::move(bucket), depth + 1);
        }
    }

    std::size_t width_;
    const TreeConfig& config_;
    std::uint64_t seed_;
    BuildOptions options_;
    std::vector<TreeNode> nodes_;
};

}  // namespace

PsmacaTree build_tree(std::span<const LabeledPattern> training, const TreeConfig& config,
                      std::uint64_t rng_seed, BuildOptions options) {
    config.validate();
    if (training.empty()) throw std::invalid_argument("training set is empty");
    const std::size_t width = training.front().bits.size();
    if (width == 0) throw std::invalid_argument("training patterns must have at least one bit");
    for (std::size_t i = 0; i < training.size(); ++i)
        if (training[i].bits.size() != width)
            throw std::invalid_argument("training pattern " + std::to_string(i) + " has length " +
                                        std::to_string(training[i].bits.size()) + ", expected " +
                                        std::to_string(width));
    TreeBuilder builder(width, config, rng_seed, options);
    auto nodes = builder.run(std::vector<LabeledPattern>(training.begin(), training.end()));
    return PsmacaTree(width, config, std::move(nodes));
}

nlohmann::json to_json(const TreeConfig& config) {
    return {
        {"max_depth", config.max_depth},
        {"min_samples", config.min_samples},
        {"segments", config.segments},
        {"ga",
         {{"population_size", config.ga.population_size},
          {"generations", config.ga.generations},
          {"crossover_rate", config.ga.crossover_rate},
          {"mutation_rate", config.ga.mutation_rate},
          {"elitism_count", config.ga.elitism_count},
          {"rng_seed", config.ga.rng_seed}}},
    };
}

TreeConfig tree_config_from_json(const nlohmann::json& j) {
    TreeConfig c;
    c.max_depth = j.at("max_depth").get<std::size_t>();
    c.min_samples = j.at("min_samples").get<std::size_t>();
    c.segments = j.at("segments").get<std::size_t>();
    const auto& ga = j.at("ga");
    c.ga.population_size = ga.at("population_size").get<std::size_t>();
    c.ga.generations = ga.at("generations").get<std::size_t>();
    c.ga.crossover_rate = ga.at("crossover_rate").get<double>();
    c.ga.mutation_rate = ga.at("mutation_rate").get<double>();
    c.ga.elitism_count = ga.at("elitism_count").get<std::size_t>();
    c.ga.rng_seed = ga.at("rng_seed").get<std::uint64_t>();
    return c;
}

nlohmann::json to_json(const PsmacaTree& tree) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : tree.nodes()) {
        nlohmann::json jn = {{"depth", n.depth}, {"samples", n.samples}, {"label", n.label}};
        if (!n.is_leaf()) {
            const std::size_t m = n.maca->ds.segment_count();
            jn["fitness"] = n.fitness;
            jn["ds"] = n.maca->ds.to_strings();
            if (n.classifier2) jn["classifier2"] = n.classifier2->to_string();
            nlohmann::json labels = nlohmann::json::object();
            for (const auto& [sig, label] : n.maca->basin_labels) labels[signature_to_string(sig, m)] = label;
            jn["basin_labels"] = std::move(labels);
            nlohmann::json children = nlohmann::json::object();
            for (const auto& [sig, child] : n.children) children[signature_to_string(sig, m)] = child;
            jn["children"] = std::move(children);
        }
        nodes.push_back(std::move(jn));
    }
    return {
        {"format", "psmaca-tree"},
        {"version", kTreeFormatVersion},
        {"width", tree.width()},
        {"config", to_json(tree.config())},
        {"nodes", std::move(nodes)},
    };
}

namespace {

Signature checked_signature(const std::string& key, std::size_t m) {
    if (key.size() != m) throw std::runtime_error("signature '" + key + "' does not have " + std::to_string(m) + " bits");
    return signature_from_string(key);
}

}  // namespace

PsmacaTree tree_from_json(const nlohmann::json& j) {
    try {
        if (j.at("format").get<std::string>() != "psmaca-tree") throw std::runtime_error("not a psmaca tree document");
        const int version = j.at("version").get<int>();
        if (version != kTreeFormatVersion)
            throw std::runtime_error("tree format version " + std::to_string(version) + " is not supported (expected " +
                                     std::to_string(kTreeFormatVersion) + ")");
        const auto width = j.at("width").get<std::size_t>();
        TreeConfig config = tree_config_from_json(j.at("config"));

        std::vector<TreeNode> nodes;
        const auto& jnodes = j.at("nodes");
        for (std::size_t i = 0; i < jnodes.size(); ++i) {
            const auto& jn = jnodes[i];
            TreeNode n;
            n.depth = jn.at("depth").get<std::size_t>();
            n.samples = jn.at("samples").get<std::size_t>();
            n.label = jn.at("label").get<ClassId>();
            if (jn.contains("ds")) {
                auto ds = DependencyString::from_strings(jn.at("ds").get<std::vector<std::string>>());
                if (ds.width() != width) throw std::runtime_error("node " + std::to_string(i) + " has the wrong width");
                const std::size_t m = ds.segment_count();
                std::map<Signature, ClassId> labels;
                for (const auto& [key, label] : jn.at("basin_labels").items())
                    labels.emplace(checked_signature(key, m), label.get<ClassId>());
                for (const auto& [key, child] : jn.at("children").items()) {
                    const auto c = child.get<std::size_t>();
                    if (c <= i || c >= jnodes.size())
                        throw std::runtime_error("node " + std::to_string(i) + " has an invalid child index");
                    n.children.emplace(checked_signature(key, m), c);
                }
                n.fitness = jn.at("fitness").get<double>();
                if (jn.contains("classifier2"))
                    n.classifier2 = DependencyVector::from_string(jn.at("classifier2").get<std::string>());
                n.maca = Maca{std::move(ds), std::move(labels)};
            }
            nodes.push_back(std::move(n));
        }
        return PsmacaTree(width, std::move(config), std::move(nodes));
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("malformed tree document: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("malformed tree document: ") + e.what());
    }
}

}  // namespace psmaca::maca
