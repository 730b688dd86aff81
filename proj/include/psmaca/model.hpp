#pragma once

// Trained model: the window-pattern PSMACA tree, the signal pipeline settings
// and the template proteins the pipeline searches, persisted as JSON.

#include <stdexcept>
#include <string>
#include <vector>

#include "psmaca/psmaca_tree.hpp"
#include "psmaca/records.hpp"
#include "psmaca/signalpred.hpp"

namespace psmaca::model {

inline constexpr int kModelFormatVersion = 1;

/// Class ids used for structure labels: index into this list.
inline const std::vector<std::string> kDefaultClassNames = {"C", "E", "H"};

struct ModelFile {
    int version = kModelFormatVersion;
    std::size_t window = 7;
    std::vector<std::string> class_names;
    maca::PsmacaTree tree;
    signal::PipelineConfig pipeline;
    std::vector<io::ProteinRecord> templates;
    /// Dataset::fingerprint() of the templates.
    std::string fingerprint;

    bool operator==(const ModelFile&) const = default;
};

class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One labeled window pattern per residue of every record with a structure.
std::vector<maca::LabeledPattern> window_training_set(const std::vector<io::ProteinRecord>& records,
                                                      std::size_t window,
                                                      const std::vector<std::string>& class_names);

struct TrainOptions {
    std::size_t window = 7;
    maca::TreeConfig tree;
    std::uint64_t seed = 1;
    signal::PipelineConfig pipeline;
    std::vector<evolve::FitnessHistory>* histories = nullptr;
};

/// Throws std::invalid_argument if no record carries a structure.
ModelFile train_model(const io::Dataset& data, const TrainOptions& options);

/// Per-residue tree classification of window patterns.
seq::StructureSeq predict_with_tree(const ModelFile& model, const seq::AminoAcidSeq& sequence);

nlohmann::json to_json(const ModelFile& model);
/// Throws ModelError on unknown format/version, malformed content or a
/// fingerprint that does not match the embedded templates.
ModelFile model_from_json(const nlohmann::json& j);

void save_model(const ModelFile& model, const std::string& path);
ModelFile load_model(const std::string& path);

}  // namespace psmaca::model
