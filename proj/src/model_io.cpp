#include "psmaca/model.hpp"

#include <algorithm>

namespace psmaca::model {

std::vector<maca::LabeledPattern> window_training_set(const std::vector<io::ProteinRecord>& records,
                                                      std::size_t window,
                                                      const std::vector<std::string>& class_names) {
    auto class_of = [&](char label) {
        auto it = std::find(class_names.begin(), class_names.end(), std::string(1, label));
        if (it == class_names.end()) throw std::invalid_argument("structure label '" + std::string(1, label) + "' has no class");
        return static_cast<maca::ClassId>(it - class_names.begin());
    };
    std::vector<maca::LabeledPattern> out;
    for (const auto& r : records) {
        if (!r.structure) continue;
        auto patterns = seq::window_patterns(r.sequence, window);
        for (std::size_t i = 0; i < patterns.size(); ++i)
            out.push_back({std::move(patterns[i]), class_of((*r.structure)[i])});
    }
    return out;
}

ModelFile train_model(const io::Dataset& data, const TrainOptions& options) {
    data.validate();
    options.pipeline.validate();
    std::vector<io::ProteinRecord> templates;
    for (const auto& r : data.records)
        if (r.structure) templates.push_back(r);
    if (templates.empty()) throw std::invalid_argument("dataset '" + data.name + "' has no records with structures");

    const auto& names = kDefaultClassNames;
    const auto training = window_training_set(templates, options.window, names);
    auto tree = maca::build_tree(training, options.tree, options.seed, {options.histories});

    io::Dataset kept{data.name, templates};
    return ModelFile{kModelFormatVersion, options.window, names,   std::move(tree),
                     options.pipeline,    std::move(templates), kept.fingerprint()};
}

seq::StructureSeq predict_with_tree(const ModelFile& model, const seq::AminoAcidSeq& sequence) {
    const auto patterns = seq::window_patterns(sequence, model.window);
    std::string labels;
    labels.reserve(patterns.size());
    for (const auto& p : patterns) {
        const auto cls = model.tree.classify(p);
        if (cls < 0 || static_cast<std::size_t>(cls) >= model.class_names.size())
            throw ModelError("tree produced class id " + std::to_string(cls) + " with no name");
        labels += model.class_names[static_cast<std::size_t>(cls)];
    }
    return seq::StructureSeq(std::move(labels));
}

namespace {

nlohmann::json pipeline_json(const signal::PipelineConfig& p) {
    nlohmann::json scale = nlohmann::json::object();
    for (const auto& [residue, v] : p.scale.values()) scale[std::string(1, residue)] = v;
    return {
        {"filter_length", p.filter_length},
        {"ridge", p.ridge},
        {"decode_mode", std::string(seq::to_string(p.decode_mode))},
        {"kmer", p.kmer},
        {"encoding", {{"helix", p.encoding.helix}, {"strand", p.encoding.strand}, {"coil", p.encoding.coil}}},
        {"scale", {{"name", p.scale.name()}, {"values", std::move(scale)}}},
    };
}

signal::PipelineConfig pipeline_from_json(const nlohmann::json& j) {
    signal::PipelineConfig p;
    p.filter_length = j.at("filter_length").get<std::size_t>();
    p.ridge = j.at("ridge").get<double>();
    p.decode_mode = seq::parse_decode_mode(j.at("decode_mode").get<std::string>());
    p.kmer = j.at("kmer").get<std::size_t>();
    const auto& e = j.at("encoding");
    p.encoding = {e.at("helix").get<double>(), e.at("strand").get<double>(), e.at("coil").get<double>()};
    std::map<char, double> values;
    for (const auto& [key, v] : j.at("scale").at("values").items()) {
        if (key.size() != 1) throw std::invalid_argument("bad scale residue '" + key + "'");
        values[key[0]] = v.get<double>();
    }
    p.scale = seq::HydropathyScale(j.at("scale").at("name").get<std::string>(), std::move(values));
    p.validate();
    return p;
}

}  // namespace

nlohmann::json to_json(const ModelFile& model) {
    nlohmann::json templates = nlohmann::json::array();
    for (const auto& r : model.templates)
        templates.push_back({{"id", r.id}, {"sequence", r.sequence.str()}, {"structure", r.structure->str()}});
    return {
        {"format", "psmaca-model"},
        {"version", model.version},
        {"window", model.window},
        {"class_names", model.class_names},
        {"tree", maca::to_json(model.tree)},
        {"pipeline", pipeline_json(model.pipeline)},
        {"templates", std::move(templates)},
        {"fingerprint", model.fingerprint},
    };
}

ModelFile model_from_json(const nlohmann::json& j) {
    try {
        if (!j.is_object() || j.value("format", "") != "psmaca-model")
            throw ModelError("not a psmaca model document");
        const int version = j.at("version").get<int>();
        if (version != kModelFormatVersion)
            throw ModelError("model format version " + std::to_string(version) + " is not supported (expected " +
                             std::to_string(kModelFormatVersion) + ")");
        std::vector<io::ProteinRecord> templates;
        for (const auto& t : j.at("templates"))
            templates.emplace_back(t.at("id").get<std::string>(), seq::AminoAcidSeq(t.at("sequence").get<std::string>()),
                                   seq::StructureSeq(t.at("structure").get<std::string>()));
        ModelFile m{version,
                    j.at("window").get<std::size_t>(),
                    j.at("class_names").get<std::vector<std::string>>(),
                    maca::tree_from_json(j.at("tree")),
                    pipeline_from_json(j.at("pipeline")),
                    std::move(templates),
                    j.at("fingerprint").get<std::string>()};
        if (m.window == 0 || m.window % 2 == 0) throw ModelError("model window must be odd");
        if (m.tree.width() != m.window * seq::kResidueCodeBits)
            throw ModelError("tree width " + std::to_string(m.tree.width()) + " does not match window " +
                             std::to_string(m.window));
        io::Dataset check{"", m.templates};
        check.validate();
        if (check.fingerprint() != m.fingerprint)
            throw ModelError("template fingerprint mismatch: stored " + m.fingerprint + ", computed " +
                             check.fingerprint());
        return m;
    } catch (const ModelError&) {
        throw;
    } catch (const std::exception& e) {
        throw ModelError(std::string("malformed model: ") + e.what());
    }
}

void save_model(const ModelFile& model, const std::string& path) {
    io::write_file(path, to_json(model).dump(2) + "\n");
}

ModelFile load_model(const std::string& path) {
    const auto text = io::read_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ModelError("corrupted model file " + path + ": " + e.what());
    }
    return model_from_json(j);
}

}  // namespace psmaca::model
