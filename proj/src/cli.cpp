#include "psmaca/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "psmaca/ca_core.hpp"
#include "psmaca/metrics.hpp"
#include "psmaca/model.hpp"
#include "psmaca/records.hpp"
#include "psmaca/toy_data.hpp"

namespace psmaca::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SimulateArgs {
    int rule = 30;
    std::size_t width = 31;
    std::size_t steps = 15;
    std::string boundary = "null";
    std::string init;
};

struct BasinsArgs {
    int rule = 0;
    unsigned width = 4;
    std::string boundary = "null";
};

struct TrainArgs {
    std::string data;
    std::string out;
    std::string history;
    std::string scale;
    std::string mode = "centroid";
    std::size_t window = 7;
    std::uint64_t seed = 1;
    maca::TreeConfig tree;
    signal::PipelineConfig pipeline;
};

struct PredictArgs {
    std::string model;
    std::string fasta;
    std::string out;
    std::string mode;
    bool pipeline = false;
};

struct EvaluateArgs {
    std::string model;
    std::string data;
    std::string report;
    std::string json;
    std::string table;
    std::string mode;
    bool pipeline = false;
};

struct SynthArgs {
    std::string kind = "rule";
    std::string out;
    std::size_t count = 24;
    std::uint64_t seed = 1;
    std::size_t min_length = 40;
    std::size_t max_length = 120;
    std::size_t period = 9;
    std::size_t repeats = 12;
};

void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") out << text;
    else io::write_file(path, text);
}

std::string fixed6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

int run_simulate(const SimulateArgs& a, std::ostream& out) {
    const auto boundary = ca::parse_boundary(a.boundary);
    ca::CaConfiguration start = a.init.empty() ? ca::CaConfiguration::single_seed(a.width, boundary)
                                               : ca::CaConfiguration::from_string(a.init, boundary);
    out << ca::space_time_text(ca::evolve(start, ca::rule_from_number(a.rule), a.steps));
    return kSuccess;
}

int run_basins(const BasinsArgs& a, std::ostream& out) {
    const auto graph =
        ca::state_transition_graph(ca::rule_from_number(a.rule), a.width, ca::parse_boundary(a.boundary));
    const auto basins = ca::attractor_basins(graph);
    out << "rule " << a.rule << " width " << a.width << " boundary " << a.boundary << ": " << basins.size()
        << " basin(s)\n";
    out << "basin\tcycle_length\tsize\tcycle\n";
    for (std::size_t i = 0; i < basins.size(); ++i) {
        const auto& b = basins[i];
        out << i << '\t' << b.attractor_cycle.size() << '\t' << b.members.size() << '\t';
        for (std::size_t k = 0; k < b.attractor_cycle.size(); ++k)
            out << (k ? " -> " : "") << ca::state_to_string(b.attractor_cycle[k], a.width);
        out << '\n';
    }
    return kSuccess;
}

io::Dataset load_dataset(const std::string& path) {
    io::Dataset d{path, io::parse_records(io::read_file(path))};
    d.validate();
    return d;
}

int run_train(TrainArgs a, std::ostream& out) {
    if (a.window % 2 == 0) throw UsageError("--window must be odd");
    a.pipeline.decode_mode = seq::parse_decode_mode(a.mode);
    if (!a.scale.empty()) a.pipeline.scale = seq::HydropathyScale::load_tsv_file(a.scale);
    a.tree.ga.rng_seed = a.seed;

    const auto data = load_dataset(a.data);
    std::vector<evolve::FitnessHistory> histories;
    model::TrainOptions opts{a.window, a.tree, a.seed, a.pipeline, &histories};
    const auto m = model::train_model(data, opts);
    model::save_model(m, a.out);
    if (!a.history.empty() && !histories.empty()) {
        std::ostringstream h;
        histories.front().write_tsv(h);
        io::write_file(a.history, h.str());
    }
    out << "trained on " << m.templates.size() << " record(s): " << m.tree.nodes().size() << " node(s), "
        << m.tree.leaf_count() << " leaves, depth " << m.tree.depth() << ", fingerprint " << m.fingerprint << '\n';
    return kSuccess;
}

signal::PipelineConfig pipeline_for(const model::ModelFile& m, const std::string& mode) {
    auto cfg = m.pipeline;
    if (!mode.empty()) cfg.decode_mode = seq::parse_decode_mode(mode);
    return cfg;
}

int run_predict(const PredictArgs& a, std::ostream& out) {
    const auto m = model::load_model(a.model);
    const auto records = io::parse_records(io::read_file(a.fasta));
    const auto cfg = pipeline_for(m, a.mode);
    std::string text;
    for (const auto& r : records) {
        if (a.pipeline) {
            const auto res = signal::predict_structure(r.sequence, m.templates, cfg);
            const std::string note = "method=pipeline base=" + res.base_id + " score=" + fixed6(res.similarity_score) +
                                     " mode=" + std::string(seq::to_string(cfg.decode_mode));
            text += io::format_paired(r.id, r.sequence, res.predicted, note, "Predicted Structure:");
        } else {
            const auto predicted = model::predict_with_tree(m, r.sequence);
            text += io::format_paired(r.id, r.sequence, predicted, "method=tree model=" + m.fingerprint,
                                      "Predicted Structure:");
        }
        text += '\n';
    }
    emit(a.out, text, out);
    return kSuccess;
}

int run_evaluate(const EvaluateArgs& a, std::ostream& out) {
    const auto m = model::load_model(a.model);
    const auto data = load_dataset(a.data);
    const auto cfg = pipeline_for(m, a.mode);

    std::vector<metrics::Q3Row> tree_rows, pipe_rows;
    for (const auto& r : data.records) {
        if (!r.structure) throw std::invalid_argument("record '" + r.id + "' has no reference structure");
        tree_rows.push_back(metrics::q3(model::predict_with_tree(m, r.sequence), *r.structure, r.id));
        const auto res = signal::predict_structure(r.sequence, m.templates, cfg);
        pipe_rows.push_back(metrics::q3(res.predicted, *r.structure, r.id));
    }
    const auto tree_report = metrics::aggregate(std::move(tree_rows), "PSMACA tree");
    const auto pipe_report = metrics::aggregate(std::move(pipe_rows), "PSMACA pipeline");
    const auto& chosen = a.pipeline ? pipe_report : tree_report;

    std::ostringstream tsv;
    metrics::write_tsv(tsv, chosen);
    io::write_file(a.report, tsv.str());
    io::write_file(a.json.empty() ? a.report + ".json" : a.json, metrics::to_json(chosen).dump(2) + "\n");

    std::ostringstream table;
    metrics::write_comparison_table(table, {tree_report, pipe_report});
    emit(a.table, table.str(), out);
    return kSuccess;
}

int run_synth(const SynthArgs& a, std::ostream& out) {
    io::Dataset d;
    if (a.kind == "rule") d = toy::make_rule_dataset(a.count, a.min_length, a.max_length, a.seed);
    else if (a.kind == "impulse") d = toy::make_impulse_dataset(a.count, a.period, a.repeats, a.seed);
    else throw UsageError("--kind must be rule or impulse");
    std::string text;
    for (const auto& r : d.records) text += io::format_paired(r.id, r.sequence, r.structure) + "\n";
    emit(a.out, text, out);
    return kSuccess;
}

void add_ga_flags(CLI::App* sub, TrainArgs& a) {
    sub->add_option("--population", a.tree.ga.population_size, "GA population size")->capture_default_str();
    sub->add_option("--generations", a.tree.ga.generations, "GA generations")->capture_default_str();
    sub->add_option("--crossover", a.tree.ga.crossover_rate, "Crossover probability")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    sub->add_option("--mutation", a.tree.ga.mutation_rate, "Per-bit mutation probability")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    sub->add_option("--elitism", a.tree.ga.elitism_count, "Elite individuals kept per generation")
        ->capture_default_str();
    sub->add_option("--max-depth", a.tree.max_depth, "Maximum tree depth")->capture_default_str();
    sub->add_option("--min-samples", a.tree.min_samples, "Smallest node that may be split")->capture_default_str();
    sub->add_option("--segments", a.tree.segments, "Dependency vectors per node (0 = ceil(log2 classes))")
        ->capture_default_str();
    sub->add_option("--filter-length", a.pipeline.filter_length, "Pipeline FIR length")->capture_default_str();
    sub->add_option("--ridge", a.pipeline.ridge, "Pipeline ridge penalty")->capture_default_str();
    sub->add_option("--kmer", a.pipeline.kmer, "k-mer size for template search")->capture_default_str();
    sub->add_option("--scale", a.scale, "Hydropathy scale TSV (default: Kyte-Doolittle)");
    sub->add_option("--mode", a.mode, "Pipeline decode mode: bands|centroid")->capture_default_str();
    sub->add_option("--history", a.history, "Write the root node's GA fitness history TSV here");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"PSMACA: MACA pattern classifier and protein secondary structure prediction", "psmaca"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Print an elementary CA space-time grid");
    simulate->add_option("--rule", sim.rule, "Wolfram rule number")->required()->check(CLI::Range(0, 255));
    simulate->add_option("--width", sim.width, "Lattice width")->check(CLI::Range(1, 1 << 20))->capture_default_str();
    simulate->add_option("--steps", sim.steps, "Number of steps")->capture_default_str();
    simulate->add_option("--boundary", sim.boundary, "null|periodic")->capture_default_str();
    simulate->add_option("--init", sim.init, "Initial cells as 0/1 (default: single centered 1)");

    BasinsArgs bas;
    auto* basins = app.add_subcommand("basins", "List attractor cycles and basin sizes");
    basins->add_option("--rule", bas.rule, "Wolfram rule number")->required()->check(CLI::Range(0, 255));
    basins->add_option("--width", bas.width, "Lattice width")
        ->required()
        ->check(CLI::Range(1u, ca::kMaxGraphWidth));
    basins->add_option("--boundary", bas.boundary, "null|periodic")->capture_default_str();

    TrainArgs tr;
    auto* train = app.add_subcommand("train", "Evolve a PSMACA tree and write a model file");
    train->add_option("--data", tr.data, "Training records (paired blocks)")->required();
    train->add_option("--window", tr.window, "Odd window size")->check(CLI::Range(1, 25))->capture_default_str();
    train->add_option("--out", tr.out, "Model output path")->required();
    train->add_option("--seed", tr.seed, "Random seed")->capture_default_str();
    add_ga_flags(train, tr);

    PredictArgs pr;
    auto* predict = app.add_subcommand("predict", "Predict secondary structure");
    predict->add_option("--model", pr.model, "Model file")->required();
    predict->add_option("--fasta", pr.fasta, "Input sequences")->required();
    predict->add_flag("--pipeline", pr.pipeline, "Use the signal pipeline instead of the tree");
    predict->add_option("--mode", pr.mode, "Pipeline decode mode: bands|centroid");
    predict->add_option("--out", pr.out, "Output path (default: stdout)");

    EvaluateArgs ev;
    auto* evaluate = app.add_subcommand("evaluate", "Score predictions against reference structures");
    evaluate->add_option("--model", ev.model, "Model file")->required();
    evaluate->add_option("--data", ev.data, "Records with reference structures")->required();
    evaluate->add_option("--report", ev.report, "Q3 TSV output")->required();
    evaluate->add_option("--json", ev.json, "Metrics JSON output (default: <report>.json)");
    evaluate->add_option("--table", ev.table, "Method comparison table (default: stdout)");
    evaluate->add_flag("--pipeline", ev.pipeline, "Report the signal pipeline instead of the tree");
    evaluate->add_option("--mode", ev.mode, "Pipeline decode mode: bands|centroid");

    SynthArgs sy;
    auto* synth = app.add_subcommand("synth", "Write a seeded synthetic dataset");
    synth->add_option("--kind", sy.kind, "rule|impulse")->capture_default_str();
    synth->add_option("--count", sy.count, "Number of records")->capture_default_str();
    synth->add_option("--seed", sy.seed, "Random seed")->capture_default_str();
    synth->add_option("--min-length", sy.min_length, "Shortest rule record")->capture_default_str();
    synth->add_option("--max-length", sy.max_length, "Longest rule record")->capture_default_str();
    synth->add_option("--period", sy.period, "Impulse period")->capture_default_str();
    synth->add_option("--repeats", sy.repeats, "Impulse repeats per record")->capture_default_str();
    synth->add_option("--out", sy.out, "Output path (default: stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kSuccess;
        }
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*simulate) return run_simulate(sim, out);
        if (*basins) return run_basins(bas, out);
        if (*train) return run_train(tr, out);
        if (*predict) return run_predict(pr, out);
        if (*evaluate) return run_evaluate(ev, out);
        if (*synth) return run_synth(sy, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const io::ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kDataError;
    } catch (const model::ModelError& e) {
        err << "model error: " << e.what() << '\n';
        return kDataError;
    } catch (const signal::SingularSystemError& e) {
        err << "data error: " << e.what() << '\n';
        return kDataError;
    } catch (const std::invalid_argument& e) {
        err << "data error: " << e.what() << '\n';
        return kDataError;
    } catch (const std::out_of_range& e) {
        err << "data error: " << e.what() << '\n';
        return kDataError;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
    err << "internal error: no subcommand ran\n";
    return kInternalError;
}

}  // namespace psmaca::cli
