// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "psmaca/ca_core.hpp"
#include "psmaca/cli.hpp"
#include "psmaca/evolve.hpp"
#include "psmaca/metrics.hpp"
#include "psmaca/psmaca_tree.hpp"
#include "psmaca/records.hpp"
#include "psmaca/seqcodec.hpp"
#include "psmaca/signalpred.hpp"
#include "oracles.hpp"

using namespace psmaca;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool ok;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, const char* name, double limit_ms, const std::function<Outcome()>& body) {
    Outcome o{false, ""};
    const auto start = Clock::now();
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    if (limit_ms > 0 && ms >= limit_ms) {
        o.ok = false;
        o.detail += (o.detail.empty() ? "" : "; ") + std::string("time limit exceeded");
    }
    if (!o.ok) ++failures;
    std::printf("%s  %2d  %-34s %10.3f ms", o.ok ? "PASS" : "FAIL", id, name, ms);
    if (limit_ms > 0) std::printf(" (limit %.0f ms)", limit_ms);
    if (!o.detail.empty()) std::printf("  %s", o.detail.c_str());
    std::printf("\n");
    std::fflush(stdout);
}

struct Scratch {
    fs::path dir;
    Scratch() {
        dir = fs::temp_directory_path() / ("psmaca_acceptance_" + std::to_string(std::random_device{}()));
        fs::create_directories(dir);
    }
    ~Scratch() {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }
    std::string operator/(const char* name) const { return (dir / name).string(); }
};

int run(const std::vector<std::string>& args, std::string* out = nullptr) {
    std::ostringstream o, e;
    const int code = cli::run_cli(args, o, e);
    if (out) *out = o.str();
    if (code != 0) std::fprintf(stderr, "  cli error: %s", e.str().c_str());
    return code;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

Outcome rule_fidelity() {
    const auto t = ca::rule_from_number(30);
    // neighborhoods 111 down to 000
    const int expected[8] = {0, 0, 0, 1, 1, 1, 1, 0};
    for (int k = 0; k < 8; ++k) {
        const int b = 7 - k;
        if (t((b >> 2) & 1, (b >> 1) & 1, b & 1) != expected[k]) return {false, "mapping differs"};
    }
    const auto rows = ca::evolve(ca::CaConfiguration::from_string("00100"), t, 2);
    const auto text = ca::space_time_text(rows);
    if (text != "00100\n01110\n11001\n") return {false, "evolution differs"};
    return {true, ""};
}

Outcome basin_oracle() {
    std::size_t cases = 0;
    for (unsigned n : {4u, 6u, 8u})
        for (auto boundary : {ca::Boundary::null, ca::Boundary::periodic})
            for (unsigned r = 0; r < 256; ++r) {
                const auto rule = ca::rule_from_number(r);
                const auto got = test::canonical(ca::attractor_basins(ca::state_transition_graph(rule, n, boundary)), n);
                if (got != test::brute_force_basins(rule, n, boundary))
                    return {false, "rule " + std::to_string(r) + " n=" + std::to_string(n) + " " +
                                       std::string(ca::to_string(boundary))};
                ++cases;
            }
    return {true, std::to_string(cases) + " cases"};
}

Outcome equal_split() {
    Rng rng(20240601);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t len = 1 + uniform_below(rng, 12);
        const auto dv = evolve::random_dependency_vector(len, rng);
        const maca::DependencyString ds({dv});
        std::size_t ones = 0;
        for (unsigned long long p = 0; p < (1ULL << len); ++p)
            ones += ds.signature(BitVector::from_string(test::to_bits(p, static_cast<unsigned>(len))));
        if (ones != (1ULL << (len - 1))) return {false, "DV " + dv.to_string()};
    }
    return {true, ""};
}

Outcome tree_purity() {
    Rng rng(777);
    const maca::TreeConfig config;
    std::size_t max_depth = 0;
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 4 + uniform_below(rng, 9);
        const std::size_t len = 1 + uniform_below(rng, n);
        const std::size_t start = uniform_below(rng, n - len + 1);
        std::string hidden(n, '0');
        const auto dv = evolve::random_dependency_vector(len, rng).to_string();
        hidden.replace(start, len, dv);
        const auto data = test::parity_dataset(hidden, 32 + uniform_below(rng, 97), rng);
        const auto tree = maca::build_tree(data, config, static_cast<std::uint64_t>(i) + 1);
        max_depth = std::max(max_depth, tree.depth());
        for (const auto& p : data)
            if (tree.classify(p.bits) != p.label) return {false, "dataset " + std::to_string(i) + " hidden " + hidden};
    }
    return {true, "max depth " + std::to_string(max_depth)};
}

Outcome ga_monotone_deterministic() {
    Rng rng(31337);
    for (std::uint64_t run = 1; run <= 50; ++run) {
        const std::size_t n = 6 + uniform_below(rng, 11);
        std::string hidden;
        for (std::size_t k = 0; k < n; ++k) hidden.push_back(uniform_below(rng, 2) ? '1' : '0');
        if (hidden.find('1') == std::string::npos) hidden[0] = '1';
        const auto data = test::parity_dataset(hidden, 100, rng);
        const std::size_t m = 1 + uniform_below(rng, 3);
        evolve::GaConfig config;
        config.population_size = 30;
        config.generations = 40;
        config.rng_seed = run;
        const auto a = evolve::evolve_maca(data, n, m, config);
        const auto b = evolve::evolve_maca(data, n, m, config);
        if (a.best.serialize() != b.best.serialize()) return {false, "seed " + std::to_string(run) + " not repeatable"};
        const auto& g = a.history.generations;
        for (std::size_t k = 1; k < g.size(); ++k)
            if (g[k].best < g[k - 1].best) return {false, "seed " + std::to_string(run) + " decreased"};
        for (std::size_t k = 0; k < g.size(); ++k)
            if (g[k].best_chromosome.serialize() != b.history.generations[k].best_chromosome.serialize())
                return {false, "seed " + std::to_string(run) + " history differs"};
    }
    return {true, ""};
}

Outcome deconvolution_recovery() {
    Rng rng(4242);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const std::size_t L = 1 + uniform_below(rng, 16);
        const std::size_t len = 10 * L + uniform_below(rng, 10 * L + 1);
        std::vector<double> x(len), f0(L);
        for (auto& v : x) v = -4.5 + 9.0 * uniform_unit(rng);
        for (auto& v : f0) v = -100.0 + 200.0 * uniform_unit(rng);
        const auto y = test::reference_convolution(x, f0);
        const auto f = signal::deconvolve(y, x, L, 0.0);
        for (std::size_t k = 0; k < L; ++k) worst = std::max(worst, std::abs(f.taps[k] - f0[k]));
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max abs error %.3g", worst);
    return {worst <= 1e-6, buf};
}

Outcome encode_round_trip() {
    Rng rng(99);
    for (int i = 0; i < 10000; ++i) {
        std::string s;
        const std::size_t len = 1 + uniform_below(rng, 200);
        for (std::size_t k = 0; k < len; ++k) s.push_back("HEC"[uniform_below(rng, 3)]);
        const seq::StructureSeq st(s);
        if (seq::structure_decode(seq::structure_encode(st), seq::DecodeMode::nearest_centroid) != st)
            return {false, s};
    }
    return {true, ""};
}

Outcome band_decoder() {
    const auto decoded = seq::structure_decode({100.0, 700.0, 400.0}, seq::DecodeMode::paper_bands).str();
    return {decoded == "HEC", decoded};
}

Outcome self_recall() {
    Scratch tmp;
    if (run({"synth", "--kind", "impulse", "--count", "12", "--seed", "5", "--out", tmp / "imp.txt"}) != 0)
        return {false, "synth failed"};
    if (run({"train", "--data", tmp / "imp.txt", "--out", tmp / "model.json", "--population", "10",
             "--generations", "5"}) != 0)
        return {false, "train failed"};
    if (run({"evaluate", "--model", tmp / "model.json", "--data", tmp / "imp.txt", "--pipeline", "--report",
             tmp / "report.tsv"}) != 0)
        return {false, "evaluate failed"};
    const auto lines = split(io::read_file(tmp / "report.tsv"), '\n');
    std::size_t rows = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto cols = split(lines[i], '\t');
        if (cols.size() < 2 || cols[1] != "100.0") return {false, "row: " + lines[i]};
        ++rows;
    }
    if (rows != 13) return {false, "expected 12 records plus ALL"};
    return {true, "12 records, q3 100.0"};
}

Outcome comparison_table_shape() {
    Scratch tmp;
    if (run({"synth", "--kind", "rule", "--count", "4", "--seed", "3", "--min-length", "20", "--max-length", "40",
             "--out", tmp / "data.txt"}) != 0)
        return {false, "synth failed"};
    if (run({"train", "--data", tmp / "data.txt", "--out", tmp / "model.json", "--population", "10",
             "--generations", "5"}) != 0)
        return {false, "train failed"};
    std::string table;
    if (run({"evaluate", "--model", tmp / "model.json", "--data", tmp / "data.txt", "--report", tmp / "r.tsv"},
            &table) != 0)
        return {false, "evaluate failed"};
    const auto lines = split(table, '\n');
    if (lines.size() < 3) return {false, "too few lines"};
    const auto header = split(lines[0], '\t');
    if (header.size() != 6 || header.front() != "Prediction method" || header.back() != "Overall (%)")
        return {false, "header: " + lines[0]};
    for (std::size_t c = 1; c + 1 < header.size(); ++c)
        if (header[c].rfind("Prediction accuracy for toy", 0) != 0) return {false, "column: " + header[c]};
    std::size_t rows = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        if (split(lines[i], '\t').size() != header.size()) return {false, "ragged row: " + lines[i]};
        ++rows;
    }
    if (rows != 2) return {false, "expected tree and pipeline rows"};
    return {true, "table shape only; published benchmark accuracies are not reproducible without the datasets"};
}

}  // namespace

int main() {
    report(1, "rule fidelity", 1.0, rule_fidelity);
    report(2, "basin oracle equivalence", 60000.0, basin_oracle);
    report(3, "equal-split property", 10000.0, equal_split);
    report(4, "tree purity", 60000.0, tree_purity);
    report(5, "GA monotonicity + determinism", 0.0, ga_monotone_deterministic);
    report(6, "deconvolution recovery", 10000.0, deconvolution_recovery);
    report(7, "encode/decode round trip", 0.0, encode_round_trip);
    report(8, "band decoder fidelity", 0.0, band_decoder);
    report(9, "self-recall end-to-end", 0.0, self_recall);
    report(10, "benchmark table shape", 0.0, comparison_table_shape);
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
