#include "psmaca/metrics.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace psmaca::metrics {

namespace {

std::size_t state_index(char c) {
    for (std::size_t i = 0; i < kStates.size(); ++i)
        if (kStates[i] == c) return i;
    throw std::invalid_argument("unknown structure state '" + std::string(1, c) + "'");
}

void fill_rates(const Confusion& confusion, double& q3_out, std::array<std::optional<double>, 3>& per_class) {
    std::size_t total = 0, hits = 0;
    for (std::size_t a = 0; a < 3; ++a) {
        std::size_t support = 0;
        for (std::size_t p = 0; p < 3; ++p) support += confusion[a][p];
        total += support;
        hits += confusion[a][a];
        per_class[a] = support ? std::optional<double>(100.0 * static_cast<double>(confusion[a][a]) /
                                                       static_cast<double>(support))
                               : std::nullopt;
    }
    q3_out = total ? 100.0 * static_cast<double>(hits) / static_cast<double>(total) : 0.0;
}

std::string percent(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

std::string percent(const std::optional<double>& v) { return v ? percent(*v) : "NA"; }

}  // namespace

Q3Row q3(const seq::StructureSeq& predicted, const seq::StructureSeq& actual, std::string id) {
    if (predicted.size() != actual.size())
        throw std::invalid_argument("predicted length " + std::to_string(predicted.size()) +
                                    " differs from reference length " + std::to_string(actual.size()));
    Q3Row row;
    row.id = std::move(id);
    row.length = actual.size();
    for (std::size_t i = 0; i < actual.size(); ++i) ++row.confusion[state_index(actual[i])][state_index(predicted[i])];
    fill_rates(row.confusion, row.q3, row.per_class);
    return row;
}

MetricsReport aggregate(std::vector<Q3Row> rows, std::string method) {
    MetricsReport r;
    r.method = std::move(method);
    for (const auto& row : rows)
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t p = 0; p < 3; ++p) r.confusion[a][p] += row.confusion[a][p];
    fill_rates(r.confusion, r.q3, r.per_class);
    r.rows = std::move(rows);
    return r;
}

void write_tsv(std::ostream& os, const MetricsReport& report) {
    os << "id\tq3\tqH\tqE\tqC\n";
    auto line = [&os](const std::string& id, double q, const std::array<std::optional<double>, 3>& pc) {
        os << id << '\t' << percent(q) << '\t' << percent(pc[0]) << '\t' << percent(pc[1]) << '\t' << percent(pc[2])
           << '\n';
    };
    for (const auto& row : report.rows) line(row.id, row.q3, row.per_class);
    line("ALL", report.q3, report.per_class);
}

namespace {

nlohmann::json per_class_json(const std::array<std::optional<double>, 3>& pc) {
    nlohmann::json j = nlohmann::json::object();
    for (std::size_t i = 0; i < 3; ++i) j[std::string(1, kStates[i])] = pc[i] ? nlohmann::json(*pc[i]) : nullptr;
    return j;
}

nlohmann::json confusion_json(const Confusion& c) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& row : c) j.push_back(row);
    return j;
}

}  // namespace

nlohmann::json to_json(const MetricsReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows)
        rows.push_back({{"id", row.id},
                        {"length", row.length},
                        {"q3", row.q3},
                        {"per_class", per_class_json(row.per_class)},
                        {"confusion", confusion_json(row.confusion)}});
    return {
        {"method", report.method},
        {"states", {"H", "E", "C"}},
        {"q3", report.q3},
        {"per_class", per_class_json(report.per_class)},
        {"confusion", confusion_json(report.confusion)},
        {"rows", std::move(rows)},
    };
}

void write_comparison_table(std::ostream& os, const std::vector<MetricsReport>& reports) {
    if (reports.empty()) return;
    os << "Prediction method";
    for (const auto& row : reports.front().rows) os << "\tPrediction accuracy for " << row.id << " (%)";
    os << "\tOverall (%)\n";
    for (const auto& r : reports) {
        os << r.method;
        for (const auto& row : r.rows) os << '\t' << percent(row.q3);
        os << '\t' << percent(r.q3) << '\n';
    }
}

}  // namespace psmaca::metrics
