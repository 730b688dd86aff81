#pragma once

// Three-state (H/E/C) accuracy: Q3, per-class recall and confusion counts.

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "psmaca/seqcodec.hpp"

namespace psmaca::metrics {

/// Row/column order of the confusion matrix and per-class arrays.
inline constexpr std::array<char, 3> kStates = {'H', 'E', 'C'};

/// confusion[actual][predicted], indexed in kStates order.
using Confusion = std::array<std::array<std::size_t, 3>, 3>;

struct Q3Row {
    std::string id;
    std::size_t length = 0;
    double q3 = 0.0;
    /// Undefined for classes absent from the reference.
    std::array<std::optional<double>, 3> per_class;
    Confusion confusion{};
};

/// Throws std::invalid_argument when lengths differ.
Q3Row q3(const seq::StructureSeq& predicted, const seq::StructureSeq& actual, std::string id = {});

struct MetricsReport {
    std::string method;
    /// Residue-weighted over all rows.
    double q3 = 0.0;
    std::array<std::optional<double>, 3> per_class;
    Confusion confusion{};
    std::vector<Q3Row> rows;
};

MetricsReport aggregate(std::vector<Q3Row> rows, std::string method);

/// "id\tq3\tqH\tqE\tqC" header, one row per record, then an "ALL" row.
/// Undefined per-class values are written as "NA".
void write_tsv(std::ostream& os, const MetricsReport& report);

nlohmann::json to_json(const MetricsReport& report);

/// Methods as rows, records as columns, Q3 percentages as cells.
void write_comparison_table(std::ostream& os, const std::vector<MetricsReport>& reports);

}  // namespace psmaca::metrics
