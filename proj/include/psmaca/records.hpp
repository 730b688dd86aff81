#pragma once

// Protein records and the two text formats they are read from: FASTA and
// paired "Amino Acids:" / "Structure:" blocks.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "psmaca/seqcodec.hpp"

namespace psmaca::io {

struct ProteinRecord {
    std::string id;
    seq::AminoAcidSeq sequence;
    std::optional<seq::StructureSeq> structure;

    /// Throws std::invalid_argument when the structure length differs.
    ProteinRecord(std::string id, seq::AminoAcidSeq sequence, std::optional<seq::StructureSeq> structure = {});

    bool operator==(const ProteinRecord&) const = default;
};

struct Dataset {
    std::string name;
    std::vector<ProteinRecord> records;

    /// Throws std::invalid_argument on duplicate ids.
    void validate() const;
    /// FNV-1a over the canonical "id\tsequence\tstructure\n" lines, 16 hex digits.
    std::string fingerprint() const;
};

/// Input error carrying a 1-based line and column.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column = 0);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

std::vector<ProteinRecord> parse_fasta(std::string_view text);

/// Blocks of
///   >id [annotations]
///   Amino Acids:
///   <residue lines>
///   [Predicted ]Structure:
///   <H/E/C lines>
/// Any line wrapping is accepted; blank lines are ignored.
std::vector<ProteinRecord> parse_paired(std::string_view text);

/// Dispatches on content: paired blocks if an "Amino Acids:" line exists,
/// FASTA otherwise.
std::vector<ProteinRecord> parse_records(std::string_view text);

inline constexpr std::size_t kWrapColumns = 60;

/// Writes one paired block. `annotation` follows the id on the header line.
std::string format_paired(const std::string& id, const seq::AminoAcidSeq& sequence,
                          const std::optional<seq::StructureSeq>& structure, std::string_view annotation = {},
                          std::string_view structure_heading = "Structure:");

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace psmaca::io
