#include "psmaca/records.hpp"

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace psmaca::io {

ProteinRecord::ProteinRecord(std::string id_, seq::AminoAcidSeq sequence_, std::optional<seq::StructureSeq> structure_)
    : id(std::move(id_)), sequence(std::move(sequence_)), structure(std::move(structure_)) {
    if (id.empty()) throw std::invalid_argument("record id is empty");
    if (structure && structure->size() != sequence.size())
        throw std::invalid_argument("record " + id + ": structure length " + std::to_string(structure->size()) +
                                    " differs from sequence length " + std::to_string(sequence.size()));
}

void Dataset::validate() const {
    std::set<std::string_view> seen;
    for (const auto& r : records)
        if (!seen.insert(r.id).second) throw std::invalid_argument("duplicate record id '" + r.id + "'");
}

std::string Dataset::fingerprint() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
    };
    for (const auto& r : records) {
        feed(r.id);
        feed("\t");
        feed(r.sequence.str());
        feed("\t");
        if (r.structure) feed(r.structure->str());
        feed("\n");
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + (column ? ", column " + std::to_string(column) : "") +
                         ": " + what),
      line_(line),
      column_(column) {}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string header_id(std::string_view line, std::size_t lineno) {
    auto rest = trim(line.substr(1));
    auto id = rest.substr(0, std::min(rest.size(), rest.find_first_of(" \t")));
    if (id.empty()) throw ParseError("record header has no id", lineno, 1);
    return std::string(id);
}

void append_residues(std::string& out, std::string_view line, std::size_t lineno) {
    for (std::size_t i = 0; i < line.size(); ++i) {
        const auto c = static_cast<unsigned char>(line[i]);
        if (std::isspace(c)) continue;
        const char up = static_cast<char>(std::toupper(c));
        if (seq::residue_index(up) < 0)
            throw ParseError("illegal residue '" + std::string(1, line[i]) + "'", lineno, i + 1);
        out.push_back(up);
    }
}

void append_structure(std::string& out, std::string_view line, std::size_t lineno) {
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c != 'H' && c != 'E' && c != 'C')
            throw ParseError("illegal structure label '" + std::string(1, c) + "'", lineno, i + 1);
        out.push_back(c);
    }
}

void check_unique(const std::vector<ProteinRecord>& records, const std::string& id, std::size_t lineno) {
    for (const auto& r : records)
        if (r.id == id) throw ParseError("duplicate record id '" + id + "'", lineno, 1);
}

}  // namespace

std::vector<ProteinRecord> parse_fasta(std::string_view text) {
    std::vector<ProteinRecord> records;
    std::string id, residues;
    std::size_t header_line = 0;

    auto flush = [&] {
        if (id.empty()) return;
        if (residues.empty()) throw ParseError("record '" + id + "' has no sequence", header_line);
        check_unique(records, id, header_line);
        records.emplace_back(id, seq::AminoAcidSeq(residues));
        id.clear();
        residues.clear();
    };

    const auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t lineno = i + 1;
        const auto line = lines[i];
        if (!line.empty() && line.front() == '>') {
            flush();
            id = header_id(line, lineno);
            header_line = lineno;
        } else if (!trim(line).empty()) {
            if (id.empty()) throw ParseError("sequence data before the first '>' header", lineno, 1);
            append_residues(residues, line, lineno);
        }
    }
    flush();
    if (records.empty()) throw ParseError("input contains no records", lines.empty() ? 1 : lines.size());
    return records;
}

std::vector<ProteinRecord> parse_paired(std::string_view text) {
    enum class Section { none, sequence, structure };
    std::vector<ProteinRecord> records;
    std::string id, residues, labels;
    bool has_structure = false;
    std::size_t header_line = 0, structure_line = 0;
    Section section = Section::none;

    auto flush = [&] {
        if (id.empty()) return;
        if (residues.empty()) throw ParseError("record '" + id + "' has no amino acid block", header_line);
        std::optional<seq::StructureSeq> structure;
        if (has_structure) {
            if (labels.empty()) throw ParseError("record '" + id + "' has an empty structure block", structure_line);
            if (labels.size() != residues.size())
                throw ParseError("record '" + id + "': structure length " + std::to_string(labels.size()) +
                                     " differs from sequence length " + std::to_string(residues.size()),
                                 structure_line);
            structure.emplace(labels);
        }
        check_unique(records, id, header_line);
        records.emplace_back(id, seq::AminoAcidSeq(residues), std::move(structure));
        id.clear();
        residues.clear();
        labels.clear();
        has_structure = false;
        section = Section::none;
    };

    const auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t lineno = i + 1;
        const auto line = lines[i];
        const auto t = trim(line);
        if (t.empty()) continue;
        if (line.front() == '>') {
            flush();
            id = header_id(line, lineno);
            header_line = lineno;
        } else if (t == "Amino Acids:") {
            if (id.empty()) throw ParseError("'Amino Acids:' block without a preceding '>' id line", lineno, 1);
            if (!residues.empty()) throw ParseError("second 'Amino Acids:' block in record '" + id + "'", lineno, 1);
            section = Section::sequence;
        } else if (t.ends_with("Structure:")) {
            if (id.empty()) throw ParseError("structure block without a preceding '>' id line", lineno, 1);
            if (has_structure) throw ParseError("second structure block in record '" + id + "'", lineno, 1);
            section = Section::structure;
            has_structure = true;
            structure_line = lineno;
        } else if (section == Section::sequence) {
            append_residues(residues, line, lineno);
        } else if (section == Section::structure) {
            append_structure(labels, line, lineno);
        } else {
            throw ParseError("unexpected content outside a block", lineno, 1);
        }
    }
    flush();
    if (records.empty()) throw ParseError("input contains no records", lines.empty() ? 1 : lines.size());
    return records;
}

std::vector<ProteinRecord> parse_records(std::string_view text) {
    for (const auto line : split_lines(text))
        if (trim(line) == "Amino Acids:") return parse_paired(text);
    return parse_fasta(text);
}

namespace {

void append_wrapped(std::string& out, const std::string& s) {
    for (std::size_t i = 0; i < s.size(); i += kWrapColumns) {
        out.append(s, i, kWrapColumns);
        out.push_back('\n');
    }
}

}  // namespace

std::string format_paired(const std::string& id, const seq::AminoAcidSeq& sequence,
                          const std::optional<seq::StructureSeq>& structure, std::string_view annotation,
                          std::string_view structure_heading) {
    std::string out = ">" + id;
    if (!annotation.empty()) {
        out.push_back(' ');
        out.append(annotation);
    }
    out += "\nAmino Acids:\n";
    append_wrapped(out, sequence.str());
    if (structure) {
        out.append(structure_heading);
        out.push_back('\n');
        append_wrapped(out, structure->str());
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write to " + path + " failed");
}

}  // namespace psmaca::io
