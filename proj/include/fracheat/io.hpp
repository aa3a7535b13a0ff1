#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace fracheat {

/// Doubles formatted with 17 significant digits (round-trip safe).
std::string format_double(double v);

/// Tabular artifact writer. As CSV the first line is a comment naming the
/// producing command and the config hash; as JSON the same provenance sits in
/// a "producer" field and rows become objects keyed by column name (cells
/// stay decimal strings, so the 17-digit precision survives). Identical
/// configs yield byte-identical files.
class CsvWriter {
public:
    CsvWriter(std::string command, std::string config_hash, std::vector<std::string> columns);

    void add_row(const std::vector<std::string>& cells);
    std::string str() const;
    std::string json_str() const;
    void write(const std::string& path) const;

private:
    std::string producer_;
    std::string header_;
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

/// SHA-256 hex digest.
std::string sha256_hex(const std::string& data);

/// Canonical serialization used for hashing (sorted keys, no whitespace).
std::string canonical_json(const nlohmann::json& j);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Run manifest embedding the resolved config and its content hash.
nlohmann::ordered_json make_manifest(const std::string& command, const nlohmann::json& config,
                                     const std::vector<std::string>& outputs);

} // namespace fracheat
