#pragma once

/// @file io.hpp
/// Serialization shared by the CLI and the HTTP service. Result documents
/// are rendered with a fixed key order so that equal runs produce equal
/// bytes regardless of transport.

#include <string>
#include <vector>

#include "odesys/baselines.hpp"
#include "odesys/hooks.hpp"
#include "odesys/solver.hpp"

namespace odesys {

/// Shortest decimal text that round-trips to the same double.
std::string format_number(double value);

/// RFC 4180 text: comma separated, CRLF line ends, fields quoted when they
/// contain a comma, quote or line break.
std::string to_csv_text(const std::vector<std::vector<std::string>>& lines);

Document config_to_json(const GAConfig& config);
/// Keys absent from `doc` keep their defaults; unknown keys raise
/// SchemaError under `path`.
GAConfig config_from_json(const Document& doc, const std::string& path = "/config");

Document run_result_to_json(const Problem& problem, const RunResult& result);
/// Indented text of run_result_to_json with a trailing newline.
std::string render_run_result(const Problem& problem, const RunResult& result);

Document generation_record_to_json(const GenerationRecord& record);

Document comparison_to_json(const ComparisonTable& table);

/// Alternatives: an array of {label, x} objects, optionally wrapped as
/// {"alternatives": [...]}.
std::vector<Alternative> alternatives_from_json(const Document& doc, const std::string& path = "");
/// Seeds: an array of design-value arrays, optionally wrapped as
/// {"seeds": [...]}.
std::vector<std::vector<double>> seeds_from_json(const Document& doc, const std::string& path = "");

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace odesys
