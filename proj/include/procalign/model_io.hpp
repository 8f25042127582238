#pragma once

#include <filesystem>
#include <iosfwd>

#include <json.hpp>

#include "procalign/alignment_model.hpp"

namespace procalign {

nlohmann::json model_to_json(const AlignmentModel& model);
AlignmentModel model_from_json(const nlohmann::json& j);

/// Compact binary layout, little-endian throughout:
///   magic "PALM" | version u8 (=1) | json_len u64 | json header bytes
///   | n_triplets u64 | n_triplets x (e u32, f u32, p f64)
/// The header is the JSON form with the lexical table omitted.
void write_model_binary(std::ostream& out, const AlignmentModel& model);
AlignmentModel read_model_binary(std::istream& in);

/// Picks the binary format for ".bin" paths and JSON otherwise.
void save_model(const std::filesystem::path& path, const AlignmentModel& model);
AlignmentModel load_model(const std::filesystem::path& path);

}  // namespace procalign
