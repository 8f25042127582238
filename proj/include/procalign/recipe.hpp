#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace procalign {

enum class Modality { Text, Video };
enum class ChatLabel { Chat, Content };

const char* to_string(Modality m);
const char* to_string(ChatLabel c);

struct TimeSpan {
    double start_sec = 0.0;
    double end_sec = 0.0;
};

struct Instruction {
    int index = 0;
    std::string text;
    std::optional<TimeSpan> span;
    std::optional<ChatLabel> chat_label;
};

/// One procedure for a dish. Instructions are stored in order with
/// `instructions[i].index == i`.
struct Recipe {
    std::string recipe_id;
    std::string dish_id;
    Modality modality = Modality::Text;
    std::string title;
    std::vector<std::string> ingredients;
    std::vector<Instruction> instructions;
    std::string source_url;

    std::size_t size() const { return instructions.size(); }

    /// Instructions not labeled as chat (all of them for text recipes).
    std::size_t content_count() const;
};

/// Parses one JSON object into a recipe, normalizing indices and lowercasing
/// title and ingredients. `line_no` is only used in error messages.
Recipe recipe_from_json(const nlohmann::json& j, std::size_t line_no);
nlohmann::json recipe_to_json(const Recipe& r);

/// Reads a JSON-lines recipe file. Blank lines are skipped. When `modality` is
/// given, records must either omit "modality" or agree with it.
std::vector<Recipe> parse_recipe_file(const std::filesystem::path& path,
                                      std::optional<Modality> modality = std::nullopt);

std::vector<Recipe> parse_recipe_stream(std::istream& in,
                                        std::optional<Modality> modality = std::nullopt);

/// Throws if the recipe breaks a structural invariant.
void validate(const Recipe& r);

}  // namespace procalign
