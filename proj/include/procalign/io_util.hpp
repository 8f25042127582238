#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "procalign/recipe.hpp"

namespace procalign {

std::string read_file(const std::filesystem::path& path);

/// Writes via a temporary sibling file and rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// Calls `fn(json, line_no)` for every non-blank line. Parse errors raise
/// MalformedRecord.
void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(const nlohmann::json&, std::size_t)>& fn);

std::string to_jsonl(const std::vector<nlohmann::json>& records);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t value);

/// Lookup of recipes by id. Holds pointers into a vector that must outlive it.
class RecipeIndex {
  public:
    RecipeIndex() = default;
    explicit RecipeIndex(const std::vector<Recipe>& recipes);

    const Recipe& at(const std::string& recipe_id) const;
    const Recipe* find(const std::string& recipe_id) const;

  private:
    std::unordered_map<std::string, const Recipe*> by_id_;
};

}  // namespace procalign
