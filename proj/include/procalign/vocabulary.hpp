#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "procalign/text.hpp"

namespace procalign {

using WordId = std::uint32_t;
inline constexpr WordId kUnkId = 0;

/// Dense symbol <-> id mapping with frequency counts. Id 0 is always [UNK];
/// the remaining ids are ordered by descending frequency, ties lexicographic.
class Vocabulary {
  public:
    Vocabulary();

    std::size_t size() const { return symbols_.size(); }
    int min_count() const { return min_count_; }

    const std::string& symbol(WordId id) const { return symbols_.at(id); }
    std::uint64_t count(WordId id) const { return counts_.at(id); }
    std::optional<WordId> find(const std::string& symbol) const;
    bool contains(const std::string& symbol) const { return find(symbol).has_value(); }

    /// Maps tokens to ids, dropping unknown tokens; returns {kUnkId} if all drop.
    std::vector<WordId> encode(const TokenSequence& seq) const;

    nlohmann::json to_json() const;
    static Vocabulary from_json(const nlohmann::json& j);

    friend Vocabulary build_vocabulary(const std::vector<TokenSequence>& sequences, int min_count);

  private:
    void add(std::string symbol, std::uint64_t count);

    std::vector<std::string> symbols_;
    std::vector<std::uint64_t> counts_;
    std::unordered_map<std::string, WordId> ids_;
    int min_count_ = 1;
};

/// Keeps symbols with corpus frequency >= min_count. [UNK] occurrences in the
/// input are counted toward the reserved entry.
Vocabulary build_vocabulary(const std::vector<TokenSequence>& sequences, int min_count);

/// Drops tokens absent from `vocab`; an empty result becomes [UNK].
TokenSequence apply_vocabulary(const TokenSequence& seq, const Vocabulary& vocab);

}  // namespace procalign
