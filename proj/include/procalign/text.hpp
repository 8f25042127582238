#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace procalign {

inline constexpr std::string_view kUnk = "[UNK]";

enum class TokenMode { AllWords, Nouns, NounsVerbs };

const char* to_string(TokenMode m);
TokenMode token_mode_from_string(std::string_view s);

using StopWords = std::unordered_set<std::string>;

/// Built-in list of English function words.
const StopWords& default_stop_words();
StopWords load_stop_words(const std::filesystem::path& path);

/// Word -> tag set lookup. Tags are N (noun), V (verb), O (other).
class PosLexicon {
  public:
    enum Tag : unsigned { Noun = 1u, Verb = 2u, Other = 4u };

    PosLexicon() = default;

    void add(const std::string& word, unsigned tags) { tags_[word] |= tags; }
    unsigned tags(const std::string& word) const;
    bool is_noun(const std::string& word) const { return (tags(word) & Noun) != 0; }
    bool is_verb(const std::string& word) const { return (tags(word) & Verb) != 0; }
    std::size_t size() const { return tags_.size(); }
    void merge(const PosLexicon& other);

    /// "word<TAB>tag[,tag...]" lines sorted by word.
    std::string to_tsv() const;

    static PosLexicon load(const std::filesystem::path& path);
    static PosLexicon parse(std::istream& in);

  private:
    std::unordered_map<std::string, unsigned> tags_;
};

struct TokenSequence {
    std::vector<std::string> tokens;
    int origin_index = 0;
    TokenMode mode = TokenMode::AllWords;
};

/// Lowercases, splits on runs of non-alphanumeric characters and filters by
/// mode. AllWords drops stop words; Nouns / NounsVerbs keep only lexicon
/// matches. Never returns an empty sequence: an empty result becomes [UNK].
TokenSequence tokenize(std::string_view text, const StopWords& stop_words,
                       TokenMode mode = TokenMode::AllWords,
                       const PosLexicon* lexicon = nullptr, int origin_index = 0);

/// Raw lowercase split with no filtering.
std::vector<std::string> split_words(std::string_view text);

std::string join(const std::vector<std::string>& words, std::string_view sep = " ");

}  // namespace procalign
