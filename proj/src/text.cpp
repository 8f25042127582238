#include "procalign/text.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "procalign/error.hpp"

namespace procalign {

namespace {

bool is_word_char(unsigned char c) { return std::isalnum(c) != 0; }

bool all_digits(const std::string& s)
{
    for (unsigned char c : s) {
        if (!std::isdigit(c)) {
            return false;
        }
    }
    return !s.empty();
}

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return {};
    }
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

const char* to_string(TokenMode m)
{
    switch (m) {
    case TokenMode::AllWords: return "all-words";
    case TokenMode::Nouns: return "nouns";
    case TokenMode::NounsVerbs: return "nouns-verbs";
    }
    return "all-words";
}

TokenMode token_mode_from_string(std::string_view s)
{
    if (s == "all-words" || s == "all") {
        return TokenMode::AllWords;
    }
    if (s == "nouns") {
        return TokenMode::Nouns;
    }
    if (s == "nouns-verbs") {
        return TokenMode::NounsVerbs;
    }
    throw InvalidArgument("unknown token mode '" + std::string(s) + "'");
}

const StopWords& default_stop_words()
{
    static const StopWords words = {
        "a", "about", "above", "after", "again", "against", "all", "am", "an", "and", "any", "are",
        "as", "at", "be", "because", "been", "before", "being", "below", "between", "both", "but",
        "by", "can", "could", "did", "do", "does", "doing", "down", "during", "each", "few", "for",
        "from", "further", "had", "has", "have", "having", "he", "her", "here", "hers", "herself",
        "him", "himself", "his", "how", "i", "if", "in", "into", "is", "it", "its", "itself",
        "just", "me", "more", "most", "my", "myself", "no", "nor", "not", "now", "of", "off", "on",
        "once", "only", "or", "other", "our", "ours", "ourselves", "out", "over", "own", "same",
        "she", "should", "so", "some", "such", "than", "that", "the", "their", "theirs", "them",
        "themselves", "then", "there", "these", "they", "this", "those", "through", "to", "too",
        "under", "until", "up", "very", "was", "we", "were", "what", "when", "where", "which",
        "while", "who", "whom", "why", "will", "with", "would", "you", "your", "yours", "yourself",
        "yourselves", "s", "t", "don", "ll", "re", "ve", "m", "d",
    };
    return words;
}

StopWords load_stop_words(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    StopWords words;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (!line.empty()) {
            words.insert(line);
        }
    }
    return words;
}

unsigned PosLexicon::tags(const std::string& word) const
{
    auto it = tags_.find(word);
    return it == tags_.end() ? 0u : it->second;
}

void PosLexicon::merge(const PosLexicon& other)
{
    for (const auto& [word, tags] : other.tags_) {
        tags_[word] |= tags;
    }
}

std::string PosLexicon::to_tsv() const
{
    std::vector<std::pair<std::string, unsigned>> sorted(tags_.begin(), tags_.end());
    std::sort(sorted.begin(), sorted.end());
    std::string out;
    for (const auto& [word, tags] : sorted) {
        std::vector<std::string> names;
        if (tags & Noun) {
            names.emplace_back("N");
        }
        if (tags & Verb) {
            names.emplace_back("V");
        }
        if (tags & Other) {
            names.emplace_back("O");
        }
        out += word + "\t" + join(names, ",") + "\n";
    }
    return out;
}

PosLexicon PosLexicon::parse(std::istream& in)
{
    PosLexicon lex;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw MalformedRecord(line_no, "lexicon line lacks a tab");
        }
        std::string word = trim(line.substr(0, tab));
        unsigned tags = 0;
        std::stringstream ss(line.substr(tab + 1));
        std::string tag;
        while (std::getline(ss, tag, ',')) {
            tag = trim(tag);
            if (tag == "N") {
                tags |= Noun;
            } else if (tag == "V") {
                tags |= Verb;
            } else if (tag == "O") {
                tags |= Other;
            } else {
                throw MalformedRecord(line_no, "unknown tag '" + tag + "'");
            }
        }
        for (auto& c : word) {
            c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
        lex.add(word, tags);
    }
    return lex;
}

PosLexicon PosLexicon::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return parse(in);
}

std::vector<std::string> split_words(std::string_view text)
{
    std::vector<std::string> words;
    std::string current;
    for (unsigned char c : text) {
        if (is_word_char(c)) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else if (!current.empty()) {
            words.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) {
        words.push_back(std::move(current));
    }
    return words;
}

TokenSequence tokenize(std::string_view text, const StopWords& stop_words, TokenMode mode,
                       const PosLexicon* lexicon, int origin_index)
{
    if (mode != TokenMode::AllWords && lexicon == nullptr) {
        throw InvalidArgument("noun/verb tokenization needs a POS lexicon");
    }
    TokenSequence seq;
    seq.origin_index = origin_index;
    seq.mode = mode;
    for (auto& word : split_words(text)) {
        bool keep = false;
        switch (mode) {
        case TokenMode::AllWords:
            keep = stop_words.count(word) == 0;
            break;
        case TokenMode::Nouns:
            keep = !all_digits(word) && lexicon->is_noun(word);
            break;
        case TokenMode::NounsVerbs:
            keep = !all_digits(word) && (lexicon->is_noun(word) || lexicon->is_verb(word));
            break;
        }
        if (keep) {
            seq.tokens.push_back(std::move(word));
        }
    }
    if (seq.tokens.empty()) {
        seq.tokens.emplace_back(kUnk);
    }
    return seq;
}

std::string join(const std::vector<std::string>& words, std::string_view sep)
{
    std::string out;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) {
            out += sep;
        }
        out += words[i];
    }
    return out;
}

}  // namespace procalign
