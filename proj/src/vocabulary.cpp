#include "procalign/vocabulary.hpp"

#include <algorithm>
#include <map>

#include "procalign/error.hpp"

namespace procalign {

Vocabulary::Vocabulary() { add(std::string(kUnk), 0); }

void Vocabulary::add(std::string symbol, std::uint64_t count)
{
    ids_.emplace(symbol, static_cast<WordId>(symbols_.size()));
    symbols_.push_back(std::move(symbol));
    counts_.push_back(count);
}

std::optional<WordId> Vocabulary::find(const std::string& symbol) const
{
    auto it = ids_.find(symbol);
    if (it == ids_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::vector<WordId> Vocabulary::encode(const TokenSequence& seq) const
{
    std::vector<WordId> ids;
    ids.reserve(seq.tokens.size());
    for (const auto& tok : seq.tokens) {
        if (auto id = find(tok)) {
            ids.push_back(*id);
        }
    }
    if (ids.empty()) {
        ids.push_back(kUnkId);
    }
    return ids;
}

nlohmann::json Vocabulary::to_json() const
{
    return nlohmann::json{{"min_count", min_count_}, {"symbols", symbols_}, {"counts", counts_}};
}

Vocabulary Vocabulary::from_json(const nlohmann::json& j)
{
    auto symbols = j.at("symbols").get<std::vector<std::string>>();
    auto counts = j.at("counts").get<std::vector<std::uint64_t>>();
    if (symbols.empty() || symbols.size() != counts.size() || symbols[0] != kUnk) {
        throw InvalidArgument("malformed vocabulary");
    }
    Vocabulary v;
    v.counts_[0] = counts[0];
    v.min_count_ = j.value("min_count", 1);
    for (std::size_t i = 1; i < symbols.size(); ++i) {
        if (v.ids_.count(symbols[i])) {
            throw InvalidArgument("duplicate vocabulary symbol '" + symbols[i] + "'");
        }
        v.add(std::move(symbols[i]), counts[i]);
    }
    return v;
}

Vocabulary build_vocabulary(const std::vector<TokenSequence>& sequences, int min_count)
{
    if (min_count < 1) {
        throw InvalidArgument("min_count must be at least 1");
    }
    std::map<std::string, std::uint64_t> counts;
    for (const auto& seq : sequences) {
        for (const auto& tok : seq.tokens) {
            ++counts[tok];
        }
    }
    Vocabulary v;
    v.min_count_ = min_count;
    if (auto it = counts.find(std::string(kUnk)); it != counts.end()) {
        v.counts_[0] = it->second;
        counts.erase(it);
    }
    std::vector<std::pair<std::string, std::uint64_t>> kept;
    for (auto& [sym, c] : counts) {
        if (c >= static_cast<std::uint64_t>(min_count)) {
            kept.emplace_back(sym, c);
        }
    }
    // std::map iteration is already lexicographic, so a stable sort on count
    // gives the (count desc, symbol asc) order.
    std::stable_sort(kept.begin(), kept.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    for (auto& [sym, c] : kept) {
        v.add(std::move(sym), c);
    }
    return v;
}

TokenSequence apply_vocabulary(const TokenSequence& seq, const Vocabulary& vocab)
{
    TokenSequence out;
    out.origin_index = seq.origin_index;
    out.mode = seq.mode;
    for (const auto& tok : seq.tokens) {
        if (vocab.contains(tok)) {
            out.tokens.push_back(tok);
        }
    }
    if (out.tokens.empty()) {
        out.tokens.emplace_back(kUnk);
    }
    return out;
}

}  // namespace procalign
