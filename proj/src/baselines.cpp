#include "procalign/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "procalign/error.hpp"
#include "procalign/random.hpp"

namespace procalign {

namespace {

void require_nonempty(std::size_t sources, std::size_t targets)
{
    if (sources == 0 || targets == 0) {
        throw InvalidArgument("baselines need non-empty source and target recipes");
    }
}

template <typename ScoreFn>
std::vector<int> argmax_labels(std::size_t sources, std::size_t targets, ScoreFn&& score)
{
    std::vector<int> labels(sources);
    std::vector<double> row(targets);
    for (std::size_t m = 0; m < sources; ++m) {
        for (std::size_t n = 0; n < targets; ++n) {
            row[n] = score(m, n);
        }
        labels[m] = static_cast<int>(argmax_first(row));
    }
    return labels;
}

}  // namespace

std::size_t argmax_first(std::span<const double> values)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) {
            best = i;
        }
    }
    return best;
}

std::vector<int> random_align(std::size_t sources, std::size_t targets, std::uint64_t seed)
{
    require_nonempty(sources, targets);
    Rng rng(seed);
    std::vector<int> labels(sources);
    for (auto& l : labels) {
        l = static_cast<int>(uniform_index(rng, targets));
    }
    return labels;
}

std::vector<int> uniform_align(std::size_t sources, std::size_t targets)
{
    require_nonempty(sources, targets);
    std::vector<int> labels(sources);
    for (std::size_t i = 0; i < sources; ++i) {
        labels[i] = static_cast<int>(std::min(targets * i / sources, targets - 1));
    }
    return labels;
}

std::vector<double> bm25_scores(const Words& query, std::span<const Words> documents, Bm25Params params)
{
    const auto D = static_cast<double>(documents.size());
    std::map<std::string, std::size_t> df;
    double total_len = 0.0;
    for (const auto& doc : documents) {
        std::set<std::string> seen(doc.begin(), doc.end());
        for (const auto& t : seen) {
            ++df[t];
        }
        total_len += static_cast<double>(doc.size());
    }
    const double avg_len = D > 0 ? total_len / D : 0.0;

    std::vector<double> scores(documents.size(), 0.0);
    for (std::size_t k = 0; k < documents.size(); ++k) {
        std::map<std::string, double> tf;
        for (const auto& t : documents[k]) {
            tf[t] += 1.0;
        }
        const double len_norm =
            avg_len > 0 ? 1.0 - params.b + params.b * static_cast<double>(documents[k].size()) / avg_len : 1.0;
        for (const auto& term : query) {
            auto it = tf.find(term);
            if (it == tf.end()) {
                continue;
            }
            const auto n_t = static_cast<double>(df[term]);
            const double idf = std::log(1.0 + (D - n_t + 0.5) / (n_t + 0.5));
            scores[k] += idf * it->second * (params.k1 + 1.0) / (it->second + params.k1 * len_norm);
        }
    }
    return scores;
}

std::vector<int> bm25_align(std::span<const Words> source, std::span<const Words> target, Bm25Params params)
{
    require_nonempty(source.size(), target.size());
    std::vector<int> labels;
    labels.reserve(source.size());
    for (const auto& query : source) {
        labels.push_back(static_cast<int>(argmax_first(bm25_scores(query, target, params))));
    }
    return labels;
}

double exact_match_score(const Words& a, const Words& b)
{
    if (a.empty() || b.empty()) {
        return 0.0;
    }
    std::set<std::string> sa(a.begin(), a.end());
    std::set<std::string> sb(b.begin(), b.end());
    std::size_t common = 0;
    for (const auto& w : sa) {
        common += sb.count(w);
    }
    return static_cast<double>(common) / static_cast<double>(std::max(a.size(), b.size()));
}

std::vector<int> exact_match_align(std::span<const Words> source, std::span<const Words> target)
{
    require_nonempty(source.size(), target.size());
    return argmax_labels(source.size(), target.size(),
                         [&](std::size_t m, std::size_t n) { return exact_match_score(source[m], target[n]); });
}

void TfidfVectorizer::fit(std::span<const Words> documents)
{
    terms_.clear();
    std::map<std::string, std::size_t> df;
    for (const auto& doc : documents) {
        std::set<std::string> seen(doc.begin(), doc.end());
        for (const auto& t : seen) {
            ++df[t];
        }
    }
    documents_ = documents.size();
    idf_.clear();
    idf_.reserve(df.size());
    for (const auto& [term, count] : df) {
        terms_.emplace(term, idf_.size());
        idf_.push_back(std::log((1.0 + static_cast<double>(documents_)) / (1.0 + static_cast<double>(count))) + 1.0);
    }
    fitted_ = true;
}

std::optional<double> TfidfVectorizer::idf(const std::string& term) const
{
    auto it = terms_.find(term);
    if (it == terms_.end()) {
        return std::nullopt;
    }
    return idf_[it->second];
}

TfidfVectorizer::SparseVector TfidfVectorizer::transform(const Words& doc) const
{
    if (!fitted_) {
        throw UnfittedVectorizer("TF-IDF vectorizer used before fit()");
    }
    std::map<std::size_t, double> tf;
    for (const auto& t : doc) {
        if (auto it = terms_.find(t); it != terms_.end()) {
            tf[it->second] += 1.0;
        }
    }
    SparseVector v;
    double norm = 0.0;
    for (const auto& [id, count] : tf) {
        double w = count * idf_[id];
        v.emplace_back(id, w);
        norm += w * w;
    }
    if (norm > 0.0) {
        norm = std::sqrt(norm);
        for (auto& [id, w] : v) {
            w /= norm;
        }
    }
    return v;
}

double TfidfVectorizer::cosine(const SparseVector& a, const SparseVector& b)
{
    double dot = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (const auto& [id, w] : a) {
        na += w * w;
    }
    for (const auto& [id, w] : b) {
        nb += w * w;
    }
    std::size_t i = 0;
    std::size_t k = 0;
    while (i < a.size() && k < b.size()) {
        if (a[i].first < b[k].first) {
            ++i;
        } else if (b[k].first < a[i].first) {
            ++k;
        } else {
            dot += a[i].second * b[k].second;
            ++i;
            ++k;
        }
    }
    if (na == 0.0 || nb == 0.0) {
        return 0.0;
    }
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<int> tfidf_align(std::span<const Words> source, std::span<const Words> target,
                             const TfidfVectorizer& vectorizer)
{
    require_nonempty(source.size(), target.size());
    std::vector<TfidfVectorizer::SparseVector> src;
    std::vector<TfidfVectorizer::SparseVector> tgt;
    for (const auto& w : source) {
        src.push_back(vectorizer.transform(w));
    }
    for (const auto& w : target) {
        tgt.push_back(vectorizer.transform(w));
    }
    return argmax_labels(source.size(), target.size(), [&](std::size_t m, std::size_t n) {
        return TfidfVectorizer::cosine(src[m], tgt[n]);
    });
}

void VectorTable::add(const std::string& key, std::vector<double> vector)
{
    if (vector.empty()) {
        throw InvalidArgument("empty vector for key '" + key + "'");
    }
    if (dimension_ == 0) {
        dimension_ = vector.size();
    } else if (vector.size() != dimension_) {
        throw InvalidArgument("vector for '" + key + "' has dimension " + std::to_string(vector.size()) +
                              ", expected " + std::to_string(dimension_));
    }
    if (!vectors_.emplace(key, std::move(vector)).second) {
        throw InvalidArgument("duplicate vector key '" + key + "'");
    }
}

const std::vector<double>* VectorTable::find(const std::string& key) const
{
    auto it = vectors_.find(key);
    return it == vectors_.end() ? nullptr : &it->second;
}

void VectorTable::scale(double factor)
{
    for (auto& [key, v] : vectors_) {
        for (auto& x : v) {
            x *= factor;
        }
    }
}

VectorTable VectorTable::load_word_vectors(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    VectorTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::string word;
        if (!(ss >> word)) {
            continue;
        }
        std::vector<double> v;
        double x;
        while (ss >> x) {
            v.push_back(x);
        }
        if (!ss.eof()) {
            throw MalformedRecord(line_no, "non-numeric vector component");
        }
        table.add(word, std::move(v));
    }
    return table;
}

VectorTable VectorTable::load_sentence_vectors(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    VectorTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) {
            continue;
        }
        try {
            auto j = nlohmann::json::parse(line);
            table.add(j.at("key").get<std::string>(), j.at("vector").get<std::vector<double>>());
        } catch (const nlohmann::json::exception& e) {
            throw MalformedRecord(line_no, e.what());
        }
    }
    return table;
}

double cosine(std::span<const double> a, std::span<const double> b)
{
    double dot = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) {
        return 0.0;
    }
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<int> embedding_align(std::span<const EmbeddingItem> source, std::span<const EmbeddingItem> target,
                                 const VectorTable& table, EmbeddingMode mode)
{
    require_nonempty(source.size(), target.size());
    auto embed = [&](const EmbeddingItem& item) {
        std::vector<double> v(table.dimension(), 0.0);
        if (mode == EmbeddingMode::Sentence) {
            const auto* found = table.find(item.key);
            if (!found) {
                throw MissingSentenceKey("no sentence vector for '" + item.key + "'");
            }
            return *found;
        }
        std::size_t hits = 0;
        for (const auto& tok : item.tokens) {
            if (const auto* w = table.find(tok)) {
                for (std::size_t i = 0; i < v.size(); ++i) {
                    v[i] += (*w)[i];
                }
                ++hits;
            }
        }
        if (hits > 0) {
            for (auto& x : v) {
                x /= static_cast<double>(hits);
            }
        }
        return v;
    };
    std::vector<std::vector<double>> src;
    std::vector<std::vector<double>> tgt;
    for (const auto& item : source) {
        src.push_back(embed(item));
    }
    for (const auto& item : target) {
        tgt.push_back(embed(item));
    }
    return argmax_labels(source.size(), target.size(),
                         [&](std::size_t m, std::size_t n) { return cosine(src[m], tgt[n]); });
}

}  // namespace procalign
