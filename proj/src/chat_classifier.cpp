#include "procalign/chat_classifier.hpp"

#include <cmath>
#include <set>

#include "procalign/error.hpp"
#include "procalign/text.hpp"

namespace procalign {

namespace {

ChatLabel label_from_string(const std::string& s)
{
    if (s == "chat") {
        return ChatLabel::Chat;
    }
    if (s == "content") {
        return ChatLabel::Content;
    }
    throw InvalidArgument("unknown chat label '" + s + "'");
}

}  // namespace

nlohmann::json ChatModel::to_json() const
{
    nlohmann::json p = nlohmann::json::object();
    nlohmann::json l = nlohmann::json::object();
    for (const auto& [label, prior] : priors) {
        p[to_string(label)] = prior;
    }
    for (const auto& [label, table] : likelihood_log) {
        nlohmann::json row = nlohmann::json::object();
        for (const auto& [tok, v] : table) {
            row[tok] = v;
        }
        l[to_string(label)] = std::move(row);
    }
    return nlohmann::json{{"priors", p}, {"likelihood_log", l}, {"smoothing", smoothing}};
}

ChatModel ChatModel::from_json(const nlohmann::json& j)
{
    ChatModel m;
    for (const auto& [label, prior] : j.at("priors").items()) {
        m.priors[label_from_string(label)] = prior.get<double>();
    }
    for (const auto& [label, row] : j.at("likelihood_log").items()) {
        auto& table = m.likelihood_log[label_from_string(label)];
        for (const auto& [tok, v] : row.items()) {
            table[tok] = v.get<double>();
        }
    }
    m.smoothing = j.value("smoothing", 1.0);
    return m;
}

ChatModel train_chat_model(const std::vector<std::pair<std::string, ChatLabel>>& labeled)
{
    if (labeled.empty()) {
        throw NoData("chat classifier needs at least one labeled sentence");
    }
    std::map<ChatLabel, std::size_t> docs;
    std::map<ChatLabel, std::map<std::string, double>> counts;
    std::set<std::string> vocab;
    for (const auto& [sentence, label] : labeled) {
        ++docs[label];
        auto& c = counts[label];
        for (auto& w : split_words(sentence)) {
            c[w] += 1.0;
            vocab.insert(std::move(w));
        }
    }

    ChatModel m;
    for (const auto& [label, n] : docs) {
        m.priors[label] = static_cast<double>(n) / static_cast<double>(labeled.size());
        double total = 0.0;
        for (const auto& [w, c] : counts[label]) {
            total += c;
        }
        double denom = total + m.smoothing * static_cast<double>(vocab.size());
        auto& row = m.likelihood_log[label];
        for (const auto& w : vocab) {
            auto it = counts[label].find(w);
            double c = it == counts[label].end() ? 0.0 : it->second;
            row[w] = std::log((c + m.smoothing) / denom);
        }
    }
    return m;
}

std::vector<ChatLabel> classify_chat(const std::vector<std::string>& sentences, const ChatModel& model)
{
    if (model.priors.empty()) {
        throw EmptyModel("chat model has no classes");
    }
    std::vector<ChatLabel> out;
    out.reserve(sentences.size());
    for (const auto& sentence : sentences) {
        auto words = split_words(sentence);
        bool have_best = false;
        ChatLabel best = ChatLabel::Content;
        double best_score = 0.0;
        // std::map order: Chat before Content; ties keep the first.
        for (const auto& [label, prior] : model.priors) {
            double score = std::log(prior);
            auto row = model.likelihood_log.find(label);
            if (row != model.likelihood_log.end()) {
                for (const auto& w : words) {
                    auto it = row->second.find(w);
                    if (it != row->second.end()) {
                        score += it->second;
                    }
                }
            }
            if (!have_best || score > best_score) {
                have_best = true;
                best = label;
                best_score = score;
            }
        }
        out.push_back(best);
    }
    return out;
}

void label_video_recipe(Recipe& recipe, const ChatModel& model)
{
    if (recipe.modality != Modality::Video) {
        return;
    }
    std::vector<std::string> pending;
    std::vector<std::size_t> where;
    for (std::size_t i = 0; i < recipe.instructions.size(); ++i) {
        if (!recipe.instructions[i].chat_label) {
            pending.push_back(recipe.instructions[i].text);
            where.push_back(i);
        }
    }
    auto labels = classify_chat(pending, model);
    for (std::size_t k = 0; k < where.size(); ++k) {
        recipe.instructions[where[k]].chat_label = labels[k];
    }
}

}  // namespace procalign
