#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "procalign/recipe.hpp"

namespace procalign {

/// Multinomial bag-of-words naive Bayes model for chat/content sentences.
/// Log-likelihoods are add-one smoothed over the training vocabulary. Tokens
/// outside that vocabulary are ignored at classification time.
struct ChatModel {
    std::map<ChatLabel, double> priors;
    std::map<ChatLabel, std::map<std::string, double>> likelihood_log;
    double smoothing = 1.0;

    nlohmann::json to_json() const;
    static ChatModel from_json(const nlohmann::json& j);
};

ChatModel train_chat_model(const std::vector<std::pair<std::string, ChatLabel>>& labeled);

std::vector<ChatLabel> classify_chat(const std::vector<std::string>& sentences,
                                     const ChatModel& model);

/// Fills `chat_label` on every video instruction that does not carry one.
void label_video_recipe(Recipe& recipe, const ChatModel& model);

}  // namespace procalign
