#include "procalign/recipe.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "procalign/error.hpp"

namespace procalign {

namespace {

std::string lowercase(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool is_blank(const std::string& s)
{
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

Modality modality_from_string(const std::string& s, std::size_t line_no)
{
    if (s == "text") {
        return Modality::Text;
    }
    if (s == "video") {
        return Modality::Video;
    }
    throw MalformedRecord(line_no, "unknown modality '" + s + "'");
}

template <typename T>
T required(const nlohmann::json& j, const char* key, std::size_t line_no)
{
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
        throw MalformedRecord(line_no, std::string("missing field '") + key + "'");
    }
    try {
        return it->get<T>();
    } catch (const nlohmann::json::exception&) {
        throw MalformedRecord(line_no, std::string("field '") + key + "' has the wrong type");
    }
}

}  // namespace

const char* to_string(Modality m) { return m == Modality::Text ? "text" : "video"; }
const char* to_string(ChatLabel c) { return c == ChatLabel::Chat ? "chat" : "content"; }

std::size_t Recipe::content_count() const
{
    return static_cast<std::size_t>(std::count_if(
        instructions.begin(), instructions.end(), [](const Instruction& ins) {
            return !ins.chat_label || *ins.chat_label == ChatLabel::Content;
        }));
}

Recipe recipe_from_json(const nlohmann::json& j, std::size_t line_no)
{
    if (!j.is_object()) {
        throw MalformedRecord(line_no, "record is not an object");
    }
    Recipe r;
    r.recipe_id = required<std::string>(j, "recipe_id", line_no);
    r.dish_id = required<std::string>(j, "dish_id", line_no);
    r.modality = modality_from_string(required<std::string>(j, "modality", line_no), line_no);
    r.title = lowercase(j.value("title", std::string{}));
    r.source_url = j.value("source_url", std::string{});
    if (auto it = j.find("ingredients"); it != j.end() && !it->is_null()) {
        if (!it->is_array()) {
            throw MalformedRecord(line_no, "field 'ingredients' is not an array");
        }
        for (const auto& ing : *it) {
            if (!ing.is_string()) {
                throw MalformedRecord(line_no, "ingredient is not a string");
            }
            r.ingredients.push_back(lowercase(ing.get<std::string>()));
        }
    }

    auto ins_it = j.find("instructions");
    if (ins_it == j.end() || !ins_it->is_array()) {
        throw MalformedRecord(line_no, "missing field 'instructions'");
    }
    if (ins_it->empty()) {
        throw EmptyRecipe("line " + std::to_string(line_no) + ": recipe '" + r.recipe_id +
                          "' has no instructions");
    }

    std::vector<std::pair<long long, Instruction>> ordered;
    long long position = 0;
    for (const auto& item : *ins_it) {
        if (!item.is_object()) {
            throw MalformedRecord(line_no, "instruction is not an object");
        }
        Instruction ins;
        ins.text = required<std::string>(item, "text", line_no);
        if (is_blank(ins.text)) {
            throw MalformedRecord(line_no, "instruction text is empty");
        }
        long long key = item.contains("index") ? required<long long>(item, "index", line_no) : position;
        bool has_start = item.contains("start_sec") && !item["start_sec"].is_null();
        bool has_end = item.contains("end_sec") && !item["end_sec"].is_null();
        if (has_start != has_end) {
            throw MalformedRecord(line_no, "time span needs both start_sec and end_sec");
        }
        if (has_start) {
            TimeSpan span{required<double>(item, "start_sec", line_no),
                          required<double>(item, "end_sec", line_no)};
            if (span.start_sec < 0.0 || !(span.end_sec > span.start_sec)) {
                throw MalformedRecord(line_no, "invalid time span");
            }
            if (r.modality == Modality::Text) {
                throw MalformedRecord(line_no, "text recipes cannot carry time spans");
            }
            ins.span = span;
        }
        if (auto it = item.find("chat_label"); it != item.end() && !it->is_null()) {
            auto label = it->get<std::string>();
            if (label == "chat") {
                ins.chat_label = ChatLabel::Chat;
            } else if (label == "content") {
                ins.chat_label = ChatLabel::Content;
            } else {
                throw MalformedRecord(line_no, "unknown chat_label '" + label + "'");
            }
        }
        ordered.emplace_back(key, std::move(ins));
        ++position;
    }
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [key, ins] : ordered) {
        ins.index = static_cast<int>(r.instructions.size());
        r.instructions.push_back(std::move(ins));
    }
    return r;
}

nlohmann::json recipe_to_json(const Recipe& r)
{
    nlohmann::json instructions = nlohmann::json::array();
    for (const auto& ins : r.instructions) {
        nlohmann::json item{{"index", ins.index}, {"text", ins.text}};
        if (ins.span) {
            item["start_sec"] = ins.span->start_sec;
            item["end_sec"] = ins.span->end_sec;
        }
        if (ins.chat_label) {
            item["chat_label"] = to_string(*ins.chat_label);
        }
        instructions.push_back(std::move(item));
    }
    nlohmann::json j{{"recipe_id", r.recipe_id},
                     {"dish_id", r.dish_id},
                     {"modality", to_string(r.modality)},
                     {"title", r.title},
                     {"ingredients", r.ingredients},
                     {"instructions", std::move(instructions)}};
    if (!r.source_url.empty()) {
        j["source_url"] = r.source_url;
    }
    return j;
}

std::vector<Recipe> parse_recipe_stream(std::istream& in, std::optional<Modality> modality)
{
    std::vector<Recipe> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank(line)) {
            continue;
        }
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw MalformedRecord(line_no, e.what());
        }
        if (modality && j.is_object() && !j.contains("modality")) {
            j["modality"] = to_string(*modality);
        }
        Recipe r = recipe_from_json(j, line_no);
        if (modality && r.modality != *modality) {
            throw MalformedRecord(line_no, "modality does not match the requested one");
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<Recipe> parse_recipe_file(const std::filesystem::path& path, std::optional<Modality> modality)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return parse_recipe_stream(in, modality);
}

void validate(const Recipe& r)
{
    if (r.instructions.empty()) {
        throw EmptyRecipe("recipe '" + r.recipe_id + "' has no instructions");
    }
    for (std::size_t i = 0; i < r.instructions.size(); ++i) {
        const auto& ins = r.instructions[i];
        if (ins.index != static_cast<int>(i)) {
            throw InvalidArgument("recipe '" + r.recipe_id + "': instruction index out of position");
        }
        if (is_blank(ins.text)) {
            throw InvalidArgument("recipe '" + r.recipe_id + "': empty instruction text");
        }
        if (ins.span && (r.modality == Modality::Text || !(ins.span->end_sec > ins.span->start_sec))) {
            throw InvalidArgument("recipe '" + r.recipe_id + "': invalid time span");
        }
    }
}

}  // namespace procalign
