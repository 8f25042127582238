#include "procalign/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

#include "procalign/error.hpp"
#include "procalign/io_util.hpp"

namespace procalign {

namespace {

constexpr const char* kDefaultConfig = R"(# procalign configuration. One "key = value" per line; '#' starts a comment.
# Any key can be overridden from the environment as PROCALIGN_<KEY>, upper
# case, with '.' replaced by '_' (e.g. PROCALIGN_EDGE_THRESHOLD=0.6).

# Top-level seed for every randomized step (random baseline, bootstrap, synth).
seed = 13

# Recipe pair pruning: minimum ingredient match per pair kind.
prune.text_text_ingredient = 0.70
prune.text_video_ingredient = 0.70
prune.video_video_ingredient = 0.90
# Text-text pairs are dropped when one recipe has more than this many times
# the other's instruction count.
prune.length_ratio = 2.0
# Video recipes with more content sentences than this are dropped.
prune.max_video_sentences = 100

# Words rarer than this are removed from the aligner vocabularies.
vocab.text_min_count = 5
vocab.video_min_count = 15

# EM schedule as window:iterations stages. A short window first warm-starts
# the wider final window [-2, 2].
train.schedule = 1:3,2:2
# Initial probability of offsets that become legal when the window widens.
train.widen_floor = 0.05
train.jump_update_iterations = 50
# all-words | nouns | nouns-verbs
train.token_mode = all-words

# Directed edges at or below this posterior are left out of the dish graph.
joint.edge_threshold = 0.5
joint.min_set_size = 2
joint.path_cap = 1000000

# Posterior thresholds for knowledge extraction.
extract.paraphrase_threshold = 0.5
extract.breakdown_threshold = 0.9

bm25.k1 = 1.2
bm25.b = 0.75

# consensus | per-annotator
eval.reference_mode = consensus
eval.bootstrap_resamples = 10000

# Optional resources; empty means built-in stop words / no lexicon.
stop_words =
lexicon =

# Drop chat-labeled transcript sentences during ingest.
ingest.drop_chat = false

# OpenMP threads; 0 keeps the runtime default.
threads = 0
)";

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return {};
    }
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

Config parse_into(Config config, const std::string& text, bool allow_new_keys)
{
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InvalidConfig("config line " + std::to_string(line_no) + " lacks '='");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!allow_new_keys && !config.values().count(key)) {
            throw InvalidConfig("unknown config key '" + key + "'");
        }
        config.set(key, value);
    }
    return config;
}

}  // namespace

Config Config::defaults() { return parse_into(Config{}, kDefaultConfig, true); }

std::string Config::default_text() { return kDefaultConfig; }

Config Config::parse(const std::string& text) { return parse_into(defaults(), text, false); }

Config Config::load(const std::filesystem::path& path) { return parse(read_file(path)); }

void Config::set(const std::string& key, const std::string& value) { values_[key] = value; }

void Config::apply_env(const std::string& prefix)
{
    for (auto& [key, value] : values_) {
        std::string name = prefix;
        for (char c : key) {
            name += c == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        }
        if (const char* v = std::getenv(name.c_str())) {
            value = trim(v);
        }
    }
}

const std::string& Config::get(const std::string& key) const
{
    auto it = values_.find(key);
    if (it == values_.end()) {
        throw InvalidConfig("missing config key '" + key + "'");
    }
    return it->second;
}

double Config::get_double(const std::string& key) const
{
    const auto& v = get(key);
    try {
        std::size_t used = 0;
        double d = std::stod(v, &used);
        if (used != v.size()) {
            throw std::invalid_argument(v);
        }
        return d;
    } catch (const std::exception&) {
        throw InvalidConfig("config key '" + key + "' is not a number: '" + v + "'");
    }
}

long long Config::get_int(const std::string& key) const
{
    const auto& v = get(key);
    try {
        std::size_t used = 0;
        long long n = std::stoll(v, &used);
        if (used != v.size()) {
            throw std::invalid_argument(v);
        }
        return n;
    } catch (const std::exception&) {
        throw InvalidConfig("config key '" + key + "' is not an integer: '" + v + "'");
    }
}

bool Config::get_bool(const std::string& key) const
{
    const auto& v = get(key);
    if (v == "true" || v == "1" || v == "yes") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no") {
        return false;
    }
    throw InvalidConfig("config key '" + key + "' is not a boolean: '" + v + "'");
}

PruneConfig Config::prune() const
{
    PruneConfig p;
    p.text_text_ingredient = get_double("prune.text_text_ingredient");
    p.text_video_ingredient = get_double("prune.text_video_ingredient");
    p.video_video_ingredient = get_double("prune.video_video_ingredient");
    p.length_ratio = get_double("prune.length_ratio");
    auto max_sent = get_int("prune.max_video_sentences");
    if (max_sent < 0) {
        throw InvalidConfig("prune.max_video_sentences must be non-negative");
    }
    p.max_video_sentences = static_cast<std::size_t>(max_sent);
    return p;
}

TrainSchedule Config::schedule() const { return parse_schedule(get("train.schedule")); }

std::string Config::dump() const
{
    std::string out;
    for (const auto& [key, value] : values_) {
        out += key + " = " + value + "\n";
    }
    return out;
}

TrainSchedule parse_schedule(const std::string& text)
{
    TrainSchedule schedule;
    schedule.stages.clear();
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        auto colon = item.find(':');
        if (colon == std::string::npos) {
            throw InvalidConfig("schedule stage '" + item + "' is not window:iterations");
        }
        try {
            schedule.stages.push_back({std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1))});
        } catch (const std::exception&) {
            throw InvalidConfig("schedule stage '" + item + "' is not window:iterations");
        }
    }
    schedule.validate();
    return schedule;
}

}  // namespace procalign
