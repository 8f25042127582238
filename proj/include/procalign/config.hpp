#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "procalign/alignment_model.hpp"
#include "procalign/pairing.hpp"

namespace procalign {

/// Flat key = value settings. Lines starting with '#' are comments. Values
/// can be overridden by environment variables named prefix + KEY in upper
/// case with '.' replaced by '_' (e.g. PROCALIGN_EDGE_THRESHOLD).
class Config {
  public:
    /// Every tunable constant with its default value.
    static Config defaults();
    /// Commented default config file contents.
    static std::string default_text();

    /// Reads a file on top of the defaults. Unknown keys raise InvalidConfig.
    static Config load(const std::filesystem::path& path);
    static Config parse(const std::string& text);

    void set(const std::string& key, const std::string& value);
    void apply_env(const std::string& prefix = "PROCALIGN_");

    const std::string& get(const std::string& key) const;
    double get_double(const std::string& key) const;
    long long get_int(const std::string& key) const;
    bool get_bool(const std::string& key) const;

    PruneConfig prune() const;
    TrainSchedule schedule() const;

    /// Resolved settings, one "key = value" per line, sorted by key.
    std::string dump() const;

    const std::map<std::string, std::string>& values() const { return values_; }

  private:
    std::map<std::string, std::string> values_;
};

TrainSchedule parse_schedule(const std::string& text);  // "1:3,2:2"

}  // namespace procalign
