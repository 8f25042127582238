#include "procalign/io_util.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "procalign/error.hpp"

namespace procalign {

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot write " + tmp.string());
        }
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) {
            throw IoError("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
    }
}

void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(const nlohmann::json&, std::size_t)>& fn)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) {
            continue;
        }
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw MalformedRecord(line_no, e.what());
        }
        try {
            fn(j, line_no);
        } catch (const nlohmann::json::exception& e) {
            throw MalformedRecord(line_no, e.what());
        }
    }
}

std::string to_jsonl(const std::vector<nlohmann::json>& records)
{
    std::string out;
    for (const auto& r : records) {
        out += r.dump();
        out += '\n';
    }
    return out;
}

std::uint64_t fnv1a64(std::string_view data)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t value)
{
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

RecipeIndex::RecipeIndex(const std::vector<Recipe>& recipes)
{
    for (const auto& r : recipes) {
        if (!by_id_.emplace(r.recipe_id, &r).second) {
            throw InvalidArgument("duplicate recipe_id '" + r.recipe_id + "'");
        }
    }
}

const Recipe& RecipeIndex::at(const std::string& recipe_id) const
{
    auto* r = find(recipe_id);
    if (!r) {
        throw InvalidArgument("unknown recipe_id '" + recipe_id + "'");
    }
    return *r;
}

const Recipe* RecipeIndex::find(const std::string& recipe_id) const
{
    auto it = by_id_.find(recipe_id);
    return it == by_id_.end() ? nullptr : it->second;
}

}  // namespace procalign
