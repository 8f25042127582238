#include "procalign/model_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "procalign/error.hpp"
#include "procalign/io_util.hpp"

namespace procalign {

namespace {

constexpr std::array<char, 4> kMagic{'P', 'A', 'L', 'M'};
constexpr std::uint8_t kVersion = 1;

nlohmann::json header_json(const AlignmentModel& model)
{
    nlohmann::json stages = nlohmann::json::array();
    for (const auto& s : model.schedule.stages) {
        stages.push_back({{"window", s.window}, {"iterations", s.iterations}});
    }
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& t : model.trace) {
        trace.push_back({{"stage", t.stage},
                         {"iteration", t.iteration},
                         {"window", t.window},
                         {"log_likelihood", t.log_likelihood}});
    }
    return nlohmann::json{
        {"format", "procalign-model"},
        {"version", kVersion},
        {"kind", model.kind},
        {"token_mode", to_string(model.token_mode)},
        {"epsilon", model.epsilon},
        {"source_vocab", model.source_vocab.to_json()},
        {"target_vocab", model.target_vocab.to_json()},
        {"jump", {{"window", model.jump.window()},
                  {"probs", std::vector<double>(model.jump.probs().begin(), model.jump.probs().end())}}},
        {"schedule", stages},
        {"trace", trace},
    };
}

AlignmentModel model_from_header(const nlohmann::json& j)
{
    if (j.value("format", std::string{}) != "procalign-model") {
        throw InvalidArgument("not a procalign model");
    }
    AlignmentModel m;
    m.kind = j.value("kind", std::string{});
    m.token_mode = token_mode_from_string(j.value("token_mode", std::string("all-words")));
    m.epsilon = j.value("epsilon", 1.0);
    m.source_vocab = Vocabulary::from_json(j.at("source_vocab"));
    m.target_vocab = Vocabulary::from_json(j.at("target_vocab"));
    m.jump = JumpTable(j.at("jump").at("window").get<int>(),
                       j.at("jump").at("probs").get<std::vector<double>>());
    m.schedule.stages.clear();
    for (const auto& s : j.at("schedule")) {
        m.schedule.stages.push_back({s.at("window").get<int>(), s.at("iterations").get<int>()});
    }
    for (const auto& t : j.value("trace", nlohmann::json::array())) {
        m.trace.push_back({t.at("stage").get<int>(), t.at("iteration").get<int>(),
                           t.at("window").get<int>(), t.at("log_likelihood").get<double>()});
    }
    return m;
}

template <typename T>
void put_le(std::ostream& out, T value)
{
    static_assert(std::is_trivially_copyable_v<T>);
    std::array<unsigned char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(bytes.begin(), bytes.end());
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
T get_le(std::istream& in)
{
    std::array<unsigned char, sizeof(T)> bytes;
    if (!in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T))) {
        throw InvalidArgument("truncated binary model");
    }
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(bytes.begin(), bytes.end());
    }
    T value;
    std::memcpy(&value, bytes.data(), sizeof(T));
    return value;
}

}  // namespace

nlohmann::json model_to_json(const AlignmentModel& model)
{
    nlohmann::json j = header_json(model);
    nlohmann::json lexical = nlohmann::json::array();
    for (const auto& [e, f, p] : model.lexical.triplets()) {
        lexical.push_back(nlohmann::json::array({e, f, p}));
    }
    j["lexical"] = std::move(lexical);
    return j;
}

AlignmentModel model_from_json(const nlohmann::json& j)
{
    AlignmentModel m = model_from_header(j);
    std::vector<std::tuple<WordId, WordId, double>> triplets;
    for (const auto& t : j.at("lexical")) {
        triplets.emplace_back(t.at(0).get<WordId>(), t.at(1).get<WordId>(), t.at(2).get<double>());
    }
    m.lexical = LexicalTable::from_triplets(std::move(triplets));
    return m;
}

void write_model_binary(std::ostream& out, const AlignmentModel& model)
{
    const std::string header = header_json(model).dump();
    out.write(kMagic.data(), kMagic.size());
    put_le<std::uint8_t>(out, kVersion);
    put_le<std::uint64_t>(out, header.size());
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    const auto triplets = model.lexical.triplets();
    put_le<std::uint64_t>(out, triplets.size());
    for (const auto& [e, f, p] : triplets) {
        put_le<std::uint32_t>(out, e);
        put_le<std::uint32_t>(out, f);
        put_le<double>(out, p);
    }
}

AlignmentModel read_model_binary(std::istream& in)
{
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
        throw InvalidArgument("bad binary model magic");
    }
    if (auto version = get_le<std::uint8_t>(in); version != kVersion) {
        throw InvalidArgument("unsupported binary model version " + std::to_string(version));
    }
    const auto header_len = get_le<std::uint64_t>(in);
    std::string header(header_len, '\0');
    if (!in.read(header.data(), static_cast<std::streamsize>(header_len))) {
        throw InvalidArgument("truncated binary model header");
    }
    AlignmentModel m = model_from_header(nlohmann::json::parse(header));
    const auto n = get_le<std::uint64_t>(in);
    std::vector<std::tuple<WordId, WordId, double>> triplets;
    triplets.reserve(n);
    for (std::uint64_t k = 0; k < n; ++k) {
        auto e = get_le<std::uint32_t>(in);
        auto f = get_le<std::uint32_t>(in);
        auto p = get_le<double>(in);
        triplets.emplace_back(e, f, p);
    }
    m.lexical = LexicalTable::from_triplets(std::move(triplets));
    return m;
}

void save_model(const std::filesystem::path& path, const AlignmentModel& model)
{
    if (path.extension() == ".bin") {
        std::ostringstream out(std::ios::binary);
        write_model_binary(out, model);
        write_file_atomic(path, out.str());
    } else {
        write_file_atomic(path, model_to_json(model).dump() + "\n");
    }
}

AlignmentModel load_model(const std::filesystem::path& path)
{
    if (path.extension() == ".bin") {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw IoError("cannot open " + path.string());
        }
        return read_model_binary(in);
    }
    return model_from_json(nlohmann::json::parse(read_file(path)));
}

}  // namespace procalign
