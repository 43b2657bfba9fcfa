#include "lmpipe/response_cache.hpp"

#include <ctime>
#include <fstream>
#include <unistd.h>

#include <json.hpp>

#include "lmpipe/error.hpp"

namespace lmpipe {

namespace {

using nlohmann::json;

json config_to_json(const GenerationConfig& config) {
    return json{{"n", config.n},
                {"temperature", config.temperature},
                {"max_tokens", config.max_tokens},
                {"stop", config.stop}};
}

GenerationConfig config_from_json(const json& j) {
    GenerationConfig config;
    config.n = j.at("n").get<int>();
    config.temperature = j.at("temperature").get<double>();
    config.max_tokens = j.at("max_tokens").get<int>();
    config.stop = j.at("stop").get<std::vector<std::string>>();
    return config;
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

ResponseCache::ResponseCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
}

std::filesystem::path ResponseCache::record_path(const std::string& key) const {
    return dir_ / (key + ".json");
}

std::optional<LMResponse> ResponseCache::find(const LMRequest& request) const {
    const auto path = record_path(cache_key(request));
    std::ifstream in(path);
    if (!in) return std::nullopt;

    json record;
    try {
        in >> record;
    } catch (const json::exception&) {
        return std::nullopt;  // partial or corrupt record: treat as a miss
    }

    // Verify the stored request; a hash collision degrades to a miss.
    if (record.value("model_id", "") != request.model_id) return std::nullopt;
    if (record.value("prompt", "") != request.prompt) return std::nullopt;
    try {
        if (config_from_json(record.at("config")) != request.config) return std::nullopt;
        LMResponse response;
        response.completions = record.at("completions").get<std::vector<std::string>>();
        return response;
    } catch (const json::exception&) {
        return std::nullopt;
    }
}

void ResponseCache::store(const LMRequest& request, const LMResponse& response) {
    const std::string key = cache_key(request);
    const json record{{"key", key},
                      {"model_id", request.model_id},
                      {"prompt", request.prompt},
                      {"config", config_to_json(request.config)},
                      {"completions", response.completions},
                      {"created_at", utc_timestamp()}};

    const auto final_path = record_path(key);
    const auto tmp_path = final_path.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp_path);
        if (!out) throw Error("cannot write cache record " + final_path.string());
        out << record.dump(2) << "\n";
    }
    std::filesystem::rename(tmp_path, final_path);
}

std::size_t ResponseCache::size() const {
    std::size_t count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
        if (entry.path().extension() == ".json") ++count;
    }
    return count;
}

} // namespace lmpipe
