#include "lmpipe/remote_backend.hpp"

#include <cstdlib>

#include <httplib.h>
#include <json.hpp>

#include "lmpipe/error.hpp"

namespace lmpipe {

using nlohmann::json;

RemoteBackendConfig RemoteBackendConfig::from_env() {
    RemoteBackendConfig config;
    if (const char* endpoint = std::getenv("LMPIPE_ENDPOINT")) config.endpoint = endpoint;
    if (const char* model = std::getenv("LMPIPE_MODEL")) config.model_id = model;
    return config;
}

RemoteBackend::RemoteBackend(RemoteBackendConfig config) : config_(std::move(config)) {
    if (config_.endpoint.empty()) throw ConfigError("remote backend requires an endpoint URL");
    if (config_.model_id.empty()) throw ConfigError("remote backend requires a model id");

    const std::size_t scheme_end = config_.endpoint.find("://");
    const std::size_t host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
    const std::size_t path_start = config_.endpoint.find('/', host_start);
    if (path_start == std::string::npos) {
        scheme_host_ = config_.endpoint;
        path_ = "/";
    } else {
        scheme_host_ = config_.endpoint.substr(0, path_start);
        path_ = config_.endpoint.substr(path_start);
    }
}

LMResponse RemoteBackend::complete(const LMRequest& request) {
    json body{{"model", request.model_id},
              {"prompt", request.prompt},
              {"n", request.config.n},
              {"temperature", request.config.temperature},
              {"max_tokens", request.config.max_tokens},
              {"stop", request.config.stop}};

    httplib::Client client(scheme_host_);
    client.set_read_timeout(config_.timeout_seconds, 0);
    client.set_connection_timeout(config_.timeout_seconds, 0);

    httplib::Headers headers;
    if (!config_.api_token_env.empty()) {
        if (const char* token = std::getenv(config_.api_token_env.c_str())) {
            headers.emplace("Authorization", std::string("Bearer ") + token);
        }
    }

    const auto result = client.Post(path_, headers, body.dump(), "application/json");
    if (!result) {
        throw TransportError("cannot reach " + config_.endpoint + ": " +
                             httplib::to_string(result.error()));
    }
    if (result->status >= 500) {
        throw TransportError("remote LM returned status " + std::to_string(result->status));
    }
    if (result->status >= 400) {
        throw BackendError("remote LM rejected request with status " +
                           std::to_string(result->status) + ": " + result->body.substr(0, 200));
    }

    json payload;
    try {
        payload = json::parse(result->body);
    } catch (const json::exception& e) {
        throw BackendError(std::string("malformed remote payload: ") + e.what());
    }

    LMResponse response;
    if (payload.contains("completions") && payload["completions"].is_array()) {
        for (const auto& item : payload["completions"]) {
            if (!item.is_string()) throw BackendError("malformed remote payload: completions must be strings");
            response.completions.push_back(item.get<std::string>());
        }
    } else if (payload.contains("choices") && payload["choices"].is_array()) {
        for (const auto& choice : payload["choices"]) {
            if (!choice.contains("text")) {
                throw BackendError("malformed remote payload: choice without text");
            }
            response.completions.push_back(choice["text"].get<std::string>());
        }
    } else {
        throw BackendError("malformed remote payload: no completions or choices array");
    }

    if (payload.contains("usage") && payload["usage"].is_object()) {
        TokenUsage usage;
        usage.prompt_tokens = payload["usage"].value("prompt_tokens", 0L);
        usage.completion_tokens = payload["usage"].value("completion_tokens", 0L);
        response.usage = usage;
    }
    return response;
}

} // namespace lmpipe
