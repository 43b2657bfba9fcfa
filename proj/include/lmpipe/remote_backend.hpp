#pragma once

#include <string>

#include "lmpipe/lm_backend.hpp"

namespace lmpipe {

struct RemoteBackendConfig {
    std::string endpoint;            // e.g. "http://host:8080/v1/completions"
    std::string model_id;
    std::string api_token_env = "LMPIPE_API_TOKEN";  // bearer token read from this env var
    int timeout_seconds = 60;

    // Reads endpoint/model from LMPIPE_ENDPOINT / LMPIPE_MODEL when unset.
    static RemoteBackendConfig from_env();
};

// Minimal completion-style HTTP client. Request body:
//   {"model": ..., "prompt": ..., "n": ..., "temperature": ..., "max_tokens": ..., "stop": [...]}
// Response body:
//   {"completions": ["...", ...]}             (also accepts OpenAI-style
//   {"choices": [{"text": "..."}, ...]})
// Connection failures and 5xx raise TransportError (retried by LMClient);
// 4xx and malformed payloads raise BackendError.
class RemoteBackend final : public LMBackend {
public:
    explicit RemoteBackend(RemoteBackendConfig config);

    LMResponse complete(const LMRequest& request) override;
    std::string name() const override { return config_.model_id; }

private:
    RemoteBackendConfig config_;
    std::string scheme_host_;
    std::string path_;
};

} // namespace lmpipe
