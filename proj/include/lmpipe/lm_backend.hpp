#pragma once

#include <atomic>
#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lmpipe {

struct GenerationConfig {
    int n = 1;                       // number of samples
    double temperature = 0.0;
    int max_tokens = 512;
    std::vector<std::string> stop;

    // Throws ConfigError when n < 1, temperature < 0, or max_tokens < 1.
    void validate() const;

    bool operator==(const GenerationConfig&) const = default;
};

struct LMRequest {
    std::string model_id;
    std::string prompt;              // non-empty
    GenerationConfig config;
};

struct TokenUsage {
    long prompt_tokens = 0;
    long completion_tokens = 0;
};

struct LMResponse {
    std::vector<std::string> completions;  // length == config.n
    std::optional<TokenUsage> usage;
};

// A text-completion device: consumes a prompt string, returns completions.
class LMBackend {
public:
    virtual ~LMBackend() = default;
    virtual LMResponse complete(const LMRequest& request) = 0;
    virtual std::string name() const = 0;
};

class BackendRegistry {
public:
    void add(const std::string& model_id, std::shared_ptr<LMBackend> backend);
    std::shared_ptr<LMBackend> find(const std::string& model_id) const;

private:
    std::map<std::string, std::shared_ptr<LMBackend>> backends_;
};

// Stable content hash over (model_id, prompt, n, temperature, max_tokens,
// stop). Identical requests collide; any field change does not.
std::string cache_key(const LMRequest& request);

struct RetryPolicy {
    int attempts = 3;
    std::chrono::milliseconds initial_backoff{100};
    double multiplier = 2.0;
};

class ResponseCache;

// Dispatches requests to registered backends, consulting the cache first.
// Transport errors are retried with exponential backoff; other backend errors
// are not. Safe to call from many concurrent workers.
class LMClient {
public:
    explicit LMClient(BackendRegistry registry, std::shared_ptr<ResponseCache> cache = nullptr,
                      RetryPolicy retry = {});

    LMResponse generate(const LMRequest& request);

    // Backend invocations performed (cache hits excluded).
    long backend_calls() const { return backend_calls_.load(); }

private:
    BackendRegistry registry_;
    std::shared_ptr<ResponseCache> cache_;
    RetryPolicy retry_;
    std::atomic<long> backend_calls_{0};
};

// An LM endpoint as seen by modules: a client plus a model id.
class Lm {
public:
    Lm(std::shared_ptr<LMClient> client, std::string model_id);

    LMResponse generate(const std::string& prompt, const GenerationConfig& config) const;

    const std::string& model_id() const { return model_id_; }
    const std::shared_ptr<LMClient>& client() const { return client_; }

private:
    std::shared_ptr<LMClient> client_;
    std::string model_id_;
};

// Wraps a single backend into a ready-to-use Lm, registered under the
// backend's own name.
std::shared_ptr<Lm> make_lm(std::shared_ptr<LMBackend> backend,
                            std::shared_ptr<ResponseCache> cache = nullptr,
                            RetryPolicy retry = {});

} // namespace lmpipe
