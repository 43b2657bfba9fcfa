#include "lmpipe/lm_backend.hpp"

#include <cstdio>
#include <thread>

#include "lmpipe/error.hpp"
#include "lmpipe/response_cache.hpp"
#include "lmpipe/util.hpp"

namespace lmpipe {

void GenerationConfig::validate() const {
    if (n < 1) throw ConfigError("generation config requires n >= 1");
    if (temperature < 0.0) throw ConfigError("generation config requires temperature >= 0");
    if (max_tokens < 1) throw ConfigError("generation config requires max_tokens >= 1");
}

void BackendRegistry::add(const std::string& model_id, std::shared_ptr<LMBackend> backend) {
    backends_[model_id] = std::move(backend);
}

std::shared_ptr<LMBackend> BackendRegistry::find(const std::string& model_id) const {
    const auto it = backends_.find(model_id);
    return it == backends_.end() ? nullptr : it->second;
}

std::string cache_key(const LMRequest& request) {
    // Canonical serialization with unit separators; prompt last so any prompt
    // byte is covered.
    std::string canon = "model=" + request.model_id;
    canon += '\x1f';
    canon += "n=" + std::to_string(request.config.n);
    canon += '\x1f';
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", request.config.temperature);
    canon += "temperature=";
    canon += buf;
    canon += '\x1f';
    canon += "max_tokens=" + std::to_string(request.config.max_tokens);
    canon += '\x1f';
    canon += "stop=" + std::to_string(request.config.stop.size());
    for (const auto& stop : request.config.stop) {
        canon += '\x1f';
        canon += std::to_string(stop.size()) + ":" + stop;
    }
    canon += '\x1f';
    canon += "prompt=" + request.prompt;

    // Two independent passes give a 128-bit key; the cache additionally
    // verifies the stored request on read, so collisions degrade to misses.
    const std::uint64_t lo = fnv1a64(canon);
    const std::uint64_t hi = fnv1a64(std::to_string(canon.size()) + "#" + canon);
    return hex64(hi) + hex64(lo);
}

LMClient::LMClient(BackendRegistry registry, std::shared_ptr<ResponseCache> cache,
                   RetryPolicy retry)
    : registry_(std::move(registry)), cache_(std::move(cache)), retry_(retry) {}

LMResponse LMClient::generate(const LMRequest& request) {
    if (request.prompt.empty()) throw ConfigError("LM request prompt is empty");
    request.config.validate();

    if (cache_) {
        if (auto hit = cache_->find(request)) return *hit;
    }

    const auto backend = registry_.find(request.model_id);
    if (!backend) {
        throw BackendError("unknown model '" + request.model_id + "'");
    }

    LMResponse response;
    auto backoff = retry_.initial_backoff;
    for (int attempt = 1;; ++attempt) {
        try {
            backend_calls_.fetch_add(1);
            response = backend->complete(request);
            break;
        } catch (const TransportError& e) {
            if (attempt >= retry_.attempts) {
                throw TransportError(std::string(e.what()) + " (after " +
                                     std::to_string(attempt) + " attempts)");
            }
            std::this_thread::sleep_for(backoff);
            backoff = std::chrono::milliseconds(
                static_cast<long>(static_cast<double>(backoff.count()) * retry_.multiplier));
        }
    }

    if (static_cast<int>(response.completions.size()) < request.config.n) {
        throw BackendError("backend '" + backend->name() + "' returned " +
                           std::to_string(response.completions.size()) + " completions, need " +
                           std::to_string(request.config.n));
    }
    response.completions.resize(static_cast<std::size_t>(request.config.n));

    if (cache_) cache_->store(request, response);
    return response;
}

Lm::Lm(std::shared_ptr<LMClient> client, std::string model_id)
    : client_(std::move(client)), model_id_(std::move(model_id)) {}

LMResponse Lm::generate(const std::string& prompt, const GenerationConfig& config) const {
    return client_->generate(LMRequest{model_id_, prompt, config});
}

std::shared_ptr<Lm> make_lm(std::shared_ptr<LMBackend> backend,
                            std::shared_ptr<ResponseCache> cache, RetryPolicy retry) {
    const std::string model_id = backend->name();
    BackendRegistry registry;
    registry.add(model_id, std::move(backend));
    auto client = std::make_shared<LMClient>(std::move(registry), std::move(cache), retry);
    return std::make_shared<Lm>(std::move(client), model_id);
}

} // namespace lmpipe
