#include "lmpipe/scripted_backend.hpp"

#include "lmpipe/error.hpp"

namespace lmpipe {

std::shared_ptr<ScriptedBackend> ScriptedBackend::queue(std::vector<std::string> completions,
                                                        std::string name) {
    auto backend =
        std::shared_ptr<ScriptedBackend>(new ScriptedBackend(Mode::queue, std::move(name)));
    backend->queue_ = std::move(completions);
    return backend;
}

std::shared_ptr<ScriptedBackend> ScriptedBackend::lookup(
    std::map<std::string, std::vector<std::string>> responses, std::string name) {
    if (responses.empty()) {
        throw ConfigError("scripted lookup backend requires a non-empty script");
    }
    auto backend =
        std::shared_ptr<ScriptedBackend>(new ScriptedBackend(Mode::lookup, std::move(name)));
    backend->lookup_ = std::move(responses);
    return backend;
}

LMResponse ScriptedBackend::complete(const LMRequest& request) {
    std::lock_guard<std::mutex> lock(mutex_);
    call_log_.push_back(request);

    LMResponse response;
    if (mode_ == Mode::queue) {
        for (int i = 0; i < request.config.n; ++i) {
            if (queue_pos_ >= queue_.size()) {
                throw BackendError("scripted queue exhausted after " +
                                   std::to_string(queue_pos_) + " completions (call " +
                                   std::to_string(call_log_.size()) + ")");
            }
            response.completions.push_back(queue_[queue_pos_++]);
        }
        return response;
    }

    const auto it = lookup_.find(request.prompt);
    if (it == lookup_.end()) {
        std::string shown = request.prompt.substr(0, 160);
        if (request.prompt.size() > 160) shown += "...";
        throw BackendError("scripted lookup has no response for prompt: \"" + shown + "\"");
    }
    if (static_cast<int>(it->second.size()) < request.config.n) {
        throw BackendError("scripted lookup stores " + std::to_string(it->second.size()) +
                           " completions for prompt, need " + std::to_string(request.config.n));
    }
    response.completions.assign(it->second.begin(), it->second.begin() + request.config.n);
    return response;
}

void ScriptedBackend::push(std::string completion) {
    std::lock_guard<std::mutex> lock(mutex_);
    queue_.push_back(std::move(completion));
}

void ScriptedBackend::add_response(std::string prompt, std::vector<std::string> completions) {
    std::lock_guard<std::mutex> lock(mutex_);
    lookup_[std::move(prompt)] = std::move(completions);
}

std::vector<LMRequest> ScriptedBackend::call_log() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return call_log_;
}

std::size_t ScriptedBackend::calls() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return call_log_.size();
}

} // namespace lmpipe
