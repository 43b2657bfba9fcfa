#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "lmpipe/lm_backend.hpp"

namespace lmpipe {

// Deterministic backend for tests and offline runs. Two modes:
//   queue  - FIFO of completions consumed per sample,
//   lookup - exact prompt -> completions map.
// Records a full call log for assertions.
class ScriptedBackend final : public LMBackend {
public:
    static std::shared_ptr<ScriptedBackend> queue(std::vector<std::string> completions,
                                                  std::string name = "scripted");
    static std::shared_ptr<ScriptedBackend> lookup(
        std::map<std::string, std::vector<std::string>> responses, std::string name = "scripted");

    LMResponse complete(const LMRequest& request) override;
    std::string name() const override { return name_; }

    // Queue mode: appends one completion to the tail.
    void push(std::string completion);
    // Lookup mode: registers or replaces the completions for a prompt.
    void add_response(std::string prompt, std::vector<std::string> completions);

    std::vector<LMRequest> call_log() const;
    std::size_t calls() const;

private:
    enum class Mode { queue, lookup };
    explicit ScriptedBackend(Mode mode, std::string name) : mode_(mode), name_(std::move(name)) {}

    Mode mode_;
    std::string name_;
    mutable std::mutex mutex_;
    std::vector<std::string> queue_;
    std::size_t queue_pos_ = 0;
    std::map<std::string, std::vector<std::string>> lookup_;
    std::vector<LMRequest> call_log_;
};

} // namespace lmpipe
