#pragma once

#include <filesystem>
#include <optional>

#include "lmpipe/lm_backend.hpp"

namespace lmpipe {

// Persistent LM response cache: one JSON record per key under a directory.
// A record stores the full request alongside the completions, so a key
// collision is detected on read and degrades to a miss. Concurrent writes for
// the same key carry identical content, so last-write-wins races are benign.
class ResponseCache {
public:
    explicit ResponseCache(std::filesystem::path dir);

    std::optional<LMResponse> find(const LMRequest& request) const;
    void store(const LMRequest& request, const LMResponse& response);

    std::size_t size() const;
    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path record_path(const std::string& key) const;
    std::filesystem::path dir_;
};

} // namespace lmpipe
