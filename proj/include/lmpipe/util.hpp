#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lmpipe {

// Deterministic PRNG (splitmix64). Seeded runs must replay identically across
// platforms and standard libraries, so no implementation-defined std facilities
// are used for seeded sampling.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Inclusive range.
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next() % span);
    }

    double uniform01() { return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0); }

    template <typename T>
    void shuffle(std::vector<T>& values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            const std::size_t j = next() % i;
            std::swap(values[i - 1], values[j]);
        }
    }

    static std::uint64_t derive(std::uint64_t master, std::uint64_t index) {
        Rng mix(master ^ (0xa0761d6478bd642fULL + index * 0xe7037ed1a0b428dbULL));
        return mix.next();
    }

private:
    std::uint64_t state_;
};

namespace strings {

std::string trim(std::string_view text);
std::string to_lower(std::string_view text);
std::vector<std::string> split_lines(std::string_view text);
std::string join(const std::vector<std::string>& parts, std::string_view separator);
bool is_blank(std::string_view text);

} // namespace strings

// FNV-1a over bytes; stable across platforms and process restarts.
std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t value);

} // namespace lmpipe
