#include "tcfbm/random.hpp"

#include <array>

namespace tcfbm {

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Rng substream(std::uint64_t master_seed, std::uint64_t index) {
    const std::uint64_t a = mix64(master_seed);
    const std::uint64_t b = mix64(a ^ mix64(index + 0x632BE59BD9B4E019ULL));
    std::array<std::uint32_t, 4> words{
        static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
        static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    std::seed_seq seq(words.begin(), words.end());
    return Rng(seq);
}

}  // namespace tcfbm
