#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stylo {

// Deterministic RNG used everywhere. std::mt19937_64 has a fixed,
// portable output sequence; the distribution helpers below are hand-rolled
// because std::uniform_int_distribution and std::shuffle are
// implementation-defined and would break cross-platform reproducibility.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform integer in [0, n) via rejection sampling, bias-free.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double unit() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // In-place Fisher-Yates shuffle, identical on every platform.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

// FNV-1a on the byte representation of the inputs. Used to derive
// independent stream seeds from (base seed, document id, index) so that
// adding documents or reordering work does not shift other streams.
inline std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = 14695981039346656037ULL) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::uint64_t fnv1a64(std::uint64_t value, std::uint64_t h = 14695981039346656037ULL) {
    for (int i = 0; i < 8; ++i) {
        h ^= (value >> (8 * i)) & 0xffULL;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::uint64_t derive_seed(std::uint64_t base, std::string_view tag, std::uint64_t a = 0, std::uint64_t b = 0) {
    std::uint64_t h = fnv1a64(base);
    h = fnv1a64(tag, h);
    h = fnv1a64(a, h);
    h = fnv1a64(b, h);
    return h;
}

// Compensated summation; keeps modularity and correlation sums stable.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

inline double mean_of(std::span<const double> xs) {
    if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
    KahanSum s;
    for (double x : xs) s.add(x);
    return s.value() / static_cast<double>(xs.size());
}

inline double sample_std(std::span<const double> xs) {
    if (xs.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    double m = mean_of(xs);
    KahanSum s;
    for (double x : xs) s.add((x - m) * (x - m));
    return std::sqrt(s.value() / static_cast<double>(xs.size() - 1));
}

// Shortest round-trip formatting for doubles; output is bit-stable across
// platforms, unlike ostream defaults.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Runs fn(0..n-1) on up to `threads` workers. Results must be written to
// per-index slots; the call order is unspecified but the work set is not.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

// Worker count resolution: 0 means "ask the hardware".
unsigned resolve_threads(unsigned requested);

}  // namespace stylo
