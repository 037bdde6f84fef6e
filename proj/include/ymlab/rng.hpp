#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace ymlab {

// Counter-based generator: the i-th draw is a pure function of (key, i), so
// streams are reproducible and independent without shared state.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) noexcept : key_(mix(key ^ 0x9e3779b97f4a7c15ULL)) {}

    std::uint64_t at(std::uint64_t counter) const noexcept { return mix(key_ + mix(counter)); }

    std::uint64_t next_u64() noexcept { return at(counter_++); }

    // Uniform on the open interval (0, 1).
    double next_uniform() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Box-Muller; avoids std::normal_distribution, whose output is
    // implementation-defined.
    double next_normal() noexcept {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(phi);
        has_spare_ = true;
        return r * std::cos(phi);
    }

    std::uint64_t counter() const noexcept { return counter_; }

private:
    static std::uint64_t mix(std::uint64_t z) noexcept {
        // splitmix64 finalizer
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace ymlab
