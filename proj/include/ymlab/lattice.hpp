#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace ymlab {

// Periodic hypercubic lattice with unit spacing. Sites are enumerated
// row-major over dimensions in declaration order (last dimension fastest).
class LatticeGeometry {
public:
    static constexpr int kMaxDim = 3;
    static constexpr int kMinExtent = 4;

    // Throws std::invalid_argument unless 1 <= extent.size() <= 3 and every
    // extent >= 4.
    explicit LatticeGeometry(std::vector<int> extent);

    int spatial_dim() const noexcept { return static_cast<int>(extent_.size()); }
    const std::vector<int>& extent() const noexcept { return extent_; }
    int extent(int d) const { return extent_[d]; }
    std::size_t sites() const noexcept { return sites_; }
    static constexpr double spacing() noexcept { return 1.0; }

    std::size_t forward(std::size_t site, int d) const noexcept { return fwd_[site * kMaxDim + d]; }
    std::size_t backward(std::size_t site, int d) const noexcept { return bwd_[site * kMaxDim + d]; }

    std::array<int, kMaxDim> coords(std::size_t site) const noexcept;
    std::size_t site_of(std::span<const int> coords) const noexcept;  // coordinates wrapped

    // Site shifted by `shift` lattice units (periodic).
    std::size_t translate(std::size_t site, std::span<const int> shift) const noexcept;

    // Number of ordered direction pairs i < j.
    int pair_count() const noexcept { return spatial_dim() * (spatial_dim() - 1) / 2; }

    friend bool operator==(const LatticeGeometry& x, const LatticeGeometry& y) noexcept {
        return x.extent_ == y.extent_;
    }

private:
    std::vector<int> extent_;
    std::size_t sites_ = 0;
    std::vector<std::size_t> fwd_;
    std::vector<std::size_t> bwd_;
};

}  // namespace ymlab
