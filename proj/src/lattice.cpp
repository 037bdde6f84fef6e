#include "ymlab/lattice.hpp"

#include <stdexcept>
#include <string>

namespace ymlab {

LatticeGeometry::LatticeGeometry(std::vector<int> extent) : extent_(std::move(extent)) {
    if (extent_.empty() || extent_.size() > static_cast<std::size_t>(kMaxDim)) {
        throw std::invalid_argument("spatial dimension must be 1, 2 or 3");
    }
    sites_ = 1;
    for (int n : extent_) {
        if (n < kMinExtent) {
            throw std::invalid_argument("lattice extent " + std::to_string(n) + " is below the minimum of " +
                                        std::to_string(kMinExtent));
        }
        sites_ *= static_cast<std::size_t>(n);
    }
    fwd_.assign(sites_ * kMaxDim, 0);
    bwd_.assign(sites_ * kMaxDim, 0);
    for (std::size_t s = 0; s < sites_; ++s) {
        auto x = coords(s);
        for (int d = 0; d < spatial_dim(); ++d) {
            auto y = x;
            y[d] = (x[d] + 1) % extent_[d];
            fwd_[s * kMaxDim + d] = site_of(std::span<const int>(y.data(), extent_.size()));
            y[d] = (x[d] + extent_[d] - 1) % extent_[d];
            bwd_[s * kMaxDim + d] = site_of(std::span<const int>(y.data(), extent_.size()));
        }
    }
}

std::array<int, LatticeGeometry::kMaxDim> LatticeGeometry::coords(std::size_t site) const noexcept {
    std::array<int, kMaxDim> x{};
    for (int d = spatial_dim() - 1; d >= 0; --d) {
        x[d] = static_cast<int>(site % static_cast<std::size_t>(extent_[d]));
        site /= static_cast<std::size_t>(extent_[d]);
    }
    return x;
}

std::size_t LatticeGeometry::site_of(std::span<const int> coords) const noexcept {
    std::size_t s = 0;
    for (int d = 0; d < spatial_dim(); ++d) {
        const int n = extent_[d];
        const int x = ((coords[d] % n) + n) % n;
        s = s * static_cast<std::size_t>(n) + static_cast<std::size_t>(x);
    }
    return s;
}

std::size_t LatticeGeometry::translate(std::size_t site, std::span<const int> shift) const noexcept {
    auto x = coords(site);
    for (int d = 0; d < spatial_dim(); ++d) x[d] += shift[d];
    return site_of(std::span<const int>(x.data(), extent_.size()));
}

}  // namespace ymlab
