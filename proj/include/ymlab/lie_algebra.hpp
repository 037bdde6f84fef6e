#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ymlab {

enum class GroupKind { U1, SU2, SU3 };

// Gauge group tag. The color dimension is derived from the kind, so a
// GaugeGroup can never carry an inconsistent dim.
class GaugeGroup {
public:
    constexpr GaugeGroup() noexcept = default;
    constexpr explicit GaugeGroup(GroupKind kind) noexcept : kind_(kind) {}

    constexpr GroupKind kind() const noexcept { return kind_; }
    constexpr int dim() const noexcept {
        switch (kind_) {
            case GroupKind::U1: return 1;
            case GroupKind::SU2: return 3;
            case GroupKind::SU3: return 8;
        }
        return 0;
    }
    constexpr bool abelian() const noexcept { return kind_ == GroupKind::U1; }

    std::string_view name() const noexcept;
    // Accepts "U1", "SU2", "SU3" (case-insensitive); throws std::invalid_argument.
    static GaugeGroup parse(std::string_view text);

    friend constexpr bool operator==(GaugeGroup, GaugeGroup) noexcept = default;

private:
    GroupKind kind_ = GroupKind::U1;
};

inline constexpr GaugeGroup kU1{GroupKind::U1};
inline constexpr GaugeGroup kSU2{GroupKind::SU2};
inline constexpr GaugeGroup kSU3{GroupKind::SU3};

struct StructureEntry {
    int a, b, c;
    double f;
};

// Real adjoint-component convention: [e_a, e_b] = sum_c f_abc e_c.
// `entries` holds every nonzero f_abc, i.e. all signed permutations of the
// independent constants.
class StructureConstants {
public:
    StructureConstants(GaugeGroup group, std::vector<StructureEntry> entries);

    GaugeGroup group() const noexcept { return group_; }
    const std::vector<StructureEntry>& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }

    // f_abc by dense lookup, zero for absent entries.
    double operator()(int a, int b, int c) const;

    // out_c += scale * f_abc x^a y^b. Spans must have length group().dim().
    // Summed over a < b as f_abc (x^a y^b - x^b y^a), so [x, x] is exactly zero.
    void accumulate_bracket(std::span<const double> x, std::span<const double> y,
                            std::span<double> out, double scale) const noexcept {
        for (const auto& e : ordered_) out[e.c] += scale * e.f * (x[e.a] * y[e.b] - x[e.b] * y[e.a]);
    }

private:
    GaugeGroup group_;
    std::vector<StructureEntry> entries_;
    std::vector<StructureEntry> ordered_;  // entries with a < b
    std::vector<double> dense_;
};

StructureConstants structure_constants(GaugeGroup group);

class LieAlgebraElement {
public:
    explicit LieAlgebraElement(GaugeGroup group);  // zero element
    LieAlgebraElement(GaugeGroup group, std::vector<double> comp);

    static LieAlgebraElement basis(GaugeGroup group, int a);

    GaugeGroup group() const noexcept { return group_; }
    const std::vector<double>& comp() const noexcept { return comp_; }
    double operator[](int a) const { return comp_[a]; }
    double& operator[](int a) { return comp_[a]; }

    double norm() const noexcept;

    LieAlgebraElement& operator+=(const LieAlgebraElement& rhs);
    LieAlgebraElement& operator-=(const LieAlgebraElement& rhs);
    LieAlgebraElement& operator*=(double s) noexcept;

    friend LieAlgebraElement operator+(LieAlgebraElement lhs, const LieAlgebraElement& rhs) {
        return lhs += rhs;
    }
    friend LieAlgebraElement operator-(LieAlgebraElement lhs, const LieAlgebraElement& rhs) {
        return lhs -= rhs;
    }
    friend LieAlgebraElement operator*(double s, LieAlgebraElement x) { return x *= s; }

    friend bool operator==(const LieAlgebraElement&, const LieAlgebraElement&) = default;

private:
    GaugeGroup group_;
    std::vector<double> comp_;
};

// comp_c = sum_{a,b} f_abc X^a Y^b. Throws std::invalid_argument on group mismatch.
LieAlgebraElement commutator(const LieAlgebraElement& x, const LieAlgebraElement& y,
                             const StructureConstants& sc);

// Euclidean color inner product.
double lie_inner(const LieAlgebraElement& x, const LieAlgebraElement& y);

}  // namespace ymlab
