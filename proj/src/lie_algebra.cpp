#include "ymlab/lie_algebra.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace ymlab {

namespace {

struct Independent {
    int a, b, c;  // 0-based, a < b < c
    double f;
};

// Standard su(3) constants (1-based: f_123 = 1, f_147 = 1/2, ...), checked in
// the test suite against commutators of the Gell-Mann generators.
constexpr double kHalf = 0.5;
constexpr double kHalfSqrt3 = 0.86602540378443864676;

constexpr std::array<Independent, 9> kSu3 = {{
    {0, 1, 2, 1.0},
    {0, 3, 6, kHalf},
    {0, 4, 5, -kHalf},
    {1, 3, 5, kHalf},
    {1, 4, 6, kHalf},
    {2, 3, 4, kHalf},
    {2, 5, 6, -kHalf},
    {3, 4, 7, kHalfSqrt3},
    {5, 6, 7, kHalfSqrt3},
}};

constexpr std::array<Independent, 1> kSu2 = {{{0, 1, 2, 1.0}}};

std::vector<StructureEntry> expand(std::span<const Independent> table) {
    std::vector<StructureEntry> out;
    out.reserve(table.size() * 6);
    for (const auto& t : table) {
        // even permutations keep the sign, odd ones flip it
        out.push_back({t.a, t.b, t.c, t.f});
        out.push_back({t.b, t.c, t.a, t.f});
        out.push_back({t.c, t.a, t.b, t.f});
        out.push_back({t.b, t.a, t.c, -t.f});
        out.push_back({t.a, t.c, t.b, -t.f});
        out.push_back({t.c, t.b, t.a, -t.f});
    }
    return out;
}

void require_same(GaugeGroup x, GaugeGroup y) {
    if (x != y) {
        throw std::invalid_argument("gauge group mismatch: " + std::string(x.name()) + " vs " +
                                    std::string(y.name()));
    }
}

}  // namespace

std::string_view GaugeGroup::name() const noexcept {
    switch (kind_) {
        case GroupKind::U1: return "U1";
        case GroupKind::SU2: return "SU2";
        case GroupKind::SU3: return "SU3";
    }
    return "?";
}

GaugeGroup GaugeGroup::parse(std::string_view text) {
    std::string upper(text);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
    if (upper == "U1") return kU1;
    if (upper == "SU2") return kSU2;
    if (upper == "SU3") return kSU3;
    throw std::invalid_argument("unknown gauge group '" + std::string(text) + "'");
}

StructureConstants::StructureConstants(GaugeGroup group, std::vector<StructureEntry> entries)
    : group_(group), entries_(std::move(entries)) {
    const int n = group_.dim();
    dense_.assign(static_cast<std::size_t>(n) * n * n, 0.0);
    for (const auto& e : entries_) {
        if (e.a < 0 || e.b < 0 || e.c < 0 || e.a >= n || e.b >= n || e.c >= n) {
            throw std::invalid_argument("structure constant index out of range");
        }
        dense_[(static_cast<std::size_t>(e.a) * n + e.b) * n + e.c] = e.f;
        if (e.a < e.b) ordered_.push_back(e);
    }
}

double StructureConstants::operator()(int a, int b, int c) const {
    const int n = group_.dim();
    if (a < 0 || b < 0 || c < 0 || a >= n || b >= n || c >= n) {
        throw std::out_of_range("structure constant index out of range");
    }
    return dense_[(static_cast<std::size_t>(a) * n + b) * n + c];
}

StructureConstants structure_constants(GaugeGroup group) {
    switch (group.kind()) {
        case GroupKind::U1: return StructureConstants(group, {});
        case GroupKind::SU2: return StructureConstants(group, expand(kSu2));
        case GroupKind::SU3: return StructureConstants(group, expand(kSu3));
    }
    throw std::invalid_argument("unknown gauge group");
}

LieAlgebraElement::LieAlgebraElement(GaugeGroup group)
    : group_(group), comp_(static_cast<std::size_t>(group.dim()), 0.0) {}

LieAlgebraElement::LieAlgebraElement(GaugeGroup group, std::vector<double> comp)
    : group_(group), comp_(std::move(comp)) {
    if (comp_.size() != static_cast<std::size_t>(group.dim())) {
        throw std::invalid_argument("component count does not match group dimension");
    }
}

LieAlgebraElement LieAlgebraElement::basis(GaugeGroup group, int a) {
    if (a < 0 || a >= group.dim()) throw std::out_of_range("basis index out of range");
    LieAlgebraElement e(group);
    e.comp_[a] = 1.0;
    return e;
}

double LieAlgebraElement::norm() const noexcept {
    double s = 0.0;
    for (double v : comp_) s += v * v;
    return std::sqrt(s);
}

LieAlgebraElement& LieAlgebraElement::operator+=(const LieAlgebraElement& rhs) {
    require_same(group_, rhs.group_);
    for (std::size_t i = 0; i < comp_.size(); ++i) comp_[i] += rhs.comp_[i];
    return *this;
}

LieAlgebraElement& LieAlgebraElement::operator-=(const LieAlgebraElement& rhs) {
    require_same(group_, rhs.group_);
    for (std::size_t i = 0; i < comp_.size(); ++i) comp_[i] -= rhs.comp_[i];
    return *this;
}

LieAlgebraElement& LieAlgebraElement::operator*=(double s) noexcept {
    for (double& v : comp_) v *= s;
    return *this;
}

LieAlgebraElement commutator(const LieAlgebraElement& x, const LieAlgebraElement& y,
                             const StructureConstants& sc) {
    require_same(x.group(), y.group());
    require_same(x.group(), sc.group());
    std::vector<double> out(x.comp().size(), 0.0);
    sc.accumulate_bracket(x.comp(), y.comp(), out, 1.0);
    return LieAlgebraElement(x.group(), std::move(out));
}

double lie_inner(const LieAlgebraElement& x, const LieAlgebraElement& y) {
    require_same(x.group(), y.group());
    double s = 0.0;
    for (std::size_t a = 0; a < x.comp().size(); ++a) s += x.comp()[a] * y.comp()[a];
    return s;
}

}  // namespace ymlab
