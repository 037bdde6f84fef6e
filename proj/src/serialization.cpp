#include "ymlab/serialization.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "ymlab/errors.hpp"

namespace ymlab {

namespace {

constexpr std::array<char, 4> kMagic = {'Y', 'M', 'L', 'S'};

template <typename U>
void put_le(std::ostream& out, U value) {
    std::array<char, sizeof(U)> bytes{};
    for (std::size_t i = 0; i < sizeof(U); ++i) {
        bytes[i] = static_cast<char>((value >> (8 * i)) & 0xffu);
    }
    out.write(bytes.data(), bytes.size());
}

template <typename U>
U get_le(std::istream& in) {
    std::array<unsigned char, sizeof(U)> bytes{};
    in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
    if (!in) throw IoError("truncated state file");
    U value = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) value |= static_cast<U>(bytes[i]) << (8 * i);
    return value;
}

void put_f64(std::ostream& out, double v) { put_le(out, std::bit_cast<std::uint64_t>(v)); }
double get_f64(std::istream& in) { return std::bit_cast<double>(get_le<std::uint64_t>(in)); }

std::uint32_t group_code(GaugeGroup g) { return static_cast<std::uint32_t>(g.kind()); }

GaugeGroup group_from_code(std::uint32_t code) {
    switch (code) {
        case 0: return kU1;
        case 1: return kSU2;
        case 2: return kSU3;
        default: throw IoError("unknown group code " + std::to_string(code));
    }
}

LatticeGeometry checked_geometry(std::vector<int> extent) {
    try {
        return LatticeGeometry(std::move(extent));
    } catch (const std::invalid_argument& e) {
        throw IoError(std::string("invalid geometry in state file: ") + e.what());
    }
}

}  // namespace

void write_state_binary(std::ostream& out, const FieldState& state, double g) {
    out.write(kMagic.data(), kMagic.size());
    put_le<std::uint32_t>(out, kStateFormatVersion);
    put_le<std::uint32_t>(out, group_code(state.group()));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(state.dims()));
    for (int n : state.geometry().extent()) put_le<std::uint32_t>(out, static_cast<std::uint32_t>(n));
    put_f64(out, state.time());
    put_f64(out, g);
    for (double v : state.A()) put_f64(out, v);
    for (double v : state.E()) put_f64(out, v);
    if (!out) throw IoError("failed writing state");
}

StateRecord read_state_binary(std::istream& in) {
    std::array<char, 4> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic) throw IoError("not a state file (bad magic)");
    const auto version = get_le<std::uint32_t>(in);
    if (version != kStateFormatVersion) throw IoError("unsupported state format version " + std::to_string(version));
    const GaugeGroup group = group_from_code(get_le<std::uint32_t>(in));
    const auto dims = get_le<std::uint32_t>(in);
    if (dims < 1 || dims > 3) throw IoError("invalid spatial dimension in state file");
    std::vector<int> extent;
    for (std::uint32_t d = 0; d < dims; ++d) extent.push_back(static_cast<int>(get_le<std::uint32_t>(in)));
    FieldState state(checked_geometry(std::move(extent)), group);
    state.set_time(get_f64(in));
    const double g = get_f64(in);
    for (double& v : state.A()) v = get_f64(in);
    for (double& v : state.E()) v = get_f64(in);
    return {std::move(state), g};
}

std::string state_to_text(const FieldState& state, double g) {
    nlohmann::ordered_json j;
    j["format_version"] = kStateFormatVersion;
    j["group"] = state.group().name();
    j["spatial_dim"] = state.dims();
    j["extents"] = state.geometry().extent();
    j["time"] = state.time();
    j["g"] = g;
    j["A"] = std::vector<double>(state.A().begin(), state.A().end());
    j["E"] = std::vector<double>(state.E().begin(), state.E().end());
    return j.dump() + "\n";
}

StateRecord state_from_text(const std::string& text) {
    try {
        const auto j = nlohmann::json::parse(text);
        if (j.at("format_version").get<unsigned>() != kStateFormatVersion) {
            throw IoError("unsupported state format version");
        }
        const GaugeGroup group = GaugeGroup::parse(j.at("group").get<std::string>());
        auto extent = j.at("extents").get<std::vector<int>>();
        if (j.at("spatial_dim").get<std::size_t>() != extent.size()) {
            throw IoError("spatial_dim does not match extents");
        }
        FieldState state(checked_geometry(std::move(extent)), group);
        state.set_time(j.at("time").get<double>());
        const auto a = j.at("A").get<std::vector<double>>();
        const auto e = j.at("E").get<std::vector<double>>();
        if (a.size() != state.size() || e.size() != state.size()) throw IoError("array length mismatch");
        std::copy(a.begin(), a.end(), state.A().begin());
        std::copy(e.begin(), e.end(), state.E().begin());
        return {std::move(state), j.at("g").get<double>()};
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("malformed state text: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw IoError(std::string("malformed state text: ") + e.what());
    }
}

}  // namespace ymlab
