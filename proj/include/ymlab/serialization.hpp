#pragma once

#include <iosfwd>
#include <string>

#include "ymlab/field_state.hpp"

namespace ymlab {

inline constexpr unsigned kStateFormatVersion = 1;

// A state checkpoint together with the coupling it was evolved under.
struct StateRecord {
    FieldState state;
    double g = 0.0;
};

// Binary layout, all little-endian:
//   "YMLS" | u32 format_version | u32 group (0 U1, 1 SU2, 2 SU3) |
//   u32 spatial_dim | u32 extent[spatial_dim] | f64 time | f64 g |
//   f64 A[...] | f64 E[...]
// Arrays are site-major, then direction, then color.
void write_state_binary(std::ostream& out, const FieldState& state, double g);
StateRecord read_state_binary(std::istream& in);

// Structured-text (JSON) layout with the same header fields and arrays.
std::string state_to_text(const FieldState& state, double g);
StateRecord state_from_text(const std::string& text);

}  // namespace ymlab
