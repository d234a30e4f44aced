#ifndef SPGOF_FORMAT_HPP
#define SPGOF_FORMAT_HPP

#include <string>

namespace spgof {

/// Shortest decimal string that round-trips to the same double.
/// Non-finite values are written as `inf`, `-inf` and `nan`.
std::string format_number(double value);

/// Like format_number but never uses exponent notation.
std::string format_fixed(double value);

}  // namespace spgof

#endif  // SPGOF_FORMAT_HPP
