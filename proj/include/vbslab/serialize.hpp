#pragma once

// Versioned JSON text for tensors and chains. Complex numbers are written
// as [re, im] pairs, matrices as arrays of rows.

#include <string>

#include "vbslab/fcs_state.hpp"

namespace vbs {

inline constexpr int serialization_version = 1;

std::string to_json(const FcsTensor& tensor);
std::string to_json(const ChainSpec& chain);

/// Throw std::invalid_argument on malformed input, wrong format tag or
/// unsupported version.
FcsTensor tensor_from_json(const std::string& text);
ChainSpec chain_from_json(const std::string& text);

}  // namespace vbs
