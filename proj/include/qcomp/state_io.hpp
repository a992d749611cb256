#pragma once

// JSON state files:
//   {"n_qubits": 2, "amplitudes": [[re, im], [re, im], [re, im], [re, im]]}
// Amplitudes follow the library's basis order (qubit 1 most significant).

#include "qcomp/state.hpp"

#include <iosfwd>
#include <string>

namespace qcomp {

/// Throws std::invalid_argument on malformed documents. Unless `normalize`
/// is set, the amplitudes must already have unit norm within 1e-12.
PureState parse_state_json(const std::string& text, bool normalize = false);
PureState load_state_file(const std::string& path, bool normalize = false);

std::string state_to_json(const PureState& state);
void save_state_file(const std::string& path, const PureState& state);

}  // namespace qcomp
