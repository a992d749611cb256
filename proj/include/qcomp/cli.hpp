#pragma once

// Command-line front end: verify, fringes, theta-grid, nmr, max-v12.
// Exit codes: 0 ok, 1 relation failure, 2 malformed input.

#include "qcomp/state.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace qcomp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRelationFailure = 1;
inline constexpr int kExitBadInput = 2;

using StateSource = std::variant<PureState, DensityMatrix>;

/// State presets: phi, bell (psi), phi-theta [t], psi-theta [t],
/// psi2 [t1 t2], ghz [n a1 a2], w [n a1..an], product [n (polar azimuth)*],
/// bipartite [a1 a2], complex, random [n], random-mixed [n env].
/// Coefficients are normalized only when `normalize` is set.
StateSource make_preset_state(const std::string& name, const std::vector<double>& params, std::uint64_t seed,
                              bool normalize);
std::vector<std::string> preset_state_names();

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qcomp
