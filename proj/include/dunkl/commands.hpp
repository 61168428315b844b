#ifndef DUNKL_COMMANDS_HPP
#define DUNKL_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dunkl/config.hpp"

namespace dunkl {

// Exit codes shared by the CLI commands:
//   0 success, 1 configuration error, 2 admissibility/validation failure,
//   3 linear-solver failure.
inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 1;
inline constexpr int exit_admissibility = 2;
inline constexpr int exit_solver = 3;

// Human-readable diagnostics go to err; out receives nothing but the summary
// file path.
int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_measure(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_convergence(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_identities(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// The algebraic-identity battery behind cmd_identities, also used by the
// acceptance suite: Dunkl's summation lemma, the gradient and Laplacian of
// sqrt(w), and the conjugation identity, at seeded random points kept away
// from the hyperplanes.
struct IdentityCheck {
  std::string name;
  double worst = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct IdentityBattery {
  std::vector<IdentityCheck> checks;
  bool pass = true;
};

IdentityBattery run_identity_battery(std::uint64_t seed);

}  // namespace dunkl

#endif
