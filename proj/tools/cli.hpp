#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mfn::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;
inline constexpr int exit_usage = 2;

/// Runs one subcommand (gen, lagrange, lambda, sweep, verify, solve). `args` excludes the
/// program name. Results go to `out` unless --out is given; diagnostics go to `err`.
/// Returns 0 on success, 1 when a verification fails, 2 on usage errors.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mfn::cli
