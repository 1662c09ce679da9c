#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shapemotion {

/// Entry point behind the `shapemotion` binary. Subcommands: run, synth,
/// eval, bench. Returns 0 on success, 1 on runtime errors, 2 on usage
/// errors (usage text goes to err).
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shapemotion
