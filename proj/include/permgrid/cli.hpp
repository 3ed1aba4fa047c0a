#ifndef PERMGRID_CLI_HPP
#define PERMGRID_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace permgrid {

// Command-line entry point; args excludes the program name.  Commands write
// to out, diagnostics to err.  Returns 0 on success (including --help), 1
// when a domain error surfaces or a verify suite fails, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace permgrid

#endif  // PERMGRID_CLI_HPP
