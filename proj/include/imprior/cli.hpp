#ifndef IMPRIOR_CLI_HPP
#define IMPRIOR_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace imprior {

/// Dispatches the CLI. Exit status: 0 success, 2 usage error, 1 computation
/// error. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace imprior

#endif
