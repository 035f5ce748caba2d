#pragma once

#include <string>
#include <vector>

namespace qig {

// Full command-line driver.  Returns 0 on success, 2 when suite checks found
// violations, 1 on usage or conditioning errors.
int cli_main(int argc, const char* const* argv);
int cli_main(const std::vector<std::string>& args); // without program name

} // namespace qig
