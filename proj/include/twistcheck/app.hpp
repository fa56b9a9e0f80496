#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twistcheck {

// Exit codes: 0 success / all verified, 1 something refuted or failed,
// 2 usage, parse or model error.
constexpr int kExitOk = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitError = 2;

// The twistcheck command line. args excludes the program name. The default
// output format comes from TWISTCHECK_FORMAT (text or json).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twistcheck
