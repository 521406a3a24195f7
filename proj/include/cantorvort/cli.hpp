#pragma once

namespace cantorvort {

/// Exit codes: 0 ok, 1 failed checks, 2 usage or invalid input, 3 resource limit, 4 I/O.
int run_command(int argc, const char* const* argv);

}  // namespace cantorvort
