#pragma once
// Single entry point binding all modules. Exit codes: 0 success, 2 argument
// errors, 3 infeasibility, 4 capacity errors.

namespace masslock {

int run_cli(int argc, const char* const* argv);

}  // namespace masslock
