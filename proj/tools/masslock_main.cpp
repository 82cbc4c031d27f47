#include "masslock/cli.hpp"

int main(int argc, char** argv) { return masslock::run_cli(argc, argv); }
