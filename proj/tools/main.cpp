#include "tullock/cli.hpp"

int main(int argc, char** argv) { return tullock::cli::cli_main(argc, argv); }
