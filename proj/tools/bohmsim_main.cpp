#include "bohmsim/cli.hpp"

int main(int argc, const char** argv) { return bohmsim::cli::run_cli(argc, argv); }
