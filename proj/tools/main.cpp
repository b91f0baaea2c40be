#include "cli/app.hpp"

int main(int argc, char** argv) { return entmed::cli::run_cli(argc, argv); }
