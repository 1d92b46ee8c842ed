#include "cli.hpp"

int main(int argc, char** argv) { return tdwlft::cli::run_cli(argc, argv); }
