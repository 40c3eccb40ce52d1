#include "rispaces/cli.hpp"

int main(int argc, char** argv) { return rispaces::cli::main(argc, argv); }
