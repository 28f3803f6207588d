#include "wpbro/cli.hpp"

int main(int argc, char** argv) { return wpbro::cli::main(argc, argv); }
