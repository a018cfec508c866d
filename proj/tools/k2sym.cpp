#include "k2sym/cli.hpp"

int main(int argc, char** argv) { return k2sym::cli::run(argc, argv); }
