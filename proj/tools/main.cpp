#include "cli.hpp"

int main(int argc, char** argv) { return isolame::cli::run(argc, argv); }
