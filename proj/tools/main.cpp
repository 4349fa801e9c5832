#include "cli.hpp"

int main(int argc, char** argv) { return nomavlc::cli::run(argc, argv); }
