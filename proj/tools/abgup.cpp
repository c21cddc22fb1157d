#include "abgup/cli.hpp"

int main(int argc, char** argv) { return abgup::cli::run(argc, argv); }
