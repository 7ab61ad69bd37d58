#include "lpvdd/cli.hpp"

int main(int argc, char** argv) { return lpvdd::cli::run(argc, argv); }
