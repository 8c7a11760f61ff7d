#include "qwzeta/cli.hpp"

int main(int argc, char** argv) { return qwz::cli::run(argc, argv); }
