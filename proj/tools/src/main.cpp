#include "commands.hpp"

int main(int argc, char** argv) { return qmir::cli::run(argc, argv); }
