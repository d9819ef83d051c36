#include "cli.hpp"

int main(int argc, char** argv) { return nilbal::cli::run(argc, argv); }
