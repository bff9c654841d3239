#include "hothand/cli.hpp"

int main(int argc, char** argv) { return hothand::cli::run(argc, argv); }
