#include "wavecast/cli.hpp"

int main(int argc, char** argv) { return wavecast::cli::run(argc, argv); }
