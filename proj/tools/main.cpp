#include "qnoise/cli.hpp"

int main(int argc, char** argv) { return qnoise::cli::run(argc, argv); }
