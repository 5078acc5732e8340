#include "conecq/cli.hpp"

int main(int argc, char** argv) { return conecq::cli::run(argc, argv); }
