#include "horomink/cli.hpp"

int main(int argc, char** argv) { return horomink::cli::run(argc, argv); }
