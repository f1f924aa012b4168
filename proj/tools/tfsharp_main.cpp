#include "tfsharp/cli.hpp"

int main(int argc, char** argv) { return tfsharp::cli::main(argc, argv); }
