#include <lawson/cli.hpp>

int main(int argc, char** argv) { return lawson::cli::run(argc, argv); }
