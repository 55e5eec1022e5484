#include "cli.hpp"

int main(int argc, char** argv) {
    return ceeflow::cli::run(argc, argv);
}
