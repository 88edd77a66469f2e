#include <vector>

#include "sustain/pipeline.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return sustain::run_cli(args);
}
