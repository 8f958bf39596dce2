#include "niqb/cli_io.hpp"

int main(int argc, char** argv) {
    return niqb::cli_main(std::vector<std::string>(argv + 1, argv + argc));
}
