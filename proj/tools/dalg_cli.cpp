#include <iostream>
#include <vector>

#include "dalg/command.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    dalg::CommandOutcome out = dalg::run_command(args);
    std::cout << out.render() << "\n";
    return out.exit_code;
}
