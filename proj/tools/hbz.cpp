#include <iostream>
#include <string>
#include <vector>

#include "hbz/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return hbz::run_cli(args, std::cout, std::cerr);
}
