#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "fuzzyvc/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    try
    {
        const auto outcome = fuzzyvc::cli::run(args);
        std::cout << outcome.out;
        std::cerr << outcome.err;
        return outcome.exit_code;
    }
    catch (const std::exception& e)
    {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
