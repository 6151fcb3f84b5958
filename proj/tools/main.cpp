#include <string>
#include <vector>

#include "rwlab/cli.hpp"

int main(int argc, char** argv)
{
    return rwlab::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
