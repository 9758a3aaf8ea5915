#include <iostream>

#include "loewner_ito/cli.hpp"

int main(int argc, char** argv)
{
    return loewner_ito::cli::run(argc, argv, std::cout, std::cerr);
}
