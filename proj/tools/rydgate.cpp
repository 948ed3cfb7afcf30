// rydgate: command-line driver; see `rydgate --help`.

#include "rydgate/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    const auto parsed = rydgate::cli::parse_args(argc, argv, std::cout, std::cerr);
    if (!parsed.manifest) return parsed.exit_code;
    return rydgate::cli::run_manifest(*parsed.manifest, std::cout, std::cerr);
}
