#include <lidx/cli.hpp>

int main(int argc, char** argv) {
    return lidx::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
