#include "updown/cli.hpp"

int main(int argc, char** argv) {
    return updown::cli_main(argc, argv);
}
