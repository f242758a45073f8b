// SPDX-License-Identifier: Apache-2.0
#include "qis/experiment.hpp"

int main(int argc, char** argv) {
    return qis::cli_main(argc, argv);
}
