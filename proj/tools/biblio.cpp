// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 biblio contributors

#include "biblio/cli.hpp"

int main(int argc, char** argv)
{
    return biblio::cli::run(argc, argv);
}
