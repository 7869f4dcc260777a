//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "chemeval/cli.h"

int main(int argc, char **argv) {
  return chemeval::cli::run(argc, argv);
}
