/**
 * slosh: set retrieval via sliced-Wasserstein embeddings
 *
 * Copyright (c) 2026 The slosh authors
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#pragma once

namespace slosh {

/// Entry point for the `slosh` command-line tool (subcommands: gen, embed,
/// index, query, eval, bench). Returns the process exit status: 0 on
/// success, nonzero with a one-line diagnostic on stderr otherwise.
int run_cli(int argc, const char* const* argv);

}  // namespace slosh
