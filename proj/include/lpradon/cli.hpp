#pragma once

namespace lpr {

/// Entry point for the command-line tool; returns a process exit code.
int cli_main(int argc, char** argv);

}  // namespace lpr
