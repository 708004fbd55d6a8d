#pragma once

#include <iosfwd>

namespace spingr {

/// Command-line dispatch; exit code 0 on success, 1 on verification failure,
/// 2 on usage errors.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace spingr
