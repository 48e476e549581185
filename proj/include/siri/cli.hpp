#pragma once

namespace siri {

/// Entry point behind the sirisim binary; separated so tests can drive the
/// command surface in-process. Returns the process exit code: 0 success,
/// 1 failed incidence verification, 2 config or usage error, 3 monitor
/// violations, 4 non-monotone certificate.
int cli_main(int argc, const char* const* argv);

}  // namespace siri
