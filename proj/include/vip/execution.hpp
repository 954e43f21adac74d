#pragma once

namespace vip {

/// Parallel kernels keep a serial twin that tests and benchmarks compare against.
enum class Execution { Serial, Parallel };

}  // namespace vip
