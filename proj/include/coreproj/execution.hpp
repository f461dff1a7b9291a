#pragma once

namespace coreproj {

/// Selects between the OpenMP kernels and their serial counterparts. Both
/// produce identical results; the serial path is the reference.
enum class Execution { serial, parallel };

/// True when the library was built with OpenMP.
bool openmp_enabled();

}  // namespace coreproj
