#pragma once

namespace putvar {

/// Caps the worker threads used by estimators and sweeps. 0 restores the
/// runtime default. Results never depend on the worker count.
void set_worker_count(int workers);
int worker_count();

} // namespace putvar
