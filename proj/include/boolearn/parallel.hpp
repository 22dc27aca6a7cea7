#pragma once

#include <cstddef>
#include <functional>

namespace boolearn
{

/* worker cap: BOOLEARN_THREADS if set and positive, else hardware concurrency */
unsigned worker_threads();

/*! \brief Runs body(i) for i in [0, n) on up to worker_threads() threads.
 *
 * Callers write results into index-addressed slots, so the outcome does not
 * depend on scheduling. The first exception thrown by any body is rethrown.
 */
void parallel_for( std::size_t n, std::function<void( std::size_t )> const& body );

} // namespace boolearn
