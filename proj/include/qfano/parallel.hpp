#ifndef QFANO_PARALLEL_HPP
#define QFANO_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace qfano {

// Number of worker threads used when a caller passes jobs = 0.
int default_jobs();

// Runs body(0..n-1), distributing iterations over up to `jobs` OpenMP
// threads; jobs <= 1 (or a build without OpenMP) runs serially on the
// calling thread.  The first exception thrown by any iteration is rethrown
// after the loop drains; remaining iterations are skipped on a best-effort
// basis.
void parallel_for(std::size_t n, int jobs,
                  const std::function<void(std::size_t)>& body);

}  // namespace qfano

#endif
