#ifndef ASCOUNT_PARALLEL_HPP_
#define ASCOUNT_PARALLEL_HPP_

#include <functional>

namespace ascount {

// worker count: explicit value if > 0, else ASCOUNT_WORKERS, else hardware
int resolve_workers(int requested);

// runs body(i) for i in [0, n); each index runs exactly once, results must be
// stored per index by the caller so that the outcome does not depend on scheduling
void parallel_for(int n, int workers, const std::function<void(int)>& body);

}  // namespace ascount

#endif
