#ifndef IMPRIOR_PARALLEL_HPP
#define IMPRIOR_PARALLEL_HPP

#include <functional>

namespace imprior {

/// Worker count: IMPRIOR_THREADS caps it, otherwise hardware concurrency.
int worker_count();

/// Runs fn(i) for i in [0, n) across workers. Callers must write results into
/// index-addressed slots so aggregation order (and hence output) is
/// independent of the thread count.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace imprior

#endif
