#pragma once

#include <functional>

namespace dualmesh {

// Runs fn(i) for i in [0, n). With jobs > 1 the range is chunked over threads;
// fn must write only to disjoint output slots so results are independent of
// the schedule.
void parallel_for(int n, int jobs, const std::function<void(int)>& fn);

}  // namespace dualmesh
