#include "qnls/grid.hpp"

#include <mutex>
#include <vector>

namespace qnls {

Grid make_grid(double L, int N)
{
    if (!(L > 0)) throw ConfigError("grid: box length must be positive");
    if (N < 8 || N % 2) throw ConfigError("grid: N must be even and >= 8");
    return Grid{L, N};
}

namespace {
std::mutex warn_mutex;
std::vector<std::string> warn_log;
}

void warn(const std::string& msg)
{
    std::lock_guard lock(warn_mutex);
    warn_log.push_back(msg);
}

int warning_count()
{
    std::lock_guard lock(warn_mutex);
    return static_cast<int>(warn_log.size());
}

std::string last_warning()
{
    std::lock_guard lock(warn_mutex);
    return warn_log.empty() ? std::string() : warn_log.back();
}

}
