#pragma once

#include "qnls/config.hpp"

#include <ostream>
#include <string>

struct SelftestResult {
    int passed = 0, failed = 0;
};

SelftestResult run_selftest(const qnls::Config& cfg, unsigned long long seed, const std::string& csv_path,
                            std::ostream& log);
