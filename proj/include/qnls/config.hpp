#pragma once

#include "qnls/cutoffs.hpp"
#include "qnls/evolution.hpp"
#include "qnls/resonant_sets.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qnls {

// Flat key=value configuration with dotted keys; every key has a default, unknown keys are
// rejected.  Lines starting with '#' are comments.
class Config {
public:
    Config();

    static const std::map<std::string, std::string>& defaults();
    void load_file(const std::string& path);
    void load_string(const std::string& text);
    void set(const std::string& key, const std::string& value);

    const std::string& str(const std::string& key) const;
    double num(const std::string& key) const;
    int integer(const std::string& key) const;
    cd complex(const std::string& key) const;  // "re" or "re:im"
    std::vector<double> list(const std::string& key) const;

    std::string canonical() const;  // sorted key=value lines
    std::uint64_t hash() const;
    const std::map<std::string, std::string>& values() const { return v_; }

    ExperimentConfig experiment() const;
    CutoffParams cutoffs() const;
    SearchBox search_box() const;

private:
    std::map<std::string, std::string> v_;
};

std::uint64_t fnv1a(const std::string& s);
std::vector<std::string> split(const std::string& s, char sep);

}
