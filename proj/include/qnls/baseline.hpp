#pragma once

#include <map>
#include <string>

namespace qnls {

// Versioned store of measured constants: a header line "qnls-baselines <version>" followed by
// "key value" lines.
class Baselines {
public:
    static constexpr int kVersion = 1;

    static Baselines load(const std::string& path);
    void save(const std::string& path) const;

    bool has(const std::string& key) const { return v_.count(key) > 0; }
    double get(const std::string& key) const;
    void set(const std::string& key, double value) { v_[key] = value; }
    const std::map<std::string, double>& values() const { return v_; }

private:
    std::map<std::string, double> v_;
};

std::string default_baselines_path();

}
