#include "qnls/baseline.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace qnls {

std::string default_baselines_path() { return std::string(QNLS_SOURCE_DIR) + "/data/baselines.txt"; }

Baselines Baselines::load(const std::string& path)
{
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read baselines " + path);
    std::string tag;
    int version = 0;
    is >> tag >> version;
    if (tag != "qnls-baselines" || version != kVersion)
        throw std::runtime_error(path + ": not a version-" + std::to_string(kVersion) + " baseline file");
    Baselines b;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        double v;
        if (ls >> key >> v) b.v_[key] = v;
    }
    return b;
}

void Baselines::save(const std::string& path) const
{
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write baselines " + path);
    os << "qnls-baselines " << kVersion << '\n' << std::setprecision(10);
    for (const auto& [k, v] : v_) os << k << ' ' << v << '\n';
}

double Baselines::get(const std::string& key) const
{
    auto it = v_.find(key);
    if (it == v_.end()) throw std::out_of_range("baseline missing: " + key);
    return it->second;
}

}
