#include "qnls/config.hpp"

#include <fstream>
#include <sstream>

namespace qnls {

std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

namespace {

std::string trim(const std::string& s)
{
    size_t a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

double to_num(const std::string& key, const std::string& v)
{
    try {
        size_t pos = 0;
        double d = std::stod(v, &pos);
        if (trim(v.substr(pos)).empty()) return d;
    } catch (const std::exception&) {
    }
    throw ConfigError("config key " + key + ": not a number: '" + v + "'");
}

}

const std::map<std::string, std::string>& Config::defaults()
{
    static const std::map<std::string, std::string> d{
        {"grid.L", "128"},
        {"grid.N", "32"},
        {"data.eps", "0.01"},
        {"data.width", "8"},
        {"data.x0", "0"},
        {"data.y0", "0"},
        {"data.kx0", "0"},
        {"data.ky0", "0"},
        {"nl.mode", "standard"},
        {"nl.alpha", "1"},
        {"nl.beta", "1"},
        {"nl.gamma", "1"},
        {"q.ell", "0.25,0,0.25,0"},
        {"q.method", "auto"},
        {"q.sep_tol", "1e-10"},
        {"time.T", "10"},
        {"time.dt", "0.125"},
        {"time.out_every", "1"},
        {"time.out_times", ""},
        {"time.growth_abort", "10"},
        {"time.stability_ceiling", "1.5"},
        {"time.snapshots", "0"},
        {"cutoff.deltaT", "0.05"},
        {"cutoff.deltaS", "0.05"},
        {"cutoff.near_width", "0.2"},
        {"resonance.phases", "all"},
        {"resonance.R", "32"},
        {"resonance.n", "64"},
        {"resonance.tol", "1e-9"},
        {"resonance.t_stride", "1"},
        {"flag.G", "3"},
        {"selftest.tol_scale", "1"},
        {"selftest.trials", "20"},
        {"baselines.path", std::string(QNLS_SOURCE_DIR) + "/data/baselines.txt"},
    };
    return d;
}

Config::Config() : v_(defaults()) {}

void Config::set(const std::string& key, const std::string& value)
{
    if (!defaults().count(key)) throw ConfigError("unknown config key: " + key);
    v_[key] = trim(value);
}

void Config::load_string(const std::string& text)
{
    std::istringstream is(text);
    std::string line;
    int no = 0;
    while (std::getline(is, line)) {
        ++no;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(no) + ": expected key=value");
        set(trim(line.substr(0, eq)), line.substr(eq + 1));
    }
}

void Config::load_file(const std::string& path)
{
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot read config file " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    load_string(ss.str());
}

const std::string& Config::str(const std::string& key) const
{
    auto it = v_.find(key);
    if (it == v_.end()) throw ConfigError("unknown config key: " + key);
    return it->second;
}

double Config::num(const std::string& key) const { return to_num(key, str(key)); }

int Config::integer(const std::string& key) const
{
    double d = num(key);
    if (d != static_cast<int>(d)) throw ConfigError("config key " + key + ": not an integer");
    return static_cast<int>(d);
}

cd Config::complex(const std::string& key) const
{
    auto parts = split(str(key), ':');
    if (parts.size() == 1) return {to_num(key, parts[0]), 0};
    if (parts.size() == 2) return {to_num(key, parts[0]), to_num(key, parts[1])};
    throw ConfigError("config key " + key + ": expected re or re:im");
}

std::vector<double> Config::list(const std::string& key) const
{
    std::vector<double> out;
    if (str(key).empty()) return out;
    for (const auto& p : split(str(key), ',')) out.push_back(to_num(key, trim(p)));
    return out;
}

std::string Config::canonical() const
{
    std::string s;
    for (const auto& [k, v] : v_) {
        if (k == "baselines.path") continue;
        s += k + "=" + v + "\n";
    }
    return s;
}

std::uint64_t Config::hash() const { return fnv1a(canonical()); }

ExperimentConfig Config::experiment() const
{
    ExperimentConfig c;
    c.L = num("grid.L");
    c.N = integer("grid.N");
    c.eps = num("data.eps");
    c.width = num("data.width");
    c.x0 = num("data.x0");
    c.y0 = num("data.y0");
    c.kx0 = num("data.kx0");
    c.ky0 = num("data.ky0");
    const std::string& mode = str("nl.mode");
    if (mode == "standard")
        c.mode = NonlinMode::Standard;
    else if (mode == "contrast")
        c.mode = NonlinMode::Contrast;
    else
        throw ConfigError("nl.mode must be standard or contrast");
    c.alpha = complex("nl.alpha");
    c.beta = complex("nl.beta");
    c.gamma = complex("nl.gamma");
    auto ell = list("q.ell");
    if (ell.size() != 4) throw ConfigError("q.ell needs four coefficients");
    for (int i = 0; i < 4; ++i) c.ell.c[i] = ell[i];
    if (ell[0] == 0 && ell[1] == 0 && ell[2] == 0 && ell[3] == 0) throw ConfigError("q.ell must be nonzero");
    const std::string& qm = str("q.method");
    c.q_method = qm == "direct" ? QMethod::Direct : qm == "structured" ? QMethod::Structured : QMethod::Auto;
    if (qm != "direct" && qm != "structured" && qm != "auto") throw ConfigError("q.method: auto|direct|structured");
    c.q_tol = num("q.sep_tol");
    c.T = num("time.T");
    c.dt = num("time.dt");
    c.out_every = num("time.out_every");
    c.out_times = list("time.out_times");
    c.growth_abort = num("time.growth_abort");
    c.stability_ceiling = num("time.stability_ceiling");
    c.validate();
    return c;
}

CutoffParams Config::cutoffs() const
{
    CutoffParams p;
    p.deltaT = num("cutoff.deltaT");
    p.deltaS = num("cutoff.deltaS");
    p.near_width = num("cutoff.near_width");
    if (!(p.deltaT > 0) || !(p.deltaS > 0) || !(p.near_width > 0))
        throw ConfigError("cutoff widths must be positive");
    return p;
}

SearchBox Config::search_box() const
{
    SearchBox b;
    b.R = num("resonance.R");
    b.n = integer("resonance.n");
    if (!(b.R > 0) || b.n < 2 || b.n % 2) throw ConfigError("resonance box: R > 0 and even n >= 2 required");
    return b;
}

}
