#include "qnls/phase.hpp"

#include <cmath>
#include <stdexcept>

namespace qnls {

std::string PhaseSpec::name() const
{
    std::string n;
    for (int i = 0; i < arity; ++i) n += s[i] > 0 ? '+' : '-';
    return n;
}

PhaseSpec PhaseSpec::parse(const std::string& name)
{
    if (name.size() != 2 && name.size() != 3) throw std::invalid_argument("unknown phase: " + name);
    PhaseSpec p;
    p.arity = static_cast<int>(name.size());
    for (int i = 0; i < p.arity; ++i) {
        if (name[i] == '+')
            p.s[i] = 1;
        else if (name[i] == '-')
            p.s[i] = -1;
        else
            throw std::invalid_argument("unknown phase: " + name);
    }
    static const char* known[] = {"++", "+-", "-+", "--", "+++", "+--", "-++", "---"};
    for (auto k : known)
        if (name == k) return p;
    throw std::invalid_argument("unknown phase: " + name);
}

std::vector<PhaseSpec> PhaseSpec::all()
{
    std::vector<PhaseSpec> out;
    for (auto n : {"++", "+-", "-+", "--", "+++", "+--", "-++", "---"}) out.push_back(parse(n));
    return out;
}

bool PhaseSpec::operator==(const PhaseSpec& o) const
{
    if (arity != o.arity) return false;
    for (int i = 0; i < arity; ++i)
        if (s[i] != o.s[i]) return false;
    return true;
}

namespace {
double sq(double a, double b) { return a * a + b * b; }
}

double phase_eval(const PhaseSpec& ph, const Point& p)
{
    double x1 = p[0], x2 = p[1], e1 = p[2], e2 = p[3];
    if (ph.arity == 2) return -sq(x1, x2) + ph.s[0] * sq(e1, e2) + ph.s[1] * sq(x1 - e1, x2 - e2);
    double g1 = p[4], g2 = p[5];
    return -sq(x1, x2) + ph.s[0] * sq(x1 - e1, x2 - e2) + ph.s[1] * sq(e1 - g1, e2 - g2) + ph.s[2] * sq(g1, g2);
}

std::vector<double> phase_grad(const PhaseSpec& ph, const std::vector<Var>& wrt, const Point& p)
{
    std::vector<double> out;
    for (Var v : wrt) {
        for (int c = 0; c < 2; ++c) {
            double x = p[c], e = p[2 + c], g = p[4 + c], d;
            if (ph.arity == 2) {
                if (v == XI)
                    d = -2 * x + 2 * ph.s[1] * (x - e);
                else if (v == ETA)
                    d = 2 * ph.s[0] * e - 2 * ph.s[1] * (x - e);
                else
                    throw std::invalid_argument("phase_grad: quadratic phase has no sigma");
            } else {
                if (v == XI)
                    d = -2 * x + 2 * ph.s[0] * (x - e);
                else if (v == ETA)
                    d = -2 * ph.s[0] * (x - e) + 2 * ph.s[1] * (e - g);
                else
                    d = -2 * ph.s[1] * (e - g) + 2 * ph.s[2] * g;
            }
            out.push_back(d);
        }
    }
    return out;
}

std::vector<Var> space_vars(const PhaseSpec& ph)
{
    return ph.arity == 2 ? std::vector<Var>{ETA} : std::vector<Var>{ETA, SIGMA};
}

double space_grad_norm(const PhaseSpec& ph, const Point& p)
{
    double s = 0;
    for (double d : phase_grad(ph, space_vars(ph), p)) s += d * d;
    return std::sqrt(s);
}

std::array<double, 2> check_null_identity(const Point& p)
{
    static const PhaseSpec mpp = PhaseSpec::parse("-++");
    auto g = phase_grad(mpp, {XI, ETA, SIGMA}, p);
    return {g[0] + 2 * g[2] + g[4], g[1] + 2 * g[3] + g[5]};
}

}
