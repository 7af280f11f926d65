#include "qtwist/multipoly.hpp"
#include "qtwist/error.hpp"

#include <sstream>

namespace qtwist {

std::array<Int, 15> quartic_to_vector(const MultiPoly& p) {
    if (!p.is_homogeneous(4))
        fail_internal("QuarticShape", "expected a homogeneous quartic");
    std::array<Int, 15> v{};
    const auto& mons = quartic_monomials();
    for (size_t i = 0; i < mons.size(); ++i) {
        auto it = p.terms.find({mons[i][0], mons[i][1], mons[i][2]});
        if (it == p.terms.end()) continue;
        if (!is_integer(it->second))
            fail_internal("QuarticShape", "expected integer quartic coefficients");
        v[i] = num(it->second);
    }
    return v;
}

MultiPoly quartic_from_vector(const std::array<Int, 15>& v) {
    MultiPoly p;
    const auto& mons = quartic_monomials();
    for (size_t i = 0; i < mons.size(); ++i)
        p.add({mons[i][0], mons[i][1], mons[i][2]}, Rat(v[i]));
    return p;
}

std::string multipoly_to_string(const MultiPoly& p, const std::array<std::string, 3>& vars) {
    if (p.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // iterate with the largest exponents first
    for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it) {
        const auto& e = it->first;
        Rat c = it->second;
        bool neg = c < 0;
        if (neg) c = -c;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        bool constant = (e[0] == 0 && e[1] == 0 && e[2] == 0);
        bool coeff_one = (c == 1);
        if (!coeff_one || constant) {
            os << c.get_num().get_str();
            if (c.get_den() != 1) os << "/" << c.get_den().get_str();
            if (!constant) os << "*";
        }
        bool started = false;
        for (int vi = 0; vi < 3; ++vi) {
            if (e[(size_t)vi] == 0) continue;
            if (started) os << "*";
            started = true;
            os << vars[(size_t)vi];
            if (e[(size_t)vi] > 1) os << "^" << e[(size_t)vi];
        }
    }
    return os.str();
}

} // namespace qtwist
