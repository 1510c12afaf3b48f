#pragma once

#include <dsslp/model.hpp>
#include <dsslp/entset.hpp>

#include <initializer_list>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace dsslp::testutil {

inline DssParams make_params(int n, int k, int d, const Rational& alpha = 1,
                             const Rational& beta = 1) {
    DssParams p;
    p.n = n;
    p.k = k;
    p.d = d;
    p.alpha = alpha;
    p.beta = beta;
    return p;
}

// Builds a VarSet from display names, e.g. {"Y1", "U2[3]"}.
inline VarSet named_set(const Universe& u, std::initializer_list<const char*> names) {
    VarSet s;
    for (const char* name : names) {
        bool found = false;
        for (int i = 0; i < u.size(); ++i)
            if (var_name(u.var(i), u.params) == name) {
                s = s.with(i);
                found = true;
                break;
            }
        if (!found) throw std::invalid_argument(std::string("unknown variable: ") + name);
    }
    return s;
}

inline std::set<VarSet> named_family(const Universe& u,
                                     const std::vector<std::vector<const char*>>& lists) {
    std::set<VarSet> out;
    for (const auto& names : lists) {
        VarSet s;
        for (const char* name : names) {
            bool found = false;
            for (int i = 0; i < u.size(); ++i)
                if (var_name(u.var(i), u.params) == name) {
                    s = s.with(i);
                    found = true;
                    break;
                }
            if (!found) throw std::invalid_argument(std::string("unknown variable: ") + name);
        }
        out.insert(s);
    }
    return out;
}

}  // namespace dsslp::testutil
