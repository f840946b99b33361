// The three presheaves P, G, H on the discrete two-point space {p, q}, with
// integers cut down to a finite window.
#pragma once

#include "sheafkit/finsheaf.hpp"

namespace fixtures {

inline std::vector<std::string> window(int lo = -2, int hi = 2) {
    std::vector<std::string> out;
    for (int i = lo; i <= hi; ++i) out.push_back(std::to_string(i));
    return out;
}

inline sheafkit::FiniteTopology discrete_pq() {
    return sheafkit::FiniteTopology({"p", "q"}, std::vector<sheafkit::LabelSet>{{}, {"p"}, {"q"}, {"p", "q"}});
}

inline sheafkit::ElementMap identity_on(const std::vector<std::string>& xs) {
    sheafkit::ElementMap m;
    for (const auto& x : xs) m[x] = x;
    return m;
}

inline sheafkit::ElementMap to_point(const std::vector<std::string>& xs) {
    sheafkit::ElementMap m;
    for (const auto& x : xs) m[x] = "*";
    return m;
}

/// Same integers everywhere, identity restrictions.
inline sheafkit::FinitePresheaf presheaf_p() {
    auto w = window();
    auto id = identity_on(w);
    return sheafkit::FinitePresheaf(discrete_pq(), {{"{}", w}, {"{p}", w}, {"{q}", w}, {"{p,q}", w}},
                                    {{{"{p}", "{p,q}"}, id},
                                     {{"{q}", "{p,q}"}, id},
                                     {{"{}", "{p,q}"}, id},
                                     {{"{}", "{p}"}, id},
                                     {{"{}", "{q}"}, id}});
}

/// P with a single point over the empty set.
inline sheafkit::FinitePresheaf presheaf_g() {
    auto w = window();
    auto id = identity_on(w);
    auto z = to_point(w);
    return sheafkit::FinitePresheaf(discrete_pq(), {{"{}", {"*"}}, {"{p}", w}, {"{q}", w}, {"{p,q}", w}},
                                    {{{"{p}", "{p,q}"}, id},
                                     {{"{q}", "{p,q}"}, id},
                                     {{"{}", "{p,q}"}, z},
                                     {{"{}", "{p}"}, z},
                                     {{"{}", "{q}"}, z}});
}

/// G with pairs over the whole space and projections.
inline sheafkit::FinitePresheaf presheaf_h() {
    auto w = window();
    std::vector<std::string> pairs;
    sheafkit::ElementMap first, second, all;
    for (const auto& a : w)
        for (const auto& b : w) {
            std::string s = "(" + a + "," + b + ")";
            pairs.push_back(s);
            first[s] = a;
            second[s] = b;
            all[s] = "*";
        }
    auto z = to_point(w);
    return sheafkit::FinitePresheaf(discrete_pq(), {{"{}", {"*"}}, {"{p}", w}, {"{q}", w}, {"{p,q}", pairs}},
                                    {{{"{p}", "{p,q}"}, first},
                                     {{"{q}", "{p,q}"}, second},
                                     {{"{}", "{p,q}"}, all},
                                     {{"{}", "{p}"}, z},
                                     {{"{}", "{q}"}, z}});
}

} // namespace fixtures
