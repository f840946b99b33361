#include "sheafkit/complex.hpp"

#include <algorithm>
#include <set>

namespace sheafkit {

namespace {

bool face_less(const Simplex& a, const Simplex& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

std::string join_labels(const std::vector<Label>& ls) {
    std::string s;
    for (std::size_t i = 0; i < ls.size(); ++i) s += (i ? "," : "") + ls[i];
    return s;
}

} // namespace

SimplicialComplex build_complex(std::vector<Label> vertices, std::vector<Simplex> faces) {
    SimplicialComplex c;
    c.vertices_ = std::move(vertices);
    for (const auto& v : c.vertices_) c.short_names_ = c.short_names_ && v.size() == 1;
    std::sort(faces.begin(), faces.end(), face_less);
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    c.faces_ = std::move(faces);
    c.local_.resize(c.faces_.size());
    for (FaceId f = 0; f < c.faces_.size(); ++f) {
        c.index_[c.faces_[f]] = f;
        std::size_t k = c.faces_[f].size() - 1;
        if (c.by_dim_.size() <= k) c.by_dim_.resize(k + 1);
        c.local_[f] = c.by_dim_[k].size();
        c.by_dim_[k].push_back(f);
    }
    c.cofacets_.assign(c.faces_.size(), {});
    c.facets_.assign(c.faces_.size(), {});
    for (FaceId f = 0; f < c.faces_.size(); ++f) {
        const auto& s = c.faces_[f];
        if (s.size() < 2) continue;
        for (std::size_t drop = s.size(); drop-- > 0;) {
            Simplex sub = s;
            sub.erase(sub.begin() + static_cast<long>(drop));
            FaceId g = c.index_.at(sub);
            c.facets_[f].push_back(g);
            c.cofacets_[g].push_back(f);
        }
    }
    for (auto& v : c.facets_) std::sort(v.begin(), v.end());
    for (auto& v : c.cofacets_) std::sort(v.begin(), v.end());
    return c;
}

const std::vector<FaceId>& SimplicialComplex::faces_of_dim(int k) const {
    static const std::vector<FaceId> none;
    if (k < 0 || k >= static_cast<int>(by_dim_.size())) return none;
    return by_dim_[static_cast<std::size_t>(k)];
}

std::vector<Label> SimplicialComplex::labels(FaceId f) const {
    std::vector<Label> out;
    for (auto v : faces_.at(f)) out.push_back(vertices_[v]);
    return out;
}

std::string SimplicialComplex::name(FaceId f) const {
    auto ls = labels(f);
    if (!short_names_) return join_labels(ls);
    std::string s;
    for (const auto& l : ls) s += l;
    return s;
}

FaceId SimplicialComplex::id(const std::string& n) const {
    std::vector<Label> ls;
    if (short_names_) {
        for (char ch : n) ls.emplace_back(1, ch);
    } else {
        std::size_t start = 0;
        for (;;) {
            auto comma = n.find(',', start);
            ls.push_back(n.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    auto f = find_labels(ls);
    if (!f) throw ComplexError("unknown face '" + n + "'");
    return *f;
}

std::optional<FaceId> SimplicialComplex::find(const Simplex& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<FaceId> SimplicialComplex::find_labels(const std::vector<Label>& ls) const {
    Simplex s;
    for (const auto& l : ls) {
        auto it = std::find(vertices_.begin(), vertices_.end(), l);
        if (it == vertices_.end()) return std::nullopt;
        s.push_back(static_cast<std::size_t>(it - vertices_.begin()));
    }
    if (!std::is_sorted(s.begin(), s.end())) std::sort(s.begin(), s.end());
    return find(s);
}

bool SimplicialComplex::leq(FaceId a, FaceId b) const {
    const auto& sa = faces_.at(a);
    const auto& sb = faces_.at(b);
    return std::includes(sb.begin(), sb.end(), sa.begin(), sa.end());
}

SimplicialComplex validate_complex(std::vector<Label> vertex_order, const std::vector<std::vector<Label>>& faces,
                                   Closure mode) {
    std::map<Label, std::size_t> pos;
    for (std::size_t i = 0; i < vertex_order.size(); ++i)
        if (!pos.emplace(vertex_order[i], i).second) throw ComplexError("duplicate vertex '" + vertex_order[i] + "'");

    std::set<Simplex, bool (*)(const Simplex&, const Simplex&)> given(face_less);
    for (const auto& f : faces) {
        if (f.empty()) throw ComplexError("empty face");
        Simplex s;
        for (const auto& l : f) {
            auto it = pos.find(l);
            if (it == pos.end()) throw ComplexError("face uses unknown vertex '" + l + "'");
            s.push_back(it->second);
        }
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw ComplexError("face repeats a vertex");
        given.insert(s);
    }

    std::set<Simplex, bool (*)(const Simplex&, const Simplex&)> all(face_less);
    if (mode == Closure::complete) {
        for (std::size_t v = 0; v < vertex_order.size(); ++v) all.insert({v});
        for (const auto& s : given) {
            const std::size_t n = s.size();
            for (unsigned long m = 1; m < (1ul << n); ++m) {
                Simplex sub;
                for (std::size_t i = 0; i < n; ++i)
                    if (m >> i & 1) sub.push_back(s[i]);
                all.insert(sub);
            }
        }
    } else {
        for (std::size_t v = 0; v < vertex_order.size(); ++v)
            if (!given.count({v})) throw ComplexError("missing face {" + vertex_order[v] + "}");
        for (const auto& s : given)
            for (std::size_t drop = 0; drop < s.size() && s.size() > 1; ++drop) {
                Simplex sub = s;
                sub.erase(sub.begin() + static_cast<long>(drop));
                if (!given.count(sub)) {
                    std::vector<Label> ls;
                    for (auto v : sub) ls.push_back(vertex_order[v]);
                    throw ComplexError("missing face {" + join_labels(ls) + "}");
                }
            }
        all = given;
    }
    return build_complex(std::move(vertex_order), std::vector<Simplex>(all.begin(), all.end()));
}

FinitePoset face_poset(const SimplicialComplex& c) {
    std::vector<Label> names;
    for (FaceId f = 0; f < c.face_count(); ++f) names.push_back(c.name(f));
    return FinitePoset::from_order(names, [&](std::size_t a, std::size_t b) { return c.leq(a, b); });
}

std::vector<FaceId> open_star(const SimplicialComplex& c, FaceId f) {
    std::vector<FaceId> out;
    for (FaceId g = 0; g < c.face_count(); ++g)
        if (c.leq(f, g)) out.push_back(g);
    return out;
}

int incidence(const SimplicialComplex& c, FaceId b, FaceId a) {
    const auto& sb = c.face(b);
    const auto& sa = c.face(a);
    if (sb.size() != sa.size() + 1)
        throw ComplexError("incidence needs faces of adjacent dimension: " + c.name(b) + " and " + c.name(a));
    for (std::size_t n = 0; n < sb.size(); ++n) {
        Simplex sub = sb;
        sub.erase(sub.begin() + static_cast<long>(n));
        if (sub == sa) return n % 2 ? -1 : 1;
    }
    return 0;
}

RationalMatrix boundary_matrix(const SimplicialComplex& c, int k) {
    if (k < 0) throw ComplexError("boundary degree must be nonnegative");
    const auto& cols = c.faces_of_dim(k);
    if (k == 0) return zeros(0, static_cast<Eigen::Index>(cols.size()));
    const auto& rows = c.faces_of_dim(k - 1);
    RationalMatrix m = zeros(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (FaceId a : c.facets(cols[j]))
            m(static_cast<Eigen::Index>(c.local_index(a)), static_cast<Eigen::Index>(j)) = Rational(incidence(c, cols[j], a));
    return m;
}

std::vector<std::size_t> homology_dims(const SimplicialComplex& c) {
    std::vector<std::size_t> out;
    for (int k = 0; k <= c.dim(); ++k) {
        auto dk = decompose(boundary_matrix(c, k));
        auto up = rank(boundary_matrix(c, k + 1));
        out.push_back(dk.kernel_basis.size() - static_cast<std::size_t>(up));
    }
    return out;
}

RationalVector to_vector(const SimplicialComplex& c, const Chain& ch) {
    RationalVector v = RationalVector::Constant(static_cast<Eigen::Index>(c.count(ch.k)), Rational(0));
    for (const auto& [f, x] : ch.coeffs) {
        if (c.face_dim(f) != ch.k) throw ComplexError("chain coefficient on a face of the wrong dimension");
        v(static_cast<Eigen::Index>(c.local_index(f))) = x;
    }
    return v;
}

Chain boundary(const SimplicialComplex& c, const Chain& ch) {
    Chain out{ch.k - 1, {}};
    if (ch.k == 0) return out;
    for (const auto& [f, x] : ch.coeffs) {
        if (c.face_dim(f) != ch.k) throw ComplexError("chain coefficient on a face of the wrong dimension");
        for (FaceId a : c.facets(f)) out.coeffs[a] += x * Rational(incidence(c, f, a));
    }
    for (auto it = out.coeffs.begin(); it != out.coeffs.end();)
        it = it->second.is_zero() ? out.coeffs.erase(it) : std::next(it);
    return out;
}

} // namespace sheafkit
