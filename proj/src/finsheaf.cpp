#include "sheafkit/finsheaf.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace sheafkit {

namespace {

std::string join(const std::vector<std::string>& xs, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
    return s;
}

std::size_t lookup(const std::vector<std::string>& xs, const std::string& x, const std::string& where) {
    auto it = std::find(xs.begin(), xs.end(), x);
    if (it == xs.end()) throw PresheafError("'" + x + "' is not an element of " + where);
    return static_cast<std::size_t>(it - xs.begin());
}

} // namespace

FinitePresheaf::FinitePresheaf(SetFamily base, const std::map<std::string, std::vector<std::string>>& stalks,
                               const std::map<OpenPair, ElementMap>& restrictions)
    : base_(std::move(base)) {
    const std::size_t n = base_.size();
    for (std::size_t u = 0; u < n; ++u) {
        auto it = stalks.find(base_.name(u));
        if (it == stalks.end()) throw PresheafError("no stalk for '" + base_.name(u) + "'");
        stalks_.push_back(it->second);
    }
    if (stalks.size() != n) throw PresheafError("stalk given for an unknown open");
    check_stalks();
    tables_.assign(n * n, {});
    std::vector<bool> given(n * n, false);
    for (const auto& [key, m] : restrictions) {
        std::size_t v = base_.index(key.first), u = base_.index(key.second);
        if (!base_.subset(v, u))
            throw PresheafError("restriction '" + key.first + "<=" + key.second + "' is not between nested opens");
        auto& t = tables_[u * n + v];
        for (const auto& x : stalks_[u]) {
            auto hit = m.find(x);
            if (hit == m.end())
                throw PresheafError("restriction '" + key.first + "<=" + key.second + "' misses '" + x + "'");
            t.push_back(lookup(stalks_[v], hit->second, "stalk '" + key.first + "'"));
        }
        for (const auto& [x, y] : m) lookup(stalks_[u], x, "stalk '" + key.second + "'");
        given[u * n + v] = true;
    }
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) {
            if (!base_.subset(v, u) || given[u * n + v]) continue;
            if (u != v) throw PresheafError("no restriction from '" + base_.name(u) + "' to '" + base_.name(v) + "'");
            tables_[u * n + u].resize(stalks_[u].size());
            std::iota(tables_[u * n + u].begin(), tables_[u * n + u].end(), 0);
        }
}

void FinitePresheaf::check_stalks() const {
    for (std::size_t u = 0; u < stalks_.size(); ++u) {
        auto s = stalks_[u];
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw PresheafError("stalk '" + base_.name(u) + "' repeats an element");
    }
}

const std::vector<std::size_t>& FinitePresheaf::table(std::size_t u, std::size_t v) const {
    if (!base_.subset(v, u)) throw PresheafError("'" + base_.name(v) + "' is not inside '" + base_.name(u) + "'");
    return tables_[u * base_.size() + v];
}

std::size_t FinitePresheaf::element_index(std::size_t u, const std::string& element) const {
    return lookup(stalks_.at(u), element, "stalk '" + base_.name(u) + "'");
}

std::string FinitePresheaf::restrict(const std::string& u, const std::string& v, const std::string& element) const {
    std::size_t iu = base_.index(u), iv = base_.index(v);
    return stalks_[iv][restrict(iu, iv, element_index(iu, element))];
}

PresheafReport validate_presheaf(const FinitePresheaf& p) {
    const auto& b = p.base();
    const std::size_t n = b.size();
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t i = 0; i < p.stalk(u).size(); ++i)
            if (p.restrict(u, u, i) != i)
                return {false, "restriction of '" + b.name(u) + "' to itself is not the identity", {b.name(u)},
                        p.stalk(u)[i]};
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) {
            if (!b.subset(v, u)) continue;
            for (std::size_t w = 0; w < n; ++w) {
                if (!b.subset(w, v)) continue;
                for (std::size_t i = 0; i < p.stalk(u).size(); ++i)
                    if (p.restrict(v, w, p.restrict(u, v, i)) != p.restrict(u, w, i))
                        return {false,
                                "restricting through '" + b.name(v) + "' disagrees with restricting directly from '" +
                                    b.name(u) + "' to '" + b.name(w) + "'",
                                {b.name(u), b.name(v), b.name(w)},
                                p.stalk(u)[i]};
            }
        }
    return {};
}

SheafCheck sheaf_check(const FinitePresheaf& p, const std::vector<std::size_t>& cover, std::size_t target) {
    const auto& b = p.base();
    PointMask u = 0;
    for (auto c : cover) {
        if (!b.subset(c, target))
            throw PresheafError("cover member '" + b.name(c) + "' is not inside '" + b.name(target) + "'");
        u |= b.mask(c);
    }
    if (u != b.mask(target)) throw PresheafError("cover does not union to '" + b.name(target) + "'");

    const std::size_t k = cover.size();
    // members below both cover i and cover j, for i < j
    std::vector<std::vector<std::vector<std::size_t>>> common(k, std::vector<std::vector<std::size_t>>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            for (std::size_t w = 0; w < b.size(); ++w)
                if (b.subset(w, cover[i]) && b.subset(w, cover[j])) common[i][j].push_back(w);

    SheafCheck out;
    std::map<std::vector<std::size_t>, std::size_t> sections;  // restriction tuple -> first section
    for (std::size_t s = 0; s < p.stalk(target).size(); ++s) {
        std::vector<std::size_t> key;
        for (auto c : cover) key.push_back(p.restrict(target, c, s));
        auto [it, fresh] = sections.emplace(key, s);
        if (!fresh && out.locality) {
            out.locality = false;
            out.locality_witness = {p.stalk(target)[it->second], p.stalk(target)[s]};
        }
    }

    std::vector<std::size_t> choice(k);
    std::function<bool(std::size_t)> search = [&](std::size_t i) {
        if (i == k) {
            if (sections.count(choice)) return false;
            out.gluing = false;
            for (std::size_t c = 0; c < k; ++c) out.gluing_witness.push_back(p.stalk(cover[c])[choice[c]]);
            return true;
        }
        for (std::size_t x = 0; x < p.stalk(cover[i]).size(); ++x) {
            bool agree = true;
            for (std::size_t j = 0; j < i && agree; ++j)
                for (auto w : common[j][i])
                    if (p.restrict(cover[j], w, choice[j]) != p.restrict(cover[i], w, x)) {
                        agree = false;
                        break;
                    }
            if (!agree) continue;
            choice[i] = x;
            if (search(i + 1)) return true;
        }
        return false;
    };
    search(0);
    return out;
}

SheafCheck sheaf_check(const FinitePresheaf& p, const std::vector<std::string>& cover, const std::string& target) {
    std::vector<std::size_t> idx;
    for (const auto& c : cover) idx.push_back(p.base().index(c));
    return sheaf_check(p, idx, p.base().index(target));
}

std::vector<std::vector<std::size_t>> covers(const SetFamily& f, std::size_t target, CoverKind kind) {
    const PointMask t = f.mask(target);
    std::vector<std::size_t> inside;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f.subset(i, target)) inside.push_back(i);

    std::vector<std::vector<std::size_t>> out;
    if (kind == CoverKind::all) {
        if (inside.size() > 20) throw PresheafError("too many members for exhaustive cover enumeration");
        for (unsigned long pick = 0; pick < (1ul << inside.size()); ++pick) {
            std::vector<std::size_t> c;
            PointMask u = 0;
            for (std::size_t i = 0; i < inside.size(); ++i)
                if (pick >> i & 1) {
                    c.push_back(inside[i]);
                    u |= f.mask(inside[i]);
                }
            if (u == t) out.push_back(c);
        }
        return out;
    }

    auto irredundant = [&](const std::vector<std::size_t>& c) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            PointMask rest = 0;
            for (std::size_t j = 0; j < c.size(); ++j)
                if (j != i) rest |= f.mask(c[j]);
            if ((f.mask(c[i]) & ~rest) == 0) return false;
        }
        return true;
    };
    std::set<std::vector<std::size_t>> found;
    std::vector<std::size_t> chosen;
    std::function<void(PointMask)> rec = [&](PointMask covered) {
        if (covered == t) {
            auto c = chosen;
            std::sort(c.begin(), c.end());
            if (irredundant(c)) found.insert(c);
            return;
        }
        PointMask missing = t & ~covered;
        PointMask low = missing & (~missing + 1);
        for (auto i : inside) {
            if (!(f.mask(i) & low)) continue;
            chosen.push_back(i);
            rec(covered | f.mask(i));
            chosen.pop_back();
        }
    };
    rec(0);
    return {found.begin(), found.end()};
}

std::optional<SheafFailure> sheaf_failure(const FinitePresheaf& p) {
    for (std::size_t t = 0; t < p.base().size(); ++t)
        for (const auto& c : covers(p.base(), t)) {
            auto r = sheaf_check(p, c, t);
            if (!r.ok()) return SheafFailure{t, c, r};
        }
    return std::nullopt;
}

bool is_sheaf(const FinitePresheaf& p) { return !sheaf_failure(p); }

const std::vector<std::string>& stalk_at(const FinitePresheaf& p, const Label& x) {
    const auto& b = p.base();
    const PointMask bit = PointMask(1) << b.point_index(x);
    PointMask m = b.full_mask();
    bool any = false;
    for (std::size_t i = 0; i < b.size(); ++i)
        if (b.mask(i) & bit) {
            m &= b.mask(i);
            any = true;
        }
    auto hit = any ? b.find(m) : std::nullopt;
    if (!hit) throw PresheafError("no smallest open contains '" + x + "'");
    return p.stalk(*hit);
}

Copresheaf make_copresheaf(const FinitePoset& base, const std::map<Label, std::vector<std::string>>& sets,
                           const std::map<std::pair<Label, Label>, ElementMap>& maps) {
    const std::size_t n = base.size();
    Copresheaf f{base, std::vector<std::vector<std::string>>(n), std::vector<std::vector<std::size_t>>(n * n)};
    for (const auto& [p, xs] : sets) {
        f.sets[base.index(p)] = xs;
        auto s = xs;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw PresheafError("set at '" + p + "' repeats an element");
    }
    std::vector<bool> given(n * n, false);
    for (const auto& [key, m] : maps) {
        std::size_t p = base.index(key.first), q = base.index(key.second);
        if (!base.leq(p, q)) throw PresheafError("map '" + key.first + "->" + key.second + "' goes against the order");
        for (const auto& x : f.sets[p]) {
            auto hit = m.find(x);
            if (hit == m.end()) throw PresheafError("map '" + key.first + "->" + key.second + "' misses '" + x + "'");
            f.maps[p * n + q].push_back(lookup(f.sets[q], hit->second, "set '" + key.second + "'"));
        }
        given[p * n + q] = true;
    }
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
            if (!base.leq(p, q) || given[p * n + q]) continue;
            if (p != q) throw PresheafError("no map '" + base.label(p) + "->" + base.label(q) + "'");
            f.maps[p * n + p].resize(f.sets[p].size());
            std::iota(f.maps[p * n + p].begin(), f.maps[p * n + p].end(), 0);
        }
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
            for (std::size_t r = 0; r < n; ++r)
                if (base.leq(p, q) && base.leq(q, r))
                    for (std::size_t i = 0; i < f.sets[p].size(); ++i)
                        if (f.map(q, r)[f.map(p, q)[i]] != f.map(p, r)[i] || (p == q && f.map(p, p)[i] != i))
                            throw PresheafError("maps are not functorial at '" + base.label(p) + "' <= '" +
                                                base.label(q) + "' <= '" + base.label(r) + "'");
    return f;
}

FinitePresheaf poset_transfer(const Copresheaf& f) {
    const auto& P = f.base;
    FiniteTopology top = alexandrov(P, Direction::up);
    // Alexandrov points are P's labels, which are already sorted, so point i is element i.
    std::vector<std::vector<std::vector<std::size_t>>> tuples(top.size());
    std::vector<std::vector<std::string>> stalks(top.size());
    for (std::size_t o = 0; o < top.size(); ++o) {
        std::vector<std::size_t> pts;
        for (std::size_t i = 0; i < P.size(); ++i)
            if (top.mask(o) >> i & 1) pts.push_back(i);
        std::vector<std::size_t> cur(pts.size());
        std::function<void(std::size_t)> rec = [&](std::size_t k) {
            if (k == pts.size()) {
                tuples[o].push_back(cur);
                std::vector<std::string> ls;
                for (std::size_t j = 0; j < pts.size(); ++j) ls.push_back(f.sets[pts[j]][cur[j]]);
                stalks[o].push_back("(" + join(ls, ",") + ")");
                return;
            }
            for (std::size_t x = 0; x < f.sets[pts[k]].size(); ++x) {
                bool ok = true;
                for (std::size_t j = 0; j < k && ok; ++j) {
                    if (P.leq(pts[j], pts[k]) && f.map(pts[j], pts[k])[cur[j]] != x) ok = false;
                    if (P.leq(pts[k], pts[j]) && f.map(pts[k], pts[j])[x] != cur[j]) ok = false;
                }
                if (!ok) continue;
                cur[k] = x;
                rec(k + 1);
            }
        };
        rec(0);
    }
    auto project = [&](std::size_t u, std::size_t v, std::size_t i) {
        std::vector<std::size_t> sub;
        std::size_t pos = 0;
        for (std::size_t pt = 0; pt < P.size(); ++pt) {
            if (!(top.mask(u) >> pt & 1)) continue;
            if (top.mask(v) >> pt & 1) sub.push_back(tuples[u][i][pos]);
            ++pos;
        }
        auto it = std::find(tuples[v].begin(), tuples[v].end(), sub);
        return static_cast<std::size_t>(it - tuples[v].begin());
    };
    return FinitePresheaf(top, std::move(stalks), project);
}

Copresheaf poset_transfer_inverse(const FinitePresheaf& s, const FinitePoset& base) {
    const auto& b = s.base();
    const std::size_t n = base.size();
    if (b.points() != base.elements()) throw PresheafError("presheaf points differ from the poset elements");
    std::vector<std::size_t> up(n);
    for (std::size_t p = 0; p < n; ++p) {
        auto hit = b.find(b.mask_of(principal_up(base, base.label(p))));
        if (!hit) throw PresheafError("the up-set of '" + base.label(p) + "' is not an open");
        up[p] = *hit;
    }
    Copresheaf f{base, std::vector<std::vector<std::string>>(n), std::vector<std::vector<std::size_t>>(n * n)};
    for (std::size_t p = 0; p < n; ++p) f.sets[p] = s.stalk(up[p]);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
            if (base.leq(p, q))
                for (std::size_t i = 0; i < f.sets[p].size(); ++i) f.maps[p * n + q].push_back(s.restrict(up[p], up[q], i));
    return f;
}

FinitePresheaf ncolor(const std::vector<Label>& vertices, const std::vector<Edge>& edges, std::size_t n) {
    if (n == 0) throw PresheafError("ncolor needs at least one color");
    if (vertices.empty()) throw PresheafError("ncolor needs a nonempty graph");
    std::vector<Label> points = vertices;
    for (const auto& e : edges) points.push_back(e.id);
    if (points.size() > 20) throw PresheafError("ncolor is limited to 20 vertices and edges");
    SetFamily carrier(points, {});
    const auto& pts = carrier.points();
    auto at = [&](const Label& l) { return carrier.point_index(l); };

    std::vector<std::size_t> vidx;
    for (const auto& v : vertices) vidx.push_back(at(v));
    std::vector<std::pair<std::size_t, std::size_t>> ends;
    std::vector<std::size_t> eidx;
    for (const auto& e : edges) {
        eidx.push_back(at(e.id));
        ends.emplace_back(at(e.src), at(e.dst));
    }
    for (const auto& [a, c] : ends)
        for (auto x : {a, c})
            if (std::find(vidx.begin(), vidx.end(), x) == vidx.end())
                throw PresheafError("edge endpoint '" + pts[x] + "' is not a vertex");

    auto connected = [&](PointMask m) {
        std::vector<std::size_t> vs;
        for (auto v : vidx)
            if (m >> v & 1) vs.push_back(v);
        if (vs.empty()) return false;
        PointMask seen = PointMask(1) << vs[0];
        for (bool grew = true; grew;) {
            grew = false;
            for (std::size_t e = 0; e < eidx.size(); ++e) {
                if (!(m >> eidx[e] & 1)) continue;
                PointMask a = PointMask(1) << ends[e].first, c = PointMask(1) << ends[e].second;
                if (((seen & a) != 0) != ((seen & c) != 0)) {
                    seen |= a | c;
                    grew = true;
                }
            }
        }
        for (auto v : vs)
            if (!(seen >> v & 1)) return false;
        return true;
    };

    std::vector<std::pair<std::string, LabelSet>> members;
    PointMask vmask = 0;
    for (auto v : vidx) vmask |= PointMask(1) << v;
    for (PointMask m = 1; m <= carrier.full_mask(); ++m) {
        bool closed = true;
        for (std::size_t e = 0; e < eidx.size() && closed; ++e)
            if ((m >> eidx[e] & 1) && !((m >> ends[e].first & 1) && (m >> ends[e].second & 1))) closed = false;
        if (closed && connected(m)) members.emplace_back(set_label(carrier.labels_of(m)), carrier.labels_of(m));
    }
    if (!connected(carrier.full_mask())) throw PresheafError("ncolor needs a connected graph");
    SetFamily fam(points, members);

    // colorings as color vectors over the member's vertices (in point order)
    std::vector<std::vector<std::vector<std::size_t>>> colorings(fam.size());
    std::vector<std::vector<std::string>> stalks(fam.size());
    for (std::size_t o = 0; o < fam.size(); ++o) {
        std::vector<std::size_t> vs;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if ((fam.mask(o) & vmask) >> i & 1) vs.push_back(i);
        std::vector<std::size_t> col(pts.size());
        std::function<void(std::size_t)> rec = [&](std::size_t k) {
            if (k == vs.size()) {
                bool proper = true;
                for (std::size_t e = 0; e < eidx.size() && proper; ++e)
                    if ((fam.mask(o) >> eidx[e] & 1) && col[ends[e].first] == col[ends[e].second]) proper = false;
                if (!proper) return;
                std::vector<std::size_t> c;
                std::vector<std::string> ls;
                for (auto v : vs) {
                    c.push_back(col[v]);
                    ls.push_back(pts[v] + "=" + std::to_string(col[v]));
                }
                colorings[o].push_back(c);
                stalks[o].push_back(join(ls, ","));
                return;
            }
            for (std::size_t x = 0; x < n; ++x) {
                col[vs[k]] = x;
                rec(k + 1);
            }
        };
        rec(0);
    }
    auto restrict = [&](std::size_t u, std::size_t v, std::size_t i) {
        std::vector<std::size_t> sub;
        std::size_t pos = 0;
        for (std::size_t pt = 0; pt < pts.size(); ++pt) {
            if (!((fam.mask(u) & vmask) >> pt & 1)) continue;
            if (fam.mask(v) >> pt & 1) sub.push_back(colorings[u][i][pos]);
            ++pos;
        }
        auto it = std::find(colorings[v].begin(), colorings[v].end(), sub);
        return static_cast<std::size_t>(it - colorings[v].begin());
    };
    return FinitePresheaf(fam, std::move(stalks), restrict);
}

std::vector<std::string> predict(const FinitePresheaf& p, const std::string& u, const std::string& v,
                                 const std::vector<std::string>& known) {
    const auto& b = p.base();
    auto whole = b.find(b.full_mask());
    if (!whole) throw PresheafError("predict needs the whole space as an open");
    std::size_t iu = b.index(u), iv = b.index(v);
    std::set<std::size_t> k;
    for (const auto& x : known) k.insert(p.element_index(iu, x));
    std::set<std::size_t> image;
    for (std::size_t s = 0; s < p.stalk(*whole).size(); ++s)
        if (k.count(p.restrict(*whole, iu, s))) image.insert(p.restrict(*whole, iv, s));
    std::vector<std::string> out;
    for (auto i : image) out.push_back(p.stalk(iv)[i]);
    return out;
}

} // namespace sheafkit
