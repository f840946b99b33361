#include "sheafkit/poset.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

namespace sheafkit {

namespace {

std::vector<std::size_t> bits_of(PointMask m) {
    std::vector<std::size_t> out;
    while (m) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
        m &= m - 1;
    }
    return out;
}

// Smaller sets first, then lexicographic on sorted member indices.
bool canonical_less(PointMask a, PointMask b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    return bits_of(a) < bits_of(b);
}

void check_limit(std::size_t n, std::size_t limit, const char* what) {
    if (n > limit || n > 63)
        throw PosetError(std::string(what) + ": " + std::to_string(n) + " points exceeds the power-set limit of " +
                         std::to_string(std::min<std::size_t>(limit, 63)));
}

} // namespace

FinitePoset FinitePoset::from_order(std::vector<Label> labels,
                                    const std::function<bool(std::size_t, std::size_t)>& leq) {
    const std::size_t n = labels.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](auto a, auto b) { return labels[a] < labels[b]; });

    FinitePoset p;
    p.labels_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        p.labels_[i] = labels[perm[i]];
        if (i && p.labels_[i] == p.labels_[i - 1]) throw PosetError("duplicate element '" + p.labels_[i] + "'");
        p.index_[p.labels_[i]] = i;
    }
    p.leq_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) p.leq_[i * n + j] = leq(perm[i], perm[j]) ? 1 : 0;

    for (std::size_t i = 0; i < n; ++i)
        if (!p.leq(i, i)) throw PosetError("not reflexive at '" + p.labels_[i] + "'");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (p.leq(i, j) && p.leq(j, i))
                throw PosetError("antisymmetry violated: '" + p.labels_[i] + "' <= '" + p.labels_[j] + "' and '" +
                                 p.labels_[j] + "' <= '" + p.labels_[i] + "'");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (!p.leq(i, j)) continue;
            for (std::size_t k = 0; k < n; ++k)
                if (p.leq(j, k) && !p.leq(i, k))
                    throw PosetError("not transitive: '" + p.labels_[i] + "' <= '" + p.labels_[j] + "' <= '" +
                                     p.labels_[k] + "'");
        }
    return p;
}

std::size_t FinitePoset::index(const Label& l) const {
    auto it = index_.find(l);
    if (it == index_.end()) throw PosetError("unknown element '" + l + "'");
    return it->second;
}

std::vector<std::pair<Label, Label>> FinitePoset::relation() const {
    std::vector<std::pair<Label, Label>> out;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j)
            if (leq(i, j)) out.emplace_back(labels_[i], labels_[j]);
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> FinitePoset::covers() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j) {
            if (i == j || !leq(i, j)) continue;
            bool between = false;
            for (std::size_t k = 0; k < size() && !between; ++k)
                between = k != i && k != j && leq(i, k) && leq(k, j);
            if (!between) out.emplace_back(i, j);
        }
    return out;
}

FinitePoset FinitePoset::dual() const {
    FinitePoset d = *this;
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d.leq_[i * n + j] = leq_[j * n + i];
    return d;
}

std::optional<std::size_t> FinitePoset::join(const std::vector<std::size_t>& xs) const {
    std::optional<std::size_t> best;
    for (std::size_t u = 0; u < size(); ++u) {
        if (!std::all_of(xs.begin(), xs.end(), [&](auto x) { return leq(x, u); })) continue;
        if (!best || leq(u, *best))
            best = u;
    }
    if (!best) return std::nullopt;
    // the candidate must sit below every upper bound
    for (std::size_t u = 0; u < size(); ++u)
        if (std::all_of(xs.begin(), xs.end(), [&](auto x) { return leq(x, u); }) && !leq(*best, u))
            return std::nullopt;
    return best;
}

std::optional<std::size_t> FinitePoset::meet(const std::vector<std::size_t>& xs) const {
    return dual().join(xs);
}

bool FinitePoset::is_lattice() const {
    if (size() == 0) return false;
    if (!join({}) || !meet({})) return false;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j)
            if (!join({i, j}) || !meet({i, j})) return false;
    return true;
}

FinitePoset validate_poset(const std::vector<Label>& elements, const std::vector<std::pair<Label, Label>>& relation) {
    std::map<Label, std::size_t> idx;
    for (std::size_t i = 0; i < elements.size(); ++i)
        if (!idx.emplace(elements[i], i).second) throw PosetError("duplicate element '" + elements[i] + "'");
    const std::size_t n = elements.size();
    std::vector<char> r(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) r[i * n + i] = 1;
    for (const auto& [a, b] : relation) {
        auto ia = idx.find(a), ib = idx.find(b);
        if (ia == idx.end()) throw PosetError("unknown element '" + a + "'");
        if (ib == idx.end()) throw PosetError("unknown element '" + b + "'");
        r[ia->second * n + ib->second] = 1;
    }
    // Warshall closure
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (r[i * n + k])
                for (std::size_t j = 0; j < n; ++j)
                    if (r[k * n + j]) r[i * n + j] = 1;
    return FinitePoset::from_order(elements, [&](std::size_t a, std::size_t b) { return r[a * n + b] != 0; });
}

LabelSet principal_down(const FinitePoset& p, const Label& x) {
    std::size_t ix = p.index(x);
    LabelSet out;
    for (std::size_t q = 0; q < p.size(); ++q)
        if (p.leq(q, ix)) out.push_back(p.label(q));
    return out;
}

LabelSet principal_up(const FinitePoset& p, const Label& x) {
    std::size_t ix = p.index(x);
    LabelSet out;
    for (std::size_t q = 0; q < p.size(); ++q)
        if (p.leq(ix, q)) out.push_back(p.label(q));
    return out;
}

std::string set_label(const LabelSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + s[i];
    return out + "}";
}

namespace {

std::vector<PointMask> closed_masks(const FinitePoset& p, Direction dir) {
    const std::size_t n = p.size();
    std::vector<PointMask> out;
    for (PointMask m = 0; m < (PointMask(1) << n); ++m) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            if (!(m >> i & 1)) continue;
            for (std::size_t j = 0; j < n && ok; ++j) {
                bool related = dir == Direction::down ? p.leq(j, i) : p.leq(i, j);
                if (related && !(m >> j & 1)) ok = false;
            }
        }
        if (ok) out.push_back(m);
    }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

LabelSet labels_of(const FinitePoset& p, PointMask m) {
    LabelSet out;
    for (auto i : bits_of(m)) out.push_back(p.label(i));
    return out;
}

} // namespace

std::vector<LabelSet> downsets(const FinitePoset& p, std::size_t limit) {
    check_limit(p.size(), limit, "downsets");
    std::vector<LabelSet> out;
    for (auto m : closed_masks(p, Direction::down)) out.push_back(labels_of(p, m));
    return out;
}

FinitePoset all_downsets(const FinitePoset& p, std::size_t limit) {
    check_limit(p.size(), limit, "all_downsets");
    auto masks = closed_masks(p, Direction::down);
    std::vector<Label> labels;
    for (auto m : masks) labels.push_back(set_label(labels_of(p, m)));
    return FinitePoset::from_order(labels, [&](std::size_t a, std::size_t b) { return (masks[a] & ~masks[b]) == 0; });
}

bool is_monotone(const FinitePoset& p, const FinitePoset& q, const Mapping& f) {
    std::vector<std::size_t> img(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        auto it = f.find(p.label(i));
        if (it == f.end()) throw PosetError("mapping is not total: no image for '" + p.label(i) + "'");
        img[i] = q.index(it->second);
    }
    for (const auto& [k, v] : f)
        if (!p.contains(k)) throw PosetError("mapping has unknown source element '" + k + "'");
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j)
            if (p.leq(i, j) && !q.leq(img[i], img[j])) return false;
    return true;
}

bool yoneda_check(const FinitePoset& p, std::size_t limit) {
    const std::size_t n = p.size();
    check_limit(n, limit, "yoneda_check");
    std::vector<PointMask> down(n, 0);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t q = 0; q < n; ++q)
            if (p.leq(q, x)) down[x] |= PointMask(1) << q;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (p.leq(x, y) != ((down[x] & ~down[y]) == 0)) return false;
    for (auto a : closed_masks(p, Direction::down))
        for (std::size_t x = 0; x < n; ++x)
            if (static_cast<bool>(a >> x & 1) != ((down[x] & ~a) == 0)) return false;
    return true;
}

// ---------------------------------------------------------------------------

SetFamily::SetFamily(std::vector<Label> points, std::vector<std::pair<std::string, LabelSet>> members) {
    std::sort(points.begin(), points.end());
    if (std::adjacent_find(points.begin(), points.end()) != points.end())
        throw PosetError("duplicate point in point set");
    if (points.size() > 63) throw PosetError("point sets are limited to 63 points");
    points_ = std::move(points);

    std::vector<std::pair<PointMask, std::string>> tmp;
    std::set<std::string> seen_names;
    std::set<PointMask> seen_masks;
    for (auto& [name, set] : members) {
        PointMask m = mask_of(set);
        if (!seen_names.insert(name).second) throw PosetError("duplicate member name '" + name + "'");
        if (!seen_masks.insert(m).second) throw PosetError("member '" + name + "' repeats an earlier set");
        tmp.emplace_back(m, name);
    }
    std::sort(tmp.begin(), tmp.end(), [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
    for (auto& [m, name] : tmp) {
        lookup_[m] = masks_.size();
        masks_.push_back(m);
        names_.push_back(std::move(name));
    }
}

std::size_t SetFamily::point_index(const Label& p) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), p);
    if (it == points_.end() || *it != p) throw PosetError("unknown point '" + p + "'");
    return static_cast<std::size_t>(it - points_.begin());
}

std::size_t SetFamily::index(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    throw PosetError("unknown open '" + name + "'");
}

std::optional<std::size_t> SetFamily::find(PointMask m) const {
    auto it = lookup_.find(m);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

LabelSet SetFamily::labels_of(PointMask m) const {
    LabelSet out;
    for (auto i : bits_of(m)) out.push_back(points_.at(i));
    return out;
}

PointMask SetFamily::mask_of(const LabelSet& s) const {
    PointMask m = 0;
    for (const auto& l : s) m |= PointMask(1) << point_index(l);
    return m;
}

PointMask SetFamily::full_mask() const {
    return points_.empty() ? 0 : (~PointMask(0) >> (64 - points_.size()));
}

FiniteTopology::FiniteTopology(std::vector<Label> points, std::vector<std::pair<std::string, LabelSet>> opens)
    : SetFamily(std::move(points), std::move(opens)) {
    if (!find(0)) throw PosetError("topology is missing the empty set");
    if (!find(full_mask())) throw PosetError("topology is missing the whole space");
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j) {
            if (!find(masks_[i] | masks_[j]))
                throw PosetError("opens not closed under union: " + set_label(members(i)) + " and " +
                                 set_label(members(j)));
            if (!find(masks_[i] & masks_[j]))
                throw PosetError("opens not closed under intersection: " + set_label(members(i)) + " and " +
                                 set_label(members(j)));
        }
}

namespace {

std::vector<std::pair<std::string, LabelSet>> auto_named(const std::vector<LabelSet>& opens) {
    std::vector<std::pair<std::string, LabelSet>> out;
    for (auto s : opens) {
        std::sort(s.begin(), s.end());
        out.emplace_back(set_label(s), s);
    }
    return out;
}

} // namespace

FiniteTopology::FiniteTopology(std::vector<Label> points, const std::vector<LabelSet>& opens)
    : FiniteTopology(std::move(points), auto_named(opens)) {}

FiniteTopology::FiniteTopology(Trusted, std::vector<Label> points, const std::vector<LabelSet>& opens)
    : SetFamily(std::move(points), auto_named(opens)) {}

std::size_t FiniteTopology::minimal_open(const Label& x) const {
    PointMask bit = PointMask(1) << point_index(x);
    PointMask m = full_mask();
    for (auto o : masks_)
        if (o & bit) m &= o;
    return *find(m);
}

FiniteTopology alexandrov(const FinitePoset& p, Direction dir, std::size_t limit) {
    check_limit(p.size(), limit, "alexandrov");
    std::vector<LabelSet> opens;
    for (auto m : closed_masks(p, dir)) opens.push_back(labels_of(p, m));
    return FiniteTopology(FiniteTopology::Trusted{}, p.elements(), opens);
}

} // namespace sheafkit
