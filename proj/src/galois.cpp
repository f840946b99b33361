#include "sheafkit/galois.hpp"

#include <algorithm>
#include <functional>

namespace sheafkit {

IndexMap index_map(const FinitePoset& source, const FinitePoset& target, const Mapping& f) {
    IndexMap out(source.size());
    for (std::size_t i = 0; i < source.size(); ++i) {
        auto it = f.find(source.label(i));
        if (it == f.end()) throw GaloisError("mapping is not total: no image for '" + source.label(i) + "'");
        if (!target.contains(it->second)) throw GaloisError("mapping sends '" + it->first + "' to unknown '" + it->second + "'");
        out[i] = target.index(it->second);
    }
    for (const auto& [k, v] : f)
        if (!source.contains(k)) throw GaloisError("mapping has unknown source element '" + k + "'");
    return out;
}

Mapping label_map(const FinitePoset& source, const FinitePoset& target, const IndexMap& f) {
    Mapping out;
    for (std::size_t i = 0; i < source.size(); ++i) out[source.label(i)] = target.label(f.at(i));
    return out;
}

IndexMap identity_map(const FinitePoset& p) {
    IndexMap out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = i;
    return out;
}

bool is_monotone(const FinitePoset& source, const FinitePoset& target, const IndexMap& f) {
    for (std::size_t i = 0; i < source.size(); ++i)
        for (std::size_t j = 0; j < source.size(); ++j)
            if (source.leq(i, j) && !target.leq(f[i], f[j])) return false;
    return true;
}

namespace {

void require_total(const IndexMap& f, std::size_t n, std::size_t m, const char* what) {
    if (f.size() != n) throw GaloisError(std::string(what) + " map is not total");
    for (auto v : f)
        if (v >= m) throw GaloisError(std::string(what) + " map leaves its target");
}

} // namespace

GaloisConnection::GaloisConnection(FinitePoset source, FinitePoset target, IndexMap left, IndexMap right)
    : source_(std::move(source)), target_(std::move(target)), left_(std::move(left)), right_(std::move(right)) {
    require_total(left_, source_.size(), target_.size(), "left");
    require_total(right_, target_.size(), source_.size(), "right");
    if (!is_monotone(source_, target_, left_)) throw GaloisError("left map is not monotone");
    if (!is_monotone(target_, source_, right_)) throw GaloisError("right map is not monotone");
}

GaloisConnection::GaloisConnection(FinitePoset source, FinitePoset target, const Mapping& left, const Mapping& right)
    : GaloisConnection(source, target, index_map(source, target, left), index_map(target, source, right)) {}

ConnectionReport check_connection(const GaloisConnection& c) {
    const auto& P = c.source();
    const auto& Q = c.target();
    const auto& F = c.left();
    const auto& G = c.right();
    ConnectionReport r;
    for (std::size_t p = 0; p < P.size(); ++p)
        for (std::size_t q = 0; q < Q.size(); ++q) {
            bool lhs = Q.leq(F[p], q), rhs = P.leq(p, G[q]);
            if (lhs != rhs) {
                r.failure = ConnectionReport::Failure::adjunction;
                r.p = p;
                r.q = q;
                r.message = lhs ? "F(" + P.label(p) + ") <= " + Q.label(q) + " but " + P.label(p) + " is not <= G(" +
                                      Q.label(q) + ")"
                                : P.label(p) + " <= G(" + Q.label(q) + ") but F(" + P.label(p) + ") is not <= " +
                                      Q.label(q);
                return r;
            }
        }
    for (std::size_t p = 0; p < P.size(); ++p)
        if (!P.leq(p, G[F[p]])) {
            r.failure = ConnectionReport::Failure::unit;
            r.p = p;
            r.message = "unit fails: " + P.label(p) + " is not <= GF(" + P.label(p) + ")";
            return r;
        }
    for (std::size_t q = 0; q < Q.size(); ++q)
        if (!Q.leq(F[G[q]], q)) {
            r.failure = ConnectionReport::Failure::counit;
            r.q = q;
            r.message = "counit fails: FG(" + Q.label(q) + ") is not <= " + Q.label(q);
            return r;
        }
    return r;
}

std::optional<std::vector<std::size_t>> join_violation(const IndexMap& f, const FinitePoset& source,
                                                       const FinitePoset& target, std::size_t max_size) {
    const std::size_t n = source.size();
    std::vector<std::size_t> s;
    std::optional<std::vector<std::size_t>> found;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t want) {
        if (found) return;
        if (s.size() == want) {
            auto j = source.join(s);
            if (!j) return;  // nothing to preserve
            std::vector<std::size_t> img;
            for (auto x : s) img.push_back(f[x]);
            auto ji = target.join(img);
            if (!ji || *ji != f[*j]) found = s;
            return;
        }
        for (std::size_t i = start; i < n && !found; ++i) {
            s.push_back(i);
            rec(i + 1, want);
            s.pop_back();
        }
    };
    for (std::size_t k = 0; k <= std::min(max_size, n) && !found; ++k) rec(0, k);
    return found;
}

std::optional<std::vector<std::size_t>> meet_violation(const IndexMap& f, const FinitePoset& source,
                                                       const FinitePoset& target, std::size_t max_size) {
    return join_violation(f, source.dual(), target.dual(), max_size);
}

namespace {

std::string set_of(const FinitePoset& p, const std::vector<std::size_t>& s) {
    LabelSet l;
    for (auto i : s) l.push_back(p.label(i));
    return set_label(l);
}

// Right adjoint of f: P -> Q, with joins taken in P. `op` only changes wording.
AdjointResult synthesize(const IndexMap& f, const FinitePoset& P, const FinitePoset& Q, bool op) {
    require_total(f, P.size(), Q.size(), "given");
    if (!P.is_lattice()) throw GaloisError("adjoint synthesis needs a lattice");
    if (!is_monotone(P, Q, f)) throw GaloisError("given map is not monotone");

    IndexMap g(Q.size());
    for (std::size_t q = 0; q < Q.size(); ++q) {
        std::vector<std::size_t> below;
        for (std::size_t p = 0; p < P.size(); ++p)
            if (Q.leq(f[p], q)) below.push_back(p);
        g[q] = *P.join(below);
    }
    bool ok = true;
    for (std::size_t p = 0; p < P.size() && ok; ++p)
        for (std::size_t q = 0; q < Q.size() && ok; ++q) ok = Q.leq(f[p], q) == P.leq(p, g[q]);

    AdjointResult r;
    if (ok) {
        r.map = std::move(g);
        return r;
    }
    // empty and binary joins suffice on a finite lattice
    auto v = join_violation(f, P, Q, 2);
    const char* what = op ? "meet" : "join";
    if (v) {
        r.violated = *v;
        r.reason = std::string("map does not preserve the ") + what + " of " + set_of(P, *v);
    } else {
        r.reason = std::string("no ") + (op ? "left" : "right") + " adjoint exists";
    }
    return r;
}

} // namespace

AdjointResult right_adjoint_of(const IndexMap& f, const FinitePoset& source, const FinitePoset& target) {
    return synthesize(f, source, target, false);
}

AdjointResult left_adjoint_of(const IndexMap& g, const FinitePoset& source, const FinitePoset& target) {
    return synthesize(g, source.dual(), target.dual(), true);
}

bool LatticeEndomap::extensive() const {
    for (std::size_t i = 0; i < map.size(); ++i)
        if (!carrier.leq(i, map[i])) return false;
    return true;
}

bool LatticeEndomap::contractive() const {
    for (std::size_t i = 0; i < map.size(); ++i)
        if (!carrier.leq(map[i], i)) return false;
    return true;
}

bool LatticeEndomap::idempotent() const {
    for (std::size_t i = 0; i < map.size(); ++i)
        if (map[map[i]] != map[i]) return false;
    return true;
}

std::vector<std::size_t> LatticeEndomap::fixed_points() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < map.size(); ++i)
        if (map[i] == i) out.push_back(i);
    return out;
}

InducedOperators induced_operators(const GaloisConnection& c) {
    auto rep = check_connection(c);
    if (!rep.ok()) throw GaloisError("not a Galois connection: " + rep.message);
    const auto& F = c.left();
    const auto& G = c.right();

    InducedOperators out;
    out.closure.carrier = c.source();
    out.kernel.carrier = c.target();
    for (std::size_t p = 0; p < c.source().size(); ++p) out.closure.map.push_back(G[F[p]]);
    for (std::size_t q = 0; q < c.target().size(); ++q) out.kernel.map.push_back(F[G[q]]);
    out.closure.monotone = is_monotone(c.source(), c.source(), out.closure.map);
    out.kernel.monotone = is_monotone(c.target(), c.target(), out.kernel.map);

    if (!out.closure.monotone || !out.closure.extensive() || !out.closure.idempotent())
        throw GaloisError("induced closure is not a closure operator");
    if (!out.kernel.monotone || !out.kernel.contractive() || !out.kernel.idempotent())
        throw GaloisError("induced kernel is not a kernel operator");
    for (std::size_t p = 0; p < c.source().size(); ++p)
        if (F[G[F[p]]] != F[p]) throw GaloisError("FGF = F fails at " + c.source().label(p));
    for (std::size_t q = 0; q < c.target().size(); ++q)
        if (G[F[G[q]]] != G[q]) throw GaloisError("GFG = G fails at " + c.target().label(q));
    return out;
}

GaloisConnection compose(const GaloisConnection& c1, const GaloisConnection& c2) {
    if (!(c1.target() == c2.source())) throw GaloisError("compose: middle posets differ");
    IndexMap left(c1.source().size()), right(c2.target().size());
    for (std::size_t p = 0; p < left.size(); ++p) left[p] = c2.left()[c1.left()[p]];
    for (std::size_t r = 0; r < right.size(); ++r) right[r] = c1.right()[c2.right()[r]];
    return GaloisConnection(c1.source(), c2.target(), left, right);
}

GaloisConnection opposite(const GaloisConnection& c) {
    return GaloisConnection(c.target().dual(), c.source().dual(), c.right(), c.left());
}

IndexMap cantor_diagonal(const std::vector<IndexMap>& f, const IndexMap& alpha) {
    const std::size_t n = f.size();
    for (const auto& row : f) {
        if (row.size() != n) throw GaloisError("diagonal table must be square");
        for (auto y : row)
            if (y >= alpha.size()) throw GaloisError("diagonal table value outside the codomain");
    }
    for (std::size_t y = 0; y < alpha.size(); ++y) {
        if (alpha[y] >= alpha.size()) throw GaloisError("alpha leaves its codomain");
        if (alpha[y] == y) throw GaloisError("alpha has a fixed point at " + std::to_string(y));
    }
    IndexMap g(n);
    for (std::size_t x = 0; x < n; ++x) g[x] = alpha[f[x][x]];
    for (std::size_t x0 = 0; x0 < n; ++x0) {
        bool differs = false;
        for (std::size_t x = 0; x < n && !differs; ++x) differs = g[x] != f[x][x0];
        if (!differs) throw std::logic_error("diagonal map coincides with a row");
    }
    return g;
}

} // namespace sheafkit
