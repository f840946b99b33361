/**
 * @file finsheaf.hpp
 * Set-valued presheaves over finite families of subsets: functoriality and
 * sheaf-condition checks with witnesses, stalks, the transfer between poset
 * copresheaves and sheaves on the up-Alexandrov topology, n-colorings and
 * fiber-product prediction.
 *
 * Stalks are finite lists of distinct string labels. A presheaf may live on
 * any SetFamily ordered by inclusion; matching families are compared on
 * every member below two cover members, which on a topology is the same as
 * comparing on their intersection.
 */
#pragma once

#include "sheafkit/modal.hpp"
#include "sheafkit/poset.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sheafkit {

class PresheafError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

typedef std::map<std::string, std::string> ElementMap;
/// (V, U) with V a subset of U.
typedef std::pair<std::string, std::string> OpenPair;

class FinitePresheaf {
public:
    FinitePresheaf() = default;
    /// Every member needs a stalk and every strictly nested pair a restriction
    /// table; a missing (U, U) entry means the identity.
    FinitePresheaf(SetFamily base, const std::map<std::string, std::vector<std::string>>& stalks,
                   const std::map<OpenPair, ElementMap>& restrictions);
    /// Index form: stalks by member index, restrict(u, v, i) gives the index in
    /// stalk v of element i of stalk u, for every v a subset of u.
    template <typename Fn>
    FinitePresheaf(SetFamily base, std::vector<std::vector<std::string>> stalks, Fn restrict);

    const SetFamily& base() const { return base_; }
    const std::vector<std::string>& stalk(std::size_t u) const { return stalks_.at(u); }
    const std::vector<std::string>& stalk(const std::string& open) const { return stalk(base_.index(open)); }
    std::size_t element_index(std::size_t u, const std::string& element) const;
    std::size_t restrict(std::size_t u, std::size_t v, std::size_t i) const { return table(u, v).at(i); }
    std::string restrict(const std::string& u, const std::string& v, const std::string& element) const;

    friend bool operator==(const FinitePresheaf&, const FinitePresheaf&) = default;

private:
    const std::vector<std::size_t>& table(std::size_t u, std::size_t v) const;
    void check_stalks() const;

    SetFamily base_;
    std::vector<std::vector<std::string>> stalks_;
    std::vector<std::vector<std::size_t>> tables_;  // [u * n + v], for v a subset of u
};

template <typename Fn>
FinitePresheaf::FinitePresheaf(SetFamily base, std::vector<std::vector<std::string>> stalks, Fn restrict)
    : base_(std::move(base)), stalks_(std::move(stalks)) {
    const std::size_t n = base_.size();
    if (stalks_.size() != n) throw PresheafError("one stalk per member is required");
    check_stalks();
    tables_.assign(n * n, {});
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            if (base_.subset(v, u))
                for (std::size_t i = 0; i < stalks_[u].size(); ++i) {
                    std::size_t j = restrict(u, v, i);
                    if (j >= stalks_[v].size()) throw PresheafError("restriction leaves the target stalk");
                    tables_[u * n + v].push_back(j);
                }
}

struct PresheafReport {
    bool ok = true;
    std::string message;
    /// U, V, W of the failing triple (U alone for an identity failure).
    std::vector<std::string> opens;
    std::string element;
};

PresheafReport validate_presheaf(const FinitePresheaf& p);

struct SheafCheck {
    bool locality = true;
    /// Two distinct sections of the target with the same restrictions.
    std::vector<std::string> locality_witness;
    bool gluing = true;
    /// One element per cover member: a matching family with no amalgamation.
    std::vector<std::string> gluing_witness;

    bool ok() const { return locality && gluing; }
};

/// Throws PresheafError unless the cover members union to the target.
SheafCheck sheaf_check(const FinitePresheaf& p, const std::vector<std::size_t>& cover, std::size_t target);
SheafCheck sheaf_check(const FinitePresheaf& p, const std::vector<std::string>& cover, const std::string& target);

enum class CoverKind { irredundant, all };

/// Covers of `target` by members, each a sorted list of member indices. An
/// irredundant cover has no member inside the union of the others.
std::vector<std::vector<std::size_t>> covers(const SetFamily& f, std::size_t target,
                                             CoverKind kind = CoverKind::irredundant);

struct SheafFailure {
    std::size_t target;
    std::vector<std::size_t> cover;
    SheafCheck check;
};

/// First failing (target, irredundant cover) pair, or nothing for a sheaf.
std::optional<SheafFailure> sheaf_failure(const FinitePresheaf& p);
bool is_sheaf(const FinitePresheaf& p);

/// Stalk at the smallest member containing x; throws if there is none.
const std::vector<std::string>& stalk_at(const FinitePresheaf& p, const Label& x);

/// Covariant functor on a poset: maps[p * n + q] sends sets[p] into sets[q] for p <= q.
struct Copresheaf {
    FinitePoset base;
    std::vector<std::vector<std::string>> sets;
    std::vector<std::vector<std::size_t>> maps;

    const std::vector<std::size_t>& map(std::size_t p, std::size_t q) const { return maps.at(p * base.size() + q); }
    friend bool operator==(const Copresheaf&, const Copresheaf&) = default;
};

/// Checks totality and functoriality; identity is the default for p <= p.
Copresheaf make_copresheaf(const FinitePoset& base, const std::map<Label, std::vector<std::string>>& sets,
                           const std::map<std::pair<Label, Label>, ElementMap>& maps);

/// Sheaf on alexandrov(base, up): F(V) is the set of compatible tuples over V,
/// labelled "(x1,x2,...)" in point order.
FinitePresheaf poset_transfer(const Copresheaf& f);
/// F(p) = stalk over the up-set of p, with the induced maps.
Copresheaf poset_transfer_inverse(const FinitePresheaf& s, const FinitePoset& base);

/// Presheaf of proper n-colorings over the connected subgraphs of an
/// undirected graph, ordered by inclusion of vertices and edges. Points are
/// vertex labels and edge ids; colorings are labelled "a=0,b=1".
FinitePresheaf ncolor(const std::vector<Label>& vertices, const std::vector<Edge>& edges, std::size_t n);

/// Possible values on V given that the value on U lies in `known`: the image in
/// stalk(V) of the sections over the whole space that restrict into `known`.
std::vector<std::string> predict(const FinitePresheaf& p, const std::string& u, const std::string& v,
                                 const std::vector<std::string>& known);

} // namespace sheafkit
