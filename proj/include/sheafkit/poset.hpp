/**
 * @file poset.hpp
 * Finite posets with an explicit order closure, downsets, Alexandrov
 * topologies and finite families of point sets.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sheafkit {

typedef std::string Label;
typedef std::vector<Label> LabelSet;  // sorted, duplicate free
typedef std::map<Label, Label> Mapping;
typedef std::uint64_t PointMask;

inline constexpr std::size_t kDefaultPowerSetLimit = 16;

class PosetError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class FinitePoset {
public:
    FinitePoset() = default;

    /// Builds the poset on `labels` ordered by `leq` on label indices as given
    /// (labels are re-sorted afterwards). Throws PosetError unless `leq` is a
    /// partial order.
    static FinitePoset from_order(std::vector<Label> labels, const std::function<bool(std::size_t, std::size_t)>& leq);

    std::size_t size() const { return labels_.size(); }
    const std::vector<Label>& elements() const { return labels_; }
    const Label& label(std::size_t i) const { return labels_.at(i); }
    std::size_t index(const Label& l) const;
    bool contains(const Label& l) const { return index_.count(l) != 0; }

    bool leq(std::size_t a, std::size_t b) const { return leq_[a * labels_.size() + b] != 0; }
    bool leq(const Label& a, const Label& b) const { return leq(index(a), index(b)); }

    /// Every (x, y) with x <= y, including reflexive pairs.
    std::vector<std::pair<Label, Label>> relation() const;
    /// Covering pairs (x, y): x < y with nothing strictly between.
    std::vector<std::pair<std::size_t, std::size_t>> covers() const;

    FinitePoset dual() const;

    std::optional<std::size_t> join(const std::vector<std::size_t>& xs) const;
    std::optional<std::size_t> meet(const std::vector<std::size_t>& xs) const;
    bool is_lattice() const;

    friend bool operator==(const FinitePoset&, const FinitePoset&) = default;

private:
    std::vector<Label> labels_;
    std::map<Label, std::size_t> index_;
    std::vector<char> leq_;
};

FinitePoset validate_poset(const std::vector<Label>& elements, const std::vector<std::pair<Label, Label>>& relation);

LabelSet principal_down(const FinitePoset& p, const Label& x);
LabelSet principal_up(const FinitePoset& p, const Label& x);

/// "{}", "{a,b}".
std::string set_label(const LabelSet& s);

/// Downward-closed subsets in canonical order (size, then lexicographic).
std::vector<LabelSet> downsets(const FinitePoset& p, std::size_t limit = kDefaultPowerSetLimit);
/// The downset lattice ordered by inclusion; elements are labelled with set_label.
FinitePoset all_downsets(const FinitePoset& p, std::size_t limit = kDefaultPowerSetLimit);

bool is_monotone(const FinitePoset& p, const FinitePoset& q, const Mapping& f);

bool yoneda_check(const FinitePoset& p, std::size_t limit = kDefaultPowerSetLimit);

/// A finite family of distinct named subsets of a point set, ordered by inclusion.
/// Presheaves live over one of these; a topology is the closed special case.
class SetFamily {
public:
    SetFamily() = default;
    SetFamily(std::vector<Label> points, std::vector<std::pair<std::string, LabelSet>> members);

    const std::vector<Label>& points() const { return points_; }
    std::size_t point_index(const Label& p) const;
    std::size_t size() const { return masks_.size(); }
    PointMask mask(std::size_t i) const { return masks_.at(i); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    std::size_t index(const std::string& name) const;
    std::optional<std::size_t> find(PointMask m) const;
    LabelSet members(std::size_t i) const { return labels_of(masks_.at(i)); }
    LabelSet labels_of(PointMask m) const;
    PointMask mask_of(const LabelSet& s) const;
    PointMask full_mask() const;
    bool subset(std::size_t a, std::size_t b) const { return (masks_[a] & ~masks_[b]) == 0; }

    friend bool operator==(const SetFamily&, const SetFamily&) = default;

protected:
    std::vector<Label> points_;
    std::vector<PointMask> masks_;
    std::vector<std::string> names_;
    std::map<PointMask, std::size_t> lookup_;
};

enum class Direction { up, down };

class FiniteTopology : public SetFamily {
public:
    FiniteTopology() = default;
    /// Throws PosetError if the family misses the empty set or the whole space,
    /// or is not closed under pairwise union and intersection.
    FiniteTopology(std::vector<Label> points, std::vector<std::pair<std::string, LabelSet>> opens);
    /// Opens are named by set_label of their points.
    FiniteTopology(std::vector<Label> points, const std::vector<LabelSet>& opens);

    std::size_t empty_open() const { return *find(0); }
    std::size_t whole() const { return *find(full_mask()); }
    /// Intersection of all opens containing x; an open in any finite topology.
    std::size_t minimal_open(const Label& x) const;

private:
    struct Trusted {};
    FiniteTopology(Trusted, std::vector<Label> points, const std::vector<LabelSet>& opens);
    friend FiniteTopology alexandrov(const FinitePoset&, Direction, std::size_t);
};

FiniteTopology alexandrov(const FinitePoset& p, Direction dir, std::size_t limit = kDefaultPowerSetLimit);

} // namespace sheafkit
