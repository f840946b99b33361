#include "sheafkit/bayes.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace sheafkit {

namespace {

// Row-major digits of `index` over `sizes`.
std::vector<std::size_t> digits(std::size_t index, const std::vector<std::size_t>& sizes) {
    std::vector<std::size_t> d(sizes.size());
    for (std::size_t i = sizes.size(); i-- > 0;) {
        d[i] = index % sizes[i];
        index /= sizes[i];
    }
    return d;
}

std::size_t flatten(const std::vector<std::size_t>& d, const std::vector<std::size_t>& sizes) {
    std::size_t index = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) index = index * sizes[i] + d[i];
    return index;
}

std::size_t product(const std::vector<std::size_t>& sizes) {
    std::size_t p = 1;
    for (auto s : sizes) p *= s;
    return p;
}

std::map<std::string, std::size_t> positions(const BayesModel& m) {
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < m.variables.size(); ++i) pos[m.variables[i].name] = i;
    return pos;
}

std::vector<std::size_t> sizes_of(const BayesModel& m, const Simplex& vars) {
    std::vector<std::size_t> out;
    for (auto v : vars) out.push_back(m.variables[v].outcomes.size());
    return out;
}

// Marginal of the full joint on a set of variables, summed entry by entry.
RationalVector marginal(const BayesModel& m, const RationalVector& joint, const Simplex& vars) {
    Simplex all(m.variables.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    auto full = sizes_of(m, all), part = sizes_of(m, vars);
    RationalVector out = RationalVector::Constant(static_cast<Eigen::Index>(product(part)), Rational(0));
    for (std::size_t j = 0; j < product(full); ++j) {
        auto d = digits(j, full);
        std::vector<std::size_t> k;
        for (auto v : vars) k.push_back(d[v]);
        out(static_cast<Eigen::Index>(flatten(k, part))) += joint(static_cast<Eigen::Index>(j));
    }
    return out;
}

} // namespace

RationalMatrix marginalization_matrix(const std::vector<std::size_t>& sizes, const std::vector<std::size_t>& keep) {
    std::vector<std::size_t> kept;
    for (auto k : keep) {
        if (k >= sizes.size()) throw BayesError("kept variable out of range");
        kept.push_back(sizes[k]);
    }
    if (!std::is_sorted(keep.begin(), keep.end()) || std::adjacent_find(keep.begin(), keep.end()) != keep.end())
        throw BayesError("kept variables must be increasing");
    RationalMatrix out = zeros(static_cast<Eigen::Index>(product(kept)), static_cast<Eigen::Index>(product(sizes)));
    for (std::size_t j = 0; j < product(sizes); ++j) {
        auto d = digits(j, sizes);
        std::vector<std::size_t> k;
        for (auto i : keep) k.push_back(d[i]);
        out(static_cast<Eigen::Index>(flatten(k, kept)), static_cast<Eigen::Index>(j)) = Rational(1);
    }
    return out;
}

void validate_bayes(const BayesModel& m) {
    if (m.variables.empty()) throw BayesError("model has no variables");
    if (m.variables.size() > 12) throw BayesError("models are limited to 12 variables");
    auto pos = positions(m);
    if (pos.size() != m.variables.size()) throw BayesError("repeated variable name");
    std::size_t joint = 1;
    for (const auto& v : m.variables) {
        if (v.outcomes.empty()) throw BayesError("variable '" + v.name + "' has no outcomes");
        if (std::set<std::string>(v.outcomes.begin(), v.outcomes.end()).size() != v.outcomes.size())
            throw BayesError("variable '" + v.name + "' repeats an outcome");
        joint *= v.outcomes.size();
        if (joint > kBayesJointLimit)
            throw BayesError("joint distribution exceeds " + std::to_string(kBayesJointLimit) + " entries");
    }
    for (const auto& v : m.variables) {
        std::set<std::string> seen;
        std::size_t rows = 1;
        for (const auto& p : v.parents) {
            if (!pos.count(p)) throw BayesError("variable '" + v.name + "' has unknown parent '" + p + "'");
            if (p == v.name) throw BayesError("variable '" + v.name + "' is its own parent");
            if (!seen.insert(p).second) throw BayesError("variable '" + v.name + "' repeats parent '" + p + "'");
            rows *= m.variables[pos[p]].outcomes.size();
        }
        if (v.cpt.rows() != static_cast<Eigen::Index>(rows) || v.cpt.cols() != static_cast<Eigen::Index>(v.outcomes.size()))
            throw BayesError("table for '" + v.name + "' is " + std::to_string(v.cpt.rows()) + "x" +
                             std::to_string(v.cpt.cols()) + ", expected " + std::to_string(rows) + "x" +
                             std::to_string(v.outcomes.size()));
        for (Eigen::Index r = 0; r < v.cpt.rows(); ++r) {
            Rational sum(0);
            for (Eigen::Index c = 0; c < v.cpt.cols(); ++c) {
                if (v.cpt(r, c).sign() < 0) throw BayesError("table for '" + v.name + "' has a negative entry");
                sum += v.cpt(r, c);
            }
            if (sum != Rational(1))
                throw BayesError("row " + std::to_string(r) + " of the table for '" + v.name + "' sums to " + sum.str());
        }
    }
    // Kahn's algorithm on parent -> child edges
    std::vector<std::size_t> indegree(m.variables.size());
    for (std::size_t i = 0; i < m.variables.size(); ++i) indegree[i] = m.variables[i].parents.size();
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < indegree.size(); ++i)
        if (!indegree[i]) ready.push_back(i);
    std::size_t done = 0;
    while (!ready.empty()) {
        auto v = ready.back();
        ready.pop_back();
        ++done;
        for (std::size_t c = 0; c < m.variables.size(); ++c)
            for (const auto& p : m.variables[c].parents)
                if (p == m.variables[v].name && --indegree[c] == 0) ready.push_back(c);
    }
    if (done != m.variables.size()) throw BayesError("parent relation has a cycle");
}

BayesBuild bayes_build(const BayesModel& m) {
    validate_bayes(m);
    const std::size_t n = m.variables.size();
    auto pos = positions(m);
    std::vector<Label> names;
    for (const auto& v : m.variables) names.push_back(v.name);
    auto c = validate_complex(names, {names});

    std::vector<Eigen::Index> dims;
    for (FaceId f = 0; f < c.face_count(); ++f) dims.push_back(static_cast<Eigen::Index>(product(sizes_of(m, c.face(f)))));
    std::map<Attachment, RationalMatrix> maps;
    for (FaceId t = 0; t < c.face_count(); ++t)
        for (auto sg : c.facets(t)) {
            const auto& big = c.face(t);
            std::vector<std::size_t> keep;
            for (std::size_t i = 0; i < big.size(); ++i)
                if (std::binary_search(c.face(sg).begin(), c.face(sg).end(), big[i])) keep.push_back(i);
            maps[{sg, t}] = marginalization_matrix(sizes_of(m, big), keep);
        }
    BayesBuild out{CellularSheaf(c, dims, maps, Variance::cosheaf), {}, {}};

    for (std::size_t x = 0; x < n; ++x) {
        const auto& v = m.variables[x];
        Simplex pa;
        std::vector<std::size_t> listed_sizes;
        for (const auto& p : v.parents) {
            pa.push_back(pos[p]);
            listed_sizes.push_back(m.variables[pos[p]].outcomes.size());
        }
        Simplex pa_sorted = pa;
        std::sort(pa_sorted.begin(), pa_sorted.end());
        Simplex fam = pa_sorted;
        fam.insert(std::lower_bound(fam.begin(), fam.end(), x), x);
        auto fam_sizes = sizes_of(m, fam), pa_sizes = sizes_of(m, pa_sorted);
        RationalMatrix map = zeros(static_cast<Eigen::Index>(product(fam_sizes)), static_cast<Eigen::Index>(product(pa_sizes)));
        for (std::size_t j = 0; j < product(fam_sizes); ++j) {
            auto d = digits(j, fam_sizes);
            std::map<std::size_t, std::size_t> val;
            for (std::size_t i = 0; i < fam.size(); ++i) val[fam[i]] = d[i];
            std::vector<std::size_t> pd, listed;
            for (auto p : pa_sorted) pd.push_back(val[p]);
            for (auto p : pa) listed.push_back(val[p]);
            map(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(flatten(pd, pa_sizes))) =
                v.cpt(static_cast<Eigen::Index>(flatten(listed, listed_sizes)), static_cast<Eigen::Index>(val[x]));
        }
        std::optional<FaceId> src;
        if (!pa_sorted.empty()) src = *c.find(pa_sorted);
        out.conditionals.push_back({v.name, src, *c.find(fam), map});
    }

    Simplex all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    auto sizes = sizes_of(m, all);
    out.joint = RationalVector::Constant(static_cast<Eigen::Index>(product(sizes)), Rational(0));
    for (std::size_t j = 0; j < product(sizes); ++j) {
        auto d = digits(j, sizes);
        Rational p(1);
        for (std::size_t x = 0; x < n; ++x) {
            std::vector<std::size_t> listed, ls;
            for (const auto& q : m.variables[x].parents) {
                listed.push_back(d[pos[q]]);
                ls.push_back(sizes[pos[q]]);
            }
            p *= m.variables[x].cpt(static_cast<Eigen::Index>(flatten(listed, ls)), static_cast<Eigen::Index>(d[x]));
        }
        out.joint(static_cast<Eigen::Index>(j)) = p;
    }
    return out;
}

BayesReport bayes_check(const BayesModel& m, const RationalVector& joint) {
    auto b = bayes_build(m);
    BayesReport out;
    auto fail = [&](std::string msg) {
        out.ok = false;
        out.failures.push_back(std::move(msg));
    };
    if (joint.size() != b.joint.size()) {
        fail("joint has " + std::to_string(joint.size()) + " entries, expected " + std::to_string(b.joint.size()));
        return out;
    }
    const auto& c = b.cosheaf.base();
    auto rep = validate_sheaf(b.cosheaf);
    if (!rep.ok) fail("marginalization is path dependent: " + rep.message);

    Assignment marg;
    for (FaceId f = 0; f < c.face_count(); ++f) marg.values[f] = marginal(m, joint, c.face(f));
    for (const auto& a : is_global_section(b.cosheaf, marg).violations)
        fail("marginals disagree along " + attachment_name(c, a));

    for (const auto& k : b.conditionals) {
        RationalVector src = k.parents ? marg.values.at(*k.parents) : RationalVector::Constant(1, Rational(1));
        if (matmul(k.map, src) != marg.values.at(k.family))
            fail("conditional table for '" + k.variable + "' does not reproduce the marginal on " + c.name(k.family));
    }
    if (joint != b.joint) fail("joint differs from the product of the conditional tables");
    return out;
}

BayesReport bayes_check(const BayesModel& m) { return bayes_check(m, bayes_build(m).joint); }

} // namespace sheafkit
