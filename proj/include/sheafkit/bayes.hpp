/**
 * @file bayes.hpp
 * Discrete Bayesian networks as a paired cosheaf and partial sheaf.
 *
 * The cosheaf lives on the full simplex over the variables (vertex order is
 * the listed variable order). The stalk over a face is the space of joint
 * distributions of its variables, flattened row-major over the face's
 * variables with outcomes in listed order; corestrictions sum out one
 * variable. Each variable contributes one conditional map from its parents'
 * face to its family face.
 */
#pragma once

#include "sheafkit/cellsheaf.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sheafkit {

class BayesError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

constexpr std::size_t kBayesJointLimit = 4096;

struct BayesVariable {
    std::string name;
    std::vector<std::string> outcomes;
    std::vector<std::string> parents;
    /// One row per parent configuration (row-major over parents as listed),
    /// one column per outcome. A root has a single row.
    RationalMatrix cpt;
};

struct BayesModel {
    std::vector<BayesVariable> variables;
};

/// Throws BayesError: unknown or repeated names, a cycle, a CPT of the wrong
/// shape, a negative entry, a row not summing to 1, or a joint over the limit.
void validate_bayes(const BayesModel& m);

/// P(family) = map * P(parents); for a root the source is the one-point space.
struct ConditionalComponent {
    std::string variable;
    std::optional<FaceId> parents;
    FaceId family;
    RationalMatrix map;
};

struct BayesBuild {
    CellularSheaf cosheaf;
    std::vector<ConditionalComponent> conditionals;
    RationalVector joint;
};

BayesBuild bayes_build(const BayesModel& m);

/// Summation matrix from the joint of `vars` onto the joint of `keep` (a
/// sublist of `vars` in the same order); `sizes` are the outcome counts of `vars`.
RationalMatrix marginalization_matrix(const std::vector<std::size_t>& sizes, const std::vector<std::size_t>& keep);

struct BayesReport {
    bool ok = true;
    std::vector<std::string> failures;
};

/// Checks a candidate joint against the model: path independence of the
/// cosheaf, the directly summed marginals forming a cosheaf section, every
/// conditional component, and the product formula.
BayesReport bayes_check(const BayesModel& m, const RationalVector& joint);
BayesReport bayes_check(const BayesModel& m);

} // namespace sheafkit
