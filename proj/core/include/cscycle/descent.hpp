#pragma once

// Integer linear algebra for components: translation to linear systems over
// the integers, exact solving (particular solution plus a basis of the
// homogeneous solutions), bounded search for natural solutions, and the
// construction of infinite strictly descending integer solution sequences
// from a pair of solutions.

#include <optional>
#include <string>
#include <vector>

#include "cscycle/normalize.hpp"
#include "cscycle/syntax.hpp"

namespace csc {

struct LinearRow {
  std::vector<long long> coeffs;
  long long rhs = 0;
};

struct LinSystem {
  std::vector<std::string> vars;  // free variables first, then bound ones
  std::vector<LinearRow> rows;    // one per positive literal
};

/// A negative literal as the affine form coeffs . x + constant != 0.
struct NegConstraint {
  std::vector<long long> coeffs;
  long long constant = 0;
};

/// Linearizes a 0-free p-free component: s counts as +1, + adds coefficient
/// vectors; positive literals become rows, negative ones become constraints.
std::pair<LinSystem, std::vector<NegConstraint>> linearize_component(const Component& chi);

struct ZSolution {
  bool consistent = false;
  std::vector<long long> particular;         // empty when inconsistent
  std::vector<std::vector<long long>> basis;  // lattice basis of A x = 0
};

/// Integer solution of the system by unimodular column elimination. The basis
/// spans the homogeneous solutions whether or not the system is consistent.
ZSolution solve_linear_system(const LinSystem& sys);

struct NaturalSolution {
  long long value = 0;                // the free variable
  std::vector<long long> witness;     // full vector in system variable order
};

/// All d in [0..bound] such that the component holds at d in the standard
/// model, with the first witness tuple found; existential variables are
/// searched up to bound plus a slack of twice the largest successor tower in
/// the component. The component must have exactly one free variable.
std::vector<NaturalSolution> natural_solutions(const Component& chi, long long bound);

struct DescentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DescendingSequence {
  std::vector<long long> head_values;          // strictly descending
  std::vector<long long> difference;           // h0 = sol1 - sol2
  long long threshold = 0;                     // first multiplier used
  std::vector<std::vector<long long>> vectors; // full solution vectors
};

/// From two full solution vectors with sol1[0] < sol2[0], the sequence of
/// first coordinates of m*h0 + sol1 for m = threshold .. threshold+length-1,
/// where the threshold skips every root of the negative constraints along the
/// line. Every emitted vector is checked to satisfy the system exactly.
DescendingSequence descending_sequence(const Component& chi,
                                       const std::vector<long long>& sol1,
                                       const std::vector<long long>& sol2, std::size_t length);

struct DescentResult {
  std::size_t component_index = 0;
  Component component;
  std::vector<long long> sol1, sol2;
  DescendingSequence sequence;
};

/// Picks the lowest-index component with two natural solutions below the
/// bound and builds its descending integer sequence. Throws DescentError when
/// no component has two solutions within the bound.
DescentResult descent_for_formula(const Formula& phi, long long bound, std::size_t length);

}  // namespace csc
