#pragma once

// Cohomology of Z(P) = Hom(P^gp, Z) with coefficients in L_lambda = t^{-lambda} B
// tensored with the log variables T_1..T_r. The module splits by the class c of
// the monomial S^mu: the class-c part is B_c tensor Q[T], on which the dual
// basis element g_i acts by the phase e^{2 pi i (c - lambda)_i} times the
// shift T_i -> T_i + 1 (after rescaling T by 2 pi i).

#include "logpar/ringb.hpp"
#include "logpar/scalar_field.hpp"
#include "logpar/weights.hpp"

#include <string>
#include <vector>

namespace logpar {

enum class CohomologyMethod { Recursion, Koszul, Both };

struct CohomologyOptions {
  CohomologyMethod method = CohomologyMethod::Both;
  bool log_variables = true;
  // Koszul slices T-degree <= d for each listed d; empty means {r+2, r+3}.
  std::vector<int> truncations;
  // Irrational Lambda: classes reached with at most this many irrational generators.
  int level_window = 2;
};

// One Koszul slice: dims of H^m on T-degree <= d, and whether each class
// survives into slice d+1 (entry m is true when H^m(d) -> H^m(d+1) is zero).
struct KoszulSlice {
  int truncation = 0;
  std::vector<Index> dims;
  std::vector<bool> transition_vanishes;
};

// Cohomology of Z^r with coefficients in Q[T] (or Q without log variables)
// twisted by the character with the given phases.
struct CharacterCohomology {
  bool trivial = false;
  std::vector<Index> recursion;  // empty if not computed
  std::vector<KoszulSlice> slices;
};

std::vector<Index> cohomology_by_recursion(const std::vector<PhaseClass>& phases, bool log_variables);
KoszulSlice cohomology_by_koszul(const std::vector<PhaseClass>& phases, bool log_variables, int truncation);

struct ClassCohomology {
  Weight monomial_class;
  std::vector<PhaseClass> phases;
  Index multiplicity = 0;  // dim over Q of B_c
  CharacterCohomology character;
};

struct CohomologyReport {
  Weight lambda;
  int rank = 0;
  bool log_variables = true;
  CohomologyMethod method = CohomologyMethod::Both;
  std::vector<Index> dims;  // total over the scanned classes, from the stable answer
  std::vector<ClassCohomology> classes;
  // Every class was scanned (always so for rational Lambda).
  bool complete = true;
  std::string bound;  // names the class window when incomplete
  // With log variables: every slice transition vanishes in positive degree.
  bool stabilized = true;
};

// Throws MethodDisagreement if recursion and Koszul contradict.
CohomologyReport group_cohomology(const RingB& ring, const Weight& lambda, const CohomologyOptions& options = {});

std::string to_string(CohomologyMethod method);

}  // namespace logpar
