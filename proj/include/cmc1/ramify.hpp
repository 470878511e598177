#pragma once

#include <string>
#include <vector>

#include "cmc1/algebra.hpp"

namespace cmc1 {

/// Compact genus-0 surface minus finitely many ends.
template <class S>
struct PuncturedSphere {
  std::vector<SpherePoint<S>> punctures;
  int genus = 0;

  /// Throws std::invalid_argument on a repeated puncture.
  void validate() const;
};

/// Integer divisor bookkeeping at the ends; usable for any genus.
struct DivisorEnd {
  int mu_sharp = 0;
  int d_j = 0;
};

struct DivisorData {
  int genus = 0;
  std::vector<DivisorEnd> ends;
  int degree = 1;
};

struct DivisorConsistency {
  bool consistent = true;       // 2d - sum(mu - d_j) == 2 genus - 2
  bool complete = true;         // every mu - d_j >= 1
  bool algebraic_type = true;   // every mu - d_j >= 2
  bool degree_bound = true;     // d >= genus - 1 + k/2
  bool algebraic_degree_bound = true;  // d >= genus - 1 + k
  long lhs = 0;                 // 2d - sum(mu - d_j)
  long rhs = 0;                 // 2 genus - 2
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// A value on the target sphere with a printable exact or numeric label.
struct ValueRecord {
  FloatPoint value = FloatPoint::infinity();
  std::string label;
  int nu = 0;  // minimum multiplicity over preimages in M (0 for omitted values)
};

struct OssermanBound {
  Rational ratio;  // 1/R
  Rational bound;  // 2 + 2/R
  bool valid = false;
};

struct RamificationReport {
  int degree = 0;
  int ends = 0;
  std::vector<ValueRecord> exceptional;
  std::vector<ValueRecord> ramified;
  Rational nu;
  Rational ratio;
  Rational bound;
  bool bound_valid = false;

  int d_g() const { return static_cast<int>(exceptional.size()); }
};

struct FaceInequality {
  bool holds = false;     // 2d >= 2 genus - 2 + 2k
  bool equality = false;
  OssermanBound face_bound;  // strict 1/R < 1
  int max_exceptional = 3;
};

template <class S>
std::vector<ValueRecord> exceptional_values(const RationalMap<S>& G, const PuncturedSphere<S>& M);

template <class S>
std::vector<ValueRecord> totally_ramified_values(const RationalMap<S>& G, const PuncturedSphere<S>& M);

template <class S>
RamificationReport nu_value(const RationalMap<S>& G, const PuncturedSphere<S>& M);

/// Throws std::invalid_argument when d < 1 or k < 0.
OssermanBound osserman_bound(int genus, int k, int d, bool algebraic);

DivisorConsistency divisor_consistency(const DivisorData& D, bool algebraic);

int max_exceptional_bound(int genus, bool has_nonembedded_end);

FaceInequality face_inequality(int genus, int k, int d);

}  // namespace cmc1
