#include "cmc1/ramify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace cmc1 {

namespace {

constexpr double kValueTolerance = 1e-6;

template <class S>
bool same_value(const SpherePoint<S>& a, const SpherePoint<S>& b) {
  if constexpr (ScalarTraits<S>::exact) {
    return a == b;
  } else {
    return chordal_distance(a, b) < 1e-9;
  }
}

std::string format_point(const FloatPoint& p) {
  if (p.is_infinity()) return "inf";
  char buf[96];
  const Complex z = p.value();
  if (z.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.12g", z.real());
  } else {
    std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
  }
  return buf;
}

template <class S>
FloatPoint float_value(const RationalMap<S>& G, const FloatPoint& z) {
  if (z.is_infinity()) return eval(G, SpherePoint<S>::infinity()).approx();
  const Complex v = G.eval_complex(z.value());
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return FloatPoint::infinity();
  return FloatPoint(v);
}

template <class S>
void push_unique(std::vector<SpherePoint<S>>& list, const SpherePoint<S>& w) {
  for (const auto& s : list)
    if (same_value(s, w)) return;
  list.push_back(w);
}

}  // namespace

template <class S>
void PuncturedSphere<S>::validate() const {
  if (genus != 0) throw std::invalid_argument("function-level analysis supports genus 0 only");
  for (std::size_t i = 0; i < punctures.size(); ++i)
    for (std::size_t j = i + 1; j < punctures.size(); ++j)
      if (same_value(punctures[i], punctures[j]))
        throw std::invalid_argument("repeated puncture " + punctures[i].str());
}

// A value w is omitted iff all d of its preimages (with multiplicity) are
// punctures; such a w is G(p_j) for some puncture, so the candidates
// {G(p_j)} are exhaustive.
template <class S>
std::vector<ValueRecord> exceptional_values(const RationalMap<S>& G, const PuncturedSphere<S>& M) {
  if (G.is_constant()) throw std::domain_error("constant hyperbolic Gauss map");
  M.validate();
  const int d = G.degree();
  std::vector<SpherePoint<S>> seen;
  std::vector<ValueRecord> out;
  for (const auto& p : M.punctures) {
    const SpherePoint<S> w = eval(G, p);
    bool fresh = true;
    for (const auto& s : seen) fresh = fresh && !same_value(s, w);
    if (!fresh) continue;
    seen.push_back(w);
    int covered = 0;
    for (const auto& q : M.punctures)
      if (same_value(eval(G, q), w)) covered += local_multiplicity(G, q);
    if (covered > d) throw std::logic_error("punctured preimages of " + w.str() + " exceed the degree");
    if (covered == d) out.push_back({w.approx(), w.str(), 0});
  }
  return out;
}

// Off the critical values every value has d simple preimages, at most
// k of them punctured, so a totally ramified value is either a critical
// value or some G(p_j).
template <class S>
std::vector<ValueRecord> totally_ramified_values(const RationalMap<S>& G, const PuncturedSphere<S>& M) {
  if (G.is_constant()) throw std::domain_error("constant hyperbolic Gauss map");
  M.validate();
  const int d = G.degree();
  std::vector<ValueRecord> out;

  std::vector<SpherePoint<S>> anchored;
  push_unique(anchored, SpherePoint<S>::infinity());
  push_unique(anchored, eval(G, SpherePoint<S>::infinity()));
  for (const auto& p : M.punctures) push_unique(anchored, eval(G, p));

  for (const auto& w : anchored) {
    std::vector<Preimage> pre = preimages(G, w);
    std::vector<bool> removed(pre.size(), false);
    for (const auto& p : M.punctures) {
      if (!same_value(eval(G, p), w)) continue;
      const int m = local_multiplicity(G, p);
      std::size_t best = pre.size();
      double best_dist = kValueTolerance;
      for (std::size_t i = 0; i < pre.size(); ++i) {
        if (removed[i]) continue;
        const double dist = chordal_distance(pre[i].point, p.approx());
        if (dist < best_dist) {
          best_dist = dist;
          best = i;
        }
      }
      if (best == pre.size() || pre[best].multiplicity != m)
        throw std::logic_error("puncture " + p.str() + " not matched among preimages of " + w.str());
      removed[best] = true;
    }
    int nu = 0;
    for (std::size_t i = 0; i < pre.size(); ++i)
      if (!removed[i]) nu = nu == 0 ? pre[i].multiplicity : std::min(nu, pre[i].multiplicity);
    if (nu >= 2) out.push_back({w.approx(), w.str(), nu});
  }

  struct Group {
    FloatPoint value;
    int covered = 0;
    int nu = 0;
  };
  std::vector<Group> groups;
  for (const BranchPoint& b : branch_points(G)) {
    const FloatPoint v = float_value(G, b.point);
    bool known = false;
    for (const auto& w : anchored) known = known || chordal_distance(v, w.approx()) < kValueTolerance;
    if (known) continue;
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const Group& g) { return chordal_distance(g.value, v) < kValueTolerance; });
    if (it == groups.end()) {
      groups.push_back({v, b.order + 1, b.order + 1});
    } else {
      it->covered += b.order + 1;
      it->nu = std::min(it->nu, b.order + 1);
    }
  }
  for (const auto& g : groups) {
    if (g.covered > d) throw std::logic_error("critical points over " + format_point(g.value) + " exceed the degree");
    if (g.covered == d) out.push_back({g.value, format_point(g.value), g.nu});
  }
  return out;
}

template <class S>
RamificationReport nu_value(const RationalMap<S>& G, const PuncturedSphere<S>& M) {
  RamificationReport r;
  r.degree = G.degree();
  r.ends = static_cast<int>(M.punctures.size());
  r.exceptional = exceptional_values(G, M);
  r.ramified = totally_ramified_values(G, M);
  r.nu = Rational(r.d_g());
  for (const auto& v : r.ramified) r.nu += Rational(1) - Rational(1, v.nu);
  r.nu.canonicalize();
  const OssermanBound b = osserman_bound(M.genus, r.ends, r.degree, false);
  r.ratio = b.ratio;
  r.bound = b.bound;
  r.bound_valid = b.valid;
  return r;
}

OssermanBound osserman_bound(int genus, int k, int d, bool algebraic) {
  if (d < 1) throw std::invalid_argument("degree must be positive");
  if (k < 0 || genus < 0) throw std::invalid_argument("genus and end count must be nonnegative");
  OssermanBound b;
  b.ratio = Rational(2 * genus - 2 + k, 2 * d);
  b.ratio.canonicalize();
  b.bound = 2 + 2 * b.ratio;
  b.valid = algebraic ? b.ratio < 1 : b.ratio <= 1;
  return b;
}

DivisorConsistency divisor_consistency(const DivisorData& D, bool algebraic) {
  DivisorConsistency c;
  if (D.degree < 1) c.violations.push_back("degree must be positive");
  long sum = 0;
  for (std::size_t j = 0; j < D.ends.size(); ++j) {
    const long gap = static_cast<long>(D.ends[j].mu_sharp) - D.ends[j].d_j;
    sum += gap;
    if (D.ends[j].mu_sharp < 0) c.violations.push_back("end " + std::to_string(j) + ": negative branching order");
    if (gap < 1) {
      c.complete = false;
      c.violations.push_back("end " + std::to_string(j) + ": mu - d_j = " + std::to_string(gap) + " < 1");
    }
    if (gap < 2) {
      c.algebraic_type = false;
      if (algebraic && gap >= 1)
        c.violations.push_back("end " + std::to_string(j) + ": mu - d_j = " + std::to_string(gap) + " < 2");
    }
  }
  c.lhs = 2L * D.degree - sum;
  c.rhs = 2L * D.genus - 2;
  if (c.lhs != c.rhs) {
    c.consistent = false;
    c.violations.push_back("2d - sum(mu - d_j) = " + std::to_string(c.lhs) + ", expected " + std::to_string(c.rhs));
  }
  const long k = static_cast<long>(D.ends.size());
  c.degree_bound = 2L * D.degree >= 2L * D.genus - 2 + k;
  c.algebraic_degree_bound = D.degree >= static_cast<long>(D.genus) - 1 + k;
  if (!c.degree_bound) c.violations.push_back("d < genus - 1 + k/2");
  if (algebraic && !c.algebraic_degree_bound) c.violations.push_back("d < genus - 1 + k");
  return c;
}

int max_exceptional_bound(int genus, bool has_nonembedded_end) {
  if (genus == 0) return 2;
  if (genus == 1 && has_nonembedded_end) return 2;
  return 3;
}

FaceInequality face_inequality(int genus, int k, int d) {
  if (d < 1) throw std::invalid_argument("degree must be positive");
  FaceInequality f;
  const long lhs = 2L * d, rhs = 2L * genus - 2 + 2L * k;
  f.holds = lhs >= rhs;
  f.equality = lhs == rhs;
  f.face_bound = osserman_bound(genus, k, d, true);
  f.max_exceptional = 3;
  return f;
}

template struct PuncturedSphere<Complex>;
template struct PuncturedSphere<GaussRational>;

#define CMC1_INSTANTIATE(S)                                                                        \
  template std::vector<ValueRecord> exceptional_values(const RationalMap<S>&, const PuncturedSphere<S>&);      \
  template std::vector<ValueRecord> totally_ramified_values(const RationalMap<S>&, const PuncturedSphere<S>&); \
  template RamificationReport nu_value(const RationalMap<S>&, const PuncturedSphere<S>&);

CMC1_INSTANTIATE(Complex)
CMC1_INSTANTIATE(GaussRational)

#undef CMC1_INSTANTIATE

}  // namespace cmc1
