#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "horomink/geometry.hpp"

namespace horomink {

struct Atom {
  Direction e;
  double a;
};

/// mu = sum_i a_i delta_{e_i} on S^n. Even measures keep the layout
/// "atom m+i is the antipode of atom i".
struct DiscreteMeasure {
  int n = 1;
  std::vector<Atom> atoms;
  bool even = false;

  std::size_t size() const { return atoms.size(); }
  std::size_t half() const { return atoms.size() / 2; }

  static DiscreteMeasure even_from_half(const std::vector<Direction>& half, const std::vector<double>& weights) {
    if (half.size() != weights.size() || half.empty()) throw SpecError("direction and weight counts differ");
    DiscreteMeasure mu;
    mu.n = half.front().sphere_dim();
    mu.even = true;
    for (std::size_t i = 0; i < half.size(); ++i) mu.atoms.push_back({half[i], weights[i]});
    for (std::size_t i = 0; i < half.size(); ++i) mu.atoms.push_back({-half[i], weights[i]});
    mu.validate();
    return mu;
  }

  /// Throws SpecError for malformed atoms and NotEven when flagged even but
  /// not laid out as antipodal pairs of equal weight.
  void validate() const {
    if (atoms.empty()) throw SpecError("measure has no atoms");
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (atoms[i].e.sphere_dim() != n) throw SpecError("atom " + std::to_string(i) + " has the wrong dimension");
      if (!(atoms[i].a > 0.0) || !std::isfinite(atoms[i].a))
        throw SpecError("atom " + std::to_string(i) + " weight must be positive");
      for (std::size_t j = 0; j < i; ++j)
        if ((atoms[i].e.vec() - atoms[j].e.vec()).norm() < 1e-9)
          throw SpecError("atoms " + std::to_string(j) + " and " + std::to_string(i) + " share a direction");
    }
    if (even && !is_even_layout()) throw NotEven("measure is flagged even but atoms are not antipodal pairs");
  }

  bool is_even_layout() const {
    if (atoms.size() % 2 != 0) return false;
    const std::size_t m = half();
    for (std::size_t i = 0; i < m; ++i) {
      if ((atoms[i].e.vec() + atoms[m + i].e.vec()).norm() > 1e-9) return false;
      if (std::abs(atoms[i].a - atoms[m + i].a) > 1e-9 * std::max(1.0, atoms[i].a)) return false;
    }
    return true;
  }
};

/// Reorders an antipodally invariant measure into the paired layout.
/// Throws NotEven if some atom has no antipode of equal weight.
inline DiscreteMeasure pair_even(const DiscreteMeasure& mu) {
  const std::size_t count = mu.atoms.size();
  if (count % 2 != 0) throw NotEven("an even measure has an even number of atoms");
  std::vector<bool> used(count, false);
  std::vector<Atom> first, second;
  for (std::size_t i = 0; i < count; ++i) {
    if (used[i]) continue;
    used[i] = true;
    bool found = false;
    for (std::size_t j = i + 1; j < count; ++j) {
      if (used[j]) continue;
      if ((mu.atoms[i].e.vec() + mu.atoms[j].e.vec()).norm() <= 1e-9 &&
          std::abs(mu.atoms[i].a - mu.atoms[j].a) <= 1e-9 * std::max(1.0, mu.atoms[i].a)) {
        used[j] = true;
        first.push_back(mu.atoms[i]);
        second.push_back({-mu.atoms[i].e, mu.atoms[i].a});
        found = true;
        break;
      }
    }
    if (!found) throw NotEven("atom " + std::to_string(i) + " has no antipodal partner of equal weight");
  }
  DiscreteMeasure out;
  out.n = mu.n;
  out.even = true;
  out.atoms = first;
  out.atoms.insert(out.atoms.end(), second.begin(), second.end());
  return out;
}

}  // namespace horomink
