#pragma once

#include "permbal/arith.hpp"
#include "permbal/permutation.hpp"
#include "permbal/points.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace permbal {

// Stops the bubble path from the identity toward the descending permutation
// as soon as #21 = C(n,2)/2. Throws Error(Inadmissible) unless n = 0, 1 mod 4.
Permutation two_balanced(int n);

enum class Parity { Even, Odd };

// sigma's points sit at (m+i, sigma(i)); the result is their orbit under the
// quarter turn of [n]^2, n = 4m, plus the centre (2m+1, 2m+1) when odd.
Permutation rotate_close(const Permutation& sigma, Parity parity);

// Three descending runs of length ell placed in ascending order.
PointSet base_segments(int ell);

// Base segments with ell = 3t+1 plus the residue's extra points. The odd
// residues describe sigma for a permutation with a centre point.
struct SigmaRecipe {
  int residue = 0;
  int t = 0;
  int ell = 0;
  Parity parity = Parity::Even;
  PointSet points;
};

inline constexpr int kThreeBalancedResidues[] = {0, 1, 9, 20, 28, 29};

// Smallest t each recipe is used from; below it the stored table takes over.
int recipe_minimum_t(int residue);
// Throws Error(ResidueUnknown) or Error(TBelowMinimum).
SigmaRecipe sigma_recipe(int residue, int t);
Permutation sigma_for_residue(int residue, int t);
// Recipe geometry without the minimum-t check, for scanning small t.
SigmaRecipe sigma_recipe_unchecked(int residue, int t);

// Left minus right side of the balance equation for sigma, which vanishes
// exactly when rotate_close(sigma, parity) is 3-balanced. For even parity:
// 3#123 + 3#321 + 3m#12 - C(m,3) - m^3; the odd variant accounts for the
// triples through the centre.
BigInt sigma_discrepancy(const Permutation& sigma, Parity parity);

// The orders recipes are parameterised by: residue = n mod 36 and t.
struct ResiduePlan {
  int residue = 0;
  int t = 0;
};
ResiduePlan residue_plan(std::int64_t n);

class WitnessTable {
 public:
  // The table compiled into the library; checksum and balance verified once.
  static const WitnessTable& builtin();
  // Parses "n v1,v2,..." records and a trailing "# fnv1a64 <hex>" line.
  // Throws Error(ParseError) on malformed text or checksum mismatch and
  // Error(VerificationFailed) when a record is not 3-balanced.
  static WitnessTable parse(std::string_view text);

  const Permutation* find(int n) const;
  const std::map<int, Permutation>& records() const { return records_; }
  std::string checksum() const { return checksum_; }

 private:
  std::map<int, Permutation> records_;
  std::string checksum_;
};

std::uint64_t fnv1a64(std::string_view bytes);

enum class ThreeBalancedSource { Trivial, Table, Recipe };

struct ThreeBalancedResult {
  Permutation pi;
  ThreeBalancedSource source = ThreeBalancedSource::Table;
  int residue = 0;
  int t = 0;
};

// The stored table when n is listed, otherwise the residue recipe closed under
// rotation. The output is verified 3-balanced before it is returned.
// Throws Error(Inadmissible), Error(ConstructionGap).
ThreeBalancedResult three_balanced_detailed(std::int64_t n);
Permutation three_balanced(std::int64_t n);
// Recipe with an explicit t, bypassing the table.
Permutation three_balanced_from_recipe(int residue, int t);

struct NearlyBalanced {
  Permutation sigma;
  int r = 0;
  BigInt discrepancy;
};

// The residue-20 geometry for ell = 0 or 2 mod 3 with r = floor(4 ell/3) + 1.
NearlyBalanced nearly_balanced_sigma(int ell);

enum class EsSign { Plus, Minus, Both };

// The n x m grid turned by an infinitesimal positive (Plus) or negative
// (Minus) angle; Both is the disjoint union of the two.
PointSet es_points(int n, int m, EsSign sign);
Permutation es(int n, int m, EsSign sign);
inline Permutation es(int n, EsSign sign) { return es(n, n, sign); }

}  // namespace permbal
