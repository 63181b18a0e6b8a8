#pragma once

// Status of the m-canonical map Phi_m of X = (C_1 x ... x C_n)/G, decided
// from the eigensheaf decomposition:
//
//   (a) every nonidentity h of Gbar is separated by two constituents of K_X^m,
//   (b) every factor j has a constituent with r^j >= 1.
//
// (a) and (b) together give birationality; failure of (a) rules it out.

#include <cstdint>
#include <string>

#include "vipclass/cover_decomposition.hpp"
#include "vipclass/covering_data.hpp"

namespace vipclass {

enum class MapStatus { Birational, NonBirational, Unknown };

std::string to_string(MapStatus s);

/// Which rules map_status may use. CriteriaOnly stops after (a)/(b), which is
/// the view the published tables print.
enum class RuleSet { Full, CriteriaOnly };

// Stable reason strings.
inline constexpr const char* kReasonSeparation = "separation-criteria";
inline constexpr const char* kReasonGroupSeparationFails = "group-separation-fails";
inline constexpr const char* kReasonGenus2Factor = "genus-2-factor";
inline constexpr const char* kReasonFourCanonical = "4-canonical-large-pg";
inline constexpr const char* kReasonThreefoldHighM = "threefold-m>=5";
inline constexpr const char* kReasonSurfaceEmbedding = "surface-m>=3-embedding";

struct MapAnalysis {
  int m = 0;
  std::int64_t plurigenus = 0;
  bool bpf = false;
  bool separates_group = false;
  bool separates_base = false;
  MapStatus status = MapStatus::Unknown;
  std::string reason;  // empty iff Unknown
  bool normalization_flag = false;

  /// "Birational (separation-criteria)", "Unknown".
  std::string status_string() const;
};

bool separates_group(const CoverDecomposition& cover, int m);
bool separates_base(const CoverDecomposition& cover, int m);
MapAnalysis map_status(const CoverDecomposition& cover, int m, RuleSet rules = RuleSet::Full);

bool separates_group(const AlgebraicDatum& D, int m);
bool separates_base(const AlgebraicDatum& D, int m);
MapAnalysis map_status(const AlgebraicDatum& D, int m, RuleSet rules = RuleSet::Full);

/// True when curve i is certainly not hyperelliptic: no element of G_i acts
/// as -1 on H^0(K) (so the hyperelliptic involution would lie outside G_i and
/// G_i would embed in PGL(2)), and G_i is neither cyclic nor Z2^2. False means
/// "not certified", never "hyperelliptic".
bool certify_non_hyperelliptic(const AlgebraicDatum& D, int i);

}  // namespace vipclass
