#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "plaut/family.hpp"
#include "plaut/nilpotent.hpp"

namespace plaut {

struct SeparableBounds {
  std::size_t max_word = 4;
  std::uint32_t max_deg = 6;
  std::size_t samples = 8;
  std::uint64_t seed = 1;
};

struct SeparableMatch {
  enum class Status { Separable, Unknown };
  Status status = Status::Unknown;
  /// 1: (t0 x, t1 y)   2: (t0 x, y + t1)   3: (t1^l x + t0 y^l, t1 y)
  /// 4: (x + s(y, z), y + t1)
  int case_id = 0;
  NilTemplate tmpl;
  /// pre o family o post has the shape of `case_id`.
  std::optional<PlaneMap> pre;
  std::optional<PlaneMap> post;
  std::string reason;
};

/// The separability case whose shape the family has, if any (0 otherwise),
/// with the matching template in `tmpl`.
int separable_case(const ParamFamily& family, NilTemplate* tmpl = nullptr);

/// Bounded search for automorphisms g, h with g o family o h in one of the
/// four separable shapes. Separable verdicts are verified symbolically;
/// Unknown makes no claim.
SeparableMatch match_separable(const ParamFamily& family, const SeparableBounds& bounds = {});

}  // namespace plaut
