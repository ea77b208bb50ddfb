#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plaut/family.hpp"
#include "plaut/nilpotent.hpp"
#include "plaut/plane_map.hpp"

namespace plaut {

struct Specializations {
  std::vector<PlaneMap> maps;
  /// Index into B of each accepted map.
  std::vector<std::size_t> accepted;
  /// (index into B, reason) of each rejected parameter point.
  std::vector<std::pair<std::size_t, std::string>> rejected;
};

Specializations specialize_family(const ParamFamily& family, const std::vector<std::vector<Scalar>>& B);

/// Evaluates a map over a prime field on machine residues.
class FpMapEval {
 public:
  explicit FpMapEval(const PlaneMap& map);
  std::pair<std::uint32_t, std::uint32_t> operator()(std::uint32_t x, std::uint32_t y) const;

 private:
  struct Mono {
    std::uint64_t coef;
    std::uint16_t ex;
    std::uint16_t ey;
  };
  std::uint64_t p_;
  std::uint16_t max_ex_ = 0;
  std::uint16_t max_ey_ = 0;
  std::vector<Mono> fx_;
  std::vector<Mono> fy_;
};

struct ActCountOptions {
  unsigned workers = 1;
  /// Image points buffered per worker before a sorted run is spilled to a
  /// temporary file.
  std::size_t memory_budget = std::size_t{1} << 24;
  bool keep_image = false;
};

struct ActCount {
  std::uint64_t count = 0;
  /// Sorted image when requested, encoded as x * 2^32 + y (prime fields) or
  /// as points (other fields).
  std::vector<std::uint64_t> image;
  std::vector<Point> image_points;
  std::size_t spilled_runs = 0;
};

/// |{f(a) : f in F, a in A}|, exact. Over prime fields the work is split
/// across workers; the count does not depend on the worker count.
ActCount act_count(const std::vector<PlaneMap>& F, const std::vector<Point>& A, const ActCountOptions& options = {});

struct GpDegree {
  std::uint32_t degree = 1;
  std::uint64_t max_concentration = 0;
  std::optional<MPoly> witness;
  bool exact = true;
};

/// Largest number of points of A on a curve of degree <= d, for d = 1..D.
/// Exact for lines; for d = 2, 3 a budgeted random interpolation search
/// (a lower bound). Prime fields only.
std::vector<GpDegree> gp_check(const std::vector<Point>& A, std::uint32_t D, std::size_t budget,
                               std::uint64_t seed = 1);

struct EpsBounds {
  std::size_t max_word = 4;
  std::uint32_t max_deg = 6;
  std::size_t bases = 4;
  std::size_t max_candidates = 32;
};

struct EpsNilpotent {
  double fraction = 0;
  std::size_t members = 0;
  NilTemplate tmpl;
  /// Every member f_j satisfies left^-1 o f_j o right^-1 in tmpl.
  std::optional<PlaneMap> left;
  std::optional<PlaneMap> right;
  /// Indices into F of the verified members.
  std::vector<std::size_t> member_indices;
};

/// Best verified concentration |F ∩ f N g| / |F| found by the bounded search.
EpsNilpotent eps_nilpotent_check(const std::vector<PlaneMap>& F, const EpsBounds& bounds = {});

}  // namespace plaut
