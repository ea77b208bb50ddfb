#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plaut/family.hpp"
#include "plaut/plane_map.hpp"

namespace plaut {

/// [g, h] = g^-1 h^-1 g h.
PlaneMap commutator(const PlaneMap& g, const PlaneMap& h);

/// h^g = g^-1 h g.
PlaneMap conjugation(const PlaneMap& h, const PlaneMap& g);

/// The four nilpotent normal-form subgroups of E_n:
///   T1     (a x, b y)
///   T2     (a x, y + b)
///   T3(l)  (b^l x + a y^l, b y)
///   T4(n)  (x + P(y), y + b) with deg P <= n
struct NilTemplate {
  enum class Id { T1, T2, T3, T4 };
  Id id = Id::T1;
  /// l for T3, the degree bound n for T4, unused otherwise.
  std::uint32_t param = 0;

  friend bool operator==(const NilTemplate&, const NilTemplate&) = default;
  std::string to_string() const;
  static NilTemplate parse(std::string_view text);
};

bool template_member(const PlaneMap& g, const NilTemplate& t);
/// Membership for every parameter value, by coefficient matching in K[z].
bool template_member(const ParamFamily& family, const NilTemplate& t);

struct AffineTriangularization {
  enum class Status { Found, NeedsFieldExtension };
  Status status = Status::Found;
  /// Found: each generator^beta lies in S. Over F_p the search may have moved
  /// to F_{p^2}; `field` records where beta lives.
  std::optional<PlaneMap> beta;
  Field field = Field::rationals();
};

/// Common-eigenvector conjugation of affine generators into S. Throws
/// NotTriangularizable when the linear parts share no eigenvector.
AffineTriangularization conjugate_affine_to_S(const std::vector<PlaneMap>& generators);

struct NilNormalForm {
  enum class Status { Found, Unknown };
  Status status = Status::Unknown;
  NilTemplate tmpl;
  /// pre o family(z) o post lies in the template; post = pre^-1.
  std::optional<PlaneMap> pre;
  std::optional<PlaneMap> post;
  std::string reason;
};

struct NilOptions {
  std::uint64_t seed = 1;
  std::size_t samples = 8;
};

/// Conjugates an elementary-valued family into one of the templates. Sample
/// specializations are checked first (SampleNotInEn, NotAnAutomorphism);
/// every Found verdict is verified symbolically and at each sample.
NilNormalForm normalize_nilpotent_family(const ParamFamily& family, std::uint32_t n,
                                         const NilOptions& options = {});

}  // namespace plaut
