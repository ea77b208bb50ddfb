#include "plaut/separable.hpp"

#include <random>

#include "plaut/errors.hpp"
#include "plaut/jung.hpp"
#include "plaut/random.hpp"
#include "plaut/word.hpp"

namespace plaut {

namespace {

int case_of(const NilTemplate& t) {
  switch (t.id) {
    case NilTemplate::Id::T1: return 1;
    case NilTemplate::Id::T2: return 2;
    case NilTemplate::Id::T3: return 3;
    case NilTemplate::Id::T4: return 4;
  }
  return 0;
}

std::uint32_t xy_degree(const ParamFamily& fam) {
  return std::max(fam.f().total_degree({"x", "y"}).value_or(0), fam.g().total_degree({"x", "y"}).value_or(0));
}

std::optional<NilNormalForm> try_normalize(const ParamFamily& fam, const SeparableBounds& bounds) {
  try {
    NilNormalForm r = normalize_nilpotent_family(fam, xy_degree(fam), {bounds.seed, bounds.samples});
    if (r.status == NilNormalForm::Status::Found) return r;
  } catch (const SampleNotInEn&) {
  } catch (const NotAnAutomorphism&) {
  }
  return std::nullopt;
}

bool letters_within(const AltWord& w, std::uint32_t max_deg) {
  for (const auto& l : w) {
    if (l.map.degree().value_or(0) > max_deg) return false;
  }
  return true;
}

}  // namespace

int separable_case(const ParamFamily& family, NilTemplate* tmpl) {
  std::vector<NilTemplate> candidates{{NilTemplate::Id::T1, 0}, {NilTemplate::Id::T2, 0}};
  std::uint32_t ydeg = 0;
  for (const auto& t : family.f().terms()) {
    if (t.exps[0] == 0) {
      candidates.push_back({NilTemplate::Id::T3, t.exps[1]});
      ydeg = std::max<std::uint32_t>(ydeg, t.exps[1]);
    }
  }
  candidates.push_back({NilTemplate::Id::T4, ydeg});
  for (const auto& c : candidates) {
    if (template_member(family, c)) {
      if (tmpl) *tmpl = c;
      return case_of(c);
    }
  }
  return 0;
}

SeparableMatch match_separable(const ParamFamily& family, const SeparableBounds& bounds) {
  const Field& field = family.field();
  auto verified = [&](const PlaneMap& pre, const PlaneMap& post) -> std::optional<SeparableMatch> {
    SeparableMatch out;
    out.case_id = separable_case(compose(pre, compose(family, post)), &out.tmpl);
    if (out.case_id == 0) return std::nullopt;
    out.status = SeparableMatch::Status::Separable;
    out.pre = pre;
    out.post = post;
    return out;
  };
  const PlaneMap id = PlaneMap::identity(field);
  if (auto m = verified(id, id)) return *m;
  if (auto r = try_normalize(family, bounds)) {
    if (auto m = verified(*r->pre, *r->post)) return *m;
  }

  std::mt19937_64 rng(bounds.seed);
  std::vector<PlaneMap> samples;
  for (std::size_t s = 0; s < std::max<std::size_t>(bounds.samples, 2); ++s) {
    std::optional<PlaneMap> spec;
    for (int attempt = 0; attempt < 32 && !spec; ++attempt) {
      std::vector<Scalar> point;
      for (std::size_t i = 0; i < family.params().size(); ++i) point.push_back(random_scalar(rng, field));
      PlaneMap candidate = family.specialize(point);
      if (is_automorphism(candidate)) spec = std::move(candidate);
    }
    if (!spec) throw NotAnAutomorphism("no sampled specialization is an automorphism");
    samples.push_back(std::move(*spec));
  }
  const PlaneMap f0_inv = invert(samples.front());
  std::vector<PlaneMap> tried;
  for (std::size_t j = 1; j < samples.size(); ++j) {
    for (const bool left : {true, false}) {
      const PlaneMap diff = left ? compose(f0_inv, samples[j]) : compose(samples[j], f0_inv);
      const auto cf = conjugate_into_factor(decompose(diff));
      if (!cf || cf->beta.empty()) continue;
      if (!letters_within(cf->conjugator, bounds.max_deg)) continue;
      std::size_t length = cf->conjugator.size();
      PlaneMap h = multiply_out(word_inverse(cf->conjugator), field);
      const Letter& beta = cf->beta.front();
      if (beta.factor == Factor::A && classify_factor(beta.map).tag != FactorClass::Tag::S) {
        const AffineTriangularization tri = [&] {
          try {
            return conjugate_affine_to_S({beta.map});
          } catch (const NotTriangularizable&) {
            return AffineTriangularization{AffineTriangularization::Status::NeedsFieldExtension, std::nullopt, field};
          }
        }();
        if (tri.status != AffineTriangularization::Status::Found || !(tri.field == field)) continue;
        h = compose(h, *tri.beta);
        ++length;
      }
      if (length > bounds.max_word) continue;
      const PlaneMap key = left ? h : compose(f0_inv, h);
      bool seen = false;
      for (const auto& t : tried) seen = seen || t == key;
      if (seen) continue;
      tried.push_back(key);

      const PlaneMap h_inv = invert(h);
      const ParamFamily psi = left ? compose(f0_inv, family) : compose(family, f0_inv);
      const auto r = try_normalize(compose(h_inv, compose(psi, h)), bounds);
      if (!r) continue;
      const PlaneMap pre = left ? compose(*r->pre, compose(h_inv, f0_inv)) : compose(*r->pre, h_inv);
      const PlaneMap post = left ? compose(h, *r->post) : compose(f0_inv, compose(h, *r->post));
      if (auto m = verified(pre, post)) return *m;
    }
  }
  SeparableMatch out;
  out.reason = "no conjugator within the search bounds normalizes the family";
  return out;
}

}  // namespace plaut
