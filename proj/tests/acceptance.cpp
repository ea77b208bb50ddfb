// Acceptance run: one PASS/FAIL line per criterion.
//
// Exit status is 0 when every criterion passes or fails only on the list of
// known deviations below (each is printed as FAIL with its reason).

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "plaut/errors.hpp"
#include "plaut/experiment.hpp"
#include "plaut/fixed_set.hpp"
#include "plaut/jung.hpp"
#include "plaut/nilpotent.hpp"
#include "plaut/separable.hpp"
#include "support/gen.hpp"
#include "support/symbolic.hpp"

using namespace plaut;
using namespace symbolic;

namespace {

const Field Q = Field::rationals();
const Field F10007 = Field::prime(10007);

// Tolerances and sizes.
constexpr std::size_t kAc1Words = 500;
constexpr double kAc1Seconds = 60.0;
constexpr std::size_t kAc2Corpus = 50;
constexpr int kAc3Instances = 100;
constexpr int kAc4Instances = 200;
constexpr int kAc5Maps = 100;
constexpr int kAc6Trials = 100;
constexpr double kAc6Rate = 0.90;
constexpr double kAc7Gap = 0.10;
constexpr double kAc7cHenonMax = 0.25;
constexpr double kAc7Seconds = 300.0;

const std::map<std::string, std::string> kKnownDeviations{
    {"AC7c(b)",
     "every (y, y^2 + x + b) equals (x, y + b) o (y, y^2 + x), so the whole family lies in one coset of "
     "the translation group {(x, y + b)} inside T4(0); the verified fraction is 1.0"},
};

struct Outcome {
  bool pass = false;
  std::string detail;
};

int unexpected_failures = 0;

void report(const std::string& id, const std::string& title, const Outcome& o) {
  const auto known = kKnownDeviations.find(id);
  std::cout << std::left << std::setw(8) << id << (o.pass ? "PASS " : "FAIL ") << title << ": " << o.detail;
  if (!o.pass && known != kKnownDeviations.end()) std::cout << " [known deviation: " << known->second << "]";
  std::cout << std::endl;
  if (!o.pass && known == kKnownDeviations.end()) ++unexpected_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int prec = 3) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(prec) << v;
  return s.str();
}

// Jacobian oracle over Q, from partial derivatives.
bool jacobian_is_nonzero_constant(const PlaneMap& f) {
  const MPoly j = f.gx().derivative(0) * f.gy().derivative(1) - f.gx().derivative(1) * f.gy().derivative(0);
  return j.is_constant() && !j.is_zero();
}

Outcome ac1() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t ok = 0, total = 0;
  for (const Field& k : {Q, F10007}) {
    std::mt19937_64 rng(k.is_rational() ? 1001 : 1002);
    for (std::size_t i = 0; i < kAc1Words; ++i) {
      const AltWord w = gen::word(rng, k, 1 + gen::below(rng, 6), 5, true, 3);
      ++total;
      try {
        if (canonicalize(decompose(multiply_out(w, k))) == canonicalize(w)) ++ok;
      } catch (const Error&) {
      }
    }
  }
  const double secs = seconds_since(t0);
  return {ok == total && secs < kAc1Seconds,
          std::to_string(ok) + "/" + std::to_string(total) + " words letter-exact in " + fmt(secs, 1) + " s (limit " +
              fmt(kAc1Seconds, 0) + " s)"};
}

Outcome ac2() {
  std::mt19937_64 rng(2001);
  std::size_t accepted = 0, words = 0;
  for (const Field& k : {Q, F10007}) {
    for (int i = 0; i < 100; ++i) {
      const PlaneMap f = multiply_out(gen::word(rng, k, 1 + gen::below(rng, 4), 4, true, 5));
      ++words;
      bool ok = is_automorphism(f);
      if (k.is_rational()) ok = ok && jacobian_is_nonzero_constant(f);
      accepted += ok;
    }
  }

  std::vector<PlaneMap> corpus{PlaneMap::parse("(x^2, y)", Q), PlaneMap::parse("(x, x*y)", Q)};
  const MPoly x = gen::var("x", Q), y = gen::var("y", Q);
  while (corpus.size() < 14) {
    // Singular affine maps: the second row is a multiple of the first.
    const Scalar a = gen::scalar(rng, Q), b = gen::unit(rng, Q), l = gen::scalar(rng, Q);
    const MPoly row = gen::cst(a) * x + gen::cst(b) * y;
    corpus.emplace_back(row + gen::cst(gen::scalar(rng, Q)), gen::cst(l) * row + gen::cst(gen::scalar(rng, Q)));
  }
  while (corpus.size() < kAc2Corpus) {
    // Equal degrees with non-proportional leading forms.
    const unsigned d = 2 + static_cast<unsigned>(gen::below(rng, 3));
    const MPoly f = gen::poly_xy(rng, Q, d, 5), g = gen::poly_xy(rng, Q, d, 5);
    if (f.total_degree() != d || g.total_degree() != d) continue;
    const MPoly lf = f.leading_form(), lg = g.leading_form();
    if ((lf.scaled(lg.leading_coefficient()) - lg.scaled(lf.leading_coefficient())).is_zero()) continue;
    corpus.emplace_back(f, g);
  }
  std::size_t rejected = 0, oracle_agrees = 0;
  for (const auto& f : corpus) {
    rejected += !is_automorphism(f);
    oracle_agrees += !jacobian_is_nonzero_constant(f);
  }
  return {accepted == words && rejected == corpus.size() && oracle_agrees == corpus.size(),
          "accepted " + std::to_string(accepted) + "/" + std::to_string(words) + " words, rejected " +
              std::to_string(rejected) + "/" + std::to_string(corpus.size()) + " non-automorphisms (Jacobian oracle " +
              std::to_string(oracle_agrees) + "/" + std::to_string(corpus.size()) + ")"};
}

Outcome ac3() {
  std::mt19937_64 rng(3001);
  const Field& k = Q;
  const MPoly x = sv("x", k), y = sv("y", k);
  const Scalar one = Scalar::one(k);
  int ok = 0, total = 0;
  auto coeffs = [&] {
    std::vector<Scalar> c;
    for (int i = 0; i < 12; ++i) c.push_back(gen::scalar(rng, k));
    return c;
  };
  for (int t = 0; t < kAc3Instances; ++t) {
    const MPoly P = generic_poly("p", y, k), Qp = generic_poly("q", y, k);
    {
      const Scalar a = gen::unit(rng, k), a2 = gen::unit(rng, k);
      const Sym phi{sc(a) * x + P, y}, phi_inv{sc(a.inverse()) * (x - P), y};
      const Sym psi{sc(a2) * x + Qp, y}, psi_inv{sc(a2.inverse()) * (x - Qp), y};
      const Sym expected{x + sc((a * a2).inverse()) * (sc(a - one) * Qp - sc(a2 - one) * P), y};
      const auto c = coeffs();
      ok += sym_commutator(phi, phi_inv, psi, psi_inv) == expected &&
            commutator(instantiate(phi, c), instantiate(psi, c)) == instantiate(expected, c);
      ++total;
    }
    {
      const Scalar b = gen::unit(rng, k);
      const int l = static_cast<int>(gen::below(rng, 6));
      const Scalar bl = b.pow(l);
      const Sym phi{x + P, y}, phi_inv{x - P, y};
      const Sym psi{sc(bl) * x + Qp, sc(b) * y};
      const Sym psi_inv{sc(bl.inverse()) * (x - generic_poly("q", sc(b.inverse()) * y, k)), sc(b.inverse()) * y};
      const Sym expected{x + sc(bl.inverse()) * generic_poly("p", sc(b) * y, k) - P, y};
      const auto c = coeffs();
      ok += sym_commutator(phi, phi_inv, psi, psi_inv) == expected &&
            commutator(instantiate(phi, c), instantiate(psi, c)) == instantiate(expected, c);
      ++total;
    }
    {
      const Scalar a = gen::unit(rng, k), a2 = gen::unit(rng, k), c0 = gen::unit(rng, k), d = gen::scalar(rng, k);
      const Sym phi{sc(a) * x + P, sc(c0) * y + sc(d)};
      const Sym phi_inv{sc(a.inverse()) * (x - generic_poly("p", sc(c0.inverse()) * (y - sc(d)), k)),
                        sc(c0.inverse()) * (y - sc(d))};
      const Sym psi{sc(a2) * x, y};
      const Sym expected{sc(a2) * x + sc(a.inverse() * (a2 - one)) * P, y};
      const auto c = coeffs();
      ok += sym_compose(phi_inv, sym_compose(psi, phi)) == expected &&
            conjugation(instantiate(psi, c), instantiate(phi, c)) == instantiate(expected, c);
      ++total;
    }
  }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " identities exact (3 formulas x " +
                           std::to_string(kAc3Instances) + " instantiations, deg P, Q = 5)"};
}

PlaneMap random_member(std::mt19937_64& rng, const Field& k, const NilTemplate& t) {
  const MPoly x = gen::var("x", k), y = gen::var("y", k);
  const Scalar a = gen::unit(rng, k), b = gen::unit(rng, k);
  switch (t.id) {
    case NilTemplate::Id::T1: return PlaneMap(gen::cst(a) * x, gen::cst(b) * y);
    case NilTemplate::Id::T2: return PlaneMap(gen::cst(a) * x, y + gen::cst(gen::scalar(rng, k)));
    case NilTemplate::Id::T3:
      return PlaneMap(gen::cst(b.pow(t.param)) * x + gen::cst(gen::scalar(rng, k)) * y.pow(t.param), gen::cst(b) * y);
    case NilTemplate::Id::T4: return PlaneMap(x + gen::poly_y(rng, k, t.param), y + gen::cst(gen::scalar(rng, k)));
  }
  return PlaneMap::identity(k);
}

Outcome ac4() {
  std::mt19937_64 rng(4001);
  std::vector<NilTemplate> ts{{NilTemplate::Id::T1, 0}, {NilTemplate::Id::T2, 0}};
  for (std::uint32_t l = 0; l <= 4; ++l) ts.push_back({NilTemplate::Id::T3, l});
  for (std::uint32_t n = 0; n <= 4; ++n) ts.push_back({NilTemplate::Id::T4, n});
  int bad = 0, checks = 0;
  for (const auto& t : ts) {
    for (int i = 0; i < kAc4Instances; ++i) {
      const PlaneMap g = random_member(rng, F10007, t), h = random_member(rng, F10007, t);
      ++checks;
      bool ok = template_member(compose(g, h), t) && template_member(invert(g), t) &&
                compose(g, invert(g)).is_identity();
      if (t.id != NilTemplate::Id::T4) {
        ok = ok && compose(g, h) == compose(h, g);
      } else {
        PlaneMap c = g;
        std::uint32_t steps = 0;
        Degree last;
        while (!c.is_identity() && steps <= t.param + 1) {
          c = commutator(c, random_member(rng, F10007, t));
          ++steps;
          const Degree d = elementary_parts(c)->p.total_degree();
          if (steps > 1 && last && d && *d >= *last) ok = false;
          last = d;
        }
        ok = ok && c.is_identity() && steps <= t.param + 1;
      }
      bad += !ok;
    }
  }
  return {bad == 0, std::to_string(checks - bad) + "/" + std::to_string(checks) +
                        " instances (closure, inverses, T1-T3 abelian, T4(n) nilpotent in n+1 steps)"};
}

Outcome ac5() {
  int ok = 0, total = 0;
  for (std::uint64_t p : {11u, 31u, 101u}) {
    const Field k = Field::prime(p);
    std::mt19937_64 rng(5000 + p);
    const MPoly x = gen::var("x", k), y = gen::var("y", k);
    for (int i = 0; i < kAc5Maps; ++i) {
      PlaneMap g = PlaneMap::identity(k);
      switch (i % 4) {
        case 0: {
          const MPoly P = gen::poly_y(rng, k, 1 + static_cast<unsigned>(gen::below(rng, 3)));
          g = PlaneMap(x + (y - gen::cst(gen::scalar(rng, k))) * P, y);
          break;
        }
        case 1: g = PlaneMap(gen::cst(gen::unit(rng, k)) * x + gen::poly_y(rng, k, 2), y); break;
        default: g = multiply_out(gen::word(rng, k, 1 + gen::below(rng, 3), 3)); break;
      }
      const FixedSet s = fixed_set(g);
      const FpMapEval eval(g);
      std::set<std::pair<std::uint64_t, std::uint64_t>> scan, predicted;
      for (std::uint32_t a = 0; a < p; ++a) {
        for (std::uint32_t b = 0; b < p; ++b) {
          if (eval(a, b) == std::make_pair(a, b)) scan.insert({a, b});
          if (s.kind == FixedSet::Kind::InfiniteCurve) {
            const std::vector<Scalar> pt{Scalar::from_int(a, k), Scalar::from_int(b, k)};
            for (const auto& c : s.components) {
              if (c.evaluate(pt).is_zero()) predicted.insert({a, b});
            }
          }
        }
      }
      for (const auto& q : s.points) predicted.insert({q[0].residue(), q[1].residue()});
      bool match = false;
      switch (s.kind) {
        case FixedSet::Kind::WholePlane: match = scan.size() == p * p; break;
        case FixedSet::Kind::Finite:
        case FixedSet::Kind::InfiniteCurve: match = predicted == scan; break;
      }
      ok += match;
      ++total;
    }
  }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " verdicts match the p^2 scan (p = 11, 31, 101)"};
}

Outcome ac6() {
  std::mt19937_64 rng(6001);
  int found = 0, false_positive = 0;
  const MPoly x = gen::var("x", Q), y = gen::var("y", Q);
  for (int t = 0; t < kAc6Trials; ++t) {
    const std::uint32_t l = static_cast<std::uint32_t>(gen::below(rng, 4));
    MPoly shift(Q, xy_vars());
    for (unsigned i = 0; i <= 3; ++i) {
      if (i != l) shift += gen::cst(gen::scalar(rng, Q, 5)) * y.pow(i);
    }
    const PlaneMap xi(x + shift, y);
    const ParamFamily base = ParamFamily::parse(
        "(b^" + std::to_string(l) + "*x + c*y^" + std::to_string(l) + ", b*y)", {"b", "c"}, Q);
    const ParamFamily f = compose(invert(xi), compose(base, xi));
    try {
      const NilNormalForm r = normalize_nilpotent_family(f, 3, {static_cast<std::uint64_t>(t + 1), 8});
      if (r.status != NilNormalForm::Status::Found) continue;
      const bool verified = template_member(compose(*r.pre, compose(f, *r.post)), r.tmpl) &&
                            compose(*r.pre, *r.post).is_identity();
      if (verified) {
        ++found;
      } else {
        ++false_positive;
      }
    } catch (const Error&) {
    }
  }
  const double rate = static_cast<double>(found) / kAc6Trials;
  return {rate >= kAc6Rate && false_positive == 0,
          std::to_string(found) + "/" + std::to_string(kAc6Trials) + " recovered (need " + fmt(kAc6Rate, 2) + "), " +
              std::to_string(false_positive) + " false positives"};
}

ExperimentConfig ac7_config(const std::string& family, const std::string& B) {
  return parse_config("field = fp:10007\nfamily = " + family + "\nparams = b\nB = " + B +
                      "\nA = grid 0..63 x 0..63\nseed = 7\n");
}

void ac7() {
  const auto t0 = std::chrono::steady_clock::now();
  const ExpansionReport tr = run_experiment(ac7_config("(x + b, y + b)", "grid 0..63"));
  const ExperimentConfig henon_cfg = ac7_config("(y, y^2 + x + b)", "random 64");
  const ExpansionReport he = run_experiment(henon_cfg);
  const double secs = seconds_since(t0);

  // Oracle counts by direct residue arithmetic.
  std::set<std::pair<int, int>> tr_oracle;
  for (int a1 = 0; a1 < 64; ++a1) {
    for (int a2 = 0; a2 < 64; ++a2) {
      for (int b = 0; b < 64; ++b) tr_oracle.insert({a1 + b, a2 + b});
    }
  }
  std::set<std::pair<std::uint64_t, std::uint64_t>> he_oracle;
  for (const auto& b : build_B(henon_cfg)) {
    const std::uint64_t bv = b[0].residue();
    for (std::uint64_t a1 = 0; a1 < 64; ++a1) {
      for (std::uint64_t a2 = 0; a2 < 64; ++a2) he_oracle.insert({a2, (a2 * a2 + a1 + bv) % 10007});
    }
  }

  const std::uint64_t A = tr.a_size;
  report("AC7a", "translation family non-expansion",
         {tr.image_size == tr_oracle.size() && tr.image_size == 12097 && tr.image_size <= 4 * A,
          "|F*A| = " + std::to_string(tr.image_size) + " (oracle " + std::to_string(tr_oracle.size()) +
              ", bound 4|A| = " + std::to_string(4 * A) + "), exponent " + fmt(tr.exponent, 4)});
  report("AC7b", "Henon family expands beyond translations",
         {he.image_size == he_oracle.size() && he.exponent - tr.exponent >= kAc7Gap,
          "|F*A| = " + std::to_string(he.image_size) + " (oracle " + std::to_string(he_oracle.size()) +
              "), exponent " + fmt(he.exponent, 4) + ", gap " + fmt(he.exponent - tr.exponent, 4) + " (need >= " +
              fmt(kAc7Gap, 2) + ")"});
  const double tr_eps = tr.eps ? tr.eps->fraction : 0.0;
  const double he_eps = he.eps ? he.eps->fraction : 0.0;
  report("AC7c(a)", "eps-nilpotent fraction on translations",
         {tr_eps == 1.0, fmt(tr_eps) + " in " + (tr.eps ? tr.eps->tmpl.to_string() : "-") + " (need 1.0)"});
  report("AC7c(b)", "eps-nilpotent fraction on Henon maps",
         {he_eps <= kAc7cHenonMax, fmt(he_eps) + " in " + (he.eps ? he.eps->tmpl.to_string() : "-") + " coset, left " +
                                       (he.eps ? he.eps->left->to_string() : "-") + " (need <= " +
                                       fmt(kAc7cHenonMax, 2) + ")"});
  report("AC7t", "expansion run time", {secs < kAc7Seconds, fmt(secs, 1) + " s (limit " + fmt(kAc7Seconds, 0) + " s)"});
}

std::string run_cli(const std::string& args) {
  const std::string cmd = std::string(PLAUT_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return "<popen failed>";
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  pclose(pipe);
  return out;
}

Outcome ac8() {
  int ok = 0, total = 0;
  const std::vector<std::string> configs{
      "field = fp:10007\nfamily = (y, y^2 + x + b)\nparams = b\nB = random 32\nA = random 2000\ngp_degree = 2\n",
      "field = fp:10007\nfamily = (x + b, y + b)\nparams = b\nB = grid 0..63\nA = grid 0..63 x 0..63\n",
      "field = fp:101\nfamily = (a*x + b*y^2, y + a)\nparams = a, b\nB = random 20\nA = random 500\n"
      "gp_degree = 3\nmemory_budget = 4096\n",
  };
  for (const auto& text : configs) {
    ExperimentConfig c = parse_config(text);
    const std::string first = to_json(run_experiment(c)).dump();
    const std::string second = to_json(run_experiment(c)).dump();
    c.workers = 4;
    const std::string four = to_json(run_experiment(c)).dump();
    ok += first == second && first == four;
    ++total;
  }

  const ParamFamily fam = ParamFamily::parse("(y, x + t*y^2 + t)", {"t"}, Q);
  const auto describe = [&] {
    const SeparableMatch m = match_separable(fam, {4, 6, 8, 11});
    return std::to_string(m.case_id) + (m.pre ? m.pre->to_string() : "") + (m.post ? m.post->to_string() : "");
  };
  ok += describe() == describe();
  ++total;

  const auto dir = std::filesystem::temp_directory_path() / "plaut_acceptance";
  std::filesystem::create_directories(dir);
  const auto cfg = dir / "henon.cfg";
  std::ofstream(cfg) << configs[0];
  const std::string base = "--format json --seed 5 expand --config " + cfg.string();
  const std::string w1 = run_cli(base + " --workers 1");
  const std::string w1b = run_cli(base + " --workers 1");
  const std::string w4 = run_cli(base + " --workers 4");
  ok += w1 == w1b && w1 == w4 && w1.find("\"schema\"") != std::string::npos;
  ++total;
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) +
                           " seeded pipelines byte-identical across reruns and 1 vs 4 workers"};
}

}  // namespace

int main() {
  const std::vector<std::tuple<std::string, std::string, std::function<Outcome()>>> criteria{
      {"AC1", "decomposition round trip", ac1},
      {"AC2", "automorphism decision", ac2},
      {"AC3", "commutator and conjugation formulas", ac3},
      {"AC4", "template group laws", ac4},
      {"AC5", "fixed sets against exhaustive scan", ac5},
      {"AC6", "normal-form recovery", ac6},
  };
  for (const auto& [id, title, run] : criteria) {
    try {
      report(id, title, run());
    } catch (const std::exception& e) {
      report(id, title, {false, std::string("exception: ") + e.what()});
    }
  }
  try {
    ac7();
  } catch (const std::exception& e) {
    report("AC7", "expansion dichotomy", {false, std::string("exception: ") + e.what()});
  }
  try {
    report("AC8", "determinism", ac8());
  } catch (const std::exception& e) {
    report("AC8", "determinism", {false, std::string("exception: ") + e.what()});
  }
  std::cout << (unexpected_failures == 0 ? "acceptance: no unexpected failures" : "acceptance: unexpected failures")
            << std::endl;
  return unexpected_failures == 0 ? 0 : 1;
}
