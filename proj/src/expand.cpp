#include "plaut/expand.hpp"

#include <algorithm>
#include <cstdio>
#include <memory>
#include <queue>
#include <random>
#include <thread>

#include "plaut/errors.hpp"
#include "plaut/jung.hpp"
#include "plaut/random.hpp"
#include "plaut/word.hpp"

namespace plaut {

Specializations specialize_family(const ParamFamily& family, const std::vector<std::vector<Scalar>>& B) {
  Specializations out;
  for (std::size_t i = 0; i < B.size(); ++i) {
    PlaneMap m = family.specialize(B[i]);
    if (is_automorphism(m)) {
      out.maps.push_back(std::move(m));
      out.accepted.push_back(i);
    } else {
      out.rejected.emplace_back(i, "specialization " + m.to_string() + " is not an automorphism");
    }
  }
  return out;
}

FpMapEval::FpMapEval(const PlaneMap& map) : p_(map.field().characteristic()) {
  if (map.field().kind() != Field::Kind::Prime) throw FieldMismatch("fast evaluation needs a prime field");
  auto load = [&](const MPoly& f, std::vector<Mono>& out) {
    for (const auto& t : f.terms()) {
      out.push_back(Mono{t.coef.residue(), t.exps[0], t.exps[1]});
      max_ex_ = std::max(max_ex_, t.exps[0]);
      max_ey_ = std::max(max_ey_, t.exps[1]);
    }
  };
  load(map.gx(), fx_);
  load(map.gy(), fy_);
}

std::pair<std::uint32_t, std::uint32_t> FpMapEval::operator()(std::uint32_t x, std::uint32_t y) const {
  // Small power tables on the stack for the usual low degrees.
  constexpr std::size_t kInline = 64;
  std::uint64_t px_buf[kInline], py_buf[kInline];
  std::vector<std::uint64_t> px_heap, py_heap;
  std::uint64_t* px = px_buf;
  std::uint64_t* py = py_buf;
  if (max_ex_ >= kInline) {
    px_heap.resize(max_ex_ + 1);
    px = px_heap.data();
  }
  if (max_ey_ >= kInline) {
    py_heap.resize(max_ey_ + 1);
    py = py_heap.data();
  }
  px[0] = 1;
  for (std::size_t i = 1; i <= max_ex_; ++i) px[i] = px[i - 1] * x % p_;
  py[0] = 1;
  for (std::size_t i = 1; i <= max_ey_; ++i) py[i] = py[i - 1] * y % p_;
  auto eval = [&](const std::vector<Mono>& f) {
    std::uint64_t acc = 0;
    for (const auto& m : f) acc = (acc + m.coef * (px[m.ex] * py[m.ey] % p_)) % p_;
    return static_cast<std::uint32_t>(acc);
  };
  return {eval(fx_), eval(fy_)};
}

namespace {

inline std::uint64_t encode(std::uint32_t x, std::uint32_t y) { return (std::uint64_t{x} << 32) | y; }

void sort_unique(std::vector<std::uint64_t>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};

// A sorted run of encoded points, in memory or in a temporary file.
class Run {
 public:
  explicit Run(std::vector<std::uint64_t> values) : mem_(std::move(values)) {}
  Run(std::unique_ptr<std::FILE, FileCloser> file, std::size_t size) : file_(std::move(file)), remaining_(size) {
    std::rewind(file_.get());
  }

  bool next(std::uint64_t& out) {
    if (!file_) {
      if (pos_ >= mem_.size()) return false;
      out = mem_[pos_++];
      return true;
    }
    if (pos_ >= mem_.size()) {
      if (remaining_ == 0) return false;
      mem_.resize(std::min<std::size_t>(remaining_, 1 << 16));
      if (std::fread(mem_.data(), sizeof(std::uint64_t), mem_.size(), file_.get()) != mem_.size()) {
        throw InternalError("short read from a spilled run");
      }
      remaining_ -= mem_.size();
      pos_ = 0;
    }
    out = mem_[pos_++];
    return true;
  }

 private:
  std::vector<std::uint64_t> mem_;
  std::size_t pos_ = 0;
  std::unique_ptr<std::FILE, FileCloser> file_;
  std::size_t remaining_ = 0;
};

Run spill(const std::vector<std::uint64_t>& values) {
  std::unique_ptr<std::FILE, FileCloser> file(std::tmpfile());
  if (!file) throw InternalError("cannot create a temporary file for spilling");
  if (std::fwrite(values.data(), sizeof(std::uint64_t), values.size(), file.get()) != values.size()) {
    throw InternalError("short write while spilling a run");
  }
  return Run(std::move(file), values.size());
}

struct WorkerOutput {
  std::vector<Run> runs;
  std::size_t spilled = 0;
};

void count_worker(const std::vector<PlaneMap>& F, std::size_t lo, std::size_t hi,
                  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& A, std::size_t budget,
                  WorkerOutput& out) {
  std::vector<std::uint64_t> buf;
  for (std::size_t i = lo; i < hi; ++i) {
    const FpMapEval eval(F[i]);
    for (const auto& [x, y] : A) {
      const auto [u, v] = eval(x, y);
      buf.push_back(encode(u, v));
      if (buf.size() >= budget) {
        sort_unique(buf);
        out.runs.push_back(spill(buf));
        ++out.spilled;
        buf.clear();
      }
    }
  }
  sort_unique(buf);
  out.runs.emplace_back(std::move(buf));
}

ActCount act_count_generic(const std::vector<PlaneMap>& F, const std::vector<Point>& A, bool keep) {
  std::vector<Point> image;
  for (const auto& f : F) {
    for (const auto& a : A) image.push_back(apply(f, a));
  }
  auto less = [](const Point& a, const Point& b) {
    const auto c = a[0].compare(b[0]);
    return c != 0 ? c < 0 : a[1].compare(b[1]) < 0;
  };
  std::sort(image.begin(), image.end(), less);
  image.erase(std::unique(image.begin(), image.end()), image.end());
  ActCount out;
  out.count = image.size();
  if (keep) out.image_points = std::move(image);
  return out;
}

}  // namespace

ActCount act_count(const std::vector<PlaneMap>& F, const std::vector<Point>& A, const ActCountOptions& options) {
  if (F.empty() || A.empty()) return {};
  const Field& field = F.front().field();
  if (field.kind() != Field::Kind::Prime) return act_count_generic(F, A, options.keep_image);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pts;
  pts.reserve(A.size());
  for (const auto& a : A) {
    pts.emplace_back(static_cast<std::uint32_t>(a[0].residue()), static_cast<std::uint32_t>(a[1].residue()));
  }
  const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(F.size())));
  const std::size_t budget = std::max<std::size_t>(1, options.memory_budget / workers);
  std::vector<WorkerOutput> outputs(workers);
  std::vector<std::thread> threads;
  const std::size_t chunk = (F.size() + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = std::min(F.size(), w * chunk), hi = std::min(F.size(), lo + chunk);
    threads.emplace_back(count_worker, std::cref(F), lo, hi, std::cref(pts), budget, std::ref(outputs[w]));
  }
  for (auto& t : threads) t.join();

  ActCount out;
  std::vector<Run> runs;
  for (auto& o : outputs) {
    out.spilled_runs += o.spilled;
    for (auto& r : o.runs) runs.push_back(std::move(r));
  }
  using Head = std::pair<std::uint64_t, std::size_t>;
  std::priority_queue<Head, std::vector<Head>, std::greater<>> heap;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    std::uint64_t v;
    if (runs[i].next(v)) heap.emplace(v, i);
  }
  bool have_last = false;
  std::uint64_t last = 0;
  while (!heap.empty()) {
    const auto [v, i] = heap.top();
    heap.pop();
    if (!have_last || v != last) {
      ++out.count;
      if (options.keep_image) out.image.push_back(v);
      last = v;
      have_last = true;
    }
    std::uint64_t nv;
    if (runs[i].next(nv)) heap.emplace(nv, i);
  }
  return out;
}

namespace {

using Res = std::pair<std::uint32_t, std::uint32_t>;

std::vector<Res> residues_of(const std::vector<Point>& A) {
  std::vector<Res> pts;
  for (const auto& a : A) {
    if (a[0].field().kind() != Field::Kind::Prime) throw FieldMismatch("gp_check needs points over a prime field");
    pts.emplace_back(static_cast<std::uint32_t>(a[0].residue()), static_cast<std::uint32_t>(a[1].residue()));
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

MPoly line_through(const Res& base, std::uint64_t slope, std::uint64_t p, const Field& field) {
  const MPoly x = MPoly::variable("x", field, xy_vars());
  const MPoly y = MPoly::variable("y", field, xy_vars());
  auto c = [&](std::uint64_t v) { return MPoly::constant(Scalar::from_residues(v % p, 0, field), xy_vars()); };
  if (slope == p) return x - c(base.first);
  // y - y0 - s (x - x0)
  return y - c(base.second) - (x - c(base.first)) * c(slope);
}

GpDegree best_line(const std::vector<Res>& pts, const Field& field) {
  const std::uint64_t p = field.characteristic();
  GpDegree out;
  out.degree = 1;
  const std::size_t n = pts.size();
  if (n == 0) return out;
  out.max_concentration = 1;
  if (n == 1) {
    out.witness = line_through(pts[0], p, p, field);
    return out;
  }
  const bool table = p <= (1u << 24);
  std::vector<std::uint32_t> inv;
  std::vector<std::uint32_t> counts;
  if (table) {
    inv.assign(p, 0);
    inv[1] = 1;
    for (std::uint64_t i = 2; i < p; ++i) inv[i] = static_cast<std::uint32_t>((p - (p / i) * inv[p % i] % p) % p);
    counts.assign(p + 1, 0);
  }
  std::vector<std::uint64_t> slopes;
  slopes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    slopes.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const std::uint64_t dx = (pts[j].first + p - pts[i].first) % p;
      const std::uint64_t dy = (pts[j].second + p - pts[i].second) % p;
      slopes.push_back(dx == 0 ? p : dy * (table ? inv[dx] : mod_inverse(dx, p)) % p);
    }
    std::uint64_t best = 0, best_slope = p;
    if (table) {
      for (auto s : slopes) {
        if (++counts[s] > best) {
          best = counts[s];
          best_slope = s;
        }
      }
      for (auto s : slopes) counts[s] = 0;
    } else {
      std::sort(slopes.begin(), slopes.end());
      for (std::size_t a = 0; a < slopes.size();) {
        std::size_t b = a;
        while (b < slopes.size() && slopes[b] == slopes[a]) ++b;
        if (b - a > best) {
          best = b - a;
          best_slope = slopes[a];
        }
        a = b;
      }
    }
    if (best + 1 > out.max_concentration) {
      out.max_concentration = best + 1;
      out.witness = line_through(pts[i], best_slope, p, field);
    }
  }
  return out;
}

// Null space of a matrix mod p (row-major, `cols` columns).
std::vector<std::vector<std::uint64_t>> null_space(std::vector<std::vector<std::uint64_t>> m, std::size_t cols,
                                                   std::uint64_t p) {
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t r = row;
    while (r < m.size() && m[r][c] == 0) ++r;
    if (r == m.size()) continue;
    std::swap(m[r], m[row]);
    const std::uint64_t inv = mod_inverse(m[row][c], p);
    for (auto& v : m[row]) v = v * inv % p;
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (k == row || m[k][c] == 0) continue;
      const std::uint64_t f = m[k][c];
      for (std::size_t j = 0; j < cols; ++j) m[k][j] = (m[k][j] + (p - f) * m[row][j]) % p;
    }
    pivot_cols.push_back(c);
    ++row;
  }
  std::vector<std::vector<std::uint64_t>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end()) continue;
    std::vector<std::uint64_t> v(cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) v[pivot_cols[r]] = (p - m[r][free]) % p;
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::pair<unsigned, unsigned>> monomials(std::uint32_t d) {
  std::vector<std::pair<unsigned, unsigned>> out;
  for (unsigned i = 0; i <= d; ++i) {
    for (unsigned j = 0; i + j <= d; ++j) out.emplace_back(i, j);
  }
  return out;
}

std::vector<std::uint64_t> monomial_row(const Res& pt, const std::vector<std::pair<unsigned, unsigned>>& monos,
                                        std::uint64_t p) {
  std::vector<std::uint64_t> row;
  row.reserve(monos.size());
  for (const auto& [i, j] : monos) row.push_back(mod_pow(pt.first, i, p) * mod_pow(pt.second, j, p) % p);
  return row;
}

MPoly curve_poly(const std::vector<std::uint64_t>& c, const std::vector<std::pair<unsigned, unsigned>>& monos,
                 const Field& field) {
  std::vector<Term> terms;
  for (std::size_t k = 0; k < monos.size(); ++k) {
    if (c[k] == 0) continue;
    Exponents e{};
    e[0] = static_cast<std::uint16_t>(monos[k].first);
    e[1] = static_cast<std::uint16_t>(monos[k].second);
    terms.push_back(Term{e, Scalar::from_residues(c[k], 0, field)});
  }
  return MPoly::from_terms(field, xy_vars(), std::move(terms));
}

GpDegree best_curve(const std::vector<Res>& pts, std::uint32_t d, std::size_t budget, std::mt19937_64& rng,
                    const Field& field) {
  const std::uint64_t p = field.characteristic();
  const auto monos = monomials(d);
  const std::size_t k = monos.size() - 1;
  GpDegree out;
  out.degree = d;
  out.exact = false;
  std::vector<std::vector<std::uint64_t>> rows;
  for (const auto& pt : pts) rows.push_back(monomial_row(pt, monos, p));
  if (pts.size() <= k) {
    out.exact = true;
    out.max_concentration = pts.size();
    auto basis = null_space(rows, monos.size(), p);
    if (!basis.empty()) out.witness = curve_poly(basis.front(), monos, field);
    return out;
  }
  std::vector<std::size_t> pick;
  for (std::size_t trial = 0; trial < budget; ++trial) {
    pick.clear();
    while (pick.size() < k) {
      const std::size_t idx = uniform_below(rng, pts.size());
      if (std::find(pick.begin(), pick.end(), idx) == pick.end()) pick.push_back(idx);
    }
    std::vector<std::vector<std::uint64_t>> m;
    for (auto idx : pick) m.push_back(rows[idx]);
    const auto basis = null_space(std::move(m), monos.size(), p);
    if (basis.size() != 1) continue;
    const auto& c = basis.front();
    std::uint64_t on = 0;
    for (const auto& r : rows) {
      std::uint64_t acc = 0;
      for (std::size_t t = 0; t < c.size(); ++t) acc = (acc + c[t] * r[t]) % p;
      on += acc == 0;
    }
    if (on > out.max_concentration) {
      out.max_concentration = on;
      out.witness = curve_poly(c, monos, field);
    }
  }
  return out;
}

}  // namespace

std::vector<GpDegree> gp_check(const std::vector<Point>& A, std::uint32_t D, std::size_t budget, std::uint64_t seed) {
  if (D < 1) throw DegenerateInput("gp_check needs a degree bound of at least 1");
  if (A.empty()) return {};
  const Field& field = A.front()[0].field();
  const auto pts = residues_of(A);
  std::vector<GpDegree> out{best_line(pts, field)};
  std::mt19937_64 rng(seed);
  for (std::uint32_t d = 2; d <= std::min<std::uint32_t>(D, 3); ++d) {
    GpDegree g = best_curve(pts, d, budget, rng, field);
    const GpDegree& prev = out.back();
    if (prev.max_concentration > g.max_concentration) {
      g.max_concentration = prev.max_concentration;
      g.witness = prev.witness;
    }
    out.push_back(std::move(g));
  }
  return out;
}

namespace {

// The conjugator candidate h (h^-1 D h in a factor) built from a difference.
std::optional<PlaneMap> conjugator_from(const PlaneMap& diff, const EpsBounds& bounds) {
  const auto cf = conjugate_into_factor(decompose(diff));
  if (!cf || cf->beta.empty()) return std::nullopt;
  for (const auto& l : cf->conjugator) {
    if (l.map.degree().value_or(0) > bounds.max_deg) return std::nullopt;
  }
  const Field& field = diff.field();
  std::size_t length = cf->conjugator.size();
  PlaneMap h = multiply_out(word_inverse(cf->conjugator), field);
  const Letter& beta = cf->beta.front();
  if (beta.factor == Factor::A && classify_factor(beta.map).tag != FactorClass::Tag::S) {
    try {
      const auto tri = conjugate_affine_to_S({beta.map});
      if (tri.status != AffineTriangularization::Status::Found || !(tri.field == field)) return std::nullopt;
      h = compose(h, *tri.beta);
      ++length;
    } catch (const NotTriangularizable&) {
      return std::nullopt;
    }
  }
  if (length > bounds.max_word) return std::nullopt;
  return h;
}

struct CosetCount {
  NilTemplate tmpl;
  PlaneMap left;
  PlaneMap right;
  std::vector<std::size_t> members;
};

}  // namespace

EpsNilpotent eps_nilpotent_check(const std::vector<PlaneMap>& F, const EpsBounds& bounds) {
  EpsNilpotent best;
  if (F.empty()) return best;
  const Field& field = F.front().field();
  const std::size_t n = F.size();
  // Floor: one element lies in its own coset f_0 T1.
  best.fraction = 1.0 / static_cast<double>(n);
  best.members = 1;
  best.tmpl = {NilTemplate::Id::T1, 0};
  best.left = F.front();
  best.right = PlaneMap::identity(field);
  best.member_indices = {0};

  auto consider = [&](CosetCount c) {
    // Re-verify every member before accepting the coset.
    const PlaneMap left_inv = invert(c.left), right_inv = invert(c.right);
    std::vector<std::size_t> verified;
    for (auto j : c.members) {
      if (template_member(compose(left_inv, compose(F[j], right_inv)), c.tmpl)) verified.push_back(j);
    }
    if (verified.size() > best.members) {
      best.members = verified.size();
      best.fraction = static_cast<double>(verified.size()) / static_cast<double>(n);
      best.tmpl = c.tmpl;
      best.left = c.left;
      best.right = c.right;
      best.member_indices = std::move(verified);
    }
  };

  const std::size_t bases = std::min(bounds.bases, n);
  for (std::size_t i = 0; i < bases && best.members < n; ++i) {
    const PlaneMap fi_inv = invert(F[i]);
    std::vector<PlaneMap> candidates;
    for (std::size_t j = 0; j < n && candidates.size() < bounds.max_candidates; ++j) {
      if (j == i) continue;
      const auto h = conjugator_from(compose(fi_inv, F[j]), bounds);
      if (!h) continue;
      if (std::find(candidates.begin(), candidates.end(), *h) != candidates.end()) continue;
      candidates.push_back(*h);
    }
    for (const auto& h : candidates) {
      if (best.members == n) break;
      // C_j = h^-1 f_i^-1 f_j h; f_j = (f_i h) C_j h^-1.
      const PlaneMap h_inv = invert(h);
      std::vector<PlaneMap> C(n, PlaneMap::identity(field));
      std::vector<bool> in_e(n, false);
      for (std::size_t j = 0; j < n; ++j) {
        C[j] = compose(h_inv, compose(fi_inv, compose(F[j], h)));
        const auto cls = classify_factor(C[j]).tag;
        in_e[j] = cls == FactorClass::Tag::S || cls == FactorClass::Tag::ElementaryOnly;
      }
      const PlaneMap left = compose(F[i], h);
      // Unipotent shears with y-translation form a normal subgroup of E.
      {
        CosetCount c{{NilTemplate::Id::T4, 0}, left, h_inv, {}};
        for (std::size_t j = 0; j < n; ++j) {
          if (!in_e[j]) continue;
          const auto e = elementary_parts(C[j]);
          const auto deg = e->p.total_degree().value_or(0);
          if (e->a.is_one() && e->b.is_one() && deg <= bounds.max_deg) {
            c.members.push_back(j);
            c.tmpl.param = std::max(c.tmpl.param, deg);
          }
        }
        consider(std::move(c));
      }
      // T1-T3: normalize single seed elements, then count their template.
      std::size_t seeds = 0;
      for (std::size_t s = 0; s < n && seeds < 4 && best.members < n; ++s) {
        if (!in_e[s] || C[s].is_identity()) continue;
        ++seeds;
        NilNormalForm nf;
        try {
          nf = normalize_nilpotent_family(ParamFamily(C[s].gx(), C[s].gy(), {}), bounds.max_deg, {1, 1});
        } catch (const Error&) {
          continue;
        }
        if (nf.status != NilNormalForm::Status::Found || nf.tmpl.id == NilTemplate::Id::T4) continue;
        CosetCount c{nf.tmpl, compose(left, *nf.post), compose(*nf.pre, h_inv), {}};
        for (std::size_t j = 0; j < n; ++j) {
          if (in_e[j] && template_member(compose(*nf.pre, compose(C[j], *nf.post)), nf.tmpl)) c.members.push_back(j);
        }
        consider(std::move(c));
      }
    }
  }
  return best;
}

}  // namespace plaut
