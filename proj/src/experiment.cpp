#include "plaut/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "plaut/errors.hpp"
#include "plaut/jung.hpp"
#include "plaut/random.hpp"

namespace plaut {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
  if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos || value.size() > 18) {
    throw ConfigError(key, "expected a non-negative integer, got '" + value + "'");
  }
  return std::stoull(value);
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
  if (!value.empty() && value[0] == '-') return -static_cast<std::int64_t>(parse_uint(key, value.substr(1)));
  return static_cast<std::int64_t>(parse_uint(key, value));
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& key, const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw ConfigError(key, "expected a range lo..hi, got '" + text + "'");
  const auto lo = parse_int(key, trim(text.substr(0, dots)));
  const auto hi = parse_int(key, trim(text.substr(dots + 2)));
  if (lo > hi) throw ConfigError(key, "empty range '" + text + "'");
  return {lo, hi};
}

PointSetSpec parse_point_set(const std::string& key, const std::string& value) {
  PointSetSpec spec;
  const auto space = value.find(' ');
  const std::string kind = value.substr(0, space);
  const std::string rest = space == std::string::npos ? "" : trim(value.substr(space + 1));
  if (kind == "grid") {
    spec.kind = PointSetSpec::Kind::Grid;
    // Ranges are separated by a standalone 'x'.
    std::istringstream in(rest);
    std::string token, current;
    while (in >> token) {
      if (token == "x") {
        spec.ranges.push_back(parse_range(key, current));
        current.clear();
      } else {
        current += token;
      }
    }
    if (current.empty()) throw ConfigError(key, "grid needs at least one range");
    spec.ranges.push_back(parse_range(key, current));
  } else if (kind == "random") {
    spec.kind = PointSetSpec::Kind::Random;
    spec.count = parse_uint(key, rest);
    if (spec.count == 0) throw ConfigError(key, "sample size must be at least 1");
  } else if (kind == "list") {
    spec.kind = PointSetSpec::Kind::List;
    for (const auto& item : split(rest, ';')) {
      if (item.empty()) continue;
      spec.list.push_back(split(item, ','));
    }
    if (spec.list.empty()) throw ConfigError(key, "list needs at least one point");
  } else {
    throw ConfigError(key, "expected 'grid', 'random' or 'list', got '" + kind + "'");
  }
  return spec;
}

Scalar parse_scalar(const std::string& key, const std::string& text, const Field& field) {
  try {
    const auto v = parse_poly(text, {}, field).constant_value();
    if (v) return *v;
  } catch (const Error&) {
  }
  throw ConfigError(key, "expected a field element, got '" + text + "'");
}

std::vector<std::vector<Scalar>> build_points(const std::string& key, const PointSetSpec& spec, std::size_t dim,
                                              const Field& field, std::uint64_t seed) {
  std::vector<std::vector<Scalar>> out;
  switch (spec.kind) {
    case PointSetSpec::Kind::Grid: {
      auto ranges = spec.ranges;
      if (ranges.size() == 1 && dim > 1) ranges.assign(dim, ranges.front());
      if (ranges.size() != dim) {
        throw ConfigError(key, "grid has " + std::to_string(ranges.size()) + " ranges for dimension " + std::to_string(dim));
      }
      for (const auto& [lo, hi] : ranges) {
        if (field.is_finite() && (lo < 0 || static_cast<std::uint64_t>(hi) >= field.characteristic())) {
          throw ConfigError(key, "grid ranges must lie within [0, p)");
        }
      }
      std::vector<std::int64_t> cur(dim);
      for (std::size_t i = 0; i < dim; ++i) cur[i] = ranges[i].first;
      for (;;) {
        std::vector<Scalar> pt;
        for (auto v : cur) pt.push_back(Scalar::from_int(v, field));
        out.push_back(std::move(pt));
        std::size_t i = dim;
        while (i > 0) {
          --i;
          if (cur[i] < ranges[i].second) {
            ++cur[i];
            break;
          }
          cur[i] = ranges[i].first;
          if (i == 0) return out;
        }
        if (dim == 0) return out;
      }
    }
    case PointSetSpec::Kind::Random: {
      if (field.is_finite()) {
        const double space = std::pow(static_cast<double>(field.order()), static_cast<double>(dim));
        if (static_cast<double>(spec.count) > space / 2) throw ConfigError(key, "random sample too large for the field");
      }
      std::mt19937_64 rng(seed);
      std::set<std::vector<std::uint64_t>> seen;
      std::vector<std::string> seen_q;
      while (out.size() < spec.count) {
        std::vector<Scalar> pt;
        for (std::size_t i = 0; i < dim; ++i) pt.push_back(random_scalar(rng, field, 1000));
        std::string key_text;
        std::vector<std::uint64_t> key_idx;
        for (const auto& s : pt) {
          if (field.is_finite()) {
            key_idx.push_back(s.index());
          } else {
            key_text += s.to_string() + ";";
          }
        }
        if (field.is_finite()) {
          if (!seen.insert(key_idx).second) continue;
        } else {
          if (std::find(seen_q.begin(), seen_q.end(), key_text) != seen_q.end()) continue;
          seen_q.push_back(key_text);
        }
        out.push_back(std::move(pt));
      }
      return out;
    }
    case PointSetSpec::Kind::List:
      for (const auto& item : spec.list) {
        if (item.size() != dim) throw ConfigError(key, "list points need " + std::to_string(dim) + " coordinates");
        std::vector<Scalar> pt;
        for (const auto& c : item) pt.push_back(parse_scalar(key, c, field));
        out.push_back(std::move(pt));
      }
      return out;
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  bool have_a = false;
  std::vector<std::pair<std::string, std::string>> entries;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno), "expected 'key = value'");
    entries.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  // The field comes first so that literals elsewhere parse in it.
  for (const auto& [key, value] : entries) {
    if (key == "field") {
      try {
        cfg.field = Field::parse(value);
      } catch (const Error& e) {
        throw ConfigError("field", e.what());
      }
    }
  }
  for (const auto& [key, value] : entries) {
    if (key == "field") {
      continue;
    } else if (key == "family") {
      cfg.family = value;
    } else if (key == "params") {
      cfg.params = split(value, ',');
    } else if (key == "map") {
      cfg.maps.push_back(value);
    } else if (key == "B") {
      cfg.B = parse_point_set(key, value);
    } else if (key == "A") {
      cfg.A = parse_point_set(key, value);
      have_a = true;
    } else if (key == "gp_degree") {
      cfg.gp_degree = static_cast<std::uint32_t>(parse_uint(key, value));
      if (cfg.gp_degree < 1 || cfg.gp_degree > 3) throw ConfigError(key, "must be 1, 2 or 3");
    } else if (key == "gp_budget") {
      cfg.gp_budget = parse_uint(key, value);
    } else if (key == "seed") {
      cfg.seed = parse_uint(key, value);
    } else if (key == "workers") {
      cfg.workers = static_cast<unsigned>(parse_uint(key, value));
      if (cfg.workers == 0) throw ConfigError(key, "must be at least 1");
    } else if (key == "memory_budget") {
      cfg.memory_budget = parse_uint(key, value);
      if (cfg.memory_budget == 0) throw ConfigError(key, "must be at least 1");
    } else if (key == "eps") {
      if (value != "on" && value != "off") throw ConfigError(key, "expected 'on' or 'off'");
      cfg.eps = value == "on";
    } else if (key == "eps_max_word") {
      cfg.eps_bounds.max_word = parse_uint(key, value);
    } else if (key == "eps_max_deg") {
      cfg.eps_bounds.max_deg = static_cast<std::uint32_t>(parse_uint(key, value));
    } else if (key == "eps_bases") {
      cfg.eps_bounds.bases = parse_uint(key, value);
    } else {
      throw ConfigError(key, "unknown key");
    }
  }
  if (!have_a) throw ConfigError("A", "missing point set");
  if (!cfg.family && cfg.maps.empty()) throw ConfigError("family", "either a family or at least one map is required");
  if (cfg.family) {
    if (cfg.params.empty()) throw ConfigError("params", "a family needs parameter names");
    if (!cfg.B) throw ConfigError("B", "a family needs a parameter set");
    try {
      ParamFamily::parse(*cfg.family, cfg.params, cfg.field);
    } catch (const Error& e) {
      throw ConfigError("family", e.what());
    }
  }
  for (const auto& m : cfg.maps) {
    try {
      PlaneMap::parse(m, cfg.field);
    } catch (const Error& e) {
      throw ConfigError("map", e.what());
    }
  }
  return cfg;
}

std::vector<Point> build_A(const ExperimentConfig& cfg) {
  std::vector<Point> out;
  for (auto& pt : build_points("A", cfg.A, 2, cfg.field, cfg.seed ^ 0x9E3779B97F4A7C15ULL)) {
    out.push_back({pt[0], pt[1]});
  }
  return out;
}

std::vector<std::vector<Scalar>> build_B(const ExperimentConfig& cfg) {
  if (!cfg.B) return {};
  return build_points("B", *cfg.B, cfg.params.size(), cfg.field, cfg.seed);
}

ExpansionReport run_experiment(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  ExpansionReport report;
  report.field = cfg.field.name();
  report.seed = cfg.seed;

  std::vector<PlaneMap> F;
  const auto B = build_B(cfg);
  report.b_size = B.size();
  if (cfg.family) {
    Specializations s = specialize_family(ParamFamily::parse(*cfg.family, cfg.params, cfg.field), B);
    F = std::move(s.maps);
    report.rejected = std::move(s.rejected);
  }
  for (std::size_t i = 0; i < cfg.maps.size(); ++i) {
    PlaneMap m = PlaneMap::parse(cfg.maps[i], cfg.field);
    if (is_automorphism(m)) {
      F.push_back(std::move(m));
    } else {
      report.rejected.emplace_back(B.size() + i, "map " + m.to_string() + " is not an automorphism");
    }
  }
  report.f_size = F.size();

  const auto A = build_A(cfg);
  report.a_size = A.size();
  report.image_size = act_count(F, A, {cfg.workers, cfg.memory_budget, false}).count;
  if (A.size() > 1 && report.image_size > 0) {
    report.exponent = std::log(static_cast<double>(report.image_size)) / std::log(static_cast<double>(A.size()));
  }
  if (cfg.field.kind() == Field::Kind::Prime) report.gp = gp_check(A, cfg.gp_degree, cfg.gp_budget, cfg.seed);
  if (cfg.eps && F.size() >= 2) report.eps = eps_nilpotent_check(F, cfg.eps_bounds);
  report.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return report;
}

nlohmann::json to_json(const ExpansionReport& r, bool timing) {
  nlohmann::json j;
  j["schema"] = "plaut/1";
  j["field"] = r.field;
  j["seed"] = r.seed;
  j["A"] = r.a_size;
  j["B"] = r.b_size;
  j["F"] = r.f_size;
  j["rejected"] = nlohmann::json::array();
  for (const auto& [index, reason] : r.rejected) j["rejected"].push_back({{"index", index}, {"reason", reason}});
  j["image"] = r.image_size;
  j["exponent"] = r.exponent;
  j["gp"] = nlohmann::json::array();
  for (const auto& g : r.gp) {
    j["gp"].push_back({{"degree", g.degree},
                       {"max_concentration", g.max_concentration},
                       {"witness", g.witness ? nlohmann::json(g.witness->to_string()) : nlohmann::json()},
                       {"exact", g.exact}});
  }
  if (r.eps) {
    j["eps"] = {{"fraction", r.eps->fraction},
                {"members", r.eps->members},
                {"template", r.eps->tmpl.to_string()},
                {"left", r.eps->left->to_string()},
                {"right", r.eps->right->to_string()}};
  } else {
    j["eps"] = nullptr;
  }
  if (timing) j["millis"] = r.millis;
  return j;
}

std::string csv_header() { return "|A|,|B|,|F|,|F*A|,exponent,gp_max_line,eps_nilp_fraction,millis"; }

std::string csv_row(const ExpansionReport& r) {
  std::ostringstream out;
  out.precision(6);
  out << std::fixed;
  out << r.a_size << ',' << r.b_size << ',' << r.f_size << ',' << r.image_size << ',' << r.exponent << ',';
  if (!r.gp.empty()) out << r.gp.front().max_concentration;
  out << ',';
  if (r.eps) out << r.eps->fraction;
  out << ',' << r.millis;
  return out.str();
}

}  // namespace plaut
