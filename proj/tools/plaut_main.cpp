// plaut: command-line front end.
//
// Exit codes: 0 success, 1 domain verdict (not an automorphism, Unknown, ...),
// 2 usage or parse error, 3 internal error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "plaut/errors.hpp"
#include "plaut/experiment.hpp"
#include "plaut/fixed_set.hpp"
#include "plaut/jung.hpp"
#include "plaut/nilpotent.hpp"
#include "plaut/separable.hpp"

using nlohmann::json;
using namespace plaut;

namespace {

constexpr const char* kSchema = "plaut/1";

struct Globals {
  std::string field = "q";
  std::string format = "human";
  std::uint64_t seed = 1;
};

struct Output {
  json data;
  std::string human;
  int code = 0;
};

json word_json(const AltWord& w) {
  json out = json::array();
  for (const auto& l : w) out.push_back({{"factor", to_string(l.factor)}, {"map", l.map.to_string()}});
  return out;
}

std::string point_string(const Point& p) { return "(" + p[0].to_string() + ", " + p[1].to_string() + ")"; }

std::vector<std::string> split_params(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto a = item.find_first_not_of(' ');
    const auto b = item.find_last_not_of(' ');
    if (a != std::string::npos) out.push_back(item.substr(a, b - a + 1));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("io_error", "cannot write '" + path + "'");
  out << text;
}

Output cmd_decompose(const Field& field, const std::string& map_text) {
  const PlaneMap f = PlaneMap::parse(map_text, field);
  Output o;
  const AltWord w = decompose(f);
  o.data = {{"map", f.to_string()}, {"word", word_json(w)}, {"length", w.size()}};
  o.human = to_string(w);
  return o;
}

Output cmd_invert(const Field& field, const std::string& map_text) {
  const PlaneMap f = PlaneMap::parse(map_text, field);
  Output o;
  const PlaneMap g = invert(f);
  o.data = {{"map", f.to_string()}, {"inverse", g.to_string()}};
  o.human = g.to_string();
  return o;
}

Output cmd_check_aut(const Field& field, const std::string& map_text) {
  const PlaneMap f = PlaneMap::parse(map_text, field);
  Output o;
  const bool ok = is_automorphism(f);
  o.data = {{"map", f.to_string()}, {"automorphism", ok}};
  o.human = ok ? "automorphism" : "not an automorphism";
  o.code = ok ? 0 : 1;
  return o;
}

Output cmd_fix(const Field& field, const std::string& map_text) {
  const PlaneMap f = PlaneMap::parse(map_text, field);
  const FixedSet s = fixed_set(f);
  Output o;
  json comps = json::array();
  json pts = json::array();
  for (const auto& c : s.components) comps.push_back(c.to_string());
  for (const auto& p : s.points) pts.push_back({p[0].to_string(), p[1].to_string()});
  o.data = {{"map", f.to_string()},
            {"kind", to_string(s.kind)},
            {"components", comps},
            {"points", pts},
            {"points_field", field.name()},
            {"points_complete", s.points_complete},
            {"resultant_degree", s.resultant_degree ? json(*s.resultant_degree) : json()},
            {"bezout_bound", s.bezout_bound}};
  std::ostringstream h;
  h << "kind: " << to_string(s.kind);
  for (const auto& c : s.components) h << "\ncomponent: " << c.to_string() << " = 0";
  for (const auto& p : s.points) h << "\npoint: " << point_string(p);
  if (s.resultant_degree) h << "\nresultant degree: " << *s.resultant_degree << " (bezout bound " << s.bezout_bound << ")";
  if (!s.points_complete) h << "\npoint list incomplete";
  o.human = h.str();
  return o;
}

Output cmd_classify(const Field& field, const std::string& family_text, const std::string& params,
                    std::uint32_t degree, std::uint64_t seed) {
  const ParamFamily fam = ParamFamily::parse(family_text, split_params(params), field);
  const NilNormalForm r = normalize_nilpotent_family(fam, degree, {seed, 8});
  Output o;
  if (r.status == NilNormalForm::Status::Found) {
    o.data = {{"status", "found"}, {"template", r.tmpl.to_string()}, {"pre", r.pre->to_string()},
              {"post", r.post->to_string()}};
    o.human = "template: " + r.tmpl.to_string() + "\npre: " + r.pre->to_string() + "\npost: " + r.post->to_string();
  } else {
    o.data = {{"status", "unknown"}, {"reason", r.reason}};
    o.human = "unknown: " + r.reason;
    o.code = 1;
  }
  return o;
}

Output cmd_match(const Field& field, const std::string& family_text, const std::string& params,
                 const SeparableBounds& bounds) {
  const ParamFamily fam = ParamFamily::parse(family_text, split_params(params), field);
  const SeparableMatch m = match_separable(fam, bounds);
  Output o;
  if (m.status == SeparableMatch::Status::Separable) {
    o.data = {{"status", "separable"}, {"case", m.case_id}, {"template", m.tmpl.to_string()},
              {"pre", m.pre->to_string()}, {"post", m.post->to_string()}};
    o.human = "separable, case " + std::to_string(m.case_id) + " (" + m.tmpl.to_string() +
              ")\npre: " + m.pre->to_string() + "\npost: " + m.post->to_string();
  } else {
    o.data = {{"status", "unknown"}, {"reason", m.reason}};
    o.human = "unknown: " + m.reason;
    o.code = 1;
  }
  return o;
}

Output cmd_expand(const std::string& config_path, std::optional<std::uint64_t> seed, std::optional<unsigned> workers,
                  const std::string& out_path, const std::string& csv_path, bool timing) {
  ExperimentConfig cfg = parse_config(read_file(config_path));
  if (seed) cfg.seed = *seed;
  if (workers) {
    if (*workers == 0) throw ConfigError("workers", "must be at least 1");
    cfg.workers = *workers;
  }
  const ExpansionReport r = run_experiment(cfg);
  Output o;
  o.data = to_json(r, timing);
  if (!out_path.empty()) write_file(out_path, o.data.dump(2) + "\n");
  if (!csv_path.empty()) write_file(csv_path, csv_header() + "\n" + csv_row(r) + "\n");
  std::ostringstream h;
  h << "field " << r.field << ", seed " << r.seed << "\n";
  h << "|A| = " << r.a_size << ", |B| = " << r.b_size << ", |F| = " << r.f_size << " (" << r.rejected.size()
    << " rejected)\n";
  h << "|F*A| = " << r.image_size << ", exponent " << r.exponent;
  for (const auto& g : r.gp) {
    h << "\ndegree " << g.degree << " max concentration " << g.max_concentration << (g.exact ? "" : " (heuristic)");
  }
  if (r.eps) h << "\neps-nilpotent fraction " << r.eps->fraction << " in " << r.eps->tmpl.to_string() << " coset";
  if (timing) h << "\n" << r.millis << " ms";
  o.human = h.str();
  return o;
}

int emit(const Globals& g, const std::string& command, Output o) {
  if (g.format == "json") {
    json out = {{"schema", kSchema}, {"command", command}, {"seed", g.seed}, {"field", g.field}};
    for (auto it = o.data.begin(); it != o.data.end(); ++it) out[it.key()] = it.value();
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << o.human << "\n";
  }
  return o.code;
}

int emit_error(const Globals& g, const std::string& command, const std::string& code, const std::string& message,
               int exit_code) {
  if (g.format == "json") {
    json out = {{"schema", kSchema}, {"command", command}, {"seed", g.seed},
                {"error", {{"code", code}, {"message", message}}}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cerr << "error [" << code << "]: " << message << "\n";
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polynomial automorphisms of the affine plane"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--field", g.field, "q | fp:<prime> | fp2:<prime>")->capture_default_str();
  app.add_option("--format", g.format, "human | json")->check(CLI::IsMember({"human", "json"}))->capture_default_str();
  app.add_option("--seed", g.seed, "seed for sampling")->capture_default_str();

  std::string map_text;
  auto add_map_cmd = [&](const std::string& name, const std::string& help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("--map", map_text, "map \"(f, g)\"")->required();
    return c;
  };
  auto* decompose_cmd = add_map_cmd("decompose", "Jung decomposition into an alternating word");
  auto* invert_cmd = add_map_cmd("invert", "compositional inverse");
  auto* check_cmd = add_map_cmd("check-aut", "decide whether a map is an automorphism");
  auto* fix_cmd = add_map_cmd("fix", "fixed-point set");

  std::string family_text, params;
  std::uint32_t degree = 0;
  auto* classify_cmd = app.add_subcommand("classify-nilpotent", "normal form of an elementary nilpotent family");
  classify_cmd->add_option("--family", family_text)->required();
  classify_cmd->add_option("--params", params, "comma-separated parameter names")->required();
  classify_cmd->add_option("--degree", degree, "degree bound n of E_n")->required();

  SeparableBounds bounds;
  auto* match_cmd = app.add_subcommand("match-separable", "search for a separable normal form");
  match_cmd->add_option("--family", family_text)->required();
  match_cmd->add_option("--params", params)->required();
  match_cmd->add_option("--max-word", bounds.max_word)->capture_default_str();
  match_cmd->add_option("--max-deg", bounds.max_deg)->capture_default_str();
  match_cmd->add_option("--samples", bounds.samples)->capture_default_str();

  std::string config_path, out_path, csv_path;
  std::optional<unsigned> workers;
  bool timing = false;
  auto* expand_cmd = app.add_subcommand("expand", "run an expansion experiment");
  expand_cmd->add_option("--config", config_path)->required();
  expand_cmd->add_option("--out", out_path, "write the JSON report here");
  expand_cmd->add_option("--csv", csv_path, "write a CSV row here");
  expand_cmd->add_option("--workers", workers);
  expand_cmd->add_flag("--timing", timing, "include wall-clock time in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  try {
    const Field field = Field::parse(g.field);
    g.field = field.name();
    if (sub == decompose_cmd) return emit(g, command, cmd_decompose(field, map_text));
    if (sub == invert_cmd) return emit(g, command, cmd_invert(field, map_text));
    if (sub == check_cmd) return emit(g, command, cmd_check_aut(field, map_text));
    if (sub == fix_cmd) return emit(g, command, cmd_fix(field, map_text));
    if (sub == classify_cmd) return emit(g, command, cmd_classify(field, family_text, params, degree, g.seed));
    if (sub == match_cmd) {
      bounds.seed = g.seed;
      return emit(g, command, cmd_match(field, family_text, params, bounds));
    }
    if (sub == expand_cmd) {
      const bool seed_given = app.get_option("--seed")->count() > 0;
      return emit(g, command,
                  cmd_expand(config_path, seed_given ? std::optional(g.seed) : std::nullopt, workers, out_path,
                             csv_path, timing));
    }
    return emit_error(g, command, "usage", "unknown subcommand", 2);
  } catch (const ParseError& e) {
    return emit_error(g, command, e.code(), e.what(), 2);
  } catch (const ConfigError& e) {
    return emit_error(g, command, e.code(), e.what(), 2);
  } catch (const ArityMismatch& e) {
    return emit_error(g, command, e.code(), e.what(), 2);
  } catch (const FieldMismatch& e) {
    return emit_error(g, command, e.code(), e.what(), 2);
  } catch (const InternalError& e) {
    return emit_error(g, command, e.code(), e.what(), 3);
  } catch (const Error& e) {
    return emit_error(g, command, e.code(), e.what(), 1);
  } catch (const std::exception& e) {
    return emit_error(g, command, "internal_error", e.what(), 3);
  }
}
