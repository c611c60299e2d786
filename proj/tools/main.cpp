// hippo-lab: batch front end for the randomness laboratory.
//
// Exit codes: 0 = all checks pass, 1 = a verified-property violation was
// found, 2 = usage or configuration error.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hippo/coding.hpp"
#include "hippo/complexity.hpp"
#include "hippo/io.hpp"
#include "hippo/measure.hpp"
#include "hippo/randomness_tests.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hippo;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::optional<std::string> measure_path;
  std::optional<std::string> approx_path;
  std::optional<std::string> table_path;
  int B = 14;
  int out_cap = 12;
  int L = 10;
  int n_max = 4;
  LevelBound bound;
  std::uint64_t seed = 1;
  std::map<std::string, std::string> raw;  // echoed into reports
};

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config " + path);
  ExperimentConfig cfg;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    std::string rest;
    std::getline(ls, rest);
    if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
    cfg.raw[key] = rest;
    if (key == "measure") cfg.measure_path = rest;
    else if (key == "approx") cfg.approx_path = rest;
    else if (key == "table") cfg.table_path = rest;
    else if (key == "B") cfg.B = std::stoi(rest);
    else if (key == "out_cap") cfg.out_cap = std::stoi(rest);
    else if (key == "L") cfg.L = std::stoi(rest);
    else if (key == "n_max") cfg.n_max = std::stoi(rest);
    else if (key == "seed") cfg.seed = std::stoull(rest, nullptr, 16);
    else if (key == "bound") {
      std::istringstream bs(rest);
      std::string kind;
      bs >> kind;
      if (kind == "pow2") {
        cfg.bound.pow2 = true;
      } else if (kind == "table") {
        cfg.bound.pow2 = false;
        std::string tok;
        while (bs >> tok) cfg.bound.table.push_back(Dyadic::parse(tok));
      } else {
        throw UsageError("config: bound must be pow2 or table");
      }
    } else {
      throw UsageError("config: unknown key \"" + key + "\"");
    }
  }
  if (cfg.B < 0 || cfg.B > 22) throw UsageError("config: B must be in [0, 22]");
  if (cfg.out_cap < 1 || cfg.out_cap > 256) throw UsageError("config: out_cap in [1, 256]");
  if (cfg.L < 0 || cfg.L > 20) throw UsageError("config: L must be in [0, 20]");
  if (cfg.n_max < 1 || cfg.n_max > 16) throw UsageError("config: n_max in [1, 16]");
  if (!cfg.bound.pow2 && static_cast<int>(cfg.bound.table.size()) < cfg.n_max)
    throw UsageError("config: bound table shorter than n_max");
  return cfg;
}

std::shared_ptr<Measure> load_measure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open measure spec " + path);
  return io::parse_measure_spec(in);
}

LogApproximation load_approx(const std::string& path) {
  return LogApproximation::parse(io::read_file(path));
}

std::string table_cache_name(int B, int out_cap) {
  std::string tag = kMachineVersion;
  for (auto& ch : tag)
    if (ch == '/' || ch == ' ') ch = '_';
  return "km_" + tag + "_B" + std::to_string(B) + "_cap" + std::to_string(out_cap) + ".txt";
}

ComplexityTable obtain_table(const ExperimentConfig& cfg, int jobs) {
  if (cfg.table_path) {
    std::ifstream in(*cfg.table_path);
    if (!in) throw UsageError("cannot open table " + *cfg.table_path);
    ComplexityTable t = io::read_table(in);
    if (t.budget().max_program_len < cfg.B || t.budget().out_cap < cfg.L + 1)
      throw UsageError("table budget too small for config");
    return t;
  }
  const char* cache = std::getenv("HIPPO_LAB_CACHE");
  int out_cap = std::max(cfg.out_cap, cfg.L + 1);
  fs::path cache_file;
  if (cache) {
    cache_file = fs::path(cache) / table_cache_name(cfg.B, out_cap);
    std::ifstream in(cache_file);
    if (in) return io::read_table(in);
  }
  ComplexityTable t = enumerate_km({cfg.B, out_cap}, jobs);
  if (cache) {
    fs::create_directories(cache_file.parent_path());
    std::ofstream out(cache_file);
    io::write_table(out, t);
  }
  return t;
}

void ensure_out_dir(const std::string& out) {
  if (out.empty()) throw UsageError("--out directory required");
  fs::create_directories(out);
}

void write_json(const fs::path& path, const json& j) {
  io::write_file(path.string(), j.dump(2) + "\n");
}

std::string timestamp_free_echo(const ExperimentConfig& cfg) {
  json j = json::object();
  for (const auto& [k, v] : cfg.raw) j[k] = v;
  return j.dump();
}

// ---- subcommands ----------------------------------------------------------

int cmd_enum(const ExperimentConfig& cfg, const std::string& out_file, int jobs) {
  ComplexityTable t = enumerate_km({cfg.B, cfg.out_cap}, jobs);
  std::ofstream out(out_file);
  if (!out) throw UsageError("cannot write " + out_file);
  io::write_table(out, t);
  std::cout << "table: " << out_file << " (" << t.entries().size() << " entries)\n";
  return 0;
}

int cmd_test(const ExperimentConfig& cfg, const std::string& out_dir, int jobs,
             bool blind_only, bool measure_only) {
  ensure_out_dir(out_dir);
  auto started = std::chrono::steady_clock::now();
  ComplexityTable table = obtain_table(cfg, jobs);

  json report;
  report["config"] = timestamp_free_echo(cfg);
  report["machine"] = table.version_tag();
  bool all_pass = true;

  std::optional<TestFamily> blind, measure_fam;
  std::optional<LogApproximation> la;
  std::shared_ptr<Measure> P;

  if (!measure_only) {
    if (!cfg.approx_path) throw UsageError("test: config needs an approx entry");
    la = load_approx(*cfg.approx_path);
    blind = build_blind_test(*la, table, cfg.n_max, cfg.L);
    std::ostringstream fam_out;
    io::write_family(fam_out, *blind);
    io::write_file((fs::path(out_dir) / "blind_family.txt").string(), fam_out.str());
    report["blind_family"] = "blind_family.txt";
  }
  if (!blind_only) {
    if (!cfg.measure_path) throw UsageError("test: config needs a measure entry");
    P = load_measure(*cfg.measure_path);
    measure_fam = build_measure_test(*P, table, cfg.n_max, cfg.L);
    std::ostringstream fam_out;
    io::write_family(fam_out, *measure_fam);
    io::write_file((fs::path(out_dir) / "measure_family.txt").string(), fam_out.str());
    report["measure_family"] = "measure_family.txt";
  }

  if (P && blind) {
    VerificationReport vr = verify_test(*blind, *P, cfg.bound);
    report["blind_verification"] = io::verification_report_json(vr);
    all_pass = all_pass && vr.pass;
  }
  if (P && measure_fam) {
    VerificationReport vr = verify_test(*measure_fam, *P, cfg.bound);
    report["measure_verification"] = io::verification_report_json(vr);
    all_pass = all_pass && vr.pass;
  }
  if (blind && measure_fam) {
    SandwichResult sw = sandwich_check(*blind, *measure_fam, la->c());
    json j = {{"ok", sw.ok}};
    if (sw.witness)
      j["witness"] = {{"level", sw.witness->first}, {"cell", sw.witness->second.str()}};
    report["sandwich"] = j;
    all_pass = all_pass && sw.ok;
  }

  auto elapsed = std::chrono::steady_clock::now() - started;
  report["elapsed_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  report["pass"] = all_pass;
  write_json(fs::path(out_dir) / "report.json", report);
  std::cout << (all_pass ? "PASS" : "FAIL") << " (report: " << out_dir << "/report.json)\n";
  return all_pass ? 0 : kExitViolation;
}

std::string svg_running_max(const DeficiencyProfile& profile) {
  // Running max deficiency vs prefix length, as a bare polyline.
  int n = static_cast<int>(profile.rows.size());
  int max_v = 1;
  for (const auto& r : profile.rows)
    if (r.running_max) max_v = std::max(max_v, std::max(1, *r.running_max));
  const int w = 640, h = 320, margin = 40;
  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h << "'>\n";
  svg << "<rect width='100%' height='100%' fill='white'/>\n<polyline fill='none' "
         "stroke='black' points='";
  for (int i = 0; i < n; ++i) {
    const auto& r = profile.rows[i];
    double v = r.running_max ? *r.running_max : 0;
    double x = margin + (w - 2.0 * margin) * (n > 1 ? double(i) / (n - 1) : 0.0);
    double y = h - margin - (h - 2.0 * margin) * (v / max_v);
    svg << x << "," << y << " ";
  }
  svg << "'/>\n<text x='10' y='20'>running max deficiency (lower bound)</text>\n</svg>\n";
  return svg.str();
}

int cmd_deficiency(const ExperimentConfig& cfg, const std::string& out_dir, int jobs,
                   const std::string& input_bits, int samples, int sample_length,
                   bool plot) {
  ensure_out_dir(out_dir);
  if (!cfg.measure_path) throw UsageError("deficiency: config needs a measure entry");
  std::shared_ptr<Measure> P = load_measure(*cfg.measure_path);
  ExperimentConfig tweaked = cfg;
  if (samples > 0) tweaked.L = std::max(cfg.L, sample_length);
  else tweaked.L = std::max<int>(cfg.L, static_cast<int>(input_bits.size()));
  ComplexityTable table = obtain_table(tweaked, jobs);

  if (samples <= 0) {
    BitString x = input_bits.empty() ? BitString() : BitString(input_bits);
    DeficiencyProfile profile = deficiency_profile(x, *P, table);
    write_json(fs::path(out_dir) / "profile.json", io::deficiency_profile_json(profile));
    if (plot)
      io::write_file((fs::path(out_dir) / "running_max.svg").string(),
                     svg_running_max(profile));
    std::cout << "profile rows: " << profile.rows.size() << "\n";
    return 0;
  }

  std::mt19937_64 rng(cfg.seed);
  json stats = json::array();
  for (int s = 0; s < samples; ++s) {
    BitString x = sample_string(*P, sample_length, rng);
    DeficiencyProfile profile = deficiency_profile(x, *P, table);
    json j = {{"sample", s}, {"string", x.str()}};
    if (auto m = profile.max_deficiency()) j["max_deficiency"] = *m;
    stats.push_back(std::move(j));
  }
  write_json(fs::path(out_dir) / "samples.json",
             {{"measure", P->describe()}, {"length", sample_length}, {"stats", stats}});
  std::cout << "samples: " << samples << "\n";
  return 0;
}

int cmd_forward(const ExperimentConfig& cfg, const std::string& family_file,
                const std::string& out_dir) {
  ensure_out_dir(out_dir);
  if (!cfg.approx_path) throw UsageError("forward: config needs an approx entry");
  LogApproximation la = load_approx(*cfg.approx_path);
  std::ifstream in(family_file);
  if (!in) throw UsageError("cannot open family " + family_file);
  TestFamily fam = io::read_family(in);
  try {
    LevelledCode lc = forward_codebook(fam, la);
    std::ostringstream out;
    io::write_levelled_code(out, lc);
    io::write_file((fs::path(out_dir) / "levelled_code.txt").string(), out.str());
    std::size_t entries = 0;
    for (const auto& [n, cb] : lc.levels) entries += cb.entries.size();
    std::cout << "levelled code: " << lc.levels.size() << " levels, " << entries
              << " entries\n";
    return 0;
  } catch (const KraftViolation& e) {
    std::cerr << "kraft violation: " << e.what() << "\n";
    write_json(fs::path(out_dir) / "report.json",
               {{"pass", false}, {"kraft_violation", e.what()}, {"level", e.level}});
    return kExitViolation;
  }
}

int cmd_sample(const std::string& measure_file, int length, std::uint64_t seed,
               const std::string& out_file) {
  if (length < 0) throw UsageError("sample: length must be >= 0");
  std::shared_ptr<Measure> P = load_measure(measure_file);
  std::mt19937_64 rng(seed);
  BitString x = sample_string(*P, length, rng);
  std::string text = io::node_token(x) + "\n";
  if (out_file.empty()) std::cout << text;
  else io::write_file(out_file, text);
  return 0;
}

int cmd_feasibility(const std::string& approx_file, int depth, const std::string& out_file) {
  if (depth < 0 || depth > 14) throw UsageError("feasibility: depth must be in [0, 14]");
  LogApproximation la = load_approx(approx_file);
  FeasibilityReport report = feasibility_check(la, depth);
  json j = io::feasibility_report_json(report);
  if (out_file.empty()) std::cout << j.dump(2) << "\n";
  else write_json(out_file, j);
  return report.feasible ? 0 : kExitViolation;
}

int cmd_kraft(const std::string& table_file, int max_level_k, int random_sets,
              std::uint64_t seed) {
  std::ifstream in(table_file);
  if (!in) throw UsageError("cannot open table " + table_file);
  ComplexityTable table = io::read_table(in);

  bool ok = true;
  for (int k = 0; k <= max_level_k; ++k) {
    std::vector<BitString> level;
    for (std::uint64_t v = 0; v < (std::uint64_t(1) << k); ++v) {
      BitString x;
      for (int b = k - 1; b >= 0; --b) x.push_back((v >> b) & 1);
      level.push_back(x);
    }
    Dyadic sum = kraft_sum(level, table);
    bool pass = !(sum > Dyadic::one());
    std::cout << "level-set k=" << k << " sum=" << sum.to_string()
              << (pass ? " ok" : " VIOLATION") << "\n";
    ok = ok && pass;
  }

  std::mt19937_64 rng(seed);
  int depth = std::min(table.budget().out_cap - 1, 10);
  for (int s = 0; s < random_sets; ++s) {
    std::vector<BitString> raw;
    int count = 1 + static_cast<int>(rng() % 20);
    for (int i = 0; i < count; ++i) {
      int len = static_cast<int>(rng() % (depth + 1));
      BitString x;
      for (int b = 0; b < len; ++b) x.push_back(rng() & 1);
      raw.push_back(x);
    }
    PrefixFreeSet pf = minimal_cover(raw);
    Dyadic sum = kraft_sum(pf.elements(), table);
    if (sum > Dyadic::one()) {
      std::cout << "random set " << s << " sum=" << sum.to_string() << " VIOLATION\n";
      ok = false;
    }
  }
  std::cout << (ok ? "kraft: all sums <= 1\n" : "kraft: violations found\n");
  return ok ? 0 : kExitViolation;
}

int cmd_sfe(const std::string& dist_file, const std::string& out_file) {
  std::ifstream in(dist_file);
  if (!in) throw UsageError("cannot open distribution " + dist_file);
  std::vector<std::pair<BitString, Dyadic>> items;
  std::string tok, q;
  while (in >> tok >> q) items.emplace_back(io::parse_node_token(tok), Dyadic::parse(q));
  try {
    Codebook cb = sfe_build(items);
    std::ostringstream out;
    out << "total " << cb.total.to_string() << "\n";
    for (const auto& e : cb.entries)
      out << io::node_token(e.x) << " " << e.q.to_string() << " " << e.codeword.str() << "\n";
    if (out_file.empty()) std::cout << out.str();
    else io::write_file(out_file, out.str());
    return 0;
  } catch (const KraftViolation& e) {
    std::cerr << "kraft violation: " << e.what() << "\n";
    return kExitViolation;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hippo-lab: exact finite-depth laboratory for blind randomness tests"};
  app.require_subcommand(1);

  std::string config_path, out_path, measure_file, approx_file, table_file, dist_file;
  std::string family_file, input_bits, out_file;
  std::uint64_t seed = 1;
  int jobs = 1;
  app.add_option("--config", config_path, "experiment config file")->envname("HIPPO_LAB_CONFIG");
  app.add_option("--out", out_path, "output directory or file");
  app.add_option("--seed", seed, "RNG seed (sampling, random sets)");
  app.add_option("--jobs", jobs, "worker threads for enumeration")->check(CLI::Range(1, 64));

  auto* c_enum = app.add_subcommand("enum", "enumerate the complexity table");
  int B = 10, out_cap = 12;
  c_enum->add_option("--B", B, "maximum program length")->check(CLI::Range(0, 22));
  c_enum->add_option("--out-cap", out_cap, "maximum output length retained")
      ->check(CLI::Range(1, 256));

  auto* c_test = app.add_subcommand("test", "build and verify test families");
  bool blind_only = false, measure_only = false;
  c_test->add_flag("--blind-only", blind_only, "build only the blind family");
  c_test->add_flag("--measure-only", measure_only, "build only the measure family");

  auto* c_def = app.add_subcommand("deficiency", "deficiency profiles along prefixes");
  int samples = 0, sample_length = 32;
  bool plot = false;
  c_def->add_option("--input", input_bits, "bit string to profile");
  c_def->add_option("--samples", samples, "number of sampled sequences");
  c_def->add_option("--length", sample_length, "length of sampled sequences")
      ->check(CLI::Range(0, 256));
  c_def->add_flag("--plot", plot, "emit running-max SVG plot");

  auto* c_fwd = app.add_subcommand("forward", "Shannon-Fano-Elias levelled code from a family");
  c_fwd->add_option("--family", family_file, "test family file")->required();

  auto* c_sample = app.add_subcommand("sample", "draw an exact sample from a measure");
  int length = 32;
  c_sample->add_option("--measure", measure_file, "measure spec file")->required();
  c_sample->add_option("--length", length, "string length")->check(CLI::Range(0, 100000));

  auto* c_feas = app.add_subcommand("feasibility", "interval-propagation check of (f, c)");
  int depth = 8;
  c_feas->add_option("--approx", approx_file, "log-approximation file")->required();
  c_feas->add_option("--depth", depth, "propagation depth");

  auto* c_kraft = app.add_subcommand("kraft", "Kraft sums over level and random sets");
  int max_level_k = 8, random_sets = 100;
  c_kraft->add_option("--table", table_file, "complexity table file")->required();
  c_kraft->add_option("--max-level-k", max_level_k)->check(CLI::Range(0, 16));
  c_kraft->add_option("--random-sets", random_sets)->check(CLI::Range(0, 100000));

  auto* c_sfe = app.add_subcommand("sfe", "build a codebook from (string, mass) lines");
  c_sfe->add_option("--dist", dist_file, "distribution file: lines \"x a/2^b\"")->required();

  // Global flags (--config, --out, --seed, --jobs) may follow the subcommand.
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    ExperimentConfig cfg;
    if (!config_path.empty()) cfg = parse_config(config_path);

    if (c_enum->parsed()) {
      cfg.B = B;
      cfg.out_cap = out_cap;
      if (out_path.empty()) throw UsageError("enum: --out file required");
      return cmd_enum(cfg, out_path, jobs);
    }
    if (c_test->parsed()) {
      if (config_path.empty()) throw UsageError("test: --config required");
      if (blind_only && measure_only)
        throw UsageError("test: --blind-only and --measure-only conflict");
      return cmd_test(cfg, out_path, jobs, blind_only, measure_only);
    }
    if (c_def->parsed()) {
      if (config_path.empty()) throw UsageError("deficiency: --config required");
      if (seed != 1) cfg.seed = seed;
      return cmd_deficiency(cfg, out_path, jobs, input_bits, samples, sample_length, plot);
    }
    if (c_fwd->parsed()) {
      if (config_path.empty()) throw UsageError("forward: --config required");
      return cmd_forward(cfg, family_file, out_path);
    }
    if (c_sample->parsed()) return cmd_sample(measure_file, length, seed, out_path);
    if (c_feas->parsed()) return cmd_feasibility(approx_file, depth, out_path);
    if (c_kraft->parsed()) return cmd_kraft(table_file, max_level_k, random_sets, seed);
    if (c_sfe->parsed()) return cmd_sfe(dist_file, out_path);
    throw UsageError("no subcommand");
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitViolation;
  }
}
