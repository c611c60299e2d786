#include "hippo/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace hippo::io {

using nlohmann::json;

std::string node_token(const BitString& x) { return x.empty() ? "-" : x.str(); }

BitString parse_node_token(const std::string& tok) {
  return tok == "-" ? BitString() : BitString(tok);
}

namespace {

std::string expect_key(std::istream& in, const std::string& key) {
  std::string k, v;
  if (!(in >> k) || k != key)
    throw std::invalid_argument("expected \"" + key + "\", got \"" + k + "\"");
  if (!(in >> v)) throw std::invalid_argument("missing value for \"" + key + "\"");
  return v;
}

}  // namespace

std::shared_ptr<Measure> parse_measure_spec(std::istream& in) {
  std::string kind = expect_key(in, "kind");
  if (kind == "bernoulli") {
    return std::make_shared<BernoulliMeasure>(Dyadic::parse(expect_key(in, "p")));
  }
  if (kind == "markov") {
    Dyadic initial = Dyadic::parse(expect_key(in, "initial"));
    std::array<Dyadic, 2> to_one;
    for (int b = 0; b < 2; ++b) {
      std::string key, v0, v1;
      if (!(in >> key >> v0 >> v1) || key != "row" + std::to_string(b))
        throw std::invalid_argument("markov: expected row" + std::to_string(b));
      Dyadic p0 = Dyadic::parse(v0), p1 = Dyadic::parse(v1);
      if (p0 + p1 != Dyadic::one())
        throw std::invalid_argument("markov: row" + std::to_string(b) + " does not sum to 1");
      to_one[b] = p1;
    }
    return std::make_shared<MarkovMeasure>(initial, to_one);
  }
  if (kind == "hidden-seed") {
    return std::make_shared<HiddenSeedMeasure>(expect_key(in, "seed"));
  }
  throw std::invalid_argument("unknown measure kind \"" + kind + "\"");
}

std::string serialize_measure_spec(const Measure& m) {
  std::ostringstream out;
  if (auto* b = dynamic_cast<const BernoulliMeasure*>(&m)) {
    out << "kind bernoulli\np " << b->p().to_string() << "\n";
  } else if (auto* mk = dynamic_cast<const MarkovMeasure*>(&m)) {
    out << "kind markov\ninitial " << mk->initial_one().to_string() << "\n";
    for (int b = 0; b < 2; ++b) {
      Dyadic p1 = mk->transition_one()[b];
      out << "row" << b << " " << (Dyadic::one() - p1).to_string() << " " << p1.to_string()
          << "\n";
    }
  } else if (auto* h = dynamic_cast<const HiddenSeedMeasure*>(&m)) {
    out << "kind hidden-seed\nseed " << h->seed_hex() << "\n";
  } else {
    throw std::invalid_argument("serialize_measure_spec: unknown measure type");
  }
  return out.str();
}

void write_table(std::ostream& out, const ComplexityTable& t) {
  out << "machine " << kMachineVersion << "\n";
  out << "B " << t.budget().max_program_len << "\n";
  out << "out_cap " << t.budget().out_cap << "\n";
  for (const auto& [x, km] : t.entries()) out << node_token(x) << " " << km << "\n";
}

ComplexityTable read_table(std::istream& in) {
  std::string machine = expect_key(in, "machine");
  if (machine != kMachineVersion)
    throw std::invalid_argument("table built by machine \"" + machine + "\", expected \"" +
                                kMachineVersion + "\"");
  EnumerationBudget budget;
  budget.max_program_len = std::stoi(expect_key(in, "B"));
  budget.out_cap = std::stoi(expect_key(in, "out_cap"));
  std::map<BitString, int> entries;
  std::string tok;
  int km;
  while (in >> tok >> km) entries[parse_node_token(tok)] = km;
  return ComplexityTable(budget, std::move(entries));
}

void write_family(std::ostream& out, const TestFamily& fam) {
  out << "family-version 1\n";
  out << "provenance " << provenance_name(fam.provenance) << "\n";
  out << "L " << fam.horizon << "\n";
  out << "n_max " << fam.n_max() << "\n";
  out << "table " << fam.table_version << "\n";
  std::istringstream detail(fam.provenance_detail);
  std::string line;
  std::size_t n_lines = 0;
  for (std::string tmp = fam.provenance_detail; !tmp.empty();) {
    auto nl = tmp.find('\n');
    ++n_lines;
    if (nl == std::string::npos) break;
    tmp.erase(0, nl + 1);
  }
  out << "detail " << n_lines << "\n";
  while (std::getline(detail, line)) out << line << "\n";
  for (int n = 1; n <= fam.n_max(); ++n) {
    const auto& level = fam.level(n);
    out << "level " << n << " " << level.size() << "\n";
    for (const auto& x : level.elements()) out << node_token(x) << "\n";
  }
}

TestFamily read_family(std::istream& in) {
  std::string version = expect_key(in, "family-version");
  if (version != "1") throw std::invalid_argument("unsupported family-version " + version);
  TestFamily fam;
  std::string prov = expect_key(in, "provenance");
  if (prov == "blind") fam.provenance = Provenance::Blind;
  else if (prov == "measure") fam.provenance = Provenance::MeasureBuilt;
  else if (prov == "external") fam.provenance = Provenance::External;
  else throw std::invalid_argument("unknown provenance \"" + prov + "\"");
  fam.horizon = std::stoi(expect_key(in, "L"));
  int n_max = std::stoi(expect_key(in, "n_max"));
  std::string key;
  if (!(in >> key) || key != "table") throw std::invalid_argument("expected table line");
  std::string line;
  std::getline(in, line);
  fam.table_version = line.empty() ? line : line.substr(1);  // strip leading space
  int detail_lines = std::stoi(expect_key(in, "detail"));
  std::getline(in, line);  // rest of the detail-count line
  std::string detail;
  for (int i = 0; i < detail_lines; ++i) {
    if (!std::getline(in, line)) throw std::invalid_argument("truncated detail block");
    detail += line;
    detail += "\n";
  }
  fam.provenance_detail = detail;
  for (int n = 1; n <= n_max; ++n) {
    int level_no, count;
    if (!(in >> key >> level_no >> count) || key != "level" || level_no != n)
      throw std::invalid_argument("expected level " + std::to_string(n));
    std::vector<BitString> elems;
    std::string tok;
    for (int i = 0; i < count; ++i) {
      if (!(in >> tok)) throw std::invalid_argument("truncated level block");
      elems.push_back(parse_node_token(tok));
    }
    fam.levels.emplace_back(std::move(elems));
  }
  return fam;
}

void write_levelled_code(std::ostream& out, const LevelledCode& lc) {
  out << "levelled-code-version 1\n";
  out << "c " << lc.c << "\n";
  for (const auto& [n, cb] : lc.levels) {
    out << "level " << n << " total " << cb.total.to_string() << " bound-constant "
        << lc.c + 2 << "\n";
    for (const auto& e : cb.entries)
      out << node_token(e.x) << " " << e.q.to_string() << " " << e.codeword.str() << "\n";
  }
}

json verification_report_json(const VerificationReport& r) {
  json levels = json::array();
  for (const auto& v : r.levels) {
    levels.push_back({{"n", v.n},
                      {"mass", v.mass.to_string()},
                      {"bound", v.bound.to_string()},
                      {"mass_ok", v.mass_ok},
                      {"nesting_ok", v.nesting_ok}});
  }
  return {{"bound_kind", r.bound_kind}, {"pass", r.pass}, {"levels", levels}};
}

json feasibility_report_json(const FeasibilityReport& r) {
  json intervals = json::object();
  for (const auto& [x, iv] : r.intervals) {
    intervals[node_token(x)] = {{"lo", iv.lo.to_string()},
                                {"hi", iv.hi.to_string()},
                                {"lo_open", iv.lo_open},
                                {"hi_open", iv.hi_open}};
  }
  json j = {{"depth", r.depth},
            {"verdict", r.feasible ? "feasible-to-depth" : "infeasible"},
            {"intervals", intervals}};
  if (r.violating_node) j["violating_node"] = node_token(*r.violating_node);
  return j;
}

json deficiency_profile_json(const DeficiencyProfile& p) {
  json rows = json::array();
  for (const auto& row : p.rows) {
    json j = {{"prefix", node_token(row.prefix)},
              {"neg_log_floor", row.neg_log.floor_neg_log},
              {"neg_log_ceil", row.neg_log.ceil_neg_log},
              {"deepest_level", row.deepest_level}};
    if (row.km) {
      j["km"] = *row.km;
      j["deficiency"] = {row.deficiency->first, row.deficiency->second};
    } else {
      j["km"] = nullptr;  // no evidence within budget
    }
    if (row.running_max) j["running_max"] = *row.running_max;
    rows.push_back(std::move(j));
  }
  return {{"rows", rows}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
}

}  // namespace hippo::io
