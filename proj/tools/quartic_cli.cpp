// Command-line driver: curve generation, two-cover descent, batch
// experiments, small-field enumerations, and rational point search.

#include "quartic/serialize.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using namespace quartic;

namespace {

constexpr int kCsvSchemaVersion = 1;

/// Cache hooks bound to $QUARTIC_CACHE_DIR/<curve-hash>.json, one file
/// per curve with one entry per place.
struct FileCache {
  fs::path file;
  json data = json::object();
  std::mutex mu;

  explicit FileCache(const fs::path& dir, std::uint64_t hash) {
    fs::create_directories(dir);
    std::ostringstream name;
    name << std::hex << hash << ".json";
    file = dir / name.str();
    if (fs::exists(file)) {
      try {
        data = read_json(file);
      } catch (...) {
        data = json::object();
      }
    }
  }

  std::optional<LocalImageSet> get(const Place& v) {
    std::lock_guard<std::mutex> lock(mu);
    auto it = data.find(v.str());
    if (it == data.end()) return std::nullopt;
    LocalImageSet img{v, {}, (*it)["complete"].get<bool>()};
    for (const auto& s : (*it)["values"]) {
      std::string bits = s.get<std::string>();
      F2Vec x(bits.size());
      for (std::size_t i = 0; i < bits.size(); ++i) x.set(i, bits[i] == '1');
      img.values.insert(x);
    }
    return img;
  }

  void put(const Place& v, const LocalImageSet& img) {
    std::lock_guard<std::mutex> lock(mu);
    json vals = json::array();
    for (const auto& x : img.values) vals.push_back(x.str());
    data[v.str()] = {{"values", vals}, {"complete", img.complete}};
    write_json(file, data);
  }
};

void attach_cache(DescentConfig& cfg, std::shared_ptr<FileCache> cache) {
  if (!cache) return;
  cfg.cache_get = [cache](const Place& v) { return cache->get(v); };
  cfg.cache_put = [cache](const Place& v, const LocalImageSet& img) {
    cache->put(v, img);
  };
}

std::shared_ptr<FileCache> open_cache(const LabelledQuartic& curve) {
  const char* dir = std::getenv("QUARTIC_CACHE_DIR");
  if (!dir || !*dir) return nullptr;
  return std::make_shared<FileCache>(fs::path(dir), curve_hash(curve));
}

LabelledQuartic load_bundle(const std::string& path) {
  LabelledQuartic c = curve_from_json(read_json(path));
  verify_bundle(c);
  return c;
}

/// Deterministic uniform integer in [lo, hi] via rejection (the standard
/// distributions are not portable across library implementations).
long uniform_in(std::mt19937_64& rng, long lo, long hi) {
  std::uint64_t span = std::uint64_t(hi - lo + 1);
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / span * span;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return lo + long(x % span);
}

std::string category_of(const LabelledQuartic& curve, const SelmerReport& rep) {
  if (rep.local_obstruction) return "local_obstruction";
  if (rep.conclusion == Conclusion::NoRationalPoint) return "selmer_empty";
  if (rep.conclusion == Conclusion::HasRationalPoint) {
    for (const auto& P : rep.points)
      for (int li = 0; li < 28; ++li)
        if (LabelledQuartic::eval_line(curve.lines[li], P) == 0)
          return "contact_point";
    return "other_point";
  }
  return "undetermined";
}

int cmd_generate(const std::string& moduli_str, const std::string& out) {
  std::array<Int, 6> m;
  {
    std::stringstream ss(moduli_str);
    std::string tok;
    int k = 0;
    while (std::getline(ss, tok, ',') && k < 6) m[k++] = Int(tok);
    if (k != 6) {
      std::cerr << "error: --moduli needs u1,v1,u2,v2,u3,v3\n";
      return 1;
    }
  }
  PointConfiguration cfg = PointConfiguration::from_moduli(m);
  if (auto w = degeneracy_witness(cfg)) {
    std::cerr << "error: configuration not in general position: " << *w << "\n";
    return 1;
  }
  LabelledQuartic c = construct_curve(m);
  compute_syzygies(c);
  json j = curve_to_json(c);
  if (out.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_json(out, j);
  return 0;
}

int cmd_descent(const std::string& bundle, const DescentConfig& cfg0,
                const std::string& out) {
  LabelledQuartic c = load_bundle(bundle);
  DescentConfig cfg = cfg0;
  attach_cache(cfg, open_cache(c));
  SelmerReport rep = two_cover_descent(c, cfg);
  json j = report_to_json(rep);
  if (out.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_json(out, j);
  return rep.conclusion == Conclusion::Undetermined ? 2 : 0;
}

int cmd_pointsearch(const std::string& bundle, const Int& height, unsigned threads,
                    const std::string& out) {
  LabelledQuartic c = load_bundle(bundle);
  auto pts = point_search(c, height, threads);
  json j;
  j["height"] = height.str();
  json arr = json::array();
  for (const auto& P : pts) arr.push_back(line_to_json(P));
  j["points"] = arr;
  if (out.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_json(out, j);
  return 0;
}

int cmd_smallfields(int q) {
  json j;
  j["q"] = q;
  long n;
  switch (q) {
    case 3: n = count_general_position_completions(PrimeField(3)); break;
    case 5: n = count_general_position_completions(PrimeField(5)); break;
    case 7: n = count_general_position_completions(PrimeField(7)); break;
    case 9: n = count_general_position_completions(make_Fq2(3)); break;
    case 11: n = count_general_position_completions(PrimeField(11)); break;
    default:
      std::cerr << "error: q must be one of 3, 5, 7, 9, 11\n";
      return 1;
  }
  j["generalPositionTriples"] = n;
  if (q == 9) {
    TernaryZ fermat(4);
    fermat.coeff(4, 0) = 1;
    fermat.coeff(0, 4) = 1;
    fermat.coeff(0, 0) = 1;
    j["curvePoints"] = {{"C9", count_points_Fq(make_Fq2(3), fermat)}};
  }
  if (q == 11) {
    TernaryZ c11(4);
    c11.coeff(4, 0) = 1;
    c11.coeff(0, 4) = 1;
    c11.coeff(0, 0) = 1;
    c11.coeff(2, 2) = 1;
    c11.coeff(2, 0) = 1;
    c11.coeff(0, 2) = 1;
    j["curvePoints"] = {{"C11", count_points_Fq(PrimeField(11), c11)}};
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

struct BatchConfig {
  long range = 40;
  long samples = 30;
  std::uint64_t seed = 1;
  unsigned threads = 2;
  std::string collection = "B";
  Int filter_bound = 50;
  Int height = 10000;
  std::string outdir = "batch_out";
};

int cmd_batch(const BatchConfig& bc) {
  fs::create_directories(bc.outdir);
  // sample the moduli deterministically up front
  std::mt19937_64 rng(bc.seed);
  std::vector<std::array<Int, 6>> samples;
  while (long(samples.size()) < bc.samples) {
    std::array<long, 6> m;
    for (int k = 0; k < 6; ++k) m[k] = uniform_in(rng, -bc.range, bc.range);
    if (bc.collection == "A") {
      // normalization of collection A: u1 < u2 < u3 and u1 < v1
      if (!(m[0] < m[2] && m[2] < m[4] && m[0] < m[1])) continue;
    }
    std::array<Int, 6> mi;
    for (int k = 0; k < 6; ++k) mi[k] = m[k];
    if (!general_position(PointConfiguration::from_moduli(mi))) continue;
    samples.push_back(mi);
  }
  {
    json cfgj;
    cfgj["schema"] = kCsvSchemaVersion;
    cfgj["seed"] = bc.seed;
    cfgj["range"] = bc.range;
    cfgj["samples"] = bc.samples;
    cfgj["collection"] = bc.collection;
    cfgj["filterBound"] = bc.filter_bound.str();
    cfgj["height"] = bc.height.str();
    write_json(fs::path(bc.outdir) / "config.json", cfgj);
  }

  std::atomic<long> next{0};
  std::mutex mu;
  std::vector<std::string> rows(samples.size());
  auto worker = [&] {
    for (;;) {
      long i = next.fetch_add(1);
      if (i >= long(samples.size())) return;
      const auto& m = samples[i];
      fs::path report_file = fs::path(bc.outdir) / ("report_" + std::to_string(i) + ".json");
      std::ostringstream row;
      row << kCsvSchemaVersion << "," << i;
      for (int k = 0; k < 6; ++k) row << "," << m[k];
      try {
        json repj;
        std::string category;
        if (fs::exists(report_file)) {
          repj = read_json(report_file);
          category = repj["category"].get<std::string>();
        } else {
          LabelledQuartic c = construct_curve(m);
          compute_syzygies(c);
          DescentConfig cfg;
          cfg.filter_bound = bc.filter_bound;
          cfg.search_height = bc.height;
          cfg.threads = 1;  // batch parallelism is across curves
          attach_cache(cfg, open_cache(c));
          SelmerReport rep = two_cover_descent(c, cfg);
          category = category_of(c, rep);
          repj = report_to_json(rep);
          repj["category"] = category;
          repj["moduli"] = curve_to_json(c)["moduli"];
          write_json(report_file, repj);
          write_json(fs::path(bc.outdir) / ("curve_" + std::to_string(i) + ".json"),
                     curve_to_json(c));
        }
        row << "," << category << "," << repj["conclusion"].get<std::string>()
            << "," << repj["survivors"].get<long>() << ","
            << repj["S"].size() << "," << repj["jacSelmer"]["dim"].get<long>()
            << "," << (repj["jacSelmer"]["exact"].get<bool>() ? 1 : 0) << ","
            << repj["points"].size() << ",";
      } catch (const std::exception& e) {
        std::string msg = e.what();
        for (auto& ch : msg)
          if (ch == ',' || ch == '\n') ch = ';';
        row << ",error,,,,,,," << msg;
      }
      std::lock_guard<std::mutex> lock(mu);
      rows[i] = row.str();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::max(1u, bc.threads); ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::ofstream csv(fs::path(bc.outdir) / "summary.csv");
  csv << "schema,index,u1,v1,u2,v2,u3,v3,category,conclusion,survivors,S_size,"
         "jac_dim,jac_exact,n_points,error\n";
  for (const auto& r : rows) csv << r << "\n";
  std::cout << "wrote " << samples.size() << " rows to " << bc.outdir
            << "/summary.csv\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-cover descent on plane quartics with rational bitangents"};
  app.require_subcommand(1);

  std::string moduli_str, bundle, out;
  DescentConfig dcfg;
  std::string filter_primes_csv;
  Int height = 10000;
  unsigned threads = 2;
  int q = 9;
  BatchConfig bc;

  auto* gen = app.add_subcommand("generate", "construct a curve bundle from moduli");
  gen->add_option("--moduli", moduli_str, "u1,v1,u2,v2,u3,v3")->required();
  gen->add_option("--out", out, "output file (stdout if omitted)");

  auto* des = app.add_subcommand("descent", "run two-cover descent on a bundle");
  des->add_option("--bundle", bundle, "curve bundle JSON")->required();
  std::string filter_bound_str = "50", height_str = "10000";
  des->add_option("--filter-bound", filter_bound_str, "N: filter primes of size <= N");
  des->add_option("--filter-primes", filter_primes_csv,
                  "comma-separated explicit filter primes (overrides the bound)");
  des->add_option("--height", height_str, "point search height bound");
  des->add_option("--threads", threads, "worker threads for point search");
  des->add_option("--out", out, "report output file (stdout if omitted)");

  auto* bat = app.add_subcommand("batch", "seeded batch experiment");
  bat->add_option("--range", bc.range, "coordinate range R: moduli in [-R, R]");
  bat->add_option("--samples", bc.samples, "number of curves")->required();
  bat->add_option("--seed", bc.seed, "RNG seed")->required();
  bat->add_option("--threads", bc.threads, "worker threads");
  bat->add_option("--collection", bc.collection, "A or B style sampling");
  std::string b_filter = "50", b_height = "10000";
  bat->add_option("--filter-bound", b_filter, "N for each descent");
  bat->add_option("--height", b_height, "point search height per curve");
  bat->add_option("--outdir", bc.outdir, "output directory");

  auto* sf = app.add_subcommand("smallfields", "general-position counts over F_q");
  sf->add_option("--q", q, "field size (3, 5, 7, 9, 11)")->required();

  auto* ps = app.add_subcommand("pointsearch", "search rational points on a bundle");
  ps->add_option("--bundle", bundle, "curve bundle JSON")->required();
  std::string ps_height = "10000";
  ps->add_option("--height", ps_height, "height bound");
  ps->add_option("--threads", threads, "worker threads");
  ps->add_option("--out", out, "output file (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_generate(moduli_str, out);
    if (des->parsed()) {
      dcfg.filter_bound = Int(filter_bound_str);
      dcfg.search_height = Int(height_str);
      dcfg.threads = threads;
      if (!filter_primes_csv.empty()) {
        std::stringstream ss(filter_primes_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) dcfg.filter_primes.push_back(Int(tok));
      }
      return cmd_descent(bundle, dcfg, out);
    }
    if (bat->parsed()) {
      bc.filter_bound = Int(b_filter);
      bc.height = Int(b_height);
      return cmd_batch(bc);
    }
    if (sf->parsed()) return cmd_smallfields(q);
    if (ps->parsed()) return cmd_pointsearch(bundle, Int(ps_height), threads, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
