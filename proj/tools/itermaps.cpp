// itermaps command-line front end.
//
//   itermaps coeffs    --k 3 [--format text|json|csv]
//   itermaps order     --problem cubic --family bary --k 2 --x0 1.4
//   itermaps capture   --problem rutishauser --map compose:bary:3,bary:2 --out pts.csv
//   itermaps reproduce example1
//
// Exit codes: 0 success, 2 usage error, 3 problem-definition error, 1 internal.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "itermaps/itermaps.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace itermaps;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitProblem = 3;

struct GlobalOptions {
  unsigned threads = 0;
  long long seed = 0;
};

// Collects what a run wrote so a manifest can be emitted next to it.
struct RunRecord {
  std::string subcommand;
  json config;
  std::vector<std::string> outputs;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

std::string command_line(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

void write_manifest(const RunRecord& rec, const fs::path& where, const std::string& argv_line) {
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - rec.start).count();
  json m = {{"subcommand", rec.subcommand},
            {"config", rec.config},
            {"version", kVersion},
            {"command", argv_line},
            {"duration_seconds", secs},
            {"outputs", rec.outputs}};
  std::ofstream out(where, std::ios::binary);
  if (!out) throw CLI::ValidationError("--out", "cannot write manifest " + where.string());
  out << m.dump(2) << '\n';
}

std::ofstream open_output(const std::string& path, const char* flag) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CLI::ValidationError(flag, "cannot open '" + path + "' for writing");
  return out;
}

//------------------------------------------------------------------ coeffs

struct CoeffsOptions {
  int k = 0;
  int max_k = kDefaultMaxOrder;
  std::string format = "text";
};

void run_coeffs(const CoeffsOptions& o, std::ostream& out) {
  if (o.k > o.max_k)
    throw CLI::ValidationError("--k", "must be <= --max-k (" + std::to_string(o.max_k) + ")");
  const auto c = barycentric_coefficients(o.k, o.max_k);
  BigInt common = 1;
  for (const auto& a : c.a) common = boost::multiprecision::lcm(common, BigInt(denominator(a)));
  std::vector<BigInt> scaled;
  for (const auto& a : c.a) scaled.push_back(BigInt(numerator(a)) * (common / BigInt(denominator(a))));

  if (o.format == "json") {
    json j;
    j["k"] = o.k;
    j["common_denominator"] = common.str();
    j["scaled_numerators"] = json::array();
    for (const auto& s : scaled) j["scaled_numerators"].push_back(s.str());
    j["coefficients"] = json::array();
    for (std::size_t i = 0; i < c.a.size(); ++i)
      j["coefficients"].push_back({{"i", i},
                                   {"fraction", c.a[i].str()},
                                   {"numerator", BigInt(numerator(c.a[i])).str()},
                                   {"denominator", BigInt(denominator(c.a[i])).str()},
                                   {"decimal", rational_to<double>(c.a[i])}});
    out << j.dump(2) << '\n';
  } else if (o.format == "csv") {
    out << "i,fraction,decimal\n";
    for (std::size_t i = 0; i < c.a.size(); ++i)
      out << i << ',' << c.a[i].str() << ',' << format_real(rational_to<double>(c.a[i])) << '\n';
  } else {
    out << "k = " << o.k << '\n' << "a = (";
    for (std::size_t i = 0; i < scaled.size(); ++i) out << (i ? ", " : "") << scaled[i].str();
    out << ")/" << common.str() << '\n';
    for (std::size_t i = 0; i < c.a.size(); ++i) {
      char line[128];
      std::snprintf(line, sizeof line, "a_%-3zu %-24s %s\n", i, c.a[i].str().c_str(),
                    format_real(rational_to<double>(c.a[i])).c_str());
      out << line;
    }
  }
}

//------------------------------------------------------------------ order

struct OrderCliOptions {
  std::string problem;
  std::string family = "bary";
  int k = 1;
  double x0 = 0.0;
  int max_iter = 50;
  double tol = 1e-14;
  double error_floor = OrderOptions{}.error_floor;
};

IterativeMap order_map(const OrderCliOptions& o) {
  if (o.family == "newton") return IterativeMap::newton();
  if (o.family == "taylor") return IterativeMap::taylor(o.k);
  return IterativeMap::barycentric(o.k);
}

void run_order(const OrderCliOptions& o, std::ostream& out) {
  const auto p = problems::scalar_problem<double>(o.problem);
  if (!p) throw CLI::ValidationError("--problem", "unknown problem '" + o.problem + "'");
  const IterativeMap map = order_map(o);
  if (map.required_derivative_order() > p->max_derivative_order())
    throw ProblemDefinitionError(p->name() + " supplies derivatives through order " +
                                 std::to_string(p->max_derivative_order()) + ", map " + map.spec() + " needs " +
                                 std::to_string(map.required_derivative_order()));

  const auto traj = iterate<double>(*p, map, o.x0, o.max_iter, o.tol);
  json j;
  j["problem"] = p->name();
  j["map"] = map.spec();
  j["label"] = map.label();
  j["x0"] = o.x0;
  j["theoretical_order"] = map.theoretical_order();
  j["status"] = to_string(traj.status);
  if (!traj.message.empty()) j["message"] = traj.message;
  j["trajectory"] = traj.points;
  const auto root = p->known_root();
  if (root) {
    j["root"] = *root;
    std::vector<double> errs;
    for (double x : traj.points) errs.push_back(std::abs(x - *root));
    j["errors"] = errs;
    try {
      OrderOptions oo;
      oo.error_floor = o.error_floor;
      j["order"] = estimate_order(traj.points, *root, oo);
    } catch (const InsufficientDataError& e) {
      j["order"] = nullptr;
      j["order_note"] = e.what();
    }
  } else {
    j["order"] = nullptr;
  }
  out << j.dump(2) << '\n';
}

//------------------------------------------------------------------ capture

struct CaptureCliOptions {
  std::string problem = "rutishauser";
  std::string file;
  std::string map = "compose:bary:3,bary:2";
  int nx = 19;
  int ny = 19;
  double eps = 1e-3;
  std::string out;
  std::string format = "csv";
  double cluster_radius = kDefaultClusterRadius;
  std::string norm = "max";
  std::vector<double> domain;
};

VectorProblem load_capture_problem(const CaptureCliOptions& o) {
  if (o.problem == "file") {
    if (o.file.empty()) throw CLI::ValidationError("--file", "required when --problem file");
    std::ifstream in(o.file);
    if (!in) throw ProblemDefinitionError("cannot read problem file '" + o.file + "'");
    auto p = to_vector_problem(parse_polynomial_system(in));
    if (p.n != 2) throw ProblemDefinitionError("capture needs a 2-D system, '" + o.file + "' has n = " +
                                               std::to_string(p.n));
    return p;
  }
  auto p = problems::vector_problem(o.problem);
  if (!p) throw CLI::ValidationError("--problem", "unknown problem '" + o.problem + "'");
  return *p;
}

CaptureConfig capture_config(const CaptureCliOptions& o, const VectorProblem& p, unsigned threads) {
  CaptureConfig cfg;
  try {
    cfg.map = parse_map_spec(o.map);
  } catch (const MapSpecError& e) {
    throw CLI::ValidationError("--map", e.what());
  }
  cfg.grid.domain = p.domain;
  if (!o.domain.empty()) {
    if (!(o.domain[0] < o.domain[1]) || !(o.domain[2] < o.domain[3]))
      throw CLI::ValidationError("--domain", "bounds must satisfy xmin < xmax and ymin < ymax");
    cfg.grid.domain = make_box(o.domain[0], o.domain[1], o.domain[2], o.domain[3]);
  }
  cfg.grid.nx = o.nx;
  cfg.grid.ny = o.ny;
  cfg.tolerance = o.eps;
  cfg.cluster_radius = o.cluster_radius;
  cfg.norm = o.norm == "euclidean" ? NormKind::Euclidean : NormKind::Max;
  cfg.threads = threads;
  return cfg;
}

void print_cluster_table(std::ostream& out, const std::vector<Cluster>& clusters, const VectorProblem& p) {
  out << "  cluster        x           y     count           g\n";
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    const auto& c = clusters[i];
    char line[160];
    const std::string g = p.objective ? format_fixed6((*p.objective)(c.representative)) : "";
    std::snprintf(line, sizeof line, "  %7zu %11s %11s %7zu %11s\n", i, format_fixed6(c.representative(0)).c_str(),
                  format_fixed6(c.representative(1)).c_str(), c.count, g.c_str());
    out << line;
  }
}

void print_counts(std::ostream& out, const CaptureCounts& c) {
  out << "seeded " << c.seeded << ", skipped_singular " << c.skipped_singular << ", skipped_outside "
      << c.skipped_outside << ", step_failures " << c.step_failures << ", rejected_tolerance "
      << c.rejected_tolerance << ", captured " << c.captured << '\n';
}

void run_capture_cmd(const CaptureCliOptions& o, const GlobalOptions& g, RunRecord& rec) {
  const VectorProblem p = load_capture_problem(o);
  const CaptureConfig cfg = capture_config(o, p, g.threads);
  const CaptureResult res = run_capture(p, cfg);

  rec.config = to_json(cfg);
  rec.config["problem"] = p.name;
  if (!o.file.empty()) rec.config["file"] = o.file;
  rec.config["format"] = o.format;
  rec.config["threads"] = g.threads;

  auto emit = [&](std::ostream& out) {
    if (o.format == "json") {
      json j = {{"problem", p.name}, {"config", rec.config}, {"result", to_json(res, &p)}};
      out << j.dump(2) << '\n';
    } else {
      write_capture_csv(out, res);
    }
  };
  if (o.out.empty()) {
    emit(std::cout);
    return;
  }
  {
    auto file = open_output(o.out, "--out");
    emit(file);
  }
  rec.outputs.push_back(o.out);
  std::cout << p.name << " " << cfg.map.label() << " grid " << cfg.grid.nx << "x" << cfg.grid.ny << " eps "
            << format_real(cfg.tolerance) << '\n';
  print_counts(std::cout, res.counts);
  print_cluster_table(std::cout, res.clusters, p);
}

//------------------------------------------------------------------ reproduce

struct ReproMap {
  std::string spec;
  long published_count;
};

struct ReproCase {
  std::string name;
  std::string problem;
  int n;
  double eps;
  std::vector<ReproMap> maps;
  std::string published_note;
  double listing_radius;  // clusters farther than this from the origin are not listed; 0 lists all
};

std::optional<ReproCase> repro_case(const std::string& name) {
  if (name == "example1")
    return ReproCase{name,
                     "rutishauser",
                     19,
                     1e-3,
                     {{"newton", 1},
                      {"bary:1", 50},
                      {"bary:2", 8},
                      {"bary:3", 89},
                      {"bary:4", 4},
                      {"bary:5", 77},
                      {"compose:bary:2,bary:1", 6},
                      {"compose:bary:3,bary:2", 18}},
                     "published mesh widths dx ~ 0.0876712, dy ~ 0.0931507 do not match 19 vertices on this domain",
                     0.0};
  if (name == "example2-coarse")
    return ReproCase{name,
                     "ackley",
                     19,
                     1e-3,
                     {{"newton", 12},
                      {"bary:1", 28},
                      {"bary:2", 60},
                      {"bary:3", 64},
                      {"bary:4", 52},
                      {"compose:bary:5,bary:4", 208}},
                     "published text states t_0 captures 9 points; its table lists 12",
                     0.0};
  if (name == "example2-fine")
    return ReproCase{name, "ackley", 41, 0.1, {{"compose:bary:5,bary:4", 664}},
                     "published text states 664 captured points; its figure caption states 1458", 3.0};
  return std::nullopt;
}

struct ReproOptions {
  std::string example;
  std::string out;
  std::string data_dir;
  std::string format = "text";
};

void run_reproduce(const ReproOptions& o, const GlobalOptions& g, RunRecord& rec) {
  const auto rc = repro_case(o.example);
  if (!rc) throw CLI::ValidationError("example", "unknown example '" + o.example + "'");
  const VectorProblem p = *problems::vector_problem(rc->problem);

  std::vector<CaptureConfig> configs;
  std::vector<CaptureResult> results;
  for (const auto& m : rc->maps) {
    CaptureConfig cfg;
    cfg.grid = GridSpec{p.domain, rc->n, rc->n};
    cfg.tolerance = rc->eps;
    cfg.map = parse_map_spec(m.spec);
    cfg.threads = g.threads;
    results.push_back(run_capture(p, cfg));
    configs.push_back(std::move(cfg));
  }

  rec.config = {{"example", rc->name}, {"problem", p.name}, {"nx", rc->n}, {"ny", rc->n},
                {"eps", rc->eps},      {"threads", g.threads}, {"format", o.format}};
  rec.config["maps"] = json::array();
  for (const auto& m : rc->maps) rec.config["maps"].push_back(m.spec);

  std::ostringstream report;
  if (o.format == "json") {
    json j;
    j["example"] = rc->name;
    j["problem"] = p.name;
    j["note"] = rc->published_note;
    j["runs"] = json::array();
    for (std::size_t i = 0; i < results.size(); ++i)
      j["runs"].push_back({{"map", rc->maps[i].spec},
                           {"label", configs[i].map.label()},
                           {"config", to_json(configs[i])},
                           {"published_count", rc->maps[i].published_count},
                           {"result", to_json(results[i], &p)}});
    report << j.dump(2) << '\n';
  } else {
    const GridSpec& grid = configs.front().grid;
    report << rc->name << ": " << p.name << " on [" << format_fixed6(grid.domain.lower(0)) << ", "
           << format_fixed6(grid.domain.upper(0)) << "] x [" << format_fixed6(grid.domain.lower(1)) << ", "
           << format_fixed6(grid.domain.upper(1)) << "], grid " << grid.nx << "x" << grid.ny << " (dx "
           << format_fixed6(grid.dx()) << ", dy " << format_fixed6(grid.dy()) << "), eps " << format_real(rc->eps)
           << ", max-norm\n\n";
    report << "map        captured   publ.  clusters  singular  outside  failures  rejected\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& c = results[i].counts;
      char line[200];
      std::snprintf(line, sizeof line, "%-9s %9zu %7ld %9zu %9zu %8zu %9zu %9zu\n",
                    configs[i].map.label().c_str(), c.captured, rc->maps[i].published_count, results[i].clusters.size(),
                    c.skipped_singular, c.skipped_outside, c.step_failures, c.rejected_tolerance);
      report << line;
    }
    report << "\ncounts (ours):  ";
    for (std::size_t i = 0; i < results.size(); ++i) report << (i ? ", " : "") << results[i].counts.captured;
    report << "\ncounts (publ.): ";
    for (std::size_t i = 0; i < rc->maps.size(); ++i) report << (i ? ", " : "") << rc->maps[i].published_count;
    report << "\nnote: " << rc->published_note << "\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
      std::vector<Cluster> shown;
      for (const auto& cl : results[i].clusters)
        if (rc->listing_radius <= 0 || cl.representative.norm() <= rc->listing_radius) shown.push_back(cl);
      report << "\nclusters for " << configs[i].map.label();
      if (rc->listing_radius > 0)
        report << " within " << format_real(rc->listing_radius) << " of the origin (" << shown.size() << " of "
               << results[i].clusters.size() << ")";
      report << ":\n";
      print_cluster_table(report, shown, p);
    }
  }

  if (!o.data_dir.empty()) {
    std::error_code ec;
    fs::create_directories(o.data_dir, ec);
    if (ec) throw CLI::ValidationError("--data-dir", "cannot create '" + o.data_dir + "'");
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto path = (fs::path(o.data_dir) / (rc->name + "_" + configs[i].map.label() + ".csv")).string();
      auto file = open_output(path, "--data-dir");
      write_capture_csv(file, results[i]);
      rec.outputs.push_back(path);
    }
  }
  if (o.out.empty()) {
    std::cout << report.str();
  } else {
    auto file = open_output(o.out, "--out");
    file << report.str();
    rec.outputs.insert(rec.outputs.begin(), o.out);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Higher-order iterative root-finding maps and grid-scan capture"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--threads", g.threads, "Worker threads for grid scans (0 = auto)")->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for randomized utilities (recorded in manifests)")->capture_default_str();

  CoeffsOptions co;
  auto* coeffs = app.add_subcommand("coeffs", "Print barycentric coefficients a_0..a_k as fractions and decimals");
  coeffs->add_option("--k", co.k, "Order k")->required()->check(CLI::NonNegativeNumber);
  coeffs->add_option("--max-k", co.max_k, "Largest admissible k")->capture_default_str()->check(CLI::NonNegativeNumber);
  coeffs->add_option("--format", co.format, "Output format")
      ->capture_default_str()
      ->check(CLI::IsMember({"text", "json", "csv"}));

  OrderCliOptions oo;
  auto* order = app.add_subcommand("order", "Iterate a scalar map and estimate its convergence order (JSON)");
  order->add_option("--problem", oo.problem, "Scalar problem")->required()->check(CLI::IsMember({"cubic", "exp", "sin"}));
  order->add_option("--family", oo.family, "Map family")
      ->capture_default_str()
      ->check(CLI::IsMember({"newton", "taylor", "bary"}));
  order->add_option("--k", oo.k, "Family index k (ignored for newton)")
      ->capture_default_str()
      ->check(CLI::Range(0, kDefaultMaxOrder));
  order->add_option("--x0", oo.x0, "Starting point")->required();
  order->add_option("--max-iter", oo.max_iter, "Iteration limit")->capture_default_str()->check(CLI::PositiveNumber);
  order->add_option("--tol", oo.tol, "Stop when |f(x)| <= tol")->capture_default_str()->check(CLI::PositiveNumber);
  order->add_option("--error-floor", oo.error_floor, "Errors at or below this are ignored by the estimator")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  CaptureCliOptions cap;
  auto* capture = app.add_subcommand("capture", "Grid-scan capture of zeros with two iterations per vertex");
  capture->add_option("--problem", cap.problem, "Problem")
      ->capture_default_str()
      ->check(CLI::IsMember({"rutishauser", "ackley", "file"}));
  capture->add_option("--file", cap.file, "Polynomial system file (with --problem file)");
  capture->add_option("--map", cap.map, "Map spec: newton | taylor:k | bary:k | compose:<spec>,<spec>")
      ->capture_default_str();
  capture->add_option("--nx", cap.nx, "Grid vertices along x")->capture_default_str()->check(CLI::Range(2, 100000));
  capture->add_option("--ny", cap.ny, "Grid vertices along y")->capture_default_str()->check(CLI::Range(2, 100000));
  capture->add_option("--eps", cap.eps, "Capture tolerance on ||f(X2)|| (must be positive)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  capture->add_option("--domain", cap.domain, "Override domain: xmin xmax ymin ymax")->expected(4);
  capture->add_option("--out", cap.out, "Output path (stdout when omitted)");
  capture->add_option("--format", cap.format, "Output format")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "json"}));
  capture->add_option("--cluster-radius", cap.cluster_radius, "Clustering radius")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  capture->add_option("--norm", cap.norm, "Norm for the tolerance test")
      ->capture_default_str()
      ->check(CLI::IsMember({"max", "euclidean"}));

  ReproOptions ro;
  auto* reproduce = app.add_subcommand("reproduce", "Run a numerical example and compare capture counts");
  reproduce->add_option("example", ro.example, "Example to run")
      ->required()
      ->check(CLI::IsMember({"example1", "example2-coarse", "example2-fine"}));
  reproduce->add_option("--out", ro.out, "Report path (stdout when omitted)");
  reproduce->add_option("--data-dir", ro.data_dir, "Directory for per-map capture CSV datasets");
  reproduce->add_option("--format", ro.format, "Report format")
      ->capture_default_str()
      ->check(CLI::IsMember({"text", "json"}));

  RunRecord rec;
  try {
    app.parse(argc, argv);
    if (coeffs->parsed()) {
      rec.subcommand = "coeffs";
      run_coeffs(co, std::cout);
    } else if (order->parsed()) {
      rec.subcommand = "order";
      run_order(oo, std::cout);
    } else if (capture->parsed()) {
      rec.subcommand = "capture";
      run_capture_cmd(cap, g, rec);
    } else if (reproduce->parsed()) {
      rec.subcommand = "reproduce";
      run_reproduce(ro, g, rec);
    }
    if (!rec.outputs.empty()) {
      rec.config["seed"] = g.seed;
      const fs::path first = rec.outputs.front();
      write_manifest(rec, first.string() + ".manifest.json", command_line(argc, argv));
    }
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  } catch (const ProblemDefinitionError& e) {
    std::cerr << "problem definition error: " << e.what() << '\n';
    return kExitProblem;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
