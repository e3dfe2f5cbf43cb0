#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>

#include "genent/algebra.hpp"
#include "genent/channels.hpp"
#include "genent/error.hpp"
#include "genent/measures.hpp"
#include "genent/parallel.hpp"
#include "genent/purity.hpp"
#include "genent/states.hpp"
#include "genent/xymodel.hpp"

namespace genent::cli {

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

// Thrown for configuration problems that CLI11 cannot see (names, shapes).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AlgebraSpec {
  std::string name = "local-qubits";
  std::size_t n = 2;
  std::size_t dim_a = 2;
  std::size_t dim_b = 2;
  std::size_t dim = 2;
  double spin = 1.0;
  std::size_t copies = 0;  // 0: 1 for spin, 2 for collective-spin
};

struct StateSpec {
  std::string name = "product";
  std::string label;
  double theta = 0.0;
  double phi = 0.0;
  double m = 0.0;
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::string file;
  double g = 0.5;
  double eta = 1.0;
};

struct MixedSpec {
  std::string kind = "pure";
  double p = 0.5;
  std::size_t rank = 2;
  std::uint64_t seed = 0;
  std::string file;
};

const std::vector<std::string> kAlgebraNames = {"local-qubits", "bipartite",  "spin",
                                                "collective-spin", "fermion-u", "fermion-so",
                                                "fermion-so-even", "su"};
const std::vector<std::string> kStateNames = {"ghz",  "w",     "up",       "down",      "product",
                                              "bell", "spin",  "spin-coherent", "basis", "haar",
                                              "vacuum", "xy-ground", "bcs", "csv"};

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

ObservableAlgebra make_algebra(const AlgebraSpec& a) {
  try {
    if (a.name == "local-qubits") return local_qubit_algebra(a.n);
    if (a.name == "bipartite") return bipartite_algebra(a.dim_a, a.dim_b);
    if (a.name == "spin") {
      if (a.copies > 1) throw ConfigError("--copies: the spin algebra has one copy; use collective-spin");
      return spin_algebra(a.spin, 1);
    }
    if (a.name == "collective-spin") return spin_algebra(a.spin, a.copies == 0 ? 2 : a.copies);
    if (a.name == "fermion-u") return fermion_u_algebra(a.n);
    if (a.name == "fermion-so") return fermion_so_algebra(a.n);
    if (a.name == "fermion-so-even") return fermion_so_even_algebra(a.n);
    if (a.name == "su") return special_unitary_algebra(a.dim);
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("--algebra ") + a.name + ": " + e.what());
  }
  throw ConfigError("--algebra: unknown algebra '" + a.name + "' (expected one of " + join(kAlgebraNames) + ")");
}

std::size_t qubit_count(std::size_t dim, const std::string& state) {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  if ((std::size_t{1} << n) != dim || n == 0)
    throw ConfigError("--state " + state + ": needs a qubit register, algebra dimension is " + std::to_string(dim));
  return n;
}

PureState make_state(const StateSpec& s, const ObservableAlgebra& alg, const AlgebraSpec& a) {
  const std::size_t dim = alg.dim();
  const std::string& name = s.name;
  auto state = [&]() -> PureState {
    if (name == "ghz") return ghz(qubit_count(dim, name));
    if (name == "w") return w_state(qubit_count(dim, name));
    if (name == "up") return PureState::basis(dim, 0);
    if (name == "down") {
      qubit_count(dim, name);
      return PureState::basis(dim, dim - 1);
    }
    if (name == "product") {
      const BlochVector b{std::sin(s.theta) * std::cos(s.phi), std::sin(s.theta) * std::sin(s.phi),
                          std::cos(s.theta)};
      const std::vector<BlochVector> all(qubit_count(dim, name), b);
      return product_state(all);
    }
    if (name == "bell") {
      if (dim != 4) throw ConfigError("--state bell: needs a two-qubit algebra");
      return ghz(2);
    }
    if (name == "spin" || name == "spin-coherent") {
      const double j = alg.kind() == AlgebraKind::Spin || alg.kind() == AlgebraKind::CollectiveSpin ? alg.spin()
                                                                                                      : a.spin;
      const std::size_t copies = alg.kind() == AlgebraKind::CollectiveSpin ? alg.copies() : 1;
      const PureState one = name == "spin" ? spin_basis_state(j, s.m) : spin_coherent(j, s.theta, s.phi);
      return tensor_power(one, copies);
    }
    if (name == "basis") return PureState::basis(dim, s.index);
    if (name == "haar") return haar_random(dim, s.seed);
    if (name == "vacuum") return fock_vacuum(qubit_count(dim, name));
    if (name == "xy-ground") return xy::exact_ground({qubit_count(dim, name), s.g, s.eta}).state;
    if (name == "bcs") return xy::bcs_state({qubit_count(dim, name), s.g, s.eta});
    if (name == "csv") {
      if (s.file.empty()) throw ConfigError("--state csv: --file is required");
      return read_amplitudes_csv(std::filesystem::path(s.file), dim);
    }
    throw ConfigError("--state: unknown state '" + name + "' (expected one of " + join(kStateNames) + ")");
  };
  try {
    PureState psi = state();
    if (psi.dim() != dim)
      throw ConfigError("--state " + name + ": dimension " + std::to_string(psi.dim()) +
                        " does not match the algebra dimension " + std::to_string(dim));
    return psi;
  } catch (const InvalidArgument& e) {
    throw ConfigError("--state " + name + ": " + e.what());
  }
}

DensityMatrix make_mixed(const MixedSpec& mx, const StateSpec& s, const ObservableAlgebra& alg,
                         const AlgebraSpec& a) {
  const std::size_t dim = alg.dim();
  try {
    if (mx.kind == "pure") return DensityMatrix::from_pure(make_state(s, alg, a));
    if (mx.kind == "werner") {
      if (dim != 4) throw ConfigError("--mixed werner: needs a two-qubit algebra");
      if (mx.p < 0.0 || mx.p > 1.0) throw ConfigError("--p: must lie in [0, 1]");
      const CMatrix phi = ghz(2).projector();
      return DensityMatrix(mx.p * phi + (1.0 - mx.p) * CMatrix::Identity(4, 4) / 4.0);
    }
    if (mx.kind == "random") {
      std::mt19937_64 rng(mx.seed);
      return random_mixed(dim, mx.rank, rng);
    }
    if (mx.kind == "csv") {
      if (mx.file.empty()) throw ConfigError("--mixed csv: --rho-file is required");
      return read_density_csv(std::filesystem::path(mx.file), dim);
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError("--mixed " + mx.kind + ": " + e.what());
  }
  throw ConfigError("--mixed: unknown kind '" + mx.kind + "' (expected pure, werner, random, csv)");
}

std::string state_label(const StateSpec& s) { return s.label.empty() ? s.name : s.label; }

void add_algebra_options(CLI::App* sub, AlgebraSpec& a) {
  sub->add_option("--algebra", a.name, "Algebra: " + join(kAlgebraNames))->capture_default_str();
  sub->add_option("--n", a.n, "Qubits / fermion modes")->capture_default_str();
  sub->add_option("--dim-a", a.dim_a, "Bipartite: first factor dimension")->capture_default_str();
  sub->add_option("--dim-b", a.dim_b, "Bipartite: second factor dimension")->capture_default_str();
  sub->add_option("--dim", a.dim, "su(d): dimension")->capture_default_str();
  sub->add_option("--spin", a.spin, "Spin j (2j a positive integer)")->capture_default_str();
  sub->add_option("--copies", a.copies, "Collective spin: number of copies (default 2)");
}

void add_state_options(CLI::App* sub, StateSpec& s) {
  sub->add_option("--state", s.name, "State: " + join(kStateNames))->capture_default_str();
  sub->add_option("--label", s.label, "Row label (default: the state name)");
  sub->add_option("--theta", s.theta, "Polar angle (product, spin-coherent)")->capture_default_str();
  sub->add_option("--phi", s.phi, "Azimuth (product, spin-coherent)")->capture_default_str();
  sub->add_option("--m", s.m, "Spin projection (spin)")->capture_default_str();
  sub->add_option("--index", s.index, "Basis index (basis)")->capture_default_str();
  sub->add_option("--state-seed", s.seed, "Seed (haar)")->capture_default_str();
  sub->add_option("--file", s.file, "Amplitude CSV index,re,im (csv)");
  sub->add_option("--g", s.g, "XY coupling (xy-ground, bcs)")->capture_default_str();
  sub->add_option("--eta", s.eta, "XY anisotropy (xy-ground, bcs)")->capture_default_str();
}

void add_mixed_options(CLI::App* sub, MixedSpec& m) {
  sub->add_option("--mixed", m.kind, "Density matrix: pure (from --state), werner, random, csv")
      ->capture_default_str();
  sub->add_option("--p", m.p, "Werner weight of the Bell projector")->capture_default_str();
  sub->add_option("--rank", m.rank, "Random mixed state rank")->capture_default_str();
  sub->add_option("--mixed-seed", m.seed, "Random mixed state seed")->capture_default_str();
  sub->add_option("--rho-file", m.file, "Density CSV row,col,re,im (csv)");
}

struct Output {
  std::string path;
  std::ostream* sink = nullptr;
  std::unique_ptr<std::ofstream> file;

  std::ostream& open(std::ostream& fallback) {
    if (path.empty()) return fallback;
    file = std::make_unique<std::ofstream>(path);
    if (!*file) throw ConfigError("--out: cannot open '" + path + "' for writing");
    return *file;
  }
};

int run_purity(const AlgebraSpec& a, const StateSpec& s, double tol, double degeneracy, std::ostream& out) {
  const ObservableAlgebra alg = make_algebra(a);
  const PureState psi = make_state(s, alg, a);
  const double p = h_purity(psi, alg);
  double gap = std::nan("");
  if (alg.dim() <= 1024) gap = ground_state_check(psi, alg, degeneracy).gap;
  out << "# columns: label,purity,classification,gap\n";
  out << state_label(s) << ',' << format_real(p) << ',' << (p >= 1.0 - tol ? "unentangled" : "entangled") << ','
      << format_real(gap) << '\n';
  return kExitOk;
}

struct ScanSpec {
  std::size_t n = 1000;
  double eta = 1.0;
  double gmin = 0.0;
  double gmax = 2.0;
  std::size_t steps = 400;
  std::string dat;
  bool estimate = false;
  double window_lo = 0.01;
  double window_hi = 0.1;
};

int run_scan(const ScanSpec& sc, const std::string& out_path, std::size_t threads, std::ostream& out) {
  std::vector<double> grid;
  std::vector<xy::ScanRow> rows;
  try {
    xy::validate({sc.n, sc.gmin, sc.eta});
    grid = xy::linear_grid(sc.gmin, sc.gmax, sc.steps);
    rows = xy::purity_scan(grid, sc.eta, sc.n, threads);
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("scan-xy: ") + e.what());
  }
  out << "# columns: g,purity,min_gap\n";
  for (const auto& r : rows) out << format_real(r.g) << ',' << format_real(r.purity) << ',' << format_real(r.min_gap) << '\n';

  std::string dat = sc.dat;
  if (dat.empty() && !out_path.empty()) {
    std::filesystem::path p(out_path);
    dat = p.replace_extension(".dat").string();
  }
  if (!dat.empty()) {
    std::ofstream f(dat);
    if (!f) throw ConfigError("--dat: cannot open '" + dat + "' for writing");
    f << "# g purity\n";
    for (const auto& r : rows) f << format_real(r.g) << ' ' << format_real(r.purity) << '\n';
  }

  if (sc.estimate) {
    const xy::CriticalEstimate est = xy::estimate_critical(grid, sc.eta, sc.n, {sc.window_lo, sc.window_hi}, threads);
    out << "# g_c_hat=" << format_real(est.g_c_hat) << '\n';
    out << "# nu_hat=" << format_real(est.nu_hat) << '\n';
  }
  return kExitOk;
}

int run_theorem(const AlgebraSpec& a, const TheoremOptions& opts, std::ostream& out) {
  const ObservableAlgebra alg = make_algebra(a);
  if (!alg.irreducible())
    throw ConfigError("--algebra " + a.name + ": theorem-check needs an irreducible algebra");
  const TheoremReport rep = theorem_suite(alg, opts);
  out << "# columns: sample,kind,purity,unique_ground,gap,lowest_weight\n";
  out << "# summary columns: summary,orbit_samples,random_samples,orbit_failures,random_failures,skipped\n";
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < rep.samples.size(); ++i) {
    const TheoremSample& s = rep.samples[i];
    if (s.skipped) {
      ++skipped;
      out << i << ",haar,nan,skipped,nan,\n";
      continue;
    }
    out << i << ',' << (s.orbit ? "orbit" : "haar") << ',' << format_real(s.purity) << ','
        << (s.ground.is_unique_ground ? "true" : "false") << ',' << format_real(s.ground.gap) << ','
        << (s.lowest_weight ? (*s.lowest_weight ? "true" : "false") : "") << '\n';
  }
  out << "summary," << opts.orbit_samples << ',' << opts.random_samples << ',' << rep.orbit_failures << ','
      << rep.random_failures << ',' << skipped << '\n';
  return rep.orbit_failures + rep.random_failures == 0 ? kExitOk : kExitNumeric;
}

void write_ensemble(const std::string& path, const Ensemble& e) {
  std::ofstream f(path);
  if (!f) throw ConfigError("--ensemble-out: cannot open '" + path + "' for writing");
  f << "# columns: member,weight,index,re,im\n";
  for (std::size_t i = 0; i < e.states.size(); ++i) {
    const CVector& v = e.states[i].amplitudes();
    for (Eigen::Index k = 0; k < v.size(); ++k)
      f << i << ',' << format_real(e.weights[i]) << ',' << k << ',' << format_real(v(k).real()) << ','
        << format_real(v(k).imag()) << '\n';
  }
}

int run_roof(const AlgebraSpec& a, const StateSpec& s, const MixedSpec& m, const RoofOptions& opts,
             const std::string& ensemble_out, std::ostream& out) {
  const ObservableAlgebra alg = make_algebra(a);
  const DensityMatrix rho = make_mixed(m, s, alg, a);
  RoofResult r;
  try {
    r = roof_purity_deficit(rho, alg, opts);
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("roof: ") + e.what());
  }
  const std::string label = m.kind == "pure" ? state_label(s) : (s.label.empty() ? m.kind : s.label);
  out << "# columns: algebra,state,value,baseline,ensemble_size\n";
  out << alg.name() << ',' << label << ',' << format_real(r.value) << ',' << format_real(r.baseline) << ','
      << r.ensemble.states.size() << '\n';
  if (!ensemble_out.empty()) write_ensemble(ensemble_out, r.ensemble);
  return kExitOk;
}

int run_glocc(const AlgebraSpec& a, const StateSpec& s, const MixedSpec& m, const GloccAuditOptions& opts,
              std::ostream& out) {
  const ObservableAlgebra alg = make_algebra(a);
  const DensityMatrix rho = make_mixed(m, s, alg, a);
  GloccAuditReport rep;
  try {
    rep = monotonicity_audit(std::span<const DensityMatrix>(&rho, 1), alg, opts);
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("glocc-check: ") + e.what());
  }
  out << "# columns: trial,hk_count,before,after,excess,flagged,rerun_excess,resolved\n";
  out << "# summary columns: summary,trials,violations,unresolved,max_excess,threshold\n";
  for (const GloccTrial& t : rep.trials)
    out << t.index << ',' << t.hk_count << ',' << format_real(t.before) << ',' << format_real(t.after) << ','
        << format_real(t.excess) << ',' << (t.flagged ? "true" : "false") << ','
        << (t.rerun ? format_real(t.rerun_excess) : "") << ',' << (t.flagged ? (t.resolved ? "true" : "false") : "")
        << '\n';
  out << "summary," << rep.trials.size() << ',' << rep.violations << ',' << rep.unresolved << ','
      << format_real(rep.max_excess) << ',' << format_real(rep.threshold) << '\n';
  const bool ok = rep.unresolved == 0 && 20 * rep.violations <= rep.trials.size();
  return ok ? kExitOk : kExitNumeric;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized entanglement relative to observable algebras", "genent"};
  app.set_config("--config", "", "TOML/INI file; [subcommand] sections, flags override the file");
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path;
  std::size_t threads = 0;
  app.add_option("--out", out_path, "Write CSV here instead of standard output");
  app.add_option("--threads", threads, "Worker threads (default: GENENT_THREADS or hardware)");

  AlgebraSpec alg_purity, alg_theorem, alg_roof, alg_glocc;
  StateSpec st_purity, st_roof, st_glocc;
  MixedSpec mx_roof, mx_glocc;

  auto* purity = app.add_subcommand("purity", "Purity and classification of a pure state");
  add_algebra_options(purity, alg_purity);
  add_state_options(purity, st_purity);
  double tol = kUnentangledTolerance, degeneracy = kDegeneracyThreshold;
  purity->add_option("--tol", tol, "Unentangled if purity >= 1 - tol")->capture_default_str()->check(CLI::PositiveNumber);
  purity->add_option("--degeneracy", degeneracy, "Relative ground-gap threshold")->capture_default_str();

  auto* scan = app.add_subcommand("scan-xy", "Purity of the XY-chain BCS ground state over g");
  ScanSpec sc;
  scan->add_option("--n", sc.n, "Chain length (even)")->capture_default_str();
  scan->add_option("--eta", sc.eta, "Anisotropy in [0, 1]")->capture_default_str();
  scan->add_option("--gmin", sc.gmin, "First g")->capture_default_str();
  scan->add_option("--gmax", sc.gmax, "Last g (inclusive)")->capture_default_str();
  scan->add_option("--steps", sc.steps, "Number of grid points")->capture_default_str()->check(CLI::PositiveNumber);
  scan->add_option("--dat", sc.dat, "Two-column g/purity file (default: --out with .dat)");
  scan->add_flag("--estimate", sc.estimate, "Append g_c and nu estimates as comment lines");
  scan->add_option("--window-lo", sc.window_lo, "Fit window lower distance from g_c")->capture_default_str();
  scan->add_option("--window-hi", sc.window_hi, "Fit window upper distance from g_c")->capture_default_str();

  auto* theorem = app.add_subcommand("theorem-check", "Coherent-state equivalence checks");
  add_algebra_options(theorem, alg_theorem);
  TheoremOptions th;
  theorem->add_option("--orbit-samples", th.orbit_samples, "Group-orbit samples")->capture_default_str();
  theorem->add_option("--random-samples", th.random_samples, "Haar samples")->capture_default_str();
  theorem->add_option("--seed", th.seed, "Seed")->capture_default_str();
  theorem->add_option("--tol", th.purity_tolerance, "Purity tolerance")->capture_default_str();
  theorem->add_option("--degeneracy", th.degeneracy_threshold, "Relative ground-gap threshold")->capture_default_str();

  auto* roof = app.add_subcommand("roof", "Convex-roof purity deficit of a density matrix");
  add_algebra_options(roof, alg_roof);
  add_state_options(roof, st_roof);
  add_mixed_options(roof, mx_roof);
  RoofOptions ro;
  std::string ensemble_out;
  roof->add_option("--restarts", ro.restarts, "Optimizer restarts")->capture_default_str()->check(CLI::PositiveNumber);
  roof->add_option("--seed", ro.seed, "Optimizer seed")->capture_default_str();
  roof->add_option("--tolerance", ro.tolerance, "Optimizer tolerance")->capture_default_str();
  roof->add_option("--ensemble-size", ro.ensemble_size, "Members (default rank^2)");
  roof->add_option("--ensemble-out", ensemble_out, "Write the certificate ensemble CSV here");

  auto* glocc = app.add_subcommand("glocc-check", "Monotonicity audit under sampled GLOCC maps");
  add_algebra_options(glocc, alg_glocc);
  add_state_options(glocc, st_glocc);
  add_mixed_options(glocc, mx_glocc);
  GloccAuditOptions go;
  std::string stage = "random-unitary";
  glocc->add_option("--depth", go.glocc.depth, "Conditional-composition depth")->capture_default_str()->check(CLI::PositiveNumber);
  glocc->add_option("--outcomes", go.glocc.outcomes, "HK operators per stage")->capture_default_str()->check(CLI::PositiveNumber);
  glocc->add_option("--stage", stage, "random-unitary or projective")->capture_default_str()
      ->check(CLI::IsMember({"random-unitary", "projective"}));
  glocc->add_option("--trials", go.trials, "Sampled maps")->capture_default_str();
  glocc->add_option("--seed", go.seed, "Map seed")->capture_default_str();
  glocc->add_option("--restarts", go.roof.restarts, "Roof optimizer restarts")->capture_default_str()->check(CLI::PositiveNumber);
  glocc->add_option("--tolerance", go.roof.tolerance, "Roof optimizer tolerance")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "genent: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (threads == 0) threads = default_thread_count();
    Output sink{out_path, nullptr, nullptr};
    std::ostream& os = sink.open(out);
    if (*purity) return run_purity(alg_purity, st_purity, tol, degeneracy, os);
    if (*scan) return run_scan(sc, out_path, threads, os);
    if (*theorem) {
      th.threads = threads;
      return run_theorem(alg_theorem, th, os);
    }
    if (*roof) {
      ro.threads = threads;
      return run_roof(alg_roof, st_roof, mx_roof, ro, ensemble_out, os);
    }
    if (*glocc) {
      go.threads = threads;
      go.glocc.stage = stage == "projective" ? GloccStage::ProjectiveMeasurement : GloccStage::RandomUnitary;
      return run_glocc(alg_glocc, st_glocc, mx_glocc, go, os);
    }
  } catch (const ConfigError& e) {
    err << "genent: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    err << "genent: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "genent: numerical failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitConfig;
}

}  // namespace genent::cli
