// Command-line driver: tomography runs, correlation scans, Wigner-set
// enumeration reports, and QKD session simulation. All numeric output goes
// through nlohmann::json's shortest-round-trip formatting so JSON and CSV
// encodings of the same run carry identical values.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tetra/tetra.hpp"

using nlohmann::json;
using namespace tetra;

namespace {

constexpr const char* kToolVersion = "0.1.0";

// exit codes: 0 success, 1 property violation, 2 usage error, 3 I/O error
constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json complex_to_json(const cx& v) { return json::array({v.real(), v.imag()}); }

template <std::size_t N>
json matrix_to_json(const Matrix<N>& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < N; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < N; ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

json table_to_json(const std::array<double, 16>& t) {
  json rows = json::array();
  for (int k = 0; k < 4; ++k) {
    json row = json::array();
    for (int l = 0; l < 4; ++l) row.push_back(t[4 * k + l]);
    rows.push_back(row);
  }
  return rows;
}

json counts_to_json(const std::array<std::uint64_t, 16>& t) {
  json rows = json::array();
  for (int k = 0; k < 4; ++k) {
    json row = json::array();
    for (int l = 0; l < 4; ++l) row.push_back(t[4 * k + l]);
    rows.push_back(row);
  }
  return rows;
}

std::string number_repr(double v) { return json(v).dump(); }

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open " + path.string());
  out << content;
  if (!out) throw std::ios_base::failure("write failed for " + path.string());
}

void write_json(const std::filesystem::path& path, const json& j) {
  write_file(path, j.dump(2) + "\n");
}

// 4x4 histogram as k,l,value rows, directly plottable.
void write_csv_table(const std::filesystem::path& path, const std::array<double, 16>& t) {
  std::string out = "k,l,value\n";
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l)
      out += std::to_string(k) + "," + std::to_string(l) + "," + number_repr(t[4 * k + l]) + "\n";
  write_file(path, out);
}

void write_csv_counts(const std::filesystem::path& path, const std::array<std::uint64_t, 16>& t) {
  std::string out = "k,l,value\n";
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l)
      out += std::to_string(k) + "," + std::to_string(l) + "," + std::to_string(t[4 * k + l]) + "\n";
  write_file(path, out);
}

json meta_json(const std::string& command, std::uint64_t seed, const json& resolved) {
  return json{{"tool", "tetra"},
              {"version", kToolVersion},
              {"stream", std::string(Rng::stream_version())},
              {"command", command},
              {"seed", seed},
              {"config", resolved}};
}

Parity parity_b_of(const std::string& config) {
  if (config == "tt") return Parity::Even;
  if (config == "ta") return Parity::Odd;
  throw UsageError("config must be tt or ta");
}

Mat4 state_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open state file " + path);
  json j;
  in >> j;
  const json& rows = j.contains("matrix") ? j.at("matrix") : j;
  if (!rows.is_array() || rows.size() != 4) throw UsageError("state file must hold a 4x4 matrix");
  Mat4 rho;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const json& e = rows.at(r).at(c);
      rho(r, c) = e.is_array() ? cx(e.at(0).get<double>(), e.at(1).get<double>())
                               : cx(e.get<double>(), 0.0);
    }
  if (!rho.finite()) throw UsageError("state file contains non-finite entries");
  if (hermiticity_error(rho) > 1e-9) throw UsageError("state file matrix is not Hermitian");
  if (std::abs(trace(rho).real() - 1.0) > 1e-9) throw UsageError("state file matrix must have trace 1");
  return rho;
}

struct StateSpec {
  Mat4 rho;
  std::string description;
};

StateSpec resolve_state(const std::string& spec) {
  if (spec == "psi-minus") return {bell_state({0, 0}), spec};
  if (spec == "psi-plus") return {bell_state({0, 1}), spec};
  if (spec == "phi-minus") return {bell_state({1, 0}), spec};
  if (spec == "phi-plus") return {bell_state({1, 1}), spec};
  if (spec.rfind("werner:", 0) == 0) {
    const double v = std::stod(spec.substr(7));
    return {werner(v), spec};
  }
  if (spec.rfind("file:", 0) == 0) return {state_from_file(spec.substr(5)), spec};
  throw UsageError("unknown state spec '" + spec +
                   "' (expected psi-minus|psi-plus|phi-minus|phi-plus|werner:v|file:PATH)");
}

// ---------------------------------------------------------------------------

// The only environment knob: TETRA_OUT overrides the default output
// directory when --out is not given.
std::string default_out_dir() {
  const char* env = std::getenv("TETRA_OUT");
  return env && *env ? env : ".";
}

struct TomoOptions {
  std::string state;
  std::string config = "tt";
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::optional<double> noise;
  std::optional<double> misalign_angle;
  std::vector<double> misalign_axis = {0.0, 0.0, 1.0};
  std::string out_dir = default_out_dir();
  std::string format = "json";
};

int run_tomo(const TomoOptions& opt) {
  if (opt.shots < 1) throw UsageError("--shots must be at least 1");
  StateSpec state = resolve_state(opt.state);
  if (opt.noise) state.rho = depolarized(state.rho, *opt.noise);

  const Parity pb = parity_b_of(opt.config);
  Frame frame_a = frame(Parity::Even);
  Frame frame_b = frame(pb);
  if (opt.misalign_angle) {
    if (opt.misalign_axis.size() != 3) throw UsageError("--misalign-axis needs three components");
    Vec3 axis{opt.misalign_axis[0], opt.misalign_axis[1], opt.misalign_axis[2]};
    const double n = norm(axis);
    if (n == 0.0) throw UsageError("--misalign-axis must be nonzero");
    frame_b = rotate_frame(frame_b, (1.0 / n) * axis, *opt.misalign_angle);
  }

  const JointProbabilityTable table = joint_table(state.rho, frame_a, frame_b);
  const CountTable counts = sample_counts(table, opt.shots, opt.seed);
  const Estimate est = estimate(counts, Parity::Even, pb);
  const QuartitWigner w_theory = quartit_coefficients(state.rho, Parity::Even, pb);
  const double fid = fidelity(est.w_hat, w_theory);

  const json resolved = {{"state", state.description}, {"config", opt.config},
                         {"shots", opt.shots},         {"seed", opt.seed},
                         {"noise", opt.noise ? json(*opt.noise) : json(nullptr)},
                         {"misalign_angle", opt.misalign_angle ? json(*opt.misalign_angle) : json(nullptr)},
                         {"format", opt.format}};
  json out;
  out["meta"] = meta_json("tomo", opt.seed, resolved);
  out["inputs"] = {{"joint_table", table_to_json(table.p)}};
  out["results"] = {{"joint_counts", counts_to_json(counts.counts)},
                    {"w_hat", table_to_json(est.w_hat.w)},
                    {"w_theory", table_to_json(w_theory.w)},
                    {"fidelity", fid},
                    {"min_eigenvalue", est.min_eigenvalue},
                    {"rho_hat", matrix_to_json(est.rho_hat)}};

  const std::filesystem::path dir(opt.out_dir);
  std::filesystem::create_directories(dir);
  if (opt.format == "json" || opt.format == "both") write_json(dir / "tomo.json", out);
  if (opt.format == "csv" || opt.format == "both") {
    write_csv_counts(dir / "joint_counts.csv", counts.counts);
    write_csv_table(dir / "w_hat.csv", est.w_hat.w);
    write_csv_table(dir / "w_theory.csv", w_theory.w);
  }
  std::cout << "tomo: fidelity " << number_repr(fid) << ", min eigenvalue "
            << number_repr(est.min_eigenvalue) << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------

const char* config_name(Config c) { return c == Config::TT ? "tt" : "ta"; }
const char* mode_name(Mode m) { return m == Mode::Correlated ? "correlated" : "anticorrelated"; }
const char* parity_name(Parity p) { return p == Parity::Even ? "even" : "odd"; }
const char* physicality_name(Physicality p) {
  switch (p) {
    case Physicality::Physical: return "physical";
    case Physicality::Boundary: return "boundary";
    default: return "nonphysical";
  }
}

int run_scan_correlations(const std::string& out_file) {
  const auto perms = enumerate_top_permutations();
  const PropertyReport rep = verify_properties_abc();

  json candidates = json::array();
  for (const auto& rec : rep.candidates) {
    candidates.push_back({{"config", config_name(rec.config)},
                          {"mode", mode_name(rec.mode)},
                          {"permutation", perms[rec.perm_index].mapping},
                          {"permutation_parity", parity_name(rec.perm_parity)},
                          {"min_eigenvalue", rec.min_eigenvalue},
                          {"physicality", physicality_name(rec.physicality)},
                          {"pure", rec.pure},
                          {"maximally_entangled", rec.maximally_entangled}});
  }
  json out;
  out["meta"] = meta_json("scan-correlations", 0, {{"out", out_file}});
  out["inputs"] = json::object();
  out["results"] = {{"candidates", candidates},
                    {"physical_tt_anticorrelated", rep.physical_tt_anticorrelated},
                    {"physical_ta_anticorrelated", rep.physical_ta_anticorrelated},
                    {"physical_correlated", rep.physical_correlated},
                    {"property_a", rep.property_a},
                    {"property_b", rep.property_b},
                    {"property_c", rep.property_c}};
  write_json(out_file, out);

  std::cout << "scan-correlations: A(tt):" << rep.physical_tt_anticorrelated
            << " A(ta):" << rep.physical_ta_anticorrelated
            << " correlated:" << rep.physical_correlated << " properties "
            << (rep.all_ok ? "ok" : "VIOLATED") << "\n";
  return rep.all_ok ? kOk : kViolation;
}

// ---------------------------------------------------------------------------

int run_wigner_sets(const std::string& out_file) {
  const auto qubit_sets = enumerate_qubit_wigner_sets();
  json sets = json::array();
  for (const auto& s : qubit_sets) {
    json orbit = json::array();
    for (const auto& signs : displacement_orbit(s.fiducial_signs)) orbit.push_back(signs);
    sets.push_back({{"fiducial_signs", s.fiducial_signs},
                    {"parity", parity_name(s.parity)},
                    {"displacement_orbit", orbit}});
  }

  const auto records = enumerate_quartit_wigner_sets();
  int valid_count = 0;
  json products = json::array();
  for (const auto& rec : records) {
    valid_count += rec.valid ? 1 : 0;
    products.push_back({{"set_a", rec.set_a},
                        {"set_b", rec.set_b},
                        {"parity_a", parity_name(rec.parity_a)},
                        {"parity_b", parity_name(rec.parity_b)},
                        {"valid", rec.valid}});
  }

  const auto canonical = find_striations(
      product_phase_point_set(phase_point_set(Parity::Even), phase_point_set(Parity::Odd)));
  json striations = json::array();
  if (canonical) {
    for (const auto& st : canonical->striations) {
      json lines = json::array();
      for (const auto& line : st.lines) lines.push_back(line);
      striations.push_back({{"lines", lines}, {"factorizable", st.factorizable}});
    }
  }

  json out;
  out["meta"] = meta_json("wigner-sets", 0, {{"out", out_file}});
  out["inputs"] = json::object();
  out["results"] = {{"qubit_sets", sets},
                    {"valid_product_count", valid_count},
                    {"products", products},
                    {"canonical_ta_striations", striations},
                    {"canonical_ta_factorizable", canonical ? canonical->n_factorizable : 0},
                    {"canonical_ta_entangled", canonical ? canonical->n_entangled : 0}};
  write_json(out_file, out);

  const bool ok = valid_count == 32 && canonical && canonical->n_factorizable == 3 &&
                  canonical->n_entangled == 2;
  std::cout << "wigner-sets: qubit sets 8, valid products " << valid_count
            << ", canonical TA striations " << (canonical ? "5" : "none") << " ("
            << (canonical ? canonical->n_factorizable : 0) << " factorizable, "
            << (canonical ? canonical->n_entangled : 0) << " entangled)\n";
  return ok ? kOk : kViolation;
}

// ---------------------------------------------------------------------------

struct QkdOptions {
  std::uint64_t pairs = 0;
  bool grant = false;
  bool deny = false;
  std::uint64_t seed = 0;
  std::optional<double> noise;
  std::string config = "tt";
  double sacrifice = 0.25;
  double alarm_threshold = 0.95;
  std::string out_dir = default_out_dir();
};

int run_qkd(const QkdOptions& opt) {
  if (opt.pairs < 1) throw UsageError("--pairs must be at least 1");
  if (opt.grant == opt.deny) throw UsageError("choose exactly one of --grant / --deny");

  qkd::SessionParams params;
  params.pairs = opt.pairs;
  params.grant = opt.grant;
  params.noise = opt.noise;
  params.seed = opt.seed;
  params.config = opt.config == "ta" ? Config::TA : Config::TT;
  parity_b_of(opt.config);  // validates

  const qkd::SessionTranscript transcript = qkd::run_session(params);
  const qkd::CapabilityReport report = qkd::capability_report(transcript);

  const json resolved = {{"pairs", opt.pairs},
                         {"grant", opt.grant},
                         {"seed", opt.seed},
                         {"noise", opt.noise ? json(*opt.noise) : json(nullptr)},
                         {"config", opt.config},
                         {"sacrifice", opt.sacrifice},
                         {"alarm_threshold", opt.alarm_threshold}};

  json tj;
  tj["meta"] = meta_json("qkd", opt.seed, resolved);
  tj["inputs"] = resolved;
  json choices = json::array(), announcements = json::array();
  for (const auto& c : transcript.charles_choices) choices.push_back(c.index());
  if (transcript.announcements)
    for (const auto& c : *transcript.announcements) announcements.push_back(c.index());
  tj["results"] = {{"alice_outcomes", transcript.alice_outcomes},
                   {"bob_outcomes", transcript.bob_outcomes},
                   {"charles_choices", choices},
                   {"announcements", transcript.announcements ? json(announcements) : json(nullptr)},
                   {"stream_version", transcript.stream_version}};

  json cj;
  cj["meta"] = meta_json("qkd", opt.seed, resolved);
  cj["inputs"] = resolved;
  cj["results"] = {{"pre_announcement_mi", report.pre_announcement_mi},
                   {"post_announcement_mi",
                    report.post_announcement_mi ? json(*report.post_announcement_mi) : json(nullptr)},
                   {"charles_alice_mi", report.charles_alice_mi},
                   {"plugin_bias", report.plugin_bias}};

  if (opt.grant) {
    const auto check = qkd::tomographic_check(transcript, opt.sacrifice, opt.alarm_threshold);
    cj["results"]["tomographic_check"] = {{"fidelity", check.fidelity_vs_expected},
                                          {"alarm", check.alarm},
                                          {"rounds_used", check.rounds_used},
                                          {"min_eigenvalue", check.min_eigenvalue},
                                          {"w_hat", table_to_json(check.w_hat.w)}};
  }

  const std::filesystem::path dir(opt.out_dir);
  std::filesystem::create_directories(dir);
  write_json(dir / "transcript.json", tj);
  write_json(dir / "capability.json", cj);

  std::cout << "qkd: pre MI " << number_repr(report.pre_announcement_mi);
  if (report.post_announcement_mi)
    std::cout << ", post MI " << number_repr(*report.post_announcement_mi);
  std::cout << ", charles-alice MI " << number_repr(report.charles_alice_mi) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-qubit SIC-POVM tomography, discrete Wigner analysis, and QKD simulation"};
  app.require_subcommand(1);

  TomoOptions tomo_opt;
  auto* tomo = app.add_subcommand("tomo", "Simulate a double-tetrahedron tomography experiment");
  tomo->add_option("--state", tomo_opt.state,
                   "psi-minus|psi-plus|phi-minus|phi-plus|werner:v|file:PATH")
      ->required();
  tomo->add_option("--config", tomo_opt.config, "tt|ta");
  tomo->add_option("--shots", tomo_opt.shots, "number of coincidences")->required();
  tomo->add_option("--seed", tomo_opt.seed, "RNG seed");
  tomo->add_option("--noise", tomo_opt.noise, "Werner visibility applied to the state");
  tomo->add_option("--misalign-angle", tomo_opt.misalign_angle, "rotate Bob's frame (radians)");
  tomo->add_option("--misalign-axis", tomo_opt.misalign_axis, "rotation axis x,y,z")
      ->expected(3)
      ->delimiter(',');
  tomo->add_option("--out", tomo_opt.out_dir, "output directory");
  tomo->add_option("--format", tomo_opt.format, "json|csv|both")
      ->check(CLI::IsMember({"json", "csv", "both"}));

  std::string scan_out = "correlations.json";
  auto* scan = app.add_subcommand("scan-correlations",
                                  "Sweep all 96 correlation candidates and check properties");
  scan->add_option("--out", scan_out, "output file");

  std::string sets_out = "wigner_sets.json";
  auto* sets = app.add_subcommand("wigner-sets",
                                  "Enumerate qubit and two-qubit phase-point operator sets");
  sets->add_option("--out", sets_out, "output file");

  QkdOptions qkd_opt;
  auto* kd = app.add_subcommand("qkd", "Run a grant/deny key-distribution session");
  kd->add_option("--pairs", qkd_opt.pairs, "number of entangled pairs")->required();
  kd->add_flag("--grant", qkd_opt.grant, "Charles announces his choices");
  kd->add_flag("--deny", qkd_opt.deny, "Charles withholds his choices");
  kd->add_option("--seed", qkd_opt.seed, "RNG seed");
  kd->add_option("--noise", qkd_opt.noise, "Werner visibility of the source");
  kd->add_option("--config", qkd_opt.config, "tt|ta");
  kd->add_option("--sacrifice", qkd_opt.sacrifice, "fraction of rounds used for tomography");
  kd->add_option("--alarm-threshold", qkd_opt.alarm_threshold, "fidelity alarm threshold");
  kd->add_option("--out", qkd_opt.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (tomo->parsed()) return run_tomo(tomo_opt);
    if (scan->parsed()) return run_scan_correlations(scan_out);
    if (sets->parsed()) return run_wigner_sets(sets_out);
    if (kd->parsed()) return run_qkd(qkd_opt);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const OutOfRange& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
