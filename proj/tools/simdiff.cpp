// simdiff: evaluate similarity solutions, write figure CSVs, run the
// verification battery and the gel injection experiment.
//
// Exit codes: 0 success, 1 verification or runtime failure, 2 usage error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "simdiff/app/csv_io.hpp"
#include "simdiff/app/gel_sim.hpp"
#include "simdiff/app/presets.hpp"
#include "simdiff/app/verify.hpp"
#include "simdiff/similarity1d.hpp"

namespace fs = std::filesystem;
using namespace simdiff;
using namespace simdiff::app;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct FamilyArgs {
  std::string family;
  double p = 0.0;
  double d_coeff = 1.0;
  double amplitude = 1.0;
};

void add_family_options(CLI::App* cmd, FamilyArgs& f) {
  cmd->add_option("--family", f.family, "classical, exotic, symmetric, antisymmetric or gel");
  cmd->add_option("--p", f.p, "similarity exponent");
  cmd->add_option("--D", f.d_coeff, "diffusion coefficient")->capture_default_str();
  cmd->add_option("--M", f.amplitude, "amplitude")->capture_default_str();
}

SolutionFamily family_from(const FamilyArgs& f) {
  if (f.family.empty()) throw UsageError("--family is required");
  const SolutionFamily fam = make_family(f.family, f.p);
  validate(fam);
  similarity::DiffusionParams{f.d_coeff, f.amplitude}.validate();
  return fam;
}

void write_files(const fs::path& dir, const std::vector<CsvFile>& files) {
  fs::create_directories(dir);
  for (const auto& f : files) {
    write_text(dir / f.name, f.content);
    std::cout << (dir / f.name).string() << "\n";
  }
}

int run_eval(const FamilyArgs& fa, const std::vector<double>& s_values, const std::vector<double>& x_values,
             const std::vector<double>& times, const std::string& format) {
  const SolutionFamily fam = family_from(fa);
  const similarity::DiffusionParams params{fa.d_coeff, fa.amplitude};
  if (s_values.empty() == x_values.empty()) throw UsageError("give either --s or --x with --times");
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  std::string text;
  if (!s_values.empty()) {
    for (double s : s_values) {
      const double v = similarity::phi(fam, s);
      rows.push_back({{"s", s}, {"value", v}});
      text += format_number(s) + "," + format_number(v) + "\n";
    }
  } else {
    if (times.empty()) throw UsageError("--x needs --times");
    for (double t : times) {
      for (double x : x_values) {
        const double v = similarity::u_similarity(fam, params, x, t);
        rows.push_back({{"x", x}, {"t", t}, {"value", v}});
        text += format_number(x) + "," + format_number(t) + "," + format_number(v) + "\n";
      }
    }
  }
  if (format == "json") {
    nlohmann::ordered_json j;
    j["family"] = family_name(fam);
    j["p"] = exponent(fam);
    j["D"] = fa.d_coeff;
    j["M"] = fa.amplitude;
    j["values"] = rows;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
  }
  return kOk;
}

int run_profile(const std::string& preset_name, const FamilyArgs& fa, const std::vector<double>& times,
                const std::string& grid, const fs::path& out) {
  std::vector<ProfileRequest> requests;
  if (!preset_name.empty()) {
    if (!fa.family.empty()) throw UsageError("--preset and --family are exclusive");
    requests = preset(preset_name);
  } else {
    ProfileRequest r;
    r.tag = "profile";
    r.family = family_from(fa);
    r.d_coeff = fa.d_coeff;
    r.amplitude = fa.amplitude;
    if (!times.empty()) r.times = times;
    if (!grid.empty()) {
      r.grid = GridSpec::parse(grid);
    } else if (std::holds_alternative<GelRadial>(r.family)) {
      r.grid = {0.0, 20.0, 401};
    }
    requests.push_back(r);
  }
  for (const auto& r : requests) r.validate();
  for (const auto& r : requests) write_files(out, render_profiles(r));
  return kOk;
}

int run_verify_cmd(const VerifyOptions& opts, const std::string& format, const std::optional<fs::path>& out) {
  VerifyOptions o = opts;
  o.tol_scale = tol_scale_from_env();
  const VerifyReport report = run_verify(o);
  if (report.records.empty()) throw UsageError("--only matched no check");
  std::string text;
  if (format == "csv") {
    text = "name,max_residual,tolerance,pass\n";
    for (const auto& r : report.records) {
      text += r.name + "," + format_number(r.max_residual) + "," + format_number(r.tolerance) + "," +
              (r.pass ? "true" : "false") + "\n";
    }
  } else {
    text = report_json(report);
  }
  if (out) {
    fs::create_directories(*out);
    const fs::path file = *out / (format == "csv" ? "verify_report.csv" : "verify_report.json");
    write_text(file, text);
    std::cout << file.string() << "\n";
  } else {
    std::cout << text;
  }
  for (const auto& r : report.records) {
    if (!r.pass) std::cerr << "FAIL " << r.name << ": " << format_number(r.max_residual) << " > " << format_number(r.tolerance) << "\n";
  }
  return report.pass ? kOk : kFailure;
}

int run_gel(const GelSimConfig& config, const fs::path& out) {
  config.validate();
  const GelSimResult result = run_gel_sim(config);
  std::vector<CsvFile> files;
  const double d = config.params.diffusion();
  for (const auto& s : result.snapshots) {
    const CsvHeader h{"gel", 1.0, d, s.time};
    files.push_back({"gel_displacement_t" + short_number(s.time) + ".csv",
                     to_csv(h, s.displacement.radii(), s.displacement.values())});
    files.push_back({"gel_density_t" + short_number(s.time) + ".csv",
                     to_csv(h, s.density.radii(), s.density.values())});
  }
  files.push_back({"gel_summary.json", gel_summary_json(config, result)});
  write_files(out, files);
  if (!result.pass) std::cerr << "gel-sim: summary checks failed (see gel_summary.json)\n";
  return result.pass ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Similarity solutions of the diffusion equation and the gel injection experiment"};
  app.require_subcommand(1);

  std::string format = "csv";
  std::string out_dir;

  FamilyArgs eval_family;
  std::vector<double> eval_s, eval_x, eval_times;
  auto* eval = app.add_subcommand("eval", "Evaluate a scaling function phi(s) or a solution u(x, t)");
  add_family_options(eval, eval_family);
  eval->add_option("--s", eval_s, "similarity variables")->delimiter(',');
  eval->add_option("--x", eval_x, "positions")->delimiter(',');
  eval->add_option("--times", eval_times, "times")->delimiter(',');
  eval->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  FamilyArgs prof_family;
  std::string preset_name, grid;
  std::vector<double> prof_times;
  auto* profile = app.add_subcommand("profile", "Write one CSV per time for a preset or a family");
  profile->add_option("--preset", preset_name, "fig1, fig2, fig3 or fig5");
  add_family_options(profile, prof_family);
  profile->add_option("--times", prof_times, "times")->delimiter(',');
  profile->add_option("--grid", grid, "min:max:n");
  profile->add_option("--out", out_dir, "output directory");

  VerifyOptions vopts;
  std::string verify_format = "json";
  auto* verify = app.add_subcommand("verify", "Run the invariant battery; exit 1 if any record fails");
  verify->add_option("--only", vopts.only, "run checks whose name contains PATTERN");
  verify->add_option("--perturb", vopts.perturb, "bias added to exotic p = 0 (sensitivity test)");
  verify->add_option("--threads", vopts.threads, "worker threads (0: all cores)");
  verify->add_option("--format", verify_format, "json or csv")->check(CLI::IsMember({"csv", "json"}));
  verify->add_option("--out", out_dir, "output directory (default: stdout)");

  GelSimConfig gcfg;
  std::vector<double> gel_times;
  auto* gel = app.add_subcommand("gel-sim", "Evolve the injection experiment and compare with the similarity solution");
  gel->add_option("--times", gel_times, "snapshot times")->delimiter(',');
  gel->add_option("--epsilon", gcfg.params.strain, "injected strain")->capture_default_str();
  gel->add_option("--R0", gcfg.params.core_radius, "core radius")->capture_default_str();
  gel->add_option("--friction", gcfg.params.friction, "friction coefficient f")->capture_default_str();
  gel->add_option("--shear", gcfg.params.shear_mod, "shear modulus mu")->capture_default_str();
  gel->add_option("--bulk", gcfg.params.bulk_mod, "bulk modulus K")->capture_default_str();
  gel->add_option("--dr", gcfg.dr, "radial spacing (default R0/50)");
  gel->add_option("--r-max", gcfg.r_max, "outer radius (default 20 sqrt(D t_end))");
  gel->add_option("--r-tail", gcfg.r_tail, "tail metric radius (default 6 sqrt(D t_end))");
  gel->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const fs::path out = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
    if (*eval) return run_eval(eval_family, eval_s, eval_x, eval_times, format);
    if (*profile) return run_profile(preset_name, prof_family, prof_times, grid, out);
    if (*verify) {
      return run_verify_cmd(vopts, verify_format, out_dir.empty() ? std::nullopt : std::optional<fs::path>(out));
    }
    if (*gel) {
      if (!gel_times.empty()) gcfg.times = gel_times;
      return run_gel(gcfg, out);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "simdiff: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "simdiff: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "simdiff: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
