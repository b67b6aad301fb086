// Command-line front end: transforms, norms, and verification suites with
// reproducible JSON reports.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fockcalc/bargmann.hpp"
#include "fockcalc/mixed_norm.hpp"
#include "fockcalc/random_fields.hpp"
#include "fockcalc/run_config.hpp"
#include "fockcalc/sha1.hpp"
#include "fockcalc/suites.hpp"
#include "fockcalc/weights.hpp"
#include "json.hpp"

using namespace fockcalc;
namespace fs = std::filesystem;

namespace {

// Function presets are Hermite-bandlimited by construction, so a preset is
// just a coefficient vector: "gauss" (the window itself), "h:<n>", or
// "random[:seed]".
CoeffArray preset_coeffs(const RunConfig& cfg) {
  if (cfg.preset.empty())
    throw CLI::ValidationError("--preset", "a function preset is required");
  const TruncationSpec trunc(cfg.d, cfg.N);
  if (cfg.preset == "gauss")
    return CoeffArray::delta(trunc, BasisTag::hermite, MultiIndex::zero(cfg.d));
  if (cfg.preset.rfind("h:", 0) == 0) {
    std::vector<int> entries;
    std::string tok;
    for (char ch : cfg.preset.substr(2)) {
      if (ch == ',') {
        entries.push_back(std::stoi(tok));
        tok.clear();
      } else {
        tok.push_back(ch);
      }
    }
    entries.push_back(std::stoi(tok));
    if (static_cast<int>(entries.size()) != cfg.d)
      throw CLI::ValidationError("--preset", "h: index length must equal d");
    const MultiIndex alpha(entries);
    if (alpha.degree() > cfg.N)
      throw CLI::ValidationError("--preset", "h: degree exceeds N");
    return CoeffArray::delta(trunc, BasisTag::hermite, alpha);
  }
  if (cfg.preset.rfind("random", 0) == 0) {
    std::uint64_t seed = cfg.seed;
    if (cfg.preset.size() > 7 && cfg.preset[6] == ':')
      seed = std::stoull(cfg.preset.substr(7));
    std::mt19937_64 rng(seed);
    return random_coeff(trunc, BasisTag::hermite, rng, 0.5);
  }
  throw CLI::ValidationError("--preset", "unknown preset " + cfg.preset);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
}

nlohmann::json report_skeleton(const RunConfig& cfg) {
  nlohmann::json j;
  j["config"] = nlohmann::json::parse(cfg.canonical_json());
  j["config_hash"] = blob_hash(cfg.canonical_json());
  return j;
}

int cmd_transform(const RunConfig& cfg, const std::string& kind,
                  const std::string& in_file) {
  fs::create_directories(cfg.out_dir);
  nlohmann::json report = report_skeleton(cfg);
  report["transform"] = kind;

  // Either a preset or a user-supplied sampled function.
  std::optional<GridField> input;
  std::shared_ptr<CoeffArray> preset;
  RealFn f;
  TruncationSpec trunc(cfg.d, cfg.N);
  if (!in_file.empty()) {
    input = grid_load(in_file);
    if (input->axes() != cfg.d)
      throw CLI::ValidationError("--in", "sampled input must live on R^d");
    const GridField& g = *input;
    f = [&g](std::span<const double> y) {
      return g.contains(y) ? g.interpolate(y) : cplx{0.0, 0.0};
    };
    report["input"] = in_file;
  } else {
    preset = std::make_shared<CoeffArray>(preset_coeffs(cfg));
    trunc = preset->trunc();
    f = [preset](std::span<const double> y) { return hermite_synthesize(*preset, y); };
  }

  if (kind == "bargmann") {
    // Presets are coefficient-backed, so their transform is exact; sampled
    // input goes through the analysis quadrature.
    CoeffArray herm;
    if (preset) {
      herm = *preset;
    } else {
      const auto rule = QuadratureRule::gauss_hermite(cfg.effective_Q());
      herm = hermite_analyze(f, trunc, rule);
    }
    const std::string payload = coeff_to_json(bargmann_coeff(herm));
    const fs::path out = fs::path(cfg.out_dir) / "fock_coeffs.json";
    write_text(out, payload);
    report["artifact"] = out.string();
    report["artifact_hash"] = blob_hash(payload);
  } else if (kind == "stft") {
    const auto rule = QuadratureRule::gauss_hermite(cfg.effective_Q());
    const GridField V = input ? stft_gaussian(*input, cfg.R, cfg.h)
                              : stft_gaussian(f, cfg.d, cfg.R, cfg.h, rule);
    const fs::path out = fs::path(cfg.out_dir) / "stft.gfld";
    grid_save(V, out.string());
    const fs::path csv = fs::path(cfg.out_dir) / "stft_slice.csv";
    std::vector<int> fixed(static_cast<std::size_t>(V.axes()), V.nodes_per_axis() / 2);
    write_text(csv, grid_slice_csv(V, 0, fixed));
    report["artifact"] = out.string();
    report["slice_csv"] = csv.string();
  } else if (kind == "hermite") {
    const auto rule = QuadratureRule::gauss_hermite(cfg.effective_Q());
    const CoeffArray back = hermite_analyze(f, trunc, rule);
    const std::string payload = coeff_to_json(back);
    const fs::path out = fs::path(cfg.out_dir) / "hermite_coeffs.json";
    write_text(out, payload);
    report["artifact"] = out.string();
    report["artifact_hash"] = blob_hash(payload);
  } else {
    throw CLI::ValidationError("transform", "unknown transform " + kind);
  }

  const fs::path rpt = fs::path(cfg.out_dir) / ("transform_" + kind + "_report.json");
  write_text(rpt, report.dump(2) + "\n");
  std::cout << rpt.string() << "\n";
  return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
  const SuiteResult r = run_verify_suite(suite, cfg);
  fs::create_directories(cfg.out_dir);
  const fs::path rpt = fs::path(cfg.out_dir) / ("verify_" + suite + ".json");
  write_text(rpt, suite_result_json(r, cfg));
  for (const auto& c : r.checks) {
    if (c.bounded)
      std::printf("%s  %s  %.3e (tol %.1e)\n", c.pass ? "pass" : "FAIL", c.name.c_str(),
                  c.value, c.tol);
    else
      std::printf("%s  %s  %.6g\n", c.pass ? "pass" : "FAIL", c.name.c_str(), c.value);
  }
  std::printf("%s: %s\n", suite.c_str(), r.pass() ? "pass" : "FAIL");
  return r.pass() ? 0 : 1;
}

int cmd_norm(const RunConfig& cfg, const std::string& space, const std::string& p_text,
             const std::string& omega_text, const std::string& in_file) {
  const int axes = 2 * cfg.d;
  MixedNormSpec spec;
  if (p_text.find(',') == std::string::npos && p_text.find('=') == std::string::npos &&
      p_text.rfind("Lpq", 0) != 0) {
    const double p = (p_text == "inf") ? kInf : std::stod(p_text);
    spec = MixedNormSpec::uniform(axes, p);
  } else if (p_text.rfind("Lpq", 0) == 0 || p_text.rfind("p=", 0) == 0) {
    spec = norm_spec_from_string(axes, p_text);
  } else {
    spec = norm_spec_from_string(axes, "p=" + p_text + ";E=I");
  }
  const WeightFn omega = weight_from_preset(axes, omega_text);

  double value = 0.0;
  if (space == "M") {
    const CoeffArray c = preset_coeffs(cfg);
    const auto rule = QuadratureRule::gauss_hermite(cfg.effective_Q());
    value = modulation_norm(
        [&](std::span<const double> y) { return hermite_synthesize(c, y); }, cfg.d, spec,
        omega, cfg.R, cfg.h, rule);
  } else if (space == "A" || space == "B") {
    const CoeffArray F = bargmann_coeff(preset_coeffs(cfg));
    value = fock_norm(F, spec, omega, cfg.R, cfg.h);
  } else if (space == "L") {
    if (in_file.empty())
      throw CLI::ValidationError("--in", "mixed norms need an input grid file");
    const GridField g = grid_load(in_file);
    MixedNormSpec gspec = spec;
    if (gspec.n != g.axes())
      throw CLI::ValidationError("--p", "exponent count does not match the grid");
    value = mixed_norm(g, gspec);
  } else {
    throw CLI::ValidationError("--space", "unknown space " + space);
  }

  fs::create_directories(cfg.out_dir);
  nlohmann::json report = report_skeleton(cfg);
  report["space"] = space;
  report["p"] = p_text;
  report["omega"] = omega_text;
  report["value"] = value;
  const fs::path rpt = fs::path(cfg.out_dir) / "norm_report.json";
  write_text(rpt, report.dump(2) + "\n");
  std::printf("%.12g\n", value);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  // Dotted tolerance flags are collected before the main parse.
  RunConfig cfg;
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a.rfind("--tol.", 0) == 0) {
      const std::size_t eq = a.find('=');
      std::string key = a.substr(6), value;
      if (eq != std::string::npos) {
        key = a.substr(6, eq - 6);
        value = a.substr(eq + 1);
      } else if (i + 1 < argc) {
        value = argv[++i];
      } else {
        std::cerr << "missing value for " << a << "\n";
        return 2;
      }
      cfg.tolerances[key] = std::stod(value);
      continue;
    }
    args.push_back(a);
  }

  CLI::App app{"Fock-space transform calculus and verification harness"};
  app.set_help_flag("--help", "print usage");
  app.require_subcommand(1);

  std::string config_file;
  app.add_option("--config", config_file, "key=value config file");
  app.add_option("--d", cfg.d, "dimension");
  app.add_option("--N", cfg.N, "truncation degree");
  app.add_option("--Q", cfg.Q, "quadrature order (0 = 2N+8)");
  app.add_option("--R", cfg.R, "grid extent");
  app.add_option("--h", cfg.h, "grid step");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--preset", cfg.preset, "function preset (gauss, h:<n>, random[:seed])");
  app.add_option("--out", cfg.out_dir, "output directory");

  std::string transform_kind, verify_suite, transform_in;
  CLI::App* transform =
      app.add_subcommand("transform", "run a transform on a preset or sampled input");
  transform->fallthrough();
  transform->add_option("kind", transform_kind, "bargmann | stft | hermite")->required();
  transform->add_option("--in", transform_in, "sampled input grid file");

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->fallthrough();
  verify->add_option("suite", verify_suite, "suite name")->required();
  verify->add_option("--t", cfg.t_text, "multiplier override for the t0t suite");

  std::string space = "M", p_text = "2", omega_text = "one", in_file;
  CLI::App* norm = app.add_subcommand("norm", "evaluate a norm");
  norm->fallthrough();
  norm->add_option("--space", space, "M | A | B | L");
  norm->add_option("--p", p_text, "exponents: scalar, list, or Lpq(p,q) / Lpq*(p,q)");
  norm->add_option("--omega", omega_text, "weight preset");
  norm->add_option("--in", in_file, "input grid file (space L)");

  std::vector<char*> argv2;
  argv2.push_back(argv[0]);
  std::vector<std::string> own = args;
  for (auto& s : own) argv2.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv2.size()), argv2.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    // Flag values override config-file values only when explicitly given;
    // reload the file first, then re-apply the parsed flags.
    if (!config_file.empty()) {
      RunConfig from_file = RunConfig::from_file(config_file);
      for (const auto& [k, v] : cfg.tolerances) from_file.tolerances[k] = v;
      if (app.count("--d")) from_file.d = cfg.d;
      if (app.count("--N")) from_file.N = cfg.N;
      if (app.count("--Q")) from_file.Q = cfg.Q;
      if (app.count("--R")) from_file.R = cfg.R;
      if (app.count("--h")) from_file.h = cfg.h;
      if (app.count("--seed")) from_file.seed = cfg.seed;
      if (app.count("--preset")) from_file.preset = cfg.preset;
      if (app.count("--out")) from_file.out_dir = cfg.out_dir;
      if (verify->count("--t")) from_file.t_text = cfg.t_text;
      cfg = from_file;
    }

    if (*transform) return cmd_transform(cfg, transform_kind, transform_in);
    if (*verify) return cmd_verify(cfg, verify_suite);
    if (*norm) return cmd_norm(cfg, space, p_text, omega_text, in_file);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
