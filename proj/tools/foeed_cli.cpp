#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "foeed/diffusivity.hpp"
#include "foeed/io.hpp"
#include "foeed/masks.hpp"
#include "foeed/metrics.hpp"
#include "foeed/solver.hpp"
#include "foeed/synth.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kNotConverged = 1, kUsage = 2, kIo = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverFlags {
  std::string model = "foeed";
  std::optional<double> tau;
  double sigma = 1.0;
  double lambda = 0.1;
  std::string diffusivity = "charbonnier";
  std::string mu3 = "gmean";
  int fsi_n = 40;
  double tol = 1e-4;
  int max_cycles = 10000;
  bool no_fsi = false;
  std::string init = "mean";
};

struct MaskFlags {
  std::string path;
  double density = 0.05;
  std::uint64_t seed = 0;
};

void add_solver_flags(CLI::App* app, SolverFlags& f) {
  app->add_option("--model", f.model, "eed|foeed|li1|li2|youkaveh|hajiaboli")->capture_default_str();
  app->add_option("--tau", f.tau, "time step (default 0.25 eed, 0.05 foeed, 1/32 others)");
  app->add_option("--sigma", f.sigma, "presmoothing")->capture_default_str();
  app->add_option("--lambda", f.lambda, "contrast parameter")->capture_default_str();
  app->add_option("--diffusivity", f.diffusivity)->capture_default_str();
  app->add_option("--mu3", f.mu3, "one|amean|gmean")->capture_default_str();
  app->add_option("--fsi-n", f.fsi_n, "inner steps per cycle")->capture_default_str();
  app->add_option("--tol", f.tol, "stopping tolerance")->capture_default_str();
  app->add_option("--max-cycles", f.max_cycles)->capture_default_str();
  app->add_flag("--no-fsi", f.no_fsi, "plain explicit steps");
  app->add_option("--init", f.init, "mean|zero|nearest")->capture_default_str();
}

void add_mask_flags(CLI::App* app, MaskFlags& f) {
  app->add_option("-m,--mask", f.path, "mask PGM (255 known)");
  app->add_option("--density", f.density, "random mask density when no mask file")->capture_default_str();
  app->add_option("--seed", f.seed)->capture_default_str();
}

template <class T>
T parse_or_throw(std::optional<T> v, const std::string& what, const std::string& name) {
  if (!v) throw UsageError("unknown " + what + " '" + name + "'");
  return *v;
}

foeed::SolverConfig build_config(const SolverFlags& f) {
  const auto model = parse_or_throw(foeed::parse_model(f.model), "model", f.model);
  foeed::SolverConfig cfg = foeed::SolverConfig::for_model(model);
  if (f.tau) cfg.tau = *f.tau;
  cfg.sigma = f.sigma;
  try {
    cfg.diffusivity = foeed::DiffusivitySpec(
        parse_or_throw(foeed::parse_diffusivity(f.diffusivity), "diffusivity", f.diffusivity), f.lambda);
    cfg.mu3 = parse_or_throw(foeed::parse_mu3(f.mu3), "mu3 rule", f.mu3);
    cfg.fsi_n = f.fsi_n;
    cfg.stop_tol = f.tol;
    cfg.max_cycles = f.max_cycles;
    cfg.use_fsi = !f.no_fsi;
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

foeed::InitStrategy build_init(const SolverFlags& f) {
  return parse_or_throw(foeed::parse_init(f.init), "init", f.init);
}

foeed::MaskSpec build_mask_spec(const MaskFlags& f) {
  foeed::MaskSpec spec;
  spec.seed = f.seed;
  if (!f.path.empty()) {
    spec.kind = foeed::MaskSpec::Kind::FromFile;
    spec.path = f.path;
  } else {
    if (!(f.density > 0.0 && f.density < 1.0)) throw UsageError("--density must lie in (0, 1)");
    spec.density = f.density;
  }
  return spec;
}

foeed::Mask load_mask(const foeed::MaskSpec& spec, int w, int h) {
  try {
    return foeed::make_mask(spec, w, h);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::pair<int, int> parse_size(const std::string& s) {
  int w = 0, h = 0;
  char x = 0;
  std::istringstream in(s);
  if (!(in >> w >> x >> h) || (x != 'x' && x != 'X') || w < 3 || h < 3 || !in.eof()) {
    throw UsageError("--size must look like WIDTHxHEIGHT with both at least 3");
  }
  return {w, h};
}

json config_json(const foeed::SolverConfig& c, foeed::InitStrategy init) {
  return {{"model", foeed::to_string(c.model)},
          {"tau", c.tau},
          {"sigma", c.sigma},
          {"diffusivity", foeed::to_string(c.diffusivity.kind())},
          {"lambda", c.diffusivity.lambda()},
          {"mu3", foeed::to_string(c.mu3)},
          {"fsi_n", c.fsi_n},
          {"stop_tol", c.stop_tol},
          {"max_cycles", c.max_cycles},
          {"use_fsi", c.use_fsi},
          {"intensity_range", c.intensity_range},
          {"init", foeed::to_string(init)}};
}

json mask_json(const foeed::MaskSpec& m) {
  if (m.kind == foeed::MaskSpec::Kind::FromFile) {
    return {{"kind", "file"}, {"path", fs::absolute(m.path).string()}};
  }
  return {{"kind", "random"}, {"density", m.density}, {"seed", m.seed}};
}

struct Outcome {
  std::vector<foeed::ImageGrid> channels;
  foeed::RunReport report;  // cycles: max over channels, applications: summed
};

Outcome run_channels(const std::vector<foeed::ImageGrid>& input, const foeed::Mask& mask,
                     const foeed::SolverConfig& cfg, foeed::InitStrategy init) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::future<foeed::RunResult>> jobs;
  for (const auto& ch : input) {
    jobs.push_back(std::async(std::launch::async, [&ch, &mask, &cfg, init] {
      return foeed::run(ch, mask, cfg, init);
    }));
  }
  Outcome out;
  out.report.converged = true;
  for (auto& j : jobs) {
    foeed::RunResult r = j.get();
    out.report.cycles_run = std::max(out.report.cycles_run, r.report.cycles_run);
    out.report.operator_applications += r.report.operator_applications;
    out.report.final_residual = std::max(out.report.final_residual, r.report.final_residual);
    out.report.converged = out.report.converged && r.report.converged;
    out.channels.push_back(std::move(r.image));
  }
  out.report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::string csv_header() { return "model,mse,aae,cycles,op_applications,wall_ms\n"; }

std::string csv_row(const std::string& label, double m, double a, const foeed::RunReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s,%.6f,%.6f,%d,%lld,%.3f\n", label.c_str(), m, a, r.cycles_run,
                static_cast<long long>(r.operator_applications), r.wall_time * 1000.0);
  return buf;
}

void print_report(const foeed::RunReport& r) {
  std::printf("cycles %d  residual %.3g  applications %lld  wall %.3f s  %s\n", r.cycles_run,
              r.final_residual, static_cast<long long>(r.operator_applications), r.wall_time,
              r.converged ? "converged" : "NOT CONVERGED");
}

// ---------------------------------------------------------------------------

struct MaskgenArgs {
  std::string size, like, out;
  double density = 0.05;
  std::uint64_t seed = 0;
};

int cmd_maskgen(const MaskgenArgs& a) {
  if (!(a.density > 0.0 && a.density < 1.0)) throw UsageError("--density must lie in (0, 1)");
  int w, h;
  if (!a.like.empty()) {
    const auto r = foeed::read_netpbm(a.like);
    w = r.width;
    h = r.height;
  } else if (!a.size.empty()) {
    std::tie(w, h) = parse_size(a.size);
  } else {
    throw UsageError("maskgen needs --size or --like");
  }
  const foeed::Mask m = foeed::random_mask(w, h, a.density, a.seed);
  foeed::write_mask(a.out, m);
  std::printf("%zu known pixels\n", m.known_count());
  return kOk;
}

struct ScratchArgs {
  std::string size, like, out, marker_out;
  foeed::ScratchSpec spec;
};

int cmd_scratchgen(ScratchArgs a) {
  int w, h;
  if (!a.like.empty()) {
    const auto r = foeed::read_netpbm(a.like);
    w = r.width;
    h = r.height;
  } else if (!a.size.empty()) {
    std::tie(w, h) = parse_size(a.size);
  } else {
    throw UsageError("scratchgen needs --size or --like");
  }
  foeed::ImageGrid marker;
  foeed::ScratchMask s;
  try {
    marker = foeed::scratch_marker(w, h, a.spec);
    s = foeed::scratch_mask_from_image(marker, 127.5);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  foeed::write_mask(a.out, s.mask);
  if (!a.marker_out.empty()) foeed::write_netpbm(a.marker_out, foeed::from_channels({marker}));
  std::printf("%.4f unknown fraction, %zu known pixels\n", s.unknown_fraction, s.mask.known_count());
  return kOk;
}

struct SynthArgs {
  int size = 300;
  std::string out;
};

int cmd_synth(const SynthArgs& a) {
  if (a.size < 3) throw UsageError("--size must be at least 3");
  foeed::write_netpbm(a.out, foeed::from_channels({foeed::make_test_image(foeed::SynthSpec::standard(a.size))}));
  return kOk;
}

struct InpaintArgs {
  std::string input, output, reference, csv;
  SolverFlags solver;
  MaskFlags mask;
};

int cmd_inpaint(const InpaintArgs& a) {
  const foeed::SolverConfig cfg = build_config(a.solver);
  const foeed::InitStrategy init = build_init(a.solver);
  const foeed::MaskSpec mspec = build_mask_spec(a.mask);

  const foeed::Raster8 raster = foeed::read_netpbm(a.input);
  const foeed::Mask mask = load_mask(mspec, raster.width, raster.height);
  if (mask.known_count() == 0) throw UsageError("mask has no known pixels");
  std::optional<foeed::Raster8> ref;
  if (!a.reference.empty()) {
    ref = foeed::read_netpbm(a.reference);
    if (ref->width != raster.width || ref->height != raster.height || ref->channels != raster.channels) {
      throw UsageError("reference and input dimensions differ");
    }
  }

  const Outcome out = run_channels(foeed::to_channels(raster), mask, cfg, init);
  foeed::write_netpbm(a.output, foeed::from_channels(out.channels));
  print_report(out.report);

  json manifest = {{"command", "inpaint"},
                   {"input", fs::absolute(a.input).string()},
                   {"mask", mask_json(mspec)},
                   {"seed", mspec.seed},
                   {"config", config_json(cfg, init)},
                   {"outputs", {fs::absolute(a.output).string()}},
                   {"report",
                    {{"cycles", out.report.cycles_run},
                     {"op_applications", out.report.operator_applications},
                     {"final_residual", out.report.final_residual},
                     {"converged", out.report.converged},
                     {"wall_ms", out.report.wall_time * 1000.0}}}};
  if (ref) {
    const auto r = foeed::to_channels(*ref);
    const double m = foeed::mse(out.channels, r), e = foeed::aae(out.channels, r);
    std::printf("mse %.4f  aae %.4f\n", m, e);
    manifest["reference"] = fs::absolute(a.reference).string();
    manifest["metrics"] = {{"mse", m}, {"aae", e}};
    if (!a.csv.empty()) {
      foeed::write_file_atomic(a.csv, csv_header() + csv_row(std::string(foeed::to_string(cfg.model)), m, e, out.report));
      manifest["metrics_csv"] = fs::absolute(a.csv).string();
    }
  } else if (!a.csv.empty()) {
    throw UsageError("--csv needs --reference");
  }
  foeed::write_file_atomic(a.output + ".json", manifest.dump(2) + "\n");
  return out.report.converged ? kOk : kNotConverged;
}

struct CompareArgs {
  std::string reference, input, csv, models = "eed,foeed,li1,li2";
  bool sweep = false;
  SolverFlags solver;
  MaskFlags mask;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, sep);)
    if (!item.empty()) out.push_back(item);
  return out;
}

int cmd_compare(const CompareArgs& a) {
  const foeed::InitStrategy init = build_init(a.solver);
  const foeed::MaskSpec mspec = build_mask_spec(a.mask);
  const foeed::Raster8 ref = foeed::read_netpbm(a.reference);
  const foeed::Raster8 input = a.input.empty() ? ref : foeed::read_netpbm(a.input);
  if (input.width != ref.width || input.height != ref.height || input.channels != ref.channels) {
    throw UsageError("reference and input dimensions differ");
  }
  const foeed::Mask mask = load_mask(mspec, ref.width, ref.height);
  const auto ref_ch = foeed::to_channels(ref);
  const auto in_ch = foeed::to_channels(input);

  // Each row: label and config.
  std::vector<std::pair<std::string, foeed::SolverConfig>> rows;
  if (a.sweep) {
    SolverFlags f = a.solver;
    for (foeed::DiffusivityKind k : foeed::kAllDiffusivities) {
      f.diffusivity = std::string(foeed::to_string(k));
      foeed::SolverConfig cfg = build_config(f);
      // Unnormalized diffusivities exceed 1; shrink the step to stay stable.
      cfg.tau /= std::max(1.0, cfg.diffusivity.supremum());
      rows.emplace_back(std::string(foeed::to_string(cfg.model)) + ":" + f.diffusivity, cfg);
    }
  } else {
    for (const std::string& m : split(a.models, ',')) {
      SolverFlags f = a.solver;
      f.model = m;
      if (!a.solver.tau) f.tau.reset();
      rows.emplace_back(m, build_config(f));
    }
    if (rows.empty()) throw UsageError("--models is empty");
  }

  std::string table = csv_header();
  json runs = json::array();
  bool all_converged = true;
  for (const auto& [label, cfg] : rows) {
    const Outcome out = run_channels(in_ch, mask, cfg, init);
    const double m = foeed::mse(out.channels, ref_ch), e = foeed::aae(out.channels, ref_ch);
    table += csv_row(label, m, e, out.report);
    all_converged = all_converged && out.report.converged;
    runs.push_back({{"label", label}, {"config", config_json(cfg, init)}, {"converged", out.report.converged}});
  }

  if (a.csv.empty()) {
    std::cout << table;
  } else {
    foeed::write_file_atomic(a.csv, table);
    json manifest = {{"command", "compare"},
                     {"reference", fs::absolute(a.reference).string()},
                     {"input", fs::absolute(a.input.empty() ? a.reference : a.input).string()},
                     {"mask", mask_json(mspec)},
                     {"seed", mspec.seed},
                     {"runs", runs},
                     {"metrics_csv", fs::absolute(a.csv).string()}};
    foeed::write_file_atomic(a.csv + ".json", manifest.dump(2) + "\n");
    std::cout << table;
  }
  return all_converged ? kOk : kNotConverged;
}

struct SmoothArgs {
  std::string input, output, norms;
  int steps = 100;
  SolverFlags solver;
};

int cmd_smooth(const SmoothArgs& a) {
  if (a.steps < 0) throw UsageError("--steps must be nonnegative");
  const foeed::SolverConfig cfg = build_config(a.solver);
  const foeed::Raster8 raster = foeed::read_netpbm(a.input);
  std::vector<foeed::ImageGrid> out;
  std::vector<std::vector<double>> norms;
  for (const auto& ch : foeed::to_channels(raster)) {
    norms.emplace_back();
    out.push_back(foeed::smooth_run(ch, cfg, a.steps, [&](int, const foeed::ImageGrid& u) {
      norms.back().push_back(foeed::l2_norm(u));
    }));
  }
  foeed::write_netpbm(a.output, foeed::from_channels(out));
  if (!a.norms.empty()) {
    std::string csv = "step";
    for (std::size_t c = 0; c < norms.size(); ++c) csv += norms.size() == 1 ? ",l2" : ",l2_c" + std::to_string(c);
    csv += "\n";
    char buf[64];
    for (int s = 0; s <= a.steps; ++s) {
      csv += std::to_string(s);
      for (const auto& n : norms) {
        std::snprintf(buf, sizeof buf, ",%.17g", n[s]);
        csv += buf;
      }
      csv += "\n";
    }
    foeed::write_file_atomic(a.norms, csv);
  }
  json manifest = {{"command", "smooth"},
                   {"input", fs::absolute(a.input).string()},
                   {"steps", a.steps},
                   {"config", config_json(cfg, foeed::InitStrategy::Mean)},
                   {"outputs", {fs::absolute(a.output).string()}}};
  if (!a.norms.empty()) manifest["norms_csv"] = fs::absolute(a.norms).string();
  foeed::write_file_atomic(a.output + ".json", manifest.dump(2) + "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourth-order edge-enhancing diffusion inpainting"};
  app.require_subcommand(1);

  MaskgenArgs mg;
  auto* maskgen = app.add_subcommand("maskgen", "write a random mask");
  maskgen->add_option("--size", mg.size, "WIDTHxHEIGHT");
  maskgen->add_option("--like", mg.like, "take the size from this image");
  maskgen->add_option("--density", mg.density)->required();
  maskgen->add_option("--seed", mg.seed)->capture_default_str();
  maskgen->add_option("-o,--output", mg.out)->required();

  ScratchArgs sg;
  auto* scratchgen = app.add_subcommand("scratchgen", "write a scratch mask");
  scratchgen->add_option("--size", sg.size, "WIDTHxHEIGHT");
  scratchgen->add_option("--like", sg.like);
  scratchgen->add_option("--coverage", sg.spec.coverage)->capture_default_str();
  scratchgen->add_option("--thickness", sg.spec.thickness)->capture_default_str();
  scratchgen->add_option("--seed", sg.spec.seed)->capture_default_str();
  scratchgen->add_option("--marker", sg.marker_out, "also write the scratch marker image");
  scratchgen->add_option("-o,--output", sg.out)->required();

  SynthArgs sy;
  auto* synth = app.add_subcommand("synth", "write the synthetic shapes image");
  synth->add_option("--size", sy.size)->capture_default_str();
  synth->add_option("-o,--output", sy.out)->required();

  InpaintArgs ip;
  auto* inpaint = app.add_subcommand("inpaint", "reconstruct unknown pixels");
  inpaint->add_option("-i,--input", ip.input)->required();
  inpaint->add_option("-o,--output", ip.output)->required();
  inpaint->add_option("--reference", ip.reference, "original image for metrics");
  inpaint->add_option("--csv", ip.csv, "metrics CSV (needs --reference)");
  add_mask_flags(inpaint, ip.mask);
  add_solver_flags(inpaint, ip.solver);

  CompareArgs cp;
  auto* compare = app.add_subcommand("compare", "run several models and tabulate errors");
  compare->add_option("--reference", cp.reference)->required();
  compare->add_option("-i,--input", cp.input, "image to inpaint (default: the reference)");
  compare->add_option("--models", cp.models)->capture_default_str();
  compare->add_flag("--sweep-diffusivity", cp.sweep, "one row per diffusivity for --model");
  compare->add_option("--csv", cp.csv, "write the table here");
  add_mask_flags(compare, cp.mask);
  add_solver_flags(compare, cp.solver);

  SmoothArgs sm;
  auto* smooth = app.add_subcommand("smooth", "pure diffusion without a mask");
  smooth->add_option("-i,--input", sm.input)->required();
  smooth->add_option("-o,--output", sm.output)->required();
  smooth->add_option("--steps", sm.steps)->capture_default_str();
  smooth->add_option("--norms", sm.norms, "per-step L2 norms CSV");
  add_solver_flags(smooth, sm.solver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*maskgen) return cmd_maskgen(mg);
    if (*scratchgen) return cmd_scratchgen(sg);
    if (*synth) return cmd_synth(sy);
    if (*inpaint) return cmd_inpaint(ip);
    if (*compare) return cmd_compare(cp);
    if (*smooth) return cmd_smooth(sm);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const foeed::IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }
  return kUsage;
}
