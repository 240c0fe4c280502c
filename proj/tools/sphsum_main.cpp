#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sphsum/biorth.hpp"
#include "sphsum/errors.hpp"
#include "sphsum/json_io.hpp"
#include "sphsum/mc.hpp"
#include "sphsum/quadrature.hpp"
#include "sphsum/spherical.hpp"
#include "sphsum/sums.hpp"

namespace {

using namespace sphsum;

struct CommonOpts {
  std::string config_path;
  std::string inline_json;
  std::string out_path;
  std::uint64_t seed = 12345;
  int threads = 0;  // 0: use SPHSUM_THREADS or 1
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "JSON configuration file");
  cmd->add_option("--json", opts.inline_json, "inline JSON configuration");
  cmd->add_option("--out", opts.out_path, "output file (default: stdout)");
  cmd->add_option("--seed", opts.seed, "RNG seed");
  cmd->add_option("--threads", opts.threads, "worker threads (env SPHSUM_THREADS)");
}

int resolve_threads(const CommonOpts& opts) {
  if (opts.threads > 0) return opts.threads;
  if (const char* env = std::getenv("SPHSUM_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw config_error("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// ------------------------------------------------------------------ phi

int cmd_phi(const CommonOpts& opts, std::int64_t mc_samples) {
  const json cfg = load_config(opts.config_path, opts.inline_json);
  if (!cfg.contains("s") || !cfg.contains("x"))
    throw config_error("phi: config needs 's' and 'x' arrays");
  FrequencyVector s = cfg["s"].get<std::vector<double>>();
  SpectralVector x = cfg["x"].get<std::vector<double>>();
  const cplx value = spherical_phi(s, x);
  Output out(opts.out_path);
  if (mc_samples > 0) {
    const PhiMcResult mc = spherical_phi_mc(s, x, mc_samples, opts.seed, resolve_threads(opts));
    out.stream() << "re,im,mc_re,mc_im,mc_stderr\n"
                 << fmt(value.real()) << ',' << fmt(value.imag()) << ','
                 << fmt(mc.estimate.real()) << ',' << fmt(mc.estimate.imag()) << ','
                 << fmt(mc.stderr_value) << '\n';
  } else {
    out.stream() << "re,im\n" << fmt(value.real()) << ',' << fmt(value.imag()) << '\n';
  }
  return 0;
}

// ------------------------------------------------------------- transform

int cmd_transform(const CommonOpts& opts, bool numeric) {
  const json cfg = load_config(opts.config_path, opts.inline_json);
  if (!cfg.contains("ensemble")) throw config_error("transform: config needs 'ensemble'");
  const EnsembleSpec ens = ensemble_from_json(cfg["ensemble"]);
  if (!cfg.contains("s_grid")) throw config_error("transform: config needs 's_grid'");
  const auto grid = grid_from_json(cfg["s_grid"], ens.n);
  const TransformRep rep = transform_of(ens);

  Output out(opts.out_path);
  std::ostream& os = out.stream();
  for (int d = 1; d <= ens.n; ++d) os << 's' << d << ',';
  os << "re,im";
  if (numeric) os << ",numeric_re,numeric_im,abs_diff";
  os << '\n';
  for (const auto& s : grid) {
    const cplx v = evaluate(rep, s);
    for (double sd : s) os << fmt(sd) << ',';
    os << fmt(v.real()) << ',' << fmt(v.imag());
    if (numeric) {
      const cplx num = forward_numeric(ens, s);
      os << ',' << fmt(num.real()) << ',' << fmt(num.imag()) << ',' << fmt(std::abs(num - v));
    }
    os << '\n';
  }
  return 0;
}

// ------------------------------------------------------------------- sum

// Corollary fast path when one operand is a polynomial ensemble (or can be
// rewritten as one) and the other is GUE/LUE/DPE; falls back to generic
// inversion otherwise.
struct SumPath {
  std::string label;
  bool structured = false;
  EnsembleSpec result{EnsembleSpec::gue(1)};
};

EnsembleSpec pe_view(const EnsembleSpec& ens) {
  switch (ens.kind) {
    case EnsembleSpec::Kind::gue:
      return EnsembleSpec::gue_as_pe(ens.n);
    case EnsembleSpec::Kind::lue:
      return EnsembleSpec::lue_as_pe(ens.n, ens.alpha);
    default:
      return ens;
  }
}

SumPath pick_sum_path(const EnsembleSpec& a, const EnsembleSpec& b) {
  using K = EnsembleSpec::Kind;
  SumPath path;
  const auto try_pair = [&](const EnsembleSpec& pe_side, const EnsembleSpec& other) -> bool {
    if (pe_side.kind == K::dpe) return false;
    switch (other.kind) {
      case K::gue:
        path = {"add_gue", true, add_gue(pe_view(pe_side))};
        return true;
      case K::lue:
        path = {"add_lue", true, add_lue(pe_view(pe_side), other.alpha)};
        return true;
      case K::dpe:
        path = {"add_dpe_pe", true, add_dpe_pe(*other.generator, pe_view(pe_side))};
        return true;
      default:
        return false;
    }
  };
  if (a.kind == K::dpe && b.kind == K::dpe) {
    path = {"add_dpe", true, add_dpe(*a.generator, *b.generator, a.n)};
    return path;
  }
  if (try_pair(a, b) || try_pair(b, a)) return path;
  path.label = "generic-inversion";
  return path;
}

int cmd_sum(const CommonOpts& opts, const std::string& kind) {
  const json cfg = load_config(opts.config_path, opts.inline_json);
  if (!cfg.contains("a") || !cfg.contains("b"))
    throw config_error("sum: config needs ensembles 'a' and 'b'");
  const EnsembleSpec a = ensemble_from_json(cfg["a"]);
  const EnsembleSpec b = ensemble_from_json(cfg["b"]);
  if (a.n != b.n) throw dimension_error("sum: ensembles have different n");
  if (!cfg.contains("grid")) throw config_error("sum: config needs 'grid'");

  const SumPath path = pick_sum_path(a, b);
  std::cerr << "path: " << path.label << '\n';

  Output out(opts.out_path);
  std::ostream& os = out.stream();
  if (kind == "marginal") {
    if (!path.structured)
      throw capability_error("sum: marginal output needs a corollary (PE) path");
    const auto grid = grid_from_json(cfg["grid"], 1);
    const MarginalDensity marg = eigen_marginal(path.result);
    os << "x,density\n";
    for (const auto& x : grid) os << fmt(x[0]) << ',' << fmt(marg.density(x[0])) << '\n';
    return 0;
  }
  const auto grid = grid_from_json(cfg["grid"], a.n);
  os << "x";
  for (int d = 2; d <= a.n; ++d) os << ",x" << d;
  os << ",density\n";
  for (const auto& x : grid) {
    double value = 0.0;
    if (path.structured) {
      value = kind == "matrix" ? matrix_density(path.result, x)
                               : joint_eigen_density(path.result, x);
    } else {
      SumDensityOptions sopt;
      sopt.kind = kind == "matrix" ? DensityKind::matrix : DensityKind::joint;
      value = sum_density(a, b, x, sopt);
    }
    for (double xd : x) os << fmt(xd) << ',';
    os << fmt(value) << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- kernel

int cmd_kernel(const CommonOpts& opts, bool transformed, double alpha, bool full_grid) {
  const json cfg = load_config(opts.config_path, opts.inline_json);
  if (!cfg.contains("ensemble")) throw config_error("kernel: config needs 'ensemble'");
  EnsembleSpec ens = ensemble_from_json(cfg["ensemble"]);
  ens = pe_view(ens);
  if (ens.kind != EnsembleSpec::Kind::pe)
    throw capability_error("kernel: needs a polynomial ensemble (or gue/lue)");
  const BiorthSystem sys = build_biorth(ens);
  const KernelRep rep = transformed ? transformed_kernel(sys, alpha) : kernel(sys);
  const auto grid = cfg.contains("grid")
                        ? grid_from_json(cfg["grid"], 1)
                        : grid_from_json(json{{"from", rep.lo}, {"to", rep.hi}, {"count", 101}}, 1);
  Output out(opts.out_path);
  std::ostream& os = out.stream();
  if (full_grid) {
    os << "x,y,k\n";
    for (const auto& x : grid)
      for (const auto& y : grid)
        os << fmt(x[0]) << ',' << fmt(y[0]) << ',' << fmt(rep.eval(x[0], y[0])) << '\n';
    return 0;
  }
  const double trace = kernel_trace(rep);
  os << "x,kdiag,trace\n";
  for (const auto& x : grid)
    os << fmt(x[0]) << ',' << fmt(rep.diag(x[0])) << ',' << fmt(trace) << '\n';
  return 0;
}

// -------------------------------------------------------------- validate

MarginalDensity analytic_marginal_for(const json& cfg, const MatrixModel& a,
                                      const MatrixModel* b) {
  using K = MatrixModel::Kind;
  if (cfg.contains("target")) {
    // explicit analytic target overrides the derived one (power checks)
    return eigen_marginal(ensemble_from_json(cfg["target"]));
  }
  const auto as_ensemble = [](const MatrixModel& m) {
    return m.kind == K::gue ? EnsembleSpec::gue_as_pe(m.n)
                            : EnsembleSpec::lue_as_pe(m.n, m.alpha);
  };
  if (b == nullptr) {
    if (a.kind == K::fixed) throw capability_error("validate: fixed model alone has no target");
    return eigen_marginal(as_ensemble(a));
  }
  if (a.kind == K::fixed || b->kind == K::fixed) {
    const MatrixModel& fixed = a.kind == K::fixed ? a : *b;
    const MatrixModel& other = a.kind == K::fixed ? *b : a;
    if (other.kind != K::lue)
      throw capability_error("validate: fixed spectra pair only with LUE");
    return lue_fixed_shift_marginal(fixed.spectrum, other.alpha);
  }
  if (a.kind == K::gue || b->kind == K::gue) {
    const MatrixModel& other = a.kind == K::gue ? *b : a;
    return eigen_marginal(add_gue(as_ensemble(other)));
  }
  // lue + lue
  return eigen_marginal(add_lue(as_ensemble(a), b->alpha));
}

int cmd_validate(const CommonOpts& opts) {
  const json cfg = load_config(opts.config_path, opts.inline_json);
  if (!cfg.contains("a")) throw config_error("validate: config needs model 'a'");
  const MatrixModel a = model_from_json(cfg["a"]);
  MatrixModel b = a;
  const bool has_b = cfg.contains("b");
  if (has_b) b = model_from_json(cfg["b"]);
  const std::int64_t samples = cfg.value("samples", 50000);
  const double gate = cfg.value("gate", 0.02);
  if (samples < 100) throw config_error("validate: needs samples >= 100");

  const MarginalDensity marg = analytic_marginal_for(cfg, a, has_b ? &b : nullptr);
  NumericCdf cdf(marg.density, marg.lo, marg.hi);

  Rng rng(opts.seed);
  std::vector<double> pooled;
  pooled.reserve(static_cast<std::size_t>(samples) * a.n);
  for (std::int64_t i = 0; i < samples; ++i) {
    const SpectralVector ev = has_b ? sample_sum(a, b, rng)
                                    : (a.kind == MatrixModel::Kind::gue
                                           ? sample_gue(a.n, rng)
                                           : sample_lue(a.n, a.alpha, rng));
    pooled.insert(pooled.end(), ev.begin(), ev.end());
  }
  std::sort(pooled.begin(), pooled.end());
  const double ks = ks_distance(pooled, [&](double x) { return cdf(x); });
  const bool pass = ks < gate;

  Output out(opts.out_path);
  out.stream() << "ks,samples,gate,result\n"
               << fmt(ks) << ',' << samples << ',' << fmt(gate) << ','
               << (pass ? "pass" : "fail") << '\n';
  return pass ? 0 : 5;
}

// ---------------------------------------------------------------- sample

int cmd_sample(const CommonOpts& opts, bool as_histogram) {
  const json cfg = load_config(opts.config_path, opts.inline_json);
  const std::int64_t samples = cfg.value("samples", 1000);
  if (samples < 1) throw config_error("sample: needs samples >= 1");
  Rng rng(opts.seed);

  std::vector<SpectralVector> draws;
  draws.reserve(static_cast<std::size_t>(samples));
  if (cfg.contains("a") && cfg.contains("b")) {
    const MatrixModel a = model_from_json(cfg["a"]);
    const MatrixModel b = model_from_json(cfg["b"]);
    for (std::int64_t i = 0; i < samples; ++i) draws.push_back(sample_sum(a, b, rng));
  } else if (cfg.contains("model")) {
    const MatrixModel m = model_from_json(cfg["model"]);
    for (std::int64_t i = 0; i < samples; ++i) {
      switch (m.kind) {
        case MatrixModel::Kind::gue:
          draws.push_back(sample_gue(m.n, rng));
          break;
        case MatrixModel::Kind::lue:
          draws.push_back(sample_lue(m.n, m.alpha, rng));
          break;
        default:
          throw capability_error("sample: fixed model alone is deterministic");
      }
    }
  } else {
    throw config_error("sample: config needs 'model' or a pair 'a'/'b'");
  }

  Output out(opts.out_path);
  std::ostream& os = out.stream();
  if (as_histogram) {
    std::vector<double> pooled;
    for (const auto& ev : draws) pooled.insert(pooled.end(), ev.begin(), ev.end());
    const Histogram h = histogram_fd(std::move(pooled));
    os << "bin_left,bin_right,density\n";
    for (std::size_t i = 0; i < h.density.size(); ++i)
      os << fmt(h.edges[i]) << ',' << fmt(h.edges[i + 1]) << ',' << fmt(h.density[i]) << '\n';
  } else {
    const int n = static_cast<int>(draws.front().size());
    os << "x1";
    for (int d = 2; d <= n; ++d) os << ",x" << d;
    os << '\n';
    for (const auto& ev : draws) {
      for (int d = 0; d < n; ++d) os << (d ? "," : "") << fmt(ev[d]);
      os << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spherical-transform calculus for sums of random Hermitian matrices"};
  app.require_subcommand(1);

  CommonOpts phi_opts, tr_opts, sum_opts, ker_opts, val_opts, samp_opts;
  std::int64_t mc_samples = 0;
  bool numeric = false;
  std::string sum_kind = "joint";
  bool transformed = false;
  double kernel_alpha = 0.0;
  bool full_grid = false;
  bool as_histogram = false;

  CLI::App* phi = app.add_subcommand("phi", "evaluate the spherical function");
  add_common(phi, phi_opts);
  phi->add_option("--mc", mc_samples, "add a Monte Carlo estimate with this many samples");

  CLI::App* tr = app.add_subcommand("transform", "evaluate spherical transforms on a grid");
  add_common(tr, tr_opts);
  tr->add_flag("--numeric", numeric, "add the quadrature cross-check columns");

  CLI::App* sum = app.add_subcommand("sum", "densities of sums of two ensembles");
  add_common(sum, sum_opts);
  sum->add_option("--kind", sum_kind, "joint | matrix | marginal")
      ->check(CLI::IsMember({"joint", "matrix", "marginal"}));

  CLI::App* ker = app.add_subcommand("kernel", "correlation-kernel diagonal");
  add_common(ker, ker_opts);
  ker->add_flag("--transformed", transformed, "emit the LUE-shifted kernel");
  ker->add_option("--alpha", kernel_alpha, "LUE parameter for --transformed");
  ker->add_flag("--full", full_grid, "emit the gridded kernel (x, y, K(x,y))");

  CLI::App* val = app.add_subcommand("validate", "KS gate of samples vs analytic marginal");
  add_common(val, val_opts);

  CLI::App* samp = app.add_subcommand("sample", "dump eigenvalue samples");
  add_common(samp, samp_opts);
  samp->add_flag("--histogram", as_histogram, "emit a Freedman-Diaconis histogram");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (phi->parsed()) return cmd_phi(phi_opts, mc_samples);
    if (tr->parsed()) return cmd_transform(tr_opts, numeric);
    if (sum->parsed()) return cmd_sum(sum_opts, sum_kind);
    if (ker->parsed()) return cmd_kernel(ker_opts, transformed, kernel_alpha, full_grid);
    if (val->parsed()) return cmd_validate(val_opts);
    if (samp->parsed()) return cmd_sample(samp_opts, as_histogram);
  } catch (const dimension_error& e) {
    std::cerr << "dimension error: " << e.what() << '\n';
    return 3;
  } catch (const capability_error& e) {
    std::cerr << "capability error: " << e.what() << '\n';
    return 4;
  } catch (const quality_error& e) {
    std::cerr << "quality gate: " << e.what() << '\n';
    return 5;
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
