#include "hypoly/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <random>
#include <sstream>

#include "hypoly/catalog.hpp"
#include "hypoly/deform.hpp"
#include "hypoly/error.hpp"
#include "hypoly/io.hpp"
#include "hypoly/quantum.hpp"
#include "hypoly/volume.hpp"

namespace hypoly {

const char* kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::Check: return "check";
    case ExperimentKind::Volume: return "volume";
    case ExperimentKind::Deform: return "deform";
    case ExperimentKind::Stoker: return "stoker";
    case ExperimentKind::VolConj: return "volconj";
    case ExperimentKind::Yokota: return "yokota";
    case ExperimentKind::Catalog: return "catalog";
  }
  return "unknown";
}

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string join(const std::vector<int>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? std::string(1, sep) : "") + std::to_string(v[i]);
  return s;
}

// CSV body plus trailing "# key value" lines; both must be deterministic.
struct Table {
  std::string columns;
  std::ostringstream body;
  std::vector<std::pair<std::string, std::string>> footer;

  void note(const std::string& k, const std::string& v) { footer.emplace_back(k, v); }
};

bool on_catalog(const std::string& ref) { return ref.rfind("catalog:", 0) == 0; }

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> cat = catalog_build();
  return cat;
}

PlanarGraph load_input_graph(const std::string& ref) {
  if (on_catalog(ref)) return load_input(ref).graph();
  return load_graph(ref);
}

FamilyKind parse_family(const std::string& s) {
  if (s == family_name(FamilyKind::ScaleOneEdge)) return FamilyKind::ScaleOneEdge;
  if (s == family_name(FamilyKind::AddDiagonal)) return FamilyKind::AddDiagonal;
  throw Error(Errc::Config, "unknown family '" + s + "' (expected scale-one-edge or add-diagonal)");
}

YokotaOptions yokota_options(const ExperimentConfig& cfg, const PlanarGraph& g) {
  YokotaOptions o;
  if (cfg.normalization == "bare") {
    o.normalization = YokotaNormalization::Bare;
  } else if (cfg.normalization == "unitary") {
    o.normalization = YokotaNormalization::Unitary;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (g.degree(v) > 3) o.splitting = VertexSplitting::quantum_dimension();
  } else {
    throw Error(Errc::Config, "unknown normalization '" + cfg.normalization + "' (expected bare or unitary)");
  }
  return o;
}

std::vector<int> r_values(const ExperimentConfig& cfg) {
  std::vector<int> rs;
  for (int r = cfg.r_min; r <= cfg.r_max; r += cfg.r_step) rs.push_back(r);
  return rs;
}

void run_check(const ExperimentConfig& cfg, Table& t, std::ostream& log) {
  t.columns = "input,status,steinitz,max_psi,min_strict_delta,violations,bindings";
  for (const auto& in : cfg.inputs) {
    const Realization r = load_input(in);
    const SkeletonReport rep = check_membership(r);
    const SteinitzResult st = steinitz_check(r.graph());
    t.body << in << ',' << status_name(rep.status) << ',' << (st.ok ? 1 : 0) << ',' << num(rep.max_psi) << ','
           << num(rep.min_strict_delta) << ',' << rep.violations.size() << ',' << rep.bindings.size() << '\n';
    log << in << ": " << status_name(rep.status);
    if (!st.ok) log << " (not polyhedral: " << st.certificate << ")";
    log << '\n';
  }
}

void run_volume(const ExperimentConfig& cfg, Table& t, std::ostream& log) {
  t.columns = "input,method,value,error_bound,samples";
  for (const auto& in : cfg.inputs) {
    const Realization r = load_input(in);
    QuadratureOptions qo;
    qo.tolerance = cfg.tolerance;
    for (const VolumeEstimate& v : {volume_quadrature(r, qo), volume_mc(r, cfg.samples, cfg.seed, cfg.threads)}) {
      t.body << in << ',' << method_name(v.method) << ',' << num(v.value) << ',' << num(v.error_bound) << ','
             << v.samples << '\n';
      log << in << ' ' << method_name(v.method) << ": " << num(v.value) << " +- " << num(v.error_bound) << '\n';
    }
  }
}

void run_deform(const ExperimentConfig& cfg, Table& t, std::ostream& log) {
  const Realization base = load_input(cfg.inputs.at(0));
  DeformationFamily fam{base, parse_family(cfg.family), cfg.edge, cfg.t_begin, cfg.t_end};
  if (fam.kind == FamilyKind::AddDiagonal) {
    if (!base.graph().marked_edge()) throw Error(Errc::Config, "add-diagonal needs a polyhedron with a marked edge");
    fam.edge = *base.graph().marked_edge();
  }
  if (fam.edge < 0 || fam.edge >= base.graph().edge_count())
    throw Error(Errc::Config, "edge " + std::to_string(fam.edge) + " out of range");
  SolveOptions so;
  const SchlafliPathRecord path = run_family(fam, cfg.steps, so);
  const bool diag = fam.kind == FamilyKind::AddDiagonal;
  const double depth = diag ? normal_form_depth(base) : 0.0;
  t.columns = "i,t,theta,length,rate,schlafli_dv,quadrature_volume";
  if (diag) t.columns += ",alpha,formula";
  QuadratureOptions qo;
  qo.tolerance = cfg.tolerance;
  std::vector<double> vol(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) {
    vol[i] = volume_quadrature(path.realizations[i], qo).value;
    const std::vector<double> ti(path.t.begin(), path.t.begin() + i + 1), ri(path.rate.begin(), path.rate.begin() + i + 1);
    t.body << i << ',' << num(path.t[i]) << ',' << num(path.angles[i](fam.edge)) << ','
           << num(path.lengths[i](fam.edge)) << ',' << num(path.rate[i]) << ',' << num(integrate_rate(ti, ri)) << ','
           << num(vol[i]);
    if (diag) {
      const BoundaryNormalForm nf = boundary_normal_form(path.realizations[i], depth);
      t.body << ',' << num(nf.alpha) << ',' << num(nf.formula);
    }
    t.body << '\n';
  }
  t.note("family", family_name(fam.kind));
  t.note("schlafli_dv", num(path.volume_difference));
  t.note("quadrature_dv", num(vol.back() - vol.front()));
  log << family_name(fam.kind) << " over [" << num(path.t.front()) << ", " << num(path.t.back())
      << "]: schlafli dV = " << num(path.volume_difference) << ", quadrature dV = " << num(vol.back() - vol.front())
      << '\n';
}

void run_stoker(const ExperimentConfig& cfg, Table& t, std::ostream& log) {
  const Realization ref = load_input(cfg.inputs.at(0));
  const AngleVector target = signed_angles(ref);
  const GaugeChart chart = default_chart(ref.graph());
  std::vector<Realization> starts;
  if (cfg.inputs.size() > 1) {
    starts = {ref, load_input(cfg.inputs[1])};
  } else {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 2; ++k) {
      AngleVector a = target;
      for (int e = 0; e < a.size(); ++e) a(e) += cfg.perturbation * u(rng);
      starts.push_back(continue_to_angles(ref, a, chart).realization);
    }
  }
  const Realization s1 = continue_to_angles(starts[0], target, chart).realization;
  const Realization s2 = continue_to_angles(starts[1], target, chart).realization;
  const StokerReport rep = stoker_compare(s1, s2, 1e-9, cfg.tolerance);
  const EdgeLengthVector l1 = edge_lengths(s1), l2 = edge_lengths(s2);
  t.columns = "quantity,index,first,second,difference";
  for (int e = 0; e < l1.size(); ++e)
    t.body << "edge_length," << e << ',' << num(l1(e)) << ',' << num(l2(e)) << ',' << num(rep.edge_length_diff(e)) << '\n';
  const auto q1 = solve_vertices(s1), q2 = solve_vertices(s2);
  for (int f = 0; f < s1.graph().face_count(); ++f) {
    const auto& vs = s1.graph().face(f).vertices;
    double per1 = 0.0, per2 = 0.0;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const int a = vs[i], b = vs[(i + 1) % vs.size()];
      per1 += hyp_distance(q1[a], q1[b]);
      per2 += hyp_distance(q2[a], q2[b]);
    }
    t.body << "face_perimeter," << f << ',' << num(per1) << ',' << num(per2) << ',' << num(rep.face_diagonal_diff[f])
           << '\n';
  }
  t.note("max_edge_diff", num(rep.max_edge_diff));
  t.note("max_diagonal_diff", num(rep.max_diagonal_diff));
  t.note("all_faces_congruent", rep.all_faces_congruent ? "1" : "0");
  t.note("max_vertex_displacement", num(rep.max_vertex_displacement));
  t.note("isometric", rep.isometric ? "1" : "0");
  log << "max edge diff " << num(rep.max_edge_diff) << ", max diagonal diff " << num(rep.max_diagonal_diff)
      << ", faces congruent " << (rep.all_faces_congruent ? "yes" : "no") << ", isometric "
      << (rep.isometric ? "yes" : "no") << '\n';
}

void run_volconj(const ExperimentConfig& cfg, Table& t, std::ostream& log) {
  const Realization r = load_input(cfg.inputs.at(0));
  const PlanarGraph& g = r.graph();
  const AngleVector angles = angle_vector(r);
  const YokotaOptions opt = yokota_options(cfg, g);
  const std::vector<int> rs = r_values(cfg);
  SlopeSeries s;
  if (cfg.fixed_colors) {
    const Coloring fixed = color_sequence(g, angles, rs.front());
    s = slope_series(g, rs, [&](int) { return fixed; }, opt);
  } else {
    s = volconj_slopes(g, angles, rs, opt);
  }
  QuadratureOptions qo;
  qo.tolerance = cfg.tolerance;
  const double vol = volume_quadrature(r, qo).value;
  t.columns = "r,colors,log_y,slope,zero";
  for (const auto& p : s.points)
    t.body << p.r << ',' << join(p.colors, ' ') << ',' << num(p.log_y) << ',' << num(p.slope) << ','
           << (p.zero ? 1 : 0) << '\n';
  t.note("normalization", cfg.normalization);
  t.note("fixed_colors", cfg.fixed_colors ? "1" : "0");
  t.note("extrapolated", num(s.extrapolated));
  t.note("fit_coefficient", num(s.fit_coefficient));
  t.note("fit_residual", num(s.fit_residual));
  t.note("fit_points", std::to_string(s.fit_points));
  t.note("angle_constant", num(s.angle_constant));
  t.note("volume_quadrature", num(vol));
  t.note("relative_gap", num(std::abs(s.extrapolated - vol) / vol));
  for (const auto& w : s.warnings) {
    t.note("warning", w);
    log << "warning: " << w << '\n';
  }
  log << "extrapolated slope " << num(s.extrapolated) << " (rms residual " << num(s.fit_residual)
      << "), quadrature volume " << num(vol) << '\n';
}

void run_yokota(const ExperimentConfig& cfg, Table& t, std::ostream& log) {
  const PlanarGraph g = load_input_graph(cfg.inputs.at(0));
  const YokotaOptions opt = yokota_options(cfg, g);
  const LogComplex y = yokota_log(g, cfg.colors, cfg.r, opt);
  t.columns = "r,colors,log_abs,phase,zero,value";
  const bool representable = !y.zero && y.log_abs < 700.0;
  const std::string value = y.zero ? "0" : representable ? num(std::exp(y.log_abs)) : "inf";
  t.body << cfg.r << ',' << join(cfg.colors, ' ') << ',' << num(y.zero ? 0.0 : y.log_abs) << ',' << num(y.phase) << ','
         << (y.zero ? 1 : 0) << ',' << value << '\n';
  if (y.zero)
    log << "Y = 0\n";
  else
    log << "log|Y| = " << num(y.log_abs) << ", arg Y = " << num(y.phase) << ", Y = " << value << '\n';
}

void run_catalog(const ExperimentConfig&, const std::filesystem::path& dir, Table& t, std::ostream& log,
                 std::vector<std::filesystem::path>& files) {
  t.columns = "name,status,vertices,edges,faces,symmetry_count,volume";
  for (const auto& e : catalog()) {
    const Realization& r = e.realization;
    t.body << e.name << ',' << status_name(e.expected_status) << ',' << r.graph().vertex_count() << ','
           << r.graph().edge_count() << ',' << r.graph().face_count() << ',' << e.symmetry_count << ','
           << num(volume_quadrature(r).value) << '\n';
    const auto p = dir / "catalog" / (e.name + ".json");
    save_realization(p, r);
    files.push_back(p);
    log << e.name << ": " << status_name(e.expected_status) << ", " << e.provenance << '\n';
  }
}

int exit_code_for(Errc c) { return c == Errc::Config || c == Errc::Parse ? 1 : 2; }

}  // namespace

Realization load_input(const std::string& ref) {
  if (on_catalog(ref)) return catalog_find(catalog(), ref.substr(8)).realization;
  return load_realization(ref);
}

std::uint64_t config_hash(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "kind=" << kind_name(c.kind) << "\n";
  for (const auto& in : c.inputs) os << "input=" << in << "\n";
  os << "seed=" << c.seed << "\ntolerance=" << num(c.tolerance) << "\nsteps=" << c.steps << "\nr_min=" << c.r_min
     << "\nr_max=" << c.r_max << "\nr_step=" << c.r_step << "\nthreads=" << c.threads << "\nsamples=" << c.samples
     << "\nfamily=" << c.family << "\nedge=" << c.edge << "\nt_begin=" << num(c.t_begin) << "\nt_end=" << num(c.t_end)
     << "\nperturbation=" << num(c.perturbation) << "\ncolors=" << join(c.colors, ' ') << "\nr=" << c.r
     << "\nnormalization=" << c.normalization << "\nfixed_colors=" << c.fixed_colors << "\n";
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : os.str()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void validate_config(const ExperimentConfig& c) {
  auto fail = [](const std::string& m) { throw Error(Errc::Config, m); };
  if (c.kind != ExperimentKind::Catalog && c.inputs.empty()) fail(std::string(kind_name(c.kind)) + " needs an input");
  for (const auto& in : c.inputs)
    if (!on_catalog(in) && !std::filesystem::exists(in)) fail("input file not found: " + in);
  if (!(c.tolerance > 0.0)) fail("tolerance must be positive");
  if (c.threads < 1) fail("threads must be at least 1");
  if ((c.kind == ExperimentKind::VolConj || c.kind == ExperimentKind::Yokota) && c.normalization != "bare" &&
      c.normalization != "unitary")
    fail("unknown normalization '" + c.normalization + "' (expected bare or unitary)");
  switch (c.kind) {
    case ExperimentKind::Volume:
      if (c.samples < 1) fail("samples must be positive");
      break;
    case ExperimentKind::Deform:
      if (c.steps < 1) fail("steps must be at least 1 (got " + std::to_string(c.steps) + ")");
      if (!(c.t_begin < c.t_end)) fail("t_begin must be below t_end");
      parse_family(c.family);
      break;
    case ExperimentKind::Stoker:
      if (!(c.perturbation > 0.0)) fail("perturbation must be positive");
      break;
    case ExperimentKind::VolConj:
      if (c.r_step < 1) fail("r_step must be positive");
      if (c.r_max < c.r_min) fail("r_max is below r_min");
      for (int r = c.r_min; r <= c.r_max; r += c.r_step) {
        if (r % 2 == 0) fail("r = " + std::to_string(r) + " is even; r must be odd");
        if (r < 5) fail("r = " + std::to_string(r) + " is below 5");
      }
      break;
    case ExperimentKind::Yokota:
      if (c.r % 2 == 0 || c.r < 5) fail("r = " + std::to_string(c.r) + " must be odd and at least 5");
      if (c.colors.empty()) fail("yokota needs a coloring");
      break;
    default: break;
  }
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, std::ostream& log) {
  ExperimentResult res;
  const auto start = std::chrono::steady_clock::now();
  std::filesystem::path dir = cfg.out_dir;
  if (const char* env = std::getenv("HYPOLY_OUT_DIR"); env && *env) dir = env;
  Table t;
  try {
    validate_config(cfg);
    switch (cfg.kind) {
      case ExperimentKind::Check: run_check(cfg, t, log); break;
      case ExperimentKind::Volume: run_volume(cfg, t, log); break;
      case ExperimentKind::Deform: run_deform(cfg, t, log); break;
      case ExperimentKind::Stoker: run_stoker(cfg, t, log); break;
      case ExperimentKind::VolConj: run_volconj(cfg, t, log); break;
      case ExperimentKind::Yokota: run_yokota(cfg, t, log); break;
      case ExperimentKind::Catalog: run_catalog(cfg, dir, t, log, res.files); break;
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream os;
    char hash[24];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash(cfg)));
    os << "# hypoly " << kVersion << "\n# experiment " << kind_name(cfg.kind) << "\n# config_hash " << hash
       << "\n# seed " << cfg.seed << "\n# wall_time_s " << num(wall) << "\n"
       << t.columns << "\n"
       << t.body.str();
    for (const auto& [k, v] : t.footer) os << "# " << k << ' ' << v << '\n';
    const auto p = dir / (std::string(kind_name(cfg.kind)) + ".csv");
    write_file(p, os.str());
    res.files.insert(res.files.begin(), p);
    res.message = "wrote " + p.string();
  } catch (const Error& e) {
    res.exit_code = exit_code_for(e.code());
    res.message = e.what();
  } catch (const std::exception& e) {
    res.exit_code = 2;
    res.message = e.what();
  }
  log << res.message << '\n';
  return res;
}

}  // namespace hypoly
