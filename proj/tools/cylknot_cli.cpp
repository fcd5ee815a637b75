#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "cylknot/cylknot.hpp"

namespace ck = cylknot;
using ck::json;

namespace {

constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

void print_matrix(std::ostream& out, const std::string& title, const ck::IntMatrix& m) {
  out << title << " (" << m.order() << "x" << m.order() << ")\n";
  for (std::size_t i = 0; i < m.order(); ++i) {
    out << "  ";
    for (std::size_t j = 0; j < m.order(); ++j) out << std::setw(3) << m(i, j);
    out << "\n";
  }
}

void print_report(std::ostream& out, const ck::InvariantReport& r) {
  out << std::setprecision(12);
  out << "det P        " << r.det_P.str() << "\n";
  out << "inv          " << r.invariant << "\n";
  out << "inv mirror   " << r.invariant_mirror << "\n";
  out << "invn         " << r.invariant_n << "\n";
  out << "invn mirror  " << r.invariant_n_mirror << "\n";
  out << "rings/line  ";
  for (auto c : r.ring_count_per_line) out << ' ' << c;
  out << "\ncond(I-R)    " << r.condition_number << "\n";
}

std::string describe(const ck::KnottabilityVerdict& v) {
  std::string s(ck::to_string(v.verdict));
  if (!v.subset.empty()) {
    s += " {";
    for (std::size_t k = 0; k < v.subset.size(); ++k) s += (k ? "," : "") + std::to_string(v.subset[k]);
    s += "}";
  }
  if (!v.name.empty()) s += " " + v.name;
  return s;
}

void print_witness(std::ostream& out, const ck::ContainmentWitness& w) {
  out << "rows";
  for (auto i : ck::witness_rows(w)) out << ' ' << i;
  out << "\nswitch";
  for (auto s : w.switch_signs) out << ' ' << s;
  out << "\n";
}

ck::SeidelMatrix load_seidel(const std::string& path) {
  return ck::SeidelMatrix(ck::parse_matrix(ck::read_text_file(path)));
}

/// A catalog name or a matrix file.
ck::SeidelMatrix resolve_target(const std::string& spec) {
  if (std::filesystem::exists(spec)) return load_seidel(spec);
  return ck::find_named(spec).seidel();
}

int run_analyze(const std::string& path, const std::string& prefix, bool as_json) {
  const auto c = ck::load_configuration(path);
  const auto p = ck::chirality_matrix(c);
  const auto r = ck::ring_matrix(c);
  std::optional<ck::SpiralityMatrix> s;
  try {
    s = ck::spirality_matrix(c);
  } catch (const ck::Error& e) {
    if (e.kind() != ck::ErrorKind::OrthogonalPair) throw;
  }
  std::optional<ck::InvariantReport> rep;
  std::string singular;
  try {
    rep = ck::invariant_report(p, r);
  } catch (const ck::Error& e) {
    singular = e.what();
  }
  const auto verdict = ck::knottability_filter(c);
  if (as_json) {
    json j{{"label", c.label}, {"P", ck::to_json(p.matrix())}, {"R", ck::to_json(r.matrix())},
           {"verdict", describe(verdict)}};
    if (s) j["S"] = ck::to_json(s->matrix());
    if (rep) j["report"] = ck::to_json(*rep);
    else j["report_error"] = singular;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << c.label << (c.label.empty() ? "" : "\n");
    print_matrix(std::cout, "P", p.matrix());
    print_matrix(std::cout, "R", r.matrix());
    if (s) print_matrix(std::cout, "S", s->matrix());
    else std::cout << "S undefined: orthogonal axes\n";
    if (rep) print_report(std::cout, *rep);
    else std::cout << singular << "\n";
    std::cout << "verdict      " << describe(verdict) << "\n";
  }
  if (!prefix.empty()) {
    ck::write_text_file(prefix + ".P.txt", ck::format_matrix(p.matrix()));
    ck::write_text_file(prefix + ".R.txt", ck::format_matrix(r.matrix()));
    if (s) ck::write_text_file(prefix + ".S.txt", ck::format_matrix(s->matrix()));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mutually touching infinite cylinders: topology matrices, invariants, solver, census"};
  app.require_subcommand(1);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "P, R, S matrices, invariants and knottability of a configuration");
  std::string analyze_path, analyze_prefix;
  bool analyze_json = false;
  analyze->add_option("config", analyze_path, "configuration document (JSON)")->required()->check(CLI::ExistingFile);
  analyze->add_option("--write-matrices", analyze_prefix, "write PREFIX.P.txt, PREFIX.R.txt, PREFIX.S.txt");
  analyze->add_flag("--json", analyze_json, "machine-readable output");

  // solve
  auto* solve = app.add_subcommand("solve", "find a configuration of mutually tangent cylinders");
  ck::SolveProblem pb;
  std::string profile = "free_round", target, warm, out_path, report_path;
  std::optional<double> aspect;
  solve->add_option("-n,--n", pb.n, "number of cylinders")->check(CLI::Range(2, 64));
  solve->add_option("--profile", profile, "equal_round | free_round | equal_elliptic | free_elliptic")
      ->check(CLI::IsMember({"equal_round", "free_round", "equal_elliptic", "free_elliptic"}));
  solve->add_option("--aspect-ratio", aspect, "fixed b/a for equal_elliptic")->check(CLI::Range(1e-6, 1.0));
  solve->add_option("--seed", pb.seed, "random seed");
  solve->add_option("--restarts", pb.max_restarts, "restart budget")->check(CLI::PositiveNumber);
  solve->add_option("--tolerance", pb.tolerance, "max |residual| relative to scale")->check(CLI::PositiveNumber);
  solve->add_option("--max-iterations", pb.max_iterations, "iterations per restart")->check(CLI::PositiveNumber);
  solve->add_option("--box", pb.box_half_side, "half side of the random start square (0: default)")
      ->check(CLI::NonNegativeNumber);
  solve->add_option("--threads", pb.threads, "worker threads (0: all cores)");
  solve->add_option("--target", target, "target chirality matrix: catalog name or matrix file; omit for free signs");
  solve->add_option("--warm-start", warm, "start from this configuration document")->check(CLI::ExistingFile);
  solve->add_option("--warm-noise", pb.warm_noise, "uniform perturbation of the warm start")
      ->check(CLI::NonNegativeNumber);
  solve->add_option("-o,--out", out_path, "write the solution as a configuration document");
  solve->add_option("--report", report_path, "write P, R and invariants as JSON");

  // census
  auto* census = app.add_subcommand("census", "random n-cross census of one chirality determinant");
  ck::CensusOptions copt;
  std::string census_out;
  census->add_option("-n,--n", copt.n, "lines per configuration")->check(CLI::Range(3, 12));
  census->add_option("--trials", copt.trials, "accepted configurations to collect")->check(CLI::PositiveNumber);
  census->add_option("--det", copt.det_target, "determinant to accept");
  census->add_option("--seed", copt.seed, "random seed");
  census->add_option("--box", copt.box_half_side, "puncture square half side")->check(CLI::PositiveNumber);
  census->add_option("--max-samples", copt.max_samples, "sampling cap (0: 5000 per trial)");
  census->add_option("-o,--out", census_out, "write the table here instead of stdout");

  // check
  auto* check = app.add_subcommand("check", "submatrix containment up to switching and permutation");
  std::string check_path, check_target;
  bool k5_rank19 = false, check_all = false;
  check->add_option("matrix", check_path, "matrix file")->required()->check(CLI::ExistingFile);
  check->add_option("--target", check_target, "catalog name or matrix file");
  check->add_flag("--k5-rank19", k5_rank19, "Ramsey search for a K5 pattern (order >= 19)");
  check->add_flag("--all", check_all, "list every containing row subset");

  // catalog
  auto* cat = app.add_subcommand("catalog", "list the named matrices or print one");
  std::string cat_name;
  cat->add_option("name", cat_name, "entry to print in matrix text format");

  // export-mesh
  auto* mesh = app.add_subcommand("export-mesh", "OBJ prism mesh of each cylinder");
  std::string mesh_in, mesh_out;
  double mesh_length = 10.0;
  int segments = 32;
  mesh->add_option("config", mesh_in, "configuration document")->required()->check(CLI::ExistingFile);
  mesh->add_option("--length", mesh_length, "cylinder length along the axis")->check(CLI::PositiveNumber);
  mesh->add_option("--segments", segments, "cross-section samples (>= 3)")->check(CLI::Range(3, 1 << 20));
  mesh->add_option("-o,--out", mesh_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*analyze) return run_analyze(analyze_path, analyze_prefix, analyze_json);

    if (*solve) {
      pb.profile = ck::parse_profile(profile);
      pb.aspect_ratio = aspect;
      if (!target.empty()) pb.target = resolve_target(target);
      if (!warm.empty()) pb.warm_start = ck::load_configuration(warm);
      if (pb.n == 0) pb.n = pb.target ? pb.target->order() : pb.warm_start ? pb.warm_start->size() : 0;
      if (pb.n == 0) throw CLI::ValidationError("--n", "required without --target or --warm-start");
      ck::SolveResult res;
      try {
        res = ck::solve(pb);
      } catch (const ck::NoConvergence& e) {
        std::cerr << e.what() << "\n";
        if (!out_path.empty() && e.best().size()) ck::write_text_file(out_path, ck::dump_configuration(e.best()));
        return kDomainError;
      }
      std::cout << res.config.label << "\nrestart " << res.restart << ", " << res.iterations
                << " iterations, residual " << std::setprecision(3) << res.residual_norm << "\n";
      std::cout << "gauge: " << res.gauge << "\n";
      print_matrix(std::cout, "P", res.realized_P.matrix());
      print_matrix(std::cout, "R", res.realized_R.matrix());
      if (res.report) print_report(std::cout, *res.report);
      if (!out_path.empty()) ck::write_text_file(out_path, ck::dump_configuration(res.config));
      if (!report_path.empty()) {
        json j{{"P", ck::to_json(res.realized_P.matrix())},
               {"R", ck::to_json(res.realized_R.matrix())},
               {"residual_norm", res.residual_norm},
               {"restart", res.restart},
               {"gauge", res.gauge}};
        if (res.report) j["report"] = ck::to_json(*res.report);
        ck::write_text_file(report_path, j.dump(2) + "\n");
      }
      return 0;
    }

    if (*census) {
      const auto res = ck::census_run(copt);
      if (census_out.empty()) {
        ck::write_census_tsv(std::cout, res);
      } else {
        std::ofstream f(census_out);
        if (!f) throw ck::Error(ck::ErrorKind::InvalidArgument, "cannot write '" + census_out + "'");
        ck::write_census_tsv(f, res);
      }
      return 0;
    }

    if (*check) {
      const auto m = load_seidel(check_path);
      if (k5_rank19) {
        if (m.order() < 19) throw ck::Error(ck::ErrorKind::OrderError, "--k5-rank19 needs order >= 19");
        const auto w = ck::find_k5(m);
        std::cout << (w.sign > 0 ? "K5" : "-K5") << " contained\n";
        print_witness(std::cout, w.witness);
        return 0;
      }
      if (check_target.empty()) throw CLI::RequiredError("--target or --k5-rank19");
      const auto t = resolve_target(check_target);
      if (check_all) {
        const auto all = ck::all_submatrices(m, t);
        std::cout << all.size() << " containing subsets\n";
        for (const auto& w : all) print_witness(std::cout, w);
        return 0;
      }
      if (auto w = ck::contains_submatrix(m, t)) {
        std::cout << "contained\n";
        print_witness(std::cout, *w);
      } else {
        std::cout << "not contained\n";
      }
      return 0;
    }

    if (*cat) {
      if (cat_name.empty()) {
        for (const auto& e : ck::catalog())
          std::cout << std::left << std::setw(15) << e.name << std::setw(4) << e.matrix.order() << e.source << "\n";
      } else {
        std::cout << ck::format_matrix(ck::find_named(cat_name).matrix);
      }
      return 0;
    }

    if (*mesh) {
      const auto c = ck::load_configuration(mesh_in);
      if (mesh_out.empty()) {
        ck::write_obj(std::cout, c, mesh_length, segments);
      } else {
        std::ofstream f(mesh_out);
        if (!f) throw ck::Error(ck::ErrorKind::InvalidArgument, "cannot write '" + mesh_out + "'");
        ck::write_obj(f, c, mesh_length, segments);
      }
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return kUsageError;
  } catch (const ck::Error& e) {
    std::cerr << e.what();
    if (!e.indices().empty()) {
      std::cerr << " [";
      for (std::size_t k = 0; k < e.indices().size(); ++k) std::cerr << (k ? " " : "") << e.indices()[k];
      std::cerr << "]";
    }
    std::cerr << "\n";
    return kDomainError;
  }
  return 0;
}
