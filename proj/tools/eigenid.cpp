#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eigenid/identity.hpp"
#include "eigenid/instance_gen.hpp"
#include "eigenid/matrix_io.hpp"
#include "eigenid/report.hpp"

namespace {

using namespace eigenid;

struct CheckArgs {
  std::string matrix_path;
  std::string cluster = "all";
  std::string subsets = "all";
  std::string format = "json";
  std::string out_path;
  double cluster_tol = 1e-8;
  double eig_tol = 1e-12;
  int max_sweeps = 30;
  double hermitian_tol = 1e-10;
  double fail_above = 1e-6;
  bool force = false;
};

struct GenArgs {
  std::string spectrum;
  std::uint64_t seed = 0;
  std::string out_path;
};

struct Lemma1Args {
  std::string matrix_path;
  int split = 0;
  double unitary_tol = 1e-10;
};

std::vector<IndexSet> parse_subset_list(const std::string& text) {
  std::vector<IndexSet> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t semi = std::min(text.find(';', pos), text.size());
    const std::string part = text.substr(pos, semi - pos);
    std::vector<int> members;
    std::size_t p = 0;
    while (p <= part.size()) {
      const std::size_t comma = std::min(part.find(',', p), part.size());
      const std::string tok = part.substr(p, comma - p);
      try {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size()) throw ParseError("");
        members.push_back(v);
      } catch (const std::exception&) {
        throw ParseError("subsets: cannot parse index \"" + tok + "\"");
      }
      if (comma == part.size()) break;
      p = comma + 1;
    }
    try {
      out.push_back(IndexSet(std::move(members)));
    } catch (const Error& e) {
      throw ParseError(std::string("subsets: ") + e.what());
    }
    if (semi == text.size()) break;
    pos = semi + 1;
  }
  return out;
}

void write_text_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ParseError("cannot open " + out_path + " for writing");
  out << text;
  if (!out) throw ParseError("failed writing " + out_path);
}

int cmd_check(const CheckArgs& args) {
  const CMatrix raw = read_matrix_file(args.matrix_path);
  const HermitianMatrix a = hermitian_from_entries(raw, args.hermitian_tol);

  CheckOptions opts;
  opts.tols.hermitian_tol = args.hermitian_tol;
  opts.tols.eig_tol = args.eig_tol;
  opts.tols.max_sweeps = args.max_sweeps;
  opts.tols.cluster_tol = args.cluster_tol;
  opts.tols.fail_above = args.fail_above;
  opts.force = args.force;
  if (args.cluster != "all") {
    try {
      std::size_t used = 0;
      const int i = std::stoi(args.cluster, &used);
      if (used != args.cluster.size()) throw ParseError("");
      opts.clusters = {i};
    } catch (const std::exception&) {
      throw ParseError("--cluster expects \"all\" or a 1-based cluster index");
    }
  }
  if (args.subsets != "all") opts.subsets = parse_subset_list(args.subsets);

  const Report report = run_check(a, opts);
  if (report.gap_margin < 10.0)
    std::cerr << "warning: cluster gap margin " << report.gap_margin
              << " is below 10; the multiplicity assignment may be fragile\n";

  if (args.format == "csv")
    write_text_output(args.out_path, report_to_csv(report));
  else
    write_text_output(args.out_path, report_to_json(report));
  return report.max_rel_err <= args.fail_above ? 0 : 1;
}

int cmd_gen(const GenArgs& args) {
  const SpectrumSpec spec = parse_spectrum(args.spectrum);
  const HermitianMatrix a = hermitian_with_spectrum(spec, args.seed);
  if (args.out_path.empty())
    write_matrix_json(std::cout, a.entries());
  else
    write_matrix_file(args.out_path, a.entries());
  return 0;
}

int cmd_lemma1(const Lemma1Args& args) {
  const CMatrix p = read_matrix_file(args.matrix_path);
  const auto [top, bottom] = block_det_squares(p, args.split, args.unitary_tol);
  const double diff = std::abs(top - bottom);
  std::cout.precision(17);
  std::cout << "|det P11|^2 = " << top << "\n"
            << "|det P22|^2 = " << bottom << "\n"
            << "difference  = " << diff << "\n";
  const bool ok = diff <= 1e-8;
  std::cout << (ok ? "PASS" : "FAIL") << " (threshold 1e-8)\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Determinants of eigenvector submatrices from eigenvalues alone"};
  app.require_subcommand(1);

  CheckArgs check_args;
  CLI::App* check = app.add_subcommand(
      "check", "Compare the spectral formula against the eigenvector determinants");
  check->add_option("--matrix", check_args.matrix_path, "Hermitian matrix JSON file")
      ->required();
  check->add_option("--cluster", check_args.cluster, "\"all\" or a 1-based cluster index");
  check->add_option("--subsets", check_args.subsets,
                    "\"all\" or explicit subsets like \"1,2;1,3\"");
  check->add_option("--cluster-tol", check_args.cluster_tol, "eigenvalue clustering tolerance");
  check->add_option("--eig-tol", check_args.eig_tol, "eigensolver convergence tolerance");
  check->add_option("--max-sweeps", check_args.max_sweeps, "eigensolver sweep limit");
  check->add_option("--hermitian-tol", check_args.hermitian_tol,
                    "allowed self-adjointness defect of the input");
  check->add_option("--fail-above", check_args.fail_above,
                    "exit 1 when the max relative error exceeds this");
  check->add_option("--format", check_args.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  check->add_option("--out", check_args.out_path, "write the report here instead of stdout");
  check->add_flag("--force", check_args.force, "run even when a sweep needs > 1e6 subsets");

  GenArgs gen_args;
  CLI::App* gen =
      app.add_subcommand("gen", "Generate a Hermitian matrix with a prescribed spectrum");
  gen->add_option("--spectrum", gen_args.spectrum, "spectrum as \"value:multiplicity,...\"")
      ->required();
  gen->add_option("--seed", gen_args.seed, "64-bit generator seed");
  gen->add_option("--out", gen_args.out_path, "output path (stdout when omitted)");

  Lemma1Args lemma1_args;
  CLI::App* lemma1 = app.add_subcommand(
      "lemma1", "Check the equal-block-determinant property of a unitary matrix");
  lemma1->add_option("--matrix", lemma1_args.matrix_path, "unitary matrix JSON file")
      ->required();
  lemma1->add_option("--split", lemma1_args.split, "order of the top-left block")->required();
  lemma1->add_option("--unitary-tol", lemma1_args.unitary_tol, "allowed unitarity defect");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return cmd_check(check_args);
    if (gen->parsed()) return cmd_gen(gen_args);
    if (lemma1->parsed()) return cmd_lemma1(lemma1_args);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NotHermitian& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NotUnitary& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NoConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const SubsetSizeMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IndexOutOfRange& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NegativeRhs& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const Overflow& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
