// Copyright 2026 The Fermionant Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line entry point: eval, verify, reduce, gadget.
//
// stdout depends only on (command, seed); wall time goes to stderr.
// Exit codes: 0 success, 1 a check failed, 2 bad input or a refused
// computation, CLI11's own codes for usage errors.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ferm/config.hpp"
#include "ferm/cycle_covers.hpp"
#include "ferm/dense.hpp"
#include "ferm/digraph.hpp"
#include "ferm/errors.hpp"
#include "ferm/gadgets.hpp"
#include "ferm/interpolation.hpp"
#include "ferm/matrix.hpp"
#include "ferm/suites.hpp"
#include "ferm/young.hpp"

namespace {

using ferm::Rational;

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ferm::FormatError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int eval_command(const std::string& what, const std::string& matrix_path, const std::string& k_text,
                 const std::string& diagram, const std::string& convention) {
  const ferm::RationalMatrix a = ferm::read_matrix_file(matrix_path);
  if (what == "ferm") {
    if (k_text.empty()) throw ferm::InvalidArgument("eval ferm needs --k");
    if (convention.empty()) throw ferm::InvalidArgument("eval ferm needs --convention plain|signed");
    const Rational k = Rational::parse(k_text);
    Rational v = ferm::fermionant_dp(ferm::WeightedDigraph::from_matrix(a), k);
    if (convention == "signed" && a.rows() % 2 == 1) v = -v;
    std::cout << v << '\n';
  } else if (what == "imm") {
    if (diagram.empty()) throw ferm::InvalidArgument("eval imm needs --diagram");
    std::cout << ferm::immanant(ferm::parse_diagram(diagram), a) << '\n';
  } else if (what == "ham") {
    std::cout << ferm::hamiltonian(a) << '\n';
  } else if (what == "per") {
    std::cout << ferm::permanent_ryser(a) << '\n';
  } else {
    std::cout << ferm::determinant_bareiss(a) << '\n';
  }
  return 0;
}

int verify_command(const std::string& suite, const ferm::SuiteOptions& options, const std::string& format) {
  const ferm::Report report = ferm::run_suite(suite, options);
  std::cout << "command: verify " << suite << " seed=" << options.seed << '\n';
  std::cout << (format == "lines" ? report.lines() : report.text());
  std::cout << (report.ok() ? "PASS" : "FAIL") << '\n';
  return report.ok() ? 0 : 1;
}

const ferm::GadgetWiring& load_or_search(const std::string& cert_path, const Rational& k,
                                         ferm::GadgetWiring& storage) {
  if (cert_path.empty()) return ferm::certified_iff_wiring(k);
  storage = ferm::wiring_from_json(read_text(cert_path));
  if (storage.kind != "iff") throw ferm::InvalidArgument("certificate " + cert_path + " is not an iff gadget");
  if (storage.k != k)
    throw ferm::InvalidArgument("certificate " + cert_path + " is for k=" + storage.k.str() + ", not k=" + k.str());
  // A short re-certification guards against edited files.
  ferm::CertifyOptions quick;
  quick.weightings = 1;
  quick.max_host = 2;
  quick.keep_rows = false;
  if (!ferm::certify_iff(storage, quick).passed())
    throw ferm::CertificationFailure("certificate " + cert_path + " fails the iff contract");
  return storage;
}

int reduce_command(const std::string& what, const std::string& matrix_path, const std::string& k_text,
                   const std::string& cert_path) {
  const ferm::RationalMatrix a = ferm::read_matrix_file(matrix_path);
  const Rational k = Rational::parse(k_text);
  ferm::GadgetWiring storage;
  if (what == "ham") {
    if (k.is_zero() || k == 1 || k == -1) {
      // Refuse before any search: the nodes (-k)^l are not distinct.
      ferm::make_plan(ferm::WeightedDigraph::from_matrix(a), k);
    }
    const ferm::GadgetWiring& w = load_or_search(cert_path, k, storage);
    ferm::InterpolationTrace trace;
    const Rational recovered = ferm::hamiltonian_via_fermionant(a, k, w, &trace);
    const Rational direct = ferm::hamiltonian(a);
    std::cout << "k: " << k << '\n';
    std::cout << "replicated sizes:";
    for (int s : trace.sizes) std::cout << ' ' << s;
    std::cout << "\nfermionant values:";
    for (const Rational& v : trace.values) std::cout << ' ' << v;
    std::cout << "\nrecovered: " << recovered << "\ndirect: " << direct << '\n';
    std::cout << (recovered == direct ? "PASS" : "FAIL") << '\n';
    return recovered == direct ? 0 : 1;
  }
  const ferm::GadgetWiring& w = load_or_search(cert_path, k, storage);
  const ferm::ModularReport r = ferm::modular_pipeline(a, k, w);
  std::cout << "k: " << r.k << "\nn: " << r.n << "\nHamiltonian: " << r.hamiltonian << '\n';
  std::cout << "sizes:";
  for (int s : r.sizes) std::cout << ' ' << s;
  std::cout << "\nw*:";
  for (const Rational& v : r.w_star) std::cout << ' ' << v;
  std::cout << "\nomega: " << r.omega << "\nbound: " << r.bound << "\nLambda: " << r.lambda << '\n';
  std::cout << "gamma_i:";
  for (long g : r.gamma_i) std::cout << ' ' << g;
  std::cout << "\ngamma: " << r.gamma << "\neliminated sizes:";
  for (int s : r.eliminated_sizes) std::cout << ' ' << s;
  std::cout << "\nresidues: " << r.lhs_mod << " = " << r.rhs_mod << " (mod Lambda)\n";
  for (const ferm::ModularStage& s : r.stages)
    std::cout << (s.ok ? "PASS" : "FAIL") << " stage " << s.name << ": " << s.detail << '\n';
  std::cout << (r.ok() ? "PASS" : "FAIL") << '\n';
  return r.ok() ? 0 : 1;
}

int gadget_command(const std::string& kind, const std::string& k_text, const std::string& out_path) {
  const Rational k = Rational::parse(k_text);
  ferm::GadgetCertificate cert;
  if (kind == "iff") {
    ferm::SearchLog log;
    const ferm::GadgetWiring w = ferm::search_iff_wiring(k, &log);
    cert = ferm::certify_iff(w);
    std::cout << "candidates: " << log.candidates << "\ntransfer passes: " << log.transfer_passes
              << "\nvariant: " << w.variant.describe() << '\n';
  } else if (kind == "loop") {
    cert = ferm::loop_gadget(k);
  } else {
    cert = ferm::diamond_gadget(k);
  }
  std::cout << "kind: " << kind << "\nk: " << k << "\nclasses checked: " << cert.classes_checked
            << "\nfailures: " << cert.failures << '\n';
  const std::string json = ferm::certificate_to_json(cert);
  if (out_path.empty()) {
    std::cout << json << '\n';
  } else {
    std::ofstream out(out_path);
    if (!out) throw ferm::FormatError("cannot write " + out_path);
    out << json << '\n';
    std::cout << "written: " << out_path << '\n';
  }
  std::cout << (cert.passed() ? "PASS" : "FAIL") << '\n';
  return cert.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact fermionant and immanant evaluation, reductions and verification suites"};
  app.require_subcommand(1);
  int enum_cap = 0;
  app.add_option("--enum-cap", enum_cap, "Largest n for permutation enumeration")->envname("FERM_ENUM_CAP");

  std::string matrix_path, k_text, diagram, convention, cert_path, out_path, kind, what, suite, format = "text";

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a polynomial on a matrix");
  eval->add_option("what", what, "ferm, imm, ham, per or det")
      ->required()
      ->check(CLI::IsMember({"ferm", "imm", "ham", "per", "det"}));
  eval->add_option("--matrix", matrix_path, "Matrix file")->required();
  eval->add_option("--k", k_text, "Rational k (ferm)");
  eval->add_option("--diagram", diagram, "Row lengths, e.g. 4,4,2,1 (imm)");
  eval->add_option("--convention", convention, "plain or signed (ferm, mandatory)")
      ->check(CLI::IsMember({"plain", "signed"}));

  ferm::SuiteOptions options;
  options.jobs = ferm::default_jobs();
  std::string verify_k;
  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "Suite name")->required();
  verify->add_option("--seed", options.seed, "Generator seed")->capture_default_str();
  verify->add_option("--trials", options.trials, "Trials per check (0: suite default)");
  verify->add_option("--k", verify_k, "Restrict to one rational k");
  verify->add_option("--n", options.n, "Restrict to one size");
  verify->add_option("--k1", options.k1, "Two-column suite: first column length");
  verify->add_option("--k2", options.k2, "Two-column suite: second column length");
  verify->add_option("--jobs", options.jobs, "Worker threads")->envname("FERM_JOBS");
  verify->add_option("--format", format, "text or lines")->check(CLI::IsMember({"text", "lines"}));

  CLI::App* reduce = app.add_subcommand("reduce", "Run a reduction");
  reduce->add_option("what", what, "ham or sharp-p")->required()->check(CLI::IsMember({"ham", "sharp-p"}));
  reduce->add_option("--matrix", matrix_path, "Matrix file")->required();
  reduce->add_option("--k", k_text, "Rational k")->required();
  reduce->add_option("--cert", cert_path, "iff certificate to use instead of searching");

  CLI::App* gadget = app.add_subcommand("gadget", "Gadget tools");
  CLI::App* search = gadget->add_subcommand("search", "Search and certify a gadget");
  gadget->require_subcommand(1);
  search->add_option("--kind", kind, "iff, loop or diamond")
      ->required()
      ->check(CLI::IsMember({"iff", "loop", "diamond"}));
  search->add_option("--k", k_text, "Rational k")->required();
  search->add_option("--out", out_path, "Certificate file (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  const auto start = std::chrono::steady_clock::now();
  int code = 0;
  try {
    if (enum_cap > 0) ferm::set_enumeration_cap(enum_cap);
    if (*eval) {
      code = eval_command(what, matrix_path, k_text, diagram, convention);
    } else if (*verify) {
      if (!verify_k.empty()) options.k = Rational::parse(verify_k);
      code = verify_command(suite, options, format);
    } else if (*reduce) {
      code = reduce_command(what, matrix_path, k_text, cert_path);
    } else {
      code = gadget_command(kind, k_text, out_path);
    }
  } catch (const ferm::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    code = 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    code = 2;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "wall time: " << seconds << " s\n";
  return code;
}
