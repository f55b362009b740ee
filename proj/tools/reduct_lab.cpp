// reduct-lab: runs one verification suite and writes a JSON or CSV report.
// Exit codes: 0 pass, 1 fail, 2 usage, 3 resource limit.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "reductlab/errors.hpp"
#include "reductlab/verify.hpp"

namespace {

std::vector<std::string> read_words(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw reductlab::ConfigError("cannot open flip file: " + path);
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    words.push_back(line);
  }
  return words;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-truncation checks for the reduct chain of the pointed vector space"};
  std::string cmd, n_text, m_text, r_text, format = "json", method = "structured", out_path, flips_path;
  reductlab::RunConfig config;
  app.add_option("--cmd", cmd, "preservation-matrix | rm-table | chain-witness | closure-order | realize | degree-check")
      ->required();
  app.add_option("--dim", config.d, "dimension d of V")->capture_default_str();
  app.add_option("--q", config.q, "prime field order")->capture_default_str();
  app.add_option("--n", n_text, "n value or range a..b");
  app.add_option("--m", m_text, "m value or range a..b");
  app.add_option("--r", r_text, "r (or k for degree-check) value or range a..b");
  app.add_option("--seed", config.seed, "seed for sampled suites")->capture_default_str();
  app.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--budget", config.budget, "enumeration budget")->capture_default_str();
  app.add_option("--method", method, "structured | brute-force")
      ->check(CLI::IsMember({"structured", "brute-force"}))
      ->capture_default_str();
  app.add_option("--samples", config.samples, "random functions per k for degree-check at n > 4")->capture_default_str();
  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_option("--flips", flips_path, "file of flip-set words, one per line (realize)");
  app.add_flag("--timing", config.timing, "record wall-clock time in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    config.command = reductlab::parse_command(cmd);
    if (!n_text.empty()) config.n_range = reductlab::parse_range(n_text);
    if (!m_text.empty()) config.m_range = reductlab::parse_range(m_text);
    if (!r_text.empty()) config.r_range = reductlab::parse_range(r_text);
    config.format = format == "csv" ? reductlab::Format::Csv : reductlab::Format::Json;
    config.method = method == "brute-force" ? reductlab::Method::BruteForce : reductlab::Method::Structured;
    if (!flips_path.empty()) config.flips = read_words(flips_path);

    const reductlab::Report report = reductlab::run(config);
    const std::string text = config.format == reductlab::Format::Csv ? reductlab::to_csv(report) : reductlab::to_json(report);
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(out_path);
      if (!out) {
        std::cerr << "cannot write " << out_path << "\n";
        return 2;
      }
      out << text;
    }
    return report.pass ? 0 : 1;
  } catch (const reductlab::ConfigError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const reductlab::ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return 2;
  }
}
