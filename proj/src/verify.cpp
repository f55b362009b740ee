#include "reductlab/verify.hpp"

#include <bit>
#include <chrono>
#include <random>
#include <sstream>

#include "reductlab/flip_calculus.hpp"
#include "reductlab/pointed_space.hpp"
#include "reductlab/reduct_relations.hpp"
#include "reductlab/reed_muller.hpp"

namespace reductlab {

using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kSchema = "reduct-lab/1";

const std::vector<std::pair<Command, std::string>>& command_names() {
  static const std::vector<std::pair<Command, std::string>> names = {
      {Command::PreservationMatrix, "preservation-matrix"},
      {Command::RmTable, "rm-table"},
      {Command::ChainWitness, "chain-witness"},
      {Command::ClosureOrder, "closure-order"},
      {Command::Realize, "realize"},
      {Command::DegreeCheck, "degree-check"},
  };
  return names;
}

Json range_json(const std::optional<IntRange>& r) {
  if (!r) return nullptr;
  return Json::array({r->lo, r->hi});
}

Json flat_json(const AffineFlat& f) {
  Json dir = Json::array();
  for (const auto& r : f.direction().basis().row_vectors()) dir.push_back(r.to_string());
  return Json{{"offset", f.offset().to_string()}, {"direction", dir}};
}

Json instance_json(const PointedSpace& space, const RInstance& inst) {
  return Json{{"m", inst.m}, {"flat", flat_json(inst.base_flat)}, {"lift", inst.lift.to_string()},
              {"tuple", inst.tuple(space)}};
}

IntRange range_or(const std::optional<IntRange>& r, int lo, int hi) { return r ? *r : IntRange{lo, hi}; }

void require_within(const IntRange& r, int lo, int hi, const std::string& what) {
  if (r.lo > r.hi || r.lo < lo || r.hi > hi) {
    throw ConfigError(what + " range " + std::to_string(r.lo) + ".." + std::to_string(r.hi) + " must lie in " +
                      std::to_string(lo) + ".." + std::to_string(hi));
  }
}

PointedSpace make_space(const RunConfig& c) {
  if (!is_prime(c.q) || c.q > 251) throw ConfigError("q must be a prime below 256");
  if (c.d < 2) throw ConfigError("dimension must be at least 2");
  if (checked_pow(c.q, c.d) > c.budget) throw ResourceError("q^d exceeds the enumeration budget");
  return PointedSpace::standard(c.d, c.q);
}

// ---------------------------------------------------------------- commands

bool preservation_matrix(const RunConfig& c, Json& results) {
  const PointedSpace space = make_space(c);
  const int top = std::max(1, c.d - 2);
  const IntRange ns = range_or(c.n_range, 1, top);
  const IntRange ms = range_or(c.m_range, 1, top);
  require_within(ns, 1, c.d - 1, "n");
  require_within(ms, 1, c.d - 1, "m");
  bool pass = true;
  for (int n = ns.lo; n <= ns.hi; ++n) {
    const auto gens = hn_generators(space, n);
    for (int m = ms.lo; m <= ms.hi; ++m) {
      PreservationReport rep;
      std::size_t failing = 0;
      for (std::size_t g = 0; g < gens.size(); ++g) {
        rep = c.method == Method::BruteForce ? perm_preserves_rm(space, gens[g], m, EnumerationBudget{c.budget})
                                             : preserves_rm(space, gens[g], m, EnumerationBudget{c.budget});
        failing = g;
        if (!rep.preserved) break;
      }
      const bool expected = m >= n + 1;
      Json cell{{"n", n}, {"m", m}, {"preserved", rep.preserved}, {"expected", expected}};
      if (rep.witness) {
        Json w = instance_json(space, rep.witness->instance);
        w["generator"] = failing;
        w["permutation"] = rep.witness->permutation.to_string();
        cell["witness"] = w;
      }
      pass = pass && rep.preserved == expected;
      results.push_back(cell);
    }
  }
  return pass;
}

bool rm_table(const RunConfig& c, Json& results) {
  const IntRange ns = range_or(c.n_range, 1, 5);
  require_within(ns, 0, 12, "n");
  bool pass = true;
  for (int n = ns.lo; n <= ns.hi; ++n) {
    const IntRange rs = range_or(c.r_range, 0, n);
    for (int r = std::max(rs.lo, 0); r <= std::min(rs.hi, n); ++r) {
      const LinearCode code = rm_by_polynomials(r, n);
      const int mw = min_weight(code, WeightBudget{c.budget});
      const LinearCode d = dual(code);
      int dual_r = -1;
      if (d.dimension() > 0) {
        dual_r = -2;
        for (int s = 0; s <= n && dual_r == -2; ++s) {
          if (rm_by_polynomials(s, n) == d) dual_r = s;
        }
      }
      const int expected_dim = rm_dimension(r, n);
      const int expected_mw = 1 << (n - r);
      const bool ok = code.dimension() == expected_dim && mw == expected_mw && dual_r == n - r - 1 &&
                      code.dimension() + d.dimension() == (1 << n);
      pass = pass && ok;
      results.push_back(Json{{"r", r}, {"n", n}, {"dim", code.dimension()}, {"min_weight", mw}, {"dual_r", dual_r},
                             {"expected_dim", expected_dim}, {"expected_min_weight", expected_mw},
                             {"expected_dual_r", n - r - 1}, {"ok", ok}});
    }
  }
  return pass;
}

bool chain_witness(const RunConfig& c, Json& results) {
  const PointedSpace space = make_space(c);
  if (c.d < 4) throw ConfigError("chain-witness needs dim V >= 4");
  const IntRange ns = range_or(c.n_range, 1, c.d - 3);
  require_within(ns, 1, c.d - 3, "n");
  bool pass = true;
  for (int n = ns.lo; n <= ns.hi; ++n) {
    const SeparatingWitness w = separating_witness(n, space);
    pass = pass && w.verified();
    results.push_back(Json{{"n", n},
                           {"instance", instance_json(space, w.instance)},
                           {"flip", w.flip.to_string()},
                           {"image", w.image},
                           {"instance_in_r", w.instance_in_r},
                           {"image_in_r", w.image_in_r},
                           {"lower_generators_preserve", w.lower_generators_preserve},
                           {"verified", w.verified()}});
  }
  return pass;
}

bool closure_order_cmd(const RunConfig& c, Json& results) {
  const PointedSpace space = make_space(c);
  if (c.d > 4) throw ConfigError("closure-order enumerates group elements; dim V must be at most 4");
  std::vector<PointPermutation> aut;
  for (const auto& g : aut_c_generators(space)) aut.push_back(to_permutation(space, g));
  const std::uint64_t aut_order = closure_order(aut, c.budget);
  const std::uint64_t aut_expected = aut_c_order(space);
  bool pass = aut_order == aut_expected;
  results.push_back(Json{{"group", "Aut(V,C)"}, {"order", aut_order}, {"expected", aut_expected}, {"index", 1}});
  for (int n = 1; n <= std::min(2, space.w_dim()); ++n) {
    const std::uint64_t order = closure_order(hn_generators(space, n), c.budget);
    const std::uint64_t expected = hn_order(space, n);
    pass = pass && order == expected && order % aut_order == 0;
    if (n == 1 && c.q == 2) pass = pass && order == 2 * aut_order;
    results.push_back(Json{{"group", "H_" + std::to_string(n)}, {"order", order}, {"expected", expected},
                           {"index", order / aut_order}});
  }
  return pass;
}

bool realize_cmd(const RunConfig& c, Json& results) {
  const PointedSpace space = make_space(c);
  if (!c.n_range || c.n_range->lo != c.n_range->hi) throw ConfigError("realize needs a single --n value");
  const int n = c.n_range->lo;
  require_within(*c.n_range, 0, space.w_dim(), "n");
  if (c.flips.empty()) throw ConfigError("realize needs at least one flip-set word (--flips FILE)");
  bool pass = true;
  for (const auto& word : c.flips) {
    FlipSet s = [&] {
      try {
        return FlipSet::parse(space, word);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("bad flip-set word: ") + e.what());
      }
    }();
    Json rec{{"word", word}, {"n", n}};
    auto res = realize_flip(s, n);
    bool verified = false;
    if (auto* cert = std::get_if<FlatCertificate>(&res)) {
      Json flats = Json::array();
      for (std::size_t i = 0; i < cert->flats.size(); ++i) {
        Json f = flat_json(cert->flats[i]);
        f["coefficient"] = cert->coefficients[i];
        flats.push_back(f);
      }
      verified = cert->word() == s.word() && cert->flats_have_codim_n();
      rec["in_group"] = true;
      rec["certificate"] = flats;
    } else {
      const auto& witness = std::get<NotInGroup>(res).witness;
      rec["in_group"] = false;
      if (witness) {
        int sum = 0;
        for (Point p : witness->point_indices()) sum += s.multiplicity(p);
        rec["witness"] = Json{{"flat", flat_json(*witness)}, {"sum", sum % c.q}};
        verified = sum % c.q != 0;
      } else {
        rec["witness"] = nullptr;
      }
    }
    rec["verified"] = verified;
    pass = pass && verified;
    results.push_back(rec);
  }
  return pass;
}

bool degree_check(const RunConfig& c, Json& results) {
  const IntRange nr = range_or(c.n_range, 4, 4);
  if (nr.lo != nr.hi) throw ConfigError("degree-check takes a single --n value");
  const int n = nr.lo;
  require_within(nr, 1, 10, "n");
  const IntRange ks = range_or(c.r_range, 0, n - 1);
  require_within(ks, 0, n - 1, "k");
  if (c.samples <= 0) throw ConfigError("samples must be positive");
  const bool exhaustive = n <= 4;
  std::mt19937_64 rng(c.seed);
  std::vector<BooleanFunction> sample;
  if (!exhaustive) {
    const int len = 1 << n;
    for (int i = 0; i < c.samples; ++i) {
      // A random polynomial of random degree bound t in -1..n.
      const int t = static_cast<int>(rng() % static_cast<std::uint64_t>(n + 2)) - 1;
      GFVector coeffs(2, len);
      for (int mask = 0; mask < len; ++mask) {
        if (std::popcount(static_cast<unsigned>(mask)) <= t) coeffs.set(mask, static_cast<Scalar>(rng() & 1));
      }
      sample.push_back(evaluate_anf(n, coeffs));
    }
  }
  bool pass = true;
  for (int k = ks.lo; k <= ks.hi; ++k) {
    std::uint64_t total = 0, agree = 0, linear_agree = 0;
    Json first_disagreement = nullptr;
    auto check = [&](const BooleanFunction& f) {
      const bool by_degree = anf(f).degree <= k;
      const bool by_flats = degree_by_orthogonality(f, k);
      ++total;
      agree += by_degree == by_flats;
      linear_agree += by_degree == degree_by_linear_orthogonality(f, k);
      if (by_degree != by_flats && first_disagreement.is_null()) first_disagreement = f.values().to_string();
    };
    if (exhaustive) {
      const std::uint64_t count = std::uint64_t{1} << (1 << n);
      for (std::uint64_t bits = 0; bits < count; ++bits) check(BooleanFunction::from_bits(n, bits));
    } else {
      for (const auto& f : sample) check(f);
    }
    pass = pass && agree == total;
    results.push_back(Json{{"n", n}, {"k", k}, {"functions", total}, {"agree", agree}, {"disagree", total - agree},
                           {"linear_agree", linear_agree}, {"first_disagreement", first_disagreement}});
  }
  return pass;
}

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::vector<std::string> csv_columns(const std::string& command) {
  if (command == "preservation-matrix") return {"n", "m", "preserved", "expected"};
  if (command == "rm-table") return {"r", "n", "dim", "min_weight", "dual_r"};
  if (command == "chain-witness") return {"n", "flip", "instance_in_r", "image_in_r", "lower_generators_preserve", "verified"};
  if (command == "closure-order") return {"group", "order", "expected", "index"};
  if (command == "realize") return {"word", "n", "in_group", "verified"};
  return {"n", "k", "functions", "agree", "disagree", "linear_agree"};
}

}  // namespace

std::string to_string(Command c) {
  for (const auto& [cmd, name] : command_names()) {
    if (cmd == c) return name;
  }
  return "unknown";
}

Command parse_command(const std::string& name) {
  for (const auto& [cmd, n] : command_names()) {
    if (n == name) return cmd;
  }
  throw ConfigError("unknown command: " + name);
}

IntRange parse_range(const std::string& text) {
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      throw ConfigError("bad range: " + text);
    }
    if (used != s.size()) throw ConfigError("bad range: " + text);
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = to_int(text);
    return {v, v};
  }
  IntRange r{to_int(text.substr(0, dots)), to_int(text.substr(dots + 2))};
  if (r.lo > r.hi) throw ConfigError("empty range: " + text);
  return r;
}

Report run(const RunConfig& c) {
  if (c.budget == 0) throw ConfigError("budget must be positive");
  Report report;
  report.config = Json{{"command", to_string(c.command)},
                       {"d", c.d},
                       {"q", c.q},
                       {"n_range", range_json(c.n_range)},
                       {"m_range", range_json(c.m_range)},
                       {"r_range", range_json(c.r_range)},
                       {"seed", c.seed},
                       {"rng", "mt19937_64"},
                       {"format", c.format == Format::Json ? "json" : "csv"},
                       {"budget", c.budget},
                       {"method", c.method == Method::Structured ? "structured" : "brute-force"},
                       {"samples", c.samples}};
  const auto start = std::chrono::steady_clock::now();
  switch (c.command) {
    case Command::PreservationMatrix: report.pass = preservation_matrix(c, report.results); break;
    case Command::RmTable: report.pass = rm_table(c, report.results); break;
    case Command::ChainWitness: report.pass = chain_witness(c, report.results); break;
    case Command::ClosureOrder: report.pass = closure_order_cmd(c, report.results); break;
    case Command::Realize: report.pass = realize_cmd(c, report.results); break;
    case Command::DegreeCheck: report.pass = degree_check(c, report.results); break;
  }
  if (c.timing) {
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return report;
}

std::string to_json(const Report& report) {
  Json out{{"schema", kSchema},
           {"command", report.config.at("command")},
           {"config", report.config},
           {"results", report.results},
           {"verdict", report.pass ? "pass" : "fail"}};
  if (report.seconds) out["timing_seconds"] = *report.seconds;
  return out.dump(2) + "\n";
}

std::string to_csv(const Report& report) {
  const auto cols = csv_columns(report.config.at("command").get<std::string>());
  std::ostringstream out;
  out << "# schema," << kSchema << '\n';
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& row : report.results) {
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << csv_cell(row.value(cols[i], Json()));
    out << '\n';
  }
  out << "# verdict," << (report.pass ? "pass" : "fail") << '\n';
  if (report.seconds) out << "# timing_seconds," << *report.seconds << '\n';
  return out.str();
}

}  // namespace reductlab
