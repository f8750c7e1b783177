#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "altdiff/altop.hpp"
#include "altdiff/ddt.hpp"
#include "altdiff/error.hpp"
#include "altdiff/homega.hpp"
#include "altdiff/parallel.hpp"
#include "altdiff/sbox_corpus.hpp"
#include "altdiff/sboxclass.hpp"
#include "altdiff/seeding.hpp"
#include "altdiff/spnlab.hpp"

namespace altdiff::cli {

namespace {

// Full-scale limits that need --preset paper.
constexpr std::uint32_t kDeskMaxKeys = 4096;
constexpr int kDeskMaxRuns = 60;
constexpr int kDeskMaxRounds = 8;
constexpr std::uint64_t kDeskMaxRandomOps = 200000;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Global {
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out_path;
  std::string preset = "desk";
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Executor make_executor(const Global& g) {
  unsigned workers = g.threads == 0 ? Executor::default_workers() : g.threads;
  if (std::getenv("ALTDIFF_THREADS")) workers = Executor::default_workers();
  return Executor(workers);
}

// Writes to --out when given, otherwise to the command stream.
class Sink {
 public:
  Sink(const Global& g, std::ostream& fallback) : stream_(&fallback) {
    if (!g.out_path.empty()) {
      file_.open(g.out_path);
      if (!file_) throw UsageError("cannot write " + g.out_path);
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::pair<int, int> parse_rounds(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int r = std::stoi(text);
      return {r, r};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw UsageError("rounds must look like LO..HI, got '" + text + "'");
  }
}

ddt::Sbox resolve_sbox(const std::string& name) {
  if (auto f = corpus::lookup(name)) return *f;
  return ddt::Sbox::parse_hex(name);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : text) {
    if (c == sep) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

altop::AltOperation operation_from(const std::string& spec_path, int s, const std::string& b_bits) {
  if (!spec_path.empty()) return altop::AltOperation::build(altop::parse_theta(read_file(spec_path)));
  const std::string bits = b_bits.empty() ? std::string(static_cast<std::size_t>(s - 3), '0') + "1" : b_bits;
  return altop::two_strong_operation(s, gf2::BitVec::parse_binary(bits));
}

std::string histogram_line(const sboxclass::Histogram& h) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [u, n] : h) {
    out << (first ? "" : " ") << u << ':' << n;
    first = false;
  }
  return out.str();
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Differential analysis under alternative operations on F2^n", "altdiff"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (0 = hardware; ALTDIFF_THREADS overrides)");
  app.add_option("--out", g.out_path, "Output file (default stdout)");
  app.add_option("--preset", g.preset, "desk | paper")->check(CLI::IsMember({"desk", "paper"}));

  std::function<int()> action;

  // theta-validate
  auto* tv = app.add_subcommand("theta-validate", "Check a defining matrix file");
  std::string tv_path;
  tv->add_option("spec", tv_path, "Defining matrix file")->required();
  tv->callback([&] {
    action = [&] {
      const auto spec = altop::parse_theta(read_file(tv_path));
      const auto report = altop::validate_theta(spec);
      Sink sink(g, out);
      *sink << "n=" << spec.n() << " d=" << spec.d() << ": " << report.describe() << '\n';
      if (!report.valid) return kExitDomain;
      *sink << "dim U=" << altop::AltOperation::build(spec).error_dim() << '\n';
      return kExitOk;
    };
  });

  // ops-enumerate
  auto* oe = app.add_subcommand("ops-enumerate", "List canonical operations for (n, d)");
  int oe_n = 4;
  int oe_d = 2;
  bool oe_count = false;
  oe->add_option("--n", oe_n)->required();
  oe->add_option("--d", oe_d)->required();
  oe->add_flag("--count-only", oe_count);
  oe->callback([&] {
    action = [&] {
      const auto specs = altop::enumerate_canonical(oe_n, oe_d);
      Sink sink(g, out);
      if (oe_count) {
        *sink << specs.size() << '\n';
        return kExitOk;
      }
      for (const auto& spec : specs) {
        bool first = true;
        for (const auto& [key, value] : spec.entries()) {
          *sink << (first ? "" : " ") << key.first << ',' << key.second << ':' << value.to_binary();
          first = false;
        }
        *sink << '\n';
      }
      return kExitOk;
    };
  });

  // ops-all105
  auto* oa = app.add_subcommand("ops-all105", "Fingerprints of all conjugates of the canonical group");
  int oa_n = 4;
  std::string oa_b;
  oa->add_option("--n", oa_n)->required();
  oa->add_option("--b", oa_b, "Defining vector (default 0...01)");
  oa->callback([&] {
    action = [&] {
      if (oa_n > 4) throw Error(Errc::SizeTooLarge, "conjugate enumeration runs over GL(n) for n <= 4");
      const auto op = operation_from("", oa_n, oa_b);
      Sink sink(g, out);
      for (const auto& group : altop::enumerate_conjugates(op)) *sink << group.fingerprint_hex() << '\n';
      return kExitOk;
    };
  });

  // homega-count
  auto* hc = app.add_subcommand("homega-count", "Order of H for an operation");
  int hc_s = 4;
  int hc_d = 2;
  int hc_blocks = 1;
  std::string hc_spec;
  std::string hc_b;
  bool hc_verbose = false;
  bool hc_cross = false;
  hc->add_option("--s", hc_s)->required();
  hc->add_option("--d", hc_d)->required();
  hc->add_option("--blocks", hc_blocks, "Parallel block count (d = s - 2)");
  hc->add_option("--spec", hc_spec, "Defining matrix file");
  hc->add_option("--b", hc_b, "Defining vector for d = s - 2");
  hc->add_flag("--verbose,-v", hc_verbose, "Print the factor breakdown");
  hc->add_flag("--cross-check", hc_cross, "Also count D exhaustively (parallel)");
  hc->callback([&] {
    action = [&] {
      Sink sink(g, out);
      if (hc_d == hc_s - 2 && hc_blocks > 1) {
        const auto c = homega::count_parallel(hc_s, hc_blocks);
        *sink << c.total << '\n';
        if (hc_verbose)
          *sink << "permutations=" << c.permutations << " A=" << c.a_choices << " B=" << c.b_choices
                << " D=" << c.d_choices << '\n';
        if (hc_cross) {
          const auto block = operation_from(hc_spec, hc_s, hc_b);
          const auto op = altop::ParallelOperation::compose(std::vector<altop::AltOperation>(
              static_cast<std::size_t>(hc_blocks), block));
          const auto exhaustive = homega::count_d_exhaustive(op);
          *sink << "D exhaustive=" << exhaustive << (exhaustive == c.d_choices ? " (agrees)" : " (DISAGREES)") << '\n';
        }
        return kExitOk;
      }
      if (hc_blocks != 1) throw Error(Errc::WrongRegime, "parallel counting needs d = s - 2");
      const auto op = operation_from(hc_spec, hc_s, hc_b);
      if (op.n() != hc_s || op.d() != hc_d) throw Error(Errc::InvalidSpec, "spec does not match --s/--d");
      if (hc_d == hc_s - 2) {
        const auto elems = homega::enumerate_single_block(op);
        *sink << elems.size() << '\n';
        if (hc_verbose)
          *sink << "A=6 B=" << (std::uint64_t{1} << (2 * hc_d))
                << " D=" << homega::stabilizer(op.spec().b(1, 2)).size() << '\n';
        return kExitOk;
      }
      if (hc_d == hc_s - 3) {
        const auto elems = homega::enumerate_s_minus_3(op);
        *sink << elems.size() << '\n';
        if (hc_verbose) {
          const auto pairs = homega::admissible_pairs(op);
          std::set<gf2::BitMatrix> ds;
          for (const auto& p : pairs) ds.insert(p.d);
          *sink << "dim U=" << op.error_dim() << " admissible (A,D)=" << pairs.size() << " distinct D=" << ds.size()
                << " B=" << (std::uint64_t{1} << (3 * hc_d)) << '\n';
        }
        return kExitOk;
      }
      throw Error(Errc::WrongRegime, "H is characterized only for d = s - 2 and d = s - 3");
    };
  });

  // homega-sample
  auto* hs = app.add_subcommand("homega-sample", "Random members of H for a parallel operation");
  int hs_s = 4;
  int hs_blocks = 4;
  int hs_count = 1;
  std::string hs_b;
  hs->add_option("--s", hs_s);
  hs->add_option("--blocks", hs_blocks);
  hs->add_option("--b", hs_b, "Defining vector (default 0...01)");
  hs->add_option("--count", hs_count);
  hs->callback([&] {
    action = [&] {
      const auto block = operation_from("", hs_s, hs_b);
      const auto op =
          altop::ParallelOperation::compose(std::vector<altop::AltOperation>(static_cast<std::size_t>(hs_blocks), block));
      Sink sink(g, out);
      for (int i = 0; i < hs_count; ++i) {
        const auto lam = homega::sample_parallel(op, derive_seed(g.seed, static_cast<std::uint64_t>(i)));
        if (i) *sink << '\n';
        *sink << lam.matrix.to_string();
      }
      return kExitOk;
    };
  });

  // ddt
  auto* dd = app.add_subcommand("ddt", "Difference distribution table of an s-box");
  std::string dd_sbox;
  std::string dd_flavor = "plus";
  std::string dd_spec;
  std::string dd_b;
  std::string dd_format = "grid";
  dd->add_option("--sbox", dd_sbox, "Corpus name or hex table")->required();
  dd->add_option("--flavor", dd_flavor)->check(CLI::IsMember({"plus", "circ"}));
  dd->add_option("--spec", dd_spec, "Defining matrix file for circ");
  dd->add_option("--b", dd_b, "Defining vector for circ with d = s - 2");
  dd->add_option("--format", dd_format)->check(CLI::IsMember({"grid", "csv"}));
  dd->callback([&] {
    action = [&] {
      const auto f = resolve_sbox(dd_sbox);
      const auto table = dd_flavor == "plus" ? ddt::ddt_plus(f) : ddt::ddt_circ(f, operation_from(dd_spec, f.s(), dd_b));
      Sink sink(g, out);
      if (dd_format == "csv") {
        *sink << table.to_csv();
      } else {
        *sink << table.render_grid() << "uniformity: " << table.uniformity() << '\n';
      }
      return kExitOk;
    };
  });

  // classify-4bit
  auto* c4 = app.add_subcommand("classify-4bit", "Uniformity spectra of the optimal 4-bit classes");
  std::string c4_classes;
  std::string c4_ops = "all105";
  bool c4_dedup = false;
  bool c4_report = false;
  c4->add_option("--classes", c4_classes, "Comma-separated class indices (default all)");
  c4->add_option("--ops", c4_ops)->check(CLI::IsMember({"canonical", "all105"}));
  c4->add_flag("--dedup", c4_dedup, "Count identical composite tables once");
  c4->add_flag("--report", c4_report, "Compare with the printed table on stderr");
  c4->callback([&] {
    action = [&] {
      std::vector<int> classes;
      if (c4_classes.empty()) {
        for (int i = 0; i < corpus::kOptimalClassCount; ++i) classes.push_back(i);
      } else {
        for (const auto& tok : split(c4_classes, ',')) {
          const std::string digits = (tok[0] == 'G' || tok[0] == 'g') ? tok.substr(1) : tok;
          try {
            classes.push_back(std::stoi(digits));
          } catch (const std::exception&) {
            throw UsageError("bad class index '" + tok + "'");
          }
        }
      }
      const auto setup = sboxclass::FourBitSetup::make(altop::two_strong_operation(4, gf2::BitVec::parse_binary("01")));
      const auto mode = c4_dedup ? sboxclass::CountMode::Distinct : sboxclass::CountMode::Pairs;
      std::vector<std::vector<sboxclass::SpectrumRecord>> sweep;
      if (c4_ops == "canonical") {
        for (const int c : classes) sweep.push_back({sboxclass::classify_optimal_4bit(setup, c, 0, mode)});
      } else {
        sweep = sboxclass::sweep_all_operations(setup, classes, mode, make_executor(g));
      }
      const auto rows = sboxclass::aggregate_classes(sweep);
      Sink sink(g, out);
      *sink << sboxclass::class_csv(rows);
      if (c4_report)
        for (const auto& cmp : sboxclass::compare_with_reference(rows)) {
          err << 'G' << cmp.class_index << ": support " << (cmp.support_match ? "match" : "MISMATCH") << ", counts "
              << (cmp.counts_match ? "match" : "differ") << " (sum " << cmp.computed_sum << " vs " << cmp.published_sum
              << ")";
          for (const auto& note : cmp.notes) err << "; " << note;
          err << '\n';
        }
      return kExitOk;
    };
  });

  // classify-8bit
  auto* c8 = app.add_subcommand("classify-8bit", "8-bit s-boxes against every canonical operation");
  std::string c8_sboxes = "aes,camellia,kuznyechik";
  int c8_d = 6;
  c8->add_option("--sbox", c8_sboxes, "Comma-separated corpus names or hex tables");
  std::string c8_ops = "canonical";
  c8->add_option("--d", c8_d)->required();
  c8->add_option("--ops", c8_ops, "canonical | random:N:SEED");
  c8->callback([&] {
    action = [&] {
      std::vector<std::pair<std::string, ddt::Sbox>> boxes;
      for (const auto& name : split(c8_sboxes, ',')) boxes.emplace_back(name, resolve_sbox(name));
      std::vector<sboxclass::CampaignResult> results;
      if (c8_ops == "canonical") {
        results = sboxclass::campaign_8bit(boxes, c8_d, make_executor(g));
      } else {
        const auto parts = split(c8_ops, ':');
        std::uint64_t count = 0;
        std::uint64_t seed = 0;
        try {
          if (parts.size() != 3 || parts[0] != "random") throw std::invalid_argument("");
          count = std::stoull(parts[1]);
          seed = std::stoull(parts[2]);
        } catch (const std::exception&) {
          throw UsageError("--ops must be canonical or random:N:SEED");
        }
        if (count > kDeskMaxRandomOps && g.preset != "paper")
          throw Error(Errc::SizeTooLarge, "more than 200000 operations needs --preset paper");
        for (const auto& [name, box] : boxes)
          results.push_back(sboxclass::campaign_random_ops(name, box, c8_d, count, seed, make_executor(g)));
      }
      Sink sink(g, out);
      *sink << sboxclass::campaign_csv(results);
      for (const auto& r : results) err << r.sbox << " d=" << r.d << ": " << histogram_line(r.histogram) << '\n';
      return kExitOk;
    };
  });

  // classify-random
  auto* cr = app.add_subcommand("classify-random", "8-bit s-box against randomly drawn operations");
  std::string cr_sbox = "aes";
  int cr_d = 4;
  std::uint64_t cr_count = 1000;
  cr->add_option("--sbox", cr_sbox);
  cr->add_option("--d", cr_d)->required();
  cr->add_option("--count", cr_count);
  cr->callback([&] {
    action = [&] {
      if (cr_count > kDeskMaxRandomOps && g.preset != "paper")
        throw Error(Errc::SizeTooLarge, "more than 200000 operations needs --preset paper");
      const auto result =
          sboxclass::campaign_random_ops(cr_sbox, resolve_sbox(cr_sbox), cr_d, cr_count, g.seed, make_executor(g));
      Sink sink(g, out);
      *sink << sboxclass::campaign_csv({result});
      err << result.sbox << " d=" << result.d << ": " << histogram_line(result.histogram) << '\n';
      return kExitOk;
    };
  });

  // spn-run
  auto* sr = app.add_subcommand("spn-run", "Toy SPN best-differential experiment");
  int sr_runs = -1;
  std::string sr_rounds;
  std::uint32_t sr_keys = 0;
  std::string sr_estimator = "both";
  std::string sr_summary;
  sr->add_option("--runs", sr_runs);
  sr->add_option("--rounds", sr_rounds, "LO..HI");
  sr->add_option("--keys", sr_keys, "Long keys per Monte Carlo estimate");
  sr->add_option("--estimator", sr_estimator)->check(CLI::IsMember({"markov", "montecarlo", "both"}));
  sr->add_option("--summary", sr_summary, "Per-run best CSV");
  sr->callback([&] {
    action = [&] {
      auto config = g.preset == "paper" ? spnlab::ExperimentConfig::full_scale() : spnlab::ExperimentConfig::desk();
      config.seed = g.seed;
      if (sr_runs >= 0) config.runs = sr_runs;
      if (!sr_rounds.empty()) std::tie(config.rounds_lo, config.rounds_hi) = parse_rounds(sr_rounds);
      if (sr_keys > 0) config.keys = sr_keys;
      if (sr_estimator == "markov") config.estimators = {spnlab::Estimator::Markov};
      if (sr_estimator == "montecarlo") config.estimators = {spnlab::Estimator::MonteCarlo};
      if (g.preset != "paper" &&
          (config.keys > kDeskMaxKeys || config.runs > kDeskMaxRuns || config.rounds_hi > kDeskMaxRounds))
        throw Error(Errc::SizeTooLarge, "keys > 4096, runs > 60 or rounds > 8 need --preset paper");
      const auto result = spnlab::run_experiment(config, make_executor(g));
      Sink sink(g, out);
      *sink << spnlab::records_csv(result.records);
      if (!sr_summary.empty()) {
        std::ofstream s(sr_summary);
        if (!s) throw UsageError("cannot write " + sr_summary);
        s << spnlab::summary_csv(result.summaries);
      }
      return kExitOk;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    return action ? action() : kExitUsage;
  } catch (const UsageError& e) {
    err << "error: usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_size_guard() ? kExitSizeGuard : kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return dispatch(args, out, err);
}

}  // namespace altdiff::cli
