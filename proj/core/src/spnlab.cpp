#include "altdiff/spnlab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "altdiff/error.hpp"
#include "altdiff/homega.hpp"
#include "altdiff/sbox_corpus.hpp"
#include "altdiff/seeding.hpp"

namespace altdiff::spnlab {

namespace {

constexpr std::uint64_t kKeyDomain = 0x6b65792d73747265ULL;
constexpr std::uint64_t kLambdaDomain = 0x6c616d6264612d73ULL;
constexpr std::uint32_t kMaxKeys = 65535;

using Matrix16 = std::array<std::array<double, 16>, 16>;

// out = in transformed by T on the nibble at `shift`; out is overwritten.
void block_transform(const std::vector<double>& in, std::vector<double>& out, const Matrix16& t, int shift) {
  std::fill(out.begin(), out.end(), 0.0);
  const unsigned mask = 0xFU << shift;
  for (unsigned base = 0; base < kStateSize; ++base) {
    if (base & mask) continue;
    for (unsigned v = 0; v < 16; ++v) {
      const double val = in[base | (v << shift)];
      if (val == 0.0) continue;
      const auto& row = t[v];
      for (unsigned w = 0; w < 16; ++w)
        if (row[w] != 0.0) out[base | (w << shift)] += val * row[w];
    }
  }
}

double max_nonzero(const std::vector<double>& v) {
  double best = 0;
  for (unsigned d = 1; d < kStateSize; ++d) best = std::max(best, v[d]);
  return best;
}

std::string format_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string hex4(std::uint16_t v) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%04X", static_cast<unsigned>(v));
  return buf;
}

}  // namespace

std::string to_string(Flavor f) { return f == Flavor::Plus ? "plus" : "circ"; }
std::string to_string(Estimator e) { return e == Estimator::Markov ? "markov" : "montecarlo"; }

ParallelOperation toy_operation() {
  const auto block = altop::two_strong_operation(4, gf2::BitVec::parse_binary("01"));
  return ParallelOperation::compose({block, block, block, block});
}

SpnShape::SpnShape(Sbox sbox, BitMatrix lambda) : sbox_(std::move(sbox)), lambda_(std::move(lambda)) {
  if (sbox_.s() != 4) throw Error(Errc::WidthMismatch, "the toy cipher uses 4-bit s-boxes");
  if (lambda_.rows() != kStateBits || lambda_.cols() != kStateBits)
    throw Error(Errc::WidthMismatch, "linear layer must be 16 x 16");
  sub_.resize(kStateSize);
  lin_.resize(kStateSize);
  round_.resize(kStateSize);
  for (unsigned x = 0; x < kStateSize; ++x) {
    unsigned y = 0;
    for (int j = 0; j < 4; ++j) y |= static_cast<unsigned>(sbox_((x >> (4 * j)) & 0xFU)) << (4 * j);
    sub_[x] = static_cast<std::uint16_t>(y);
    lin_[x] = static_cast<std::uint16_t>(lambda_.apply(x));
  }
  for (unsigned x = 0; x < kStateSize; ++x) round_[x] = lin_[sub_[x]];
}

FastCirc::FastCirc(const ParallelOperation& op) : hi_(1U << 16), lo_(1U << 16) {
  if (op.n() != kStateBits) throw Error(Errc::WidthMismatch, "fast ∘ needs a 16-bit operation");
  for (unsigned x = 0; x < 256; ++x)
    for (unsigned y = 0; y < 256; ++y) {
      hi_[(x << 8) | y] = static_cast<std::uint8_t>(op.circ(gf2::Word{x} << 8, gf2::Word{y} << 8) >> 8);
      lo_[(x << 8) | y] = static_cast<std::uint8_t>(op.circ(gf2::Word{x}, gf2::Word{y}));
    }
}

std::vector<std::uint16_t> long_key(std::uint64_t seed, std::uint64_t run, std::uint64_t key_index, int rounds) {
  std::mt19937_64 rng(derive_seed(seed ^ kKeyDomain, run, key_index));
  std::vector<std::uint16_t> keys(static_cast<std::size_t>(rounds));
  for (auto& k : keys) k = static_cast<std::uint16_t>(rng() & 0xFFFFU);
  return keys;
}

std::vector<std::uint16_t> weight_one_differences() {
  std::vector<std::uint16_t> out;
  for (int i = 0; i < kStateBits; ++i) out.push_back(static_cast<std::uint16_t>(1U << i));
  return out;
}

BestTable best_differential_montecarlo(const SpnShape& shape, const ParallelOperation& op,
                                       const MonteCarloConfig& config, const Executor& executor) {
  if (config.rounds_lo < 0 || config.rounds_hi < config.rounds_lo)
    throw Error(Errc::DimensionOutOfRange, "invalid round range");
  if (config.keys == 0 || config.keys > kMaxKeys)
    throw Error(Errc::SizeTooLarge, "key sample size must lie in 1..65535");
  const FastCirc circ(op);
  const std::size_t nr = static_cast<std::size_t>(config.rounds_hi - config.rounds_lo + 1);
  const std::size_t nd = config.deltas.size();
  const bool want_plus = std::find(config.flavors.begin(), config.flavors.end(), Flavor::Plus) != config.flavors.end();
  const bool want_circ = std::find(config.flavors.begin(), config.flavors.end(), Flavor::Circ) != config.flavors.end();

  std::vector<std::vector<std::uint16_t>> partner(nd, std::vector<std::uint16_t>(kStateSize));
  for (std::size_t t = 0; t < nd; ++t)
    for (unsigned x = 0; x < kStateSize; ++x)
      partner[t][x] = circ(static_cast<std::uint16_t>(x), config.deltas[t]);

  // counters[((round * nd) + delta) * 2 + flavor][out]
  const std::size_t slots = nr * nd * 2;
  const std::size_t chunks = std::min<std::size_t>(std::max(1U, executor.workers()), config.keys);
  std::vector<std::vector<std::uint32_t>> partial(chunks);

  executor.for_each(chunks, [&](std::size_t c) {
    auto& counts = partial[c];
    counts.assign(slots * kStateSize, 0);
    std::vector<std::uint16_t> state(kStateSize);
    const std::uint32_t begin = static_cast<std::uint32_t>(config.keys * c / chunks);
    const std::uint32_t end = static_cast<std::uint32_t>(config.keys * (c + 1) / chunks);
    for (std::uint32_t key = begin; key < end; ++key) {
      const auto keys = long_key(config.seed, config.run, config.key_offset + key, config.rounds_hi);
      for (unsigned x = 0; x < kStateSize; ++x) state[x] = static_cast<std::uint16_t>(x);
      for (int r = 0; r <= config.rounds_hi; ++r) {
        if (r > 0) {
          const std::uint16_t k = keys[static_cast<std::size_t>(r - 1)];
          for (auto& v : state) v = static_cast<std::uint16_t>(shape.round(v) ^ k);
        }
        if (r < config.rounds_lo) continue;
        const std::size_t ri = static_cast<std::size_t>(r - config.rounds_lo);
        for (std::size_t t = 0; t < nd; ++t) {
          const std::uint16_t delta = config.deltas[t];
          if (want_plus) {
            std::uint32_t* cnt = &counts[((ri * nd + t) * 2 + 0) * kStateSize];
            for (unsigned x = 0; x < kStateSize; ++x) {
              const unsigned y = x ^ delta;
              if (y < x) continue;
              cnt[state[x] ^ state[y]] += 2;
            }
          }
          if (want_circ) {
            std::uint32_t* cnt = &counts[((ri * nd + t) * 2 + 1) * kStateSize];
            const auto& p = partner[t];
            for (unsigned x = 0; x < kStateSize; ++x) {
              const unsigned y = p[x];
              if (y < x) continue;
              cnt[circ(state[x], state[y])] += 2;
            }
          }
        }
      }
    }
  });

  BestTable table;
  table.rounds_lo = config.rounds_lo;
  table.deltas = config.deltas;
  table.best.assign(nr, std::vector<std::array<double, 2>>(nd, {0.0, 0.0}));
  const double denom = static_cast<double>(config.keys) * static_cast<double>(kStateSize);
  for (std::size_t ri = 0; ri < nr; ++ri)
    for (std::size_t t = 0; t < nd; ++t)
      for (std::size_t f = 0; f < 2; ++f) {
        if ((f == 0 && !want_plus) || (f == 1 && !want_circ)) continue;
        const std::size_t off = ((ri * nd + t) * 2 + f) * kStateSize;
        std::uint64_t best = 0;
        for (unsigned b = 0; b < kStateSize; ++b) {
          std::uint64_t sum = 0;
          for (const auto& counts : partial) sum += counts[off + b];
          best = std::max(best, sum);
        }
        table.best[ri][t][f] = static_cast<double>(best) / denom;
      }
  return table;
}

MarkovModel::MarkovModel(const SpnShape& shape, const ParallelOperation& op) : shape_(&shape) {
  if (op.n() != kStateBits || op.s() != 4) throw Error(Errc::WidthMismatch, "Markov model needs four 4-bit blocks");
  for (int j = 1; j < op.block_count(); ++j)
    if (op.block(j).spec() != op.block(0).spec())
      throw Error(Errc::WrongRegime, "Markov model needs identical blocks");
  if (!homega::is_member(op, shape.lambda()))
    throw Error(Errc::NotInHOmega, "linear layer is not linear for the operation");
  const auto& table = *op.block(0).table();
  const auto plus = ddt::ddt_plus(shape.sbox());
  const auto circ = ddt::ddt_circ(shape.sbox(), table);
  const auto key = ddt::key_transition_matrix(table);
  for (unsigned a = 0; a < 16; ++a)
    for (unsigned b = 0; b < 16; ++b) {
      ddt_plus_[a][b] = plus.at(a, b) / 16.0;
      ddt_circ_[a][b] = circ.at(a, b) / 16.0;
      key_circ_[a][b] = key.probability(a, b);
    }
}

void MarkovModel::step(std::vector<double>& v, std::vector<double>& scratch, Flavor flavor) const {
  const auto& sbox = flavor == Flavor::Plus ? ddt_plus_ : ddt_circ_;
  for (int j = 0; j < 4; ++j) {
    block_transform(v, scratch, sbox, 4 * j);
    v.swap(scratch);
  }
  // Differences of both flavors cross λ deterministically.
  std::fill(scratch.begin(), scratch.end(), 0.0);
  for (unsigned d = 0; d < kStateSize; ++d)
    if (v[d] != 0.0) scratch[shape_->linear(static_cast<std::uint16_t>(d))] += v[d];
  v.swap(scratch);
  if (flavor == Flavor::Circ) {
    for (int j = 0; j < 4; ++j) {
      block_transform(v, scratch, key_circ_, 4 * j);
      v.swap(scratch);
    }
  }
}

std::vector<double> MarkovModel::distribution(std::uint16_t delta, Flavor flavor, int rounds) const {
  std::vector<double> v(kStateSize, 0.0);
  std::vector<double> scratch(kStateSize, 0.0);
  v[delta] = 1.0;
  for (int r = 0; r < rounds; ++r) step(v, scratch, flavor);
  return v;
}

std::vector<double> MarkovModel::best(std::uint16_t delta, Flavor flavor, int rounds_lo, int rounds_hi) const {
  if (rounds_lo < 0 || rounds_hi < rounds_lo) throw Error(Errc::DimensionOutOfRange, "invalid round range");
  std::vector<double> v(kStateSize, 0.0);
  std::vector<double> scratch(kStateSize, 0.0);
  v[delta] = 1.0;
  std::vector<double> out;
  for (int r = 0; r <= rounds_hi; ++r) {
    if (r > 0) step(v, scratch, flavor);
    if (r >= rounds_lo) out.push_back(delta == 0 ? v[0] : max_nonzero(v));
  }
  return out;
}

BestTable best_differential_markov(const SpnShape& shape, const ParallelOperation& op, int rounds_lo,
                                   int rounds_hi, const std::vector<std::uint16_t>& deltas,
                                   const Executor& executor) {
  const MarkovModel model(shape, op);
  const std::size_t nr = static_cast<std::size_t>(rounds_hi - rounds_lo + 1);
  BestTable table;
  table.rounds_lo = rounds_lo;
  table.deltas = deltas;
  table.best.assign(nr, std::vector<std::array<double, 2>>(deltas.size(), {0.0, 0.0}));
  executor.for_each(deltas.size() * 2, [&](std::size_t task) {
    const std::size_t t = task / 2;
    const auto flavor = static_cast<Flavor>(task % 2);
    const auto best = model.best(deltas[t], flavor, rounds_lo, rounds_hi);
    for (std::size_t ri = 0; ri < nr; ++ri) table.best[ri][t][task % 2] = best[ri];
  });
  return table;
}

ExperimentConfig ExperimentConfig::desk() { return {}; }

ExperimentConfig ExperimentConfig::full_scale() {
  ExperimentConfig c;
  c.runs = 150;
  c.rounds_lo = 3;
  c.rounds_hi = 10;
  c.keys = 1U << 15;
  return c;
}

std::uint64_t lambda_seed_for(std::uint64_t seed, int run) {
  return derive_seed(seed ^ kLambdaDomain, static_cast<std::uint64_t>(run));
}

ExperimentResult run_experiment(const ExperimentConfig& config, const Executor& executor) {
  if (config.runs < 0) throw Error(Errc::DimensionOutOfRange, "run count must be non-negative");
  if (config.rounds_lo < 0 || config.rounds_hi < config.rounds_lo)
    throw Error(Errc::DimensionOutOfRange, "invalid round range");
  const auto op = toy_operation();
  const auto deltas = weight_one_differences();
  ExperimentResult result;

  for (int run = 0; run < config.runs; ++run) {
    const std::uint64_t lseed = lambda_seed_for(config.seed, run);
    const SpnShape shape(corpus::gamma(), homega::sample_parallel(op, lseed).matrix);
    std::vector<std::pair<Estimator, BestTable>> tables;
    for (const auto est : config.estimators) {
      if (est == Estimator::Markov) {
        tables.emplace_back(est, best_differential_markov(shape, op, config.rounds_lo, config.rounds_hi, deltas, executor));
      } else {
        MonteCarloConfig mc;
        mc.rounds_lo = config.rounds_lo;
        mc.rounds_hi = config.rounds_hi;
        mc.keys = config.keys;
        mc.seed = config.seed;
        mc.run = static_cast<std::uint64_t>(run);
        mc.deltas = deltas;
        tables.emplace_back(est, best_differential_montecarlo(shape, op, mc, executor));
      }
    }
    for (int r = config.rounds_lo; r <= config.rounds_hi; ++r)
      for (const auto& [est, table] : tables) {
        RunSummary summary{run, r, lseed, est, 0, 0, 0, 0};
        for (std::size_t t = 0; t < deltas.size(); ++t) {
          const double pp = table.at(r, t, Flavor::Plus);
          const double pc = table.at(r, t, Flavor::Circ);
          const double gap = std::log2(pc) - std::log2(pp);
          result.records.push_back({run, r, lseed, est, Flavor::Plus, deltas[t], pp, -std::log2(pp), gap});
          result.records.push_back({run, r, lseed, est, Flavor::Circ, deltas[t], pc, -std::log2(pc), gap});
          summary.p_plus = std::max(summary.p_plus, pp);
          summary.p_circ = std::max(summary.p_circ, pc);
        }
        summary.neglog2_p_circ = -std::log2(summary.p_circ);
        summary.gap = std::log2(summary.p_circ) - std::log2(summary.p_plus);
        result.summaries.push_back(summary);
      }
  }
  return result;
}

std::string records_csv(const std::vector<ExperimentRecord>& records) {
  std::ostringstream out;
  out << "run,rounds,lambda_seed,estimator,flavor,delta_in_hex,p_best,neglog2_p,gap\n";
  for (const auto& r : records)
    out << r.run << ',' << r.rounds << ',' << r.lambda_seed << ',' << to_string(r.estimator) << ','
        << to_string(r.flavor) << ",0x" << hex4(r.delta_in) << ',' << format_double("%.10g", r.p_best) << ','
        << format_double("%.6f", r.neglog2_p) << ',' << format_double("%.6f", r.gap) << '\n';
  return out.str();
}

std::string summary_csv(const std::vector<RunSummary>& summaries) {
  std::ostringstream out;
  out << "run,rounds,lambda_seed,estimator,p_circ,p_plus,neglog2_p_circ,gap\n";
  for (const auto& s : summaries)
    out << s.run << ',' << s.rounds << ',' << s.lambda_seed << ',' << to_string(s.estimator) << ','
        << format_double("%.10g", s.p_circ) << ',' << format_double("%.10g", s.p_plus) << ','
        << format_double("%.6f", s.neglog2_p_circ) << ',' << format_double("%.6f", s.gap) << '\n';
  return out.str();
}

}  // namespace altdiff::spnlab
