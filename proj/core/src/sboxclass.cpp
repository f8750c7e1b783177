#include "altdiff/sboxclass.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <unordered_set>

#include "altdiff/error.hpp"
#include "altdiff/homega.hpp"
#include "altdiff/sbox_corpus.hpp"
#include "altdiff/seeding.hpp"

namespace altdiff::sboxclass {

namespace {

using Table16 = std::array<std::uint8_t, 16>;

Table16 table_of(const Sbox& f) {
  Table16 t{};
  for (unsigned x = 0; x < 16; ++x) t[x] = f(x);
  return t;
}

Table16 table_of(const BitMatrix& m) {
  Table16 t{};
  for (unsigned x = 0; x < 16; ++x) t[x] = static_cast<std::uint8_t>(m.apply(x));
  return t;
}

// ∘-uniformity of a 4-bit table; x and x ∘ a fall in the same cell.
int uniformity16(const Table16& t, const CircTable& op) {
  int best = 0;
  for (unsigned a = 1; a < 16; ++a) {
    std::array<std::uint8_t, 16> row{};
    const std::uint8_t* shift = op.row(a);
    for (unsigned x = 0; x < 16; ++x) {
      const unsigned y = shift[x];
      if (y < x) continue;
      row[op(t[x], t[y])] += 2;
    }
    for (const auto v : row) best = std::max<int>(best, v);
  }
  return best;
}

std::uint64_t pack(const Table16& t) {
  std::uint64_t key = 0;
  for (const auto v : t) key = (key << 4) | v;
  return key;
}

SpectrumRecord spectrum(const Table16& f, const CircTable& op, const std::vector<Table16>& in,
                        const std::vector<Table16>& out, CountMode mode) {
  SpectrumRecord rec;
  std::unordered_set<std::uint64_t> seen;
  if (mode == CountMode::Distinct) seen.reserve(in.size() * out.size());
  Table16 cand{};
  for (const auto& g2 : in)
    for (const auto& g1 : out) {
      for (unsigned x = 0; x < 16; ++x) cand[x] = g1[f[g2[x]]];
      if (mode == CountMode::Distinct && !seen.insert(pack(cand)).second) continue;
      ++rec.histogram[uniformity16(cand, op)];
    }
  rec.max_uniformity = rec.histogram.empty() ? 0 : rec.histogram.rbegin()->first;
  return rec;
}

void require_four_bit(int n, int d) {
  if (n != 4 || d != 2) throw Error(Errc::WrongRegime, "4-bit classification needs n = 4, d = 2");
}

std::size_t column_of(int u) {
  const auto it = std::find(kSpectrumColumns.begin(), kSpectrumColumns.end(), u);
  if (it == kSpectrumColumns.end()) throw Error(Errc::DimensionOutOfRange, "uniformity outside the table columns");
  return static_cast<std::size_t>(it - kSpectrumColumns.begin());
}

}  // namespace

FourBitSetup FourBitSetup::make(const AltOperation& op) {
  require_four_bit(op.n(), op.d());
  FourBitSetup setup{op, {}, {}, {}};
  const auto gl = gf2::enumerate_gl(4);
  const gf2::MatrixPredicate member = [&op](const BitMatrix& m) { return homega::is_member(op, m); };
  setup.input_reps = gf2::coset_representatives(gl, member, gf2::CosetSide::Right);
  setup.output_reps = gf2::coset_representatives(gl, member, gf2::CosetSide::Left);
  setup.operations = altop::enumerate_conjugates(op);
  return setup;
}

SpectrumRecord classify_optimal_4bit(const FourBitSetup& setup, int class_index, int op_index, CountMode mode) {
  require_four_bit(setup.op.n(), setup.op.d());
  if (op_index < 0 || op_index >= static_cast<int>(setup.operations.size()))
    throw Error(Errc::DimensionOutOfRange, "operation index out of range");
  const Sbox& f = corpus::optimal_class(class_index);
  const auto& group = setup.operations[static_cast<std::size_t>(op_index)];
  // δ under x ∘' y = ((xG) ∘ (yG)) G^{-1} equals δ under ∘ of y -> f(y G^{-1}) G.
  const BitMatrix g = group.origin() ? group.origin()->conjugator : BitMatrix::identity(4);
  const Sbox conj = ddt::then(ddt::then(Sbox::affine(gf2::inverse(g)), f), Sbox::affine(g));

  std::vector<Table16> in;
  std::vector<Table16> out;
  for (const auto& m : setup.input_reps) in.push_back(table_of(m));
  for (const auto& m : setup.output_reps) out.push_back(table_of(m));
  auto rec = spectrum(table_of(conj), *setup.op.table(), in, out, mode);
  rec.class_index = class_index;
  rec.op_index = op_index;
  return rec;
}

SpectrumRecord classify_direct(const CircTable& op, const Sbox& f, CountMode mode) {
  require_four_bit(op.n(), 2);
  if (f.s() != 4) throw Error(Errc::WidthMismatch, "classification needs a 4-bit s-box");
  const auto gl = gf2::enumerate_gl(4);
  const gf2::MatrixPredicate member = [&op](const BitMatrix& m) { return homega::is_member(op, m); };
  std::vector<Table16> in;
  std::vector<Table16> out;
  for (const auto& m : gf2::coset_representatives(gl, member, gf2::CosetSide::Right)) in.push_back(table_of(m));
  for (const auto& m : gf2::coset_representatives(gl, member, gf2::CosetSide::Left)) out.push_back(table_of(m));
  return spectrum(table_of(f), op, in, out, mode);
}

std::vector<std::vector<SpectrumRecord>> sweep_all_operations(const FourBitSetup& setup,
                                                              const std::vector<int>& classes, CountMode mode,
                                                              const Executor& executor) {
  const std::size_t ops = setup.operations.size();
  std::vector<std::vector<SpectrumRecord>> out(classes.size(), std::vector<SpectrumRecord>(ops));
  executor.for_each(classes.size() * ops, [&](std::size_t task) {
    const std::size_t c = task / ops;
    const std::size_t k = task % ops;
    out[c][k] = classify_optimal_4bit(setup, classes[c], static_cast<int>(k), mode);
  });
  return out;
}

std::vector<ClassRow> aggregate_classes(const std::vector<std::vector<SpectrumRecord>>& sweep) {
  std::vector<ClassRow> rows;
  for (const auto& per_op : sweep) {
    if (per_op.empty()) continue;
    ClassRow row;
    row.class_index = per_op.front().class_index;
    row.min.fill(~std::uint64_t{0});
    std::array<std::uint64_t, 8> sum{};
    for (const auto& rec : per_op) {
      std::array<std::uint64_t, 8> cell{};
      for (const auto& [u, count] : rec.histogram) cell[column_of(u)] += count;
      for (std::size_t c = 0; c < 8; ++c) {
        sum[c] += cell[c];
        row.min[c] = std::min(row.min[c], cell[c]);
        row.max[c] = std::max(row.max[c], cell[c]);
      }
    }
    const double ops = static_cast<double>(per_op.size());
    for (std::size_t c = 0; c < 8; ++c) {
      row.exact[c] = static_cast<double>(sum[c]) / ops;
      row.rounded[c] = std::lround(row.exact[c]);
      row.total += row.exact[c];
    }
    rows.push_back(row);
  }
  return rows;
}

const std::array<std::array<long, 8>, 16>& reference_class_rows() {
  static const std::array<std::array<long, 8>, 16> table = {{
      {0, 780, 6695, 2956, 359, 16, 0, 12},
      {0, 682, 6927, 2823, 374, 0, 0, 12},
      {0, 781, 6695, 2956, 359, 16, 0, 12},
      {0, 896, 7566, 2210, 146, 0, 0, 0},
      {0, 1104, 7770, 1825, 118, 0, 0, 0},
      {0, 822, 7994, 1790, 212, 0, 0, 0},
      {0, 1120, 7441, 2108, 150, 0, 0, 0},
      {0, 898, 7628, 2139, 133, 20, 0, 0},
      {0, 859, 6503, 3102, 296, 48, 0, 12},
      {0, 1123, 7062, 2457, 141, 36, 0, 0},
      {0, 1084, 7115, 2437, 147, 36, 0, 0},
      {0, 1202, 7299, 2159, 157, 0, 0, 0},
      {0, 1099, 7275, 2291, 153, 0, 0, 0},
      {0, 916, 7749, 1965, 176, 12, 0, 0},
      {0, 1122, 7100, 2400, 149, 48, 0, 0},
      {0, 1122, 7100, 2400, 149, 48, 0, 0},
  }};
  return table;
}

std::vector<ClassComparison> compare_with_reference(const std::vector<ClassRow>& rows) {
  std::vector<ClassComparison> out;
  for (const auto& row : rows) {
    const auto& ref = reference_class_rows().at(static_cast<std::size_t>(row.class_index));
    ClassComparison cmp;
    cmp.class_index = row.class_index;
    cmp.support_match = true;
    cmp.counts_match = true;
    for (std::size_t c = 0; c < 8; ++c) {
      cmp.computed_sum += row.rounded[c];
      cmp.published_sum += ref[c];
      if ((row.rounded[c] != 0) != (ref[c] != 0)) {
        cmp.support_match = false;
        cmp.notes.push_back("support differs at " + std::to_string(kSpectrumColumns[c]));
      }
      if (row.rounded[c] != ref[c]) {
        cmp.counts_match = false;
        cmp.notes.push_back("u=" + std::to_string(kSpectrumColumns[c]) + ": computed " + std::to_string(row.rounded[c]) +
                            ", printed " + std::to_string(ref[c]));
      }
    }
    out.push_back(std::move(cmp));
  }
  return out;
}

std::string class_csv(const std::vector<ClassRow>& rows) {
  std::ostringstream out;
  out << "class,uniformity,count\n";
  for (const auto& row : rows)
    for (std::size_t c = 0; c < 8; ++c)
      out << 'G' << row.class_index << ',' << kSpectrumColumns[c] << ',' << row.rounded[c] << '\n';
  return out.str();
}

std::vector<CampaignResult> campaign_8bit(const std::vector<std::pair<std::string, Sbox>>& sboxes, int d,
                                          const Executor& executor) {
  for (const auto& [name, f] : sboxes)
    if (f.s() != 8) throw Error(Errc::WidthMismatch, name + " is not an 8-bit s-box");
  const auto specs = altop::enumerate_canonical(8, d);
  std::vector<CampaignResult> results;
  for (const auto& [name, f] : sboxes) results.push_back({name, d, std::vector<int>(specs.size(), 0), {}});
  executor.for_each(specs.size(), [&](std::size_t i) {
    const auto op = AltOperation::build(specs[i]);
    for (std::size_t s = 0; s < sboxes.size(); ++s) results[s].per_op[i] = ddt::uniformity_circ(sboxes[s].second, *op.table());
  });
  for (auto& r : results)
    for (const int u : r.per_op) ++r.histogram[u];
  return results;
}

CampaignResult campaign_random_ops(const std::string& name, const Sbox& sbox, int d, std::uint64_t count,
                                   std::uint64_t seed, const Executor& executor) {
  if (sbox.s() != 8) throw Error(Errc::WidthMismatch, name + " is not an 8-bit s-box");
  if (d < 1 || d > 6) throw Error(Errc::DimensionOutOfRange, "d must lie in 1..6 for 8-bit operations");
  CampaignResult result{name, d, std::vector<int>(count, 0), {}};
  executor.for_each(count, [&](std::size_t i) {
    std::mt19937_64 rng(derive_seed(seed, i));
    const auto op = AltOperation::build(altop::random_valid_spec(8, d, rng));
    result.per_op[i] = ddt::uniformity_circ(sbox, *op.table());
  });
  for (const int u : result.per_op) ++result.histogram[u];
  return result;
}

std::string campaign_csv(const std::vector<CampaignResult>& results) {
  std::ostringstream out;
  out << "sbox,d,uniformity,op_count\n";
  for (const auto& r : results)
    for (const auto& [u, count] : r.histogram) out << r.sbox << ',' << r.d << ',' << u << ',' << count << '\n';
  return out.str();
}

}  // namespace altdiff::sboxclass
